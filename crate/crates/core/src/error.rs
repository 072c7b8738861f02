use thiserror::Error;

use crate::oracles::{Embedding, TauWitness};

/// Errors produced anywhere in the crate.
///
/// The two `*Refuted` variants are not failures of the procedure: they carry a
/// certificate showing that a hypothesis the caller asserted (H_s-freeness or a
/// bound on τ) is false for the given graph.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search budget exhausted after {nodes} nodes")]
    Resource { nodes: u64 },

    #[error("generation failed after {attempts} attempts")]
    GenerationFailed { attempts: u64 },

    #[error("tau hypothesis refuted: found a ({}, {})-core", .0.t, .0.parts.len())]
    TauRefuted(TauWitness),

    #[error("graph is not H_{s}-free: induced copy found")]
    HsRefuted { s: usize, embedding: Embedding },

    #[error("indeterminate: {0}")]
    Indeterminate(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}

pub(crate) fn internal<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Internal(msg.into()))
}
