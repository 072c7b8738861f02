//! Exact ground-truth oracles. Nothing in here is heuristic: searches either
//! finish with a certified answer or stop with [`Error::Resource`].

mod chromatic;
mod clique;
mod induced;
mod tau;

use std::time::{Duration, Instant};

pub use chromatic::{chromatic_number, chromatic_number_of, colour_greedy};
pub use clique::{max_clique, max_clique_in, max_stable, max_stable_in};
pub use induced::{find_induced, find_spider, is_hs_free, Embedding};
pub use tau::{find_core_in, tau, tau_at_least, TauWitness};

use crate::error::Error;

/// Limits for exponential searches. The default is unlimited.
#[derive(Debug, Clone, Copy, Default)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub deadline: Option<Instant>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        max_nodes: None,
        deadline: None,
    };

    pub fn nodes(n: u64) -> Budget {
        Budget {
            max_nodes: Some(n),
            deadline: None,
        }
    }

    pub fn time(limit: Duration) -> Budget {
        Budget {
            max_nodes: None,
            deadline: Some(Instant::now() + limit),
        }
    }
}

/// Node counter checked against a [`Budget`].
pub(crate) struct Meter {
    budget: Budget,
    pub(crate) nodes: u64,
}

impl Meter {
    pub(crate) fn new(budget: Budget) -> Meter {
        Meter { budget, nodes: 0 }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<(), Error> {
        self.nodes += 1;
        if self.budget.max_nodes.is_some_and(|m| self.nodes > m)
            || (self.nodes % 4096 == 0
                && self.budget.deadline.is_some_and(|d| Instant::now() >= d))
        {
            return Err(Error::Resource { nodes: self.nodes });
        }
        Ok(())
    }
}
