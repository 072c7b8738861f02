//! Cores, templates and template sequences, the eight niceness levels, the
//! splitting and upgrade steps between them, and the certified colouring
//! pipeline built on top.
//!
//! A `(w, d)`-core is `d` pairwise-complete sets of size `w`; it is stable
//! when every part is a stable set. A template is a stable core `C` together
//! with an attachment set `P ⊇ V(C)` of vertices having at least `s·t^{s−1}`
//! neighbours in one part and at least `⌊w/t⌋` non-neighbours in one part.
//! When `t > w` the second threshold is `0` and holds vacuously.
//!
//! Niceness is cumulative: a sequence is `k`-nice when it satisfies the
//! clauses of levels `1..=k`. Splits (stages 1, 3, 5, 8) raise the level by
//! dicolouring an auxiliary digraph on template indices; upgrades (to 2, 4,
//! 6, 7) show the next clause holds or produce an induced `H_s`.
//!
//! The bottom of the induction is exact colouring, standing in for the
//! black-box base bound. Exact counts never exceed any valid bound, so every
//! certificate inequality is preserved.

mod colour;
mod core;
pub mod crafted;
mod dicolour;
mod nice;
mod product;
mod sequence;
mod split;
mod upgrade;

pub use self::core::{attaches, attachment_set, find_core, stabilize_core, AttachMode, Core};
pub use colour::{
    chain_at, colour_with_bound, decimal_digits, graph_digest, level_bound, product_bound, verify_certificate,
    Certificate, ChainEntry, ClassNode, LevelRecord, ResidualRecord,
};
pub use dicolour::dicolour;
pub use nice::{check_niceness, claim_q, one_nice_consequences, q_tau_witness, NicenessReport, Violation};
pub use product::product_colouring;
pub use sequence::{build_greedy_sequence, Template, TemplateSequence};
pub use split::{split_sequence, stage_digraph, stage_levels, Split};
pub use upgrade::{upgrade_witness, HsWitness, Upgrade};
