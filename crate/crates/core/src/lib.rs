//! Constructive machinery for colouring graphs that exclude a radius-two
//! spider `H_s` as an induced subgraph, with polynomial bounds in `τ_d`.
//!
//! * [`graph`]: graphs, bitsets, generators, serialization.
//! * [`oracles`]: exact clique, stable set, chromatic number, `τ_d`, induced
//!   subgraph search.
//! * [`ramsey`]: the three Ramsey-type extraction procedures.
//! * [`templates`]: cores, template sequences, niceness, splitting, upgrade
//!   witnesses and the certified colouring pipeline.
//! * [`bounds`]: exact big-integer evaluation of every bound in the chain.

pub mod bounds;
pub mod error;
pub mod graph;
pub mod oracles;
pub mod ramsey;
pub mod templates;

pub use error::{Error, Result};
pub use graph::{Colouring, Digraph, Graph, VertexSet};
