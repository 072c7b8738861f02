//! The three Ramsey-type extraction procedures. Each returns a certificate
//! with a `validate` method that re-checks it against the graph edge by edge.
//!
//! * [`ramsey_extract`]: a clique of size `x + 1` or a stable set of size `y`
//!   from any `x^y` vertices.
//! * [`levels_extract`]: a stable set meeting `c` of the given lists in
//!   prescribed quotas, for graphs with `τ_{d+1} < t`.
//! * [`pinkverts_extract`]: pins `a_1..a_k` with fans `L_1..L_k` such that
//!   `a_i` sees `L_j` exactly when `i = j`.
//!
//! The pinned-family thresholds are far beyond any graph that fits in memory
//! once `k ≥ 2`. Below threshold that procedure is best effort and may report
//! not-found; whatever it returns is still validated.

mod extract;
mod levels;
mod pinkverts;

pub use extract::{ramsey_extract, ramsey_extract_in, CliqueOrStable, Kind};
pub use levels::{
    levels2_extract, levels_extract, levels_params, LevelsParams, StableSystem, TauCheck,
    AUTO_ORACLE_LIMIT,
};
pub use pinkverts::{chi_exceeds, pinkverts_extract, pinkverts_threshold, PinnedFamily};
