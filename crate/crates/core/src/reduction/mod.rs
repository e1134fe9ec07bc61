//! Hardness instances: partitioned subgraph isomorphism, the labellings
//! `α`, `β`, `γ`, the DSN construction with its cost threshold, and
//! embedding extraction from tight solutions.

pub mod corpus;
mod construction;
mod decide;
mod labelling;
mod psi;

pub use construction::{build_dsn, reduce, ReductionOutput};
pub use decide::{decide_psi, decide_psi_via_dsn, Decision, DecisionSummary};
pub use labelling::{build_labelling, edge, Edge, Labelling};
pub use psi::{solve_psi_bruteforce, Embedding, PsiInstance, PSI_BRUTEFORCE_CAP};
