use serde::{Deserialize, Serialize};

use crate::dsn::DsnInstance;
use crate::error::Result;
use crate::solvers::{solve_bnb_within, SolveResult};
use crate::weight::Weight;

use super::construction::{reduce, ReductionOutput};
use super::psi::{Embedding, PsiInstance};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub yes: bool,
    pub output: ReductionOutput,
    pub result: SolveResult,
    /// Present on yes-answers.
    pub embedding: Option<Embedding>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionSummary {
    pub yes: bool,
    pub threshold: usize,
    /// `None` when no solution within the solver's search space exists.
    pub cost: Option<String>,
    pub nodes: u64,
    pub embedding: Option<Vec<(u32, u32)>>,
}

impl Decision {
    pub fn summary(&self) -> DecisionSummary {
        DecisionSummary {
            yes: self.yes,
            threshold: self.output.threshold,
            cost: self.result.cost().map(|c| c.to_string()),
            nodes: self.result.nodes,
            embedding: self.embedding.as_ref().map(|phi| phi.iter().map(|(a, b)| (*a, *b)).collect()),
        }
    }
}

/// Builds the DSN instance, solves it with `solver`, and answers yes iff
/// the optimum is at most `2|V(H)| + 3|E(H)|`. The solver receives the
/// threshold so that it may prune against it.
pub fn decide_psi_via_dsn<F>(psi: &PsiInstance, solver: F) -> Result<Decision>
where
    F: FnOnce(&DsnInstance, usize) -> Result<SolveResult>,
{
    let output = reduce(psi)?;
    let result = solver(&output.dsn, output.threshold)?;
    let yes = result
        .cost()
        .is_some_and(|c| c <= Weight::integer(output.threshold as i64));
    let embedding = match (yes, result.solution()) {
        (true, Some(sol)) => Some(output.extract_embedding(sol)?),
        _ => None,
    };
    Ok(Decision {
        yes,
        output,
        result,
        embedding,
    })
}

/// [`decide_psi_via_dsn`] with branch and bound bounded by the threshold.
pub fn decide_psi(psi: &PsiInstance) -> Result<Decision> {
    decide_psi_via_dsn(psi, |inst, threshold| {
        solve_bnb_within(inst, Weight::integer(threshold as i64))
    })
}
