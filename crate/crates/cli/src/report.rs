use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use steinernet::format::{emit_dsn, DsnFile};
use steinernet::reduction::DecisionSummary;
use steinernet::solvers::{Engine, SolveResult};
use steinernet::structure::TreewidthCertificate;
use steinernet::{DsnInstance, Weight};

pub const RUN_REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSummary {
    /// SHA-256 of the canonical file text without comments.
    pub digest: String,
    pub vertices: usize,
    pub arcs: usize,
    pub terminals: usize,
    pub requests: usize,
}

impl InstanceSummary {
    pub fn of(inst: &DsnInstance) -> Self {
        let text = emit_dsn(&DsnFile::new(inst.clone()));
        Self {
            digest: format!("{:x}", Sha256::digest(text.as_bytes())),
            vertices: inst.host().vertex_count(),
            arcs: inst.host().arc_count(),
            terminals: inst.terminal_count(),
            requests: inst.request_count(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverStats {
    pub engine: Engine,
    pub nodes: u64,
    pub proven_optimal: bool,
}

/// JSON body printed by `solve`, `analyze`, `reduce` and `gen`. Vertex ids
/// are 0-based, i.e. one less than in instance files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub instance: Option<InstanceSummary>,
    pub seed: Option<u64>,
    pub solver: Option<SolverStats>,
    pub feasible: Option<bool>,
    pub cost: Option<Weight>,
    pub arcs: Option<Vec<(u32, u32)>>,
    pub threshold: Option<usize>,
    pub decision: Option<DecisionSummary>,
    pub certificate: Option<TreewidthCertificate>,
    /// Instance text for `gen`.
    pub text: Option<String>,
    pub wall_ms: f64,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        Self {
            schema_version: RUN_REPORT_SCHEMA_VERSION,
            command: command.to_string(),
            instance: None,
            seed: None,
            solver: None,
            feasible: None,
            cost: None,
            arcs: None,
            threshold: None,
            decision: None,
            certificate: None,
            text: None,
            wall_ms: 0.0,
        }
    }

    pub fn with_result(mut self, res: &SolveResult) -> Self {
        self.solver = Some(SolverStats {
            engine: res.engine,
            nodes: res.nodes,
            proven_optimal: res.proven_optimal,
        });
        self.feasible = Some(res.is_feasible());
        self.cost = res.cost();
        self.arcs = res.solution().map(|s| s.arcs().into_iter().collect());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRow {
    pub instance: String,
    pub cost: Option<String>,
    pub oracle: Option<String>,
    /// Structural or decision verdict for the row.
    pub verdict: String,
    pub agree: bool,
    pub ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchReport {
    pub schema_version: u32,
    pub seeds: u64,
    pub rows: Vec<BenchRow>,
    pub disagreements: usize,
}
