//! The induction-step driver: configuration, the staged run with its trace,
//! the single-colour base case and the host edge count.

mod config;
mod drivers;
mod step;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::embed::Embedding;
use crate::graph::Vertex;

pub use config::{BaseSpec, Budgets, ColouringSpec, ConfigError, StepConfig, MAX_HOST_EDGES};
pub use drivers::{
    base_case_driver, edge_budget, edge_budget_sweep, BaseCaseDriverError, BaseCaseRun, EdgeBudget, EdgeBudgetSweep,
    SweepRow, ENUMERATION_MAX_EDGES,
};
pub use step::{
    build_base, build_colouring, build_input, induction_step, run_step, select_blue, BlueSelection, StepError,
    StepInput,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StageStatus {
    Ok,
    /// The search ran out without finding the object; the run continues.
    NotFound,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageRecord {
    pub stage: String,
    pub status: StageStatus,
    pub details: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum StepOutcome {
    /// `embedding` maps `P_n^k` into the host in a single colour.
    MonoPowerFound {
        colour: u8,
        k: usize,
        n: usize,
        embedding: Embedding,
    },
    /// `template` maps `h^r{t}` (aligned matchings) into the host using
    /// only `allowed_colours`.
    ReducedColours {
        eliminated_colour: u8,
        allowed_colours: Vec<u8>,
        r: usize,
        t: usize,
        h_vertices: usize,
        h_edges: Vec<(Vertex, Vertex)>,
        template: Embedding,
    },
    HonestFailure {
        stage: String,
        reason: String,
    },
}

impl StepOutcome {
    pub fn kind(&self) -> &'static str {
        match self {
            StepOutcome::MonoPowerFound { .. } => "monoPowerFound",
            StepOutcome::ReducedColours { .. } => "reducedColours",
            StepOutcome::HonestFailure { .. } => "honestFailure",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepReport {
    #[serde(rename = "schemaVersion")]
    pub schema_version: u32,
    pub config: StepConfig,
    pub trace: Vec<StageRecord>,
    pub outcome: StepOutcome,
}
