use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Bf,
    Sat,
    Nested,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Bf => "bf",
            Algorithm::Sat => "sat",
            Algorithm::Nested => "nested",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterStats {
    pub vars: usize,
    pub lits: usize,
    pub outer_queries: u64,
    pub inner_queries: u64,
    pub smt_ms: f64,
    pub valid_reactions: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeuristicsRecord {
    pub mxi: u32,
    pub md: u32,
    pub dc: u32,
    pub acore: bool,
}

/// One abstraction run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub algorithm: Algorithm,
    pub clusters: Vec<ClusterStats>,
    pub outer_queries: u64,
    pub inner_queries: u64,
    pub smt_ms: f64,
    pub wall_ms: f64,
    pub valid_reactions: usize,
    pub heuristics: HeuristicsRecord,
    pub seed: u64,
}

impl RunStats {
    /// Totals are the sums of the per-cluster records.
    pub fn from_clusters(
        algorithm: Algorithm,
        clusters: Vec<ClusterStats>,
        wall_ms: f64,
        heuristics: HeuristicsRecord,
        seed: u64,
    ) -> RunStats {
        RunStats {
            algorithm,
            outer_queries: clusters.iter().map(|c| c.outer_queries).sum(),
            inner_queries: clusters.iter().map(|c| c.inner_queries).sum(),
            smt_ms: clusters.iter().map(|c| c.smt_ms).sum(),
            valid_reactions: clusters.iter().map(|c| c.valid_reactions).sum(),
            clusters,
            wall_ms,
            heuristics,
            seed,
        }
    }

    pub fn total_queries(&self) -> u64 {
        self.outer_queries + self.inner_queries
    }
}

pub fn emit_stats(r: &RunStats) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("stats serialize");
    s.push('\n');
    s
}

pub fn parse_stats(text: &str) -> serde_json::Result<RunStats> {
    serde_json::from_str(text)
}
