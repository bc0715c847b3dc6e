//! Benchmark harness: fixtures × theories × algorithms, averaged over
//! repetitions.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use anyhow::Context;
use boolabs_core::abstraction::reaction_count;
use boolabs_core::game::{solve_capped, spec_pair_form};
use boolabs_core::io::{Algorithm, HeuristicsRecord};
use boolabs_core::model::{cluster_literals, collect_literals, single_cluster, Theory, TheorySpec};
use boolabs_core::pipeline::{abstract_spec, AbstractionResult};
use serde::{Deserialize, Serialize};

use crate::RunConfig;

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub dir: PathBuf,
    pub reps: usize,
    pub algos: Vec<Algorithm>,
    /// Theories to run each fixture under; `None` is the declared one.
    pub theories: Vec<Option<Theory>>,
    /// Largest cluster the nested search is run on.
    pub max_lits: usize,
    /// Largest cluster the plain model loop is run on.
    pub sat_max_lits: usize,
    /// Games with more propositions get no verdict.
    pub game_cap: usize,
    pub jobs: usize,
    pub base: RunConfig,
}

impl BenchConfig {
    pub fn new(dir: impl Into<PathBuf>) -> BenchConfig {
        BenchConfig {
            dir: dir.into(),
            reps: 5,
            algos: vec![Algorithm::Bf, Algorithm::Sat, Algorithm::Nested],
            theories: vec![None],
            max_lits: 7,
            sat_max_lits: 4,
            game_cap: 16,
            jobs: thread::available_parallelism().map_or(1, |n| n.get().min(4)),
            base: RunConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "lowercase")]
pub enum RowStatus {
    Ok,
    Skipped(String),
    Failed(String),
}

/// One fixture × theory × algorithm; counts and times are means.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub fixture: String,
    pub theory: String,
    pub algorithm: Algorithm,
    pub heuristics: Option<HeuristicsRecord>,
    /// `(vars, lits)` per cluster.
    pub clusters: Vec<(usize, usize)>,
    pub reps: usize,
    pub outer_queries: f64,
    pub inner_queries: f64,
    pub smt_ms: f64,
    pub wall_ms: f64,
    pub valid_reactions: usize,
    /// Brute-force query count, when it fits in 64 bits.
    pub bf_queries: Option<u64>,
    pub realizable: Option<bool>,
    #[serde(flatten)]
    pub status: RowStatus,
}

impl BenchRow {
    pub fn total_queries(&self) -> f64 {
        self.outer_queries + self.inner_queries
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialize");
        s.push('\n');
        s
    }

    /// Plain-text table.
    pub fn render(&self) -> String {
        let header = [
            "fixture", "theory", "algo", "heuristics", "clusters", "outer", "inner", "total", "bf", "ratio", "|VR|",
            "smt ms", "wall ms", "verdict", "status",
        ];
        let mut cells: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
        for r in &self.rows {
            let clusters = r.clusters.iter().map(|(v, l)| format!("({v},{l})")).collect::<Vec<_>>().join(" ");
            let heur = r
                .heuristics
                .map(|h| format!("{}/{}/{}/{}", h.mxi, h.md, h.dc, if h.acore { "on" } else { "off" }))
                .unwrap_or_else(|| "-".into());
            let ok = r.status == RowStatus::Ok;
            let num = |x: f64| if ok { format!("{x:.0}") } else { "-".into() };
            let bf = r.bf_queries.map_or_else(|| ">2^64".into(), |b| b.to_string());
            let ratio = match r.bf_queries {
                Some(b) if ok && b > 0 => {
                    let x = r.total_queries() / b as f64;
                    if x >= 1e-3 {
                        format!("{x:.4}")
                    } else {
                        format!("{x:.2e}")
                    }
                }
                _ => "-".into(),
            };
            let status = match &r.status {
                RowStatus::Ok => "ok".to_string(),
                RowStatus::Skipped(why) => format!("skipped: {why}"),
                RowStatus::Failed(why) => format!("failed: {why}"),
            };
            cells.push(vec![
                r.fixture.clone(),
                r.theory.clone(),
                r.algorithm.name().into(),
                heur,
                clusters,
                num(r.outer_queries),
                num(r.inner_queries),
                num(r.total_queries()),
                bf,
                ratio,
                if ok { r.valid_reactions.to_string() } else { "-".into() },
                if ok { format!("{:.1}", r.smt_ms) } else { "-".into() },
                if ok { format!("{:.1}", r.wall_ms) } else { "-".into() },
                r.realizable.map_or("-", crate::verdict_word).into(),
                status,
            ]);
        }
        let widths: Vec<usize> = (0..header.len()).map(|i| cells.iter().map(|row| row[i].chars().count()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        for row in &cells {
            let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
        }
        out
    }
}

struct Task {
    fixture: String,
    text: Result<String, String>,
    theory: Option<Theory>,
    algorithm: Algorithm,
}

/// Runs every `*.ltlt` fixture in `cfg.dir`. Failures become rows.
pub fn run_bench(cfg: &BenchConfig) -> anyhow::Result<BenchReport> {
    let mut paths: Vec<PathBuf> = fs::read_dir(&cfg.dir)
        .with_context(|| format!("reading fixture directory {}", cfg.dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "ltlt"))
        .collect();
    paths.sort();

    let mut tasks = Vec::new();
    for path in &paths {
        let fixture = path.file_stem().unwrap_or_default().to_string_lossy().into_owned();
        let text = fs::read_to_string(path).map_err(|e| e.to_string());
        let mut theories = cfg.theories.clone();
        theories.dedup();
        for &theory in &theories {
            for &algorithm in &cfg.algos {
                tasks.push(Task {
                    fixture: fixture.clone(),
                    text: text.clone(),
                    theory,
                    algorithm,
                });
            }
        }
    }

    // Bounded pool; rows are merged back in task order.
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<BenchRow>>> = Mutex::new(vec![None; tasks.len()]);
    thread::scope(|s| {
        for _ in 0..cfg.jobs.max(1).min(tasks.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(task) = tasks.get(i) else { break };
                let row = run_task(task, cfg);
                slots.lock().expect("bench slots")[i] = Some(row);
            });
        }
    });
    let rows = slots.into_inner().expect("bench slots").into_iter().flatten().collect();
    Ok(BenchReport { rows })
}

fn run_task(task: &Task, cfg: &BenchConfig) -> BenchRow {
    let mut row = BenchRow {
        fixture: task.fixture.clone(),
        theory: task.theory.map_or("declared", |t| t.tag()).to_string(),
        algorithm: task.algorithm,
        heuristics: None,
        clusters: Vec::new(),
        reps: 0,
        outer_queries: 0.0,
        inner_queries: 0.0,
        smt_ms: 0.0,
        wall_ms: 0.0,
        valid_reactions: 0,
        bf_queries: None,
        realizable: None,
        status: RowStatus::Ok,
    };
    let text = match &task.text {
        Ok(t) => t,
        Err(e) => {
            row.status = RowStatus::Failed(e.clone());
            return row;
        }
    };
    let mut run_cfg = cfg.base.clone();
    run_cfg.algorithm = task.algorithm;
    run_cfg.theory = task.theory;
    let spec = match run_cfg.parse(text) {
        Ok(s) => s,
        Err(e) => {
            row.status = RowStatus::Failed(e.to_string());
            return row;
        }
    };
    row.theory = spec.theory.tag().to_string();

    if let Some((why, clusters, bf)) = skip_reason(task.algorithm, &spec, cfg) {
        row.clusters = clusters;
        row.bf_queries = bf;
        row.status = RowStatus::Skipped(why);
        return row;
    }
    let opts = run_cfg.options(&spec);
    let mut results: Vec<AbstractionResult> = Vec::new();
    for _ in 0..cfg.reps.max(1) {
        match abstract_spec(&spec, &opts) {
            Ok(r) => results.push(r),
            Err(e) => {
                row.status = RowStatus::Failed(e.to_string());
                return row;
            }
        }
    }
    let last = results.last().expect("at least one repetition");
    let n = results.len() as f64;
    row.reps = results.len();
    row.clusters = last.stats.clusters.iter().map(|c| (c.vars, c.lits)).collect();
    row.heuristics = (task.algorithm == Algorithm::Nested).then_some(last.stats.heuristics);
    row.outer_queries = results.iter().map(|r| r.stats.outer_queries as f64).sum::<f64>() / n;
    row.inner_queries = results.iter().map(|r| r.stats.inner_queries as f64).sum::<f64>() / n;
    row.smt_ms = results.iter().map(|r| r.stats.smt_ms).sum::<f64>() / n;
    row.wall_ms = results.iter().map(|r| r.stats.wall_ms).sum::<f64>() / n;
    row.valid_reactions = last.stats.valid_reactions;
    row.bf_queries = bf_queries(row.clusters.iter().map(|c| c.1));
    row.realizable = spec_pair_form(&last.boolean)
        .ok()
        .and_then(|g| solve_capped(&g, cfg.game_cap).ok())
        .map(|v| v.realizable);
    row
}

/// Sum of `2^(2^n)` over clusters.
pub fn bf_queries(lits: impl Iterator<Item = usize>) -> Option<u64> {
    lits.map(reaction_count).try_fold(0u64, |acc, c| acc.checked_add(c?))
}

type Skip = (String, Vec<(usize, usize)>, Option<u64>);

fn skip_reason(algo: Algorithm, spec: &TheorySpec, cfg: &BenchConfig) -> Option<Skip> {
    let table = collect_literals(spec);
    let clusters = if cfg.base.cluster {
        cluster_literals(&table)
    } else {
        single_cluster(&table)
    };
    let shape: Vec<(usize, usize)> = clusters.iter().map(|c| (c.variables.len(), c.literals.len())).collect();
    let bf = bf_queries(shape.iter().map(|c| c.1));
    let largest = shape.iter().map(|c| c.1).max().unwrap_or(0);
    let why = match algo {
        Algorithm::Bf if !cfg.base.force_bf && shape.iter().any(|c| reaction_count(c.1).is_none_or(|q| q > cfg.base.query_cap)) => {
            Some(format!("brute force above the query cap of {}", cfg.base.query_cap))
        }
        Algorithm::Sat if largest > cfg.sat_max_lits => Some(format!("cluster of {largest} literals > {}", cfg.sat_max_lits)),
        Algorithm::Nested if largest > cfg.max_lits => Some(format!("cluster of {largest} literals > {}", cfg.max_lits)),
        _ => None,
    };
    why.map(|w| (w, shape, bf))
}

/// Writes the report: JSON for `.json` paths, the table otherwise.
pub fn write_report(report: &BenchReport, path: &Path) -> anyhow::Result<()> {
    let body = if path.extension().is_some_and(|x| x == "json") {
        report.to_json()
    } else {
        report.render()
    };
    fs::write(path, body).with_context(|| format!("writing {}", path.display()))
}
