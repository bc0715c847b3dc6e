//! Command runners behind the `boolabs` binary: abstraction, realizability
//! checks and benchmark reports.

pub mod bench;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::Context;
use boolabs_core::abstraction::{BruteForceOptions, Encoding, DEFAULT_CHOICE_LIMIT, DEFAULT_QUERY_CAP};
use boolabs_core::game::{solve_capped, spec_pair_form, DEFAULT_STATE_CAP};
use boolabs_core::io::{emit_boolean_spec, emit_stats, parse_boolean_spec, parse_spec_with, Algorithm, ParseOptions, RunStats};
use boolabs_core::model::{Theory, TheorySpec};
use boolabs_core::pipeline::{abstract_spec, largest_cluster, AbstractOptions, AbstractionResult};
use boolabs_core::search::Heuristics;
use boolabs_core::smt::{SolverCommand, DEFAULT_TIMEOUT};
use boolabs_core::Result;

pub use bench::{run_bench, BenchConfig, BenchReport, BenchRow, RowStatus};

/// Bundled benchmark fixtures.
pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// Settings shared by `abstract` and `bench`.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub algorithm: Algorithm,
    /// Heuristic overrides; unset fields come from the cluster-size default.
    pub mxi: Option<u32>,
    pub md: Option<u32>,
    pub decay: Option<u32>,
    pub acore: Option<bool>,
    pub theory: Option<Theory>,
    pub solver: SolverCommand,
    pub timeout: Duration,
    pub seed: u64,
    pub cluster: bool,
    pub encoding: Encoding,
    pub force_bf: bool,
    pub query_cap: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            algorithm: Algorithm::Nested,
            mxi: None,
            md: None,
            decay: None,
            acore: None,
            theory: None,
            solver: SolverCommand::from_env(),
            timeout: DEFAULT_TIMEOUT,
            seed: 0,
            cluster: true,
            encoding: Encoding::OneHot,
            force_bf: false,
            query_cap: DEFAULT_QUERY_CAP,
        }
    }
}

impl RunConfig {
    /// `None` when no heuristic flag was given.
    pub fn heuristics(&self, largest: usize) -> Option<Heuristics> {
        if self.mxi.is_none() && self.md.is_none() && self.decay.is_none() && self.acore.is_none() {
            return None;
        }
        let d = Heuristics::default_for(largest);
        Some(Heuristics::new(
            self.mxi.unwrap_or(d.mxi),
            self.md.unwrap_or(d.md),
            self.decay.unwrap_or(d.dc),
            self.acore.unwrap_or(d.acore),
        ))
    }

    pub fn options(&self, spec: &TheorySpec) -> AbstractOptions {
        AbstractOptions {
            algorithm: self.algorithm,
            heuristics: self.heuristics(largest_cluster(spec, self.cluster)),
            encoding: self.encoding,
            cluster: self.cluster,
            seed: self.seed,
            brute_force: BruteForceOptions {
                query_cap: self.query_cap,
                force: self.force_bf,
            },
            choice_limit: DEFAULT_CHOICE_LIMIT,
            solver: self.solver.clone(),
            timeout: self.timeout,
            cache: true,
        }
    }

    pub fn parse(&self, text: &str) -> Result<TheorySpec> {
        parse_spec_with(text, ParseOptions { theory: self.theory })
    }
}

pub struct AbstractOutput {
    pub document: String,
    pub stats: RunStats,
    pub result: AbstractionResult,
}

/// Abstracts a specification document.
pub fn run_abstract(text: &str, cfg: &RunConfig) -> Result<AbstractOutput> {
    let spec = cfg.parse(text)?;
    let result = abstract_spec(&spec, &cfg.options(&spec))?;
    Ok(AbstractOutput {
        document: emit_boolean_spec(&result.boolean),
        stats: result.stats.clone(),
        result,
    })
}

/// `abstract` subcommand: reads `input`, writes the Boolean document and
/// optionally the stats record.
pub fn abstract_file(input: &Path, output: &Path, stats: Option<&Path>, cfg: &RunConfig) -> anyhow::Result<AbstractOutput> {
    let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let out = run_abstract(&text, cfg)?;
    fs::write(output, &out.document).with_context(|| format!("writing {}", output.display()))?;
    if let Some(path) = stats {
        fs::write(path, emit_stats(&out.stats)).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(out)
}

/// Realizability of a Boolean document.
pub fn run_check(text: &str) -> Result<bool> {
    let spec = parse_boolean_spec(text)?;
    let game = spec_pair_form(&spec)?;
    Ok(solve_capped(&game, DEFAULT_STATE_CAP)?.realizable)
}

pub fn verdict_word(realizable: bool) -> &'static str {
    if realizable {
        "realizable"
    } else {
        "unrealizable"
    }
}
