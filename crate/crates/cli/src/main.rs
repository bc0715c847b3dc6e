use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::Context;
use boolabs::bench::{run_bench, write_report, BenchConfig};
use boolabs::{abstract_file, run_check, verdict_word, RunConfig};
use boolabs_core::abstraction::{Encoding, DEFAULT_QUERY_CAP};
use boolabs_core::io::Algorithm;
use boolabs_core::model::Theory;
use boolabs_core::smt::SolverCommand;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "boolabs", version, about = "Boolean abstraction of LTL specifications modulo arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Abstract a theory specification into a Boolean one.
    Abstract {
        spec: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Write the stats record (JSON) here.
        #[arg(long)]
        stats: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Decide realizability of a Boolean specification.
    Check { boolspec: PathBuf },
    /// Run every fixture in a directory and report.
    Bench {
        dir: PathBuf,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        /// `.json` gets the JSON report, anything else the table.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "bf,sat,nested")]
        algos: Vec<AlgoArg>,
        /// Extra theory overrides, e.g. `LIA,LRA`; declared theory if omitted.
        #[arg(long, value_delimiter = ',')]
        theories: Vec<TheoryArg>,
        #[arg(long, default_value_t = 7)]
        max_lits: usize,
        #[arg(long, default_value_t = 4)]
        sat_max_lits: usize,
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum, default_value_t = AlgoArg::Nested)]
    algo: AlgoArg,
    #[arg(long)]
    mxi: Option<u32>,
    #[arg(long)]
    md: Option<u32>,
    #[arg(long)]
    decay: Option<u32>,
    #[arg(long, value_enum)]
    acore: Option<Switch>,
    #[arg(long, value_enum, default_value_t = EncodingArg::Onehot)]
    encoding: EncodingArg,
    #[arg(long, value_enum, default_value_t = Switch::On)]
    cluster: Switch,
    #[arg(long, value_enum)]
    theory: Option<TheoryArg>,
    /// Solver command line, e.g. "z3 -in".
    #[arg(long)]
    solver_cmd: Option<String>,
    #[arg(long, default_value_t = 60_000)]
    timeout_ms: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run brute force even above the query cap.
    #[arg(long)]
    force_bf: bool,
    #[arg(long, default_value_t = DEFAULT_QUERY_CAP)]
    query_cap: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Bf,
    Sat,
    Nested,
}

#[derive(Clone, Copy, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Clone, Copy, ValueEnum)]
enum EncodingArg {
    Onehot,
    Binary,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum TheoryArg {
    #[value(name = "LIA", alias = "lia")]
    Lia,
    #[value(name = "LRA", alias = "lra")]
    Lra,
    #[value(name = "NRA", alias = "nra")]
    Nra,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Algorithm {
        match a {
            AlgoArg::Bf => Algorithm::Bf,
            AlgoArg::Sat => Algorithm::Sat,
            AlgoArg::Nested => Algorithm::Nested,
        }
    }
}

impl From<TheoryArg> for Theory {
    fn from(t: TheoryArg) -> Theory {
        match t {
            TheoryArg::Lia => Theory::Lia,
            TheoryArg::Lra => Theory::Lra,
            TheoryArg::Nra => Theory::Nra,
        }
    }
}

impl RunArgs {
    fn config(&self) -> anyhow::Result<RunConfig> {
        let solver = match &self.solver_cmd {
            Some(cmd) => SolverCommand::parse(cmd)?,
            None => SolverCommand::from_env(),
        };
        Ok(RunConfig {
            algorithm: self.algo.into(),
            mxi: self.mxi,
            md: self.md,
            decay: self.decay,
            acore: self.acore.map(|s| matches!(s, Switch::On)),
            theory: self.theory.map(Theory::from),
            solver,
            timeout: Duration::from_millis(self.timeout_ms),
            seed: self.seed,
            cluster: matches!(self.cluster, Switch::On),
            encoding: match self.encoding {
                EncodingArg::Onehot => Encoding::OneHot,
                EncodingArg::Binary => Encoding::Binary,
            },
            force_bf: self.force_bf,
            query_cap: self.query_cap,
        })
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Abstract { spec, output, stats, run } => {
            let out = abstract_file(&spec, &output, stats.as_deref(), &run.config()?)?;
            eprintln!(
                "{} valid reactions, {} outer + {} inner queries",
                out.stats.valid_reactions, out.stats.outer_queries, out.stats.inner_queries
            );
        }
        Command::Check { boolspec } => {
            let text = fs::read_to_string(&boolspec).with_context(|| format!("reading {}", boolspec.display()))?;
            println!("{}", verdict_word(run_check(&text)?));
        }
        Command::Bench { dir, reps, report, algos, theories, max_lits, sat_max_lits, jobs, run } => {
            let mut cfg = BenchConfig::new(dir);
            cfg.reps = reps;
            cfg.algos = algos.into_iter().map(Algorithm::from).collect();
            if !theories.is_empty() {
                cfg.theories = theories.into_iter().map(|t| Some(t.into())).collect();
            }
            cfg.max_lits = max_lits;
            cfg.sat_max_lits = sat_max_lits;
            if let Some(j) = jobs {
                cfg.jobs = j;
            }
            cfg.base = run.config()?;
            let result = run_bench(&cfg)?;
            print!("{}", result.render());
            if let Some(path) = report {
                write_report(&result, &path)?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e.downcast_ref::<boolabs_core::Error>().map_or(1, |e| e.exit_code());
            ExitCode::from(code as u8)
        }
    }
}
