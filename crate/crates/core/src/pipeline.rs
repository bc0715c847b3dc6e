//! End-to-end abstraction: literals, clusters, per-cluster search, assembly.

use std::thread;
use std::time::{Duration, Instant};

use crate::abstraction::{
    assemble, brute_force, BooleanSpec, BruteForceOptions, ClusterAbstraction, Encoding, ValidReactionSet,
    DEFAULT_CHOICE_LIMIT,
};
use crate::error::{Error, Result};
use crate::io::{Algorithm, ClusterStats, RunStats};
use crate::model::{cluster_literals, collect_literals, single_cluster, substitute, Cluster, TheorySpec};
use crate::search::{model_loop, nested_loop, Heuristics, LoggedClause, SearchOptions};
use crate::smt::{QueryContext, SmtGateway, SolverCommand, ValidityOracle, DEFAULT_TIMEOUT};

#[derive(Debug, Clone)]
pub struct AbstractOptions {
    pub algorithm: Algorithm,
    /// `None` picks a setup from the largest cluster size.
    pub heuristics: Option<Heuristics>,
    pub encoding: Encoding,
    pub cluster: bool,
    pub seed: u64,
    pub brute_force: BruteForceOptions,
    pub choice_limit: usize,
    pub solver: SolverCommand,
    pub timeout: Duration,
    pub cache: bool,
}

impl Default for AbstractOptions {
    fn default() -> Self {
        AbstractOptions {
            algorithm: Algorithm::Nested,
            heuristics: None,
            encoding: Encoding::OneHot,
            cluster: true,
            seed: 0,
            brute_force: BruteForceOptions::default(),
            choice_limit: DEFAULT_CHOICE_LIMIT,
            solver: SolverCommand::from_env(),
            timeout: DEFAULT_TIMEOUT,
            cache: true,
        }
    }
}

/// Per-cluster result, kept for inspection by callers and tests.
#[derive(Debug, Clone)]
pub struct ClusterResult {
    pub cluster: Cluster,
    pub context: QueryContext,
    pub vr: ValidReactionSet,
    pub clauses: Vec<LoggedClause>,
}

#[derive(Debug, Clone)]
pub struct AbstractionResult {
    pub boolean: BooleanSpec,
    pub stats: RunStats,
    pub clusters: Vec<ClusterResult>,
}

/// Oracle constructor, called once per cluster inside its worker.
pub type OracleFactory<'a> = dyn Fn(&QueryContext) -> Result<Box<dyn ValidityOracle>> + Sync + 'a;

/// Size of the largest literal cluster; the default heuristics depend on it.
pub fn largest_cluster(spec: &TheorySpec, cluster: bool) -> usize {
    let table = collect_literals(spec);
    let clusters = if cluster {
        cluster_literals(&table)
    } else {
        single_cluster(&table)
    };
    clusters.iter().map(|c| c.literals.len()).max().unwrap_or(0)
}

/// Abstracts `spec` against the configured external solver.
pub fn abstract_spec(spec: &TheorySpec, opts: &AbstractOptions) -> Result<AbstractionResult> {
    let factory = |ctx: &QueryContext| -> Result<Box<dyn ValidityOracle>> {
        Ok(Box::new(SmtGateway::new(ctx.clone(), &opts.solver, opts.timeout, opts.cache)?))
    };
    abstract_spec_with(spec, opts, &factory)
}

pub fn abstract_spec_with(
    spec: &TheorySpec,
    opts: &AbstractOptions,
    factory: &OracleFactory<'_>,
) -> Result<AbstractionResult> {
    let start = Instant::now();
    let table = collect_literals(spec);
    let skeleton = substitute(spec, &table)?;
    let clusters = if opts.cluster {
        cluster_literals(&table)
    } else {
        single_cluster(&table)
    };
    let largest = clusters.iter().map(|c| c.literals.len()).max().unwrap_or(0);
    if largest > opts.choice_limit {
        return Err(Error::Capacity(format!(
            "a cluster of {largest} literals exceeds the limit of {}",
            opts.choice_limit
        )));
    }
    let heuristics = opts.heuristics.unwrap_or_else(|| Heuristics::default_for(largest));

    let contexts: Vec<QueryContext> = clusters
        .iter()
        .map(|c| Ok(QueryContext::new(spec.theory, table.project(&c.literals)?)))
        .collect::<Result<_>>()?;

    let outcomes: Vec<Result<(ValidReactionSet, Vec<LoggedClause>, ClusterStats)>> = thread::scope(|s| {
        let handles: Vec<_> = clusters
            .iter()
            .zip(&contexts)
            .map(|(cluster, ctx)| {
                s.spawn(move || run_cluster(cluster, ctx, opts, heuristics, factory))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(Error::Invariant("cluster worker panicked".into()))))
            .collect()
    });

    let mut results = Vec::new();
    let mut stats = Vec::new();
    for ((cluster, context), outcome) in clusters.into_iter().zip(contexts).zip(outcomes) {
        let (vr, clauses, cs) = outcome?;
        stats.push(cs);
        results.push(ClusterResult {
            cluster,
            context,
            vr,
            clauses,
        });
    }

    let abstractions: Vec<ClusterAbstraction> = results
        .iter()
        .map(|r| ClusterAbstraction {
            literals: r.cluster.literals.clone(),
            vr: r.vr.clone(),
        })
        .collect();
    let literal_map = table.entries().iter().map(|e| e.atom.to_string()).collect();
    let boolean = assemble(skeleton, &abstractions, opts.encoding, literal_map)?;
    let stats = RunStats::from_clusters(
        opts.algorithm,
        stats,
        start.elapsed().as_secs_f64() * 1e3,
        heuristics.record(),
        opts.seed,
    );
    Ok(AbstractionResult {
        boolean,
        stats,
        clusters: results,
    })
}

fn run_cluster(
    cluster: &Cluster,
    ctx: &QueryContext,
    opts: &AbstractOptions,
    heuristics: Heuristics,
    factory: &OracleFactory<'_>,
) -> Result<(ValidReactionSet, Vec<LoggedClause>, ClusterStats)> {
    let n = cluster.literals.len();
    let mut oracle = factory(ctx)?;
    let search = SearchOptions { seed: opts.seed };
    let (vr, clauses) = match opts.algorithm {
        Algorithm::Bf => (brute_force(oracle.as_mut(), n, opts.brute_force)?, Vec::new()),
        Algorithm::Sat => {
            let out = model_loop(oracle.as_mut(), n, search)?;
            (out.vr, out.clauses)
        }
        Algorithm::Nested => {
            let out = nested_loop(oracle.as_mut(), n, heuristics, search)?;
            (out.vr, out.clauses)
        }
    };
    let g = oracle.stats();
    let stats = ClusterStats {
        vars: cluster.variables.len(),
        lits: n,
        outer_queries: g.outer_queries,
        inner_queries: g.inner_queries,
        smt_ms: g.solver_time.as_secs_f64() * 1e3,
        valid_reactions: vr.len(),
    };
    Ok((vr, clauses, stats))
}
