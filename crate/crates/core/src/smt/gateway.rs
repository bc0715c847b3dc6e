use std::collections::HashMap;
use std::time::{Duration, Instant};

use super::process::{SatResult, SolverCommand, SolverProcess};
use super::query::{build_query, QueryContext};
use crate::abstraction::QuasiReaction;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Valid,
    Invalid,
}

/// Which search loop issued a query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryTag {
    Outer,
    Inner,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GatewayStats {
    /// Solver round-trips issued by outer loops (cache misses only).
    pub outer_queries: u64,
    /// Solver round-trips issued by inner loops (cache misses only).
    pub inner_queries: u64,
    pub cache_hits: u64,
    pub solver_time: Duration,
}

impl GatewayStats {
    pub fn total_queries(&self) -> u64 {
        self.outer_queries + self.inner_queries
    }
}

/// Decides validity of quasi-reactions for one cluster.
pub trait ValidityOracle {
    fn check(&mut self, q: &QuasiReaction, tag: QueryTag) -> Result<Verdict>;
    fn stats(&self) -> GatewayStats;
}

/// Verdict cache and counters shared by oracle implementations.
#[derive(Debug, Default)]
pub struct OracleBook {
    cache: Option<HashMap<QuasiReaction, Verdict>>,
    stats: GatewayStats,
}

impl OracleBook {
    pub fn new(cache: bool) -> Self {
        OracleBook {
            cache: cache.then(HashMap::new),
            stats: GatewayStats::default(),
        }
    }

    pub fn stats(&self) -> GatewayStats {
        self.stats
    }

    /// Looks `q` up, otherwise runs `decide`, counting the round-trip.
    pub fn check(
        &mut self,
        q: &QuasiReaction,
        tag: QueryTag,
        decide: impl FnOnce(&QuasiReaction) -> Result<Verdict>,
    ) -> Result<Verdict> {
        if let Some(v) = self.cache.as_ref().and_then(|c| c.get(q)) {
            self.stats.cache_hits += 1;
            return Ok(*v);
        }
        match tag {
            QueryTag::Outer => self.stats.outer_queries += 1,
            QueryTag::Inner => self.stats.inner_queries += 1,
        }
        let start = Instant::now();
        let v = decide(q);
        self.stats.solver_time += start.elapsed();
        let v = v?;
        if let Some(c) = self.cache.as_mut() {
            c.insert(q.clone(), v);
        }
        Ok(v)
    }
}

/// Gateway to an external SMT-LIB2 solver.
pub struct SmtGateway {
    ctx: QueryContext,
    process: SolverProcess,
    book: OracleBook,
}

impl SmtGateway {
    pub fn new(ctx: QueryContext, cmd: &SolverCommand, timeout: Duration, cache: bool) -> Result<Self> {
        let process = SolverProcess::spawn(cmd, ctx.theory, timeout)?;
        Ok(SmtGateway {
            ctx,
            process,
            book: OracleBook::new(cache),
        })
    }

    pub fn context(&self) -> &QueryContext {
        &self.ctx
    }
}

impl ValidityOracle for SmtGateway {
    fn check(&mut self, q: &QuasiReaction, tag: QueryTag) -> Result<Verdict> {
        let (ctx, process) = (&self.ctx, &mut self.process);
        self.book.check(q, tag, |q| {
            let query = build_query(q, ctx)?;
            match process.check_sat(&query.body)? {
                SatResult::Sat => Ok(Verdict::Valid),
                SatResult::Unsat => Ok(Verdict::Invalid),
                SatResult::Unknown => Err(Error::Unknown(format!("{:?} / {:?}", q.p, q.a))),
            }
        })
    }

    fn stats(&self) -> GatewayStats {
        self.book.stats()
    }
}

/// An oracle backed by a closure; used for testing and for counting runs.
pub struct FnOracle<F> {
    decide: F,
    book: OracleBook,
}

impl<F: FnMut(&QuasiReaction) -> Result<Verdict>> FnOracle<F> {
    pub fn new(decide: F, cache: bool) -> Self {
        FnOracle {
            decide,
            book: OracleBook::new(cache),
        }
    }
}

impl<F: FnMut(&QuasiReaction) -> Result<Verdict>> ValidityOracle for FnOracle<F> {
    fn check(&mut self, q: &QuasiReaction, tag: QueryTag) -> Result<Verdict> {
        let decide = &mut self.decide;
        self.book.check(q, tag, |q| decide(q))
    }

    fn stats(&self) -> GatewayStats {
        self.book.stats()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abstraction::ChoiceSet;

    #[test]
    fn cache_hits_do_not_count_as_queries() {
        let mut calls = 0;
        let mut o = FnOracle::new(
            |q: &QuasiReaction| {
                calls += 1;
                Ok(if q.p.is_empty() { Verdict::Invalid } else { Verdict::Valid })
            },
            true,
        );
        let q = QuasiReaction::reaction(ChoiceSet::from_indices(4, [1]));
        assert_eq!(o.check(&q, QueryTag::Outer).unwrap(), Verdict::Valid);
        assert_eq!(o.check(&q, QueryTag::Inner).unwrap(), Verdict::Valid);
        let s = o.stats();
        assert_eq!((s.outer_queries, s.inner_queries, s.cache_hits), (1, 0, 1));
        drop(o);
        assert_eq!(calls, 1);
    }

    #[test]
    fn uncached_oracles_count_every_call() {
        let mut o = FnOracle::new(|_: &QuasiReaction| Ok(Verdict::Invalid), false);
        let q = QuasiReaction::bottom(2);
        o.check(&q, QueryTag::Inner).unwrap();
        o.check(&q, QueryTag::Inner).unwrap();
        assert_eq!(o.stats().inner_queries, 2);
    }
}
