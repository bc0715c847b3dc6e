//! SAT-guided search for valid reactions.
//!
//! The outer solver has one variable `z_c` per choice (`z_c` true: `c` is a
//! potential). Each model is a reaction; the answer of the validity oracle
//! prunes the space with a clause. The nested variant asks an inner solver
//! over mask variables `w_c` for smaller invalid quasi-reactions first.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::cdcl::{Cdcl, Lit};
use crate::abstraction::{ChoiceSet, QuasiReaction, ValidReactionSet};
use crate::error::Result;
use crate::io::HeuristicsRecord;
use crate::smt::{QueryTag, ValidityOracle, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Heuristics {
    /// Maximum inner queries per inner-loop entry (fatigue).
    pub mxi: u32,
    /// Enter the inner loop only on every `md`-th invalid outer model.
    pub md: u32,
    /// Fatigue decays by one every `dc` entries; 0 disables decay.
    pub dc: u32,
    /// Enter only when the all-antipotential core `(∅, A)` is invalid.
    pub acore: bool,
}

impl Heuristics {
    pub fn new(mxi: u32, md: u32, dc: u32, acore: bool) -> Heuristics {
        Heuristics {
            mxi,
            md: md.max(1),
            dc,
            acore,
        }
    }

    /// Setup used when none is given. The fatigue of `2^(n+1)` lets one
    /// greedy shrink run to a minimal core over the `2^n` choices; the
    /// antipotential-core gate only pays off on small clusters.
    pub fn default_for(literals: usize) -> Heuristics {
        let mxi = 1u32.checked_shl(literals as u32 + 1).unwrap_or(u32::MAX);
        Heuristics::new(mxi, 1, 0, literals <= 5)
    }

    /// Model-loop behaviour: the inner loop is never entered.
    pub fn disabled() -> Heuristics {
        Heuristics::new(0, 1, 0, false)
    }

    /// Fatigue available after `entries` previous inner-loop entries.
    pub fn fatigue(&self, entries: u64) -> u32 {
        if self.dc == 0 {
            self.mxi
        } else {
            let decay = entries / u64::from(self.dc);
            u64::from(self.mxi).saturating_sub(decay) as u32
        }
    }

    pub fn record(&self) -> HeuristicsRecord {
        HeuristicsRecord {
            mxi: self.mxi,
            md: self.md,
            dc: self.dc,
            acore: self.acore,
        }
    }
}

/// Why a clause was added to the outer solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClauseCause {
    /// Blocks every potential-set containing the valid reaction's potentials.
    Valid(ChoiceSet),
    /// Blocks every reaction above a quasi-reaction the oracle found invalid.
    Invalid(QuasiReaction),
    /// Blocks exactly one reaction, found invalid.
    Reaction(QuasiReaction),
}

/// An outer clause over `z`: `(choice, polarity)` literals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoggedClause {
    pub literals: Vec<(usize, bool)>,
    pub cause: ClauseCause,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub vr: ValidReactionSet,
    pub clauses: Vec<LoggedClause>,
    pub inner_entries: u64,
}

/// Outer-search options.
#[derive(Debug, Clone, Copy, Default)]
pub struct SearchOptions {
    /// Non-zero seeds shuffle the outer decision order.
    pub seed: u64,
}

struct Outer {
    sat: Cdcl,
    log: Vec<LoggedClause>,
}

impl Outer {
    fn new(universe: usize, seed: u64) -> Outer {
        let mut order: Vec<usize> = (0..universe).collect();
        if seed != 0 {
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        }
        let mut sat = Cdcl::new(universe, order, vec![false; universe]);
        // Phase saving: after a conflict the search stays near the last model.
        sat.set_phase_saving(true);
        let all: Vec<Lit> = (0..universe).map(|c| Lit::new(c, true)).collect();
        sat.add_clause(&all);
        Outer { sat, log: Vec::new() }
    }

    fn add(&mut self, literals: Vec<(usize, bool)>, cause: ClauseCause) {
        let lits: Vec<Lit> = literals.iter().map(|&(c, pos)| Lit::new(c, pos)).collect();
        self.sat.add_clause(&lits);
        self.log.push(LoggedClause { literals, cause });
    }

    /// `¬(⋀_{P′} z ∧ ⋀_{A′} ¬z)`.
    fn block_above(&mut self, q: &QuasiReaction, cause: ClauseCause) {
        let lits = q.p.iter().map(|c| (c, false)).chain(q.a.iter().map(|c| (c, true))).collect();
        self.add(lits, cause);
    }
}

pub fn model_loop(oracle: &mut dyn ValidityOracle, n: usize, opts: SearchOptions) -> Result<SearchOutcome> {
    nested_loop(oracle, n, Heuristics::disabled(), opts)
}

pub fn nested_loop(
    oracle: &mut dyn ValidityOracle,
    n: usize,
    h: Heuristics,
    opts: SearchOptions,
) -> Result<SearchOutcome> {
    let universe = 1usize << n;
    let mut outer = Outer::new(universe, opts.seed);
    let mut vr = ValidReactionSet::new(universe);
    let mut invalid_count: u64 = 0;
    let mut inner_entries: u64 = 0;

    while let Some(model) = outer.sat.solve() {
        let p = ChoiceSet::from_indices(universe, (0..universe).filter(|&c| model[c]));
        let r = QuasiReaction::reaction(p.clone());
        if oracle.check(&r, QueryTag::Outer)? == Verdict::Valid {
            vr.push(p.clone())?;
            outer.add(p.iter().map(|c| (c, false)).collect(), ClauseCause::Valid(p));
            continue;
        }

        let fatigue = h.fatigue(inner_entries);
        let mut enter = invalid_count.is_multiple_of(u64::from(h.md)) && fatigue > 0;
        invalid_count += 1;
        let core = QuasiReaction::new(ChoiceSet::empty(universe), r.a.clone())?;
        let mut core_invalid = false;
        if enter && h.acore {
            core_invalid = oracle.check(&core, QueryTag::Outer)? == Verdict::Invalid;
            enter = core_invalid;
        }

        if enter {
            let mut cores = inner_loop(oracle, &r, fatigue)?;
            inner_entries += 1;
            if core_invalid && !cores.contains(&core) {
                cores.push(core);
                cores = minimize(cores);
            }
            for q in cores {
                outer.block_above(&q, ClauseCause::Invalid(q.clone()));
            }
        } else if oracle.check(&core, QueryTag::Outer)? == Verdict::Invalid {
            outer.add(r.a.iter().map(|c| (c, true)).collect(), ClauseCause::Invalid(core));
        } else {
            outer.block_above(&r, ClauseCause::Reaction(r.clone()));
        }
    }

    Ok(SearchOutcome {
        vr,
        clauses: outer.log,
        inner_entries,
    })
}

/// Explores masks of the invalid reaction `r` for smaller invalid
/// quasi-reactions, spending at most `fatigue` oracle calls. Returns the
/// ⪯-minimal ones found, or `[r]` if none was.
///
/// Shrinking is greedy: once a mask is invalid its masked choices stay
/// masked (temporary units) while further choices are tried. When nothing
/// more can be masked the core is minimal; the units are dropped and the
/// search restarts under the permanent pruning clauses, looking for
/// another core.
pub fn inner_loop(oracle: &mut dyn ValidityOracle, r: &QuasiReaction, mut fatigue: u32) -> Result<Vec<QuasiReaction>> {
    let universe = r.universe();
    let none_masked: Vec<Lit> = (0..universe).map(|c| Lit::new(c, false)).collect();
    let mut permanent: Vec<Vec<Lit>> = vec![none_masked];
    let mut frozen: Vec<usize> = Vec::new();
    let mut cores = Vec::new();

    // Descending order with phase "kept": the first model masks choice 0.
    let build = |permanent: &[Vec<Lit>], frozen: &[usize]| {
        let mut sat = Cdcl::new(universe, (0..universe).rev().collect(), vec![true; universe]);
        let mut ok = permanent.iter().all(|c| sat.add_clause(c));
        for &c in frozen {
            ok &= sat.add_clause(&[Lit::new(c, false)]);
        }
        (sat, ok)
    };
    let (mut sat, mut ok) = build(&permanent, &frozen);

    while fatigue > 0 {
        let model = if ok { sat.solve() } else { None };
        let Some(model) = model else {
            if frozen.is_empty() {
                break;
            }
            frozen.clear();
            (sat, ok) = build(&permanent, &frozen);
            continue;
        };
        fatigue -= 1;
        let kept = ChoiceSet::from_indices(universe, (0..universe).filter(|&c| model[c]));
        let q = r.restrict(&kept);
        let clause: Vec<Lit> = match oracle.check(&q, QueryTag::Inner)? {
            // Every mask hiding at least these choices is valid too.
            Verdict::Valid => (0..universe).filter(|&c| !model[c]).map(|c| Lit::new(c, true)).collect(),
            Verdict::Invalid => {
                cores.push(q);
                frozen = (0..universe).filter(|&c| !model[c]).collect();
                for &c in &frozen {
                    sat.add_clause(&[Lit::new(c, false)]);
                }
                // Every mask keeping at least these choices is invalid too.
                kept.iter().map(|c| Lit::new(c, false)).collect()
            }
        };
        ok &= sat.add_clause(&clause);
        permanent.push(clause);
    }

    if cores.is_empty() {
        return Ok(vec![r.clone()]);
    }
    Ok(minimize(cores))
}

/// Keeps the ⪯-minimal elements, without duplicates, in first-seen order.
pub fn minimize(cores: Vec<QuasiReaction>) -> Vec<QuasiReaction> {
    let mut out: Vec<QuasiReaction> = Vec::new();
    for (i, q) in cores.iter().enumerate() {
        let dominated = cores
            .iter()
            .enumerate()
            .any(|(j, o)| j != i && o.leq(q) && (o != q || j < i));
        if !dominated {
            out.push(q.clone());
        }
    }
    out
}
