use super::choice::{ChoiceSet, QuasiReaction};
use crate::error::{Error, Result};
use crate::smt::{QueryTag, ValidityOracle, Verdict};

/// Potential-sets of valid reactions, in discovery order, without duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidReactionSet {
    universe: usize,
    entries: Vec<ChoiceSet>,
}

impl ValidReactionSet {
    pub fn new(universe: usize) -> Self {
        ValidReactionSet {
            universe,
            entries: Vec::new(),
        }
    }

    /// Adds a potential-set. Returns `false` if it was already present.
    /// An empty potential-set can never be valid and is rejected.
    pub fn push(&mut self, p: ChoiceSet) -> Result<bool> {
        if p.universe() != self.universe {
            return Err(Error::Invariant(format!(
                "potential-set over {} choices pushed into a set over {}",
                p.universe(),
                self.universe
            )));
        }
        if p.is_empty() {
            return Err(Error::Invariant(
                "a reaction with no potentials was reported valid".into(),
            ));
        }
        if self.entries.contains(&p) {
            return Ok(false);
        }
        self.entries.push(p);
        Ok(true)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn entries(&self) -> &[ChoiceSet] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Some entry's potentials are contained in `p`.
    pub fn dominates(&self, p: &ChoiceSet) -> bool {
        self.entries.iter().any(|e| e.is_subset(p))
    }
}

/// Default cap on brute-force queries; larger runs need `force`.
pub const DEFAULT_QUERY_CAP: u64 = 1024;

#[derive(Debug, Clone, Copy)]
pub struct BruteForceOptions {
    pub query_cap: u64,
    pub force: bool,
}

impl Default for BruteForceOptions {
    fn default() -> Self {
        BruteForceOptions {
            query_cap: DEFAULT_QUERY_CAP,
            force: false,
        }
    }
}

/// Number of reactions over `n` literals, if it fits in a `u64`.
pub fn reaction_count(n: usize) -> Option<u64> {
    let choices = 1u64.checked_shl(n as u32)?;
    1u64.checked_shl(u32::try_from(choices).ok()?)
}

/// Checks every reaction over `n` literals, in ascending potential-mask order.
pub fn brute_force(oracle: &mut dyn ValidityOracle, n: usize, opts: BruteForceOptions) -> Result<ValidReactionSet> {
    let total = reaction_count(n)
        .filter(|_| n <= 5)
        .ok_or_else(|| Error::Capacity(format!("brute force over {n} literals is not enumerable")))?;
    if total > opts.query_cap && !opts.force {
        return Err(Error::Capacity(format!(
            "brute force over {n} literals needs {total} queries, above the cap of {}; force to override",
            opts.query_cap
        )));
    }
    let universe = 1usize << n;
    let mut vr = ValidReactionSet::new(universe);
    for mask in 0..total {
        let p = ChoiceSet::from_mask(universe, mask);
        let q = QuasiReaction::reaction(p.clone());
        if oracle.check(&q, QueryTag::Outer)? == Verdict::Valid {
            vr.push(p)?;
        }
    }
    Ok(vr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smt::FnOracle;

    #[test]
    fn issues_one_query_per_reaction() {
        let mut o = FnOracle::new(|q: &QuasiReaction| Ok(if q.p.len() == 1 { Verdict::Valid } else { Verdict::Invalid }), true);
        let vr = brute_force(&mut o, 2, BruteForceOptions::default()).unwrap();
        assert_eq!(o.stats().outer_queries, 16);
        assert_eq!(vr.len(), 4);
    }

    #[test]
    fn large_runs_need_force() {
        let mut o = FnOracle::new(|_: &QuasiReaction| Ok(Verdict::Invalid), false);
        assert!(matches!(
            brute_force(&mut o, 4, BruteForceOptions::default()),
            Err(Error::Capacity(_))
        ));
        assert_eq!(o.stats().outer_queries, 0);
    }

    #[test]
    fn empty_potentials_are_rejected() {
        let mut vr = ValidReactionSet::new(4);
        assert!(vr.push(ChoiceSet::empty(4)).is_err());
        assert!(vr.push(ChoiceSet::from_indices(4, [1])).unwrap());
        assert!(!vr.push(ChoiceSet::from_indices(4, [1])).unwrap());
        assert_eq!(vr.len(), 1);
    }

    #[test]
    fn reaction_counts() {
        assert_eq!(reaction_count(2), Some(16));
        assert_eq!(reaction_count(4), Some(65536));
        assert_eq!(reaction_count(6), None);
    }
}
