//! Choices, choice sets and the quasi-reaction lattice.

use std::fmt;

use crate::error::{Error, Result};
use crate::model::{Atom, LiteralTable};

/// Default cap on the number of literals whose choices may be enumerated.
pub const DEFAULT_CHOICE_LIMIT: usize = 16;

/// A valuation of the literals of a cluster: bit `i` set iff literal `i` holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Choice(pub u32);

impl Choice {
    pub fn holds(self, literal: usize) -> bool {
        self.0 >> literal & 1 == 1
    }
}

/// A set of choices over a fixed universe of `2^n` choices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChoiceSet {
    words: Vec<u64>,
    universe: usize,
}

impl ChoiceSet {
    pub fn empty(universe: usize) -> Self {
        ChoiceSet {
            words: vec![0; universe.div_ceil(64)],
            universe,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for i in 0..universe {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(universe: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(universe);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// The set whose membership is bit `i` of `mask` (universe ≤ 64).
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        debug_assert!(universe <= 64);
        let mut s = Self::empty(universe);
        if universe > 0 {
            s.words[0] = if universe == 64 { mask } else { mask & ((1u64 << universe) - 1) };
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.universe, "choice {i} outside universe {}", self.universe);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.universe && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe).filter(move |&i| self.contains(i))
    }

    fn zip(&self, other: &ChoiceSet, op: impl Fn(u64, u64) -> u64) -> ChoiceSet {
        assert_eq!(self.universe, other.universe, "choice sets over different universes");
        ChoiceSet {
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect(),
            universe: self.universe,
        }
    }

    pub fn union(&self, other: &ChoiceSet) -> ChoiceSet {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &ChoiceSet) -> ChoiceSet {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &ChoiceSet) -> ChoiceSet {
        self.zip(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> ChoiceSet {
        ChoiceSet::full(self.universe).difference(self)
    }

    pub fn is_subset(&self, other: &ChoiceSet) -> bool {
        self.words.iter().zip(&other.words).all(|(&a, &b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &ChoiceSet) -> bool {
        self.words.iter().zip(&other.words).all(|(&a, &b)| a & b == 0)
    }
}

impl fmt::Debug for ChoiceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// All `2^n` choices in ascending numeric order.
pub fn enumerate_choices(n: usize) -> Result<Vec<Choice>> {
    enumerate_choices_limited(n, DEFAULT_CHOICE_LIMIT)
}

pub fn enumerate_choices_limited(n: usize, limit: usize) -> Result<Vec<Choice>> {
    if n > limit || n >= 32 {
        return Err(Error::Capacity(format!(
            "{n} literals exceed the choice enumeration limit of {limit}"
        )));
    }
    Ok((0..1u32 << n).map(Choice).collect())
}

/// `f(c)`: each literal of the table asserted or negated per the choice.
/// Returns `(atom, holds)` pairs in literal order.
pub fn choice_formula(c: Choice, table: &LiteralTable) -> Result<Vec<(Atom, bool)>> {
    if table.len() < 32 && c.0 >> table.len() != 0 {
        return Err(Error::Invariant(format!(
            "choice {:#b} wider than a table of {} literals",
            c.0,
            table.len()
        )));
    }
    (0..table.len())
        .map(|i| Ok((table.atom(i)?.clone(), c.holds(i))))
        .collect()
}

/// Disjoint potentials `p` and antipotentials `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuasiReaction {
    pub p: ChoiceSet,
    pub a: ChoiceSet,
}

impl QuasiReaction {
    pub fn new(p: ChoiceSet, a: ChoiceSet) -> Result<Self> {
        if !p.is_disjoint(&a) {
            return Err(Error::Lattice(format!(
                "potentials {p:?} and antipotentials {a:?} overlap"
            )));
        }
        Ok(QuasiReaction { p, a })
    }

    /// The reaction with potentials `p` and all other choices antipotential.
    pub fn reaction(p: ChoiceSet) -> Self {
        let a = p.complement();
        QuasiReaction { p, a }
    }

    pub fn bottom(universe: usize) -> Self {
        QuasiReaction {
            p: ChoiceSet::empty(universe),
            a: ChoiceSet::empty(universe),
        }
    }

    pub fn universe(&self) -> usize {
        self.p.universe()
    }

    pub fn is_reaction(&self) -> bool {
        self.p.union(&self.a).len() == self.universe()
    }

    pub fn meet(&self, other: &QuasiReaction) -> QuasiReaction {
        QuasiReaction {
            p: self.p.intersection(&other.p),
            a: self.a.intersection(&other.a),
        }
    }

    pub fn join(&self, other: &QuasiReaction) -> Result<QuasiReaction> {
        if !self.p.is_disjoint(&other.a) || !other.p.is_disjoint(&self.a) {
            return Err(Error::Lattice(
                "join of quasi-reactions with no common upper reaction".into(),
            ));
        }
        Ok(QuasiReaction {
            p: self.p.union(&other.p),
            a: self.a.union(&other.a),
        })
    }

    pub fn leq(&self, other: &QuasiReaction) -> bool {
        self.p.is_subset(&other.p) && self.a.is_subset(&other.a)
    }

    /// Keeps only the choices in `kept`.
    pub fn restrict(&self, kept: &ChoiceSet) -> QuasiReaction {
        QuasiReaction {
            p: self.p.intersection(kept),
            a: self.a.intersection(kept),
        }
    }
}
