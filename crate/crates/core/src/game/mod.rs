//! Safety games for the `G(current, next)` fragment.
//!
//! A Boolean formula `⋀ G(body)`, where each body is propositional except
//! for `X` around propositional subformulas, becomes a predicate ψ over the
//! current valuation `v` and the next one `v′`. Each step the environment
//! picks the next inputs, then the system picks the next outputs.

use std::collections::BTreeMap;

use crate::abstraction::BooleanSpec;
use crate::error::{Error, Result};
use crate::model::{BoolFormula, Formula};

/// Default limit on `|V|`.
pub const DEFAULT_STATE_CAP: usize = 24;

/// Propositional predicate over `2·|V|` slots: `0..|V|` current, `|V|..` next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pred {
    Const(bool),
    Var(usize),
    Not(Box<Pred>),
    And(Vec<Pred>),
    Or(Vec<Pred>),
    Implies(Box<Pred>, Box<Pred>),
    Iff(Box<Pred>, Box<Pred>),
}

impl Pred {
    /// `cur` and `next` are valuations as bitmasks over `V`.
    pub fn eval(&self, width: usize, cur: u64, next: u64) -> bool {
        match self {
            Pred::Const(b) => *b,
            Pred::Var(i) => {
                if *i < width {
                    cur >> i & 1 == 1
                } else {
                    next >> (i - width) & 1 == 1
                }
            }
            Pred::Not(p) => !p.eval(width, cur, next),
            Pred::And(ps) => ps.iter().all(|p| p.eval(width, cur, next)),
            Pred::Or(ps) => ps.iter().any(|p| p.eval(width, cur, next)),
            Pred::Implies(a, b) => !a.eval(width, cur, next) || b.eval(width, cur, next),
            Pred::Iff(a, b) => a.eval(width, cur, next) == b.eval(width, cur, next),
        }
    }

    fn mentions_next(&self, width: usize) -> bool {
        match self {
            Pred::Const(_) => false,
            Pred::Var(i) => *i >= width,
            Pred::Not(p) => p.mentions_next(width),
            Pred::And(ps) | Pred::Or(ps) => ps.iter().any(|p| p.mentions_next(width)),
            Pred::Implies(a, b) | Pred::Iff(a, b) => a.mentions_next(width) || b.mentions_next(width),
        }
    }
}

/// ψ(V, V′) with `V = inputs ++ outputs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairConstraint {
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub psi: Pred,
}

impl PairConstraint {
    pub fn width(&self) -> usize {
        self.inputs.len() + self.outputs.len()
    }

    /// Names of `V` in slot order.
    pub fn atoms(&self) -> impl Iterator<Item = &String> {
        self.inputs.iter().chain(&self.outputs)
    }

    /// Valuation with inputs `i` and outputs `o`.
    pub fn state(&self, i: u64, o: u64) -> u64 {
        i | o << self.inputs.len()
    }

    pub fn holds(&self, cur: u64, next: u64) -> bool {
        self.psi.eval(self.width(), cur, next)
    }

    /// Whether any next-step atom occurs in ψ.
    pub fn uses_next(&self) -> bool {
        self.psi.mentions_next(self.width())
    }
}

pub fn spec_pair_form(b: &BooleanSpec) -> Result<PairConstraint> {
    to_pair_form(&b.formula(), &b.inputs, &b.outputs)
}

/// Rejects everything outside `⋀ G(body)` with `X` only around
/// propositional subformulas of a body.
pub fn to_pair_form(f: &BoolFormula, inputs: &[String], outputs: &[String]) -> Result<PairConstraint> {
    let mut slots = BTreeMap::new();
    for (i, name) in inputs.iter().chain(outputs).enumerate() {
        if slots.insert(name.as_str(), i).is_some() {
            return Err(Error::Fragment(format!("proposition `{name}` declared twice")));
        }
    }
    let width = slots.len();
    let mut conjuncts = Vec::new();
    flatten_and(f, &mut conjuncts);
    let mut bodies = Vec::new();
    for c in conjuncts {
        match c {
            Formula::True => {}
            Formula::Globally(body) => bodies.push(lower(body, &slots, width, false)?),
            other => {
                return Err(Error::Fragment(format!(
                    "top-level conjunct `{other}` is not of the form G(...)"
                )))
            }
        }
    }
    let psi = match bodies.len() {
        0 => Pred::Const(true),
        1 => bodies.pop().unwrap(),
        _ => Pred::And(bodies),
    };
    Ok(PairConstraint {
        inputs: inputs.to_vec(),
        outputs: outputs.to_vec(),
        psi,
    })
}

fn flatten_and<'a>(f: &'a BoolFormula, out: &mut Vec<&'a BoolFormula>) {
    match f {
        Formula::And(fs) => fs.iter().for_each(|g| flatten_and(g, out)),
        _ => out.push(f),
    }
}

fn lower(f: &BoolFormula, slots: &BTreeMap<&str, usize>, width: usize, primed: bool) -> Result<Pred> {
    let go = |g: &BoolFormula| lower(g, slots, width, primed);
    Ok(match f {
        Formula::True => Pred::Const(true),
        Formula::False => Pred::Const(false),
        Formula::Atom(name) => {
            let Some(&i) = slots.get(name.as_str()) else {
                return Err(Error::Fragment(format!("proposition `{name}` is neither an input nor an output")));
            };
            Pred::Var(if primed { i + width } else { i })
        }
        Formula::Not(g) => Pred::Not(Box::new(go(g)?)),
        Formula::And(gs) => Pred::And(gs.iter().map(go).collect::<Result<_>>()?),
        Formula::Or(gs) => Pred::Or(gs.iter().map(go).collect::<Result<_>>()?),
        Formula::Implies(a, b) => Pred::Implies(Box::new(go(a)?), Box::new(go(b)?)),
        Formula::Iff(a, b) => Pred::Iff(Box::new(go(a)?), Box::new(go(b)?)),
        Formula::Next(g) => {
            if primed {
                return Err(Error::Fragment("nested X is outside the supported fragment".into()));
            }
            lower(g, slots, width, true)?
        }
        Formula::Globally(_) => return Err(Error::Fragment("nested G is outside the supported fragment".into())),
        Formula::Until(..) | Formula::Release(..) | Formula::Eventually(_) => {
            return Err(Error::Fragment(format!("`{f}` uses U, R or F, which are outside the supported fragment")))
        }
    })
}

/// Bitset over the `2^|V|` valuations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSet {
    bits: Vec<u64>,
    len: usize,
}

impl StateSet {
    fn new(len: usize, full: bool) -> StateSet {
        let mut bits = vec![if full { u64::MAX } else { 0 }; len.div_ceil(64)];
        if full && !len.is_multiple_of(64) {
            if let Some(last) = bits.last_mut() {
                *last = (1u64 << (len % 64)) - 1;
            }
        }
        StateSet { bits, len }
    }

    pub fn contains(&self, v: u64) -> bool {
        let v = v as usize;
        v < self.len && self.bits[v / 64] >> (v % 64) & 1 == 1
    }

    fn set(&mut self, v: u64, on: bool) {
        let (w, b) = (v as usize / 64, v % 64);
        if on {
            self.bits[w] |= 1 << b;
        } else {
            self.bits[w] &= !(1 << b);
        }
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of valuations in the universe.
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len as u64).filter(|&v| self.contains(v))
    }
}

#[derive(Debug, Clone)]
pub struct GameVerdict {
    pub realizable: bool,
    pub winning: StateSet,
}

/// Safety predecessor restricted to `w`: can the system answer every
/// environment move from `v` and stay in `w` while satisfying ψ?
pub fn controllable(g: &PairConstraint, w: &StateSet, v: u64) -> bool {
    (0..1u64 << g.inputs.len()).all(|i| response(g, w, v, i).is_some())
}

/// First output `o′` (ascending) with ψ(v, (i′, o′)) and `(i′, o′) ∈ w`.
pub fn response(g: &PairConstraint, w: &StateSet, v: u64, i: u64) -> Option<u64> {
    (0..1u64 << g.outputs.len()).find(|&o| {
        let next = g.state(i, o);
        w.contains(next) && g.holds(v, next)
    })
}

pub fn solve(g: &PairConstraint) -> Result<GameVerdict> {
    solve_capped(g, DEFAULT_STATE_CAP)
}

/// Greatest fixpoint `W = {v : ∀i′ ∃o′ ψ(v,(i′,o′)) ∧ (i′,o′) ∈ W}`;
/// realizable iff `∀i0 ∃o0 (i0,o0) ∈ W`.
pub fn solve_capped(g: &PairConstraint, cap: usize) -> Result<GameVerdict> {
    let width = g.width();
    if width > cap.min(40) {
        return Err(Error::Capacity(format!(
            "game over {width} propositions exceeds the cap of {cap}"
        )));
    }
    let len = 1usize << width;
    let mut w = StateSet::new(len, true);
    loop {
        let mut changed = false;
        for v in 0..len as u64 {
            if w.contains(v) && !controllable(g, &w, v) {
                w.set(v, false);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let realizable = (0..1u64 << g.inputs.len()).all(|i| (0..1u64 << g.outputs.len()).any(|o| w.contains(g.state(i, o))));
    Ok(GameVerdict { realizable, winning: w })
}

/// Memoryless witness: start in `initial(i0)`, then answer `step(v, i′)`.
pub struct Strategy<'a> {
    game: &'a PairConstraint,
    verdict: &'a GameVerdict,
}

impl<'a> Strategy<'a> {
    pub fn new(game: &'a PairConstraint, verdict: &'a GameVerdict) -> Option<Strategy<'a>> {
        verdict.realizable.then_some(Strategy { game, verdict })
    }

    /// First state for initial inputs `i0`.
    pub fn initial(&self, i0: u64) -> u64 {
        let o = (0..1u64 << self.game.outputs.len())
            .find(|&o| self.verdict.winning.contains(self.game.state(i0, o)))
            .expect("realizable games have a winning initial output");
        self.game.state(i0, o)
    }

    /// Next state from winning `v` when the environment plays `i`.
    pub fn step(&self, v: u64, i: u64) -> u64 {
        let o = response(self.game, &self.verdict.winning, v, i).expect("winning states stay winning");
        self.game.state(i, o)
    }
}
