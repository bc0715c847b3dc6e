//! Generic LTL syntax trees.
//!
//! The same tree is used for theory formulas (`Formula<Atom>`) and purely
//! propositional Boolean formulas (`Formula<String>`).

use std::fmt;

use super::term::Atom;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula<A> {
    True,
    False,
    Atom(A),
    Not(Box<Formula<A>>),
    And(Vec<Formula<A>>),
    Or(Vec<Formula<A>>),
    Implies(Box<Formula<A>>, Box<Formula<A>>),
    Iff(Box<Formula<A>>, Box<Formula<A>>),
    Next(Box<Formula<A>>),
    Until(Box<Formula<A>>, Box<Formula<A>>),
    Release(Box<Formula<A>>, Box<Formula<A>>),
    Eventually(Box<Formula<A>>),
    Globally(Box<Formula<A>>),
}

/// Boolean formulas over named propositions.
pub type BoolFormula = Formula<String>;

/// Atoms that know whether they need parentheses when printed.
pub trait DisplayAtom: fmt::Display {
    fn needs_parens(&self) -> bool;
}

impl DisplayAtom for Atom {
    fn needs_parens(&self) -> bool {
        true
    }
}

impl DisplayAtom for String {
    fn needs_parens(&self) -> bool {
        false
    }
}

impl<A> Formula<A> {
    pub fn atom(a: A) -> Self {
        Formula::Atom(a)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula<A>) -> Self {
        Formula::Not(Box::new(f))
    }

    /// Conjunction; `true` when empty, the element itself when singleton.
    pub fn and(mut fs: Vec<Formula<A>>) -> Self {
        match fs.len() {
            0 => Formula::True,
            1 => fs.pop().unwrap(),
            _ => Formula::And(fs),
        }
    }

    /// Disjunction; `false` when empty, the element itself when singleton.
    pub fn or(mut fs: Vec<Formula<A>>) -> Self {
        match fs.len() {
            0 => Formula::False,
            1 => fs.pop().unwrap(),
            _ => Formula::Or(fs),
        }
    }

    pub fn implies(a: Formula<A>, b: Formula<A>) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula<A>, b: Formula<A>) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn next(f: Formula<A>) -> Self {
        Formula::Next(Box::new(f))
    }

    pub fn globally(f: Formula<A>) -> Self {
        Formula::Globally(Box::new(f))
    }

    pub fn map_atoms<B>(&self, f: &mut impl FnMut(&A) -> Formula<B>) -> Formula<B> {
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Atom(a) => f(a),
            Formula::Not(x) => Formula::Not(Box::new(x.map_atoms(f))),
            Formula::And(xs) => Formula::And(xs.iter().map(|x| x.map_atoms(f)).collect()),
            Formula::Or(xs) => Formula::Or(xs.iter().map(|x| x.map_atoms(f)).collect()),
            Formula::Implies(x, y) => Formula::Implies(Box::new(x.map_atoms(f)), Box::new(y.map_atoms(f))),
            Formula::Iff(x, y) => Formula::Iff(Box::new(x.map_atoms(f)), Box::new(y.map_atoms(f))),
            Formula::Next(x) => Formula::Next(Box::new(x.map_atoms(f))),
            Formula::Until(x, y) => Formula::Until(Box::new(x.map_atoms(f)), Box::new(y.map_atoms(f))),
            Formula::Release(x, y) => Formula::Release(Box::new(x.map_atoms(f)), Box::new(y.map_atoms(f))),
            Formula::Eventually(x) => Formula::Eventually(Box::new(x.map_atoms(f))),
            Formula::Globally(x) => Formula::Globally(Box::new(x.map_atoms(f))),
        }
    }

    /// Visits atoms in left-to-right (first-occurrence) order.
    pub fn for_each_atom<'a>(&'a self, f: &mut impl FnMut(&'a A)) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => f(a),
            Formula::Not(x) | Formula::Next(x) | Formula::Eventually(x) | Formula::Globally(x) => {
                x.for_each_atom(f)
            }
            Formula::And(xs) | Formula::Or(xs) => xs.iter().for_each(|x| x.for_each_atom(f)),
            Formula::Implies(x, y)
            | Formula::Iff(x, y)
            | Formula::Until(x, y)
            | Formula::Release(x, y) => {
                x.for_each_atom(f);
                y.for_each_atom(f);
            }
        }
    }

    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => true,
            Formula::Not(x) => x.is_propositional(),
            Formula::And(xs) | Formula::Or(xs) => xs.iter().all(Formula::is_propositional),
            Formula::Implies(x, y) | Formula::Iff(x, y) => x.is_propositional() && y.is_propositional(),
            _ => false,
        }
    }

    fn is_compound(&self) -> bool {
        matches!(
            self,
            Formula::And(_)
                | Formula::Or(_)
                | Formula::Implies(..)
                | Formula::Iff(..)
                | Formula::Until(..)
                | Formula::Release(..)
        )
    }
}

impl Formula<String> {
    pub fn prop(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    /// Truth value under `val`, which must cover every proposition.
    pub fn eval(&self, val: &dyn Fn(&str) -> bool) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(p) => val(p),
            Formula::Not(x) => !x.eval(val),
            Formula::And(xs) => xs.iter().all(|x| x.eval(val)),
            Formula::Or(xs) => xs.iter().any(|x| x.eval(val)),
            Formula::Implies(x, y) => !x.eval(val) || y.eval(val),
            Formula::Iff(x, y) => x.eval(val) == y.eval(val),
            _ => panic!("eval on a temporal formula"),
        }
    }
}

impl<A: DisplayAtom> Formula<A> {
    fn fmt_child(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_compound() {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }

    fn fmt_unary(f: &mut fmt::Formatter<'_>, op: &str, x: &Formula<A>) -> fmt::Result {
        match x {
            Formula::Atom(a) if !a.needs_parens() => write!(f, "{op} {x}"),
            Formula::True | Formula::False => write!(f, "{op} {x}"),
            _ if x.is_compound() => write!(f, "{op}({x})"),
            _ => write!(f, "{op} {x}"),
        }
    }
}

impl<A: DisplayAtom> fmt::Display for Formula<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nary = |f: &mut fmt::Formatter<'_>, xs: &[Formula<A>], sep: &str| -> fmt::Result {
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    f.write_str(sep)?;
                }
                x.fmt_child(f)?;
            }
            Ok(())
        };
        let binary = |f: &mut fmt::Formatter<'_>, x: &Formula<A>, sep: &str, y: &Formula<A>| {
            x.fmt_child(f)?;
            f.write_str(sep)?;
            y.fmt_child(f)
        };
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Atom(a) if a.needs_parens() => write!(f, "({a})"),
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Not(x) => {
                if x.is_compound() {
                    write!(f, "!({x})")
                } else {
                    write!(f, "!{x}")
                }
            }
            Formula::And(xs) => nary(f, xs, " & "),
            Formula::Or(xs) => nary(f, xs, " | "),
            Formula::Implies(x, y) => binary(f, x, " -> ", y),
            Formula::Iff(x, y) => binary(f, x, " <-> ", y),
            Formula::Until(x, y) => binary(f, x, " U ", y),
            Formula::Release(x, y) => binary(f, x, " R ", y),
            Formula::Next(x) => Self::fmt_unary(f, "X", x),
            Formula::Eventually(x) => Self::fmt_unary(f, "F", x),
            Formula::Globally(x) => Self::fmt_unary(f, "G", x),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BoolFormula {
        Formula::prop(s)
    }

    #[test]
    fn display_parenthesizes_compound_children() {
        let f = Formula::globally(Formula::and(vec![
            Formula::implies(p("s0"), Formula::next(p("s1"))),
            Formula::implies(Formula::not(p("s0")), p("s2")),
        ]));
        assert_eq!(f.to_string(), "G((s0 -> X s1) & (!s0 -> s2))");
    }

    #[test]
    fn collapsing_constructors() {
        assert_eq!(BoolFormula::and(vec![]), Formula::True);
        assert_eq!(BoolFormula::or(vec![]), Formula::False);
        assert_eq!(BoolFormula::and(vec![p("a")]), p("a"));
    }

    #[test]
    fn eval_propositional() {
        let f = Formula::iff(p("a"), Formula::not(p("b")));
        assert!(f.eval(&|v| v == "a"));
        assert!(!f.eval(&|_| true));
    }
}
