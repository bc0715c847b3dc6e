//! Arithmetic terms, comparisons and theory atoms.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arithmetic theory a specification is interpreted in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Theory {
    /// Linear integer arithmetic.
    #[serde(rename = "LIA")]
    Lia,
    /// Linear real arithmetic.
    #[serde(rename = "LRA")]
    Lra,
    /// Nonlinear real arithmetic.
    #[serde(rename = "NRA")]
    Nra,
}

impl Theory {
    pub fn tag(self) -> &'static str {
        match self {
            Theory::Lia => "LIA",
            Theory::Lra => "LRA",
            Theory::Nra => "NRA",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Theory> {
        match tag {
            "LIA" => Some(Theory::Lia),
            "LRA" => Some(Theory::Lra),
            "NRA" => Some(Theory::Nra),
            _ => None,
        }
    }

    pub fn is_real(self) -> bool {
        !matches!(self, Theory::Lia)
    }

    /// Sort every variable takes inside solver queries.
    pub fn solver_sort(self) -> Sort {
        if self.is_real() {
            Sort::Real
        } else {
            Sort::Int
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Int,
    Real,
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Int => f.write_str("Int"),
            Sort::Real => f.write_str("Real"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Owner {
    Environment,
    System,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub sort: Sort,
    pub owner: Owner,
}

impl Variable {
    pub fn new(name: impl Into<String>, sort: Sort, owner: Owner) -> Self {
        Variable {
            name: name.into(),
            sort,
            owner,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Const(BigRational),
    Var(String),
    Add(Box<Term>, Box<Term>),
    Sub(Box<Term>, Box<Term>),
    Neg(Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Div(Box<Term>, Box<Term>),
}

impl Term {
    pub fn int(value: i64) -> Term {
        Term::Const(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Const(_) => {}
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Neg(t) => t.collect_vars(out),
            Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) | Term::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn has_vars(&self) -> bool {
        match self {
            Term::Const(_) => false,
            Term::Var(_) => true,
            Term::Neg(t) => t.has_vars(),
            Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) | Term::Div(a, b) => {
                a.has_vars() || b.has_vars()
            }
        }
    }

    /// Folds constant subtrees. Division of constants is integer (`div`)
    /// division under LIA and exact otherwise; division by a zero constant
    /// is left unfolded and rejected by [`Term::check`].
    pub fn fold(&self, theory: Theory) -> Term {
        match self {
            Term::Const(_) | Term::Var(_) => self.clone(),
            Term::Neg(t) => match t.fold(theory) {
                Term::Const(c) => Term::Const(-c),
                t => Term::Neg(Box::new(t)),
            },
            Term::Add(a, b) => fold_binary(a, b, theory, Term::Add, |x, y| Some(x + y)),
            Term::Sub(a, b) => fold_binary(a, b, theory, Term::Sub, |x, y| Some(x - y)),
            Term::Mul(a, b) => fold_binary(a, b, theory, Term::Mul, |x, y| Some(x * y)),
            Term::Div(a, b) => fold_binary(a, b, theory, Term::Div, |x, y| {
                if y.is_zero() {
                    None
                } else if theory.is_real() {
                    Some(x / y)
                } else if x.is_integer() && y.is_integer() {
                    Some(BigRational::from_integer(smt_int_div(
                        &x.to_integer(),
                        &y.to_integer(),
                    )))
                } else {
                    None
                }
            }),
        }
    }

    /// Checks that the term lives in `theory`: linear unless NRA, integer
    /// constants under LIA, no constant zero divisors.
    pub fn check(&self, theory: Theory) -> Result<()> {
        match self {
            Term::Const(c) => {
                if !theory.is_real() && !c.is_integer() {
                    return Err(Error::Sort(format!(
                        "non-integer constant {} under LIA",
                        fmt_rational(c)
                    )));
                }
                Ok(())
            }
            Term::Var(_) => Ok(()),
            Term::Neg(t) => t.check(theory),
            Term::Add(a, b) | Term::Sub(a, b) => {
                a.check(theory)?;
                b.check(theory)
            }
            Term::Mul(a, b) => {
                a.check(theory)?;
                b.check(theory)?;
                if a.has_vars() && b.has_vars() && theory != Theory::Nra {
                    return Err(Error::Sort(format!(
                        "nonlinear product `{self}` requires NRA, theory is {theory}"
                    )));
                }
                Ok(())
            }
            Term::Div(a, b) => {
                a.check(theory)?;
                b.check(theory)?;
                if b.has_vars() && theory != Theory::Nra {
                    return Err(Error::Sort(format!(
                        "division by a non-constant in `{self}` requires NRA, theory is {theory}"
                    )));
                }
                if let Term::Const(c) = b.as_ref() {
                    if c.is_zero() {
                        return Err(Error::Sort(format!("division by zero in `{self}`")));
                    }
                }
                Ok(())
            }
        }
    }

    /// SMT-LIB2 rendering. `name` maps a variable name to its solver symbol.
    pub fn to_smt(&self, theory: Theory, name: &dyn Fn(&str) -> String) -> String {
        match self {
            Term::Const(c) => smt_const(c, theory),
            Term::Var(v) => name(v),
            Term::Neg(t) => format!("(- {})", t.to_smt(theory, name)),
            Term::Add(a, b) => format!("(+ {} {})", a.to_smt(theory, name), b.to_smt(theory, name)),
            Term::Sub(a, b) => format!("(- {} {})", a.to_smt(theory, name), b.to_smt(theory, name)),
            Term::Mul(a, b) => format!("(* {} {})", a.to_smt(theory, name), b.to_smt(theory, name)),
            Term::Div(a, b) => {
                let op = if theory.is_real() { "/" } else { "div" };
                format!(
                    "({op} {} {})",
                    a.to_smt(theory, name),
                    b.to_smt(theory, name)
                )
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Term::Add(..) | Term::Sub(..) => 1,
            Term::Mul(..) | Term::Div(..) => 2,
            Term::Neg(_) => 3,
            Term::Const(c) if c.is_negative() || !c.is_integer() => 2,
            Term::Const(_) | Term::Var(_) => 4,
        }
    }
}

fn fold_binary(
    a: &Term,
    b: &Term,
    theory: Theory,
    build: fn(Box<Term>, Box<Term>) -> Term,
    op: impl Fn(BigRational, BigRational) -> Option<BigRational>,
) -> Term {
    let (a, b) = (a.fold(theory), b.fold(theory));
    if let (Term::Const(x), Term::Const(y)) = (&a, &b) {
        if let Some(v) = op(x.clone(), y.clone()) {
            return Term::Const(v);
        }
    }
    build(Box::new(a), Box::new(b))
}

/// SMT-LIB `div`: Euclidean division, remainder always non-negative.
fn smt_int_div(x: &BigInt, y: &BigInt) -> BigInt {
    let (q, r) = x.div_rem(y);
    if r.is_negative() {
        if y.is_positive() {
            q - BigInt::one()
        } else {
            q + BigInt::one()
        }
    } else {
        q
    }
}

fn smt_const(c: &BigRational, theory: Theory) -> String {
    let real = theory.is_real();
    let mag = |n: &BigInt| {
        if real {
            format!("{}.0", n.abs())
        } else {
            n.abs().to_string()
        }
    };
    let body = if c.is_integer() {
        mag(c.numer())
    } else {
        format!("(/ {} {})", mag(c.numer()), mag(c.denom()))
    };
    if c.is_negative() {
        format!("(- {body})")
    } else {
        body
    }
}

pub(crate) fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Rational from a decimal literal such as `2.2` or `-0.8`.
pub fn parse_decimal(text: &str) -> Option<BigRational> {
    let (int_part, frac_part) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text, ""),
    };
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().ok()?;
    let denom = num_traits::pow(BigInt::from(10u32), frac_part.len());
    Some(BigRational::new(numer, denom))
}

/// Best-effort float view of a rational constant; used by samplers in tests.
pub fn rational_to_f64(c: &BigRational) -> f64 {
    c.numer().to_f64().unwrap_or(f64::NAN) / c.denom().to_f64().unwrap_or(f64::NAN)
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.precedence();
        let child = |f: &mut fmt::Formatter<'_>, t: &Term, min: u8| -> fmt::Result {
            if t.precedence() < min {
                write!(f, "({t})")
            } else {
                write!(f, "{t}")
            }
        };
        match self {
            Term::Const(c) => f.write_str(&fmt_rational(c)),
            Term::Var(v) => f.write_str(v),
            Term::Neg(t) => {
                f.write_str("-")?;
                child(f, t, 4)
            }
            Term::Add(a, b) => {
                child(f, a, p)?;
                f.write_str(" + ")?;
                child(f, b, p + 1)
            }
            Term::Sub(a, b) => {
                child(f, a, p)?;
                f.write_str(" - ")?;
                child(f, b, p + 1)
            }
            Term::Mul(a, b) => {
                child(f, a, p)?;
                f.write_str(" * ")?;
                child(f, b, p + 1)
            }
            Term::Div(a, b) => {
                child(f, a, p)?;
                f.write_str(" / ")?;
                child(f, b, p + 1)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelOp {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
}

impl RelOp {
    pub const ALL: [RelOp; 6] = [RelOp::Lt, RelOp::Le, RelOp::Gt, RelOp::Ge, RelOp::Eq, RelOp::Ne];

    /// Relop of the complementary comparison over identical operands.
    pub fn negate(self) -> RelOp {
        match self {
            RelOp::Lt => RelOp::Ge,
            RelOp::Ge => RelOp::Lt,
            RelOp::Le => RelOp::Gt,
            RelOp::Gt => RelOp::Le,
            RelOp::Eq => RelOp::Ne,
            RelOp::Ne => RelOp::Eq,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            RelOp::Lt => "<",
            RelOp::Le => "<=",
            RelOp::Gt => ">",
            RelOp::Ge => ">=",
            RelOp::Eq => "=",
            RelOp::Ne => "!=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Comparison {
    pub lhs: Term,
    pub op: RelOp,
    pub rhs: Term,
}

impl Comparison {
    pub fn new(lhs: Term, op: RelOp, rhs: Term) -> Self {
        Comparison { lhs, op, rhs }
    }

    pub fn negated(&self) -> Comparison {
        Comparison {
            lhs: self.lhs.clone(),
            op: self.op.negate(),
            rhs: self.rhs.clone(),
        }
    }

    pub fn fold(&self, theory: Theory) -> Comparison {
        Comparison {
            lhs: self.lhs.fold(theory),
            op: self.op,
            rhs: self.rhs.fold(theory),
        }
    }

    pub fn to_smt(&self, theory: Theory, name: &dyn Fn(&str) -> String) -> String {
        let l = self.lhs.to_smt(theory, name);
        let r = self.rhs.to_smt(theory, name);
        match self.op {
            RelOp::Ne => format!("(not (= {l} {r}))"),
            op => format!("({} {l} {r})", op.symbol()),
        }
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.op.symbol(), self.rhs)
    }
}

/// A theory atom: one comparison, or a conjunction of comparisons that a
/// literal list presents as a single literal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Atom {
    Compare(Comparison),
    Conjunction(Vec<Comparison>),
}

impl Atom {
    pub fn compare(lhs: Term, op: RelOp, rhs: Term) -> Atom {
        Atom::Compare(Comparison::new(lhs, op, rhs))
    }

    pub fn comparisons(&self) -> &[Comparison] {
        match self {
            Atom::Compare(c) => std::slice::from_ref(c),
            Atom::Conjunction(cs) => cs,
        }
    }

    /// The syntactic complement, when one exists (single comparisons only).
    pub fn complement(&self) -> Option<Atom> {
        match self {
            Atom::Compare(c) => Some(Atom::Compare(c.negated())),
            Atom::Conjunction(_) => None,
        }
    }

    pub fn fold(&self, theory: Theory) -> Atom {
        match self {
            Atom::Compare(c) => Atom::Compare(c.fold(theory)),
            Atom::Conjunction(cs) => Atom::Conjunction(cs.iter().map(|c| c.fold(theory)).collect()),
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for c in self.comparisons() {
            c.lhs.collect_vars(&mut out);
            c.rhs.collect_vars(&mut out);
        }
        out
    }

    pub fn check(&self, theory: Theory) -> Result<()> {
        for c in self.comparisons() {
            c.lhs.check(theory)?;
            c.rhs.check(theory)?;
        }
        Ok(())
    }

    /// SMT-LIB2 rendering of the atom (`positive`) or its negation.
    pub fn to_smt(&self, positive: bool, theory: Theory, name: &dyn Fn(&str) -> String) -> String {
        match (self, positive) {
            (Atom::Compare(c), true) => c.to_smt(theory, name),
            (Atom::Compare(c), false) => c.negated().to_smt(theory, name),
            (Atom::Conjunction(cs), pos) => {
                let body = format!(
                    "(and {})",
                    cs.iter()
                        .map(|c| c.to_smt(theory, name))
                        .collect::<Vec<_>>()
                        .join(" ")
                );
                if pos {
                    body
                } else {
                    format!("(not {body})")
                }
            }
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Compare(c) => write!(f, "{c}"),
            Atom::Conjunction(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" & ")?;
                    }
                    write!(f, "{c}")?;
                }
                Ok(())
            }
        }
    }
}
