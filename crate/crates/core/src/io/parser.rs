//! Recursive-descent parser for formulas and arithmetic terms.
//!
//! Precedence, tightest first: `!` > `X G F` > `U R` > `&` > `|` > `->` > `<->`.
//! Binary temporal operators and implications associate to the right.

use super::lexer::{Tok, Token};
use crate::error::ParseError;
use crate::model::{parse_decimal, Atom, Comparison, Formula, RelOp, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Atoms are arithmetic comparisons; bare identifiers are rejected.
    Theory,
    /// Atoms are bare propositions.
    Boolean,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParsedAtom {
    Compare(Comparison),
    Prop { name: String, line: usize, column: usize },
}

const KEYWORDS: &[&str] = &["X", "G", "F", "U", "R", "true", "false"];

pub struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    end: (usize, usize),
    mode: Mode,
    furthest: Option<ParseError>,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    /// `end` is the position reported for errors at end of input.
    pub fn new(toks: &'a [Token], end: (usize, usize), mode: Mode) -> Self {
        Parser {
            toks,
            pos: 0,
            end,
            mode,
            furthest: None,
        }
    }

    /// Parses a complete formula, rejecting trailing tokens.
    pub fn formula_to_end(mut self) -> PResult<Formula<ParsedAtom>> {
        let f = self.iff().map_err(|e| self.pick(e))?;
        if let Some(t) = self.peek_token() {
            let e = self.err_at(t, format!("unexpected {} after formula", t.tok.describe()));
            return Err(self.pick(e));
        }
        Ok(f)
    }

    /// Reports whichever error got further into the input.
    fn pick(&self, e: ParseError) -> ParseError {
        match &self.furthest {
            Some(f) if (f.line, f.column) > (e.line, e.column) => f.clone(),
            _ => e,
        }
    }

    fn record(&mut self, e: &ParseError) {
        let better = match &self.furthest {
            Some(f) => (e.line, e.column) > (f.line, f.column),
            None => true,
        };
        if better {
            self.furthest = Some(e.clone());
        }
    }

    fn peek_token(&self) -> Option<&'a Token> {
        self.toks.get(self.pos)
    }

    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err_at(&self, t: &Token, msg: String) -> ParseError {
        ParseError::new(t.line, t.column, msg)
    }

    fn err_here(&self, expected: &str) -> ParseError {
        match self.peek_token() {
            Some(t) => self.err_at(t, format!("expected {expected}, found {}", t.tok.describe())),
            None => ParseError::new(self.end.0, self.end.1, format!("expected {expected}, found end of input")),
        }
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.err_here(&tok.describe()))
        }
    }

    fn iff(&mut self) -> PResult<Formula<ParsedAtom>> {
        let lhs = self.implies()?;
        if self.eat(&Tok::Iff) {
            let rhs = self.iff()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> PResult<Formula<ParsedAtom>> {
        let lhs = self.or()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> PResult<Formula<ParsedAtom>> {
        let mut xs = vec![self.and()?];
        while self.eat(&Tok::Or) {
            xs.push(self.and()?);
        }
        Ok(Formula::or(xs))
    }

    fn and(&mut self) -> PResult<Formula<ParsedAtom>> {
        let mut xs = vec![self.binary_temporal()?];
        while self.eat(&Tok::And) {
            xs.push(self.binary_temporal()?);
        }
        Ok(Formula::and(xs))
    }

    fn binary_temporal(&mut self) -> PResult<Formula<ParsedAtom>> {
        let lhs = self.unary()?;
        if self.peek_keyword("U") {
            self.pos += 1;
            let rhs = self.binary_temporal()?;
            return Ok(Formula::Until(Box::new(lhs), Box::new(rhs)));
        }
        if self.peek_keyword("R") {
            self.pos += 1;
            let rhs = self.binary_temporal()?;
            return Ok(Formula::Release(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Formula<ParsedAtom>> {
        if self.eat(&Tok::Not) {
            return Ok(Formula::not(self.unary()?));
        }
        for (kw, build) in [
            ("X", Formula::Next as fn(Box<Formula<ParsedAtom>>) -> Formula<ParsedAtom>),
            ("G", Formula::Globally),
            ("F", Formula::Eventually),
        ] {
            if self.peek_keyword(kw) {
                self.pos += 1;
                return Ok(build(Box::new(self.unary()?)));
            }
        }
        self.primary()
    }

    fn primary(&mut self) -> PResult<Formula<ParsedAtom>> {
        if self.peek_keyword("true") {
            self.pos += 1;
            return Ok(Formula::True);
        }
        if self.peek_keyword("false") {
            self.pos += 1;
            return Ok(Formula::False);
        }
        match self.mode {
            Mode::Boolean => {
                if let Some(t) = self.peek_token() {
                    if let Tok::Ident(name) = &t.tok {
                        if !KEYWORDS.contains(&name.as_str()) {
                            self.pos += 1;
                            return Ok(Formula::Atom(ParsedAtom::Prop {
                                name: name.clone(),
                                line: t.line,
                                column: t.column,
                            }));
                        }
                    }
                }
                if self.eat(&Tok::LParen) {
                    let f = self.iff()?;
                    self.expect(Tok::RParen)?;
                    return Ok(f);
                }
                Err(self.err_here("a proposition or `(`"))
            }
            Mode::Theory => {
                let save = self.pos;
                let atom_err = match self.comparison() {
                    Ok(c) => return Ok(Formula::Atom(ParsedAtom::Compare(c))),
                    Err(e) => e,
                };
                self.record(&atom_err);
                self.pos = save;
                if self.eat(&Tok::LParen) {
                    let f = self.iff()?;
                    self.expect(Tok::RParen)?;
                    return Ok(f);
                }
                Err(atom_err)
            }
        }
    }

    fn comparison(&mut self) -> PResult<Comparison> {
        let lhs = self.term()?;
        let op = match self.peek() {
            Some(Tok::Lt) => RelOp::Lt,
            Some(Tok::Le) => RelOp::Le,
            Some(Tok::Gt) => RelOp::Gt,
            Some(Tok::Ge) => RelOp::Ge,
            Some(Tok::Eq) => RelOp::Eq,
            Some(Tok::Ne) => RelOp::Ne,
            _ => return Err(self.err_here("a comparison operator")),
        };
        self.pos += 1;
        let rhs = self.term()?;
        Ok(Comparison::new(lhs, op, rhs))
    }

    fn term(&mut self) -> PResult<Term> {
        let mut t = self.product()?;
        loop {
            if self.eat(&Tok::Plus) {
                t = Term::Add(Box::new(t), Box::new(self.product()?));
            } else if self.eat(&Tok::Minus) {
                t = Term::Sub(Box::new(t), Box::new(self.product()?));
            } else {
                return Ok(t);
            }
        }
    }

    fn product(&mut self) -> PResult<Term> {
        let mut t = self.factor()?;
        loop {
            if self.eat(&Tok::Star) {
                t = Term::Mul(Box::new(t), Box::new(self.factor()?));
            } else if self.eat(&Tok::Slash) {
                t = Term::Div(Box::new(t), Box::new(self.factor()?));
            } else {
                return Ok(t);
            }
        }
    }

    fn factor(&mut self) -> PResult<Term> {
        if self.eat(&Tok::Minus) {
            return Ok(Term::Neg(Box::new(self.factor()?)));
        }
        let base = self.term_primary()?;
        if self.eat(&Tok::Caret) {
            let t = self.peek_token();
            let k = match t.map(|t| &t.tok) {
                Some(Tok::Num(n)) => n.parse::<u32>().ok(),
                _ => None,
            };
            let Some(k) = k else {
                return Err(self.err_here("a natural exponent"));
            };
            self.pos += 1;
            if k == 0 {
                return Ok(Term::int(1));
            }
            let mut out = base.clone();
            for _ in 1..k {
                out = Term::Mul(Box::new(out), Box::new(base.clone()));
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn term_primary(&mut self) -> PResult<Term> {
        let Some(t) = self.peek_token() else {
            return Err(self.err_here("a term"));
        };
        match &t.tok {
            Tok::Num(n) => {
                self.pos += 1;
                parse_decimal(n)
                    .map(Term::Const)
                    .ok_or_else(|| self.err_at(t, format!("malformed number `{n}`")))
            }
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
                self.pos += 1;
                Ok(Term::Var(name.clone()))
            }
            Tok::LParen => {
                self.pos += 1;
                let inner = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            _ => Err(self.err_here("a term")),
        }
    }
}

/// Converts a theory-mode tree into a formula over atoms.
pub fn into_theory(f: &Formula<ParsedAtom>) -> Formula<Atom> {
    f.map_atoms(&mut |a| match a {
        ParsedAtom::Compare(c) => Formula::Atom(Atom::Compare(c.clone())),
        ParsedAtom::Prop { .. } => unreachable!("theory mode never yields propositions"),
    })
}

/// Converts a Boolean-mode tree into a proposition formula, checking each
/// proposition with `known`.
pub fn into_boolean(
    f: &Formula<ParsedAtom>,
    known: &dyn Fn(&str) -> bool,
) -> Result<Formula<String>, ParseError> {
    let mut bad = None;
    let out = f.map_atoms(&mut |a| match a {
        ParsedAtom::Prop { name, line, column } => {
            if !known(name) && bad.is_none() {
                bad = Some(ParseError::new(*line, *column, format!("undeclared proposition `{name}`")));
            }
            Formula::Atom(name.clone())
        }
        ParsedAtom::Compare(_) => unreachable!("boolean mode never yields comparisons"),
    });
    match bad {
        Some(e) => Err(e),
        None => Ok(out),
    }
}
