//! Theory specification documents.
//!
//! ```text
//! theory LIA
//! env x: Int
//! sys y: Int
//! spec: G(((x < 2) -> X (y > 1)) & ((x >= 2) -> (y < x)))
//! ```
//!
//! Instead of `spec:`, a document may list literals (`lit 1 : y > -2`); the
//! formula is then `G((l1 | !l1) & ... )`.

use super::lexer::{lex_line, Token};
use super::parser::{into_theory, Mode, ParsedAtom, Parser};
use crate::error::{Error, ParseError, Result};
use crate::model::{Atom, Comparison, Formula, Owner, Sort, Theory, TheorySpec, Variable};

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Replaces the document's `theory` header.
    pub theory: Option<Theory>,
}

enum Section {
    None,
    Formula,
}

pub fn parse_spec(text: &str) -> Result<TheorySpec> {
    parse_spec_with(text, ParseOptions::default())
}

pub fn parse_spec_with(text: &str, opts: ParseOptions) -> Result<TheorySpec> {
    let mut theory: Option<Theory> = None;
    let mut vars: Vec<Variable> = Vec::new();
    let mut formula_toks: Vec<Token> = Vec::new();
    let mut formula_seen = false;
    let mut lits: Vec<Atom> = Vec::new();
    let mut section = Section::None;
    let mut last_pos = (1, 1);

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = content.len() - trimmed.len();
        let col = |offset: usize| indent + offset + 1;
        last_pos = (line, content.trim_end().chars().count() + 1);
        let (head, rest) = split_head(trimmed);
        match head {
            "theory" => {
                section = Section::None;
                if theory.is_some() {
                    return Err(perr(line, col(0), "duplicate `theory` header"));
                }
                let tag = rest.trim();
                theory = Some(Theory::from_tag(tag).ok_or_else(|| {
                    perr(line, col(head.len() + 1), format!("unknown theory tag `{tag}`"))
                })?);
            }
            "env" | "sys" => {
                section = Section::None;
                let owner = if head == "env" { Owner::Environment } else { Owner::System };
                parse_decls(rest, line, col(head.len()), owner, &mut vars)?;
            }
            "lit" => {
                section = Section::None;
                let Some((_, body)) = rest.split_once(':') else {
                    return Err(perr(line, col(0), "expected `lit <index> : <atom>`"));
                };
                let body_col = col(trimmed.len() - body.len());
                lits.push(parse_literal(body, line, body_col)?);
            }
            _ if trimmed.starts_with("spec:") => {
                if formula_seen {
                    return Err(perr(line, col(0), "duplicate `spec:` section"));
                }
                formula_seen = true;
                section = Section::Formula;
                lex_line(&trimmed[5..], line, col(5), &mut formula_toks)?;
            }
            _ => match section {
                Section::Formula => lex_line(content, line, 1, &mut formula_toks)?,
                Section::None => {
                    return Err(perr(line, col(0), format!("unexpected line starting with `{head}`")))
                }
            },
        }
    }

    let theory = match (opts.theory, theory) {
        (Some(t), _) | (None, Some(t)) => t,
        (None, None) => return Err(perr(1, 1, "missing `theory` header")),
    };
    if vars.is_empty() {
        return Err(perr(1, 1, "no variables declared"));
    }
    if !theory.is_real() {
        // Integer theories do not admit Real declarations; other theories
        // promote Int variables to Real.
        if let Some(v) = vars.iter().find(|v| v.sort == Sort::Real) {
            return Err(Error::Sort(format!("variable `{}` is Real but the theory is LIA", v.name)));
        }
    }
    match (formula_seen, lits.is_empty()) {
        (true, true) => {
            let parser = Parser::new(&formula_toks, last_pos, Mode::Theory);
            let f = into_theory(&parser.formula_to_end()?);
            TheorySpec::new(theory, vars, f, None)
        }
        (false, false) => {
            let f = Formula::globally(Formula::and(
                lits.iter()
                    .map(|l| {
                        Formula::or(vec![
                            Formula::Atom(l.clone()),
                            Formula::not(Formula::Atom(l.clone())),
                        ])
                    })
                    .collect(),
            ));
            TheorySpec::new(theory, vars, f, Some(lits))
        }
        (true, false) => Err(perr(1, 1, "a document has either `spec:` or `lit` lines, not both")),
        (false, true) => Err(perr(last_pos.0, last_pos.1, "missing `spec:` formula")),
    }
}

fn perr(line: usize, column: usize, msg: impl Into<String>) -> Error {
    Error::Parse(ParseError::new(line, column, msg))
}

fn split_head(s: &str) -> (&str, &str) {
    let end = s
        .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
        .unwrap_or(s.len());
    (&s[..end], &s[end..])
}

fn parse_decls(rest: &str, line: usize, col0: usize, owner: Owner, out: &mut Vec<Variable>) -> Result<()> {
    let mut offset = 0;
    for item in rest.split(',') {
        let column = col0 + offset + (item.len() - item.trim_start().len()) + 1;
        offset += item.len() + 1;
        let Some((name, sort)) = item.split_once(':') else {
            return Err(perr(line, column, "expected `<name>: <Int|Real>`"));
        };
        let name = name.trim();
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(perr(line, column, format!("bad variable name `{name}`")));
        }
        let sort = match sort.trim() {
            "Int" => Sort::Int,
            "Real" => Sort::Real,
            other => return Err(perr(line, column, format!("unknown sort `{other}`"))),
        };
        out.push(Variable::new(name, sort, owner));
    }
    Ok(())
}

/// A literal is a comparison or a conjunction of comparisons.
fn parse_literal(body: &str, line: usize, column: usize) -> Result<Atom> {
    let mut toks = Vec::new();
    lex_line(body, line, column, &mut toks)?;
    let end = (line, column + body.trim_end().chars().count());
    let f = Parser::new(&toks, end, Mode::Theory).formula_to_end()?;
    fn comparisons(f: &Formula<ParsedAtom>, out: &mut Vec<Comparison>) -> bool {
        match f {
            Formula::Atom(ParsedAtom::Compare(c)) => {
                out.push(c.clone());
                true
            }
            Formula::And(xs) => xs.iter().all(|x| comparisons(x, out)),
            _ => false,
        }
    }
    let mut cs = Vec::new();
    if !comparisons(&f, &mut cs) {
        return Err(perr(line, column, "a literal must be a comparison or a conjunction of comparisons"));
    }
    Ok(if cs.len() == 1 {
        Atom::Compare(cs.pop().unwrap())
    } else {
        Atom::Conjunction(cs)
    })
}
