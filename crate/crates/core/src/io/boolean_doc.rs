//! Boolean specification documents.
//!
//! ```text
//! .inputs d0 d1
//! .outputs s0 s1 s2
//! .map s0 "x < 2"
//! G((s0 -> X s1) & (!s0 -> s2)) & G(... -> ...)
//! ```

use std::collections::BTreeSet;

use super::lexer::lex_line;
use super::parser::{into_boolean, Mode, Parser};
use crate::abstraction::BooleanSpec;
use crate::error::{Error, ParseError, Result};
use crate::model::{literal_prop, BoolFormula, Formula};

/// A parsed document: declarations plus the formula as written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanDocument {
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub map: Vec<(String, String)>,
    pub formula: BoolFormula,
}

pub fn emit_boolean_spec(b: &BooleanSpec) -> String {
    let mut out = String::new();
    out.push_str(".inputs");
    for i in &b.inputs {
        out.push(' ');
        out.push_str(i);
    }
    out.push_str("\n.outputs");
    for o in &b.outputs {
        out.push(' ');
        out.push_str(o);
    }
    out.push('\n');
    for (i, text) in b.literal_map.iter().enumerate() {
        out.push_str(&format!(".map {} \"{}\"\n", literal_prop(i), escape(text)));
    }
    out.push_str(&b.formula().to_string());
    out.push('\n');
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn unescape(s: &str, line: usize) -> Result<String> {
    let mut out = String::new();
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c == '\\' {
            match chars.next() {
                Some(e @ ('\\' | '"')) => out.push(e),
                _ => return Err(ParseError::new(line, 1, "bad escape in `.map` text").into()),
            }
        } else {
            out.push(c);
        }
    }
    Ok(out)
}

pub fn parse_boolean_document(text: &str) -> Result<BooleanDocument> {
    let mut inputs = Vec::new();
    let mut outputs = Vec::new();
    let mut map = Vec::new();
    let mut toks = Vec::new();
    let mut end = (1, 1);
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix(".inputs") {
            inputs.extend(rest.split_whitespace().map(str::to_string));
        } else if let Some(rest) = trimmed.strip_prefix(".outputs") {
            outputs.extend(rest.split_whitespace().map(str::to_string));
        } else if let Some(rest) = trimmed.strip_prefix(".map") {
            let rest = rest.trim();
            let (name, quoted) = rest.split_once(' ').ok_or_else(|| {
                Error::from(ParseError::new(line, 1, "expected `.map <name> \"<text>\"`"))
            })?;
            let quoted = quoted.trim();
            if quoted.len() < 2 || !quoted.starts_with('"') || !quoted.ends_with('"') {
                return Err(ParseError::new(line, 1, "`.map` text must be quoted").into());
            }
            map.push((name.to_string(), unescape(&quoted[1..quoted.len() - 1], line)?));
        } else if trimmed.starts_with('.') {
            return Err(ParseError::new(line, 1, format!("unknown directive `{trimmed}`")).into());
        } else {
            lex_line(raw, line, 1, &mut toks)?;
            end = (line, raw.trim_end().chars().count() + 1);
        }
    }
    let declared: BTreeSet<&str> = inputs.iter().chain(&outputs).map(String::as_str).collect();
    if declared.len() != inputs.len() + outputs.len() {
        return Err(ParseError::new(1, 1, "a proposition is declared twice").into());
    }
    let parsed = Parser::new(&toks, end, Mode::Boolean).formula_to_end()?;
    let formula = into_boolean(&parsed, &|p| declared.contains(p))?;
    Ok(BooleanDocument {
        inputs,
        outputs,
        map,
        formula,
    })
}

impl BooleanDocument {
    /// Splits the formula back into skeleton and guarded extra. Documents
    /// without `.map` lines carry no guard.
    pub fn to_boolean_spec(&self) -> Result<BooleanSpec> {
        for (i, (name, _)) in self.map.iter().enumerate() {
            if *name != literal_prop(i) {
                return Err(Error::Parse(ParseError::new(
                    1,
                    1,
                    format!("`.map` entry {i} names `{name}`, expected `{}`", literal_prop(i)),
                )));
            }
        }
        let literal_map: Vec<String> = self.map.iter().map(|(_, t)| t.clone()).collect();
        let (skeleton, assumption, extra) = if literal_map.is_empty() {
            (self.formula.clone(), Formula::True, Formula::True)
        } else {
            match &self.formula {
                Formula::And(xs) if xs.len() == 2 => match &xs[1] {
                    Formula::Globally(g) => match g.as_ref() {
                        Formula::Implies(a, e) => (xs[0].clone(), (**a).clone(), (**e).clone()),
                        _ => return Err(shape_error()),
                    },
                    _ => return Err(shape_error()),
                },
                _ => return Err(shape_error()),
            }
        };
        Ok(BooleanSpec {
            skeleton,
            assumption,
            extra,
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
            literal_map,
        })
    }
}

fn shape_error() -> Error {
    Error::Parse(ParseError::new(
        1,
        1,
        "a document with literal mappings must have the shape `<skeleton> & G(<assumption> -> <extra>)`",
    ))
}

pub fn parse_boolean_spec(text: &str) -> Result<BooleanSpec> {
    parse_boolean_document(text)?.to_boolean_spec()
}
