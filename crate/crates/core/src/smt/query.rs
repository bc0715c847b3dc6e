use std::fmt::Write as _;

use crate::abstraction::{Choice, QuasiReaction};
use crate::error::{Error, Result};
use crate::model::{LiteralTable, Theory};

/// Everything needed to render validity queries for one cluster.
#[derive(Debug, Clone)]
pub struct QueryContext {
    pub theory: Theory,
    pub table: LiteralTable,
    /// Environment variables, sorted.
    pub env: Vec<String>,
    /// System variables, sorted.
    pub sys: Vec<String>,
}

impl QueryContext {
    pub fn new(theory: Theory, table: LiteralTable) -> Self {
        let (env, sys) = table.partitioned_vars();
        QueryContext { theory, table, env, sys }
    }

    pub fn choice_count(&self) -> usize {
        1 << self.table.len()
    }

    /// `f(c)` in SMT-LIB2, with system variables renamed by `sys_name`.
    fn choice_smt(&self, c: Choice, sys_name: &dyn Fn(&str) -> String) -> Result<String> {
        let env = &self.env;
        let name = |v: &str| {
            if env.iter().any(|e| e == v) {
                quote(v)
            } else {
                sys_name(v)
            }
        };
        let mut parts = Vec::with_capacity(self.table.len());
        for i in 0..self.table.len() {
            parts.push(self.table.atom(i)?.to_smt(c.holds(i), self.theory, &name));
        }
        Ok(match parts.len() {
            0 => "true".to_string(),
            1 => parts.pop().unwrap(),
            _ => format!("(and {})", parts.join(" ")),
        })
    }
}

fn quote(name: &str) -> String {
    format!("|{name}|")
}

/// A rendered `∃x̄. ⋀_{c∈P} ∃ȳ.f(c) ∧ ⋀_{c∈A} ∀ȳ.¬f(c)` satisfiability query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityQuery {
    pub quasi: QuasiReaction,
    pub theory: Theory,
    /// Declarations and assertions, without logic header or `check-sat`.
    pub body: String,
}

impl ValidityQuery {
    /// A complete standalone script.
    pub fn script(&self) -> String {
        format!("(set-logic {})\n{}(check-sat)\n", self.theory.tag(), self.body)
    }
}

/// Renders the validity query of `q`. Potentials get per-choice copies
/// `|y@<choice>|` of the system variables; antipotentials are universally
/// quantified over the system variables.
pub fn build_query(q: &QuasiReaction, ctx: &QueryContext) -> Result<ValidityQuery> {
    let expected = ctx.choice_count();
    if q.universe() != expected {
        return Err(Error::LiteralIndex {
            index: q.universe().trailing_zeros() as usize,
            len: ctx.table.len(),
        });
    }
    let sort = ctx.theory.solver_sort();
    let mut body = String::new();
    for v in &ctx.env {
        let _ = writeln!(body, "(declare-const {} {sort})", quote(v));
    }
    for c in q.p.iter() {
        for v in &ctx.sys {
            let _ = writeln!(body, "(declare-const |{v}@{c}| {sort})");
        }
    }
    for c in q.p.iter() {
        let f = ctx.choice_smt(Choice(c as u32), &|v| format!("|{v}@{c}|"))?;
        let _ = writeln!(body, "(assert {f})");
    }
    for c in q.a.iter() {
        let f = ctx.choice_smt(Choice(c as u32), &quote)?;
        if ctx.sys.is_empty() {
            let _ = writeln!(body, "(assert (not {f}))");
        } else {
            let binders: Vec<String> = ctx.sys.iter().map(|v| format!("({} {sort})", quote(v))).collect();
            let _ = writeln!(body, "(assert (forall ({}) (not {f})))", binders.join(" "));
        }
    }
    Ok(ValidityQuery {
        quasi: q.clone(),
        theory: ctx.theory,
        body,
    })
}
