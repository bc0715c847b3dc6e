use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::formula::{BoolFormula, Formula};
use super::term::{Atom, Owner, Sort, Theory, Variable};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

/// Which owners' variables a literal mentions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OwnerMix {
    None,
    Environment,
    System,
    Mixed,
}

/// A parsed and sort-checked specification.
#[derive(Debug, Clone, PartialEq)]
pub struct TheorySpec {
    pub theory: Theory,
    pub variables: Vec<Variable>,
    pub formula: Formula<Atom>,
    /// Literal declarations in order, when the input was a literal list.
    pub literal_list: Option<Vec<Atom>>,
}

impl TheorySpec {
    /// Validates declarations and atoms and folds constants in every atom.
    pub fn new(
        theory: Theory,
        variables: Vec<Variable>,
        formula: Formula<Atom>,
        literal_list: Option<Vec<Atom>>,
    ) -> Result<TheorySpec> {
        let mut seen = BTreeSet::new();
        for v in &variables {
            if !seen.insert(v.name.as_str()) {
                return Err(Error::Sort(format!("variable `{}` declared twice", v.name)));
            }
            if v.sort == Sort::Real && theory == Theory::Lia {
                return Err(Error::Sort(format!(
                    "variable `{}` is Real but the theory is LIA",
                    v.name
                )));
            }
        }
        let mut problem = None;
        formula.for_each_atom(&mut |a: &Atom| {
            if problem.is_none() {
                problem = check_atom(a, theory, &seen).err();
            }
        });
        if let Some(e) = problem {
            return Err(e);
        }
        let fold = |a: &Atom| a.fold(theory);
        Ok(TheorySpec {
            theory,
            formula: formula.map_atoms(&mut |a| Formula::Atom(fold(a))),
            literal_list: literal_list.map(|ls| ls.iter().map(fold).collect()),
            variables,
        })
    }

    pub fn variable(&self, name: &str) -> Option<&Variable> {
        self.variables.iter().find(|v| v.name == name)
    }
}

fn check_atom(a: &Atom, theory: Theory, declared: &BTreeSet<&str>) -> Result<()> {
    for v in a.vars() {
        if !declared.contains(v.as_str()) {
            return Err(Error::Sort(format!("undeclared variable `{v}` in `{a}`")));
        }
    }
    a.check(theory)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LiteralEntry {
    pub atom: Atom,
    pub vars: BTreeSet<String>,
    pub owners: OwnerMix,
}

/// Canonical theory literals; entry `i` is abstracted by the proposition `s{i}`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LiteralTable {
    entries: Vec<LiteralEntry>,
    index: HashMap<Atom, usize>,
    owners: BTreeMap<String, Owner>,
}

impl LiteralTable {
    pub fn new(variables: &[Variable]) -> Self {
        LiteralTable {
            entries: Vec::new(),
            index: HashMap::new(),
            owners: variables.iter().map(|v| (v.name.clone(), v.owner)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[LiteralEntry] {
        &self.entries
    }

    pub fn atom(&self, i: usize) -> Result<&Atom> {
        self.entries
            .get(i)
            .map(|e| &e.atom)
            .ok_or(Error::LiteralIndex { index: i, len: self.len() })
    }

    pub fn owner(&self, var: &str) -> Option<Owner> {
        self.owners.get(var).copied()
    }

    /// Looks `atom` (or its syntactic complement) up, appending it if absent.
    /// Atoms must already be constant-folded.
    pub fn canonicalize(&mut self, atom: &Atom) -> (usize, Polarity) {
        if let Some(&i) = self.index.get(atom) {
            return (i, Polarity::Positive);
        }
        if let Some(c) = atom.complement() {
            if let Some(&i) = self.index.get(&c) {
                return (i, Polarity::Negative);
            }
        }
        let vars = atom.vars();
        let mut env = false;
        let mut sys = false;
        for v in &vars {
            match self.owners.get(v) {
                Some(Owner::Environment) => env = true,
                Some(Owner::System) => sys = true,
                None => {}
            }
        }
        let owners = match (env, sys) {
            (false, false) => OwnerMix::None,
            (true, false) => OwnerMix::Environment,
            (false, true) => OwnerMix::System,
            (true, true) => OwnerMix::Mixed,
        };
        let i = self.entries.len();
        self.index.insert(atom.clone(), i);
        self.entries.push(LiteralEntry {
            atom: atom.clone(),
            vars,
            owners,
        });
        (i, Polarity::Positive)
    }

    /// Read-only lookup.
    pub fn lookup(&self, atom: &Atom) -> Option<(usize, Polarity)> {
        if let Some(&i) = self.index.get(atom) {
            return Some((i, Polarity::Positive));
        }
        let c = atom.complement()?;
        self.index.get(&c).map(|&i| (i, Polarity::Negative))
    }

    /// The sub-table of the given entries, in the given order.
    pub fn project(&self, indices: &[usize]) -> Result<LiteralTable> {
        let mut t = LiteralTable {
            entries: Vec::new(),
            index: HashMap::new(),
            owners: self.owners.clone(),
        };
        for &i in indices {
            let atom = self.atom(i)?.clone();
            t.canonicalize(&atom);
        }
        Ok(t)
    }

    /// All variables used by the table, split into (environment, system),
    /// each sorted by name.
    pub fn partitioned_vars(&self) -> (Vec<String>, Vec<String>) {
        let mut all = BTreeSet::new();
        for e in &self.entries {
            all.extend(e.vars.iter().cloned());
        }
        all.into_iter()
            .partition(|v| self.owners.get(v) != Some(&Owner::System))
    }
}

/// Builds the literal table in first-occurrence order. In literal-list mode
/// the declaration order is used.
pub fn collect_literals(spec: &TheorySpec) -> LiteralTable {
    let mut t = LiteralTable::new(&spec.variables);
    match &spec.literal_list {
        Some(lits) => {
            for a in lits {
                t.canonicalize(a);
            }
        }
        None => spec.formula.for_each_atom(&mut |a: &Atom| {
            t.canonicalize(a);
        }),
    }
    t
}

pub fn literal_prop(i: usize) -> String {
    format!("s{i}")
}

/// Replaces every atom by `s_i` or `!s_i`.
pub fn substitute(spec: &TheorySpec, table: &LiteralTable) -> Result<BoolFormula> {
    let mut missing = None;
    let f = spec.formula.map_atoms(&mut |a: &Atom| match table.lookup(a) {
        Some((i, Polarity::Positive)) => Formula::prop(literal_prop(i)),
        Some((i, Polarity::Negative)) => Formula::not(Formula::prop(literal_prop(i))),
        None => {
            missing.get_or_insert_with(|| a.to_string());
            Formula::False
        }
    });
    match missing {
        Some(a) => Err(Error::Invariant(format!("atom `{a}` missing from literal table"))),
        None => Ok(f),
    }
}
