use std::collections::{BTreeMap, BTreeSet};

use super::literals::LiteralTable;

/// Literals connected through shared theory variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    /// Global literal indices, ascending.
    pub literals: Vec<usize>,
    pub variables: BTreeSet<String>,
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Connected components of the literal/variable sharing graph, ordered by
/// smallest member literal.
pub fn cluster_literals(table: &LiteralTable) -> Vec<Cluster> {
    let n = table.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut first_user: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, e) in table.entries().iter().enumerate() {
        for v in &e.vars {
            match first_user.get(v.as_str()) {
                Some(&j) => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
                None => {
                    first_user.insert(v, i);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Cluster> = BTreeMap::new();
    for (i, e) in table.entries().iter().enumerate() {
        let root = find(&mut parent, i);
        let c = groups.entry(root).or_insert_with(|| Cluster {
            literals: Vec::new(),
            variables: BTreeSet::new(),
        });
        c.literals.push(i);
        c.variables.extend(e.vars.iter().cloned());
    }
    let mut out: Vec<Cluster> = groups.into_values().collect();
    out.sort_by_key(|c| c.literals[0]);
    out
}

/// The whole table as a single cluster (clustering disabled).
pub fn single_cluster(table: &LiteralTable) -> Vec<Cluster> {
    if table.is_empty() {
        return Vec::new();
    }
    let mut variables = BTreeSet::new();
    for e in table.entries() {
        variables.extend(e.vars.iter().cloned());
    }
    vec![Cluster {
        literals: (0..table.len()).collect(),
        variables,
    }]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::term::{Atom, RelOp, Term};

    fn gt(a: &str, b: &str) -> Atom {
        Atom::compare(Term::var(a), RelOp::Gt, Term::var(b))
    }

    #[test]
    fn shared_variables_join_clusters() {
        let mut t = LiteralTable::new(&[]);
        for a in [gt("a", "b"), gt("b", "c"), gt("d", "e")] {
            t.canonicalize(&a);
        }
        let cs = cluster_literals(&t);
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0].literals, vec![0, 1]);
        assert_eq!(cs[1].literals, vec![2]);
    }

    #[test]
    fn transitive_sharing_is_followed() {
        let mut t = LiteralTable::new(&[]);
        for a in [gt("a", "b"), gt("d", "g"), gt("g", "v"), gt("b", "v")] {
            t.canonicalize(&a);
        }
        let cs = cluster_literals(&t);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].literals, vec![0, 1, 2, 3]);
    }

    #[test]
    fn single_literal_is_a_singleton_cluster() {
        let mut t = LiteralTable::new(&[]);
        t.canonicalize(&gt("x", "y"));
        assert_eq!(cluster_literals(&t).len(), 1);
    }
}
