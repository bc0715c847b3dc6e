use super::vr::ValidReactionSet;
use crate::error::{Error, Result};
use crate::model::{literal_prop, BoolFormula, Formula};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Encoding {
    /// One input per valid reaction, exactly one of them true.
    #[default]
    OneHot,
    /// `⌈log2 k⌉` inputs; each valid reaction is bound to one code.
    Binary,
}

/// The abstraction of one cluster: its global literal indices (ascending)
/// and its valid reactions.
#[derive(Debug, Clone)]
pub struct ClusterAbstraction {
    pub literals: Vec<usize>,
    pub vr: ValidReactionSet,
}

/// `φ′ ∧ G(A_B → φ_extra)` with its input/output partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanSpec {
    pub skeleton: BoolFormula,
    pub assumption: BoolFormula,
    pub extra: BoolFormula,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    /// Text of literal `i`, abstracted by output `s{i}`.
    pub literal_map: Vec<String>,
}

impl BooleanSpec {
    /// The assembled formula. Without literals there is nothing to guard.
    pub fn formula(&self) -> BoolFormula {
        if self.literal_map.is_empty() {
            self.skeleton.clone()
        } else {
            Formula::And(vec![
                self.skeleton.clone(),
                Formula::globally(Formula::implies(self.assumption.clone(), self.extra.clone())),
            ])
        }
    }
}

/// `⋀_{l_i∈c} s_i ∧ ⋀_{l_i∉c} ¬s_i` over the cluster's literals.
pub fn minterm(choice: usize, literals: &[usize]) -> BoolFormula {
    Formula::and(
        literals
            .iter()
            .enumerate()
            .map(|(bit, &g)| {
                let s = Formula::prop(literal_prop(g));
                if choice >> bit & 1 == 1 {
                    s
                } else {
                    Formula::not(s)
                }
            })
            .collect(),
    )
}

/// `⋀_j (e_j → ⋁_{c∈P_j} minterm(c))`, one conjunct per valid reaction.
pub fn get_extra(vr: &ValidReactionSet, literals: &[usize], decisions: &[BoolFormula]) -> Result<BoolFormula> {
    if vr.is_empty() && !literals.is_empty() {
        return Err(Error::Invariant(
            "no valid reaction over a nonempty literal set".into(),
        ));
    }
    if decisions.len() != vr.len() {
        return Err(Error::Invariant(format!(
            "{} decision formulas for {} valid reactions",
            decisions.len(),
            vr.len()
        )));
    }
    Ok(Formula::and(
        vr.entries()
            .iter()
            .zip(decisions)
            .map(|(p, e)| {
                let body = Formula::or(p.iter().map(|c| minterm(c, literals)).collect());
                Formula::implies(e.clone(), body)
            })
            .collect(),
    ))
}

struct Decisions {
    inputs: Vec<String>,
    terms: Vec<BoolFormula>,
    assumption: BoolFormula,
}

fn decisions(k: usize, encoding: Encoding, name: &dyn Fn(usize) -> String) -> Decisions {
    match encoding {
        Encoding::OneHot => {
            let inputs: Vec<String> = (0..k).map(name).collect();
            let terms: Vec<BoolFormula> = inputs.iter().map(|d| Formula::prop(d.clone())).collect();
            let assumption = match k {
                0 => Formula::True,
                1 => terms[0].clone(),
                2 => Formula::and(vec![
                    Formula::iff(terms[0].clone(), Formula::not(terms[1].clone())),
                    Formula::or(vec![terms[0].clone(), terms[1].clone()]),
                ]),
                _ => {
                    let mut parts = vec![Formula::or(terms.clone())];
                    for i in 0..k {
                        for j in i + 1..k {
                            parts.push(Formula::not(Formula::and(vec![terms[i].clone(), terms[j].clone()])));
                        }
                    }
                    Formula::and(parts)
                }
            };
            Decisions { inputs, terms, assumption }
        }
        Encoding::Binary => {
            let m = if k <= 1 { 0 } else { (usize::BITS - (k - 1).leading_zeros()) as usize };
            let inputs: Vec<String> = (0..m).map(name).collect();
            let code = |j: usize| {
                Formula::and(
                    inputs
                        .iter()
                        .enumerate()
                        .map(|(bit, b)| {
                            let p = Formula::prop(b.clone());
                            if j >> bit & 1 == 1 {
                                p
                            } else {
                                Formula::not(p)
                            }
                        })
                        .collect(),
                )
            };
            let terms = (0..k).map(code).collect();
            let assumption = Formula::and((k..1 << m).map(|j| Formula::not(code(j))).collect());
            Decisions { inputs, terms, assumption }
        }
    }
}

/// Builds the Boolean specification from the substituted skeleton and the
/// per-cluster valid reactions. Clusters get separate decision namespaces.
pub fn assemble(
    skeleton: BoolFormula,
    clusters: &[ClusterAbstraction],
    encoding: Encoding,
    literal_map: Vec<String>,
) -> Result<BooleanSpec> {
    let prefix = match encoding {
        Encoding::OneHot => "d",
        Encoding::Binary => "b",
    };
    let multi = clusters.len() > 1;
    let mut inputs = Vec::new();
    let mut assumptions = Vec::new();
    let mut extras = Vec::new();
    for (ci, c) in clusters.iter().enumerate() {
        let name = |i: usize| {
            if multi {
                format!("{prefix}{ci}_{i}")
            } else {
                format!("{prefix}{i}")
            }
        };
        let d = decisions(c.vr.len(), encoding, &name);
        extras.push(get_extra(&c.vr, &c.literals, &d.terms)?);
        inputs.extend(d.inputs);
        if d.assumption != Formula::True {
            assumptions.push(d.assumption);
        }
    }
    Ok(BooleanSpec {
        skeleton,
        assumption: Formula::and(assumptions),
        extra: Formula::and(extras),
        inputs,
        outputs: (0..literal_map.len()).map(literal_prop).collect(),
        literal_map,
    })
}
