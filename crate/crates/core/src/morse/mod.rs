//! Acyclic matchings, zigzag words and flow categories.

mod equivariant;
mod flow;

use std::collections::HashMap;

use serde::Serialize;

use crate::complex::{SimplexId, SimplicialComplex};
use crate::error::{Error, Result};
use crate::report::Report;

pub use equivariant::{check_compatibility, induced_flow_action, lift_matching, sigma_morphism};
pub use flow::{entrance_category, flow_category, FlowBudget, FlowCategory, Word};

/// Pairs `(upper, lower)` of simplices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Matching {
    pub pairs: Vec<(SimplexId, SimplexId)>,
}

impl Matching {
    pub fn new(mut pairs: Vec<(SimplexId, SimplexId)>) -> Self {
        pairs.sort_unstable();
        pairs.dedup();
        Matching { pairs }
    }

    pub fn empty() -> Self {
        Matching::default()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Build from named simplices `(lower, upper)`.
    pub fn from_names<S: AsRef<str>>(x: &SimplicialComplex, pairs: &[(Vec<S>, Vec<S>)]) -> Result<Self> {
        let mut out = Vec::new();
        for (lower, upper) in pairs {
            let find = |names: &[S]| {
                x.find_named(names).ok_or_else(|| {
                    Error::Invalid(format!(
                        "unknown simplex {}",
                        names.iter().map(|s| s.as_ref()).collect::<Vec<_>>().join(" ")
                    ))
                })
            };
            out.push((find(upper)?, find(lower)?));
        }
        Ok(Matching::new(out))
    }

    /// Partner table: `Some(upper)` for each lower cell and `Some(lower)` for each upper cell.
    pub fn partner_table(&self, n: usize) -> Vec<Option<SimplexId>> {
        let mut t = vec![None; n];
        for &(u, l) in &self.pairs {
            t[u] = Some(l);
            t[l] = Some(u);
        }
        t
    }

    /// Upper cell for each lower cell.
    pub fn up_table(&self, n: usize) -> Vec<Option<SimplexId>> {
        let mut t = vec![None; n];
        for &(u, l) in &self.pairs {
            t[l] = Some(u);
        }
        t
    }

    pub fn critical(&self, x: &SimplicialComplex) -> Vec<SimplexId> {
        let p = self.partner_table(x.len());
        (0..x.len()).filter(|&s| p[s].is_none()).collect()
    }

    pub fn describe(&self, x: &SimplicialComplex) -> Vec<String> {
        self.pairs.iter().map(|&(u, l)| format!("{} > {}", x.label(u), x.label(l))).collect()
    }
}

/// Dimension, partition and acyclicity of a matching. A cycle witness lists the pairs in
/// cycle order.
pub fn validate_matching(x: &SimplicialComplex, m: &Matching) -> Report {
    let mut r = Report::new();
    for &(u, l) in &m.pairs {
        if u >= x.len() || l >= x.len() {
            r.push("exists", format!("pair ({u}, {l}) names an unknown simplex"));
            return r;
        }
        if !x.is_proper_face(l, u) {
            r.push("face", format!("{} is not a face of {}", x.label(l), x.label(u)));
        }
        if x.simplex_dim(u) != x.simplex_dim(l) + 1 {
            r.push("dimension", format!("{} > {}", x.label(u), x.label(l)));
        }
    }
    let mut seen: HashMap<SimplexId, usize> = HashMap::new();
    for (i, &(u, l)) in m.pairs.iter().enumerate() {
        for s in [u, l] {
            if let Some(&j) = seen.get(&s) {
                r.push(
                    "partition",
                    format!("{} lies in pairs {} and {}", x.label(s), pair_label(x, m.pairs[j]), pair_label(x, m.pairs[i])),
                );
            } else {
                seen.insert(s, i);
            }
        }
    }
    if !r.is_ok() {
        return r;
    }
    // p ▶ q when the upper cell of p has the lower cell of q as a face
    let n = m.pairs.len();
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && x.is_proper_face(m.pairs[j].1, m.pairs[i].0))
                .collect()
        })
        .collect();
    if let Some(cycle) = find_cycle(&succ) {
        r.push(
            "acyclicity",
            cycle.iter().map(|&i| pair_label(x, m.pairs[i])).collect::<Vec<_>>().join(" ▶ "),
        );
    }
    r
}

fn pair_label(x: &SimplicialComplex, (u, l): (SimplexId, SimplexId)) -> String {
    format!("({} > {})", x.label(u), x.label(l))
}

fn find_cycle(succ: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = succ.len();
    let mut state = vec![0u8; n];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut path: Vec<usize> = Vec::new();
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        stack.push((start, 0));
        state[start] = 1;
        path.push(start);
        while let Some(top) = stack.last_mut() {
            let v = top.0;
            if top.1 < succ[v].len() {
                let w = succ[v][top.1];
                top.1 += 1;
                match state[w] {
                    0 => {
                        state[w] = 1;
                        stack.push((w, 0));
                        path.push(w);
                    }
                    1 => {
                        let pos = path.iter().position(|&p| p == w).unwrap();
                        return Some(path[pos..].to_vec());
                    }
                    _ => {}
                }
            } else {
                state[v] = 2;
                stack.pop();
                path.pop();
            }
        }
    }
    None
}
