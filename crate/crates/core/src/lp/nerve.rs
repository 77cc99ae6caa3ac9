use std::collections::HashMap;

use itertools::Itertools;

use super::{LpCategory, LpFunctor, MorId, ObjId};
use crate::error::{Error, Result};
use crate::report::Report;

pub const DEFAULT_NERVE_BOUND: usize = 1_000_000;

/// Nondegenerate simplex `(x0, ..., xn; f_ij)`. The morphism `f_ij` (for `i < j`) is stored
/// at index `j(j-1)/2 + i`, so extending by a vertex appends a contiguous block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NerveSimplex {
    pub objects: Vec<ObjId>,
    pub morphisms: Vec<MorId>,
}

fn pair_index(i: usize, j: usize) -> usize {
    j * (j - 1) / 2 + i
}

impl NerveSimplex {
    pub fn dim(&self) -> usize {
        self.objects.len() - 1
    }

    pub fn mor(&self, i: usize, j: usize) -> MorId {
        self.morphisms[pair_index(i, j)]
    }

    /// Face `d_k`, dropping vertex `k`.
    pub fn face(&self, k: usize) -> NerveSimplex {
        let n = self.objects.len();
        let keep: Vec<usize> = (0..n).filter(|&i| i != k).collect();
        let mut morphisms = Vec::new();
        for jj in 1..keep.len() {
            for ii in 0..jj {
                morphisms.push(self.mor(keep[ii], keep[jj]));
            }
        }
        NerveSimplex {
            objects: keep.iter().map(|&i| self.objects[i]).collect(),
            morphisms,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct NerveSimplicialSet {
    levels: Vec<Vec<NerveSimplex>>,
    index: Vec<HashMap<NerveSimplex, usize>>,
}

impl NerveSimplicialSet {
    /// Number of nonempty levels.
    pub fn n_dims(&self) -> usize {
        self.levels.len()
    }

    pub fn count(&self, d: usize) -> usize {
        self.levels.get(d).map_or(0, Vec::len)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn simplex(&self, d: usize, i: usize) -> &NerveSimplex {
        &self.levels[d][i]
    }

    pub fn level(&self, d: usize) -> &[NerveSimplex] {
        self.levels.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn lookup(&self, s: &NerveSimplex) -> Option<usize> {
        self.index.get(s.dim())?.get(s).copied()
    }

    /// Indices of the faces `d_0, ..., d_n` of simplex `i` in dimension `d`; `None` marks
    /// a degenerate face.
    pub fn faces(&self, d: usize, i: usize) -> Vec<Option<usize>> {
        let s = &self.levels[d][i];
        (0..=d).map(|k| self.index[d - 1].get(&s.face(k)).copied()).collect()
    }
}

/// Simplices of the geometric nerve on pairwise distinct objects, up to `max_dim`. These are
/// all the nondegenerate simplices when every hom poset is discrete, as for face posets.
pub fn geometric_nerve(c: &LpCategory, max_dim: Option<usize>, bound: usize) -> Result<NerveSimplicialSet> {
    let mut levels: Vec<Vec<NerveSimplex>> = vec![c
        .objects()
        .map(|x| NerveSimplex {
            objects: vec![x],
            morphisms: Vec::new(),
        })
        .collect()];
    let mut total = levels[0].len();
    if total > bound {
        return Err(Error::Budget { what: "nerve", budget: bound });
    }
    if total == 0 {
        return Ok(NerveSimplicialSet::default());
    }
    let cap = max_dim.unwrap_or(usize::MAX);
    while levels.len() <= cap {
        let mut next = Vec::new();
        for s in levels.last().unwrap() {
            let n = s.dim();
            let last = s.objects[n];
            for &y in c.out_neighbours(last) {
                if s.objects.contains(&y) {
                    continue;
                }
                let mut chosen = vec![0; n + 1];
                extend(c, s, y, n as isize, &mut chosen, &mut next, &mut total, bound)?;
            }
        }
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    let index = levels
        .iter()
        .map(|l| l.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
        .collect();
    Ok(NerveSimplicialSet { levels, index })
}

#[allow(clippy::too_many_arguments)]
fn extend(
    c: &LpCategory,
    s: &NerveSimplex,
    y: ObjId,
    i: isize,
    chosen: &mut Vec<MorId>,
    out: &mut Vec<NerveSimplex>,
    total: &mut usize,
    bound: usize,
) -> Result<()> {
    let n = s.dim();
    if i < 0 {
        let mut objects = s.objects.clone();
        objects.push(y);
        let mut morphisms = s.morphisms.clone();
        morphisms.extend_from_slice(chosen);
        out.push(NerveSimplex { objects, morphisms });
        *total += 1;
        if *total > bound {
            return Err(Error::Budget { what: "nerve", budget: bound });
        }
        return Ok(());
    }
    let i = i as usize;
    'cand: for &f in c.hom(s.objects[i], y) {
        for j in i + 1..=n {
            let Some(comp) = c.compose(s.mor(i, j), chosen[j]) else {
                continue 'cand;
            };
            if !c.le(f, comp) {
                continue 'cand;
            }
        }
        chosen[i] = f;
        extend(c, s, y, i as isize - 1, chosen, out, total, bound)?;
    }
    Ok(())
}

/// Generator of the double nerve: a chain of distinct objects together with a strictly
/// increasing chain in the product of the hom posets along it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BarCell {
    pub objects: Vec<ObjId>,
    /// `chain[j][k]` is the morphism `x_k -> x_{k+1}` of the `j`-th tuple.
    pub chain: Vec<Vec<MorId>>,
}

impl BarCell {
    /// Object-chain length `n`.
    pub fn horizontal(&self) -> usize {
        self.objects.len() - 1
    }

    /// Poset-chain length `m`.
    pub fn vertical(&self) -> usize {
        self.chain.len() - 1
    }

    pub fn degree(&self) -> usize {
        self.horizontal() + self.vertical()
    }

    /// Horizontal face `d_i`; `None` when it is degenerate.
    pub fn horizontal_face(&self, c: &LpCategory, i: usize) -> Option<BarCell> {
        let n = self.horizontal();
        let mut objects = self.objects.clone();
        objects.remove(i);
        let chain: Vec<Vec<MorId>> = self
            .chain
            .iter()
            .map(|t| {
                let mut t = t.clone();
                if i == 0 {
                    t.remove(0);
                } else if i == n {
                    t.pop();
                } else {
                    let h = c.compose(t[i - 1], t[i]).expect("composable");
                    t.splice(i - 1..=i, [h]);
                }
                t
            })
            .collect();
        chain.windows(2).all(|w| w[0] != w[1]).then_some(BarCell { objects, chain })
    }

    /// Vertical face dropping the `j`-th tuple.
    pub fn vertical_face(&self, j: usize) -> BarCell {
        let mut chain = self.chain.clone();
        chain.remove(j);
        BarCell {
            objects: self.objects.clone(),
            chain,
        }
    }
}

fn tuple_le(c: &LpCategory, a: &[MorId], b: &[MorId]) -> bool {
    a.iter().zip(b).all(|(&f, &g)| c.le(f, g))
}

/// Generators of the normalized double nerve, grouped by total degree. Its total complex
/// computes the homology of the classifying space and stays finite when hom posets are not
/// discrete, unlike the nondegenerate simplices of the geometric nerve.
pub fn double_nerve(c: &LpCategory, bound: usize) -> Result<Vec<Vec<BarCell>>> {
    let mut by_degree: Vec<Vec<BarCell>> = Vec::new();
    let mut total = 0usize;
    let mut push = |cell: BarCell, by_degree: &mut Vec<Vec<BarCell>>| -> Result<()> {
        total += 1;
        if total > bound {
            return Err(Error::Budget { what: "nerve", budget: bound });
        }
        let d = cell.degree();
        if by_degree.len() <= d {
            by_degree.resize(d + 1, Vec::new());
        }
        by_degree[d].push(cell);
        Ok(())
    };
    let mut stack: Vec<Vec<ObjId>> = c.objects().map(|x| vec![x]).collect();
    stack.reverse();
    while let Some(objects) = stack.pop() {
        let last = *objects.last().unwrap();
        for &y in c.out_neighbours(last).iter().rev() {
            if y != last {
                let mut next = objects.clone();
                next.push(y);
                stack.push(next);
            }
        }
        let homs: Vec<&[MorId]> = objects.windows(2).map(|w| c.hom(w[0], w[1])).collect();
        let tuples: Vec<Vec<MorId>> = homs.iter().map(|h| h.iter().copied()).multi_cartesian_product().collect();
        let tuples = if homs.is_empty() { vec![Vec::new()] } else { tuples };
        // strict chains in the product order, grown upwards
        let mut chains: Vec<Vec<usize>> = (0..tuples.len()).map(|t| vec![t]).collect();
        while let Some(ch) = chains.pop() {
            let top = *ch.last().unwrap();
            for t in 0..tuples.len() {
                if t != top && tuple_le(c, &tuples[top], &tuples[t]) {
                    let mut longer = ch.clone();
                    longer.push(t);
                    chains.push(longer);
                }
            }
            push(
                BarCell {
                    objects: objects.clone(),
                    chain: ch.iter().map(|&t| tuples[t].clone()).collect(),
                },
                &mut by_degree,
            )?;
        }
    }
    for level in &mut by_degree {
        level.sort();
    }
    Ok(by_degree)
}

/// Checks that `f` maps the nerve of its source bijectively onto the nerve of its target,
/// level by level.
pub fn nerve_iso_check(f: &LpFunctor, nc: &NerveSimplicialSet, nd: &NerveSimplicialSet) -> Report {
    let mut r = Report::new();
    if nc.f_vector() != nd.f_vector() {
        r.push("f-vector", format!("{:?} vs {:?}", nc.f_vector(), nd.f_vector()));
        return r;
    }
    for d in 0..nc.n_dims() {
        let mut hit = vec![false; nd.count(d)];
        for s in nc.level(d) {
            let image = NerveSimplex {
                objects: s.objects.iter().map(|&x| f.objects[x]).collect(),
                morphisms: s.morphisms.iter().map(|&m| f.morphisms[m]).collect(),
            };
            match nd.lookup(&image) {
                Some(i) if !hit[i] => hit[i] = true,
                Some(_) => r.push("injective", format!("dimension {d}: {:?}", s.objects)),
                None => r.push("simplicial", format!("dimension {d}: image of {:?} is not a simplex", s.objects)),
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{face_poset, SimplicialComplex};
    use crate::lp::LpCategoryBuilder;

    #[test]
    fn single_object() {
        let mut b = LpCategoryBuilder::new();
        b.add_object("x");
        let n = geometric_nerve(&b.build().unwrap(), None, DEFAULT_NERVE_BOUND).unwrap();
        assert_eq!(n.f_vector(), vec![1]);
    }

    #[test]
    fn interval() {
        let mut b = LpCategoryBuilder::new();
        let a = b.add_object("a");
        let c = b.add_object("b");
        b.add_morphism(a, c, "f");
        let n = geometric_nerve(&b.build().unwrap(), None, DEFAULT_NERVE_BOUND).unwrap();
        assert_eq!(n.f_vector(), vec![2, 1]);
    }

    #[test]
    fn triangle_subdivision_counts() {
        let x = SimplicialComplex::from_maximal(&[vec!["a", "b", "c"]]).unwrap();
        let n = geometric_nerve(&face_poset(&x), None, DEFAULT_NERVE_BOUND).unwrap();
        assert_eq!(n.f_vector(), vec![7, 12, 6]);
    }

    #[test]
    fn bound_enforced() {
        let x = SimplicialComplex::from_maximal(&[vec!["a", "b", "c"]]).unwrap();
        assert!(geometric_nerve(&face_poset(&x), None, 10).is_err());
    }

    #[test]
    fn order_condition_prunes() {
        // hom(x,z) = {p ⇒ q}; only q dominates g∘f, so the 2-simplices use q or p accordingly
        let mut b = LpCategoryBuilder::new();
        let x = b.add_object("x");
        let y = b.add_object("y");
        let z = b.add_object("z");
        let f = b.add_morphism(x, y, "f");
        let g = b.add_morphism(y, z, "g");
        let p = b.add_morphism(x, z, "p");
        let q = b.add_morphism(x, z, "q");
        b.add_le(p, q);
        b.set_composite(f, g, q);
        let c = b.build().unwrap();
        let n = geometric_nerve(&c, None, DEFAULT_NERVE_BOUND).unwrap();
        // f_02 ⇒ g∘f = q admits both p and q
        assert_eq!(n.f_vector(), vec![3, 4, 2]);
        let mut b2 = LpCategoryBuilder::new();
        let x = b2.add_object("x");
        let y = b2.add_object("y");
        let z = b2.add_object("z");
        let f = b2.add_morphism(x, y, "f");
        let g = b2.add_morphism(y, z, "g");
        let p = b2.add_morphism(x, z, "p");
        let q = b2.add_morphism(x, z, "q");
        b2.add_le(p, q);
        b2.set_composite(f, g, p);
        let n = geometric_nerve(&b2.build().unwrap(), None, DEFAULT_NERVE_BOUND).unwrap();
        assert_eq!(n.f_vector(), vec![3, 4, 1]);
    }
}
