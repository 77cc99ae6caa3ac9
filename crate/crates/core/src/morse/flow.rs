use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::complex::{SimplexId, SimplicialComplex};
use crate::error::{Error, Result};
use crate::lp::{LpCategory, LpCategoryBuilder, MorId, ObjId};

use super::{validate_matching, Matching};

/// A zigzag as a walk through simplices. `up[i]` marks step `nodes[i] -> nodes[i+1]` as the
/// reverse of a matched pair; every other step descends to a proper face.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub nodes: Vec<SimplexId>,
    pub up: Vec<bool>,
}

impl Word {
    pub fn point(x: SimplexId) -> Self {
        Word {
            nodes: vec![x],
            up: Vec::new(),
        }
    }

    pub fn src(&self) -> SimplexId {
        self.nodes[0]
    }

    pub fn dst(&self) -> SimplexId {
        *self.nodes.last().unwrap()
    }

    pub fn steps(&self) -> usize {
        self.up.len()
    }

    pub fn is_point(&self) -> bool {
        self.up.is_empty()
    }

    fn cancel_at(&self, i: usize) -> Word {
        let mut nodes = self.nodes.clone();
        let mut up = self.up.clone();
        nodes.drain(i + 1..i + 3);
        up.drain(i..i + 2);
        Word { nodes, up }
    }

    /// All words obtained by cancelling one backtrack `a, b, a`.
    pub fn cancellations(&self) -> Vec<Word> {
        (0..self.nodes.len().saturating_sub(2))
            .filter(|&i| self.nodes[i] == self.nodes[i + 2])
            .map(|i| self.cancel_at(i))
            .collect()
    }

    pub fn is_reduced(&self) -> bool {
        self.nodes.windows(3).all(|w| w[0] != w[2])
    }

    pub fn reduced(&self) -> Word {
        let mut nodes: Vec<SimplexId> = Vec::with_capacity(self.nodes.len());
        let mut up: Vec<bool> = Vec::with_capacity(self.up.len());
        for (i, &x) in self.nodes.iter().enumerate() {
            if nodes.len() >= 2 && nodes[nodes.len() - 2] == x {
                nodes.pop();
                up.pop();
                continue;
            }
            if i > 0 {
                up.push(self.up[i - 1]);
            }
            nodes.push(x);
        }
        Word { nodes, up }
    }

    /// `other ∘ self`
    pub fn concat(&self, other: &Word) -> Word {
        debug_assert_eq!(self.dst(), other.src());
        let mut nodes = self.nodes.clone();
        nodes.extend_from_slice(&other.nodes[1..]);
        let mut up = self.up.clone();
        up.extend_from_slice(&other.up);
        Word { nodes, up }
    }

    pub fn map_nodes(&self, f: impl Fn(SimplexId) -> SimplexId) -> Word {
        Word {
            nodes: self.nodes.iter().map(|&x| f(x)).collect(),
            up: self.up.clone(),
        }
    }

    /// Matched pairs `(upper, lower)` traversed upwards.
    pub fn ascents(&self) -> Vec<(SimplexId, SimplexId)> {
        (0..self.up.len())
            .filter(|&i| self.up[i])
            .map(|i| (self.nodes[i + 1], self.nodes[i]))
            .collect()
    }

    /// Whitespace-free label such as `{a,b}>{a}`.
    pub fn label(&self, x: &SimplicialComplex) -> String {
        let mut s = x.label(self.nodes[0]);
        for (i, &u) in self.up.iter().enumerate() {
            s.push(if u { '<' } else { '>' });
            s.push_str(&x.label(self.nodes[i + 1]));
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlowBudget {
    pub raw_words: usize,
    pub classes: usize,
}

impl Default for FlowBudget {
    fn default() -> Self {
        FlowBudget {
            raw_words: 100_000,
            classes: 10_000,
        }
    }
}

/// Flow category of a matching: critical cells and reduced zigzag words between them.
#[derive(Debug, Clone)]
pub struct FlowCategory {
    pub category: Arc<LpCategory>,
    pub complex: Arc<SimplicialComplex>,
    pub matching: Matching,
    /// Simplex of each object.
    pub critical: Vec<SimplexId>,
    /// Object of each critical simplex.
    pub object_of: Vec<Option<ObjId>>,
    /// Reduced word of each morphism, identities included.
    pub words: Vec<Word>,
    pub raw_words: usize,
    index: HashMap<Word, MorId>,
}

impl FlowCategory {
    pub fn morphism_of(&self, w: &Word) -> Option<MorId> {
        self.index.get(w).copied()
    }

    pub fn word(&self, f: MorId) -> &Word {
        &self.words[f]
    }

    /// Object ids of all critical cells of dimension `d`.
    pub fn objects_of_dim(&self, d: usize) -> Vec<ObjId> {
        (0..self.critical.len())
            .filter(|&o| self.complex.simplex_dim(self.critical[o]) == d)
            .collect()
    }
}

struct Enumerator {
    faces: Vec<Vec<SimplexId>>,
    up: Vec<Option<SimplexId>>,
    pair_index: HashMap<SimplexId, usize>,
    is_critical: Vec<bool>,
    budget: usize,
    out: Vec<Word>,
}

impl Enumerator {
    fn walk(&mut self, word: &mut Word, used: &mut [bool]) -> Result<()> {
        let c = word.dst();
        if word.steps() > 0 && self.is_critical[c] {
            self.out.push(word.clone());
            if self.out.len() > self.budget {
                return Err(Error::Budget {
                    what: "raw zigzag enumeration",
                    budget: self.budget,
                });
            }
        }
        for k in 0..self.faces[c].len() {
            let d = self.faces[c][k];
            word.nodes.push(d);
            word.up.push(false);
            self.walk(word, used)?;
            word.nodes.pop();
            word.up.pop();
        }
        if let Some(u) = self.up[c] {
            let p = self.pair_index[&c];
            if !used[p] {
                used[p] = true;
                word.nodes.push(u);
                word.up.push(true);
                self.walk(word, used)?;
                word.nodes.pop();
                word.up.pop();
                used[p] = false;
            }
        }
        Ok(())
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, a: usize) -> usize {
        let mut r = a;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut a = a;
        while self.0[a] != r {
            let next = self.0[a];
            self.0[a] = r;
            a = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Critical cells with zigzag classes as morphisms, ordered by refinement.
///
/// Raw words never reuse a matched pair. Classes are the connected components of single
/// backtrack cancellations, and each class is checked to contain exactly one reduced word.
pub fn flow_category(x: Arc<SimplicialComplex>, sigma: &Matching, budget: FlowBudget) -> Result<FlowCategory> {
    validate_matching(&x, sigma).into_result("matching")?;
    let n = x.len();
    let partner = sigma.partner_table(n);
    let critical: Vec<SimplexId> = (0..n).filter(|&s| partner[s].is_none()).collect();
    let mut object_of = vec![None; n];
    for (o, &s) in critical.iter().enumerate() {
        object_of[s] = Some(o);
    }
    let mut en = Enumerator {
        faces: (0..n).map(|s| x.proper_faces(s)).collect(),
        up: sigma.up_table(n),
        pair_index: sigma.pairs.iter().enumerate().map(|(i, &(_, l))| (l, i)).collect(),
        is_critical: (0..n).map(|s| partner[s].is_none()).collect(),
        budget: budget.raw_words,
        out: critical.iter().map(|&c| Word::point(c)).collect(),
    };
    let mut used = vec![false; sigma.len()];
    for &w in &critical {
        en.walk(&mut Word::point(w), &mut used)?;
    }
    let raw = std::mem::take(&mut en.out);
    let raw_index: HashMap<&Word, usize> = raw.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut uf = UnionFind((0..raw.len()).collect());
    for (i, w) in raw.iter().enumerate() {
        for c in w.cancellations() {
            let j = *raw_index.get(&c).ok_or_else(|| {
                Error::verification("flow category", format!("cancellation {} of {} is not enumerated", c.label(&x), w.label(&x)))
            })?;
            uf.union(i, j);
        }
    }
    let mut class_reduced: HashMap<usize, usize> = HashMap::new();
    for (i, w) in raw.iter().enumerate() {
        if w.is_reduced() {
            let root = uf.find(i);
            if let Some(&other) = class_reduced.get(&root) {
                return Err(Error::verification(
                    "flow category",
                    format!("class contains two reduced words {} and {}", raw[other].label(&x), w.label(&x)),
                ));
            }
            class_reduced.insert(root, i);
        }
    }
    if class_reduced.len() > budget.classes {
        return Err(Error::Budget {
            what: "zigzag classes",
            budget: budget.classes,
        });
    }
    let mut reduced: Vec<&Word> = class_reduced.values().map(|&i| &raw[i]).filter(|w| !w.is_point()).collect();
    reduced.sort_by(|a, b| (a.src(), a.dst(), a.steps(), *a).cmp(&(b.src(), b.dst(), b.steps(), *b)));
    let mut b = LpCategoryBuilder::new();
    for &c in &critical {
        b.add_object(x.label(c));
    }
    let mut index: HashMap<Word, MorId> = HashMap::new();
    let mut words: Vec<Word> = Vec::new();
    for w in &reduced {
        if w.src() == w.dst() {
            return Err(Error::verification("flow category", format!("zigzag {} is a loop", w.label(&x))));
        }
        let id = b.add_morphism(object_of[w.src()].unwrap(), object_of[w.dst()].unwrap(), w.label(&x));
        index.insert((*w).clone(), id);
        words.push((*w).clone());
    }
    for (o, &c) in critical.iter().enumerate() {
        let id = b.identity_id(o);
        index.insert(Word::point(c), id);
        words.push(Word::point(c));
    }
    // composition by concatenation
    let mut by_src: HashMap<SimplexId, Vec<MorId>> = HashMap::new();
    for (id, w) in words.iter().enumerate().take(reduced.len()) {
        by_src.entry(w.src()).or_default().push(id);
    }
    for f in 0..reduced.len() {
        if let Some(nexts) = by_src.get(&words[f].dst()) {
            for &g in nexts {
                let cat = words[f].concat(&words[g]);
                let h = *index.get(&cat.reduced()).ok_or_else(|| {
                    Error::verification("flow category", format!("composite {} is not a morphism", cat.label(&x)))
                })?;
                b.set_composite(f, g, h);
            }
        }
    }
    // refinement: inserting one intermediate cell into a descent of codimension at least two
    let mut rel: BTreeSet<(MorId, MorId)> = BTreeSet::new();
    for f in 0..reduced.len() {
        let w = &words[f];
        for i in 0..w.steps() {
            if w.up[i] {
                continue;
            }
            let (a, c) = (w.nodes[i], w.nodes[i + 1]);
            if x.simplex_dim(a) < x.simplex_dim(c) + 2 {
                continue;
            }
            for &m in &en.faces[a] {
                if m != c && x.is_proper_face(c, m) {
                    let mut finer = w.clone();
                    finer.nodes.insert(i + 1, m);
                    finer.up.insert(i, false);
                    let g = *index.get(&finer.reduced()).ok_or_else(|| {
                        Error::verification("flow category", format!("refinement {} is not a morphism", finer.label(&x)))
                    })?;
                    if g != f {
                        rel.insert((f, g));
                    }
                }
            }
        }
    }
    for (f, g) in rel {
        b.add_le(f, g);
    }
    let category = Arc::new(b.build()?);
    Ok(FlowCategory {
        category,
        complex: x,
        matching: sigma.clone(),
        critical,
        object_of,
        words,
        raw_words: raw.len(),
        index,
    })
}

/// All simplices as objects and all descending chains as morphisms.
pub fn entrance_category(x: Arc<SimplicialComplex>, budget: FlowBudget) -> Result<FlowCategory> {
    flow_category(x, &Matching::empty(), budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::validate_lp;

    fn tri() -> Arc<SimplicialComplex> {
        Arc::new(SimplicialComplex::from_maximal(&[vec!["a", "b", "c"]]).unwrap())
    }

    #[test]
    fn reduction() {
        let w = Word {
            nodes: vec![5, 3, 1, 3, 2],
            up: vec![false, false, true, false],
        };
        assert_eq!(w.reduced().nodes, vec![5, 3, 2]);
        assert_eq!(w.cancellations().len(), 1);
    }

    #[test]
    fn entrance_triangle() {
        let x = tri();
        let e = entrance_category(x.clone(), FlowBudget::default()).unwrap();
        let c = &e.category;
        assert!(validate_lp(c).is_ok());
        let abc = e.object_of[x.find_named(&["a", "b", "c"]).unwrap()].unwrap();
        let a = e.object_of[x.find_named(&["a"]).unwrap()].unwrap();
        let hom = c.hom(abc, a);
        assert_eq!(hom.len(), 3);
        let short = *hom.iter().find(|&&f| e.word(f).steps() == 1).unwrap();
        for &f in hom {
            assert!(c.le(short, f));
        }
    }

    #[test]
    fn cone_collapses_to_apex() {
        let x = tri();
        let m = Matching::from_names(
            &x,
            &[
                (vec!["b", "c"], vec!["a", "b", "c"]),
                (vec!["b"], vec!["a", "b"]),
                (vec!["c"], vec!["a", "c"]),
            ],
        )
        .unwrap();
        let fl = flow_category(x, &m, FlowBudget::default()).unwrap();
        assert_eq!(fl.category.n_objects(), 1);
        assert_eq!(fl.category.n_morphisms(), 1);
    }

    #[test]
    fn interval_collapse_keeps_morphisms_consistent() {
        let x = Arc::new(SimplicialComplex::from_maximal(&[vec!["a", "b"], vec!["b", "c"]]).unwrap());
        let m = Matching::from_names(&x, &[(vec!["b"], vec!["a", "b"])]).unwrap();
        let fl = flow_category(x.clone(), &m, FlowBudget::default()).unwrap();
        assert!(validate_lp(&fl.category).is_ok());
        // critical: a, c, {b,c}; {b,c} reaches a through b < {a,b} > a
        assert_eq!(fl.category.n_objects(), 3);
        assert_eq!(fl.category.non_identity_count(), 2);
    }

    #[test]
    fn budget_enforced() {
        let err = entrance_category(tri(), FlowBudget { raw_words: 5, classes: 10 }).unwrap_err();
        assert!(matches!(err, Error::Budget { .. }));
    }
}
