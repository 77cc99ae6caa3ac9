//! Loopfree poset-enriched categories.

mod iso;
mod nerve;

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::report::Report;

pub use iso::{find_isomorphism, ActionTables, IsoOutcome, IsoSearch};
pub use nerve::{double_nerve, geometric_nerve, BarCell, nerve_iso_check, NerveSimplex, NerveSimplicialSet, DEFAULT_NERVE_BOUND};

pub type ObjId = usize;
pub type MorId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub src: ObjId,
    pub dst: ObjId,
    pub label: String,
}

/// Finite category with a partial order on every hom-set.
///
/// Non-identity morphisms are numbered first; the identity of object `x` is
/// morphism `n_non_identity + x`.
#[derive(Debug, Clone)]
pub struct LpCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    n_non_identity: usize,
    homs: HashMap<(ObjId, ObjId), Vec<MorId>>,
    hom_pos: Vec<usize>,
    /// `le[f][hom_pos[g]]` for `f`, `g` in one hom-set.
    le: Vec<Vec<bool>>,
    compose: HashMap<(MorId, MorId), MorId>,
    out_homs: Vec<Vec<ObjId>>,
    in_homs: Vec<Vec<ObjId>>,
}

fn sanitize(label: &str) -> String {
    let s: String = label
        .chars()
        .map(|c| if c.is_whitespace() { '_' } else { c })
        .collect();
    if s.is_empty() {
        "_".into()
    } else {
        s
    }
}

#[derive(Debug, Clone, Default)]
pub struct LpCategoryBuilder {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    order: Vec<(MorId, MorId)>,
    compose: Vec<(MorId, MorId, MorId)>,
}

impl LpCategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_object(&mut self, label: impl AsRef<str>) -> ObjId {
        self.objects.push(sanitize(label.as_ref()));
        self.objects.len() - 1
    }

    /// Adds a non-identity morphism.
    pub fn add_morphism(&mut self, src: ObjId, dst: ObjId, label: impl AsRef<str>) -> MorId {
        self.morphisms.push(Morphism {
            src,
            dst,
            label: sanitize(label.as_ref()),
        });
        self.morphisms.len() - 1
    }

    /// Records `f ⇒ g`. Reflexive and transitive closure is taken on build.
    pub fn add_le(&mut self, f: MorId, g: MorId) {
        self.order.push((f, g));
    }

    /// Records `g ∘ f = h` for `f: x -> y`, `g: y -> z`.
    pub fn set_composite(&mut self, f: MorId, g: MorId, h: MorId) {
        self.compose.push((f, g, h));
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    /// Identity id that `build` will assign to object `x`.
    pub fn identity_id(&self, x: ObjId) -> MorId {
        self.morphisms.len() + x
    }

    pub fn build(self) -> Result<LpCategory> {
        let n_obj = self.objects.len();
        let n_non_identity = self.morphisms.len();
        let mut morphisms = self.morphisms;
        for (i, m) in morphisms.iter().enumerate() {
            if m.src >= n_obj || m.dst >= n_obj {
                return Err(Error::Invalid(format!("morphism {i} has an unknown endpoint")));
            }
        }
        for x in 0..n_obj {
            morphisms.push(Morphism {
                src: x,
                dst: x,
                label: "id".into(),
            });
        }
        let n_mor = morphisms.len();
        let mut homs: HashMap<(ObjId, ObjId), Vec<MorId>> = HashMap::new();
        let mut hom_pos = vec![0; n_mor];
        for (i, m) in morphisms.iter().enumerate() {
            let h = homs.entry((m.src, m.dst)).or_default();
            hom_pos[i] = h.len();
            h.push(i);
        }
        let mut le: Vec<Vec<bool>> = morphisms
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let mut row = vec![false; homs[&(m.src, m.dst)].len()];
                row[hom_pos[i]] = true;
                row
            })
            .collect();
        for &(f, g) in &self.order {
            if f >= n_mor || g >= n_mor {
                return Err(Error::Invalid(format!("order relation on unknown morphism ({f}, {g})")));
            }
            let (a, b) = (&morphisms[f], &morphisms[g]);
            if (a.src, a.dst) != (b.src, b.dst) {
                return Err(Error::Invalid(format!(
                    "order relation {f} => {g} between different hom-sets"
                )));
            }
            le[f][hom_pos[g]] = true;
        }
        // transitive closure per hom-set (Floyd-Warshall on the relation matrix)
        for members in homs.values() {
            for &k in members {
                for &i in members {
                    if le[i][hom_pos[k]] {
                        for (jp, &j) in members.iter().enumerate() {
                            if le[k][hom_pos[j]] {
                                le[i][jp] = true;
                            }
                        }
                    }
                }
            }
        }
        let mut compose = HashMap::new();
        for x in 0..n_obj {
            let id = n_non_identity + x;
            compose.insert((id, id), id);
        }
        for (i, m) in morphisms.iter().enumerate().take(n_non_identity) {
            compose.insert((n_non_identity + m.src, i), i);
            compose.insert((i, n_non_identity + m.dst), i);
        }
        for &(f, g, h) in &self.compose {
            if f >= n_mor || g >= n_mor || h >= n_mor {
                return Err(Error::Invalid(format!("composite on unknown morphism ({f}, {g}) = {h}")));
            }
            let (mf, mg, mh) = (&morphisms[f], &morphisms[g], &morphisms[h]);
            if mf.dst != mg.src || mh.src != mf.src || mh.dst != mg.dst {
                return Err(Error::Invalid(format!("ill-typed composite ({f}, {g}) = {h}")));
            }
            if let Some(&old) = compose.get(&(f, g)) {
                if old != h {
                    return Err(Error::Invalid(format!("conflicting composites for ({f}, {g})")));
                }
            }
            compose.insert((f, g), h);
        }
        let mut out_homs = vec![Vec::new(); n_obj];
        let mut in_homs = vec![Vec::new(); n_obj];
        let mut keys: Vec<_> = homs.keys().copied().collect();
        keys.sort_unstable();
        for (x, y) in keys {
            out_homs[x].push(y);
            in_homs[y].push(x);
        }
        Ok(LpCategory {
            objects: self.objects,
            morphisms,
            n_non_identity,
            homs,
            hom_pos,
            le,
            compose,
            out_homs,
            in_homs,
        })
    }
}

impl LpCategory {
    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn non_identity_count(&self) -> usize {
        self.n_non_identity
    }

    pub fn objects(&self) -> std::ops::Range<ObjId> {
        0..self.objects.len()
    }

    pub fn morphism_ids(&self) -> std::ops::Range<MorId> {
        0..self.morphisms.len()
    }

    pub fn object_label(&self, x: ObjId) -> &str {
        &self.objects[x]
    }

    pub fn morphism(&self, f: MorId) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn src(&self, f: MorId) -> ObjId {
        self.morphisms[f].src
    }

    pub fn dst(&self, f: MorId) -> ObjId {
        self.morphisms[f].dst
    }

    pub fn identity(&self, x: ObjId) -> MorId {
        self.n_non_identity + x
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        f >= self.n_non_identity
    }

    pub fn hom(&self, x: ObjId, y: ObjId) -> &[MorId] {
        self.homs.get(&(x, y)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Targets `y` with nonempty `hom(x, y)`, sorted.
    pub fn out_neighbours(&self, x: ObjId) -> &[ObjId] {
        &self.out_homs[x]
    }

    pub fn in_neighbours(&self, y: ObjId) -> &[ObjId] {
        &self.in_homs[y]
    }

    pub fn hom_sets(&self) -> impl Iterator<Item = ((ObjId, ObjId), &[MorId])> {
        let mut keys: Vec<_> = self.homs.keys().copied().collect();
        keys.sort_unstable();
        keys.into_iter().map(move |k| (k, self.homs[&k].as_slice()))
    }

    /// `f ⇒ g`
    pub fn le(&self, f: MorId, g: MorId) -> bool {
        let (a, b) = (&self.morphisms[f], &self.morphisms[g]);
        (a.src, a.dst) == (b.src, b.dst) && self.le[f][self.hom_pos[g]]
    }

    /// `g ∘ f`
    pub fn compose(&self, f: MorId, g: MorId) -> Option<MorId> {
        self.compose.get(&(f, g)).copied()
    }

    /// Single-morphism hom-set lookup; `None` when empty or ambiguous.
    pub fn unique_hom(&self, x: ObjId, y: ObjId) -> Option<MorId> {
        match self.hom(x, y) {
            [f] => Some(*f),
            _ => None,
        }
    }

    /// All strict relations `f ⇒ g` with `f != g`.
    pub fn strict_relations(&self) -> Vec<(MorId, MorId)> {
        let mut out = Vec::new();
        for (_, members) in self.hom_sets() {
            for &f in members {
                for &g in members {
                    if f != g && self.le(f, g) {
                        out.push((f, g));
                    }
                }
            }
        }
        out
    }

    pub fn describe(&self, f: MorId) -> String {
        let m = &self.morphisms[f];
        format!("{}:{}->{}", m.label, self.objects[m.src], self.objects[m.dst])
    }

    /// Composable non-identity-free enumeration of pairs `(f, g)` with `dst f = src g`.
    pub fn composable_pairs(&self) -> Vec<(MorId, MorId)> {
        let mut by_src: Vec<Vec<MorId>> = vec![Vec::new(); self.n_objects()];
        for f in self.morphism_ids() {
            by_src[self.src(f)].push(f);
        }
        let mut out = Vec::new();
        for f in self.morphism_ids() {
            for &g in &by_src[self.dst(f)] {
                out.push((f, g));
            }
        }
        out
    }

    pub fn morphisms_from(&self, x: ObjId) -> Vec<MorId> {
        self.out_homs[x].iter().flat_map(|&y| self.hom(x, y).iter().copied()).collect()
    }
}

/// Checks every axiom of an LP-category and returns all violations found.
pub fn validate_lp(c: &LpCategory) -> Report {
    let mut r = Report::new();
    for x in c.objects() {
        let h = c.hom(x, x);
        if h != [c.identity(x)] {
            for &f in h.iter().filter(|&&f| f != c.identity(x)) {
                r.push("loopfree", format!("non-identity endomorphism {}", c.describe(f)));
            }
        }
        for &y in c.out_neighbours(x) {
            if y > x && !c.hom(y, x).is_empty() {
                r.push(
                    "loopfree",
                    format!("morphisms in both directions between {} and {}", c.object_label(x), c.object_label(y)),
                );
            }
        }
    }
    for (f, g) in c.composable_pairs() {
        match c.compose(f, g) {
            None => r.push("composition", format!("missing composite of {} then {}", c.describe(f), c.describe(g))),
            Some(h) => {
                if c.src(h) != c.src(f) || c.dst(h) != c.dst(g) {
                    r.push("composition", format!("ill-typed composite of {} then {}", c.describe(f), c.describe(g)));
                }
            }
        }
    }
    for x in c.objects() {
        let id = c.identity(x);
        for f in c.morphisms_from(x) {
            if c.compose(id, f) != Some(f) || c.compose(f, c.identity(c.dst(f))) != Some(f) {
                r.push("unit", c.describe(f));
            }
        }
        let _ = id;
    }
    let pairs = c.composable_pairs();
    let mut by_src: Vec<Vec<MorId>> = vec![Vec::new(); c.n_objects()];
    for f in c.morphism_ids() {
        by_src[c.src(f)].push(f);
    }
    for &(f, g) in &pairs {
        let Some(gf) = c.compose(f, g) else { continue };
        for &h in &by_src[c.dst(g)] {
            let lhs = c.compose(gf, h);
            let rhs = c.compose(g, h).and_then(|hg| c.compose(f, hg));
            if lhs != rhs {
                r.push(
                    "associativity",
                    format!("({}, {}, {})", c.describe(f), c.describe(g), c.describe(h)),
                );
            }
        }
    }
    for (_, members) in c.hom_sets() {
        for &f in members {
            if !c.le(f, f) {
                r.push("order reflexive", c.describe(f));
            }
            for &g in members {
                if f != g && c.le(f, g) && c.le(g, f) {
                    if f < g {
                        r.push("order antisymmetric", format!("{} and {}", c.describe(f), c.describe(g)));
                    }
                }
                if c.le(f, g) {
                    for &h in members {
                        if c.le(g, h) && !c.le(f, h) {
                            r.push("order transitive", format!("{} {} {}", f, g, h));
                        }
                    }
                }
            }
        }
    }
    // monotonicity, one side at a time
    for (f0, f1) in c.strict_relations() {
        let y = c.dst(f0);
        for &g in &by_src[y] {
            if let (Some(a), Some(b)) = (c.compose(f0, g), c.compose(f1, g)) {
                if !c.le(a, b) {
                    r.push(
                        "order preserved by composition",
                        format!("{} => {} but not after {}", c.describe(f0), c.describe(f1), c.describe(g)),
                    );
                }
            }
        }
        let x = c.src(f0);
        for h in c.morphism_ids().filter(|&h| c.dst(h) == x) {
            if let (Some(a), Some(b)) = (c.compose(h, f0), c.compose(h, f1)) {
                if !c.le(a, b) {
                    r.push(
                        "order preserved by composition",
                        format!("{} => {} but not before {}", c.describe(f0), c.describe(f1), c.describe(h)),
                    );
                }
            }
        }
    }
    r
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpFunctor {
    pub objects: Vec<ObjId>,
    pub morphisms: Vec<MorId>,
}

impl LpFunctor {
    pub fn identity(c: &LpCategory) -> Self {
        LpFunctor {
            objects: c.objects().collect(),
            morphisms: c.morphism_ids().collect(),
        }
    }

    /// `other ∘ self`
    pub fn then(&self, other: &LpFunctor) -> LpFunctor {
        LpFunctor {
            objects: self.objects.iter().map(|&x| other.objects[x]).collect(),
            morphisms: self.morphisms.iter().map(|&f| other.morphisms[f]).collect(),
        }
    }

    pub fn is_bijective(&self, target: &LpCategory) -> bool {
        fn perm(v: &[usize], n: usize) -> bool {
            let mut seen = vec![false; n];
            v.len() == n && v.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
        }
        perm(&self.objects, target.n_objects()) && perm(&self.morphisms, target.n_morphisms())
    }

    pub fn inverse(&self) -> LpFunctor {
        let mut objects = vec![0; self.objects.len()];
        for (i, &x) in self.objects.iter().enumerate() {
            objects[x] = i;
        }
        let mut morphisms = vec![0; self.morphisms.len()];
        for (i, &f) in self.morphisms.iter().enumerate() {
            morphisms[f] = i;
        }
        LpFunctor { objects, morphisms }
    }
}

/// Verifies that `f` is an LP functor from `c` to `d`.
pub fn check_lp_functor(f: &LpFunctor, c: &LpCategory, d: &LpCategory) -> Report {
    let mut r = Report::new();
    if f.objects.len() != c.n_objects() || f.morphisms.len() != c.n_morphisms() {
        r.push("total", "object or morphism map has the wrong length");
        return r;
    }
    if f.objects.iter().any(|&x| x >= d.n_objects()) || f.morphisms.iter().any(|&m| m >= d.n_morphisms()) {
        r.push("total", "map lands outside the target");
        return r;
    }
    for m in c.morphism_ids() {
        let fm = f.morphisms[m];
        if d.src(fm) != f.objects[c.src(m)] || d.dst(fm) != f.objects[c.dst(m)] {
            r.push("endpoints", c.describe(m));
        }
    }
    for x in c.objects() {
        if f.morphisms[c.identity(x)] != d.identity(f.objects[x]) {
            r.push("identity", c.object_label(x).to_string());
        }
    }
    for (a, b) in c.composable_pairs() {
        if let Some(ba) = c.compose(a, b) {
            if d.compose(f.morphisms[a], f.morphisms[b]) != Some(f.morphisms[ba]) {
                r.push("composition", format!("{} then {}", c.describe(a), c.describe(b)));
            }
        }
    }
    for (a, b) in c.strict_relations() {
        if !d.le(f.morphisms[a], f.morphisms[b]) {
            r.push("order", format!("{} => {}", c.describe(a), c.describe(b)));
        }
    }
    r
}

/// Checks that `f` is an isomorphism: bijective, functorial both ways and order-reflecting.
pub fn check_isomorphism(f: &LpFunctor, c: &LpCategory, d: &LpCategory) -> Report {
    let mut r = check_lp_functor(f, c, d);
    if !r.is_ok() {
        return r;
    }
    if !f.is_bijective(d) {
        r.push("bijective", "object or morphism map is not a bijection");
        return r;
    }
    r.merge(check_lp_functor(&f.inverse(), d, c));
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two objects, hom(x, y) = {a ⇒ b}, hom(y, z) = {c ⇒ d}, hom(x, z) = {p ⇒ q}.
    fn two_step(broken: bool) -> LpCategory {
        let mut b = LpCategoryBuilder::new();
        let x = b.add_object("x");
        let y = b.add_object("y");
        let z = b.add_object("z");
        let a = b.add_morphism(x, y, "a");
        let bb = b.add_morphism(x, y, "b");
        let c = b.add_morphism(y, z, "c");
        let d = b.add_morphism(y, z, "d");
        let p = b.add_morphism(x, z, "p");
        let q = b.add_morphism(x, z, "q");
        b.add_le(a, bb);
        b.add_le(c, d);
        b.add_le(p, q);
        b.set_composite(a, c, if broken { q } else { p });
        b.set_composite(bb, d, q);
        b.set_composite(a, d, q);
        b.set_composite(bb, c, if broken { p } else { q });
        b.build().unwrap()
    }

    #[test]
    fn monotone_category_valid() {
        let r = validate_lp(&two_step(false));
        assert!(r.is_ok(), "{r}");
    }

    #[test]
    fn broken_monotonicity_detected() {
        let r = validate_lp(&two_step(true));
        assert!(r.has("order preserved by composition"), "{r}");
    }

    #[test]
    fn endomorphism_detected() {
        let mut b = LpCategoryBuilder::new();
        let x = b.add_object("x");
        let f = b.add_morphism(x, x, "f");
        b.set_composite(f, f, f);
        let r = validate_lp(&b.build().unwrap());
        assert!(r.has("loopfree"));
    }

    #[test]
    fn two_cycle_detected() {
        let mut b = LpCategoryBuilder::new();
        let x = b.add_object("x");
        let y = b.add_object("y");
        b.add_morphism(x, y, "f");
        b.add_morphism(y, x, "g");
        let r = validate_lp(&b.build().unwrap());
        assert!(r.has("loopfree"));
    }

    #[test]
    fn order_closure_and_antisymmetry() {
        let mut b = LpCategoryBuilder::new();
        let x = b.add_object("x");
        let y = b.add_object("y");
        let f = b.add_morphism(x, y, "f");
        let g = b.add_morphism(x, y, "g");
        let h = b.add_morphism(x, y, "h");
        b.add_le(f, g);
        b.add_le(g, h);
        let c = b.build().unwrap();
        assert!(c.le(f, h));
        assert!(!c.le(h, f));
        assert!(validate_lp(&c).is_ok());
        let mut b = LpCategoryBuilder::new();
        let x = b.add_object("x");
        let y = b.add_object("y");
        let f = b.add_morphism(x, y, "f");
        let g = b.add_morphism(x, y, "g");
        b.add_le(f, g);
        b.add_le(g, f);
        assert!(validate_lp(&b.build().unwrap()).has("order antisymmetric"));
    }

    #[test]
    fn ill_typed_composite_rejected() {
        let mut b = LpCategoryBuilder::new();
        let x = b.add_object("x");
        let y = b.add_object("y");
        let f = b.add_morphism(x, y, "f");
        b.set_composite(f, f, f);
        assert!(b.build().is_err());
    }

    #[test]
    fn functor_checks() {
        let c = two_step(false);
        assert!(check_lp_functor(&LpFunctor::identity(&c), &c, &c).is_ok());
        let mut b = LpCategoryBuilder::new();
        b.add_object("pt");
        let pt = b.build().unwrap();
        let constant = LpFunctor {
            objects: vec![0; c.n_objects()],
            morphisms: vec![pt.identity(0); c.n_morphisms()],
        };
        assert!(check_lp_functor(&constant, &c, &pt).is_ok());
        assert!(!check_isomorphism(&constant, &c, &pt).is_ok());
    }
}
