use std::collections::{HashMap, VecDeque};

use super::{check_isomorphism, LpCategory, LpFunctor, MorId, ObjId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoOutcome {
    Found(LpFunctor),
    /// The search space was exhausted.
    NotIsomorphic,
    /// The node budget ran out first.
    Inconclusive,
}

impl IsoOutcome {
    pub fn found(&self) -> Option<&LpFunctor> {
        match self {
            IsoOutcome::Found(f) => Some(f),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            IsoOutcome::Found(_) => "found",
            IsoOutcome::NotIsomorphic => "none",
            IsoOutcome::Inconclusive => "inconclusive",
        }
    }
}

/// Group action tables `[g][x]` on objects and morphisms of one category.
#[derive(Debug, Clone, Copy)]
pub struct ActionTables<'a> {
    pub objects: &'a [Vec<ObjId>],
    pub morphisms: &'a [Vec<MorId>],
}

/// Backtracking isomorphism search with signature pruning and composite propagation.
pub struct IsoSearch<'a> {
    c: &'a LpCategory,
    d: &'a LpCategory,
    budget: usize,
    nodes: usize,
    hints: Vec<Option<ObjId>>,
    actions: Option<(ActionTables<'a>, ActionTables<'a>)>,
    obj: Vec<Option<ObjId>>,
    obj_inv: Vec<Option<ObjId>>,
    mor: Vec<Option<MorId>>,
    mor_inv: Vec<Option<MorId>>,
    trail: Vec<Undo>,
}

enum Undo {
    Obj(ObjId, ObjId),
    Mor(MorId, MorId),
}

type Sig = (Vec<(usize, usize)>, Vec<(usize, usize)>);

fn object_signatures(c: &LpCategory) -> Vec<Sig> {
    let rel_count = |h: &[MorId]| h.iter().map(|&f| h.iter().filter(|&&g| c.le(f, g)).count()).sum::<usize>();
    c.objects()
        .map(|x| {
            let mut out: Vec<(usize, usize)> = c
                .out_neighbours(x)
                .iter()
                .map(|&y| (c.hom(x, y).len(), rel_count(c.hom(x, y))))
                .collect();
            let mut inn: Vec<(usize, usize)> = c
                .in_neighbours(x)
                .iter()
                .map(|&w| (c.hom(w, x).len(), rel_count(c.hom(w, x))))
                .collect();
            out.sort_unstable();
            inn.sort_unstable();
            (out, inn)
        })
        .collect()
}

/// Per-morphism invariants: (elements below, elements above, factorizations, composites through).
fn morphism_signatures(c: &LpCategory) -> Vec<(usize, usize, usize, usize)> {
    let mut sig = vec![(0, 0, 0, 0); c.n_morphisms()];
    for f in c.morphism_ids() {
        let h = c.hom(c.src(f), c.dst(f));
        sig[f].0 = h.iter().filter(|&&g| c.le(g, f)).count();
        sig[f].1 = h.iter().filter(|&&g| c.le(f, g)).count();
    }
    for (a, b) in c.composable_pairs() {
        if c.is_identity(a) || c.is_identity(b) {
            continue;
        }
        if let Some(h) = c.compose(a, b) {
            sig[h].2 += 1;
            sig[a].3 += 1;
            sig[b].3 += 1;
        }
    }
    sig
}

impl<'a> IsoSearch<'a> {
    pub fn new(c: &'a LpCategory, d: &'a LpCategory, budget: usize) -> Self {
        IsoSearch {
            c,
            d,
            budget,
            nodes: 0,
            hints: vec![None; c.n_objects()],
            actions: None,
            obj: vec![None; c.n_objects()],
            obj_inv: vec![None; d.n_objects()],
            mor: vec![None; c.n_morphisms()],
            mor_inv: vec![None; d.n_morphisms()],
            trail: Vec::new(),
        }
    }

    pub fn with_hints(mut self, hints: &[Option<ObjId>]) -> Self {
        self.hints = hints.to_vec();
        self.hints.resize(self.c.n_objects(), None);
        self
    }

    /// Restricts the search to maps commuting with the two actions (same group, same
    /// element numbering).
    pub fn equivariant(mut self, on_c: ActionTables<'a>, on_d: ActionTables<'a>) -> Self {
        self.actions = Some((on_c, on_d));
        self
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn run(&mut self) -> IsoOutcome {
        let (c, d) = (self.c, self.d);
        if c.n_objects() != d.n_objects()
            || c.n_morphisms() != d.n_morphisms()
            || c.strict_relations().len() != d.strict_relations().len()
        {
            return IsoOutcome::NotIsomorphic;
        }
        let sc = object_signatures(c);
        let sd = object_signatures(d);
        let mut by_sig: HashMap<&Sig, Vec<ObjId>> = HashMap::new();
        for y in d.objects() {
            by_sig.entry(&sd[y]).or_default().push(y);
        }
        let mut candidates: Vec<Vec<ObjId>> = c
            .objects()
            .map(|x| by_sig.get(&sc[x]).cloned().unwrap_or_default())
            .collect();
        for x in c.objects() {
            if let Some(h) = self.hints[x] {
                candidates[x].retain(|&y| y == h);
            }
            if candidates[x].is_empty() {
                return IsoOutcome::NotIsomorphic;
            }
        }
        let (order, anchor) = placement_order(c, &candidates);
        let msc = morphism_signatures(c);
        let msd = morphism_signatures(d);
        let mut mor_order: Vec<MorId> = c.morphism_ids().filter(|&f| !c.is_identity(f)).collect();
        mor_order.sort_by_key(|&f| (msc[f].2, (c.src(f), c.dst(f)), f));
        let ctx = Ctx {
            candidates,
            order,
            anchor,
            msc,
            msd,
            mor_order,
        };
        match self.search_objects(&ctx, 0) {
            Some(true) => {
                let f = LpFunctor {
                    objects: self.obj.iter().map(|o| o.unwrap()).collect(),
                    morphisms: self.mor.iter().map(|m| m.unwrap()).collect(),
                };
                debug_assert!(check_isomorphism(&f, c, d).is_ok());
                IsoOutcome::Found(f)
            }
            Some(false) => IsoOutcome::NotIsomorphic,
            None => IsoOutcome::Inconclusive,
        }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.nodes <= self.budget
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                Undo::Obj(x, y) => {
                    self.obj[x] = None;
                    self.obj_inv[y] = None;
                }
                Undo::Mor(f, g) => {
                    self.mor[f] = None;
                    self.mor_inv[g] = None;
                }
            }
        }
    }

    fn assign_obj(&mut self, ctx: &Ctx, x: ObjId, y: ObjId) -> bool {
        let mut queue = VecDeque::from([(x, y)]);
        while let Some((x, y)) = queue.pop_front() {
            match (self.obj[x], self.obj_inv[y]) {
                (Some(a), _) if a == y => continue,
                (Some(_), _) | (None, Some(_)) => return false,
                _ => {}
            }
            if !ctx.candidates[x].contains(&y) {
                return false;
            }
            for x2 in self.c.objects() {
                if let Some(y2) = self.obj[x2] {
                    if self.c.hom(x, x2).len() != self.d.hom(y, y2).len()
                        || self.c.hom(x2, x).len() != self.d.hom(y2, y).len()
                    {
                        return false;
                    }
                }
            }
            self.obj[x] = Some(y);
            self.obj_inv[y] = Some(x);
            self.trail.push(Undo::Obj(x, y));
            if let Some((ac, ad)) = self.actions {
                for g in 0..ac.objects.len() {
                    queue.push_back((ac.objects[g][x], ad.objects[g][y]));
                }
            }
        }
        true
    }

    fn search_objects(&mut self, ctx: &Ctx, k: usize) -> Option<bool> {
        if k == ctx.order.len() {
            let mark = self.trail.len();
            for x in self.c.objects() {
                let (ix, iy) = (self.c.identity(x), self.d.identity(self.obj[x].unwrap()));
                self.mor[ix] = Some(iy);
                self.mor_inv[iy] = Some(ix);
                self.trail.push(Undo::Mor(ix, iy));
            }
            let r = self.search_morphisms(ctx, 0);
            if r != Some(true) {
                self.undo_to(mark);
            }
            return r;
        }
        let x = ctx.order[k];
        if self.obj[x].is_some() {
            return self.search_objects(ctx, k + 1);
        }
        let pool: &[ObjId] = match ctx.anchor[x] {
            Some((a, true)) => self.d.in_neighbours(self.obj[a].unwrap()),
            Some((a, false)) => self.d.out_neighbours(self.obj[a].unwrap()),
            None => &ctx.candidates[x],
        };
        for &y in pool {
            if self.obj_inv[y].is_some() || !ctx.candidates[x].contains(&y) {
                continue;
            }
            if !self.tick() {
                return None;
            }
            let mark = self.trail.len();
            if self.assign_obj(ctx, x, y) {
                match self.search_objects(ctx, k + 1) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
            self.undo_to(mark);
        }
        Some(false)
    }

    fn assign_mor(&mut self, ctx: &Ctx, f: MorId, g: MorId) -> bool {
        let (c, d) = (self.c, self.d);
        let mut queue = VecDeque::from([(f, g)]);
        while let Some((f, g)) = queue.pop_front() {
            match (self.mor[f], self.mor_inv[g]) {
                (Some(a), _) if a == g => continue,
                (Some(_), _) | (None, Some(_)) => return false,
                _ => {}
            }
            if ctx.msc[f] != ctx.msd[g]
                || self.obj[c.src(f)] != Some(d.src(g))
                || self.obj[c.dst(f)] != Some(d.dst(g))
            {
                return false;
            }
            for &f2 in c.hom(c.src(f), c.dst(f)) {
                if let Some(g2) = self.mor[f2] {
                    if c.le(f, f2) != d.le(g, g2) || c.le(f2, f) != d.le(g2, g) {
                        return false;
                    }
                }
            }
            self.mor[f] = Some(g);
            self.mor_inv[g] = Some(f);
            self.trail.push(Undo::Mor(f, g));
            // composites with already-assigned neighbours are forced
            for &z in c.out_neighbours(c.dst(f)) {
                for &h in c.hom(c.dst(f), z) {
                    if let Some(gh) = self.mor[h] {
                        let (Some(hf), Some(ghf)) = (c.compose(f, h), d.compose(g, gh)) else {
                            return false;
                        };
                        queue.push_back((hf, ghf));
                    }
                }
            }
            for &w in c.in_neighbours(c.src(f)) {
                for &h in c.hom(w, c.src(f)) {
                    if let Some(gh) = self.mor[h] {
                        let (Some(fh), Some(gfh)) = (c.compose(h, f), d.compose(gh, g)) else {
                            return false;
                        };
                        queue.push_back((fh, gfh));
                    }
                }
            }
            if let Some((ac, ad)) = self.actions {
                for e in 0..ac.morphisms.len() {
                    queue.push_back((ac.morphisms[e][f], ad.morphisms[e][g]));
                }
            }
        }
        true
    }

    fn search_morphisms(&mut self, ctx: &Ctx, k: usize) -> Option<bool> {
        if k == ctx.mor_order.len() {
            return Some(true);
        }
        let f = ctx.mor_order[k];
        if self.mor[f].is_some() {
            return self.search_morphisms(ctx, k + 1);
        }
        let (c, d) = (self.c, self.d);
        let (x, y) = (self.obj[c.src(f)].unwrap(), self.obj[c.dst(f)].unwrap());
        for &g in d.hom(x, y) {
            if self.mor_inv[g].is_some() {
                continue;
            }
            if !self.tick() {
                return None;
            }
            let mark = self.trail.len();
            if self.assign_mor(ctx, f, g) {
                match self.search_morphisms(ctx, k + 1) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
            self.undo_to(mark);
        }
        Some(false)
    }
}

/// Objects ordered so that each one after the first of its component has an earlier
/// neighbour; components start at their most constrained object.
fn placement_order(c: &LpCategory, candidates: &[Vec<ObjId>]) -> (Vec<ObjId>, Vec<Option<(ObjId, bool)>>) {
    let n = c.n_objects();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut anchor = vec![None; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .filter(|&x| !placed[x])
            .min_by_key(|&x| (usize::MAX - links[x], candidates[x].len(), x))
            .unwrap();
        placed[next] = true;
        order.push(next);
        for &y in c.out_neighbours(next) {
            if !placed[y] {
                links[y] += 1;
                anchor[y].get_or_insert((next, false));
            }
        }
        for &w in c.in_neighbours(next) {
            if !placed[w] {
                links[w] += 1;
                anchor[w].get_or_insert((next, true));
            }
        }
    }
    (order, anchor)
}

struct Ctx {
    candidates: Vec<Vec<ObjId>>,
    order: Vec<ObjId>,
    /// An earlier neighbour of each object, with `true` when the hom runs from the object to it.
    anchor: Vec<Option<(ObjId, bool)>>,
    msc: Vec<(usize, usize, usize, usize)>,
    msd: Vec<(usize, usize, usize, usize)>,
    mor_order: Vec<MorId>,
}

/// Searches for an isomorphism `c -> d`, optionally constrained by a partial object map.
pub fn find_isomorphism(c: &LpCategory, d: &LpCategory, hints: Option<&[Option<ObjId>]>, budget: usize) -> IsoOutcome {
    let mut s = IsoSearch::new(c, d, budget);
    if let Some(h) = hints {
        s = s.with_hints(h);
    }
    s.run()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{face_poset, SimplicialComplex};
    use crate::lp::LpCategoryBuilder;

    #[test]
    fn self_iso() {
        let x = SimplicialComplex::from_maximal(&[vec!["a", "b", "c"], vec!["c", "d"]]).unwrap();
        let c = face_poset(&x);
        let f = find_isomorphism(&c, &c, None, 100_000);
        let f = f.found().expect("iso");
        assert!(check_isomorphism(f, &c, &c).is_ok());
    }

    #[test]
    fn different_sizes() {
        let a = face_poset(&SimplicialComplex::from_maximal(&[vec!["a", "b"]]).unwrap());
        let b = face_poset(&SimplicialComplex::from_maximal(&[vec!["a", "b", "c"]]).unwrap());
        assert_eq!(find_isomorphism(&a, &b, None, 1000), IsoOutcome::NotIsomorphic);
    }

    #[test]
    fn relabelled_complex() {
        let a = face_poset(&SimplicialComplex::from_maximal(&[vec!["a", "b", "c"], vec!["c", "d"]]).unwrap());
        let b = face_poset(&SimplicialComplex::from_maximal(&[vec!["z", "y"], vec!["y", "x", "w"]]).unwrap());
        let f = find_isomorphism(&a, &b, None, 100_000);
        assert!(check_isomorphism(f.found().unwrap(), &a, &b).is_ok());
    }

    #[test]
    fn same_counts_not_isomorphic() {
        // path of 3 edges vs star with 3 edges: same f-vector, different shape
        let a = face_poset(&SimplicialComplex::from_maximal(&[vec!["a", "b"], vec!["b", "c"], vec!["c", "d"]]).unwrap());
        let b = face_poset(&SimplicialComplex::from_maximal(&[vec!["o", "a"], vec!["o", "b"], vec!["o", "c"]]).unwrap());
        assert_eq!(find_isomorphism(&a, &b, None, 100_000), IsoOutcome::NotIsomorphic);
    }

    #[test]
    fn order_must_match() {
        let build = |ordered: bool| {
            let mut b = LpCategoryBuilder::new();
            let x = b.add_object("x");
            let y = b.add_object("y");
            let f = b.add_morphism(x, y, "f");
            let g = b.add_morphism(x, y, "g");
            if ordered {
                b.add_le(f, g);
            }
            b.build().unwrap()
        };
        assert_eq!(find_isomorphism(&build(true), &build(false), None, 1000), IsoOutcome::NotIsomorphic);
        assert!(find_isomorphism(&build(true), &build(true), None, 1000).found().is_some());
    }

    #[test]
    fn budget_exhaustion_is_inconclusive() {
        let x = SimplicialComplex::from_maximal(&[vec!["a", "b", "c", "d"]]).unwrap();
        let c = face_poset(&x);
        assert_eq!(find_isomorphism(&c, &c, None, 2), IsoOutcome::Inconclusive);
    }
}
