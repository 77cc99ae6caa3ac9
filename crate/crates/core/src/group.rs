//! Finite permutation groups stored as multiplication tables.
//!
//! Products follow function composition: `mul(g, h)` applies `h` first and then `g`,
//! so that `act(mul(g, h), p) == act(g, act(h, p))`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub type Elem = usize;

pub const DEFAULT_GROUP_BOUND: usize = 10_000;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    n_points: usize,
    mul: Vec<u32>,
    inv: Vec<Elem>,
    names: Vec<String>,
    perms: Vec<Vec<usize>>,
    generators: Vec<(String, Elem)>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("generators", &self.generators)
            .finish()
    }
}

fn check_perm(n_points: usize, perm: &[usize]) -> Result<()> {
    if perm.len() != n_points {
        return Err(Error::InvalidPermutation(format!(
            "expected {n_points} points, got {}",
            perm.len()
        )));
    }
    let mut seen = vec![false; n_points];
    for &p in perm {
        if p >= n_points || seen[p] {
            return Err(Error::InvalidPermutation(format!("{perm:?} is not a bijection")));
        }
        seen[p] = true;
    }
    Ok(())
}

fn word_name(gen_names: &[String], word: &[(usize, usize)]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    word.iter()
        .map(|&(g, k)| {
            if k == 1 {
                gen_names[g].clone()
            } else {
                format!("{}^{}", gen_names[g], k)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Closure of the generating permutations. Element 0 is the identity and the remaining
/// elements appear in breadth-first insertion order.
pub fn group_from_generators(n_points: usize, gens: &[(String, Vec<usize>)]) -> Result<FiniteGroup> {
    group_from_generators_bounded(n_points, gens, DEFAULT_GROUP_BOUND)
}

pub fn group_from_generators_bounded(
    n_points: usize,
    gens: &[(String, Vec<usize>)],
    bound: usize,
) -> Result<FiniteGroup> {
    for (_, p) in gens {
        check_perm(n_points, p)?;
    }
    let gen_names: Vec<String> = gens.iter().map(|(n, _)| n.clone()).collect();
    let identity: Vec<usize> = (0..n_points).collect();
    let mut perms = vec![identity.clone()];
    let mut words: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    let mut parent: Vec<(usize, Elem)> = vec![(usize::MAX, 0)];
    let mut index: HashMap<Vec<usize>, Elem> = HashMap::from([(identity, 0)]);
    // left[g][a] = index of gens[g] * a
    let mut left: Vec<Vec<Elem>> = vec![Vec::new(); gens.len()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        for (gi, (_, gp)) in gens.iter().enumerate() {
            let prod: Vec<usize> = perms[a].iter().map(|&p| gp[p]).collect();
            let idx = match index.get(&prod) {
                Some(&i) => i,
                None => {
                    let i = perms.len();
                    if i >= bound {
                        return Err(Error::GroupTooLarge { bound });
                    }
                    let mut w = words[a].clone();
                    match w.first_mut() {
                        Some((g, k)) if *g == gi => *k += 1,
                        _ => w.insert(0, (gi, 1)),
                    }
                    words.push(w);
                    parent.push((gi, a));
                    index.insert(prod.clone(), i);
                    perms.push(prod);
                    queue.push_back(i);
                    i
                }
            };
            let row = &mut left[gi];
            if row.len() <= a {
                row.resize(a + 1, usize::MAX);
            }
            row[a] = idx;
        }
    }
    let order = perms.len();
    let mut mul = vec![0u32; order * order];
    for b in 0..order {
        mul[b] = b as u32;
    }
    // parents precede children, so row `a` is complete before row `c = gen * a`
    for c in 1..order {
        let (gi, a) = parent[c];
        for b in 0..order {
            let ab = mul[a * order + b] as usize;
            mul[c * order + b] = left[gi][ab] as u32;
        }
    }
    let mut inv = vec![0; order];
    for a in 0..order {
        for b in 0..order {
            if mul[a * order + b] == 0 {
                inv[a] = b;
                break;
            }
        }
    }
    let names = words.iter().map(|w| word_name(&gen_names, w)).collect();
    let generators = gens
        .iter()
        .map(|(n, p)| (n.clone(), index[p]))
        .collect();
    Ok(FiniteGroup {
        order,
        n_points,
        mul,
        inv,
        names,
        perms,
        generators,
    })
}

impl FiniteGroup {
    pub fn trivial(n_points: usize) -> Self {
        group_from_generators(n_points, &[]).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b] as Elem
    }

    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a]
    }

    /// Product of a sequence, leftmost factor outermost.
    pub fn product(&self, elems: &[Elem]) -> Elem {
        elems.iter().fold(0, |acc, &e| self.mul(acc, e))
    }

    /// `g k g^-1`
    pub fn conj(&self, g: Elem, k: Elem) -> Elem {
        self.mul(self.mul(g, k), self.inv(g))
    }

    pub fn act(&self, g: Elem, point: usize) -> usize {
        self.perms[g][point]
    }

    pub fn perm(&self, g: Elem) -> &[usize] {
        &self.perms[g]
    }

    pub fn name(&self, g: Elem) -> &str {
        &self.names[g]
    }

    pub fn element_by_name(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    pub fn generators(&self) -> &[(String, Elem)] {
        &self.generators
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, g: Elem) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_members(self.order, self.elements().collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_members(self.order, vec![0])
    }

    /// Exhaustive associativity, identity and inverse check.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        for a in self.elements() {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(format!("identity fails on {}", self.name(a)));
            }
            if self.mul(self.inv(a), a) != 0 {
                return Err(format!("inverse fails on {}", self.name(a)));
            }
            for b in self.elements() {
                let ab = self.mul(a, b);
                for c in self.elements() {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!(
                            "associativity fails on ({}, {}, {})",
                            self.name(a),
                            self.name(b),
                            self.name(c)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// All subgroups, found by joining cyclic subgroups until no new subgroup appears.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut found: Vec<Subgroup> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        let mut frontier = Vec::new();
        for g in self.elements() {
            let h = subgroup_generated(self, &[g]);
            if seen.insert(h.members.clone()) {
                frontier.push(h.clone());
                found.push(h);
            }
        }
        let cyclic = found.clone();
        while let Some(h) = frontier.pop() {
            for c in &cyclic {
                let mut gens = h.members.clone();
                gens.extend(&c.members);
                let j = subgroup_generated(self, &gens);
                if seen.insert(j.members.clone()) {
                    frontier.push(j.clone());
                    found.push(j);
                }
            }
        }
        found.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
        found
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<Elem>,
    mask: Vec<bool>,
}

impl Subgroup {
    /// Members need not be sorted; closure is not checked here (see [`Subgroup::check`]).
    pub fn from_members(group_order: usize, mut members: Vec<Elem>) -> Self {
        members.sort_unstable();
        members.dedup();
        let mut mask = vec![false; group_order];
        for &m in &members {
            mask[m] = true;
        }
        Subgroup { members, mask }
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: Elem) -> bool {
        self.mask.get(g).copied().unwrap_or(false)
    }

    pub fn position(&self, g: Elem) -> Option<usize> {
        self.members.binary_search(&g).ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn check(&self, group: &FiniteGroup) -> std::result::Result<(), String> {
        if !self.contains(0) {
            return Err("identity missing".into());
        }
        for &a in &self.members {
            if !self.contains(group.inv(a)) {
                return Err(format!("not closed under inverse at {}", group.name(a)));
            }
            for &b in &self.members {
                if !self.contains(group.mul(a, b)) {
                    return Err(format!(
                        "not closed under product at ({}, {})",
                        group.name(a),
                        group.name(b)
                    ));
                }
            }
        }
        Ok(())
    }

    /// `g H g^-1`
    pub fn conjugate(&self, group: &FiniteGroup, g: Elem) -> Subgroup {
        Subgroup::from_members(
            group.order(),
            self.members.iter().map(|&k| group.conj(g, k)).collect(),
        )
    }

    pub fn display(&self, group: &FiniteGroup) -> String {
        self.members
            .iter()
            .map(|&m| group.name(m))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub fn subgroup_generated(group: &FiniteGroup, elems: &[Elem]) -> Subgroup {
    let mut mask = vec![false; group.order()];
    mask[0] = true;
    let mut members = vec![0];
    let mut i = 0;
    let gens: Vec<Elem> = elems.to_vec();
    while i < members.len() {
        let a = members[i];
        i += 1;
        for &g in &gens {
            let p = group.mul(g, a);
            if !mask[p] {
                mask[p] = true;
                members.push(p);
            }
        }
    }
    Subgroup::from_members(group.order(), members)
}

/// A homomorphism between subgroups of one ambient group, stored as an explicit element map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    pub source: Subgroup,
    pub target: Subgroup,
    /// `map[i]` is the image of `source.members()[i]`.
    pub map: Vec<Elem>,
}

impl GroupHom {
    pub fn identity(h: &Subgroup) -> Self {
        GroupHom {
            source: h.clone(),
            target: h.clone(),
            map: h.members().to_vec(),
        }
    }

    pub fn inclusion(h: &Subgroup, target: &Subgroup) -> Self {
        GroupHom {
            source: h.clone(),
            target: target.clone(),
            map: h.members().to_vec(),
        }
    }

    pub fn apply(&self, k: Elem) -> Option<Elem> {
        self.source.position(k).map(|i| self.map[i])
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        self.source.members().iter().copied().zip(self.map.iter().copied())
    }

    pub fn is_injective(&self) -> bool {
        let mut img = self.map.clone();
        img.sort_unstable();
        img.dedup();
        img.len() == self.map.len()
    }

    pub fn image(&self, group: &FiniteGroup) -> Subgroup {
        Subgroup::from_members(group.order(), self.map.clone())
    }

    pub fn is_surjective(&self) -> bool {
        self.map.iter().all(|&m| self.target.contains(m)) && self.is_injective() && self.map.len() == self.target.order()
    }

    /// Checks that the table is a homomorphism landing in the target.
    pub fn check(&self, group: &FiniteGroup) -> std::result::Result<(), String> {
        if self.map.len() != self.source.order() {
            return Err("map is not total on the source".into());
        }
        for (k, v) in self.pairs() {
            if !self.target.contains(v) {
                return Err(format!("image of {} lies outside the target", group.name(k)));
            }
        }
        for (a, fa) in self.pairs() {
            for (b, fb) in self.pairs() {
                let ab = group.mul(a, b);
                if self.apply(ab) != Some(group.mul(fa, fb)) {
                    return Err(format!(
                        "not multiplicative at ({}, {})",
                        group.name(a),
                        group.name(b)
                    ));
                }
            }
        }
        Ok(())
    }

    /// `other ∘ self`
    pub fn then(&self, other: &GroupHom) -> Option<GroupHom> {
        let map = self
            .map
            .iter()
            .map(|&m| other.apply(m))
            .collect::<Option<Vec<_>>>()?;
        Some(GroupHom {
            source: self.source.clone(),
            target: other.target.clone(),
            map,
        })
    }

    pub fn inverse(&self, group: &FiniteGroup) -> Option<GroupHom> {
        if !self.is_surjective() {
            return None;
        }
        let mut pairs: Vec<(Elem, Elem)> = self.pairs().map(|(a, b)| (b, a)).collect();
        pairs.sort_unstable();
        Some(GroupHom {
            source: Subgroup::from_members(group.order(), pairs.iter().map(|p| p.0).collect()),
            target: self.source.clone(),
            map: pairs.iter().map(|p| p.1).collect(),
        })
    }

    pub fn same_map(&self, other: &GroupHom) -> bool {
        self.source == other.source && self.map == other.map
    }
}

/// Conjugation `k ↦ g k g^-1` from `h` onto `g h g^-1`.
pub fn conjugation_hom(group: &FiniteGroup, g: Elem, h: &Subgroup) -> GroupHom {
    GroupHom {
        source: h.clone(),
        target: h.conjugate(group, g),
        map: h.members().iter().map(|&k| group.conj(g, k)).collect(),
    }
}

/// Left cosets `gH`, each represented by its least element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetSpace {
    pub subgroup: Subgroup,
    pub reps: Vec<Elem>,
    pub class_of: Vec<usize>,
}

pub fn left_cosets(group: &FiniteGroup, h: &Subgroup) -> CosetSpace {
    let mut class_of = vec![usize::MAX; group.order()];
    let mut reps = Vec::new();
    for g in group.elements() {
        if class_of[g] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(g);
        for &k in h.members() {
            class_of[group.mul(g, k)] = c;
        }
    }
    CosetSpace {
        subgroup: h.clone(),
        reps,
        class_of,
    }
}

impl CosetSpace {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn class(&self, g: Elem) -> usize {
        self.class_of[g]
    }

    pub fn rep(&self, c: usize) -> Elem {
        self.reps[c]
    }

    /// Class of `h · rep(c)`.
    pub fn translate(&self, group: &FiniteGroup, h: Elem, c: usize) -> usize {
        self.class_of[group.mul(h, self.reps[c])]
    }
}

/// Parses cycle notation such as `(a0 a1 a2)(b0 b1)` over named points.
pub fn parse_cycles(text: &str, point_index: &HashMap<String, usize>, n_points: usize) -> std::result::Result<Vec<usize>, String> {
    let mut perm: Vec<usize> = (0..n_points).collect();
    let mut touched = vec![false; n_points];
    let mut rest = text.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(format!("expected '(' at '{rest}'"));
        }
        let close = rest.find(')').ok_or_else(|| "unclosed cycle".to_string())?;
        let cycle: Vec<usize> = rest[1..close]
            .split_whitespace()
            .map(|name| {
                point_index
                    .get(name)
                    .copied()
                    .ok_or_else(|| format!("unknown vertex '{name}'"))
            })
            .collect::<std::result::Result<_, _>>()?;
        for (i, &p) in cycle.iter().enumerate() {
            if touched[p] {
                return Err("a vertex appears in two cycles".to_string());
            }
            touched[p] = true;
            perm[p] = cycle[(i + 1) % cycle.len()];
        }
        rest = rest[close + 1..].trim_start();
    }
    Ok(perm)
}

/// Cycle notation for a permutation, using point names; the identity renders as `()`.
pub fn format_cycles(perm: &[usize], names: &[String]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            cycle.push(names[p].as_str());
            p = perm[p];
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d8() -> FiniteGroup {
        // square vertices 0..3 counterclockwise, r rotates, s reflects across the y-axis
        group_from_generators(
            4,
            &[
                ("r".into(), vec![1, 2, 3, 0]),
                ("s".into(), vec![2, 1, 0, 3]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn trivial_group() {
        let g = group_from_generators(3, &[]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.name(0), "e");
    }

    #[test]
    fn klein_four() {
        let g = group_from_generators(
            4,
            &[("a".into(), vec![1, 0, 2, 3]), ("b".into(), vec![0, 1, 3, 2])],
        )
        .unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
    }

    #[test]
    fn dihedral_relations() {
        let g = d8();
        assert_eq!(g.order(), 8);
        g.check_axioms().unwrap();
        let r = g.element_by_name("r").unwrap();
        let s = g.element_by_name("s").unwrap();
        let r3 = g.product(&[r, r, r]);
        assert_eq!(g.mul(r3, s), g.mul(s, r));
        assert_eq!(g.element_order(r), 4);
        assert_eq!(g.element_order(s), 2);
        for e in g.elements() {
            for p in 0..4 {
                for f in g.elements() {
                    assert_eq!(g.act(g.mul(e, f), p), g.act(e, g.act(f, p)));
                }
            }
        }
    }

    #[test]
    fn bound_enforced() {
        let cyc: Vec<usize> = (1..6).chain([0]).collect();
        let err = group_from_generators_bounded(6, &[("c".into(), cyc)], 4).unwrap_err();
        assert!(matches!(err, Error::GroupTooLarge { bound: 4 }));
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(group_from_generators(3, &[("x".into(), vec![0, 0, 1])]).is_err());
    }

    #[test]
    fn generated_subgroups() {
        let g = d8();
        assert_eq!(subgroup_generated(&g, &[]).order(), 1);
        let s = g.element_by_name("s").unwrap();
        assert_eq!(subgroup_generated(&g, &[s]).members(), &[0, s]);
        let r = g.element_by_name("r").unwrap();
        let r2 = g.mul(r, r);
        let h = subgroup_generated(&g, &[r2, s]);
        assert_eq!(h.order(), 4);
        h.check(&g).unwrap();
        // brute force: all products of words in {r2, s} of length <= 4
        let mut brute = std::collections::BTreeSet::from([0]);
        for _ in 0..4 {
            let cur: Vec<_> = brute.iter().copied().collect();
            for a in cur {
                brute.insert(g.mul(r2, a));
                brute.insert(g.mul(s, a));
            }
        }
        assert_eq!(brute.into_iter().collect::<Vec<_>>(), h.members());
    }

    #[test]
    fn cosets() {
        let g = d8();
        assert_eq!(left_cosets(&g, &g.whole()).len(), 1);
        assert_eq!(left_cosets(&g, &g.trivial_subgroup()).len(), 8);
        let s = g.element_by_name("s").unwrap();
        let h = subgroup_generated(&g, &[s]);
        let cs = left_cosets(&g, &h);
        assert_eq!(cs.len(), 4);
        for a in g.elements() {
            for b in g.elements() {
                let same = h.contains(g.mul(g.inv(b), a));
                assert_eq!(cs.class(a) == cs.class(b), same);
            }
            assert!(cs.reps[cs.class(a)] <= a);
        }
    }

    #[test]
    fn conjugation() {
        let g = d8();
        let s = g.element_by_name("s").unwrap();
        let r = g.element_by_name("r").unwrap();
        let h = subgroup_generated(&g, &[s]);
        let c = conjugation_hom(&g, r, &h);
        c.check(&g).unwrap();
        assert!(c.is_injective());
        let expected = g.mul(g.mul(r, s), g.inv(r));
        let mut want = vec![0, expected];
        want.sort_unstable();
        assert_eq!(c.target.members(), want.as_slice());
        let id = conjugation_hom(&g, 0, &h);
        assert!(id.same_map(&GroupHom::identity(&h)));
    }

    #[test]
    fn cycle_notation_round_trip() {
        let names: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let idx: HashMap<String, usize> = names.iter().cloned().enumerate().map(|(i, n)| (n, i)).collect();
        let p = parse_cycles("(a b c)", &idx, 4).unwrap();
        assert_eq!(p, vec![1, 2, 0, 3]);
        assert_eq!(format_cycles(&p, &names), "(a b c)");
        assert!(parse_cycles("(a b)(b c)", &idx, 4).is_err());
        assert!(parse_cycles("(a z)", &idx, 4).is_err());
    }
}
