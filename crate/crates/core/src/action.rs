//! Group actions on simplicial complexes and on LP-categories.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::{face_poset, SimplexId, SimplicialComplex};
use crate::error::{Error, Result};
use crate::group::{group_from_generators, Elem, FiniteGroup, Subgroup};
use crate::lp::{check_lp_functor, ActionTables, LpCategory, LpCategoryBuilder, LpFunctor, MorId, ObjId};
use crate::report::Report;

/// Action of a permutation group whose points are the vertices of the complex.
#[derive(Debug, Clone)]
pub struct SimplicialAction {
    pub group: Arc<FiniteGroup>,
    pub complex: Arc<SimplicialComplex>,
    table: Vec<Vec<SimplexId>>,
}

pub fn action_from_vertex_perms(x: Arc<SimplicialComplex>, g: Arc<FiniteGroup>) -> Result<SimplicialAction> {
    if g.n_points() != x.vertices().len() {
        return Err(Error::Invalid(format!(
            "group acts on {} points but the complex has {} vertices",
            g.n_points(),
            x.vertices().len()
        )));
    }
    let image = |e: Elem, s: SimplexId| -> Option<SimplexId> {
        let verts: Vec<usize> = x.simplex(s).iter().map(|&v| g.act(e, v)).collect();
        x.find(&verts)
    };
    for (name, e) in g.generators() {
        for s in 0..x.len() {
            if image(*e, s).is_none() {
                return Err(Error::NotSimplicial {
                    generator: name.clone(),
                    simplex: x.format_vertices(x.simplex(s)),
                });
            }
        }
    }
    let table = g
        .elements()
        .map(|e| (0..x.len()).map(|s| image(e, s).expect("closure of simplicial maps")).collect())
        .collect();
    Ok(SimplicialAction { group: g, complex: x, table })
}

impl SimplicialAction {
    pub fn trivial(x: Arc<SimplicialComplex>) -> Self {
        let g = Arc::new(FiniteGroup::trivial(x.vertices().len()));
        action_from_vertex_perms(x, g).expect("trivial action")
    }

    pub fn act(&self, g: Elem, s: SimplexId) -> SimplexId {
        self.table[g][s]
    }

    pub fn table(&self) -> &[Vec<SimplexId>] {
        &self.table
    }

    pub fn stabilizer(&self, s: SimplexId) -> Subgroup {
        Subgroup::from_members(
            self.group.order(),
            self.group.elements().filter(|&g| self.table[g][s] == s).collect(),
        )
    }

    pub fn orbit(&self, s: SimplexId) -> Vec<SimplexId> {
        let mut o: Vec<SimplexId> = self.group.elements().map(|g| self.table[g][s]).collect();
        o.sort_unstable();
        o.dedup();
        o
    }

    /// Least vertex index in the orbit of each vertex.
    pub fn vertex_orbit_rep(&self) -> Vec<usize> {
        (0..self.complex.vertices().len())
            .map(|v| self.group.elements().map(|g| self.group.act(g, v)).min().unwrap())
            .collect()
    }

    /// Same action on the barycentric subdivision.
    pub fn subdivide(&self) -> Result<SimplicialAction> {
        let x = &self.complex;
        let sd = Arc::new(x.barycentric_subdivision());
        let point_of: Vec<usize> = (0..x.len())
            .map(|s| sd.vertex_index(&x.barycentre_name(s)).expect("barycentre"))
            .collect();
        let gens: Vec<(String, Vec<usize>)> = self
            .group
            .generators()
            .iter()
            .map(|(name, e)| {
                let mut perm = vec![0; sd.vertices().len()];
                for s in 0..x.len() {
                    perm[point_of[s]] = point_of[self.table[*e][s]];
                }
                (name.clone(), perm)
            })
            .collect();
        let g = Arc::new(group_from_generators(sd.vertices().len(), &gens)?);
        action_from_vertex_perms(sd, g)
    }
}

/// Both regularity conditions: stabilizers fix vertices, and simplices whose vertices lie in
/// the same vertex orbits form a single simplex orbit.
pub fn check_regularity(a: &SimplicialAction) -> Report {
    let mut r = Report::new();
    let x = &a.complex;
    let g = &a.group;
    for s in 0..x.len() {
        for e in g.elements() {
            if a.act(e, s) == s && x.simplex(s).iter().any(|&v| g.act(e, v) != v) {
                r.push(
                    "stabilizer fixes vertices",
                    format!("{} is stabilized by {} which moves its vertices", x.label(s), g.name(e)),
                );
                break;
            }
        }
    }
    let rep = a.vertex_orbit_rep();
    let mut by_type: BTreeMap<Vec<usize>, Vec<SimplexId>> = BTreeMap::new();
    for s in 0..x.len() {
        let mut key: Vec<usize> = x.simplex(s).iter().map(|&v| rep[v]).collect();
        key.sort_unstable();
        by_type.entry(key).or_default().push(s);
    }
    for members in by_type.values() {
        let orbit = a.orbit(members[0]);
        for &t in &members[1..] {
            if orbit.binary_search(&t).is_err() {
                r.push(
                    "vertex-orbit tuples lie in one orbit",
                    format!("{} and {} have vertices in the same orbits but lie in different simplex orbits", x.label(members[0]), x.label(t)),
                );
                break;
            }
        }
    }
    if !r.is_ok() {
        r.note("the action becomes regular after two barycentric subdivisions (`subdivide`)");
    }
    r
}

/// Whether every simplex has its vertices in pairwise distinct orbits, which makes the
/// quotient a simplicial complex.
pub fn check_simplicial_quotient(a: &SimplicialAction) -> Report {
    let mut r = Report::new();
    let rep = a.vertex_orbit_rep();
    let x = &a.complex;
    for s in x.of_dim(1) {
        let v = x.simplex(*s);
        if rep[v[0]] == rep[v[1]] {
            r.push(
                "simplicial quotient",
                format!("both vertices of {} lie in one orbit", x.label(*s)),
            );
        }
    }
    if !r.is_ok() {
        r.note("subdivide the complex to obtain a simplicial quotient");
    }
    r
}

/// Action of a group on an LP-category, given by explicit tables `[g][x]`.
#[derive(Debug, Clone)]
pub struct LpAction {
    pub category: Arc<LpCategory>,
    pub group: Arc<FiniteGroup>,
    pub objects: Vec<Vec<ObjId>>,
    pub morphisms: Vec<Vec<MorId>>,
}

impl LpAction {
    pub fn act_obj(&self, g: Elem, x: ObjId) -> ObjId {
        self.objects[g][x]
    }

    pub fn act_mor(&self, g: Elem, f: MorId) -> MorId {
        self.morphisms[g][f]
    }

    pub fn tables(&self) -> ActionTables<'_> {
        ActionTables {
            objects: &self.objects,
            morphisms: &self.morphisms,
        }
    }

    pub fn stabilizer(&self, x: ObjId) -> Subgroup {
        Subgroup::from_members(
            self.group.order(),
            self.group.elements().filter(|&g| self.objects[g][x] == x).collect(),
        )
    }

    pub fn morphism_stabilizer(&self, f: MorId) -> Subgroup {
        Subgroup::from_members(
            self.group.order(),
            self.group.elements().filter(|&g| self.morphisms[g][f] == f).collect(),
        )
    }

    pub fn orbit(&self, x: ObjId) -> Vec<ObjId> {
        let mut o: Vec<ObjId> = self.group.elements().map(|g| self.objects[g][x]).collect();
        o.sort_unstable();
        o.dedup();
        o
    }

    pub fn trivial(c: Arc<LpCategory>, group: Arc<FiniteGroup>) -> Self {
        let objects = group.elements().map(|_| c.objects().collect()).collect();
        let morphisms = group.elements().map(|_| c.morphism_ids().collect()).collect();
        LpAction {
            category: c,
            group,
            objects,
            morphisms,
        }
    }
}

/// Induced action on the face poset. Rejects irregular actions.
pub fn lp_action_from_simplicial(a: &SimplicialAction) -> Result<LpAction> {
    check_regularity(a).into_result("regularity")?;
    let c = Arc::new(face_poset(&a.complex));
    Ok(face_poset_action(a, c))
}

pub(crate) fn face_poset_action(a: &SimplicialAction, c: Arc<LpCategory>) -> LpAction {
    let objects: Vec<Vec<ObjId>> = a.table.clone();
    let morphisms = a
        .group
        .elements()
        .map(|g| {
            c.morphism_ids()
                .map(|f| {
                    let (s, t) = (objects[g][c.src(f)], objects[g][c.dst(f)]);
                    c.unique_hom(s, t).expect("face relations are preserved")
                })
                .collect()
        })
        .collect();
    LpAction {
        category: c,
        group: a.group.clone(),
        objects,
        morphisms,
    }
}

/// Functoriality and invertibility per element, the homomorphism property, and both
/// conditions required of an action on an LP-category.
pub fn validate_lp_action(a: &LpAction) -> Report {
    let mut r = Report::new();
    let c = &a.category;
    let g = &a.group;
    if a.objects.len() != g.order() || a.morphisms.len() != g.order() {
        r.push("total", "action tables do not cover the group");
        return r;
    }
    for e in g.elements() {
        let f = LpFunctor {
            objects: a.objects[e].clone(),
            morphisms: a.morphisms[e].clone(),
        };
        let fr = check_lp_functor(&f, c, c);
        if !fr.is_ok() {
            r.push("functorial", format!("element {}: {}", g.name(e), fr.violations[0].witness));
        } else if !f.is_bijective(c) {
            r.push("invertible", format!("element {}", g.name(e)));
        }
    }
    if r.total > 0 {
        return r;
    }
    if a.objects[0].iter().enumerate().any(|(i, &x)| i != x) || a.morphisms[0].iter().enumerate().any(|(i, &x)| i != x) {
        r.push("homomorphism", "identity element acts nontrivially");
    }
    for e in g.elements() {
        for h in g.elements() {
            let eh = g.mul(e, h);
            let obj_ok = c.objects().all(|x| a.objects[eh][x] == a.objects[e][a.objects[h][x]]);
            let mor_ok = c.morphism_ids().all(|f| a.morphisms[eh][f] == a.morphisms[e][a.morphisms[h][f]]);
            if !obj_ok || !mor_ok {
                r.push("homomorphism", format!("({}, {})", g.name(e), g.name(h)));
            }
        }
    }
    for f in c.morphism_ids().filter(|&f| !c.is_identity(f)) {
        let (x, y) = (c.src(f), c.dst(f));
        for e in g.elements() {
            if a.objects[e][x] == y {
                r.push("no element maps source to target", format!("{} maps {}", g.name(e), c.describe(f)));
            }
            if a.objects[e][x] == x && a.morphisms[e][f] != f {
                r.push("source stabilizer fixes morphism", format!("{} fixes the source of {}", g.name(e), c.describe(f)));
            }
        }
    }
    r
}

/// The quotient category with its orbit functor and orbit tables.
#[derive(Debug, Clone)]
pub struct QuotientData {
    pub quotient: Arc<LpCategory>,
    pub orbit_functor: LpFunctor,
    pub object_orbits: Vec<Vec<ObjId>>,
    pub morphism_orbits: Vec<Vec<MorId>>,
    pub stabilizers: Vec<Subgroup>,
}

impl QuotientData {
    pub fn project_obj(&self, x: ObjId) -> ObjId {
        self.orbit_functor.objects[x]
    }

    pub fn project_mor(&self, f: MorId) -> MorId {
        self.orbit_functor.morphisms[f]
    }
}

pub fn quotient_lp(a: &LpAction) -> Result<QuotientData> {
    let c = &a.category;
    let mut key = vec![usize::MAX; c.n_objects()];
    let mut labels = Vec::new();
    for x in c.objects() {
        if key[x] == usize::MAX {
            for y in a.orbit(x) {
                key[y] = labels.len();
            }
            labels.push(c.object_label(x).to_string());
        }
    }
    quotient_lp_labeled(a, &key, labels)
}

/// Quotient whose object `k` is the orbit of the objects `x` with `key[x] == k`.
pub fn quotient_lp_labeled(a: &LpAction, key: &[usize], labels: Vec<String>) -> Result<QuotientData> {
    let c = &a.category;
    let g = &a.group;
    let n_q = labels.len();
    let mut object_orbits: Vec<Vec<ObjId>> = vec![Vec::new(); n_q];
    for x in c.objects() {
        object_orbits[key[x]].push(x);
    }
    for (k, members) in object_orbits.iter().enumerate() {
        if members.is_empty() || a.orbit(members[0]) != *members {
            return Err(Error::verification("quotient", format!("object class {k} is not a single orbit")));
        }
    }
    // morphism orbits, keyed by least member
    let mut mor_class = vec![usize::MAX; c.n_morphisms()];
    let mut reps: Vec<MorId> = Vec::new();
    for f in c.morphism_ids().filter(|&f| !c.is_identity(f)) {
        if mor_class[f] == usize::MAX {
            for e in g.elements() {
                mor_class[a.morphisms[e][f]] = reps.len();
            }
            reps.push(f);
        }
    }
    let mut order: Vec<usize> = (0..reps.len()).collect();
    order.sort_by_key(|&i| (key[c.src(reps[i])], key[c.dst(reps[i])], reps[i]));
    let mut renumber = vec![0; reps.len()];
    for (new, &old) in order.iter().enumerate() {
        renumber[old] = new;
    }
    let mut b = LpCategoryBuilder::new();
    for l in &labels {
        b.add_object(l);
    }
    let mut morphism_orbits: Vec<Vec<MorId>> = vec![Vec::new(); reps.len()];
    for &old in &order {
        let f = reps[old];
        b.add_morphism(key[c.src(f)], key[c.dst(f)], c.morphism(f).label.clone());
    }
    for f in c.morphism_ids().filter(|&f| !c.is_identity(f)) {
        morphism_orbits[renumber[mor_class[f]]].push(f);
    }
    let n_non_id = reps.len();
    let project = |f: MorId| -> MorId {
        if c.is_identity(f) {
            n_non_id + key[c.src(f)]
        } else {
            renumber[mor_class[f]]
        }
    };
    // composition: all composable members must land in one orbit
    let mut comp: HashMap<(MorId, MorId), MorId> = HashMap::new();
    for (f1, f2) in c.composable_pairs() {
        if c.is_identity(f1) || c.is_identity(f2) {
            continue;
        }
        let h = c
            .compose(f1, f2)
            .ok_or_else(|| Error::verification("quotient", format!("missing composite of {} then {}", c.describe(f1), c.describe(f2))))?;
        let k = (project(f1), project(f2));
        match comp.get(&k) {
            Some(&old) if old != project(h) => {
                return Err(Error::verification(
                    "quotient",
                    format!("composites of orbits of {} and {} land in different orbits", c.describe(f1), c.describe(f2)),
                ))
            }
            _ => {
                comp.insert(k, project(h));
            }
        }
    }
    for (&(q1, q2), &q3) in &comp {
        if q3 >= n_non_id {
            return Err(Error::verification("quotient", "a composite of non-identity orbits is an identity"));
        }
        b.set_composite(q1, q2, q3);
    }
    let mut rel: BTreeSet<(MorId, MorId)> = BTreeSet::new();
    for (f, f2) in c.strict_relations() {
        let (p, q) = (project(f), project(f2));
        if p != q {
            rel.insert((p, q));
        }
    }
    for &(p, q) in &rel {
        if rel.contains(&(q, p)) {
            return Err(Error::verification("quotient", format!("orbit order is not antisymmetric at morphism orbits {p} and {q}")));
        }
        for &(q2, s) in rel.range((q, 0)..(q + 1, 0)) {
            debug_assert_eq!(q2, q);
            if s != p && !rel.contains(&(p, s)) {
                return Err(Error::verification("quotient", format!("orbit order is not transitive at {p}, {q}, {s}")));
            }
        }
        b.add_le(p, q);
    }
    let quotient = Arc::new(b.build()?);
    let orbit_functor = LpFunctor {
        objects: key.to_vec(),
        morphisms: c.morphism_ids().map(project).collect(),
    };
    let fr = check_lp_functor(&orbit_functor, c, &quotient);
    fr.into_result("orbit functor")?;
    let stabilizers = c.objects().map(|x| a.stabilizer(x)).collect();
    Ok(QuotientData {
        quotient,
        orbit_functor,
        object_orbits,
        morphism_orbits,
        stabilizers,
    })
}

/// Quotient of a simplicial action as a simplicial complex, with the projection on simplices.
#[derive(Debug, Clone)]
pub struct QuotientComplex {
    pub complex: Arc<SimplicialComplex>,
    pub project: Vec<SimplexId>,
}

/// Quotient complex named by least orbit vertices, together with the face-poset quotient
/// whose object ids coincide with the simplex ids of the quotient complex.
pub fn face_quotient(a: &SimplicialAction) -> Result<(QuotientComplex, LpAction, QuotientData)> {
    check_regularity(a).into_result("regularity")?;
    check_simplicial_quotient(a).into_result("simplicial quotient")?;
    let x = &a.complex;
    let rep = a.vertex_orbit_rep();
    let tuples: Vec<Vec<&str>> = (0..x.len())
        .map(|s| x.simplex(s).iter().map(|&v| x.vertices()[rep[v]].as_str()).collect())
        .collect();
    let y = Arc::new(SimplicialComplex::from_maximal(&tuples)?);
    let project: Vec<SimplexId> = tuples.iter().map(|t| y.find_named(t).expect("projected simplex")).collect();
    let action = face_poset_action(a, Arc::new(face_poset(x)));
    let labels = (0..y.len()).map(|s| y.label(s)).collect();
    let q = quotient_lp_labeled(&action, &project, labels)?;
    // the quotient must be the face poset of Y
    for ((s, t), members) in q.quotient.hom_sets() {
        if s != t && (members.len() != 1 || !y.is_proper_face(t, s)) {
            return Err(Error::verification("quotient", format!("hom({}, {}) does not match the quotient complex", y.label(s), y.label(t))));
        }
    }
    let expected: usize = (0..y.len()).map(|s| y.proper_faces(s).len()).sum();
    if q.quotient.non_identity_count() != expected {
        return Err(Error::verification("quotient", "quotient category is not the face poset of the quotient complex"));
    }
    Ok((QuotientComplex { complex: y, project }, action, q))
}

/// Lift `λ` on quotient objects and transfers `σ` on quotient morphisms, with the lifted
/// morphism `λ(f): λ(y) -> σ(f)^-1 λ(y')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftTransfer {
    pub lift: Vec<ObjId>,
    pub transfer: Vec<Elem>,
    pub lifted: Vec<MorId>,
}

/// Deterministic order on `0..n` scrambled by `seed`; seed 0 is the natural order.
pub fn seeded_rank(n: usize, seed: u64) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    if seed != 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        perm.shuffle(&mut rng);
    }
    let mut rank = vec![0; n];
    for (r, &i) in perm.iter().enumerate() {
        rank[i] = r;
    }
    rank
}

pub fn choose_lifts_transfers(a: &LpAction, q: &QuotientData, seed: u64) -> Result<LiftTransfer> {
    let obj_rank = seeded_rank(a.category.n_objects(), seed);
    let lift: Vec<ObjId> = q
        .object_orbits
        .iter()
        .map(|o| *o.iter().min_by_key(|&&x| obj_rank[x]).unwrap())
        .collect();
    lifts_with_least_transfers(a, q, lift, seed)
}

/// Least valid transfers (under the seeded element order) for a given lift.
pub fn lifts_with_least_transfers(a: &LpAction, q: &QuotientData, lift: Vec<ObjId>, seed: u64) -> Result<LiftTransfer> {
    let c = &a.category;
    let g = &a.group;
    let qc = &q.quotient;
    let elem_rank = seeded_rank(g.order(), seed.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut elems: Vec<Elem> = g.elements().collect();
    elems.sort_by_key(|&e| if e == 0 { 0 } else { elem_rank[e] + 1 });
    for (y, &x) in lift.iter().enumerate() {
        if q.project_obj(x) != y {
            return Err(Error::Invalid(format!("lift of {} is not in its orbit", qc.object_label(y))));
        }
    }
    let mut transfer = vec![0; qc.n_morphisms()];
    let mut lifted = vec![0; qc.n_morphisms()];
    for f in qc.morphism_ids() {
        let (y, y2) = (qc.src(f), qc.dst(f));
        if qc.is_identity(f) {
            lifted[f] = c.identity(lift[y]);
            continue;
        }
        let m = unique_member_from(c, &q.morphism_orbits[f], lift[y])
            .ok_or_else(|| Error::verification("lift", format!("no unique lift of {} from {}", qc.describe(f), c.object_label(lift[y]))))?;
        let t = c.dst(m);
        let s = elems
            .iter()
            .copied()
            .find(|&e| a.objects[e][t] == lift[y2])
            .ok_or_else(|| Error::verification("transfer", format!("no transfer for {}", qc.describe(f))))?;
        transfer[f] = s;
        lifted[f] = m;
    }
    Ok(LiftTransfer { lift, transfer, lifted })
}

fn unique_member_from(c: &LpCategory, orbit: &[MorId], src: ObjId) -> Option<MorId> {
    let mut it = orbit.iter().copied().filter(|&m| c.src(m) == src);
    let first = it.next()?;
    match it.next() {
        None => Some(first),
        Some(_) => None,
    }
}

impl LiftTransfer {
    /// Checks the lift property and the unique-lift property of every transfer.
    pub fn validate(&self, a: &LpAction, q: &QuotientData) -> Report {
        let mut r = Report::new();
        let c = &a.category;
        let g = &a.group;
        let qc = &q.quotient;
        for y in qc.objects() {
            if q.project_obj(self.lift[y]) != y {
                r.push("lift", qc.object_label(y).to_string());
            }
        }
        for f in qc.morphism_ids() {
            let s = self.transfer[f];
            if qc.is_identity(f) {
                if s != 0 {
                    r.push("identity transfer", qc.describe(f));
                }
                continue;
            }
            let target = a.objects[g.inv(s)][self.lift[qc.dst(f)]];
            let candidates: Vec<MorId> = c
                .hom(self.lift[qc.src(f)], target)
                .iter()
                .copied()
                .filter(|&m| q.project_mor(m) == f)
                .collect();
            if candidates != [self.lifted[f]] {
                r.push("unique lift", format!("{} with transfer {}", qc.describe(f), g.name(s)));
            }
        }
        r
    }
}

/// Subcategory of objects and morphisms fixed by every element of `h`.
pub fn fixed_subcategory(a: &LpAction, h: &Subgroup) -> Result<LpCategory> {
    let c = &a.category;
    let fixed_obj: Vec<ObjId> = c.objects().filter(|&x| h.members().iter().all(|&e| a.act_obj(e, x) == x)).collect();
    let mut new_obj = vec![None; c.n_objects()];
    let mut b = LpCategoryBuilder::new();
    for &x in &fixed_obj {
        new_obj[x] = Some(b.add_object(c.object_label(x)));
    }
    let mut new_mor = vec![None; c.n_morphisms()];
    for f in 0..c.non_identity_count() {
        if let (Some(s), Some(t)) = (new_obj[c.src(f)], new_obj[c.dst(f)]) {
            if h.members().iter().all(|&e| a.act_mor(e, f) == f) {
                new_mor[f] = Some(b.add_morphism(s, t, &c.morphism(f).label));
            }
        }
    }
    for (f, g) in c.composable_pairs() {
        if let (Some(nf), Some(ng)) = (new_mor[f], new_mor[g]) {
            let h = new_mor[c.compose(f, g).unwrap()].expect("fixed morphisms compose to fixed morphisms");
            b.set_composite(nf, ng, h);
        }
    }
    for (f, g) in c.strict_relations() {
        if let (Some(nf), Some(ng)) = (new_mor[f], new_mor[g]) {
            b.add_le(nf, ng);
        }
    }
    b.build()
}

/// Subcomplex of simplices fixed by every element of `h`; `None` when it is empty.
pub fn fixed_subcomplex(a: &SimplicialAction, h: &Subgroup) -> Result<Option<SimplicialComplex>> {
    let keep: Vec<SimplexId> = (0..a.complex.len())
        .filter(|&s| h.members().iter().all(|&e| a.act(e, s) == s))
        .collect();
    if keep.is_empty() {
        return Ok(None);
    }
    a.complex.subcomplex(&keep).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::group_from_generators;
    use crate::lp::validate_lp;

    fn edge_swap() -> SimplicialAction {
        let x = Arc::new(SimplicialComplex::from_maximal(&[vec!["a", "b"]]).unwrap());
        let g = Arc::new(group_from_generators(2, &[("t".into(), vec![1, 0])]).unwrap());
        action_from_vertex_perms(x, g).unwrap()
    }

    #[test]
    fn trivial_action_is_regular() {
        let x = Arc::new(SimplicialComplex::from_maximal(&[vec!["a", "b", "c"]]).unwrap());
        let a = SimplicialAction::trivial(x);
        assert!(check_regularity(&a).is_ok());
        let la = lp_action_from_simplicial(&a).unwrap();
        assert!(validate_lp_action(&la).is_ok());
        let q = quotient_lp(&la).unwrap();
        assert_eq!(q.quotient.n_objects(), 7);
        let lt = choose_lifts_transfers(&la, &q, 0).unwrap();
        assert!(lt.transfer.iter().all(|&s| s == 0));
    }

    #[test]
    fn edge_swap_fails_condition_one() {
        let a = edge_swap();
        let r = check_regularity(&a);
        assert!(r.has("stabilizer fixes vertices"));
        assert!(!r.notes.is_empty());
        assert!(lp_action_from_simplicial(&a).is_err());
    }

    #[test]
    fn edge_swap_regular_after_subdivision() {
        let a = edge_swap().subdivide().unwrap();
        assert!(check_regularity(&a).is_ok());
    }

    #[test]
    fn non_simplicial_generator_named() {
        let x = Arc::new(SimplicialComplex::from_maximal(&[vec!["a", "b"], vec!["c"]]).unwrap());
        let g = Arc::new(group_from_generators(3, &[("t".into(), vec![2, 1, 0])]).unwrap());
        let err = action_from_vertex_perms(x, g).unwrap_err();
        assert!(matches!(err, Error::NotSimplicial { .. }), "{err}");
    }

    #[test]
    fn free_swap_of_two_points() {
        let x = Arc::new(SimplicialComplex::from_maximal(&[vec!["a"], vec!["b"]]).unwrap());
        let g = Arc::new(group_from_generators(2, &[("t".into(), vec![1, 0])]).unwrap());
        let a = action_from_vertex_perms(x, g).unwrap();
        let la = lp_action_from_simplicial(&a).unwrap();
        let q = quotient_lp(&la).unwrap();
        assert_eq!(q.quotient.n_objects(), 1);
        assert!(validate_lp(&q.quotient).is_ok());
    }

    #[test]
    fn rotation_of_a_cycle_gives_double_morphism() {
        let x = Arc::new(SimplicialComplex::from_maximal(&[vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]]).unwrap());
        let g = Arc::new(group_from_generators(3, &[("r".into(), vec![1, 2, 0])]).unwrap());
        let a = action_from_vertex_perms(x, g).unwrap();
        assert!(check_regularity(&a).is_ok());
        assert!(!check_simplicial_quotient(&a).is_ok());
        let la = lp_action_from_simplicial(&a).unwrap();
        assert!(validate_lp_action(&la).is_ok());
        let q = quotient_lp(&la).unwrap();
        assert_eq!(q.quotient.n_objects(), 2);
        assert_eq!(q.quotient.non_identity_count(), 2);
        let lt = choose_lifts_transfers(&la, &q, 0).unwrap();
        assert!(lt.validate(&la, &q).is_ok());
    }
}
