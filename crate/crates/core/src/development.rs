//! The basic construction: developments of complexes of groups with a morphism to a
//! constant complex, and equivariant isomorphism certificates.

use std::collections::HashMap;
use std::sync::Arc;

use crate::action::{quotient_lp_labeled, validate_lp_action, LiftTransfer, LpAction, QuotientData};
use crate::cog::{cog_from_action, compare_cogs, validate_cog, validate_cog_morphism, CogMorphismToConstant, ComplexOfGroups};
use crate::error::{Error, Result};
use crate::group::{left_cosets, CosetSpace, FiniteGroup, Subgroup};
use crate::lp::{check_isomorphism, validate_lp, IsoOutcome, IsoSearch, LpCategory, LpCategoryBuilder, LpFunctor, MorId, ObjId};
use crate::report::Report;

/// The development `D(F, Φ)` with its group action.
#[derive(Debug, Clone)]
pub struct Development {
    pub category: Arc<LpCategory>,
    pub action: LpAction,
    /// Left cosets of `Φ_x(F(x))` per base object.
    pub cosets: Vec<CosetSpace>,
    /// Object `(x, c)` at `objects_of[x][c]`.
    pub objects_of: Vec<Vec<ObjId>>,
    /// Base object and coset of each object.
    pub object_key: Vec<(ObjId, usize)>,
    /// Base morphism and source coset of each morphism.
    pub morphism_key: Vec<(MorId, usize)>,
    /// Morphism `(f, c)` for non-identity base morphisms.
    pub morphism_of: HashMap<(MorId, usize), MorId>,
    /// Quotient by the action, with objects numbered as the base.
    pub quotient: QuotientData,
}

impl Development {
    pub fn base_object(&self, o: ObjId) -> ObjId {
        self.object_key[o].0
    }

    /// Object `(x, c_x(g))`.
    pub fn object_at(&self, x: ObjId, g: usize) -> ObjId {
        self.objects_of[x][self.cosets[x].class(g)]
    }
}

fn coset_label(g: &FiniteGroup, base: &LpCategory, x: ObjId, rep: usize) -> String {
    format!("({}|{})", base.object_label(x), g.name(rep))
}

/// Builds `D(F, Φ)` and re-verifies well-definedness, closure of composition, the action
/// axioms, the quotient `D/G ≅ base`, and that the canonical lifts reproduce `(F, Φ)`.
pub fn develop(f: &ComplexOfGroups, phi: &CogMorphismToConstant) -> Result<Development> {
    validate_cog(f).into_result("complex of groups")?;
    validate_cog_morphism(phi, f).into_result("morphism to constant complex")?;
    let base = &f.base;
    let g = &f.group;
    let images: Vec<Subgroup> = phi.phi.iter().map(|p| p.image(g)).collect();
    let cosets: Vec<CosetSpace> = images.iter().map(|h| left_cosets(g, h)).collect();
    let tau = &phi.tau;

    let mut b = LpCategoryBuilder::new();
    let mut objects_of = Vec::new();
    let mut object_key = Vec::new();
    for x in base.objects() {
        let ids: Vec<ObjId> = (0..cosets[x].len())
            .map(|c| {
                object_key.push((x, c));
                b.add_object(coset_label(g, base, x, cosets[x].rep(c)))
            })
            .collect();
        objects_of.push(ids);
    }
    // target coset of (f, c): c_y(g τ(f)^-1), checked for every representative
    let target_class = |m: MorId, c: usize| -> usize {
        let y = base.dst(m);
        cosets[y].class(g.mul(cosets[base.src(m)].rep(c), g.inv(tau[m])))
    };
    for m in base.morphism_ids() {
        let (x, y) = (base.src(m), base.dst(m));
        for e in g.elements() {
            let expected = target_class(m, cosets[x].class(e));
            if cosets[y].class(g.mul(e, g.inv(tau[m]))) != expected {
                return Err(Error::verification(
                    "development",
                    format!("target coset of ({}, {}) depends on the representative", base.describe(m), g.name(e)),
                ));
            }
        }
    }
    let mut morphism_key = Vec::new();
    let mut morphism_of = HashMap::new();
    for m in 0..base.non_identity_count() {
        let (x, y) = (base.src(m), base.dst(m));
        for c in 0..cosets[x].len() {
            let id = b.add_morphism(objects_of[x][c], objects_of[y][target_class(m, c)], base.morphism(m).label.clone());
            morphism_key.push((m, c));
            morphism_of.insert((m, c), id);
        }
    }
    for x in base.objects() {
        for c in 0..cosets[x].len() {
            morphism_key.push((base.identity(x), c));
        }
    }
    for (f1, f2) in base.composable_pairs() {
        if base.is_identity(f1) || base.is_identity(f2) {
            continue;
        }
        let h = base.compose(f1, f2).unwrap();
        for c1 in 0..cosets[base.src(f1)].len() {
            let c2 = target_class(f1, c1);
            if target_class(f2, c2) != target_class(h, c1) {
                return Err(Error::verification(
                    "development",
                    format!("composite of {} and {} leaves its coset", base.describe(f1), base.describe(f2)),
                ));
            }
            b.set_composite(morphism_of[&(f1, c1)], morphism_of[&(f2, c2)], morphism_of[&(h, c1)]);
        }
    }
    for (f1, f2) in base.strict_relations() {
        let y = base.dst(f1);
        let t = g.mul(tau[f1], g.inv(tau[f2]));
        for c in 0..cosets[base.src(f1)].len() {
            let same_target = target_class(f1, c) == target_class(f2, c);
            if same_target != images[y].contains(t) {
                return Err(Error::verification("development", "order criterion disagrees with coset targets"));
            }
            if same_target {
                b.add_le(morphism_of[&(f1, c)], morphism_of[&(f2, c)]);
            }
        }
    }
    let category = Arc::new(b.build()?);
    validate_lp(&category).into_result("development")?;

    let translate = |x: ObjId, e: usize, c: usize| cosets[x].translate(g, e, c);
    let objects: Vec<Vec<ObjId>> = g
        .elements()
        .map(|e| object_key.iter().map(|&(x, c)| objects_of[x][translate(x, e, c)]).collect())
        .collect();
    let morphisms: Vec<Vec<MorId>> = g
        .elements()
        .map(|e| {
            morphism_key
                .iter()
                .map(|&(m, c)| {
                    let x = base.src(m);
                    let c2 = translate(x, e, c);
                    if base.is_identity(m) {
                        category.identity(objects_of[x][c2])
                    } else {
                        morphism_of[&(m, c2)]
                    }
                })
                .collect()
        })
        .collect();
    let action = LpAction {
        category: category.clone(),
        group: g.clone(),
        objects,
        morphisms,
    };
    validate_lp_action(&action).into_result("development action")?;

    let key: Vec<ObjId> = object_key.iter().map(|&(x, _)| x).collect();
    let labels = base.objects().map(|x| base.object_label(x).to_string()).collect();
    let quotient = quotient_lp_labeled(&action, &key, labels)?;
    let dev = Development {
        category,
        action,
        cosets,
        objects_of,
        object_key,
        morphism_key,
        morphism_of,
        quotient,
    };
    let to_base = dev.quotient_to_base(base);
    check_isomorphism(&to_base, &dev.quotient.quotient, base).into_result("quotient of development")?;
    dev.check_reproduces(f, phi, &to_base)?;
    Ok(dev)
}

impl Development {
    /// Sends each orbit of `(f, c)` to `f`.
    fn quotient_to_base(&self, base: &LpCategory) -> LpFunctor {
        let q = &self.quotient.quotient;
        let morphisms = q
            .morphism_ids()
            .map(|m| {
                if q.is_identity(m) {
                    base.identity(q.src(m))
                } else {
                    self.morphism_key[self.quotient.morphism_orbits[m][0]].0
                }
            })
            .collect();
        LpFunctor {
            objects: base.objects().collect(),
            morphisms,
        }
    }

    /// Lifts `x ↦ (x, c_x(1))` with transfers `τ(f)` give back `(F, Φ)` through `Φ`.
    fn check_reproduces(&self, f: &ComplexOfGroups, phi: &CogMorphismToConstant, to_base: &LpFunctor) -> Result<()> {
        let base = &f.base;
        let q = &self.quotient;
        let lift: Vec<ObjId> = base.objects().map(|x| self.object_at(x, 0)).collect();
        let from_base = to_base.inverse();
        let qc = &q.quotient;
        let mut transfer = vec![0; qc.n_morphisms()];
        let mut lifted = vec![0; qc.n_morphisms()];
        for m in base.morphism_ids() {
            let qm = from_base.morphisms[m];
            transfer[qm] = phi.tau[m];
            lifted[qm] = if base.is_identity(m) {
                self.category.identity(lift[base.src(m)])
            } else {
                self.morphism_of[&(m, self.cosets[base.src(m)].class(0))]
            };
        }
        let lt = LiftTransfer { lift, transfer, lifted };
        lt.validate(&self.action, q).into_result("canonical lifts of development")?;
        let (f2, phi2) = cog_from_action(&self.action, q, &lt)?;
        compare_cogs((f, phi), (&f2, &phi2), &from_base).into_result("development reproduces (F, Φ)")
    }

    /// The map `(x, c(g)) ↦ g·λ(x)`, `(f, c(g)) ↦ g·λ(f)` into an acted-on category.
    pub fn witness_functor(&self, a: &LpAction, lift: &[ObjId], lifted: &[MorId]) -> LpFunctor {
        let objects = self
            .object_key
            .iter()
            .map(|&(x, c)| a.act_obj(self.cosets[x].rep(c), lift[x]))
            .collect();
        let morphisms = self
            .morphism_key
            .iter()
            .enumerate()
            .map(|(id, &(m, c))| {
                let x = self.object_key[self.category.src(id)].0;
                let rep = self.cosets[x].rep(c);
                if self.category.is_identity(id) {
                    a.category.identity(a.act_obj(rep, lift[x]))
                } else {
                    a.act_mor(rep, lifted[m])
                }
            })
            .collect();
        LpFunctor { objects, morphisms }
    }
}

fn same_group(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    a.order() == b.order() && a.elements().all(|x| a.elements().all(|y| a.mul(x, y) == b.mul(x, y)))
}

/// Whether `f` commutes with both actions.
pub fn is_equivariant(f: &LpFunctor, on_c: &LpAction, on_d: &LpAction) -> Report {
    let mut r = Report::new();
    for e in on_c.group.elements() {
        let c = &on_c.category;
        if c.objects().any(|x| f.objects[on_c.act_obj(e, x)] != on_d.act_obj(e, f.objects[x]))
            || c.morphism_ids().any(|m| f.morphisms[on_c.act_mor(e, m)] != on_d.act_mor(e, f.morphisms[m]))
        {
            r.push("equivariant", format!("fails for {}", on_c.group.name(e)));
        }
    }
    r
}

/// Equivariant isomorphism between two acted-on categories: the witness first, then search.
pub fn check_equivariant_iso(on_c: &LpAction, on_d: &LpAction, witness: Option<&LpFunctor>, budget: usize) -> Result<IsoOutcome> {
    if !same_group(&on_c.group, &on_d.group) {
        return Err(Error::Invalid("actions of different groups cannot be compared".into()));
    }
    let (c, d) = (&on_c.category, &on_d.category);
    if let Some(w) = witness {
        if check_isomorphism(w, c, d).is_ok() && is_equivariant(w, on_c, on_d).is_ok() {
            return Ok(IsoOutcome::Found(w.clone()));
        }
    }
    let outcome = IsoSearch::new(c, d, budget).equivariant(on_c.tables(), on_d.tables()).run();
    if let IsoOutcome::Found(f) = &outcome {
        check_isomorphism(f, c, d).into_result("equivariant isomorphism")?;
        is_equivariant(f, on_c, on_d).into_result("equivariant isomorphism")?;
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{action_from_vertex_perms, choose_lifts_transfers, lp_action_from_simplicial, quotient_lp};
    use crate::cog::constant_cog;
    use crate::complex::{face_poset, SimplicialComplex};
    use crate::group::group_from_generators;

    fn z2() -> Arc<FiniteGroup> {
        Arc::new(group_from_generators(2, &[("t".into(), vec![1, 0])]).unwrap())
    }

    #[test]
    fn constant_development_is_base() {
        let x = SimplicialComplex::from_maximal(&[vec!["a", "b"]]).unwrap();
        let c = Arc::new(face_poset(&x));
        let (f, phi) = constant_cog(c.clone(), z2());
        let d = develop(&f, &phi).unwrap();
        assert_eq!(d.category.n_objects(), 3);
        assert!(find_iso(&d.category, &c));
    }

    fn find_iso(a: &LpCategory, b: &LpCategory) -> bool {
        crate::lp::find_isomorphism(a, b, None, 100_000).found().is_some()
    }

    #[test]
    fn trivial_cog_gives_copies() {
        let x = SimplicialComplex::from_maximal(&[vec!["a", "b"]]).unwrap();
        let c = Arc::new(face_poset(&x));
        let g = z2();
        let (mut f, mut phi) = constant_cog(c.clone(), g.clone());
        let triv = g.trivial_subgroup();
        for h in f.homs.iter_mut() {
            *h = crate::group::GroupHom::identity(&triv);
        }
        f.groups = vec![triv.clone(); c.n_objects()];
        phi.phi = vec![crate::group::GroupHom::inclusion(&triv, &g.whole()); c.n_objects()];
        let d = develop(&f, &phi).unwrap();
        assert_eq!(d.category.n_objects(), 6);
        assert_eq!(d.category.non_identity_count(), 4);
    }

    #[test]
    fn action_development_matches_face_poset() {
        let x = Arc::new(SimplicialComplex::from_maximal(&[vec!["o", "b", "m"], vec!["o", "m", "c"]]).unwrap());
        let perm: Vec<usize> = ["c", "b", "m", "o"].iter().map(|n| x.vertex_index(n).unwrap()).collect();
        let g = Arc::new(group_from_generators(4, &[("t".into(), perm)]).unwrap());
        let a = lp_action_from_simplicial(&action_from_vertex_perms(x, g).unwrap()).unwrap();
        let q = quotient_lp(&a).unwrap();
        let lt = choose_lifts_transfers(&a, &q, 0).unwrap();
        let (f, phi) = cog_from_action(&a, &q, &lt).unwrap();
        let d = develop(&f, &phi).unwrap();
        assert_eq!(d.category.n_objects(), a.category.n_objects());
        let w = d.witness_functor(&a, &lt.lift, &lt.lifted);
        let out = check_equivariant_iso(&d.action, &a, Some(&w), 10_000).unwrap();
        assert_eq!(out, IsoOutcome::Found(w));
    }
}
