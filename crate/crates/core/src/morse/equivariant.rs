use std::sync::Arc;

use crate::action::{LpAction, QuotientComplex, SimplicialAction};
use crate::cog::ComplexOfGroups;
use crate::complex::{SimplexId, SimplicialComplex};
use crate::error::{Error, Result};
use crate::lp::{LpCategory, MorId};
use crate::report::Report;

use super::{validate_matching, FlowCategory, Matching, Word};

/// The face-poset morphism `upper -> lower` of a matched pair.
pub fn sigma_morphism(base: &LpCategory, (upper, lower): (SimplexId, SimplexId)) -> Option<MorId> {
    base.unique_hom(upper, lower)
}

/// Both compatibility conditions for a complex of groups over the face poset of `y`, whose
/// object ids are the simplex ids of `y`: every matched morphism maps onto its target group,
/// and triangles ending in or starting with a matched morphism have trivial twist.
pub fn check_compatibility(f: &ComplexOfGroups, y: &SimplicialComplex, sigma: &Matching) -> Report {
    let mut r = Report::new();
    let c = &f.base;
    if c.n_objects() != y.len() {
        r.push("base", "complex of groups is not indexed by the simplices of the matched complex");
        return r;
    }
    for &(u, l) in &sigma.pairs {
        let Some(m) = sigma_morphism(c, (u, l)) else {
            r.push("base", format!("no morphism {} -> {}", y.label(u), y.label(l)));
            continue;
        };
        if !f.homs[m].is_surjective() {
            r.push(
                "isomorphism",
                format!(
                    "F({} > {}) maps a group of order {} into one of order {}",
                    y.label(u),
                    y.label(l),
                    f.groups[u].order(),
                    f.groups[l].order()
                ),
            );
        }
        for w in c.in_neighbours(u).to_vec() {
            if w == u {
                continue;
            }
            for &g in c.hom(w, u) {
                if f.pair_twist.get(&(g, m)) != Some(&0) {
                    r.push(
                        "strict triangle",
                        format!("{} -> {} -> {}", y.label(w), y.label(u), y.label(l)),
                    );
                }
            }
        }
        for &z in c.out_neighbours(l) {
            if z == l {
                continue;
            }
            for &h in c.hom(l, z) {
                if f.pair_twist.get(&(m, h)) != Some(&0) {
                    r.push(
                        "strict triangle",
                        format!("{} -> {} -> {}", y.label(u), y.label(l), y.label(z)),
                    );
                }
            }
        }
    }
    r
}

/// All pairs of `X` lying over pairs of the quotient matching.
pub fn lift_matching(a: &SimplicialAction, q: &QuotientComplex, f: &ComplexOfGroups, sigma: &Matching) -> Result<Matching> {
    check_compatibility(f, &q.complex, sigma)
        .into_result("compatibility")
        .map_err(|e| Error::verification("lifted matching", format!("refusing to lift an incompatible matching (see check_compatibility): {e}")))?;
    let x = &a.complex;
    let wanted: std::collections::HashSet<(SimplexId, SimplexId)> = sigma.pairs.iter().copied().collect();
    let mut pairs = Vec::new();
    for s in 0..x.len() {
        for t in x.boundary_faces(s) {
            if wanted.contains(&(q.project[s], q.project[t])) {
                pairs.push((s, t));
            }
        }
    }
    let lifted = Matching::new(pairs);
    validate_matching(x, &lifted).into_result("lifted matching")?;
    for e in a.group.elements() {
        for &(s, t) in &lifted.pairs {
            if lifted.pairs.binary_search(&(a.act(e, s), a.act(e, t))).is_err() {
                return Err(Error::verification("lifted matching", format!("not invariant under {}", a.group.name(e))));
            }
        }
    }
    let mut image: Vec<(SimplexId, SimplexId)> = lifted.pairs.iter().map(|&(s, t)| (q.project[s], q.project[t])).collect();
    image.sort_unstable();
    image.dedup();
    if image != sigma.pairs {
        return Err(Error::verification("lifted matching", "projection of the lifted matching is not the quotient matching"));
    }
    Ok(lifted)
}

/// The action on the flow category of an invariant matching, acting on words cell by cell.
pub fn induced_flow_action(a: &SimplicialAction, flow: &FlowCategory) -> Result<LpAction> {
    let c = &flow.category;
    let g = &a.group;
    let mut objects = Vec::with_capacity(g.order());
    let mut morphisms = Vec::with_capacity(g.order());
    for e in g.elements() {
        let obj = flow
            .critical
            .iter()
            .map(|&s| {
                flow.object_of[a.act(e, s)]
                    .ok_or_else(|| Error::verification("induced action", format!("{} moves a critical cell to a matched one", g.name(e))))
            })
            .collect::<Result<Vec<_>>>()?;
        let mor = c
            .morphism_ids()
            .map(|m| {
                let w: Word = flow.word(m).map_nodes(|s| a.act(e, s));
                if !w.is_reduced() {
                    return Err(Error::verification("induced action", format!("{} does not preserve reduced words", g.name(e))));
                }
                flow.morphism_of(&w).ok_or_else(|| {
                    Error::verification("induced action", format!("image of {} under {} is not a zigzag", c.describe(m), g.name(e)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        objects.push(obj);
        morphisms.push(mor);
    }
    let action = LpAction {
        category: c.clone(),
        group: Arc::clone(g),
        objects,
        morphisms,
    };
    crate::action::validate_lp_action(&action).into_result("induced action")?;
    Ok(action)
}
