//! The Morse complex of groups over the flow category of a compatible matching, and its
//! comparison with the action on the flow category of the lifted matching.

use std::collections::{BTreeMap, HashMap};

use crate::action::{quotient_lp_labeled, LiftTransfer, LpAction, QuotientComplex, QuotientData, SimplicialAction};
use crate::cog::{cog_from_action, compare_cogs, related_pairs, validate_cog, validate_cog_morphism, CogMorphismToConstant, ComplexOfGroups};
use crate::complex::SimplexId;
use crate::error::{Error, Result};
use crate::group::{Elem, GroupHom};
use crate::lp::{check_isomorphism, check_lp_functor, LpFunctor, MorId};
use crate::morse::{check_compatibility, flow_category, induced_flow_action, lift_matching, sigma_morphism, FlowBudget, FlowCategory, Matching, Word};

/// One step of a word as a face-poset morphism, with `true` for an ascent.
fn word_steps(f: &ComplexOfGroups, w: &Word) -> Result<Vec<(MorId, bool)>> {
    (0..w.steps())
        .map(|i| {
            let (a, b) = (w.nodes[i], w.nodes[i + 1]);
            let (upper, lower) = if w.up[i] { (b, a) } else { (a, b) };
            sigma_morphism(&f.base, (upper, lower))
                .map(|m| (m, w.up[i]))
                .ok_or_else(|| Error::Invalid(format!("no face morphism {upper} -> {lower}")))
        })
        .collect()
}

/// `τ(ζ)`: product of the step transfers, inverted on ascents, later steps on the left.
pub fn word_transfer(f: &ComplexOfGroups, phi: &CogMorphismToConstant, w: &Word) -> Result<Elem> {
    let g = &f.group;
    Ok(word_steps(f, w)?.into_iter().fold(g.identity(), |acc, (m, up)| {
        let t = if up { g.inv(phi.tau[m]) } else { phi.tau[m] };
        g.mul(t, acc)
    }))
}

/// `M(ζ)`: composite of the step homomorphisms, inverted on ascents.
fn word_hom(f: &ComplexOfGroups, w: &Word) -> Result<GroupHom> {
    let g = &f.group;
    let mut h = GroupHom::identity(&f.groups[w.src()]);
    for (m, up) in word_steps(f, w)? {
        let step = if up {
            f.homs[m]
                .inverse(g)
                .filter(|inv| inv.source == f.groups[f.base.dst(m)])
                .ok_or_else(|| Error::verification("Morse complex", format!("F of a matched morphism at {} is not invertible", f.base.describe(m))))?
        } else {
            f.homs[m].clone()
        };
        h = h.then(&step).ok_or_else(|| Error::verification("Morse complex", "step homomorphisms do not compose"))?;
    }
    Ok(h)
}

/// The Morse complex of groups `M` over `Flo_Σ(Y)` with its morphism `Ψ` to the constant
/// complex. The base of `f` must be the face poset of the matched complex.
pub fn morse_cog(f: &ComplexOfGroups, phi: &CogMorphismToConstant, flow: &FlowCategory) -> Result<(ComplexOfGroups, CogMorphismToConstant)> {
    check_compatibility(f, &flow.complex, &flow.matching).into_result("compatibility")?;
    let g = &f.group;
    let c = flow.category.clone();
    let cell = |y: usize| flow.critical[y];
    let groups: Vec<_> = c.objects().map(|y| f.groups[cell(y)].clone()).collect();
    let mut homs = Vec::with_capacity(c.n_morphisms());
    let mut tau = Vec::with_capacity(c.n_morphisms());
    for m in c.morphism_ids() {
        let w = flow.word(m);
        homs.push(word_hom(f, w)?);
        tau.push(word_transfer(f, phi, w)?);
    }
    let back: Vec<HashMap<Elem, Elem>> = c
        .objects()
        .map(|y| phi.phi[cell(y)].pairs().map(|(k, v)| (v, k)).collect())
        .collect();
    let pull = |y: usize, t: Elem, what: &dyn Fn() -> String| {
        back[y]
            .get(&t)
            .copied()
            .ok_or_else(|| Error::verification("Morse complex", format!("{} is not in the image of Φ at {}", what(), c.object_label(y))))
    };
    let mut order_twist = BTreeMap::new();
    for (a, b) in related_pairs(&c) {
        let t = g.mul(tau[a], g.inv(tau[b]));
        order_twist.insert((a, b), pull(c.dst(a), t, &|| format!("order twist {} => {}", c.describe(a), c.describe(b)))?);
    }
    let mut pair_twist = BTreeMap::new();
    for (a, b) in c.composable_pairs() {
        let h = c.compose(a, b).expect("composite");
        let t = g.product(&[tau[b], tau[a], g.inv(tau[h])]);
        pair_twist.insert((a, b), pull(c.dst(b), t, &|| format!("twist of {} then {}", c.describe(a), c.describe(b)))?);
    }
    let m = ComplexOfGroups {
        base: c.clone(),
        group: g.clone(),
        groups,
        homs,
        order_twist,
        pair_twist,
    };
    let psi = CogMorphismToConstant {
        phi: c.objects().map(|y| phi.phi[cell(y)].clone()).collect(),
        tau,
    };
    validate_cog(&m).into_result("Morse complex of groups")?;
    validate_cog_morphism(&psi, &m).into_result("Morse morphism to constant complex")?;
    Ok((m, psi))
}

/// The flow category of the lifted matching, its induced action, and the isomorphism
/// `E: Flo(X)/G -> Flo(Y)` obtained by projecting words.
#[derive(Debug, Clone)]
pub struct FlowQuotient {
    pub lifted: Matching,
    pub flow_x: FlowCategory,
    pub action: LpAction,
    /// Quotient with objects numbered as the objects of `Flo(Y)`.
    pub quotient: QuotientData,
    pub e: LpFunctor,
    /// The projection functor `Flo(X) -> Flo(Y)`.
    pub projection: LpFunctor,
}

pub fn quotient_flow_iso(
    a: &SimplicialAction,
    q: &QuotientComplex,
    f: &ComplexOfGroups,
    flow_y: &FlowCategory,
    budget: FlowBudget,
) -> Result<FlowQuotient> {
    let lifted = lift_matching(a, q, f, &flow_y.matching)?;
    let flow_x = flow_category(a.complex.clone(), &lifted, budget)?;
    let action = induced_flow_action(a, &flow_x)?;
    let key = flow_x
        .critical
        .iter()
        .map(|&s| {
            flow_y.object_of[q.project[s]]
                .ok_or_else(|| Error::verification("flow quotient", format!("critical {} lies over a matched cell", a.complex.label(s))))
        })
        .collect::<Result<Vec<_>>>()?;
    let cy = &flow_y.category;
    let labels = cy.objects().map(|y| cy.object_label(y).to_string()).collect();
    let quotient = quotient_lp_labeled(&action, &key, labels)?;
    let qc = &quotient.quotient;
    let morphisms = qc
        .morphism_ids()
        .map(|m| {
            if qc.is_identity(m) {
                return Ok(cy.identity(qc.src(m)));
            }
            let w = flow_x.word(quotient.morphism_orbits[m][0]).map_nodes(|s| q.project[s]);
            flow_y
                .morphism_of(&w)
                .filter(|_| w.is_reduced())
                .ok_or_else(|| Error::verification("flow quotient", format!("{} projects to no zigzag of the quotient", qc.describe(m))))
        })
        .collect::<Result<Vec<_>>>()?;
    let e = LpFunctor {
        objects: qc.objects().collect(),
        morphisms,
    };
    check_isomorphism(&e, qc, cy).into_result("Flo(X)/G = Flo(Y)")?;
    let projection = quotient.orbit_functor.then(&e);
    check_lp_functor(&projection, &flow_x.category, cy).into_result("projection functor")?;
    Ok(FlowQuotient {
        lifted,
        flow_x,
        action,
        quotient,
        e,
        projection,
    })
}

/// The lift of a zigzag of `Y` starting at the lift of its source: faces are the unique faces
/// over the next cell, ascents follow the lifted matching.
pub fn lift_word(a: &SimplicialAction, q: &QuotientComplex, lifted: &Matching, start: SimplexId, w: &Word) -> Result<Word> {
    let x = &a.complex;
    let up = lifted.up_table(x.len());
    let mut nodes = vec![start];
    for i in 0..w.steps() {
        let cur = *nodes.last().unwrap();
        let next = if w.up[i] {
            up[cur].filter(|&u| q.project[u] == w.nodes[i + 1])
        } else {
            let faces: Vec<SimplexId> = x.proper_faces(cur).into_iter().filter(|&t| q.project[t] == w.nodes[i + 1]).collect();
            (faces.len() == 1).then(|| faces[0])
        };
        nodes.push(next.ok_or_else(|| Error::verification("lift word", format!("step {i} of {} has no unique lift", w.label(&q.complex))))?);
    }
    Ok(Word { nodes, up: w.up.clone() })
}

/// Everything needed to compare `(M, Ψ)` with the complex of groups of the action on
/// `Flo(X)`.
#[derive(Debug, Clone)]
pub struct MorseComparison {
    pub flow: FlowQuotient,
    pub lifts: LiftTransfer,
    pub morse: (ComplexOfGroups, CogMorphismToConstant),
    pub from_action: (ComplexOfGroups, CogMorphismToConstant),
}

/// Lifts `μ(y) = λ(y)`, lifted words as lifted morphisms, and `τ(Eζ)` as transfers; verifies
/// them and checks that the resulting complex of groups equals `(M, Ψ)` through `E`.
pub fn commuting_lifts(
    a: &SimplicialAction,
    q: &QuotientComplex,
    face_lifts: &LiftTransfer,
    f: &ComplexOfGroups,
    phi: &CogMorphismToConstant,
    flow_y: &FlowCategory,
    budget: FlowBudget,
) -> Result<MorseComparison> {
    let morse = morse_cog(f, phi, flow_y)?;
    let flow = quotient_flow_iso(a, q, f, flow_y, budget)?;
    compare_with_flow_action(a, q, face_lifts, flow_y, morse, flow)
}

/// The comparison step of [`commuting_lifts`] for an already built `(M, Ψ)` and `E`.
pub fn compare_with_flow_action(
    a: &SimplicialAction,
    q: &QuotientComplex,
    face_lifts: &LiftTransfer,
    flow_y: &FlowCategory,
    morse: (ComplexOfGroups, CogMorphismToConstant),
    flow: FlowQuotient,
) -> Result<MorseComparison> {
    let cy = &flow_y.category;
    let qc = &flow.quotient.quotient;
    let fx = &flow.flow_x;
    let lift: Vec<_> = cy
        .objects()
        .map(|y| {
            fx.object_of[face_lifts.lift[flow_y.critical[y]]]
                .ok_or_else(|| Error::verification("commuting lifts", format!("lift of {} is not critical", cy.object_label(y))))
        })
        .collect::<Result<_>>()?;
    let mut transfer = vec![0; qc.n_morphisms()];
    let mut lifted = vec![0; qc.n_morphisms()];
    for m in qc.morphism_ids() {
        let ym = flow.e.morphisms[m];
        transfer[m] = morse.1.tau[ym];
        lifted[m] = if qc.is_identity(m) {
            fx.category.identity(lift[qc.src(m)])
        } else {
            let w = lift_word(a, q, &flow.lifted, fx.critical[lift[qc.src(m)]], flow_y.word(ym))?;
            fx.morphism_of(&w)
                .ok_or_else(|| Error::verification("commuting lifts", format!("lift of {} is not a zigzag", cy.describe(ym))))?
        };
    }
    let lifts = LiftTransfer { lift, transfer, lifted };
    lifts.validate(&flow.action, &flow.quotient).into_result("commuting lifts")?;
    let from_action = cog_from_action(&flow.action, &flow.quotient, &lifts)?;
    let inv = flow.e.inverse();
    compare_cogs((&morse.0, &morse.1), (&from_action.0, &from_action.1), &inv).into_result("Morse complex of groups")?;
    Ok(MorseComparison {
        flow,
        lifts,
        morse,
        from_action,
    })
}

/// Runs the comparison starting from an action: face quotient, lifts with the given seed,
/// and the matching on the quotient.
pub fn equivariant_morse(a: &SimplicialAction, sigma: &Matching, seed: u64, budget: FlowBudget) -> Result<MorseComparison> {
    let (q, fa, qd) = crate::action::face_quotient(a)?;
    let lt = crate::action::choose_lifts_transfers(&fa, &qd, seed)?;
    let (f, phi) = cog_from_action(&fa, &qd, &lt)?;
    let flow_y = flow_category(q.complex.clone(), sigma, budget)?;
    commuting_lifts(a, &q, &lt, &f, &phi, &flow_y, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    use crate::action::action_from_vertex_perms;
    use crate::complex::SimplicialComplex;
    use crate::group::group_from_generators;

    fn reflected_cone() -> SimplicialAction {
        let x = Arc::new(SimplicialComplex::from_maximal(&[vec!["o", "b", "m"], vec!["o", "m", "c"]]).unwrap());
        let perm: Vec<usize> = ["c", "b", "m", "o"].iter().map(|n| x.vertex_index(n).unwrap()).collect();
        let g = Arc::new(group_from_generators(4, &[("t".into(), perm)]).unwrap());
        action_from_vertex_perms(x, g).unwrap()
    }

    #[test]
    fn empty_matching_on_quotient() {
        let a = reflected_cone();
        let out = equivariant_morse(&a, &Matching::empty(), 0, FlowBudget::default()).unwrap();
        assert_eq!(out.flow.flow_x.category.n_objects(), 11);
        assert!(out.morse.0.pair_twist.values().all(|&t| t == 0));
    }

    #[test]
    fn collapse_onto_apex() {
        let a = reflected_cone();
        let (q, _, _) = crate::action::face_quotient(&a).unwrap();
        let y = &q.complex;
        let sigma = Matching::from_names(
            y,
            &[(vec!["b"], vec!["b", "o"]), (vec!["m"], vec!["m", "o"]), (vec!["b", "m"], vec!["b", "m", "o"])],
        )
        .unwrap();
        let out = equivariant_morse(&a, &sigma, 0, FlowBudget::default()).unwrap();
        assert_eq!(out.flow.flow_x.category.n_objects(), 1);
        assert_eq!(out.flow.lifted.len(), 5);
        assert_eq!(out.morse.0.groups[0].order(), 2);
    }

    #[test]
    fn seeds_give_valid_comparisons() {
        let a = reflected_cone();
        let (q, _, _) = crate::action::face_quotient(&a).unwrap();
        let sigma = Matching::from_names(&q.complex, &[(vec!["b"], vec!["b", "m"])]).unwrap();
        for seed in 0..4 {
            equivariant_morse(&a, &sigma, seed, FlowBudget::default()).unwrap();
        }
    }
}
