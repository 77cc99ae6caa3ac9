//! Complexes of groups over LP-categories and morphisms into constant complexes.
//!
//! All local groups are subgroups of one ambient finite group, so homomorphisms and
//! twisting elements are plain element tables.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::action::{LiftTransfer, LpAction, QuotientData};
use crate::error::Result;
use crate::group::{Elem, FiniteGroup, GroupHom, Subgroup};
use crate::lp::{LpCategory, LpFunctor, MorId};
use crate::report::Report;

#[derive(Debug, Clone)]
pub struct ComplexOfGroups {
    pub base: Arc<LpCategory>,
    pub group: Arc<FiniteGroup>,
    /// `F(x)` per object.
    pub groups: Vec<Subgroup>,
    /// `F(f)` per morphism.
    pub homs: Vec<GroupHom>,
    /// Element `t` with `F(f)(k) = t F(f')(k) t^-1`, for every related pair `f ⇒ f'`.
    pub order_twist: BTreeMap<(MorId, MorId), Elem>,
    /// `γ(f1, f2)` for every composable pair, identities included.
    pub pair_twist: BTreeMap<(MorId, MorId), Elem>,
}

/// Morphism from a complex of groups into the constant complex on its ambient group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CogMorphismToConstant {
    /// `Φ_x: F(x) -> G` per object.
    pub phi: Vec<GroupHom>,
    /// `τ(f)` per morphism.
    pub tau: Vec<Elem>,
}

impl ComplexOfGroups {
    pub fn twist(&self, f1: MorId, f2: MorId) -> Elem {
        self.pair_twist[&(f1, f2)]
    }

    pub fn is_trivial(&self) -> bool {
        self.groups.iter().all(|g| g.order() == 1)
    }
}

/// The constant complex with group `G` everywhere, and the identity morphism into it.
pub fn constant_cog(c: Arc<LpCategory>, g: Arc<FiniteGroup>) -> (ComplexOfGroups, CogMorphismToConstant) {
    let whole = g.whole();
    let homs = c.morphism_ids().map(|_| GroupHom::identity(&whole)).collect();
    let order_twist = related_pairs(&c).into_iter().map(|p| (p, 0)).collect();
    let pair_twist = c.composable_pairs().into_iter().map(|p| (p, 0)).collect();
    let phi = c.objects().map(|_| GroupHom::identity(&whole)).collect();
    let tau = vec![0; c.n_morphisms()];
    let groups = vec![whole; c.n_objects()];
    (
        ComplexOfGroups {
            base: c,
            group: g,
            groups,
            homs,
            order_twist,
            pair_twist,
        },
        CogMorphismToConstant { phi, tau },
    )
}

pub(crate) fn related_pairs(c: &LpCategory) -> Vec<(MorId, MorId)> {
    let mut out = Vec::new();
    for (_, members) in c.hom_sets() {
        for &f in members {
            for &f2 in members {
                if c.le(f, f2) {
                    out.push((f, f2));
                }
            }
        }
    }
    out
}

fn conj_hom(g: &FiniteGroup, s: Elem, source: &Subgroup, target: &Subgroup) -> GroupHom {
    GroupHom {
        source: source.clone(),
        target: target.clone(),
        map: source.members().iter().map(|&k| g.conj(s, k)).collect(),
    }
}

/// Complex of groups of an action together with its canonical morphism to the constant
/// complex: stabilizers of lifts, conjugation by transfers, and products of transfers as
/// twisting elements.
pub fn cog_from_action(a: &LpAction, q: &QuotientData, lt: &LiftTransfer) -> Result<(ComplexOfGroups, CogMorphismToConstant)> {
    lt.validate(a, q).into_result("lifts and transfers")?;
    let g = &a.group;
    let base = q.quotient.clone();
    let groups: Vec<Subgroup> = lt.lift.iter().map(|&x| a.stabilizer(x)).collect();
    let s = &lt.transfer;
    let homs = base
        .morphism_ids()
        .map(|f| conj_hom(g, s[f], &groups[base.src(f)], &groups[base.dst(f)]))
        .collect();
    let order_twist = related_pairs(&base)
        .into_iter()
        .map(|(f, f2)| ((f, f2), g.mul(s[f], g.inv(s[f2]))))
        .collect();
    let pair_twist = base
        .composable_pairs()
        .into_iter()
        .map(|(f1, f2)| {
            let h = base.compose(f1, f2).expect("composite");
            ((f1, f2), g.product(&[s[f2], s[f1], g.inv(s[h])]))
        })
        .collect();
    let whole = g.whole();
    let phi = groups.iter().map(|h| GroupHom::inclusion(h, &whole)).collect();
    Ok((
        ComplexOfGroups {
            base,
            group: g.clone(),
            groups,
            homs,
            order_twist,
            pair_twist,
        },
        CogMorphismToConstant { phi, tau: s.clone() },
    ))
}

/// Checks injectivity of every `F(f)`, the order-twist functor laws, unit twists, the
/// conjugation law of `γ`, and the cocycle condition.
pub fn validate_cog(f: &ComplexOfGroups) -> Report {
    let mut r = Report::new();
    let c = &f.base;
    let g = &f.group;
    if f.groups.len() != c.n_objects() || f.homs.len() != c.n_morphisms() {
        r.push("shape", "group or hom table has the wrong length");
        return r;
    }
    for (x, h) in f.groups.iter().enumerate() {
        if let Err(e) = h.check(g) {
            r.push("subgroup", format!("F({}): {e}", c.object_label(x)));
        }
    }
    let mut homs_ok = true;
    for m in c.morphism_ids() {
        let h = &f.homs[m];
        if h.source != f.groups[c.src(m)] || h.target != f.groups[c.dst(m)] {
            r.push("hom endpoints", c.describe(m));
            homs_ok = false;
        } else if let Err(e) = h.check(g) {
            r.push("homomorphism", format!("F({}): {e}", c.describe(m)));
            homs_ok = false;
        } else if !h.is_injective() {
            r.push("injective", format!("F({})", c.describe(m)));
        }
        if c.is_identity(m) && h.map != h.source.members() {
            r.push("identity hom", format!("F({}) is not the identity", c.describe(m)));
        }
    }
    // order twists
    for (_, members) in c.hom_sets() {
        for &a in members {
            for &b in members {
                let t = f.order_twist.get(&(a, b));
                if !c.le(a, b) {
                    if t.is_some() {
                        r.push("order twist", format!("twist on unrelated pair {} , {}", c.describe(a), c.describe(b)));
                    }
                    continue;
                }
                let Some(&t) = t else {
                    r.push("order twist", format!("missing twist for {} => {}", c.describe(a), c.describe(b)));
                    continue;
                };
                let target = &f.groups[c.dst(a)];
                if !target.contains(t) {
                    r.push("order twist in target", format!("{} => {}", c.describe(a), c.describe(b)));
                }
                if homs_ok {
                    for (k, fa) in f.homs[a].pairs() {
                        let fb = f.homs[b].apply(k).unwrap();
                        if fa != g.conj(t, fb) {
                            r.push("order twist conjugates", format!("{} => {} at {}", c.describe(a), c.describe(b), g.name(k)));
                            break;
                        }
                    }
                }
                for &d in members {
                    if c.le(b, d) {
                        if let Some(&t2) = f.order_twist.get(&(b, d)) {
                            if f.order_twist.get(&(a, d)) != Some(&g.mul(t, t2)) {
                                r.push(
                                    "order twist composition",
                                    format!("{} => {} => {}", c.describe(a), c.describe(b), c.describe(d)),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    // pair twists
    let pairs = c.composable_pairs();
    for &(f1, f2) in &pairs {
        let Some(&t) = f.pair_twist.get(&(f1, f2)) else {
            r.push("pair twist", format!("missing twist for ({}, {})", c.describe(f1), c.describe(f2)));
            continue;
        };
        if (c.is_identity(f1) || c.is_identity(f2)) && t != 0 {
            r.push("unit twist", format!("({}, {})", c.describe(f1), c.describe(f2)));
        }
        let h = c.compose(f1, f2).unwrap();
        if !f.groups[c.dst(f2)].contains(t) {
            r.push("pair twist in target", format!("({}, {})", c.describe(f1), c.describe(f2)));
        }
        if homs_ok {
            for (k, a1) in f.homs[f1].pairs() {
                let lhs = f.homs[f2].apply(a1).unwrap();
                let rhs = g.conj(t, f.homs[h].apply(k).unwrap());
                if lhs != rhs {
                    r.push("pair twist conjugates", format!("({}, {}) at {}", c.describe(f1), c.describe(f2), g.name(k)));
                    break;
                }
            }
        }
    }
    if f.pair_twist.len() != pairs.len() {
        r.push("pair twist", "twists recorded for non-composable pairs");
    }
    if !homs_ok {
        return r;
    }
    // cocycle: γ(f2,f3)·γ(f1,f3∘f2) = F(f3)(γ(f1,f2))·γ(f2∘f1,f3)
    for &(f1, f2) in &pairs {
        let f21 = c.compose(f1, f2).unwrap();
        for f3 in c.morphisms_from(c.dst(f2)) {
            let f32 = c.compose(f2, f3).unwrap();
            let (Some(&a), Some(&b), Some(&d), Some(&e)) = (
                f.pair_twist.get(&(f2, f3)),
                f.pair_twist.get(&(f1, f32)),
                f.pair_twist.get(&(f1, f2)),
                f.pair_twist.get(&(f21, f3)),
            ) else {
                continue;
            };
            let Some(fd) = f.homs[f3].apply(d) else {
                continue;
            };
            if g.mul(a, b) != g.mul(fd, e) {
                r.push(
                    "cocycle",
                    format!("({}, {}, {})", c.describe(f1), c.describe(f2), c.describe(f3)),
                );
            }
        }
    }
    r
}

/// Checks `τ(id) = 1`, injectivity of each `Φ_x`, the twisting law
/// `τ(f) Φ_x(k) τ(f)^-1 = Φ_y(F(f)(k))`, and `Φ_z(γ(f1,f2)) τ(f2∘f1) = τ(f2) τ(f1)`.
pub fn validate_cog_morphism(phi: &CogMorphismToConstant, f: &ComplexOfGroups) -> Report {
    let mut r = Report::new();
    let c = &f.base;
    let g = &f.group;
    if phi.phi.len() != c.n_objects() || phi.tau.len() != c.n_morphisms() {
        r.push("shape", "phi or tau table has the wrong length");
        return r;
    }
    for x in c.objects() {
        let p = &phi.phi[x];
        if p.source != f.groups[x] {
            r.push("phi source", c.object_label(x).to_string());
            continue;
        }
        if let Err(e) = p.check(g) {
            r.push("phi homomorphism", format!("{}: {e}", c.object_label(x)));
        } else if !p.is_injective() {
            r.push("phi injective", c.object_label(x).to_string());
        }
    }
    for m in c.morphism_ids() {
        let t = phi.tau[m];
        if t >= g.order() {
            r.push("tau", format!("{} is not a group element", c.describe(m)));
            return r;
        }
        if c.is_identity(m) && t != 0 {
            r.push("tau identity", c.describe(m));
        }
        let (px, py) = (&phi.phi[c.src(m)], &phi.phi[c.dst(m)]);
        for (k, fk) in f.homs[m].pairs() {
            let lhs = px.apply(k).map(|v| g.conj(t, v));
            let rhs = py.apply(fk);
            if lhs.is_none() || lhs != rhs {
                r.push("twisting law", format!("{} at {}", c.describe(m), g.name(k)));
                break;
            }
        }
    }
    for (f1, f2) in c.composable_pairs() {
        let h = c.compose(f1, f2).unwrap();
        let Some(&gam) = f.pair_twist.get(&(f1, f2)) else {
            continue;
        };
        let lhs = phi.phi[c.dst(f2)].apply(gam).map(|v| g.mul(v, phi.tau[h]));
        if lhs != Some(g.mul(phi.tau[f2], phi.tau[f1])) {
            r.push("coherence", format!("({}, {})", c.describe(f1), c.describe(f2)));
        }
    }
    r
}

/// Whether `(F, Φ)` over `C` and `(F', Φ')` over `C'` agree through the base isomorphism
/// `e: C -> C'` once everything is pushed into the ambient group.
pub fn compare_cogs(
    (f, phi): (&ComplexOfGroups, &CogMorphismToConstant),
    (f2, phi2): (&ComplexOfGroups, &CogMorphismToConstant),
    e: &LpFunctor,
) -> Report {
    let mut r = Report::new();
    let base = &f.base;
    let g = &f.group;
    if f2.group.order() != g.order() {
        r.push("group", "different ambient groups");
        return r;
    }
    let back: Vec<HashMap<Elem, Elem>> = phi2.phi.iter().map(|p| p.pairs().map(|(k, v)| (v, k)).collect()).collect();
    for x in base.objects() {
        if phi.phi[x].image(g) != phi2.phi[e.objects[x]].image(g) {
            r.push("local group", base.object_label(x).to_string());
        }
    }
    if !r.is_ok() {
        return r;
    }
    for m in base.morphism_ids() {
        let em = e.morphisms[m];
        if phi.tau[m] != phi2.tau[em] {
            r.push("transfer", base.describe(m));
        }
        let (px, py) = (&phi.phi[base.src(m)], &phi.phi[base.dst(m)]);
        let (qx, qy) = (&back[e.objects[base.src(m)]], &phi2.phi[e.objects[base.dst(m)]]);
        for (k, fk) in f.homs[m].pairs() {
            let k2 = qx[&px.apply(k).unwrap()];
            if f2.homs[em].apply(k2).and_then(|v| qy.apply(v)) != py.apply(fk) {
                r.push("homomorphism", base.describe(m));
                break;
            }
        }
    }
    let pushed = |twists: &BTreeMap<(MorId, MorId), Elem>, p: &CogMorphismToConstant, c: &LpCategory, end: fn(&LpCategory, MorId, MorId) -> usize| {
        twists
            .iter()
            .map(|(&(a, b), &t)| ((a, b), p.phi[end(c, a, b)].apply(t)))
            .collect::<BTreeMap<_, _>>()
    };
    let pair_end: fn(&LpCategory, MorId, MorId) -> usize = |c, _, b| c.dst(b);
    let order_end: fn(&LpCategory, MorId, MorId) -> usize = |c, a, _| c.dst(a);
    for (name, ours, theirs) in [
        ("pair twist", pushed(&f.pair_twist, phi, base, pair_end), pushed(&f2.pair_twist, phi2, &f2.base, pair_end)),
        ("order twist", pushed(&f.order_twist, phi, base, order_end), pushed(&f2.order_twist, phi2, &f2.base, order_end)),
    ] {
        if ours.len() != theirs.len() {
            r.push(name, "different number of twisting elements");
            continue;
        }
        for (&(a, b), t) in &ours {
            if theirs.get(&(e.morphisms[a], e.morphisms[b])) != Some(t) {
                r.push(name, format!("({}, {})", base.describe(a), base.describe(b)));
            }
        }
    }
    r
}
