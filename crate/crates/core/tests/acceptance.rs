use std::collections::HashSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use equimorse::action::{
    choose_lifts_transfers, face_quotient, lp_action_from_simplicial, quotient_lp, LpAction, QuotientData, SimplicialAction,
};
use equimorse::cog::{cog_from_action, validate_cog, validate_cog_morphism, CogMorphismToConstant, ComplexOfGroups};
use equimorse::complex::{face_poset, simplicial_homology_oracle, SimplicialComplex};
use equimorse::corpus::{
    annulus_d8, cone_collapse_matching, cone_cyclic, cone_dihedral, disjoint_swap, dihedral_polygon, random_complex, random_matching,
    reflected_fan, regular_actions, rp2, sphere, torus7,
};
use equimorse::development::develop;
use equimorse::homology::{classifying_homology, HomologyProfile};
use equimorse::lp::{find_isomorphism, geometric_nerve, nerve_iso_check, NerveSimplicialSet, DEFAULT_NERVE_BOUND};
use equimorse::morse::{check_compatibility, flow_category, FlowBudget, Matching};
use equimorse::morse_cog::{equivariant_morse, morse_cog};
use equimorse::pipeline::{run_stages, Budgets, PipelineInput, Status};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= limit, || format!("took {t:?}, limit {limit:?}"))
}

fn lp_setup(a: &SimplicialAction, seed: u64) -> (LpAction, QuotientData, ComplexOfGroups, CogMorphismToConstant, equimorse::action::LiftTransfer) {
    let fa = lp_action_from_simplicial(a).unwrap();
    let qd = quotient_lp(&fa).unwrap();
    let lt = choose_lifts_transfers(&fa, &qd, seed).unwrap();
    let (f, phi) = cog_from_action(&fa, &qd, &lt).unwrap();
    (fa, qd, f, phi, lt)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let ex = annulus_d8();
    let g_order = ex.action.group.order();
    let input = PipelineInput {
        action: ex.action.clone(),
        matching: ex.matching.clone(),
        lifts: ex.lifts.clone(),
    };
    let r = run_stages(&input, 0, &Budgets::default(), false);
    ensure(r.passed(), || format!("pipeline failed at {:?}", r.failed_stage))?;
    let s = &r.summary;
    ensure(s.quotient_f_vector == [4, 5, 2], || format!("quotient f-vector {:?}", s.quotient_f_vector))?;
    ensure(s.matching_pairs == 1, || format!("{} matched pairs", s.matching_pairs))?;
    ensure(r.stage("compatibility").unwrap().status == Status::Pass, || "compatibility".into())?;
    ensure(s.flow_objects_quotient == 9, || format!("{} flow objects", s.flow_objects_quotient))?;
    // Orbit-stabilizer count of the lifted pairs against enumeration.
    let (q, _, _) = face_quotient(&ex.action).unwrap();
    let sigma = Matching::from_names(&q.complex, &ex.matching).unwrap();
    let by_orbits: usize = sigma
        .pairs
        .iter()
        .map(|&(upper, _)| {
            let lift = (0..ex.action.complex.len()).find(|&x| q.project[x] == upper).unwrap();
            g_order / ex.action.stabilizer(lift).order()
        })
        .sum();
    ensure(by_orbits == 8 && s.lifted_pairs == 8, || format!("lifted pairs {} by enumeration, {by_orbits} by orbits", s.lifted_pairs))?;
    ensure(r.stage("equivariant isomorphism").unwrap().status == Status::Pass, || "equivariant isomorphism".into())?;
    let h = s.development_homology.as_ref().unwrap();
    ensure(h.betti_padded(3) == [1, 1, 0] && h.torsion.iter().all(Vec::is_empty), || format!("homology {h:?}"))?;
    let n = |vs: &[&str]| vs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let bad = PipelineInput {
        matching: vec![(n(&["a0", "c0"]), n(&["a0", "c0", "d0"]))],
        ..input
    };
    let rb = run_stages(&bad, 0, &Budgets::default(), false);
    ensure(rb.failed_stage == Some("compatibility"), || format!("mutated matching failed at {:?}", rb.failed_stage))?;
    within(start, Duration::from_secs(30))?;
    Ok(format!("f-vector (4,5,2), 9 critical cells, 8 lifted pairs, betti (1,1,0), in {:?}", start.elapsed()))
}

/// Nerve simplices of a face poset as sets of barycentre names, matched against the
/// barycentric subdivision.
fn nerve_is_subdivision(x: &SimplicialComplex, n: &NerveSimplicialSet) -> Result<(), String> {
    let sd = x.barycentric_subdivision();
    ensure(n.f_vector() == sd.f_vector(), || format!("nerve {:?} vs subdivision {:?}", n.f_vector(), sd.f_vector()))?;
    for d in 0..n.n_dims() {
        let mut seen = HashSet::new();
        for s in n.level(d) {
            let names: Vec<String> = s.objects.iter().map(|&o| x.barycentre_name(o)).collect();
            let hit = sd.find_named(&names).ok_or_else(|| format!("{names:?} is not a simplex of the subdivision"))?;
            ensure(seen.insert(hit), || format!("{names:?} hit twice"))?;
        }
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let actions = regular_actions();
    ensure(actions.len() >= 20, || format!("only {} actions", actions.len()))?;
    for (name, a) in &actions {
        ensure(a.complex.len() <= 25, || format!("{name} has {} simplices", a.complex.len()))?;
        let (fa, _, f, phi, lt) = lp_setup(a, 0);
        let d = develop(&f, &phi).map_err(|e| format!("{name}: {e}"))?;
        let w = d.witness_functor(&fa, &lt.lift, &lt.lifted);
        let nd = geometric_nerve(&d.category, None, DEFAULT_NERVE_BOUND).unwrap();
        let nx = geometric_nerve(&face_poset(&a.complex), None, DEFAULT_NERVE_BOUND).unwrap();
        let r = nerve_iso_check(&w, &nd, &nx);
        ensure(r.is_ok(), || format!("{name}: {r}"))?;
        nerve_is_subdivision(&a.complex, &nx).map_err(|e| format!("{name}: {e}"))?;
        let hd = classifying_homology(&d.category, DEFAULT_NERVE_BOUND).unwrap();
        let hx = simplicial_homology_oracle(&a.complex).unwrap();
        ensure(hd == hx, || format!("{name}: {hd:?} vs {hx:?}"))?;
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{} actions, nerve of D = subdivision, homology equal, in {:?}", actions.len(), start.elapsed()))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut nontrivial = 0;
    let runs = 60;
    for i in 0..runs {
        let x = Arc::new(random_complex(&mut rng, 5 + i % 3, 25));
        ensure(x.len() <= 25, || format!("case {i}: {} simplices", x.len()))?;
        let sigma = random_matching(&mut rng, &x);
        nontrivial += usize::from(!sigma.is_empty());
        let flow = flow_category(x.clone(), &sigma, FlowBudget::default()).map_err(|e| format!("case {i}: {e}"))?;
        let hf = classifying_homology(&flow.category, DEFAULT_NERVE_BOUND).map_err(|e| format!("case {i}: {e}"))?;
        let hx = simplicial_homology_oracle(&x).unwrap();
        ensure(hf == hx, || format!("case {i}: flow {hf:?} vs complex {hx:?}"))?;
    }
    ensure(nontrivial >= 50, || format!("only {nontrivial} nonempty matchings"))?;
    within(start, Duration::from_secs(120))?;
    Ok(format!("{runs} random complexes ({nontrivial} with nonempty matchings), in {:?}", start.elapsed()))
}

fn detected(f: &ComplexOfGroups, phi: &CogMorphismToConstant) -> bool {
    !validate_cog(f).is_ok() || !validate_cog_morphism(phi, f).is_ok()
}

/// Every single-entry change of a twist, transfer or hom table; returns (tried, missed).
fn mutations(f: &ComplexOfGroups, phi: &CogMorphismToConstant) -> (usize, Vec<String>) {
    let g = f.group.clone();
    let mut tried = 0;
    let mut missed = Vec::new();
    for (&key, &t) in &f.pair_twist {
        for e in g.elements().filter(|&e| e != t) {
            let mut m = f.clone();
            m.pair_twist.insert(key, e);
            tried += 1;
            if !detected(&m, phi) {
                missed.push(format!("twist {key:?} -> {}", g.name(e)));
            }
        }
    }
    for k in 0..phi.tau.len() {
        for e in g.elements().filter(|&e| e != phi.tau[k]) {
            let mut p = phi.clone();
            p.tau[k] = e;
            tried += 1;
            if !detected(f, &p) {
                missed.push(format!("tau {k} -> {}", g.name(e)));
            }
        }
    }
    for k in 0..f.homs.len() {
        for i in 0..f.homs[k].map.len() {
            for e in g.elements().filter(|&e| e != f.homs[k].map[i]) {
                let mut m = f.clone();
                m.homs[k].map[i] = e;
                tried += 1;
                if !detected(&m, phi) {
                    missed.push(format!("hom {k}[{i}] -> {}", g.name(e)));
                }
            }
        }
    }
    (tried, missed)
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut cogs = 0;
    for (name, a) in regular_actions() {
        for seed in 0..3 {
            let (_, _, f, phi, _) = lp_setup(&a, seed);
            ensure(validate_cog(&f).is_ok(), || format!("{name} seed {seed}: {}", validate_cog(&f)))?;
            ensure(validate_cog_morphism(&phi, &f).is_ok(), || format!("{name} seed {seed}: morphism"))?;
            cogs += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut compatible, mut tried_matchings) = (0, 0);
    let mut morse_sources: Vec<SimplicialAction> = regular_actions().into_iter().map(|(_, a)| a).collect();
    morse_sources.push(annulus_d8().action);
    for a in &morse_sources {
        let Ok((q, fa, qd)) = face_quotient(a) else { continue };
        let lt = choose_lifts_transfers(&fa, &qd, 0).unwrap();
        let (f, phi) = cog_from_action(&fa, &qd, &lt).unwrap();
        for _ in 0..8 {
            let sigma = random_matching(&mut rng, &q.complex);
            tried_matchings += 1;
            if !check_compatibility(&f, &q.complex, &sigma).is_ok() {
                continue;
            }
            compatible += 1;
            let flow = flow_category(q.complex.clone(), &sigma, FlowBudget::default()).unwrap();
            let (m, psi) = morse_cog(&f, &phi, &flow).map_err(|e| format!("morse complex of groups: {e}"))?;
            ensure(validate_cog(&m).is_ok() && validate_cog_morphism(&psi, &m).is_ok(), || "morse validators".into())?;
        }
    }
    ensure(compatible >= 10, || format!("only {compatible} compatible matchings of {tried_matchings}"))?;
    let instances: Vec<(&str, SimplicialAction)> = vec![
        ("annulus", annulus_d8().action),
        ("cyclic cone C3", cone_cyclic(3)),
        ("cyclic cone C4", cone_cyclic(4)),
        ("cyclic cone C5", cone_cyclic(5)),
        ("dihedral cone D2", cone_dihedral(2)),
        ("dihedral cone D3", cone_dihedral(3)),
        ("reflected fan", reflected_fan()),
        ("swap of triangles", disjoint_swap(&SimplicialComplex::from_maximal(&[vec!["x", "y", "z"]]).unwrap())),
        ("swap of spheres", disjoint_swap(&sphere())),
        ("cone over hexagon, seed 1", cone_cyclic(6)),
    ];
    let mut total = 0;
    for (name, a) in &instances {
        let (_, _, f, phi, _) = lp_setup(a, 1);
        let (tried, missed) = mutations(&f, &phi);
        total += tried;
        ensure(missed.is_empty(), || format!("{name}: {} of {tried} mutations undetected, e.g. {}", missed.len(), missed[0]))?;
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!(
        "{cogs} complexes of groups valid, {compatible} compatible Morse complexes valid, {total} mutations on {} instances all detected",
        instances.len()
    ))
}

fn criterion_5() -> Outcome {
    let actions = [
        ("dihedral polygon D4", dihedral_polygon(4)),
        ("dihedral cone D3", cone_dihedral(3)),
        ("cyclic cone C5", cone_cyclic(5)),
        ("reflected fan", reflected_fan()),
        ("annulus", annulus_d8().action),
    ];
    let mut varied = 0;
    for (name, a) in &actions {
        let setups: Vec<_> = [0, 1, 2].iter().map(|&seed| lp_setup(a, seed)).collect();
        varied += usize::from(setups.iter().any(|s| s.3.tau != setups[0].3.tau));
        let devs: Vec<_> = setups.iter().map(|(_, _, f, phi, _)| develop(f, phi).unwrap().category).collect();
        for i in 0..devs.len() {
            for j in i + 1..devs.len() {
                let out = find_isomorphism(&devs[i], &devs[j], None, 1_000_000);
                ensure(out.found().is_some(), || format!("{name}: seeds {i} and {j} give {}", out.label()))?;
            }
        }
    }
    ensure(varied >= 3, || format!("seeds changed the transfers of only {varied} actions"))?;
    Ok(format!(
        "{} actions x 3 seeds ({varied} with seed-dependent transfers), developments pairwise isomorphic",
        actions.len()
    ))
}

fn criterion_6() -> Outcome {
    let point = HomologyProfile {
        betti: vec![1],
        torsion: vec![vec![]],
    };
    let mut cases = Vec::new();
    for n in 2..=4 {
        let a = cone_dihedral(n);
        let (q, _, _) = face_quotient(&a).unwrap();
        let sigma = Matching::from_names(&q.complex, &cone_collapse_matching()).unwrap();
        let cmp = equivariant_morse(&a, &sigma, 0, FlowBudget::default()).map_err(|e| format!("D{n}: {e}"))?;
        let (m, psi) = &cmp.morse;
        ensure(m.base.n_objects() == 1, || format!("D{n}: {} objects", m.base.n_objects()))?;
        let critical = cmp.flow.flow_x.critical[0];
        let fixed = a.group.elements().all(|g| a.act(g, critical) == critical);
        ensure(a.complex.simplex_dim(critical) == 0 && fixed, || format!("D{n}: critical cell is not a fixed vertex"))?;
        ensure(m.groups[0].order() == a.group.order(), || format!("D{n}: local group of order {}", m.groups[0].order()))?;
        let d = develop(m, psi).unwrap();
        ensure(d.category.n_objects() == 1, || format!("D{n}: development has {} objects", d.category.n_objects()))?;
        let h = classifying_homology(&d.category, DEFAULT_NERVE_BOUND).unwrap();
        ensure(h == point, || format!("D{n}: {h:?}"))?;
        cases.push(format!("D{n}"));
    }
    Ok(format!("cones {} collapse to one object with the full group", cases.join(", ")))
}

fn criterion_7() -> Outcome {
    let cases = [
        ("sphere", sphere(), vec![1, 0, 1], vec![vec![], vec![], vec![]]),
        ("torus", torus7(), vec![1, 2, 1], vec![vec![], vec![], vec![]]),
        ("projective plane", rp2(), vec![1, 0, 0], vec![vec![], vec![2], vec![]]),
    ];
    for (name, x, betti, torsion) in cases {
        let h = simplicial_homology_oracle(&x).unwrap();
        ensure(h.betti_padded(3) == betti, || format!("{name}: betti {:?}", h.betti))?;
        let mut t = h.torsion.clone();
        t.resize(3, vec![]);
        ensure(t == torsion, || format!("{name}: torsion {:?}", h.torsion))?;
        let hn = classifying_homology(&face_poset(&x), DEFAULT_NERVE_BOUND).unwrap();
        ensure(hn == h, || format!("{name}: nerve of the face poset gives {hn:?}"))?;
    }
    Ok("S2 (1,0,1), torus (1,2,1), RP2 (Z, Z/2, 0)".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("1 annulus golden test", criterion_1),
        ("2 developments of actions", criterion_2),
        ("3 flow categories of random matchings", criterion_3),
        ("4 axiom validators and mutations", criterion_4),
        ("5 seed invariance", criterion_5),
        ("6 equivariant collapse", criterion_6),
        ("7 homology kernel", criterion_7),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(msg) => println!("PASS criterion {name}: {msg}"),
            Err(msg) => {
                println!("FAIL criterion {name}: {msg}");
                failed.push(name);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all 7 criteria passed");
}
