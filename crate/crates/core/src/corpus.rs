//! Standard triangulations, symmetric actions, and random inputs.

use std::sync::Arc;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::action::{action_from_vertex_perms, QuotientComplex, QuotientData, SimplicialAction};
use crate::complex::{SimplexId, SimplicialComplex};
use crate::error::{Error, Result};
use crate::group::group_from_generators;
use crate::lp::ObjId;
use crate::morse::{validate_matching, Matching};

/// Complex from maximal simplices and a group generated by vertex maps given on names.
pub fn named_action(maximal: &[Vec<String>], gens: &[(&str, &dyn Fn(&str) -> String)]) -> Result<SimplicialAction> {
    let x = Arc::new(SimplicialComplex::from_maximal(maximal)?);
    let perms = gens
        .iter()
        .map(|(name, f)| {
            let perm = x
                .vertices()
                .iter()
                .map(|v| {
                    let w = f(v);
                    x.vertex_index(&w).ok_or_else(|| Error::InvalidPermutation(format!("{name} sends {v} to unknown vertex {w}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((name.to_string(), perm))
        })
        .collect::<Result<Vec<_>>>()?;
    let g = Arc::new(group_from_generators(x.vertices().len(), &perms)?);
    action_from_vertex_perms(x, g)
}

fn names<const K: usize>(vs: [String; K]) -> Vec<String> {
    vs.to_vec()
}

fn split(v: &str) -> (char, usize) {
    let mut c = v.chars();
    let head = c.next().unwrap();
    (head, c.as_str().parse().unwrap())
}

/// The annulus with its dihedral action of order 8, the matching on its quotient and the
/// lifts used for the worked example.
#[derive(Debug, Clone)]
pub struct AnnulusExample {
    pub action: SimplicialAction,
    /// `(lower, upper)` vertex names on the quotient.
    pub matching: Vec<(Vec<String>, Vec<String>)>,
    /// `(quotient simplex, lifted simplex)` vertex names overriding the default lifts.
    pub lifts: Vec<(Vec<String>, Vec<String>)>,
}

pub fn annulus_d8() -> AnnulusExample {
    let v = |c: char, k: usize| format!("{c}{}", k % 4);
    let mut tri = Vec::new();
    for k in 0..4 {
        tri.push(names([v('a', k), v('b', k), v('d', k)]));
        tri.push(names([v('a', k), v('c', k), v('d', k)]));
        tri.push(names([v('a', k + 1), v('b', k), v('d', k)]));
        tri.push(names([v('a', k + 1), v('c', k + 1), v('d', k)]));
    }
    let r = move |s: &str| {
        let (c, k) = split(s);
        v(c, k + 1)
    };
    let s = move |s: &str| {
        let (c, k) = split(s);
        let shift = if c == 'a' || c == 'c' { 2 } else { 1 };
        v(c, (4 + shift - k) % 4)
    };
    let action = named_action(&tri, &[("r", &r), ("s", &s)]).expect("annulus action");
    let n = |vs: &[&str]| vs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    AnnulusExample {
        action,
        matching: vec![(n(&["a0", "d0"]), n(&["a0", "b0", "d0"]))],
        lifts: vec![
            (n(&["a0", "c0", "d0"]), n(&["a0", "c0", "d0"])),
            (n(&["a0", "b0", "d0"]), n(&["a0", "b0", "d0"])),
            (n(&["a0", "d0"]), n(&["a0", "d0"])),
            (n(&["c0", "d0"]), n(&["c0", "d3"])),
        ],
    }
}

/// Lifts of the face quotient with named overrides; other orbits keep their least member.
pub fn lifts_with_overrides(
    a: &SimplicialAction,
    q: &QuotientComplex,
    qd: &QuotientData,
    overrides: &[(Vec<String>, Vec<String>)],
) -> Result<Vec<ObjId>> {
    let mut lift: Vec<ObjId> = qd.object_orbits.iter().map(|o| *o.iter().min().unwrap()).collect();
    for (y_names, x_names) in overrides {
        let y = q
            .complex
            .find_named(y_names)
            .ok_or_else(|| Error::Invalid(format!("unknown quotient simplex {}", y_names.join(" "))))?;
        let x = a
            .complex
            .find_named(x_names)
            .ok_or_else(|| Error::Invalid(format!("unknown simplex {}", x_names.join(" "))))?;
        lift[y] = x;
    }
    Ok(lift)
}

/// Boundary of the tetrahedron.
pub fn sphere() -> SimplicialComplex {
    let t: Vec<Vec<String>> = (0..4)
        .combinations(3)
        .map(|c| c.iter().map(|i| format!("v{i}")).collect())
        .collect();
    SimplicialComplex::from_maximal(&t).unwrap()
}

/// The seven-vertex torus.
pub fn torus7() -> SimplicialComplex {
    let t: Vec<Vec<String>> = (0..7)
        .flat_map(|i| [[i, i + 1, i + 3], [i, i + 2, i + 3]])
        .map(|tri| tri.iter().map(|j| format!("v{}", j % 7)).collect())
        .collect();
    SimplicialComplex::from_maximal(&t).unwrap()
}

/// The six-vertex projective plane.
pub fn rp2() -> SimplicialComplex {
    let t = [
        [1, 2, 3],
        [1, 3, 4],
        [1, 4, 5],
        [1, 5, 6],
        [1, 6, 2],
        [2, 3, 5],
        [3, 4, 6],
        [4, 5, 2],
        [5, 6, 3],
        [6, 2, 4],
    ];
    let t: Vec<Vec<String>> = t.iter().map(|tri| tri.iter().map(|j| format!("v{j}")).collect()).collect();
    SimplicialComplex::from_maximal(&t).unwrap()
}

fn cycle_edges(prefix: &str, m: usize) -> Vec<Vec<String>> {
    (0..m).map(|i| vec![format!("{prefix}{i}"), format!("{prefix}{}", (i + 1) % m)]).collect()
}

fn index_map(prefix: &'static str, m: usize, f: impl Fn(usize) -> usize + 'static) -> impl Fn(&str) -> String {
    move |v: &str| match v.strip_prefix(prefix) {
        Some(i) => format!("{prefix}{}", f(i.parse().unwrap()) % m),
        None => v.to_string(),
    }
}

/// `Z/n` rotating an `n`-cycle. The quotient is not a simplicial complex.
pub fn cycle_rotation(n: usize) -> SimplicialAction {
    named_action(&cycle_edges("p", n), &[("r", &index_map("p", n, |i| i + 1))]).unwrap()
}

/// The dihedral group of order `2n` on a `2n`-cycle, rotating by two steps.
pub fn dihedral_polygon(n: usize) -> SimplicialAction {
    let m = 2 * n;
    named_action(
        &cycle_edges("p", m),
        &[("r", &index_map("p", m, |i| i + 2)), ("s", &index_map("p", m, move |i| m - i))],
    )
    .unwrap()
}

fn cone(prefix: &str, m: usize) -> Vec<Vec<String>> {
    cycle_edges(prefix, m)
        .into_iter()
        .map(|mut e| {
            e.insert(0, "a".to_string());
            e
        })
        .collect()
}

/// `Z/n` rotating the cone over an `n`-cycle with apex `a`.
pub fn cone_cyclic(n: usize) -> SimplicialAction {
    named_action(&cone("p", n), &[("r", &index_map("p", n, |i| i + 1))]).unwrap()
}

/// The dihedral group of order `2n` on the cone over a `2n`-cycle with apex `a`.
pub fn cone_dihedral(n: usize) -> SimplicialAction {
    let m = 2 * n;
    named_action(
        &cone("p", m),
        &[("r", &index_map("p", m, |i| i + 2)), ("s", &index_map("p", m, move |i| m - i))],
    )
    .unwrap()
}

/// The collapse of the dihedral cone onto its apex, on the quotient triangle `{a, p0, p1}`.
pub fn cone_collapse_matching() -> Vec<(Vec<String>, Vec<String>)> {
    let n = |vs: &[&str]| vs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    vec![
        (n(&["p0", "p1"]), n(&["a", "p0", "p1"])),
        (n(&["p0"]), n(&["a", "p0"])),
        (n(&["p1"]), n(&["a", "p1"])),
    ]
}

/// `Z/2` swapping two disjoint copies of a complex.
pub fn disjoint_swap(x: &SimplicialComplex) -> SimplicialAction {
    let copy = |tag: &str| -> Vec<Vec<String>> {
        x.maximal_simplices()
            .into_iter()
            .map(|s| x.vertex_names(s).iter().map(|v| format!("{tag}{v}")).collect())
            .collect()
    };
    let mut maximal = copy("l_");
    maximal.extend(copy("r_"));
    let swap = |v: &str| match v.strip_prefix("l_") {
        Some(rest) => format!("r_{rest}"),
        None => format!("l_{}", v.strip_prefix("r_").unwrap()),
    };
    named_action(&maximal, &[("t", &swap)]).unwrap()
}

/// Small regular actions built from symmetric seeds, each on at most 25 simplices.
pub fn regular_actions() -> Vec<(String, SimplicialAction)> {
    let mut out = Vec::new();
    for n in 3..=7 {
        out.push((format!("cycle rotation C{n}"), cycle_rotation(n)));
    }
    for n in 2..=5 {
        out.push((format!("dihedral polygon D{n}"), dihedral_polygon(n)));
    }
    for n in 3..=6 {
        out.push((format!("cyclic cone C{n}"), cone_cyclic(n)));
    }
    for n in 2..=3 {
        out.push((format!("dihedral cone D{n}"), cone_dihedral(n)));
    }
    let path = SimplicialComplex::from_maximal(&[vec!["x", "y"], vec!["y", "z"]]).unwrap();
    let tri = SimplicialComplex::from_maximal(&[vec!["x", "y", "z"]]).unwrap();
    let hollow = SimplicialComplex::from_maximal(&[vec!["x", "y"], vec!["y", "z"], vec!["x", "z"]]).unwrap();
    for (name, x) in [("path", &path), ("triangle", &tri), ("hollow triangle", &hollow)] {
        out.push((format!("swap of two {name}s"), disjoint_swap(x)));
        out.push((format!("trivial on {name}"), SimplicialAction::trivial(Arc::new(x.clone()))));
    }
    out.push(("trivial on sphere".into(), SimplicialAction::trivial(Arc::new(sphere()))));
    out.push(("reflected fan".into(), reflected_fan()));
    out
}

/// `Z/2` reflecting the fan of two triangles `o b m`, `o m c`.
pub fn reflected_fan() -> SimplicialAction {
    let maximal = vec![names(["o".into(), "b".into(), "m".into()]), names(["o".into(), "m".into(), "c".into()])];
    let t = |v: &str| match v {
        "b" => "c".to_string(),
        "c" => "b".to_string(),
        other => other.to_string(),
    };
    named_action(&maximal, &[("t", &t)]).unwrap()
}

/// A random complex on `n_vertices` vertices with at most `max_simplices` simplices.
pub fn random_complex<R: Rng>(rng: &mut R, n_vertices: usize, max_simplices: usize) -> SimplicialComplex {
    let mut candidates: Vec<Vec<usize>> = (0..n_vertices).combinations(3).collect();
    candidates.extend((0..n_vertices).combinations(2));
    candidates.shuffle(rng);
    let name = |s: &[usize]| s.iter().map(|i| format!("v{i}")).collect::<Vec<_>>();
    let mut chosen: Vec<Vec<String>> = Vec::new();
    let mut current = SimplicialComplex::from_maximal(&[vec!["v0"]]).unwrap();
    for c in candidates {
        if chosen.len() > 1 && !rng.gen_bool(0.5) {
            continue;
        }
        let mut next = chosen.clone();
        next.push(name(&c));
        let x = SimplicialComplex::from_maximal(&next).unwrap();
        if x.len() <= max_simplices {
            chosen = next;
            current = x;
        }
    }
    current
}

/// A random acyclic matching, grown greedily over shuffled face pairs.
pub fn random_matching<R: Rng>(rng: &mut R, x: &SimplicialComplex) -> Matching {
    let mut candidates: Vec<(SimplexId, SimplexId)> = (0..x.len()).flat_map(|s| x.boundary_faces(s).into_iter().map(move |t| (s, t))).collect();
    candidates.shuffle(rng);
    let mut used = vec![false; x.len()];
    let mut pairs = Vec::new();
    for (s, t) in candidates {
        if used[s] || used[t] {
            continue;
        }
        pairs.push((s, t));
        if validate_matching(x, &Matching::new(pairs.clone())).is_ok() {
            used[s] = true;
            used[t] = true;
        } else {
            pairs.pop();
        }
    }
    Matching::new(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{check_regularity, check_simplicial_quotient};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn standard_counts() {
        assert_eq!(sphere().f_vector(), vec![4, 6, 4]);
        assert_eq!(torus7().f_vector(), vec![7, 21, 14]);
        assert_eq!(rp2().f_vector(), vec![6, 15, 10]);
    }

    #[test]
    fn annulus_is_regular() {
        let ex = annulus_d8();
        assert_eq!(ex.action.group.order(), 8);
        assert_eq!(ex.action.complex.f_vector(), vec![16, 32, 16]);
        assert!(check_regularity(&ex.action).is_ok());
        assert!(check_simplicial_quotient(&ex.action).is_ok());
    }

    #[test]
    fn corpus_actions_are_regular_and_small() {
        let all = regular_actions();
        assert!(all.len() >= 20);
        for (name, a) in &all {
            assert!(a.complex.len() <= 25, "{name}");
            assert!(check_regularity(a).is_ok(), "{name}");
        }
    }

    #[test]
    fn random_inputs_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let x = random_complex(&mut rng, 6, 25);
            assert!(x.len() <= 25);
            let m = random_matching(&mut rng, &x);
            assert!(validate_matching(&x, &m).is_ok());
        }
    }
}
