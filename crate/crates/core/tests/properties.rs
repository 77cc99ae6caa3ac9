use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use equimorse::complex::{face_poset, simplicial_homology_oracle, SimplicialComplex};
use equimorse::corpus::{random_complex, random_matching};
use equimorse::group::group_from_generators;
use equimorse::homology::{classifying_chains, homology, normalized_chains, smith_normal_form, IntMatrix};
use equimorse::io::{dump_category, load_category};
use equimorse::lp::{geometric_nerve, DEFAULT_NERVE_BOUND};
use equimorse::morse::{flow_category, validate_matching, FlowBudget};

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn random_x(seed: u64) -> SimplicialComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_complex(&mut rng, 4 + (seed % 3) as usize, 20)
}

/// A unimodular matrix as a product of elementary row operations.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for &(i, j, k) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        for c in 0..n {
            let v = m.get(i, c) + k * m.get(j, c);
            m.set(i, c, v);
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orbit_times_stabilizer_is_group_order(a in permutation(5), b in permutation(5)) {
        let g = group_from_generators(5, &[("a".into(), a), ("b".into(), b)]).unwrap();
        prop_assert!(g.check_axioms().is_ok());
        for p in 0..5 {
            let orbit: BTreeSet<usize> = g.elements().map(|e| g.act(e, p)).collect();
            let stab = g.elements().filter(|&e| g.act(e, p) == p).count();
            prop_assert_eq!(orbit.len() * stab, g.order());
        }
    }

    #[test]
    fn invariant_factors_survive_unimodular_change(
        rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 4), 3),
        left in prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..6),
        right in prop::collection::vec((0usize..4, 0usize..4, -2i64..=2), 0..6),
    ) {
        let m = IntMatrix::from_rows(&rows);
        let p = unimodular(3, &left);
        let q = unimodular(4, &right);
        let moved = p.mul(&m).unwrap().mul(&q).unwrap();
        let a = smith_normal_form(&m).unwrap();
        let b = smith_normal_form(&moved).unwrap();
        prop_assert_eq!(a.factors, b.factors);
        prop_assert_eq!(a.rank, b.rank);
    }

    #[test]
    fn face_poset_nerve_homology_is_simplicial_homology(seed in any::<u64>()) {
        let x = random_x(seed);
        let n = geometric_nerve(&face_poset(&x), None, DEFAULT_NERVE_BOUND).unwrap();
        prop_assert_eq!(n.f_vector(), x.barycentric_subdivision().f_vector());
        let h = homology(&normalized_chains(&n)).unwrap();
        prop_assert_eq!(h, simplicial_homology_oracle(&x).unwrap());
    }

    #[test]
    fn double_nerve_is_geometric_nerve_on_discrete_homs(seed in any::<u64>()) {
        let x = random_x(seed);
        let c = face_poset(&x);
        let n = geometric_nerve(&c, None, DEFAULT_NERVE_BOUND).unwrap();
        let geometric = normalized_chains(&n);
        let bar = classifying_chains(&c, DEFAULT_NERVE_BOUND).unwrap();
        prop_assert_eq!(&geometric.dims, &bar.dims);
        prop_assert_eq!(homology(&geometric).unwrap(), homology(&bar).unwrap());
    }

    #[test]
    fn euler_characteristic_from_ranks_and_betti(seed in any::<u64>()) {
        let x = random_x(seed);
        let h = simplicial_homology_oracle(&x).unwrap();
        prop_assert_eq!(x.chain_complex().euler_characteristic(), h.euler_characteristic());
        prop_assert_eq!(x.euler_characteristic(), h.euler_characteristic());
    }

    #[test]
    fn category_dump_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = Arc::new(random_complex(&mut rng, 5, 18));
        let sigma = random_matching(&mut rng, &x);
        prop_assert!(validate_matching(&x, &sigma).is_ok());
        let flow = flow_category(x, &sigma, FlowBudget::default()).unwrap();
        let text = dump_category(&flow.category);
        let back = load_category(&text).unwrap();
        prop_assert_eq!(dump_category(&back), text);
    }
}
