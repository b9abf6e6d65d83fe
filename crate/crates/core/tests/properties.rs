use kxcount::graphs::{bouquet, deck_group_order, from_tuple, minimize, to_tuple, validate, AdequateGraph, Edge, Vertex};
use kxcount::group::{fixed_class_count, irr_orbit_distribution, twisted_orbit_count};
use kxcount::psh::{norm_squared, product_tuple};
use kxcount::selftest::random_group_with_automorphism;
use kxcount::symchar::{kronecker, partitions, Partition};
use kxcount::{Limits, Perm, PermTuple};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lim() -> Limits {
    Limits::default()
}

fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Perm::new(v).unwrap())
}

fn arb_tuple(max_m: usize, max_n: usize) -> impl Strategy<Value = PermTuple> {
    (1..=max_m, 1..=max_n).prop_flat_map(|(m, n)| {
        proptest::collection::vec(arb_perm(n), m).prop_map(|ps| PermTuple::new(ps).unwrap())
    })
}

fn transitive_tuple(max_m: usize, max_n: usize) -> impl Strategy<Value = PermTuple> {
    arb_tuple(max_m, max_n).prop_filter("transitive", |t| t.is_transitive())
}

/// A color-2 vertex threaded into one loop of a bouquet: still irreducible, same rank.
fn two_vertex_base(m: usize) -> AdequateGraph {
    let mut edges = vec![Edge { src: 0, dst: 1, out_color: 1, in_color: 1 }];
    for i in 1..m {
        edges.push(Edge { src: 0, dst: 0, out_color: i + 1, in_color: i });
    }
    edges.push(Edge { src: 1, dst: 0, out_color: 1, in_color: m });
    AdequateGraph {
        signature: vec![(m, m), (1, 1)],
        vertices: vec![Vertex { id: 0, color: 1 }, Vertex { id: 1, color: 2 }],
        edges,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn round_trip_preserves_conjugacy_class(t in arb_tuple(3, 6), two in any::<bool>()) {
        let base = if two { two_vertex_base(t.rank()) } else { bouquet(t.rank()) };
        let cover = from_tuple(&base, &t).unwrap();
        prop_assert!(validate(&cover).is_empty());
        prop_assert_eq!(to_tuple(&cover, &base).unwrap().canonical_form(), t.canonical_form());
    }

    #[test]
    fn minimize_is_idempotent_and_finds_the_base(t in transitive_tuple(3, 5), two in any::<bool>()) {
        let base = if two { two_vertex_base(t.rank()) } else { bouquet(t.rank()) };
        let cover = from_tuple(&base, &t).unwrap();
        let once = minimize(&cover).unwrap().base;
        let twice = minimize(&once).unwrap().base;
        prop_assert_eq!(once.canonical_key().unwrap(), twice.canonical_key().unwrap());
        prop_assert_eq!(once.canonical_key().unwrap(), base.canonical_key().unwrap());
    }

    #[test]
    fn deck_group_is_the_centralizer(t in transitive_tuple(3, 5)) {
        let cover = from_tuple(&bouquet(t.rank()), &t).unwrap();
        let deck = deck_group_order(&cover, &lim()).unwrap();
        prop_assert_eq!(t.degree() % deck, 0);
        prop_assert_eq!(deck, t.centralizer_order(&lim()).unwrap());
    }

    #[test]
    fn minimize_commutes_with_disjoint_union(a in transitive_tuple(2, 4), b in transitive_tuple(2, 4)) {
        prop_assume!(a.rank() == b.rank());
        let base = bouquet(a.rank());
        let ga = from_tuple(&base, &a).unwrap();
        let gb = from_tuple(&base, &b).unwrap();
        let both = ga.disjoint_union(&gb).unwrap();
        prop_assert!(validate(&both).is_empty());
        for comp in both.components().unwrap() {
            prop_assert_eq!(minimize(&comp).unwrap().base.canonical_key().unwrap(), base.canonical_key().unwrap());
        }
    }

    #[test]
    fn canonical_form_is_a_class_invariant(t in arb_tuple(3, 6), seed in any::<u64>()) {
        let n = t.degree();
        let mut images: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            images.swap(i, (s >> 33) as usize % (i + 1));
        }
        let g = Perm::new(images).unwrap();
        prop_assert_eq!(t.conjugate(&g).unwrap().canonical_form(), t.canonical_form());
    }

    #[test]
    fn norms_multiply_for_distinct_connected_factors(a in transitive_tuple(2, 4), b in transitive_tuple(2, 4)) {
        prop_assume!(a.rank() == b.rank());
        prop_assume!(a.canonical_form() != b.canonical_form());
        let ab = product_tuple(&a, &b).unwrap();
        let expected = norm_squared(&a, &lim()).unwrap() * norm_squared(&b, &lim()).unwrap();
        prop_assert_eq!(norm_squared(&ab, &lim()).unwrap(), expected.clone());
        prop_assert_eq!(num_bigint::BigUint::from(ab.centralizer_order(&lim()).unwrap()), expected);
    }

    #[test]
    fn brauer_identity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, nu) = random_group_with_automorphism(&mut rng, &lim()).unwrap();
        let twisted = twisted_orbit_count(&g, &nu);
        prop_assert_eq!(twisted, fixed_class_count(&g, &nu, &lim()).unwrap());
        let dist = irr_orbit_distribution(&g, &nu, &lim()).unwrap();
        prop_assert_eq!(dist.get(&1).copied().unwrap_or(0), twisted);
    }
}

#[test]
fn kronecker_symmetries() {
    let ps: Vec<Partition> = partitions(4, &lim()).unwrap();
    for a in &ps {
        for b in &ps {
            for c in &ps {
                let g = kronecker(&[a.clone(), b.clone()], c, &lim()).unwrap();
                assert_eq!(g, kronecker(&[b.clone(), a.clone()], c, &lim()).unwrap());
                assert_eq!(g, kronecker(&[a.clone(), c.clone()], b, &lim()).unwrap());
                assert_eq!(g, kronecker(&[a.conjugate(), b.conjugate()], c, &lim()).unwrap());
            }
        }
    }
}
