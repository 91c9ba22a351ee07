use std::collections::BTreeSet;

use asymhyp::autsearch::brute;
use asymhyp::{Engine, Hypergraph, Permutation};
use num_bigint::BigUint;
use proptest::prelude::*;

fn arb_hypergraph(max_n: usize, max_edges: usize) -> impl Strategy<Value = Hypergraph> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::btree_set(prop::collection::btree_set(0..n, 0..=n), 0..=max_edges)
            .prop_map(move |edges| Hypergraph::new(n, edges).unwrap())
    })
}

fn arb_uniform(max_n: usize) -> impl Strategy<Value = Hypergraph> {
    (2..=max_n, 1usize..=3).prop_flat_map(|(n, k)| {
        let k = k.min(n);
        prop::collection::btree_set(prop::collection::btree_set(0..n, k..=k), 0..=10)
            .prop_map(move |edges| Hypergraph::new(n, edges).unwrap())
    })
}

fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn brute_orbit_classes(n: usize, group: &[Permutation]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for v in 0..n {
        if seen[v] {
            continue;
        }
        let orbit: BTreeSet<usize> = group.iter().map(|g| g.apply(v)).collect();
        for &w in &orbit {
            seen[w] = true;
        }
        out.push(orbit.into_iter().collect());
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn group_order_matches_enumeration(h in arb_hypergraph(7, 9)) {
        let engine = Engine::default();
        let group = engine.automorphism_group(&h).unwrap();
        let all = brute::all_permutations(&h);
        prop_assert_eq!(group.order.clone(), BigUint::from(all.len()));
        for g in &group.generators {
            prop_assert!(h.is_automorphism(g).unwrap());
        }
        prop_assert_eq!(&group.orbits, &brute_orbit_classes(h.n_vertices(), &all));
        prop_assert_eq!(group.generators.is_empty(), group.is_trivial());
        prop_assert_eq!(engine.is_asymmetric(&h).unwrap(), all.len() == 1);
    }

    #[test]
    fn involution_search_matches_enumeration(h in arb_hypergraph(7, 9)) {
        let engine = Engine::default();
        let all = brute::all_permutations(&h);
        let expected = all.iter().any(Permutation::is_involution);
        let found = engine.find_involution(&h, None).unwrap();
        prop_assert_eq!(found.is_some(), expected);
        if let Some(p) = found {
            prop_assert!(p.is_involution());
            prop_assert!(h.is_automorphism(&p).unwrap());
        }
        // Cauchy: an involution exists iff the group order is even.
        let order = engine.automorphism_group(&h).unwrap().order;
        prop_assert_eq!(expected, &order % 2u32 == BigUint::from(0u32));
    }

    #[test]
    fn stabilizer_matches_filtered_enumeration(
        h in arb_hypergraph(7, 8),
        seed in prop::collection::btree_set(0usize..7, 0..4),
    ) {
        let seed: BTreeSet<usize> = seed.into_iter().filter(|&v| v < h.n_vertices()).collect();
        let engine = Engine::default();
        let stab = engine.stabilizer_preserving(&h, &seed).unwrap();
        let expected: Vec<Permutation> = brute::all_permutations(&h)
            .into_iter()
            .filter(|p| seed.iter().all(|&v| seed.contains(&p.apply(v))))
            .collect();
        prop_assert_eq!(stab.order, BigUint::from(expected.len()));
        let inv = engine.find_involution(&h, Some(&seed)).unwrap();
        prop_assert_eq!(inv.is_some(), expected.iter().any(Permutation::is_involution));
        if let Some(p) = inv {
            prop_assert!(seed.iter().all(|&v| seed.contains(&p.apply(v))));
        }
    }

    #[test]
    fn canonical_form_is_relabeling_invariant(
        (h, p) in arb_hypergraph(9, 12).prop_flat_map(|h| {
            let n = h.n_vertices();
            (Just(h), arb_perm(n))
        })
    ) {
        let engine = Engine::default();
        let moved = h.apply(&p).unwrap();
        let a = engine.canonical_form(&h).unwrap();
        let b = engine.canonical_form(&moved).unwrap();
        prop_assert_eq!(&a, &b);
        // the certificate is itself isomorphic to the input
        prop_assert_eq!(engine.canonical_form(&a.hypergraph()).unwrap(), a);
    }

    #[test]
    fn isomorphism_matches_brute_force(a in arb_uniform(6), b in arb_uniform(6)) {
        let engine = Engine::default();
        let brute_iso = a.n_vertices() == b.n_vertices()
            && a.n_edges() == b.n_edges()
            && permutations(a.n_vertices()).any(|p| a.apply(&p).unwrap() == b);
        prop_assert_eq!(engine.are_isomorphic(&a, &b).unwrap(), brute_iso);
    }

    #[test]
    fn automorphisms_agree_with_complement(h in arb_hypergraph(7, 9)) {
        let c = h.set_complement();
        let all = brute::all_permutations(&h);
        prop_assert_eq!(&all, &brute::all_permutations(&c));
        let engine = Engine::default();
        prop_assert_eq!(
            engine.automorphism_group(&h).unwrap().order,
            engine.automorphism_group(&c).unwrap().order
        );
    }
}

fn permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let h = Hypergraph::edgeless(n);
    brute::all_permutations(&h).into_iter()
}

#[test]
fn backtracking_oracle_agrees_with_full_enumeration() {
    let h = Hypergraph::new(6, [vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 0]]).unwrap();
    assert_eq!(brute::backtrack(&h), brute::all_permutations(&h));
    let e = Hypergraph::edgeless(5);
    assert_eq!(brute::backtrack(&e).len(), 120);
}

#[test]
fn edgeless_groups_are_symmetric_groups() {
    let engine = Engine::default();
    assert_eq!(
        engine.automorphism_group(&Hypergraph::edgeless(3)).unwrap().order,
        BigUint::from(6u32)
    );
    let big = engine.automorphism_group(&Hypergraph::edgeless(40)).unwrap();
    let fact: BigUint = (1..=40u32).map(BigUint::from).product();
    assert_eq!(big.order, fact);
    assert!(engine.is_asymmetric(&Hypergraph::edgeless(1)).unwrap());
    assert!(engine.has_involution(&Hypergraph::edgeless(2)).unwrap());
}

#[test]
fn budget_is_reported_not_coerced() {
    let engine = Engine::with_budget(3);
    let h = Hypergraph::complete(8, 3);
    assert!(engine.automorphism_group(&h).is_err());
}
