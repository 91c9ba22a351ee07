//! The reduced exhaustive scans agree with naive enumeration of every
//! (vertex subset, contained edge subset) pair.

use std::collections::BTreeSet;

use asymhyp::constructions::{build_gk_star, build_gkt_circ, build_small_asym, build_x1};
use asymhyp::verify::{
    verify_minimal_asymmetric, verify_minimal_involution_free, verify_strongly_minimal, Verdict, VerifyOptions,
    Witness,
};
use asymhyp::{Engine, Hypergraph, SubgraphSelector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy)]
enum Need {
    Symmetry,
    Involution,
}

/// Whether every proper subgraph with at least two vertices has `need`.
fn naive_all_subgraphs(h: &Hypergraph, need: Need) -> bool {
    let engine = Engine::default();
    let n = h.n_vertices();
    for vmask in 0u32..1 << n {
        if vmask.count_ones() < 2 {
            continue;
        }
        let inside: Vec<usize> = (0..h.n_edges())
            .filter(|&e| h.edge(e).iter().all(|&v| vmask >> v & 1 == 1))
            .collect();
        for emask in 0u32..1 << inside.len() {
            let whole = vmask.count_ones() as usize == n && emask.count_ones() as usize == h.n_edges();
            if whole {
                continue;
            }
            let sel = SubgraphSelector::new(
                (0..n).filter(|&v| vmask >> v & 1 == 1),
                (0..inside.len()).filter(|&i| emask >> i & 1 == 1).map(|i| inside[i]),
            );
            let sub = h.subgraph(&sel).unwrap();
            let ok = match need {
                Need::Symmetry => engine.nontrivial_automorphism_of(&sub, None).unwrap().is_some(),
                Need::Involution => engine.involution_of(&sub, None).unwrap().is_some(),
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Whether every induced subgraph on `1 < |S| < n` vertices is symmetric.
fn naive_induced(h: &Hypergraph) -> bool {
    let engine = Engine::default();
    let n = h.n_vertices();
    (0u32..1 << n)
        .filter(|m| (2..n as u32).contains(&m.count_ones()))
        .all(|m| {
            let s: BTreeSet<usize> = (0..n).filter(|&v| m >> v & 1 == 1).collect();
            !engine.is_asymmetric(&h.induced(&s).unwrap()).unwrap()
        })
}

fn random_asymmetric(rng: &mut ChaCha8Rng) -> Hypergraph {
    let engine = Engine::default();
    loop {
        let n = rng.gen_range(3..=8);
        let m = rng.gen_range(1..=8);
        let edges: BTreeSet<Vec<usize>> = (0..m)
            .map(|_| {
                let size = rng.gen_range(1..=n.min(4));
                let mut e: BTreeSet<usize> = BTreeSet::new();
                while e.len() < size {
                    e.insert(rng.gen_range(0..n));
                }
                e.into_iter().collect()
            })
            .collect();
        let h = Hypergraph::new(n, edges).unwrap();
        if engine.is_asymmetric(&h).unwrap() {
            return h;
        }
    }
}

fn check_agreement(h: &Hypergraph) {
    let opts = VerifyOptions::default();
    let strong = verify_strongly_minimal(h, "h", &opts);
    assert_ne!(strong.verdict, Verdict::BudgetExceeded);
    assert_eq!(strong.holds(), naive_all_subgraphs(h, Need::Symmetry), "{h:?}");
    let inv = verify_minimal_involution_free(h, "h", &opts);
    assert_eq!(inv.holds(), naive_all_subgraphs(h, Need::Involution), "{h:?}");
    let induced = verify_minimal_asymmetric(h, "h", &opts);
    assert_eq!(induced.holds(), naive_induced(h), "{h:?}");

    // a reported subgraph really is asymmetric
    if let Some(Witness::Subgraph { selector, .. }) = &strong.witness {
        let sub = h.subgraph(selector).unwrap();
        assert!(Engine::default().is_asymmetric(&sub).unwrap());
        assert!(selector.vertices.len() >= 2);
    }
}

#[test]
fn reduced_scans_match_naive_enumeration_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..60 {
        check_agreement(&random_asymmetric(&mut rng));
    }
}

#[test]
fn reduced_scans_match_naive_enumeration_on_constructions() {
    check_agreement(&build_x1());
    check_agreement(&build_gkt_circ(3, 1).unwrap());
    check_agreement(&build_small_asym(4).unwrap());
    check_agreement(&build_gk_star(4).unwrap());
}

#[test]
fn results_do_not_depend_on_worker_count() {
    let h = build_gkt_circ(4, 2).unwrap();
    let one = VerifyOptions::default();
    let four = VerifyOptions { workers: 4, ..one };
    assert_eq!(
        verify_strongly_minimal(&h, "c", &one).to_json(),
        verify_strongly_minimal(&h, "c", &four).to_json()
    );
    let star = build_gk_star(5).unwrap();
    let sampled = VerifyOptions::sampled(300, 11);
    let sampled4 = VerifyOptions { workers: 3, ..sampled };
    assert_eq!(
        verify_minimal_involution_free(&star, "s", &sampled).to_json(),
        verify_minimal_involution_free(&star, "s", &sampled4).to_json()
    );
    // a failing scan reports the same first witness either way
    let x1 = build_x1();
    assert_eq!(
        verify_strongly_minimal(&x1, "x1", &one).to_json(),
        verify_strongly_minimal(&x1, "x1", &four).to_json()
    );
}
