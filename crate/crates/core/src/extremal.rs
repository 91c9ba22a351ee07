//! Small-case exhaustive search: isomorph-free enumeration of k-graphs, the
//! least order of an asymmetric k-graph, and a desk explorer for critical
//! asymmetric oriented graphs.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::autsearch::{BudgetExceeded, CanonicalCertificate, Engine, Incidence, Structure};
use crate::hypergraph::{k_subsets, Hypergraph, Vertex};
use crate::verify::{Check, Counters, Property, Regime, Verdict, VerificationReport};

/// Largest number of labeled objects a single enumeration may visit.
pub const LABELED_BUDGET: u64 = 1 << 21;

const CHUNK: u64 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtremalError {
    #[error("{labeled} labeled objects exceed the enumeration budget of {budget}")]
    TooLarge { labeled: String, budget: u64 },
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// Number of labeled objects, if it fits in a `u64`.
fn labeled_count(slots: usize, base: u64) -> Option<u64> {
    base.checked_pow(u32::try_from(slots).ok()?)
}

fn too_large(slots: usize, base: u64) -> ExtremalError {
    let labeled = match labeled_count(slots, base) {
        Some(c) => c.to_string(),
        None => format!("{base}^{slots}"),
    };
    ExtremalError::TooLarge {
        labeled,
        budget: LABELED_BUDGET,
    }
}

/// One representative per isomorphism class of k-graphs on `n` vertices,
/// as canonical certificates in increasing order.
///
/// Only labeled edge sets with non-increasing vertex degrees are
/// canonicalized; every class has such a labeling.
pub fn enumerate_k_graphs(
    engine: &Engine,
    n: usize,
    k: usize,
) -> Result<Vec<CanonicalCertificate>, ExtremalError> {
    assert!(k <= n, "k = {k} exceeds n = {n}");
    let slots = k_subsets(n, k);
    let total = labeled_count(slots.len(), 2)
        .filter(|&c| c <= LABELED_BUDGET)
        .ok_or_else(|| too_large(slots.len(), 2))?;

    let chunk = |c: u64| -> Result<BTreeSet<CanonicalCertificate>, BudgetExceeded> {
        let mut found = BTreeSet::new();
        let mut degrees = vec![0usize; n];
        for mask in c * CHUNK..((c + 1) * CHUNK).min(total) {
            degrees.iter_mut().for_each(|d| *d = 0);
            for (i, s) in slots.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for &v in s {
                        degrees[v as usize] += 1;
                    }
                }
            }
            if degrees.windows(2).any(|w| w[0] < w[1]) {
                continue;
            }
            let edges = slots
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, s)| s.iter().map(|&v| v as usize).collect::<Vec<_>>());
            let h = Hypergraph::new(n, edges).expect("distinct k-subsets");
            found.insert(engine.canonical_form(&h)?);
        }
        Ok(found)
    };
    let parts: Vec<_> = (0..total.div_ceil(CHUNK)).into_par_iter().map(chunk).collect();
    let mut all = BTreeSet::new();
    for part in parts {
        all.extend(part?);
    }
    Ok(all.into_iter().collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Outcome {
    AllSymmetric,
    Asymmetric { witness: CanonicalCertificate },
    BudgetExceeded { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderResult {
    pub n: usize,
    /// Isomorphism classes of k-graphs on `n` vertices.
    pub classes: usize,
    pub asymmetric_classes: usize,
    /// Edge size actually enumerated: `k`, or `n − k` under complementation.
    pub enumerated_as: usize,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub k: usize,
    pub n_max: usize,
    pub per_n: Vec<OrderResult>,
    /// Least `n ≥ 2` with an asymmetric k-graph, if within the bound.
    pub n_of_k: Option<usize>,
}

impl SearchResult {
    /// Text table; witnesses appear as file paths when `witness_paths` has
    /// one for that `n`, otherwise as edge lists.
    pub fn to_table(&self, witness_paths: &[(usize, String)]) -> String {
        let mut out = format!("k = {}, n = 2..={}\n", self.k, self.n_max);
        out.push_str("n   classes   asymmetric   witness\n");
        for r in &self.per_n {
            let witness = match &r.outcome {
                Outcome::AllSymmetric => "-".to_string(),
                Outcome::Asymmetric { witness } => match witness_paths.iter().find(|(n, _)| *n == r.n) {
                    Some((_, p)) => p.clone(),
                    None => format!("{:?}", witness.edges),
                },
                Outcome::BudgetExceeded { reason } => format!("budget exceeded: {reason}"),
            };
            out.push_str(&format!(
                "{:<3} {:<9} {:<12} {}\n",
                r.n, r.classes, r.asymmetric_classes, witness
            ));
        }
        match self.n_of_k {
            Some(n) => out.push_str(&format!("n({}) = {n}\n", self.k)),
            None => out.push_str(&format!("no asymmetric {}-graph on at most {} vertices\n", self.k, self.n_max)),
        }
        out
    }
}

/// Classes of k-graphs on `n` vertices and which of them are asymmetric.
/// Complements are enumerated instead when `n − k < k`.
fn classify(engine: &Engine, n: usize, k: usize) -> Result<(usize, Vec<CanonicalCertificate>, usize), ExtremalError> {
    if k > n {
        // only the edgeless graph
        let asym = if n <= 1 { vec![engine.canonical_form(&Hypergraph::edgeless(n))?] } else { vec![] };
        return Ok((1, asym, k));
    }
    let dual = n - k < k;
    let size = if dual { n - k } else { k };
    let classes = enumerate_k_graphs(engine, n, size)?;
    let mut asym = Vec::new();
    for c in &classes {
        let h = c.hypergraph();
        if engine.is_asymmetric(&h)? {
            let h = if dual { h.set_complement() } else { h };
            asym.push(engine.canonical_form(&h)?);
        }
    }
    asym.sort();
    Ok((classes.len(), asym, size))
}

/// For each `n` in `2..=n_max`, either every k-graph on `n` vertices is
/// symmetric or the least asymmetric certificate is returned.
pub fn min_asymmetric_order(engine: &Engine, k: usize, n_max: usize) -> SearchResult {
    assert!(k >= 1, "k must be positive");
    let mut per_n = Vec::new();
    let mut n_of_k = None;
    for n in 2..=n_max {
        let row = match classify(engine, n, k) {
            Ok((classes, asym, size)) => {
                let outcome = match asym.first() {
                    Some(w) => Outcome::Asymmetric { witness: w.clone() },
                    None => Outcome::AllSymmetric,
                };
                OrderResult {
                    n,
                    classes,
                    asymmetric_classes: asym.len(),
                    enumerated_as: size,
                    outcome,
                }
            }
            Err(e) => {
                per_n.push(OrderResult {
                    n,
                    classes: 0,
                    asymmetric_classes: 0,
                    enumerated_as: k.min(n.saturating_sub(k)),
                    outcome: Outcome::BudgetExceeded { reason: e.to_string() },
                });
                break;
            }
        };
        if n_of_k.is_none() && matches!(row.outcome, Outcome::Asymmetric { .. }) {
            n_of_k = Some(n);
        }
        per_n.push(row);
    }
    SearchResult { k, n_max, per_n, n_of_k }
}

/// Every k-graph on `k + 1` vertices is symmetric: checked on all `2^{k+1}`
/// labeled complements (families of singletons), and directly on all
/// labeled k-graphs when `k + 1 ≤ 8`.
pub fn lower_bound(engine: &Engine, k: usize) -> VerificationReport {
    let start = Instant::now();
    let n = k + 1;
    let mut counters = Counters::default();
    let mut checks = Vec::new();
    let mut verdict = Verdict::Holds;
    let mut witness = None;

    let mut run = |name: &str, size: usize| -> Verdict {
        let slots = k_subsets(n, size);
        let mut asymmetric = None;
        for mask in 0u64..1 << slots.len() {
            let edges = slots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, s)| s.iter().map(|&v| v as usize).collect::<Vec<_>>());
            let h = Hypergraph::new(n, edges).expect("distinct subsets");
            counters.subgraphs_examined += 1;
            counters.engine_calls += 1;
            match engine.is_asymmetric(&h) {
                Ok(true) => {
                    asymmetric = Some(h);
                    break;
                }
                Ok(false) => {}
                Err(_) => {
                    checks.push(Check {
                        name: name.to_string(),
                        verdict: Verdict::BudgetExceeded,
                        asserted: true,
                        detail: "budget exceeded".into(),
                    });
                    return Verdict::BudgetExceeded;
                }
            }
        }
        let (v, detail) = match &asymmetric {
            None => (Verdict::Holds, format!("all {} labeled {size}-graphs on {n} vertices symmetric", 1u64 << slots.len())),
            Some(h) => (Verdict::Fails, format!("asymmetric {size}-graph {:?}", h.edges())),
        };
        if let Some(h) = asymmetric {
            let h = if size == k { h } else { h.set_complement() };
            witness.get_or_insert(crate::verify::Witness::subgraph(&h, crate::hypergraph::SubgraphSelector::full(&h)));
        }
        checks.push(Check {
            name: name.to_string(),
            verdict: v,
            asserted: true,
            detail,
        });
        v
    };
    if k >= 1 {
        let v = run("complements", 1);
        verdict = combine(verdict, v);
    }
    if n <= 8 {
        let v = run("direct", k);
        verdict = combine(verdict, v);
    }
    let mut report = VerificationReport {
        property: Property::LowerBound,
        subject: format!("all {k}-graphs on {n} vertices"),
        regime: Regime::Exhaustive,
        verdict,
        witness,
        counters,
        checks,
        elapsed: Default::default(),
    };
    report.elapsed = start.elapsed();
    report
}

fn combine(a: Verdict, b: Verdict) -> Verdict {
    match (a, b) {
        (Verdict::Fails, _) | (_, Verdict::Fails) => Verdict::Fails,
        (Verdict::BudgetExceeded, _) | (_, Verdict::BudgetExceeded) => Verdict::BudgetExceeded,
        _ => Verdict::Holds,
    }
}

/// A loopless directed graph with no pair of opposite arcs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct OrientedGraph {
    n: usize,
    arcs: Vec<(Vertex, Vertex)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrientedError {
    #[error("arc ({0}, {1}) out of range")]
    OutOfRange(Vertex, Vertex),
    #[error("loop at {0}")]
    Loop(Vertex),
    #[error("arcs ({0}, {1}) and ({1}, {0}) both present")]
    Opposite(Vertex, Vertex),
}

impl OrientedGraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self, OrientedError> {
        let set: BTreeSet<(Vertex, Vertex)> = arcs.into_iter().collect();
        for &(u, v) in &set {
            if u as usize >= n || v as usize >= n {
                return Err(OrientedError::OutOfRange(u, v));
            }
            if u == v {
                return Err(OrientedError::Loop(u));
            }
            if set.contains(&(v, u)) {
                return Err(OrientedError::Opposite(u, v));
            }
        }
        Ok(OrientedGraph {
            n,
            arcs: set.into_iter().collect(),
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(Vertex, Vertex)] {
        &self.arcs
    }

    /// Graph with vertex `x` removed and the rest renumbered in order.
    pub fn delete_vertex(&self, x: usize) -> OrientedGraph {
        let shift = |v: Vertex| if v as usize > x { v - 1 } else { v };
        let arcs = self
            .arcs
            .iter()
            .filter(|&&(u, v)| u as usize != x && v as usize != x)
            .map(|&(u, v)| (shift(u), shift(v)))
            .collect();
        OrientedGraph { n: self.n - 1, arcs }
    }

    pub fn has_directed_cycle(&self) -> bool {
        // Kahn's algorithm
        let mut indegree = vec![0usize; self.n];
        let mut out = vec![Vec::new(); self.n];
        for &(u, v) in &self.arcs {
            indegree[v as usize] += 1;
            out[u as usize].push(v as usize);
        }
        let mut stack: Vec<usize> = (0..self.n).filter(|&v| indegree[v] == 0).collect();
        let mut removed = 0;
        while let Some(u) = stack.pop() {
            removed += 1;
            for &v in &out[u] {
                indegree[v] -= 1;
                if indegree[v] == 0 {
                    stack.push(v);
                }
            }
        }
        removed < self.n
    }

    /// All oriented graphs on `n` labeled vertices: each pair is absent,
    /// forward or backward.
    pub fn all_labeled(n: usize) -> Result<impl Iterator<Item = OrientedGraph>, ExtremalError> {
        let pairs: Vec<(Vertex, Vertex)> = (0..n as Vertex)
            .flat_map(|u| (u + 1..n as Vertex).map(move |v| (u, v)))
            .collect();
        let total = labeled_count(pairs.len(), 3)
            .filter(|&c| c <= LABELED_BUDGET)
            .ok_or_else(|| too_large(pairs.len(), 3))?;
        Ok((0..total).map(move |mut code| {
            let mut arcs = Vec::new();
            for &(u, v) in &pairs {
                match code % 3 {
                    1 => arcs.push((u, v)),
                    2 => arcs.push((v, u)),
                    _ => {}
                }
                code /= 3;
            }
            arcs.sort_unstable();
            OrientedGraph { n, arcs }
        }))
    }
}

impl Structure for OrientedGraph {
    type Key = Vec<(Vertex, Vertex)>;

    fn n_points(&self) -> usize {
        self.n
    }

    fn incidence(&self) -> Incidence {
        let mut adj: Vec<Vec<(u32, u8)>> = vec![Vec::new(); self.n];
        for &(u, v) in &self.arcs {
            adj[u as usize].push((v, 0));
            adj[v as usize].push((u, 1));
        }
        Incidence::new(self.n, 2, adj, vec![(0..self.n as u32).collect()])
    }

    fn is_automorphism(&self, image: &[u32]) -> bool {
        self.relabeled(image) == self.arcs
    }

    fn relabeled(&self, relabel: &[u32]) -> Self::Key {
        let mut arcs: Vec<(Vertex, Vertex)> = self
            .arcs
            .iter()
            .map(|&(u, v)| (relabel[u as usize], relabel[v as usize]))
            .collect();
        arcs.sort_unstable();
        arcs
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrientedCount {
    pub n: usize,
    pub classes: usize,
    pub asymmetric: usize,
    /// Asymmetric classes without a directed cycle; all must be non-critical.
    pub acyclic_asymmetric: usize,
    /// Asymmetric classes with a directed cycle, tested for criticality.
    pub cyclic_candidates: usize,
    pub critical: Vec<OrientedGraph>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExplorationReport {
    pub n_max: usize,
    pub per_n: Vec<OrientedCount>,
    /// No acyclic asymmetric graph turned out critical.
    pub filter_consistent: bool,
    pub partial: Option<String>,
}

impl ExplorationReport {
    pub fn critical_found(&self) -> bool {
        self.per_n.iter().any(|c| !c.critical.is_empty())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("oriented graphs on 2..={} vertices (exhaustive exploration)\n", self.n_max);
        out.push_str("n  classes  asymmetric  acyclic  cyclic-candidates  critical\n");
        for c in &self.per_n {
            out.push_str(&format!(
                "{:<2} {:<8} {:<11} {:<8} {:<18} {}\n",
                c.n,
                c.classes,
                c.asymmetric,
                c.acyclic_asymmetric,
                c.cyclic_candidates,
                c.critical.len()
            ));
        }
        for c in &self.per_n {
            for g in &c.critical {
                out.push_str(&format!("critical on {} vertices: {:?}\n", c.n, g.arcs()));
            }
        }
        if let Some(p) = &self.partial {
            out.push_str(&format!("partial: {p}\n"));
        }
        out.push_str(&format!("acyclic filter consistent: {}\n", self.filter_consistent));
        if self.critical_found() {
            out.push_str("critical asymmetric oriented graph found\n");
        } else {
            out.push_str("no critical asymmetric oriented graph found\n");
        }
        out
    }
}

/// Isomorphism classes of oriented graphs on `n` vertices, as canonical
/// representatives in increasing key order.
pub fn oriented_classes(engine: &Engine, n: usize) -> Result<Vec<OrientedGraph>, ExtremalError> {
    let mut seen = BTreeMap::new();
    for g in OrientedGraph::all_labeled(n)? {
        let (key, _) = engine.canonical_key_of(&g)?;
        seen.entry(key).or_insert(());
    }
    Ok(seen
        .into_keys()
        .map(|arcs| OrientedGraph { n, arcs })
        .collect())
}

fn is_asymmetric_oriented(engine: &Engine, g: &OrientedGraph) -> Result<bool, BudgetExceeded> {
    Ok(engine.nontrivial_automorphism_of(g, None)?.is_none())
}

/// Searches for asymmetric oriented graphs on at least two vertices in which
/// every single-vertex deletion is symmetric.
pub fn explore_critical_oriented(engine: &Engine, n_max: usize) -> ExplorationReport {
    let mut per_n = Vec::new();
    let mut filter_consistent = true;
    let mut partial = None;
    for n in 2..=n_max {
        let mut step = || -> Result<OrientedCount, ExtremalError> {
            let classes = oriented_classes(engine, n)?;
            let mut count = OrientedCount {
                n,
                classes: classes.len(),
                asymmetric: 0,
                acyclic_asymmetric: 0,
                cyclic_candidates: 0,
                critical: Vec::new(),
            };
            for g in classes {
                if !is_asymmetric_oriented(engine, &g)? {
                    continue;
                }
                count.asymmetric += 1;
                let cyclic = g.has_directed_cycle();
                if cyclic {
                    count.cyclic_candidates += 1;
                } else {
                    count.acyclic_asymmetric += 1;
                }
                let mut critical = true;
                for x in 0..n {
                    if is_asymmetric_oriented(engine, &g.delete_vertex(x))? {
                        critical = false;
                        break;
                    }
                }
                if critical {
                    if !cyclic {
                        filter_consistent = false;
                    }
                    count.critical.push(g);
                }
            }
            Ok(count)
        };
        match step() {
            Ok(c) => per_n.push(c),
            Err(e) => {
                partial = Some(format!("stopped at n = {n}: {e}"));
                break;
            }
        }
    }
    ExplorationReport {
        n_max,
        per_n,
        filter_consistent,
        partial,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autsearch::brute;
    use num_bigint::BigUint;

    /// Orbit count of `S_n` on labeled k-graphs, by Burnside.
    fn burnside(n: usize, k: usize) -> BigUint {
        let slots = k_subsets(n, k);
        let perms = brute::all_permutations(&Hypergraph::edgeless(n));
        let mut total = BigUint::from(0u32);
        for p in &perms {
            let mut seen = vec![false; slots.len()];
            let mut cycles = 0u32;
            for i in 0..slots.len() {
                if seen[i] {
                    continue;
                }
                cycles += 1;
                let mut j = i;
                while !seen[j] {
                    seen[j] = true;
                    let mut img: Vec<Vertex> = slots[j].iter().map(|&v| p.apply(v as usize) as Vertex).collect();
                    img.sort_unstable();
                    j = slots.binary_search(&img).unwrap();
                }
            }
            total += BigUint::from(2u32).pow(cycles);
        }
        total / BigUint::from(perms.len())
    }

    #[test]
    fn class_counts_match_burnside() {
        let engine = Engine::default();
        for n in 1..=5 {
            for k in 0..=n {
                let classes = enumerate_k_graphs(&engine, n, k).unwrap();
                assert_eq!(BigUint::from(classes.len()), burnside(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn small_class_counts() {
        let engine = Engine::default();
        assert_eq!(enumerate_k_graphs(&engine, 3, 3).unwrap().len(), 2);
        assert_eq!(enumerate_k_graphs(&engine, 4, 2).unwrap().len(), 11);
        assert_eq!(enumerate_k_graphs(&engine, 5, 4).unwrap().len(), 6);
    }

    #[test]
    fn enumeration_budget_is_explicit() {
        let engine = Engine::default();
        assert!(matches!(
            enumerate_k_graphs(&engine, 8, 2),
            Err(ExtremalError::TooLarge { .. })
        ));
    }

    #[test]
    fn complement_duality_of_asymmetric_counts() {
        let engine = Engine::default();
        for n in 2..=6 {
            for k in 0..=n {
                let count = |size: usize| {
                    let classes = enumerate_k_graphs(&engine, n, size).unwrap();
                    classes
                        .iter()
                        .filter(|c| engine.is_asymmetric(&c.hypergraph()).unwrap())
                        .count()
                };
                if 2 * k <= n {
                    assert_eq!(count(k), count(n - k), "n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn k1_asymmetric_from_two_vertices() {
        let r = min_asymmetric_order(&Engine::default(), 1, 3);
        assert_eq!(r.n_of_k, Some(2));
    }

    #[test]
    fn witness_is_never_followed_by_all_symmetric_claim() {
        let r = min_asymmetric_order(&Engine::default(), 2, 7);
        assert_eq!(r.n_of_k, Some(6));
        assert!(r.per_n.iter().all(|row| row.n < 6 || matches!(row.outcome, Outcome::Asymmetric { .. })));
    }

    #[test]
    fn lower_bound_small() {
        for k in 2..=7 {
            let r = lower_bound(&Engine::default(), k);
            assert!(r.holds(), "{}", r.to_text());
        }
        // a single marked vertex out of two
        assert_eq!(lower_bound(&Engine::default(), 1).verdict, Verdict::Fails);
    }

    fn brute_oriented_order(g: &OrientedGraph) -> usize {
        brute::all_permutations(&Hypergraph::edgeless(g.n_vertices()))
            .iter()
            .filter(|p| g.is_automorphism(p.images()))
            .count()
    }

    #[test]
    fn oriented_groups_match_enumeration() {
        let engine = Engine::default();
        for n in 1..=4 {
            for g in OrientedGraph::all_labeled(n).unwrap().step_by(7) {
                let order = engine.group_of(&g, None).unwrap().order;
                assert_eq!(order, BigUint::from(brute_oriented_order(&g)), "{g:?}");
            }
        }
    }

    #[test]
    fn oriented_class_counts_match_brute_minimum_keys() {
        let engine = Engine::default();
        for n in 1..=4 {
            let perms = brute::all_permutations(&Hypergraph::edgeless(n));
            let keys: BTreeSet<_> = OrientedGraph::all_labeled(n)
                .unwrap()
                .map(|g| perms.iter().map(|p| g.relabeled(p.images())).min().unwrap())
                .collect();
            assert_eq!(oriented_classes(&engine, n).unwrap().len(), keys.len());
        }
    }

    #[test]
    fn oriented_validation() {
        assert!(OrientedGraph::new(2, [(0, 1), (1, 0)]).is_err());
        assert!(OrientedGraph::new(2, [(0, 0)]).is_err());
        assert!(OrientedGraph::new(2, [(0, 2)]).is_err());
        let cyc = OrientedGraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(cyc.has_directed_cycle());
        assert!(!cyc.delete_vertex(1).has_directed_cycle());
    }
}
