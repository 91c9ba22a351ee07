//! Decision procedures for minimality: minimal asymmetric (induced),
//! strongly minimal asymmetric (all subgraphs) and minimal involution-free,
//! plus the bundled lemma checks for the cyclic and path families.
//!
//! Exhaustive regimes enumerate edge subsets `M' ⊆ M` and examine the
//! subgraph on the covered vertices only. That covers every subgraph:
//! two or more isolated vertices can always be swapped, and a single isolated
//! vertex is fixed by every automorphism, so it changes nothing.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::autsearch::{brute, BudgetExceeded, Engine};
use crate::constructions::{build_gk, build_gk_star, build_gkt};
use crate::hypergraph::{Hypergraph, Permutation, SubgraphSelector, Vertex};

/// Largest edge count verified by full edge-subset enumeration.
pub const EXHAUSTIVE_EDGE_LIMIT: usize = 24;
/// Largest vertex count for the induced-subgraph enumeration.
pub const EXHAUSTIVE_VERTEX_LIMIT: usize = 24;

const BLOCK: u64 = 1024;
const BLOCKS_PER_ROUND: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    MinimalAsymmetric,
    StronglyMinimalAsymmetric,
    MinimalInvolutionFree,
    ShiftStructure,
    PathFamilySuite,
    LowerBound,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::MinimalAsymmetric => "minimal-asymmetric",
            Property::StronglyMinimalAsymmetric => "strongly-minimal-asymmetric",
            Property::MinimalInvolutionFree => "minimal-involution-free",
            Property::ShiftStructure => "cyclic-family-structure",
            Property::PathFamilySuite => "path-family-suite",
            Property::LowerBound => "lower-bound",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    BudgetExceeded,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::BudgetExceeded => "budget-exceeded",
        }
    }

    fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fails, _) | (_, Verdict::Fails) => Verdict::Fails,
            (Verdict::BudgetExceeded, _) | (_, Verdict::BudgetExceeded) => Verdict::BudgetExceeded,
            _ => Verdict::Holds,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Regime {
    Exhaustive,
    /// Seeded random subgraphs plus every single-vertex and single-edge
    /// deletion.
    Sampled { trials: usize, seed: u64 },
}

impl Regime {
    pub fn describe(&self) -> String {
        match self {
            Regime::Exhaustive => "exhaustive".to_string(),
            Regime::Sampled { trials, seed } => {
                format!("sampled (trials={trials}, seed={seed}) + exhaustive single deletions")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// A non-identity automorphism, in cycle notation over vertex names.
    Permutation { image: Vec<Vertex>, cycles: String },
    /// A subgraph of the subject, by vertex and edge ids with display names.
    Subgraph {
        selector: SubgraphSelector,
        vertices: Vec<String>,
        edges: Vec<Vec<String>>,
    },
}

impl Witness {
    pub fn permutation(h: &Hypergraph, p: &Permutation) -> Self {
        Witness::Permutation {
            image: p.images().to_vec(),
            cycles: p.cycle_notation(|v| h.vertex_name(v)),
        }
    }

    pub fn subgraph(h: &Hypergraph, selector: SubgraphSelector) -> Self {
        let vertices = selector.vertices.iter().map(|&v| h.vertex_name(v)).collect();
        let edges = selector
            .edges
            .iter()
            .map(|&e| h.edge(e).iter().map(|&v| h.vertex_name(v as usize)).collect())
            .collect();
        Witness::Subgraph {
            selector,
            vertices,
            edges,
        }
    }

    fn render(&self) -> String {
        match self {
            Witness::Permutation { cycles, .. } => format!("automorphism {cycles}"),
            Witness::Subgraph { vertices, edges, .. } => {
                let es: Vec<String> = edges.iter().map(|e| format!("{{{}}}", e.join(" "))).collect();
                format!(
                    "subgraph on {{{}}} with edges [{}]",
                    vertices.join(" "),
                    es.join(", ")
                )
            }
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counters {
    pub subgraphs_examined: u64,
    pub engine_calls: u64,
}

impl Counters {
    fn add(&mut self, other: Counters) {
        self.subgraphs_examined += other.subgraphs_examined;
        self.engine_calls += other.engine_calls;
    }
}

/// One named sub-result of a bundled report. Checks that are not asserted
/// are informational and do not affect the overall verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub asserted: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub property: Property,
    pub subject: String,
    pub regime: Regime,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub counters: Counters,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    fn new(property: Property, subject: &str, regime: Regime) -> Self {
        VerificationReport {
            property,
            subject: subject.to_string(),
            regime,
            verdict: Verdict::Holds,
            witness: None,
            counters: Counters::default(),
            checks: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push_check(&mut self, name: &str, verdict: Verdict, asserted: bool, detail: impl Into<String>) {
        if asserted {
            self.verdict = self.verdict.and(verdict);
        }
        self.checks.push(Check {
            name: name.to_string(),
            verdict,
            asserted,
            detail: detail.into(),
        });
    }

    /// Folds a sub-report in as one check.
    fn absorb(&mut self, name: &str, sub: &VerificationReport) {
        self.counters.add(sub.counters);
        let mut detail = format!("{} ({})", sub.verdict.name(), sub.regime.describe());
        if let Some(w) = &sub.witness {
            let _ = write!(detail, "; witness {}", w.render());
        }
        self.push_check(name, sub.verdict, true, detail);
    }

    fn finish(mut self, start: Instant) -> Self {
        self.elapsed = start.elapsed();
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "property: {}", self.property.name());
        let _ = writeln!(out, "subject: {}", self.subject);
        let _ = writeln!(out, "regime: {}", self.regime.describe());
        let _ = writeln!(out, "verdict: {}", self.verdict.name());
        match &self.witness {
            Some(w) => {
                let _ = writeln!(out, "witness: {}", w.render());
            }
            None => out.push_str("witness: none\n"),
        }
        let _ = writeln!(out, "subgraphs examined: {}", self.counters.subgraphs_examined);
        let _ = writeln!(out, "engine calls: {}", self.counters.engine_calls);
        for c in &self.checks {
            let tag = if c.asserted { "" } else { " (reported)" };
            let _ = writeln!(out, "check {}: {}{} | {}", c.name, c.verdict.name(), tag, c.detail);
        }
        out
    }
}

/// Engine budget, regime and worker count for a verification run.
#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub engine: Engine,
    pub regime: Regime,
    pub workers: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            engine: Engine::default(),
            regime: Regime::Exhaustive,
            workers: 1,
        }
    }
}

impl VerifyOptions {
    pub fn sampled(trials: usize, seed: u64) -> Self {
        VerifyOptions {
            regime: Regime::Sampled { trials, seed },
            ..Self::default()
        }
    }
}

/// What a subgraph must have for the property to survive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Need {
    Symmetry,
    Involution,
}

enum Step {
    Skip,
    Pass { engine: bool },
    Fail { engine: bool, witness: Witness },
}

struct ScanOutcome {
    counters: Counters,
    failure: Option<Witness>,
}

/// Evaluates `f` on `0..total` in fixed-size blocks. The result (counters
/// and the first failure in index order) does not depend on `workers`.
fn scan<F>(total: u64, workers: usize, f: F) -> Result<ScanOutcome, BudgetExceeded>
where
    F: Fn(u64) -> Result<Step, BudgetExceeded> + Sync,
{
    let run_block = |b: u64| -> (Counters, Option<Result<Witness, BudgetExceeded>>) {
        let mut c = Counters::default();
        let end = ((b + 1) * BLOCK).min(total);
        for i in b * BLOCK..end {
            match f(i) {
                Ok(Step::Skip) => {}
                Ok(Step::Pass { engine }) => {
                    c.subgraphs_examined += 1;
                    c.engine_calls += u64::from(engine);
                }
                Ok(Step::Fail { engine, witness }) => {
                    c.subgraphs_examined += 1;
                    c.engine_calls += u64::from(engine);
                    return (c, Some(Ok(witness)));
                }
                Err(e) => return (c, Some(Err(e))),
            }
        }
        (c, None)
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool");
    let n_blocks = total.div_ceil(BLOCK);
    let mut counters = Counters::default();
    let mut round = 0;
    while round * BLOCKS_PER_ROUND < n_blocks {
        let lo = round * BLOCKS_PER_ROUND;
        let hi = (lo + BLOCKS_PER_ROUND).min(n_blocks);
        let results: Vec<_> = if workers <= 1 {
            (lo..hi).map(run_block).collect()
        } else {
            pool.install(|| (lo..hi).into_par_iter().map(run_block).collect())
        };
        for (c, stop) in results {
            counters.add(c);
            match stop {
                Some(Ok(witness)) => {
                    return Ok(ScanOutcome {
                        counters,
                        failure: Some(witness),
                    })
                }
                Some(Err(e)) => return Err(e),
                None => {}
            }
        }
        round += 1;
    }
    Ok(ScanOutcome {
        counters,
        failure: None,
    })
}

/// Tests one subgraph for `need`, preserving `seed` (in subgraph indices)
/// setwise when given. Returns whether the full engine ran and the verdict.
fn examine(
    engine: &Engine,
    sub: &Hypergraph,
    seed: Option<&BTreeSet<usize>>,
    need: Need,
) -> Result<(bool, bool), BudgetExceeded> {
    if crate::autsearch::twin_transposition(sub, seed).is_some() {
        return Ok((false, true));
    }
    let found = match need {
        Need::Symmetry => engine.nontrivial_automorphism_of(sub, seed)?.is_some(),
        Need::Involution => engine.involution_of(sub, seed)?.is_some(),
    };
    Ok((true, found))
}

/// Precomputed incidence masks for edge-subset enumeration (`m ≤ 63`).
struct EdgeSubsets<'a> {
    h: &'a Hypergraph,
    /// Bit `e` set iff the vertex lies in edge `e`.
    vertex_masks: Vec<u64>,
    full: u64,
    /// Vertices that must be present (and preserved setwise).
    seed: Option<BTreeSet<usize>>,
    /// Whether spanning subgraphs (all vertices, fewer edges) count.
    spanning: bool,
}

impl<'a> EdgeSubsets<'a> {
    fn new(h: &'a Hypergraph, seed: Option<BTreeSet<usize>>) -> Self {
        let m = h.n_edges();
        assert!(m < 64);
        let mut vertex_masks = vec![0u64; h.n_vertices()];
        for (id, e) in h.edges().iter().enumerate() {
            for &v in e {
                vertex_masks[v as usize] |= 1 << id;
            }
        }
        EdgeSubsets {
            h,
            vertex_masks,
            full: if m == 0 { 0 } else { u64::MAX >> (64 - m) },
            seed,
            spanning: true,
        }
    }

    /// The subgraph standing for every subgraph with edge set `mask`, or
    /// `None` when no proper subgraph with at least two vertices has that
    /// edge set (up to swappable isolated vertices).
    fn representative(&self, mask: u64) -> Option<SubgraphSelector> {
        let n = self.h.n_vertices();
        let mut vertices: BTreeSet<usize> = (0..n)
            .filter(|&v| self.vertex_masks[v] & mask != 0)
            .collect();
        if let Some(seed) = &self.seed {
            vertices.extend(seed.iter().copied());
        }
        let is_whole = |vs: &BTreeSet<usize>| (mask == self.full || !self.spanning) && vs.len() == n;
        if vertices.len() < 2 || is_whole(&vertices) {
            // one extra isolated vertex, if any is left
            let w = (0..n).find(|v| !vertices.contains(v))?;
            vertices.insert(w);
            if vertices.len() < 2 || is_whole(&vertices) {
                return None;
            }
        }
        let edges = (0..self.h.n_edges()).filter(|&e| mask >> e & 1 == 1);
        Some(SubgraphSelector {
            vertices,
            edges: edges.collect(),
        })
    }

    fn evaluate(&self, engine: &Engine, mask: u64, need: Need) -> Result<Step, BudgetExceeded> {
        let Some(sel) = self.representative(mask) else {
            return Ok(Step::Skip);
        };
        // twins within the subgraph: equal incidence, same side of the seed
        let mut keys: Vec<u64> = sel
            .vertices
            .iter()
            .map(|&v| {
                let in_seed = self.seed.as_ref().is_some_and(|s| s.contains(&v));
                self.vertex_masks[v] & mask | u64::from(in_seed) << 63
            })
            .collect();
        keys.sort_unstable();
        if keys.windows(2).any(|w| w[0] == w[1]) {
            return Ok(Step::Pass { engine: false });
        }
        evaluate_selector(self.h, engine, sel, self.seed.as_ref(), need)
    }
}

fn evaluate_selector(
    h: &Hypergraph,
    engine: &Engine,
    sel: SubgraphSelector,
    seed: Option<&BTreeSet<usize>>,
    need: Need,
) -> Result<Step, BudgetExceeded> {
    let sub = h.subgraph(&sel).expect("selector built from h");
    let sub_seed: Option<BTreeSet<usize>> = seed.map(|s| {
        sel.vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| s.contains(v))
            .map(|(i, _)| i)
            .collect()
    });
    let (ran, ok) = examine(engine, &sub, sub_seed.as_ref(), need)?;
    if ok {
        Ok(Step::Pass { engine: ran })
    } else {
        Ok(Step::Fail {
            engine: ran,
            witness: Witness::subgraph(h, sel),
        })
    }
}

/// Draws a proper subgraph with at least two vertices: an edge-subset size
/// uniform in `0..=m`, a uniform subset of that size, its covered vertices,
/// and with probability 1/2 one extra isolated vertex.
fn draw_subgraph(h: &Hypergraph, rng: &mut ChaCha8Rng) -> Option<SubgraphSelector> {
    let n = h.n_vertices();
    let m = h.n_edges();
    for _ in 0..1000 {
        let r = rng.gen_range(0..=m);
        let edges: BTreeSet<usize> = sample(rng, m, r).into_iter().collect();
        let mut sel = SubgraphSelector::covering(h, edges);
        let outside: Vec<usize> = (0..n).filter(|v| !sel.vertices.contains(v)).collect();
        if !outside.is_empty() && rng.gen_bool(0.5) {
            sel.vertices.insert(outside[rng.gen_range(0..outside.len())]);
        }
        let whole = sel.vertices.len() == n && sel.edges.len() == m;
        if sel.vertices.len() >= 2 && !whole {
            return Some(sel);
        }
    }
    None
}

/// Distance-1 deletions followed by `trials` seeded random subgraphs.
fn sampled_selectors(h: &Hypergraph, trials: usize, seed: u64) -> Vec<SubgraphSelector> {
    let n = h.n_vertices();
    let m = h.n_edges();
    let mut out = Vec::with_capacity(n + m + trials);
    if n >= 3 {
        for v in 0..n {
            let vertices: BTreeSet<usize> = (0..n).filter(|&u| u != v).collect();
            let edges = (0..m).filter(|&e| !h.edge(e).contains(&(v as Vertex)));
            out.push(SubgraphSelector {
                vertices,
                edges: edges.collect(),
            });
        }
    }
    if n >= 2 {
        for e in 0..m {
            out.push(SubgraphSelector::new(0..n, (0..m).filter(|&f| f != e)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        match draw_subgraph(h, &mut rng) {
            Some(sel) => out.push(sel),
            None => break,
        }
    }
    out
}

/// Shared driver for the two "every proper subgraph has X" properties.
fn verify_all_subgraphs(
    h: &Hypergraph,
    subject: &str,
    property: Property,
    need: Need,
    opts: &VerifyOptions,
) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport::new(property, subject, opts.regime);
    let engine = opts.engine;
    match engine.nontrivial_automorphism(h, None) {
        Err(_) => {
            report.verdict = Verdict::BudgetExceeded;
            return report.finish(start);
        }
        Ok(Some(p)) => {
            report.verdict = Verdict::Fails;
            report.witness = Some(Witness::permutation(h, &p));
            report.push_check("asymmetric", Verdict::Fails, true, "subject is symmetric");
            return report.finish(start);
        }
        Ok(None) => {}
    }
    report.counters.engine_calls += 1;

    let outcome = match opts.regime {
        Regime::Exhaustive => {
            if h.n_edges() > EXHAUSTIVE_EDGE_LIMIT {
                report.verdict = Verdict::BudgetExceeded;
                report.push_check(
                    "exhaustive",
                    Verdict::BudgetExceeded,
                    true,
                    format!(
                        "{} edges exceed the exhaustive limit of {EXHAUSTIVE_EDGE_LIMIT}; use the sampled regime",
                        h.n_edges()
                    ),
                );
                return report.finish(start);
            }
            let subsets = EdgeSubsets::new(h, None);
            scan(1u64 << h.n_edges(), opts.workers, |mask| {
                subsets.evaluate(&engine, mask, need)
            })
        }
        Regime::Sampled { trials, seed } => {
            let selectors = sampled_selectors(h, trials, seed);
            scan(selectors.len() as u64, opts.workers, |i| {
                evaluate_selector(h, &engine, selectors[i as usize].clone(), None, need)
            })
        }
    };
    match outcome {
        Err(_) => report.verdict = Verdict::BudgetExceeded,
        Ok(o) => {
            report.counters.add(o.counters);
            if let Some(w) = o.failure {
                report.verdict = Verdict::Fails;
                report.witness = Some(w);
            }
        }
    }
    report.finish(start)
}

/// Asymmetric, and every proper subgraph with at least two vertices is
/// symmetric.
pub fn verify_strongly_minimal(h: &Hypergraph, subject: &str, opts: &VerifyOptions) -> VerificationReport {
    verify_all_subgraphs(h, subject, Property::StronglyMinimalAsymmetric, Need::Symmetry, opts)
}

/// Asymmetric, and every proper subgraph with at least two vertices has an
/// involution.
pub fn verify_minimal_involution_free(
    h: &Hypergraph,
    subject: &str,
    opts: &VerifyOptions,
) -> VerificationReport {
    verify_all_subgraphs(h, subject, Property::MinimalInvolutionFree, Need::Involution, opts)
}

/// Asymmetric, and every induced subgraph on `1 < |S| < n` vertices is
/// symmetric. Always exhaustive over vertex subsets.
pub fn verify_minimal_asymmetric(h: &Hypergraph, subject: &str, opts: &VerifyOptions) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport::new(Property::MinimalAsymmetric, subject, Regime::Exhaustive);
    let engine = opts.engine;
    match engine.nontrivial_automorphism(h, None) {
        Err(_) => {
            report.verdict = Verdict::BudgetExceeded;
            return report.finish(start);
        }
        Ok(Some(p)) => {
            report.verdict = Verdict::Fails;
            report.witness = Some(Witness::permutation(h, &p));
            report.push_check("asymmetric", Verdict::Fails, true, "subject is symmetric");
            return report.finish(start);
        }
        Ok(None) => {}
    }
    report.counters.engine_calls += 1;
    let n = h.n_vertices();
    if n > EXHAUSTIVE_VERTEX_LIMIT {
        report.verdict = Verdict::BudgetExceeded;
        report.push_check(
            "exhaustive",
            Verdict::BudgetExceeded,
            true,
            format!("{n} vertices exceed the limit of {EXHAUSTIVE_VERTEX_LIMIT}"),
        );
        return report.finish(start);
    }
    let outcome = scan(1u64 << n, opts.workers, |mask| {
        let size = mask.count_ones() as usize;
        if size <= 1 || size >= n {
            return Ok(Step::Skip);
        }
        let s: BTreeSet<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let sub = h.induced(&s).expect("subset in range");
        let (ran, ok) = examine(&engine, &sub, None, Need::Symmetry)?;
        if ok {
            Ok(Step::Pass { engine: ran })
        } else {
            let edges = (0..h.n_edges()).filter(|&e| h.edge(e).iter().all(|&v| s.contains(&(v as usize))));
            let sel = SubgraphSelector::new(s.iter().copied(), edges);
            Ok(Step::Fail {
                engine: ran,
                witness: Witness::subgraph(h, sel),
            })
        }
    });
    match outcome {
        Err(_) => report.verdict = Verdict::BudgetExceeded,
        Ok(o) => {
            report.counters.add(o.counters);
            if let Some(w) = o.failure {
                report.verdict = Verdict::Fails;
                report.witness = Some(w);
            }
        }
    }
    report.finish(start)
}

/// Every proper subgraph containing `seed` (edge subsets `M' ⊊ M`, vertices
/// covered ∪ `seed`) has a non-identity automorphism, or an involution,
/// preserving `seed` setwise.
fn seeded_subgraph_scan(
    h: &Hypergraph,
    seed: &BTreeSet<usize>,
    need: Need,
    spanning: bool,
    opts: &VerifyOptions,
) -> Result<ScanOutcome, BudgetExceeded> {
    let mut subsets = EdgeSubsets::new(h, Some(seed.clone()));
    subsets.spanning = spanning;
    let engine = opts.engine;
    scan(1u64 << h.n_edges(), opts.workers, |mask| subsets.evaluate(&engine, mask, need))
}

fn labelled(h: &Hypergraph, names: &[String]) -> BTreeSet<usize> {
    names
        .iter()
        .map(|n| h.find_label(n).unwrap_or_else(|| panic!("missing vertex {n}")))
        .collect()
}

/// Index map induced on the `E_i` edges (first `tk` edges of `G_{k,t}`) by
/// an automorphism: `Some(j)` with `φ(E_i) = E_j`, or `None` if some `E_i`
/// leaves the family.
fn induced_edge_map(h: &Hypergraph, tk: usize, p: &Permutation) -> Option<Vec<usize>> {
    let family: Vec<Vec<Vertex>> = h.edges()[..tk].to_vec();
    family
        .iter()
        .map(|e| {
            let mut img: Vec<Vertex> = e.iter().map(|&v| p.images()[v as usize]).collect();
            img.sort_unstable();
            family.iter().position(|f| *f == img)
        })
        .collect()
}

/// Structure checks of the cyclic family `G_{k,t}`: (1) every non-identity
/// automorphism permutes `{E_i}` by a fixed index shift `i ↦ i + c`;
/// (2) only the identity preserves `V(E_1)`; (3) every proper subgraph
/// containing `V(E_1)` has a non-identity automorphism preserving it.
/// For `k = 3` the checks are computed and reported, not asserted, and the
/// group order is compared with a brute-force count.
pub fn verify_shift_structure(k: usize, t: usize, opts: &VerifyOptions) -> VerificationReport {
    let start = Instant::now();
    let subject = format!("gkt k={k} t={t}");
    let mut report = VerificationReport::new(Property::ShiftStructure, &subject, Regime::Exhaustive);
    let h = match build_gkt(k, t) {
        Ok(h) => h,
        Err(e) => {
            report.push_check("parameters", Verdict::Fails, true, e.to_string());
            return report.finish(start);
        }
    };
    let assert = k >= 4;
    let engine = opts.engine;
    let tk = t * k;

    let group = match engine.automorphism_group(&h) {
        Ok(g) => g,
        Err(_) => {
            report.verdict = Verdict::BudgetExceeded;
            return report.finish(start);
        }
    };
    report.counters.engine_calls += 1;
    let order = group.order.clone();
    if k == 3 {
        let count = if h.n_vertices() <= 8 {
            brute::all_permutations(&h).len()
        } else {
            brute::backtrack(&h).len()
        };
        let agree = order == count.into();
        report.push_check(
            "group-order",
            if agree { Verdict::Holds } else { Verdict::Fails },
            true,
            format!("engine order {order}, brute-force count {count}"),
        );
    } else {
        report.push_check("group-order", Verdict::Holds, false, format!("order {order}"));
    }

    // (1) shift structure
    let elements = group.elements(h.n_vertices());
    let mut shifts = BTreeSet::new();
    let mut offenders = Vec::new();
    for p in elements.iter().filter(|p| !p.is_identity()) {
        match induced_edge_map(&h, tk, p) {
            None => offenders.push(format!("{} leaves the E-family", p.cycle_notation(|v| h.vertex_name(v)))),
            Some(map) => {
                let c = map[0];
                let is_shift = map.iter().enumerate().all(|(i, &j)| j == (i + c) % tk);
                if is_shift && c != 0 {
                    shifts.insert(c);
                } else {
                    let pretty: Vec<String> = map
                        .iter()
                        .enumerate()
                        .map(|(i, j)| format!("E_{}->E_{}", i + 1, j + 1))
                        .collect();
                    offenders.push(format!("non-shift edge map [{}]", pretty.join(" ")));
                }
            }
        }
    }
    let verdict = if offenders.is_empty() { Verdict::Holds } else { Verdict::Fails };
    let mut detail = format!(
        "{} non-identity automorphisms; shifts c in {:?}",
        elements.len() - 1,
        shifts.iter().collect::<Vec<_>>()
    );
    if let Some(first) = offenders.first() {
        let _ = write!(detail, "; {} not a shift, e.g. {first}", offenders.len());
    }
    report.push_check("item-1-shift", verdict, assert, detail);

    // (2) set-stabilizer of E_1
    let e1: BTreeSet<usize> = h.edge(0).iter().map(|&v| v as usize).collect();
    match engine.stabilizer_preserving(&h, &e1) {
        Ok(stab) => {
            report.counters.engine_calls += 1;
            let v = if stab.is_trivial() { Verdict::Holds } else { Verdict::Fails };
            report.push_check(
                "item-2-stabilizer",
                v,
                assert,
                format!("stabilizer of V(E_1) has order {}", stab.order),
            );
        }
        Err(_) => report.push_check("item-2-stabilizer", Verdict::BudgetExceeded, assert, "budget exceeded"),
    }

    // (3) subgraphs containing E_1; the strict variant drops at least one vertex
    for (name, spanning, asserted) in [
        ("item-3-subgraphs", true, assert),
        ("item-3-strict-subgraphs", false, false),
    ] {
        if h.n_edges() > EXHAUSTIVE_EDGE_LIMIT {
            report.push_check(
                name,
                Verdict::Holds,
                false,
                format!("skipped: {} edges exceed the exhaustive limit", h.n_edges()),
            );
            continue;
        }
        match seeded_subgraph_scan(&h, &e1, Need::Symmetry, spanning, opts) {
            Ok(o) => {
                report.counters.add(o.counters);
                let (v, detail) = match &o.failure {
                    None => (
                        Verdict::Holds,
                        format!("{} subgraphs, exhaustive", o.counters.subgraphs_examined),
                    ),
                    Some(w) => (Verdict::Fails, format!("counterexample {}", w.render())),
                };
                if asserted && report.witness.is_none() {
                    report.witness = o.failure;
                }
                report.push_check(name, v, asserted, detail);
            }
            Err(_) => report.push_check(name, Verdict::BudgetExceeded, asserted, "budget exceeded"),
        }
    }
    report.finish(start)
}

/// Restriction of every generator of `group` to `0..m` is the identity.
fn restricts_to_identity(gens: &[Permutation], m: usize) -> bool {
    gens.iter()
        .all(|g| g.restrict(m).is_some_and(|r| r.is_identity()))
}

/// The path-family checks for one `k ≥ 4`: the automorphism group of `G_k`,
/// its tail-pair stabilizer and tail-preserving involutions of its proper
/// subgraphs; asymmetry and minimal involution-freeness of `G*_k`; extension
/// and restriction of automorphisms across padding; and the stabilizers in
/// the padded graphs.
pub fn verify_path_family(k: usize, opts: &VerifyOptions) -> VerificationReport {
    let start = Instant::now();
    let subject = format!("gk/gk-star k={k}");
    let mut report = VerificationReport::new(Property::PathFamilySuite, &subject, Regime::Exhaustive);
    if k < 4 {
        report.push_check("parameters", Verdict::Fails, true, format!("k = {k}: requires k >= 4"));
        return report.finish(start);
    }
    let engine = opts.engine;
    let gk = build_gk(k).expect("k >= 4");
    let star = build_gk_star(k).expect("k >= 4");
    let n = gk.n_vertices();
    let budget = |report: &mut VerificationReport, name: &str| {
        report.push_check(name, Verdict::BudgetExceeded, true, "budget exceeded");
    };

    // Aut(G_k) = {id, v_i -> v_{2k-i}}
    let reflection = Permutation::from_images((0..n as Vertex).rev().collect()).expect("reversal");
    match engine.automorphism_group(&gk) {
        Ok(g) => {
            report.counters.engine_calls += 1;
            let ok = g.order == 2u32.into() && g.generators == vec![reflection.clone()];
            report.push_check(
                "gk-group",
                if ok { Verdict::Holds } else { Verdict::Fails },
                true,
                format!(
                    "order {}, generators [{}]",
                    g.order,
                    g.generators
                        .iter()
                        .map(|p| p.cycle_notation(|v| gk.vertex_name(v)))
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            );
        }
        Err(_) => budget(&mut report, "gk-group"),
    }

    // tail pair stabilizer
    let tail: BTreeSet<usize> = [n - 2, n - 1].into();
    match engine.stabilizer_preserving(&gk, &tail) {
        Ok(g) => {
            report.counters.engine_calls += 1;
            report.push_check(
                "gk-tail-stabilizer",
                if g.is_trivial() { Verdict::Holds } else { Verdict::Fails },
                true,
                format!("stabilizer of {{v_{}, v_{}}} has order {}", n - 1, n, g.order),
            );
        }
        Err(_) => budget(&mut report, "gk-tail-stabilizer"),
    }

    // proper subgraphs containing the tail pair have a tail-preserving involution
    match seeded_subgraph_scan(&gk, &tail, Need::Involution, true, opts) {
        Ok(o) => {
            report.counters.add(o.counters);
            let v = if o.failure.is_none() { Verdict::Holds } else { Verdict::Fails };
            let detail = match &o.failure {
                None => format!("{} subgraphs, exhaustive", o.counters.subgraphs_examined),
                Some(w) => format!("counterexample {}", w.render()),
            };
            if report.witness.is_none() {
                report.witness = o.failure;
            }
            report.push_check("gk-tail-involutions", v, true, detail);
        }
        Err(_) => budget(&mut report, "gk-tail-involutions"),
    }

    // G*_k
    let star_report = verify_minimal_involution_free(&star, &format!("gk-star k={k}"), opts);
    report.absorb("gk-star-minimal-involution-free", &star_report);
    if report.witness.is_none() {
        report.witness = star_report.witness.clone();
    }

    // padding: extension and restriction, for both graphs
    for (name, g) in [("gk", &gk), ("gk-star", &star)] {
        let padded = g.pad_two();
        let m = g.n_vertices();
        let original: BTreeSet<usize> = (0..m).collect();
        let result = (|| -> Result<(bool, bool), BudgetExceeded> {
            let aut = engine.automorphism_group(g)?;
            let extends = aut.generators.iter().all(|p| {
                let mut image: Vec<Vertex> = p.images().to_vec();
                image.extend((m..padded.n_vertices()).map(|v| v as Vertex));
                // fresh pair of edge i follows edge i
                for (i, e) in g.edges().iter().enumerate() {
                    let mut img: Vec<Vertex> = e.iter().map(|&v| p.images()[v as usize]).collect();
                    img.sort_unstable();
                    let j = g.edges().iter().position(|f| *f == img).expect("automorphism");
                    image[m + 2 * i] = (m + 2 * j) as Vertex;
                    image[m + 2 * i + 1] = (m + 2 * j + 1) as Vertex;
                }
                padded.preserves_edges(&image)
            });
            let stab = engine.stabilizer_preserving(&padded, &original)?;
            let restricts = stab.generators.iter().all(|p| {
                p.restrict(m)
                    .is_some_and(|r| g.is_automorphism(&r).unwrap_or(false))
            });
            Ok((extends, restricts))
        })();
        match result {
            Ok((extends, restricts)) => {
                report.counters.engine_calls += 2;
                report.push_check(
                    &format!("{name}-padding"),
                    if extends && restricts { Verdict::Holds } else { Verdict::Fails },
                    true,
                    format!("generators extend: {extends}; stabilizer of original vertices restricts: {restricts}"),
                );
            }
            Err(_) => budget(&mut report, &format!("{name}-padding")),
        }
    }

    // padded stabilizers restrict to the identity
    let head_tail = labelled(&gk, &["v_1".into(), format!("v_{}", n - 1), format!("v_{n}")]);
    match engine.stabilizer_preserving(&gk.pad_two(), &head_tail) {
        Ok(g) => {
            report.counters.engine_calls += 1;
            let ok = restricts_to_identity(&g.generators, n);
            report.push_check(
                "padded-gk-stabilizer",
                if ok { Verdict::Holds } else { Verdict::Fails },
                true,
                format!(
                    "stabilizer of {{v_1, v_{}, v_{n}}} has order {}; identity on the original vertices: {ok}",
                    n - 1,
                    g.order
                ),
            );
        }
        Err(_) => budget(&mut report, "padded-gk-stabilizer"),
    }
    let x_tail = labelled(&star, &["x".into(), format!("v_{n}")]);
    match engine.stabilizer_preserving(&star.pad_two(), &x_tail) {
        Ok(g) => {
            report.counters.engine_calls += 1;
            let ok = restricts_to_identity(&g.generators, star.n_vertices());
            report.push_check(
                "padded-gk-star-stabilizer",
                if ok { Verdict::Holds } else { Verdict::Fails },
                true,
                format!(
                    "stabilizer of {{x, v_{n}}} has order {}; identity on the original vertices: {ok}",
                    g.order
                ),
            );
        }
        Err(_) => budget(&mut report, "padded-gk-star-stabilizer"),
    }

    report.finish(start)
}
