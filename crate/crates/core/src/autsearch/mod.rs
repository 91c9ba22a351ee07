//! Automorphism groups, set-stabilizers, involutions and canonical forms.
//!
//! A hypergraph is searched through its incidence structure: one node per
//! vertex, one per edge, vertex nodes adjacent to the edges containing them.
//! Vertex and edge nodes start in separate colour classes (edges further split
//! by size), so refinement sees degrees and edge sizes from the first round.
//! A distinguished vertex set becomes its own colour class, which turns every
//! search into a search for the set-stabilizer.
//!
//! All searches are bounded by a node budget. Running out is reported as
//! [`BudgetExceeded`], never as a verdict.

pub mod brute;
mod partition;
mod search;

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use num_bigint::BigUint;
use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::hypergraph::{Hypergraph, Permutation, Vertex};

pub use partition::{ColoredPartition, Incidence};
use search::{Orbits, Searcher};

pub const DEFAULT_BUDGET: u64 = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("search budget of {budget} nodes exceeded")]
pub struct BudgetExceeded {
    pub budget: u64,
}

/// A finite structure whose points can be permuted.
pub trait Structure {
    /// Relabeling-invariant comparison key; equal keys mean equal structures.
    type Key: Ord + Clone;

    fn n_points(&self) -> usize;

    /// Points must be nodes `0..n_points`, and their initial cells must come
    /// first.
    fn incidence(&self) -> Incidence;

    fn is_automorphism(&self, image: &[u32]) -> bool;

    /// The structure after renaming point `x` to `relabel[x]`.
    fn relabeled(&self, relabel: &[u32]) -> Self::Key;
}

impl Structure for Hypergraph {
    type Key = Vec<Vec<Vertex>>;

    fn n_points(&self) -> usize {
        self.n_vertices()
    }

    fn incidence(&self) -> Incidence {
        let n = self.n_vertices();
        let m = self.n_edges();
        let mut adj: Vec<Vec<(u32, u8)>> = vec![Vec::new(); n + m];
        for (id, e) in self.edges().iter().enumerate() {
            let node = (n + id) as u32;
            for &v in e {
                adj[v as usize].push((node, 0));
                adj[node as usize].push((v, 0));
            }
        }
        let mut by_size: Vec<(usize, u32)> = self
            .edges()
            .iter()
            .enumerate()
            .map(|(id, e)| (e.len(), (n + id) as u32))
            .collect();
        by_size.sort_unstable();
        let mut cells = vec![(0..n as u32).collect::<Vec<_>>()];
        let mut last = None;
        for (size, node) in by_size {
            if last != Some(size) {
                cells.push(Vec::new());
                last = Some(size);
            }
            cells.last_mut().unwrap().push(node);
        }
        Incidence::new(n, 1, adj, cells)
    }

    fn is_automorphism(&self, image: &[u32]) -> bool {
        self.preserves_edges(image)
    }

    fn relabeled(&self, relabel: &[u32]) -> Self::Key {
        let mut edges: Vec<Vec<Vertex>> = self
            .edges()
            .iter()
            .map(|e| {
                let mut img: Vec<Vertex> = e.iter().map(|&v| relabel[v as usize]).collect();
                img.sort_unstable();
                img
            })
            .collect();
        edges.sort_unstable();
        edges
    }
}

fn serialize_order<S: Serializer>(order: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&order.to_string())
}

/// Generators, order and vertex orbits of an automorphism group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutGroupDescription {
    pub generators: Vec<Permutation>,
    #[serde(serialize_with = "serialize_order")]
    pub order: BigUint,
    pub orbits: Vec<Vec<usize>>,
}

impl AutGroupDescription {
    pub fn is_trivial(&self) -> bool {
        self.order == BigUint::from(1u32)
    }

    /// Order as `u64`, if it fits.
    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(&self.order).ok()
    }

    /// All group elements by closure under the generators, sorted. Meant
    /// for small groups.
    pub fn elements(&self, n: usize) -> Vec<Permutation> {
        let id = Permutation::identity(n);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in &self.generators {
                let q = g.compose(&p);
                if seen.insert(q.clone()) {
                    out.push(q.clone());
                    queue.push_back(q);
                }
            }
        }
        out.sort();
        out
    }
}

/// Canonical edge list of an isomorphism class, with a SHA-256 digest.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalCertificate {
    pub n_vertices: usize,
    pub edges: Vec<Vec<Vertex>>,
    pub digest: String,
}

impl CanonicalCertificate {
    fn new(n_vertices: usize, edges: Vec<Vec<Vertex>>) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(n_vertices.to_le_bytes());
        for e in &edges {
            hasher.update((e.len() as u64).to_le_bytes());
            for v in e {
                hasher.update(v.to_le_bytes());
            }
        }
        let digest = hasher
            .finalize()
            .iter()
            .take(16)
            .map(|b| format!("{b:02x}"))
            .collect();
        CanonicalCertificate {
            n_vertices,
            edges,
            digest,
        }
    }

    /// The canonical representative itself.
    pub fn hypergraph(&self) -> Hypergraph {
        Hypergraph::new(
            self.n_vertices,
            self.edges.iter().map(|e| e.iter().map(|&v| v as usize)),
        )
        .expect("certificate edges are valid")
    }
}

/// Search entry point carrying the node budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Engine {
    budget: u64,
}

impl Default for Engine {
    fn default() -> Self {
        Engine {
            budget: DEFAULT_BUDGET,
        }
    }
}

fn seed_mask(n: usize, s: &BTreeSet<usize>) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &v in s {
        if v < n {
            mask[v] = true;
        }
    }
    mask
}

fn to_perm(image: Vec<u32>) -> Permutation {
    Permutation::from_images(image).expect("search produces bijections")
}

impl Engine {
    pub fn with_budget(budget: u64) -> Self {
        Engine {
            budget: budget.max(1),
        }
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    fn searcher<'a, S: Structure>(&self, s: &'a S, seed: Option<&BTreeSet<usize>>) -> Searcher<'a, S> {
        let mut inc = s.incidence();
        if let Some(seed) = seed {
            inc = inc.with_seed(&seed_mask(s.n_points(), seed));
        }
        Searcher::new(s, inc, self.budget)
    }

    /// Automorphism group of any [`Structure`], optionally restricted to
    /// the maps preserving `seed` setwise.
    pub fn group_of<S: Structure>(
        &self,
        s: &S,
        seed: Option<&BTreeSet<usize>>,
    ) -> Result<AutGroupDescription, BudgetExceeded> {
        let mut searcher = self.searcher(s, seed);
        let (root, _) = searcher.root()?;
        let mut gens = Vec::new();
        let order = searcher.group(&root, &mut gens, false)?;
        let orbits = Orbits::new(s.n_points(), &gens).classes();
        Ok(AutGroupDescription {
            generators: gens.into_iter().map(to_perm).collect(),
            order,
            orbits,
        })
    }

    /// Some non-identity automorphism (preserving `seed` setwise), if any.
    pub fn nontrivial_automorphism_of<S: Structure>(
        &self,
        s: &S,
        seed: Option<&BTreeSet<usize>>,
    ) -> Result<Option<Permutation>, BudgetExceeded> {
        let mut searcher = self.searcher(s, seed);
        let (root, _) = searcher.root()?;
        let mut gens = Vec::new();
        searcher.group(&root, &mut gens, true)?;
        Ok(gens.into_iter().next().map(to_perm))
    }

    /// Some involution (preserving `seed` setwise), if any.
    pub fn involution_of<S: Structure>(
        &self,
        s: &S,
        seed: Option<&BTreeSet<usize>>,
    ) -> Result<Option<Permutation>, BudgetExceeded> {
        let mut searcher = self.searcher(s, seed);
        let (root, _) = searcher.root()?;
        Ok(searcher.involution(&root)?.map(to_perm))
    }

    /// Least relabeled key of `s` and the relabeling producing it.
    pub fn canonical_key_of<S: Structure>(&self, s: &S) -> Result<(S::Key, Permutation), BudgetExceeded> {
        let mut searcher = self.searcher(s, None);
        let (root, _) = searcher.root()?;
        let mut gens = Vec::new();
        searcher.group(&root, &mut gens, false)?;
        let (key, relabel) = searcher.canonical(&root, &gens)?;
        Ok((key, to_perm(relabel)))
    }

    pub fn automorphism_group(&self, h: &Hypergraph) -> Result<AutGroupDescription, BudgetExceeded> {
        self.group_of(h, None)
    }

    /// Automorphisms `φ` with `φ(s) = s`.
    pub fn stabilizer_preserving(
        &self,
        h: &Hypergraph,
        s: &BTreeSet<usize>,
    ) -> Result<AutGroupDescription, BudgetExceeded> {
        self.group_of(h, Some(s))
    }

    pub fn is_asymmetric(&self, h: &Hypergraph) -> Result<bool, BudgetExceeded> {
        Ok(self.nontrivial_automorphism(h, None)?.is_none())
    }

    /// A non-identity automorphism preserving `seed` setwise. Twin vertices
    /// (same incident edges, same side of `seed`) answer immediately.
    pub fn nontrivial_automorphism(
        &self,
        h: &Hypergraph,
        seed: Option<&BTreeSet<usize>>,
    ) -> Result<Option<Permutation>, BudgetExceeded> {
        if let Some(p) = twin_transposition(h, seed) {
            return Ok(Some(p));
        }
        self.nontrivial_automorphism_of(h, seed)
    }

    pub fn has_involution(&self, h: &Hypergraph) -> Result<bool, BudgetExceeded> {
        Ok(self.find_involution(h, None)?.is_some())
    }

    /// An involution preserving `seed` setwise, found by paired
    /// backtracking after the twin shortcut.
    pub fn find_involution(
        &self,
        h: &Hypergraph,
        seed: Option<&BTreeSet<usize>>,
    ) -> Result<Option<Permutation>, BudgetExceeded> {
        if let Some(p) = twin_transposition(h, seed) {
            return Ok(Some(p));
        }
        self.involution_of(h, seed)
    }

    pub fn canonical_form(&self, h: &Hypergraph) -> Result<CanonicalCertificate, BudgetExceeded> {
        let (edges, _) = self.canonical_key_of(h)?;
        Ok(CanonicalCertificate::new(h.n_vertices(), edges))
    }

    pub fn are_isomorphic(&self, a: &Hypergraph, b: &Hypergraph) -> Result<bool, BudgetExceeded> {
        if a.n_vertices() != b.n_vertices() || a.n_edges() != b.n_edges() {
            return Ok(false);
        }
        Ok(self.canonical_form(a)? == self.canonical_form(b)?)
    }
}

/// Transposition of the first pair of vertices with identical incident edge
/// sets lying on the same side of `seed`.
pub fn twin_transposition(h: &Hypergraph, seed: Option<&BTreeSet<usize>>) -> Option<Permutation> {
    let n = h.n_vertices();
    let inc = h.incidence();
    let mut first: HashMap<(bool, &[usize]), usize> = HashMap::with_capacity(n);
    for (v, edges) in inc.iter().enumerate() {
        let side = seed.is_some_and(|s| s.contains(&v));
        if let Some(&u) = first.get(&(side, edges.as_slice())) {
            return Some(Permutation::transposition(n, u, v));
        }
        first.insert((side, edges.as_slice()), v);
    }
    None
}

pub fn automorphism_group(h: &Hypergraph) -> Result<AutGroupDescription, BudgetExceeded> {
    Engine::default().automorphism_group(h)
}

pub fn is_asymmetric(h: &Hypergraph) -> Result<bool, BudgetExceeded> {
    Engine::default().is_asymmetric(h)
}

pub fn has_involution(h: &Hypergraph) -> Result<bool, BudgetExceeded> {
    Engine::default().has_involution(h)
}

pub fn stabilizer_preserving(h: &Hypergraph, s: &BTreeSet<usize>) -> Result<AutGroupDescription, BudgetExceeded> {
    Engine::default().stabilizer_preserving(h, s)
}

pub fn canonical_form(h: &Hypergraph) -> Result<CanonicalCertificate, BudgetExceeded> {
    Engine::default().canonical_form(h)
}

pub fn are_isomorphic(a: &Hypergraph, b: &Hypergraph) -> Result<bool, BudgetExceeded> {
    Engine::default().are_isomorphic(a, b)
}
