//! Hypergraphs on contiguous vertex indices, permutations acting on them, and
//! the structure algebra (sub-hypergraphs, set-complement, padding, degrees,
//! connectivity) used by every other module.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Vertex index. Vertices of a hypergraph are always `0..n_vertices`.
pub type Vertex = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("vertex {vertex} out of range for a hypergraph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {edge:?} repeats a vertex")]
    RepeatedVertex { edge: Vec<usize> },
    #[error("duplicate edge {edge:?}")]
    DuplicateEdge { edge: Vec<usize> },
    #[error("edge index {edge} out of range ({m} edges)")]
    EdgeOutOfRange { edge: usize, m: usize },
    #[error("selected edge {edge} is not contained in the selected vertex set")]
    EdgeOutsideSelection { edge: usize },
    #[error("permutation has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("image list is not a bijection on 0..{n}")]
    NotABijection { n: usize },
}

/// A bijection on `0..n`, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    image: Vec<Vertex>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n as Vertex).collect(),
        }
    }

    pub fn from_images(image: Vec<Vertex>) -> Result<Self, HypergraphError> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &x in &image {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(HypergraphError::NotABijection { n });
            }
            seen[x] = true;
        }
        Ok(Permutation { image })
    }

    /// Transposition of `a` and `b` on `0..n`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.image.swap(a, b);
        p
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn images(&self) -> &[Vertex] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.image[v] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Non-identity and self-inverse.
    pub fn is_involution(&self) -> bool {
        !self.is_identity()
            && self
                .image
                .iter()
                .enumerate()
                .all(|(i, &x)| self.image[x as usize] as usize == i)
    }

    /// `self` after `other`: `v ↦ self(other(v))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            image: other.image.iter().map(|&x| self.image[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.image.len()];
        for (i, &x) in self.image.iter().enumerate() {
            inv[x as usize] = i as Vertex;
        }
        Permutation { image: inv }
    }

    /// Non-trivial cycles, each starting at its smallest element, ordered by
    /// that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.image.len()];
        let mut out = Vec::new();
        for start in 0..self.image.len() {
            if seen[start] || self.image[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cycle.push(v);
                v = self.image[v] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle notation using `name` for each point; `()` for the identity.
    pub fn cycle_notation(&self, name: impl Fn(usize) -> String) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let parts: Vec<String> = c.iter().map(|&v| name(v)).collect();
                format!("({})", parts.join(" "))
            })
            .collect()
    }

    /// Restriction to `0..m`, provided those points are mapped into `0..m`.
    pub fn restrict(&self, m: usize) -> Option<Permutation> {
        let image: Vec<Vertex> = self.image[..m].to_vec();
        if image.iter().all(|&x| (x as usize) < m) {
            Some(Permutation { image })
        } else {
            None
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation(|v| v.to_string()))
    }
}

/// A sub-hypergraph request: a vertex subset plus a subset of edge ids (edge
/// positions in the parent's edge list).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgraphSelector {
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<usize>,
}

impl SubgraphSelector {
    pub fn new(
        vertices: impl IntoIterator<Item = usize>,
        edges: impl IntoIterator<Item = usize>,
    ) -> Self {
        SubgraphSelector {
            vertices: vertices.into_iter().collect(),
            edges: edges.into_iter().collect(),
        }
    }

    /// The whole of `h`.
    pub fn full(h: &Hypergraph) -> Self {
        Self::new(0..h.n_vertices(), 0..h.n_edges())
    }

    /// Edges `edges` together with exactly the vertices they cover.
    pub fn covering(h: &Hypergraph, edges: impl IntoIterator<Item = usize>) -> Self {
        let edges: BTreeSet<usize> = edges.into_iter().collect();
        let vertices = edges
            .iter()
            .flat_map(|&e| h.edge(e).iter().map(|&v| v as usize))
            .collect();
        SubgraphSelector { vertices, edges }
    }
}

/// A finite hypergraph on vertices `0..n`.
///
/// Edges keep their insertion order, which serves as the edge id. Each edge is
/// stored sorted; duplicate edges are rejected. Equality compares the vertex
/// count, the labels and the edge *set*.
#[derive(Debug, Clone)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<Vertex>>,
    /// Sorted copy of `edges` for membership tests.
    index: Vec<Vec<Vertex>>,
    labels: BTreeMap<usize, String>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.index == other.index && self.labels == other.labels
    }
}

impl Eq for Hypergraph {}

impl Hypergraph {
    pub fn new<E, I>(n: usize, edges: E) -> Result<Self, HypergraphError>
    where
        E: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        let mut list = Vec::new();
        for e in edges {
            let raw: Vec<usize> = e.into_iter().collect();
            let mut edge: Vec<Vertex> = Vec::with_capacity(raw.len());
            for &v in &raw {
                if v >= n {
                    return Err(HypergraphError::VertexOutOfRange { vertex: v, n });
                }
                edge.push(v as Vertex);
            }
            edge.sort_unstable();
            if edge.windows(2).any(|w| w[0] == w[1]) {
                return Err(HypergraphError::RepeatedVertex { edge: raw });
            }
            list.push(edge);
        }
        Self::from_sorted_edges(n, list)
    }

    /// Edges already sorted and in range; only duplicates are checked.
    fn from_sorted_edges(n: usize, edges: Vec<Vec<Vertex>>) -> Result<Self, HypergraphError> {
        let mut index = edges.clone();
        index.sort_unstable();
        if let Some(w) = index.windows(2).find(|w| w[0] == w[1]) {
            return Err(HypergraphError::DuplicateEdge {
                edge: w[0].iter().map(|&v| v as usize).collect(),
            });
        }
        Ok(Hypergraph {
            n,
            edges,
            index,
            labels: BTreeMap::new(),
        })
    }

    pub fn edgeless(n: usize) -> Self {
        Hypergraph {
            n,
            edges: Vec::new(),
            index: Vec::new(),
            labels: BTreeMap::new(),
        }
    }

    /// The complete `k`-graph on `n` vertices, edges in lexicographic order.
    pub fn complete(n: usize, k: usize) -> Self {
        let edges = k_subsets(n, k);
        Self::from_sorted_edges(n, edges).expect("k-subsets are distinct")
    }

    pub fn with_labels<I, S>(mut self, labels: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = (usize, S)>,
        S: Into<String>,
    {
        for (v, name) in labels {
            self.set_label(v, name)?;
        }
        Ok(self)
    }

    pub fn set_label(&mut self, v: usize, name: impl Into<String>) -> Result<(), HypergraphError> {
        if v >= self.n {
            return Err(HypergraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        self.labels.insert(v, name.into());
        Ok(())
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<Vertex>] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &[Vertex] {
        &self.edges[id]
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    /// Label of `v`, or its index when unlabeled.
    pub fn vertex_name(&self, v: usize) -> String {
        self.label(v).map_or_else(|| v.to_string(), str::to_string)
    }

    /// Vertex carrying label `name`.
    pub fn find_label(&self, name: &str) -> Option<usize> {
        self.labels
            .iter()
            .find(|(_, l)| l.as_str() == name)
            .map(|(&v, _)| v)
    }

    pub fn contains_edge(&self, edge: &[Vertex]) -> bool {
        self.index.binary_search_by(|e| e.as_slice().cmp(edge)).is_ok()
    }

    /// Common edge size if all edges have the same size.
    pub fn uniformity(&self) -> Option<usize> {
        let first = self.edges.first()?.len();
        self.edges.iter().all(|e| e.len() == first).then_some(first)
    }

    pub fn is_k_uniform(&self, k: usize) -> bool {
        self.edges.iter().all(|e| e.len() == k)
    }

    pub fn degree(&self, v: usize) -> Result<usize, HypergraphError> {
        if v >= self.n {
            return Err(HypergraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(self
            .edges
            .iter()
            .filter(|e| e.binary_search(&(v as Vertex)).is_ok())
            .count())
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                d[v as usize] += 1;
            }
        }
        d
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Incident edge ids of every vertex, in edge order.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (id, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v as usize].push(id);
            }
        }
        inc
    }

    /// Vertices covered by at least one edge.
    pub fn covered_vertices(&self) -> BTreeSet<usize> {
        self.edges
            .iter()
            .flat_map(|e| e.iter().map(|&v| v as usize))
            .collect()
    }

    /// Vertices in `s` reindexed in increasing order, with edges fully
    /// contained in `s`. Labels of kept vertices carry over.
    pub fn induced(&self, s: &BTreeSet<usize>) -> Result<Hypergraph, HypergraphError> {
        let map = self.reindex(s)?;
        let edges: Vec<Vec<Vertex>> = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| map[v as usize] != Vertex::MAX))
            .map(|e| e.iter().map(|&v| map[v as usize]).collect())
            .collect();
        Ok(self.rebuild(s, &map, edges))
    }

    /// Vertices `sel.vertices` (reindexed) with exactly the edges `sel.edges`.
    pub fn subgraph(&self, sel: &SubgraphSelector) -> Result<Hypergraph, HypergraphError> {
        let map = self.reindex(&sel.vertices)?;
        let mut edges = Vec::with_capacity(sel.edges.len());
        for &id in &sel.edges {
            if id >= self.edges.len() {
                return Err(HypergraphError::EdgeOutOfRange {
                    edge: id,
                    m: self.edges.len(),
                });
            }
            let e = &self.edges[id];
            if e.iter().any(|&v| map[v as usize] == Vertex::MAX) {
                return Err(HypergraphError::EdgeOutsideSelection { edge: id });
            }
            edges.push(e.iter().map(|&v| map[v as usize]).collect());
        }
        Ok(self.rebuild(&sel.vertices, &map, edges))
    }

    fn reindex(&self, s: &BTreeSet<usize>) -> Result<Vec<Vertex>, HypergraphError> {
        let mut map = vec![Vertex::MAX; self.n];
        for (new, &old) in s.iter().enumerate() {
            if old >= self.n {
                return Err(HypergraphError::VertexOutOfRange { vertex: old, n: self.n });
            }
            map[old] = new as Vertex;
        }
        Ok(map)
    }

    fn rebuild(&self, s: &BTreeSet<usize>, map: &[Vertex], edges: Vec<Vec<Vertex>>) -> Hypergraph {
        // Monotone reindexing keeps each edge sorted.
        let mut h = Self::from_sorted_edges(s.len(), edges).expect("sub-family of distinct edges");
        for (&v, name) in &self.labels {
            if map[v] != Vertex::MAX {
                h.labels.insert(map[v] as usize, name.clone());
            }
        }
        h
    }

    /// Each edge `M` replaced by `X − M`, same vertex set and labels.
    pub fn set_complement(&self) -> Hypergraph {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                (0..self.n as Vertex)
                    .filter(|v| e.binary_search(v).is_err())
                    .collect()
            })
            .collect();
        let mut h = Self::from_sorted_edges(self.n, edges).expect("complement is injective");
        h.labels = self.labels.clone();
        h
    }

    /// Appends two fresh vertices to every edge. The fresh pair of edge `i`
    /// is `n + 2i, n + 2i + 1`.
    pub fn pad_two(&self) -> Hypergraph {
        let n = self.n;
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let mut e = e.clone();
                e.push((n + 2 * i) as Vertex);
                e.push((n + 2 * i + 1) as Vertex);
                e
            })
            .collect();
        let mut h = Self::from_sorted_edges(n + 2 * self.edges.len(), edges)
            .expect("padding keeps edges distinct");
        h.labels = self.labels.clone();
        if !self.labels.is_empty() {
            for i in 0..self.edges.len() {
                h.labels.insert(n + 2 * i, format!("~{i}a"));
                h.labels.insert(n + 2 * i + 1, format!("~{i}b"));
            }
        }
        h
    }

    /// Relabels every edge by `p`; labels move with their vertices.
    pub fn apply(&self, p: &Permutation) -> Result<Hypergraph, HypergraphError> {
        self.check_len(p)?;
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let mut img: Vec<Vertex> = e.iter().map(|&v| p.image[v as usize]).collect();
                img.sort_unstable();
                img
            })
            .collect();
        let mut h = Self::from_sorted_edges(self.n, edges).expect("bijection keeps edges distinct");
        h.labels = self
            .labels
            .iter()
            .map(|(&v, l)| (p.apply(v), l.clone()))
            .collect();
        Ok(h)
    }

    pub fn is_automorphism(&self, p: &Permutation) -> Result<bool, HypergraphError> {
        self.check_len(p)?;
        Ok(self.preserves_edges(p.images()))
    }

    /// Edge-set preservation by an image list of the right length.
    pub fn preserves_edges(&self, image: &[Vertex]) -> bool {
        let mut buf = Vec::new();
        self.edges.iter().all(|e| {
            buf.clear();
            buf.extend(e.iter().map(|&v| image[v as usize]));
            buf.sort_unstable();
            self.contains_edge(&buf)
        })
    }

    fn check_len(&self, p: &Permutation) -> Result<(), HypergraphError> {
        if p.len() != self.n {
            return Err(HypergraphError::LengthMismatch {
                expected: self.n,
                got: p.len(),
            });
        }
        Ok(())
    }

    /// Classes of the "shares an edge" relation; isolated vertices are
    /// singletons. Classes are sorted, ordered by smallest element.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &self.edges {
            if let Some((&first, rest)) = e.split_first() {
                for &v in rest {
                    let a = find(&mut parent, first as usize);
                    let b = find(&mut parent, v as usize);
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..self.n {
            let r = find(&mut parent, v);
            classes.entry(r).or_default().push(v);
        }
        classes.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<Vertex> = (0..k as Vertex).collect();
    loop {
        out.push(cur.clone());
        // rightmost position that can still advance
        let Some(i) = (0..k).rev().find(|&i| (cur[i] as usize) < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}
