//! Deterministic generators for the hypergraph families.
//!
//! Paper-style vertex names live in the label map: `v_i`, `u_i`, `v^j_i`, `x`
//! for the cyclic families, and `G(i_l,…).v_i` / `G*.x` for the layered
//! family. All indices in labels are 1-based.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{family}: {message}")]
    InvalidParameters { family: Family, message: String },
    #[error("{family}: missing parameter --{name}")]
    MissingParameter { family: Family, name: &'static str },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    X1,
    T,
    SmallAsym,
    Gkt,
    GktCirc,
    Gk,
    GkStar,
    Gks,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::X1,
        Family::T,
        Family::SmallAsym,
        Family::Gkt,
        Family::GktCirc,
        Family::Gk,
        Family::GkStar,
        Family::Gks,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::X1 => "x1",
            Family::T => "t",
            Family::SmallAsym => "small-asym",
            Family::Gkt => "gkt",
            Family::GktCirc => "gkt-circ",
            Family::Gk => "gk",
            Family::GkStar => "gk-star",
            Family::Gks => "gks",
        }
    }

    pub fn parse(name: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == name)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A family together with the parameters it needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConstructionSpec {
    pub family: Family,
    pub k: Option<usize>,
    pub t: Option<usize>,
    pub s: Option<usize>,
    pub n: Option<usize>,
}

impl ConstructionSpec {
    pub fn new(family: Family) -> Self {
        ConstructionSpec {
            family,
            k: None,
            t: None,
            s: None,
            n: None,
        }
    }

    pub fn k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    pub fn t(mut self, t: usize) -> Self {
        self.t = Some(t);
        self
    }

    pub fn s(mut self, s: usize) -> Self {
        self.s = Some(s);
        self
    }

    pub fn n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    fn need(&self, value: Option<usize>, name: &'static str) -> Result<usize, ConstructionError> {
        value.ok_or(ConstructionError::MissingParameter {
            family: self.family,
            name,
        })
    }

    pub fn build(&self) -> Result<Construction, ConstructionError> {
        let hypergraph = match self.family {
            Family::X1 => build_x1(),
            Family::T => build_t(self.need(self.n, "n")?)?,
            Family::SmallAsym => build_small_asym(self.need(self.k, "k")?)?,
            Family::Gkt => build_gkt(self.need(self.k, "k")?, self.need(self.t, "t")?)?,
            Family::GktCirc => build_gkt_circ(self.need(self.k, "k")?, self.need(self.t, "t")?)?,
            Family::Gk => build_gk(self.need(self.k, "k")?)?,
            Family::GkStar => build_gk_star(self.need(self.k, "k")?)?,
            Family::Gks => {
                let layered = build_gks(self.need(self.k, "k")?, self.need(self.s, "s")?)?;
                return Ok(Construction {
                    hypergraph: layered.hypergraph,
                    copies: Some(layered.copies),
                });
            }
        };
        Ok(Construction {
            hypergraph,
            copies: None,
        })
    }

    /// Short description such as `gkt-circ k=4 t=2`.
    pub fn describe(&self) -> String {
        let mut out = self.family.name().to_string();
        for (name, v) in [("k", self.k), ("t", self.t), ("s", self.s), ("n", self.n)] {
            if let Some(v) = v {
                out.push_str(&format!(" {name}={v}"));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub hypergraph: Hypergraph,
    /// Copy address map, for the layered family only.
    pub copies: Option<Vec<CopyRecord>>,
}

fn invalid(family: Family, message: impl Into<String>) -> ConstructionError {
    ConstructionError::InvalidParameters {
        family,
        message: message.into(),
    }
}

/// Edges of X₁: the asymmetric 6-vertex graph whose canonical certificate is
/// least among all asymmetric 6-vertex graphs. A test re-derives it.
pub const X1_EDGES: [[usize; 2]; 7] = [[0, 3], [1, 5], [2, 4], [2, 5], [3, 4], [3, 5], [4, 5]];

pub fn build_x1() -> Hypergraph {
    Hypergraph::new(6, X1_EDGES.iter().map(|e| e.iter().copied())).expect("valid graph")
}

/// Spider with centre 0 and legs of lengths 1, 2 and `n - 4`; asymmetric
/// because the three leg lengths differ.
pub fn build_t(n: usize) -> Result<Hypergraph, ConstructionError> {
    if n < 7 {
        return Err(invalid(
            Family::T,
            format!("n = {n}: asymmetric trees need at least 7 vertices"),
        ));
    }
    let mut edges = vec![vec![0, 1], vec![0, 2], vec![2, 3], vec![0, 4]];
    for v in 4..n - 1 {
        edges.push(vec![v, v + 1]);
    }
    Ok(Hypergraph::new(n, edges).expect("valid tree"))
}

/// An asymmetric `k`-graph on `k + 2` vertices, `k ≥ 4`: the set-complement
/// of X₁ for `k = 4` and of the spider on `k + 2` vertices otherwise.
pub fn build_small_asym(k: usize) -> Result<Hypergraph, ConstructionError> {
    match k {
        0..=3 => Err(invalid(Family::SmallAsym, format!("k = {k}: requires k >= 4"))),
        4 => Ok(build_x1().set_complement()),
        _ => Ok(build_t(k + 2)?.set_complement()),
    }
}

/// Vertex numbering of the cyclic family: `v_i`, then `u_i`, then one block
/// of `v^j_i` per `j`, then `x` (circ variant). `i` is taken modulo `tk`.
struct CyclicLayout {
    k: usize,
    tk: usize,
}

impl CyclicLayout {
    fn wrap(&self, i: usize) -> usize {
        (i - 1) % self.tk
    }
    fn v(&self, i: usize) -> usize {
        self.wrap(i)
    }
    fn u(&self, i: usize) -> usize {
        self.tk + self.wrap(i)
    }
    fn vj(&self, j: usize, i: usize) -> usize {
        (1 + j) * self.tk + self.wrap(i)
    }
    fn n_vertices(&self) -> usize {
        (self.k - 1) * self.tk
    }
    fn x(&self) -> usize {
        self.n_vertices()
    }

    fn labels(&self) -> Vec<(usize, String)> {
        let mut out = Vec::with_capacity(self.n_vertices());
        for i in 1..=self.tk {
            out.push((self.v(i), format!("v_{i}")));
            out.push((self.u(i), format!("u_{i}")));
            for j in 1..=self.k - 3 {
                out.push((self.vj(j, i), format!("v^{j}_{i}")));
            }
        }
        out
    }

    /// `E_i = {v_i, u_i, v^1_i, …, v^{k-3}_i, v_{i+1}}`.
    fn e(&self, i: usize) -> Vec<usize> {
        let mut e = vec![self.v(i), self.u(i)];
        e.extend((1..=self.k - 3).map(|j| self.vj(j, i)));
        e.push(self.v(i + 1));
        e
    }

    /// `E_{i,j} = {v^j_i, …, v^j_{i+k-1}}`.
    fn window(&self, i: usize, j: usize) -> Vec<usize> {
        (i..i + self.k).map(|idx| self.vj(j, idx)).collect()
    }

    fn edges(&self, t: usize) -> Vec<Vec<usize>> {
        let mut edges: Vec<Vec<usize>> = (1..=self.tk).map(|i| self.e(i)).collect();
        for j in 1..=self.k - 3 {
            for s in 0..t {
                edges.push(self.window(j + s * self.k, j));
            }
        }
        edges
    }
}

fn check_kt(family: Family, k: usize, t: usize) -> Result<CyclicLayout, ConstructionError> {
    if k < 3 {
        return Err(invalid(family, format!("k = {k}: requires k >= 3")));
    }
    if t < (k - 2).max(1) {
        return Err(invalid(family, format!("t = {t}: requires t >= k - 2 = {}", k - 2)));
    }
    Ok(CyclicLayout { k, tk: t * k })
}

/// The cyclic `k`-graph with edges `E_i` (`i ∈ [tk]`) and windows
/// `E_{j+sk, j}`; edge order is `E_1 … E_{tk}` then the windows by `j`, `s`.
pub fn build_gkt(k: usize, t: usize) -> Result<Hypergraph, ConstructionError> {
    let layout = check_kt(Family::Gkt, k, t)?;
    Ok(Hypergraph::new(layout.n_vertices(), layout.edges(t))
        .expect("valid construction")
        .with_labels(layout.labels())
        .expect("labels in range"))
}

/// [`build_gkt`] plus the vertex `x` and the edge
/// `E = {v_1, u_1, v^1_1, …, v^{k-3}_1, x}` (last edge).
pub fn build_gkt_circ(k: usize, t: usize) -> Result<Hypergraph, ConstructionError> {
    let layout = check_kt(Family::GktCirc, k, t)?;
    let mut edges = layout.edges(t);
    let mut extra = vec![layout.v(1), layout.u(1)];
    extra.extend((1..=k - 3).map(|j| layout.vj(j, 1)));
    extra.push(layout.x());
    edges.push(extra);
    let mut labels = layout.labels();
    labels.push((layout.x(), "x".to_string()));
    Ok(Hypergraph::new(layout.n_vertices() + 1, edges)
        .expect("valid construction")
        .with_labels(labels)
        .expect("labels in range"))
}

/// Edges of `G_k` on vertices `offset + (0..2k-1)`: `M_i = {v_i, …, v_{i+k-1}}`.
fn path_windows(k: usize, offset: usize) -> Vec<Vec<usize>> {
    (0..k).map(|i| (offset + i..offset + i + k).collect()).collect()
}

/// Extra edge of `G*_k`: `{x, v_1, …, v_{k-2}, v_{k+2}}`, with `x` at
/// `offset + 2k - 1`.
fn star_edge(k: usize, offset: usize) -> Vec<usize> {
    let mut e = vec![offset + 2 * k - 1];
    e.extend(offset..offset + k - 2);
    e.push(offset + k + 1);
    e
}

fn check_k(family: Family, k: usize) -> Result<(), ConstructionError> {
    if k < 3 {
        return Err(invalid(family, format!("k = {k}: requires k >= 3")));
    }
    Ok(())
}

pub fn build_gk(k: usize) -> Result<Hypergraph, ConstructionError> {
    check_k(Family::Gk, k)?;
    Ok(Hypergraph::new(2 * k - 1, path_windows(k, 0))
        .expect("valid construction")
        .with_labels((0..2 * k - 1).map(|i| (i, format!("v_{}", i + 1))))
        .expect("labels in range"))
}

pub fn build_gk_star(k: usize) -> Result<Hypergraph, ConstructionError> {
    check_k(Family::GkStar, k)?;
    let mut edges = path_windows(k, 0);
    edges.push(star_edge(k, 0));
    let labels = (0..2 * k - 1)
        .map(|i| (i, format!("v_{}", i + 1)))
        .chain([(2 * k - 1, "x".to_string())]);
    Ok(Hypergraph::new(2 * k, edges)
        .expect("valid construction")
        .with_labels(labels)
        .expect("labels in range"))
}

/// Position of one copy in the layered family. Layer `s + 2` holds the single
/// `G*_{k-2}` with the empty tuple; a copy on layer `l` has the tuple
/// `(i_l, …, i_{s+1})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LayerAddress {
    pub layer: usize,
    pub tuple: Vec<usize>,
}

impl fmt::Display for LayerAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.tuple.iter().map(|i| i.to_string()).collect();
        write!(f, "{} ({})", self.layer, parts.join(","))
    }
}

/// One copy of `G_m` or `G*_m` inside the layered family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CopyRecord {
    pub address: LayerAddress,
    /// `m` of the copy `G_m` / `G*_m`.
    pub param: usize,
    pub star: bool,
    pub first_vertex: usize,
    pub last_vertex: usize,
    /// Ids of this copy's own edges, in `M_1, M_2, …` order.
    pub edges: Vec<usize>,
    /// Edge of the parent copy enlarged by this copy's tail pair.
    pub parent_edge: Option<usize>,
}

impl CopyRecord {
    /// `v_1` of the copy.
    pub fn head(&self) -> usize {
        self.first_vertex
    }

    /// `(v_{2m-2}, v_{2m-1})` of the copy.
    pub fn tail(&self) -> (usize, usize) {
        (
            self.first_vertex + 2 * self.param - 3,
            self.first_vertex + 2 * self.param - 2,
        )
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        self.first_vertex..=self.last_vertex
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layered {
    pub hypergraph: Hypergraph,
    /// Copies in depth-first order from the layer-`s + 2` root.
    pub copies: Vec<CopyRecord>,
}

impl Layered {
    pub fn copy(&self, address: &LayerAddress) -> Option<&CopyRecord> {
        self.copies.iter().find(|c| &c.address == address)
    }
}

/// Number of copies on layer 1: `(k-1)(k-2)^s`.
pub fn layer_one_copies(k: usize, s: usize) -> usize {
    (k - 1) * (k - 2).pow(s as u32)
}

/// The layered `k`-graph `G_{k,s}`. Vertices are numbered depth-first from
/// the root `G*_{k-2}`; each copy's own vertices are contiguous. Edge `M_i`
/// of a copy on layer `l + 1` (and `M*_i` of the root) is enlarged by the
/// tail pair of its child `i` on layer `l`.
pub fn build_gks(k: usize, s: usize) -> Result<Layered, ConstructionError> {
    if k < 6 {
        return Err(invalid(Family::Gks, format!("k = {k}: requires k >= 6")));
    }
    let top = s + 2;
    let mut copies: Vec<CopyRecord> = Vec::new();
    let mut next_vertex = 0usize;

    // Allocate vertices depth-first.
    let mut stack = vec![LayerAddress {
        layer: top,
        tuple: Vec::new(),
    }];
    while let Some(address) = stack.pop() {
        let (param, star) = match address.layer {
            l if l == top => (k - 2, true),
            1 => (k, false),
            _ => (k - 2, false),
        };
        let size = 2 * param - 1 + usize::from(star);
        let n_children = match address.layer {
            1 => 0,
            l if l == top => k - 1,
            _ => k - 2,
        };
        for i in (1..=n_children).rev() {
            let mut tuple = vec![i];
            tuple.extend(&address.tuple);
            stack.push(LayerAddress {
                layer: address.layer - 1,
                tuple,
            });
        }
        copies.push(CopyRecord {
            address,
            param,
            star,
            first_vertex: next_vertex,
            last_vertex: next_vertex + size - 1,
            edges: Vec::new(),
            parent_edge: None,
        });
        next_vertex += size;
    }

    let index: BTreeMap<LayerAddress, usize> = copies
        .iter()
        .enumerate()
        .map(|(i, c)| (c.address.clone(), i))
        .collect();

    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut parent_edges: Vec<(usize, usize)> = Vec::new();
    for ci in 0..copies.len() {
        let c = &copies[ci];
        let mut own = path_windows(c.param, c.first_vertex);
        if c.star {
            own.push(star_edge(c.param, c.first_vertex));
        }
        let mut ids = Vec::with_capacity(own.len());
        for (i, mut e) in own.into_iter().enumerate() {
            if c.address.layer > 1 {
                let mut tuple = vec![i + 1];
                tuple.extend(&c.address.tuple);
                let child = index[&LayerAddress {
                    layer: c.address.layer - 1,
                    tuple,
                }];
                let (a, b) = copies[child].tail();
                e.push(a);
                e.push(b);
                parent_edges.push((child, edges.len()));
            }
            ids.push(edges.len());
            edges.push(e);
        }
        copies[ci].edges = ids;
    }
    for (child, edge) in parent_edges {
        copies[child].parent_edge = Some(edge);
    }

    let mut labels = Vec::with_capacity(next_vertex);
    for c in &copies {
        let prefix = if c.star {
            "G*".to_string()
        } else {
            let parts: Vec<String> = c.address.tuple.iter().map(|i| i.to_string()).collect();
            format!("G({})", parts.join(","))
        };
        for (i, v) in c.vertices().enumerate() {
            let name = if c.star && v == c.last_vertex {
                "x".to_string()
            } else {
                format!("v_{}", i + 1)
            };
            labels.push((v, format!("{prefix}.{name}")));
        }
    }

    let hypergraph = Hypergraph::new(next_vertex, edges)
        .expect("valid construction")
        .with_labels(labels)
        .expect("labels in range");
    Ok(Layered { hypergraph, copies })
}

/// Sidecar text: one `copy <layer> (<tuple>) <first_vertex> <last_vertex>`
/// line per copy.
pub fn write_address_map(copies: &[CopyRecord]) -> String {
    let mut out = String::new();
    for c in copies {
        out.push_str(&format!(
            "copy {} {} {}\n",
            c.address, c.first_vertex, c.last_vertex
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Vertex;
    use std::collections::BTreeSet;

    fn names(h: &Hypergraph, e: &[Vertex]) -> BTreeSet<String> {
        e.iter().map(|&v| h.vertex_name(v as usize)).collect()
    }

    fn set(xs: &[&str]) -> BTreeSet<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn gkt_small_cases() {
        let g = build_gkt(3, 1).unwrap();
        assert_eq!((g.n_vertices(), g.n_edges()), (6, 3));
        let c = build_gkt_circ(3, 1).unwrap();
        assert_eq!((c.n_vertices(), c.n_edges()), (7, 4));
        let c = build_gkt_circ(4, 2).unwrap();
        assert_eq!((c.n_vertices(), c.n_edges()), (25, 11));
        assert!(c.is_k_uniform(4));
        assert_eq!(c.max_degree(), 3);
    }

    #[test]
    fn gkt_windows_tile_indices() {
        let g = build_gkt(4, 2).unwrap();
        let windows: Vec<BTreeSet<String>> = g.edges()[8..].iter().map(|e| names(&g, e)).collect();
        assert_eq!(
            windows,
            vec![
                set(&["v^1_1", "v^1_2", "v^1_3", "v^1_4"]),
                set(&["v^1_5", "v^1_6", "v^1_7", "v^1_8"]),
            ]
        );
        // E_8 wraps around to v_1
        assert_eq!(names(&g, g.edge(7)), set(&["v_8", "u_8", "v^1_8", "v_1"]));
    }

    #[test]
    fn gkt_each_superscript_vertex_in_one_window() {
        for (k, t) in [(4, 2), (5, 3), (6, 4)] {
            let g = build_gkt(k, t).unwrap();
            let windows = &g.edges()[t * k..];
            for j in 1..=k - 3 {
                for i in 1..=t * k {
                    let v = g.find_label(&format!("v^{j}_{i}")).unwrap() as Vertex;
                    assert_eq!(windows.iter().filter(|w| w.contains(&v)).count(), 1);
                }
            }
        }
    }

    #[test]
    fn gkt_parameter_range() {
        assert!(build_gkt(2, 3).is_err());
        assert!(build_gkt(5, 2).is_err());
        assert!(build_gkt_circ(5, 3).is_ok());
    }

    #[test]
    fn gk_and_star() {
        let g = build_gk(6).unwrap();
        assert_eq!((g.n_vertices(), g.n_edges()), (11, 6));
        assert!(g.is_k_uniform(6));
        assert_eq!(names(&g, g.edge(0)), set(&["v_1", "v_2", "v_3", "v_4", "v_5", "v_6"]));
        assert_eq!(g.degree(5).unwrap(), 6);
        let d = g.degrees();
        assert_eq!(d[0], 1);
        for i in 0..11 {
            assert_eq!(d[i], d[10 - i]);
        }
        let s = build_gk_star(6).unwrap();
        assert_eq!(
            names(&s, s.edge(6)),
            set(&["x", "v_1", "v_2", "v_3", "v_4", "v_8"])
        );
        assert_eq!(s.degree(0).unwrap(), 2);
        assert_eq!(s.degree(10).unwrap(), 1);
    }

    #[test]
    fn spider_shape() {
        let t = build_t(7).unwrap();
        let d = t.degrees();
        assert_eq!(d.iter().filter(|&&x| x == 3).count(), 1);
        assert!(d.iter().all(|&x| x <= 3));
        assert!(t.is_connected());
        assert_eq!(t.n_edges(), 6);
        assert!(build_t(6).is_err());
        // legs of build_t(9): remove the centre, measure components
        let t9 = build_t(9).unwrap();
        let rest: BTreeSet<usize> = (1..9).collect();
        let mut legs: Vec<usize> = t9
            .induced(&rest)
            .unwrap()
            .connected_components()
            .iter()
            .map(Vec::len)
            .collect();
        legs.sort_unstable();
        assert_eq!(legs, vec![1, 2, 5]);
    }

    #[test]
    fn small_asym_shapes() {
        let h = build_small_asym(4).unwrap();
        assert_eq!(h.n_vertices(), 6);
        assert!(h.is_k_uniform(4));
        let h = build_small_asym(5).unwrap();
        assert_eq!((h.n_vertices(), h.n_edges()), (7, 6));
        assert!(h.is_k_uniform(5));
        assert!(build_small_asym(3).is_err());
    }

    #[test]
    fn gks_counts() {
        let l = build_gks(6, 0).unwrap();
        let h = &l.hypergraph;
        assert_eq!((h.n_vertices(), h.n_edges()), (63, 35));
        assert!(h.is_k_uniform(6));
        assert_eq!(l.copies.len(), 6);
        assert_eq!(l.copies[0].address.layer, 2);
        assert!(l.copies[0].star);
        assert_eq!(l.copies.iter().filter(|c| c.address.layer == 1).count(), 5);
        assert!(build_gks(5, 0).is_err());
    }

    #[test]
    fn gks_edge_count_formula() {
        for (k, s) in [(6, 0), (6, 1), (7, 1), (6, 2)] {
            let l = build_gks(k, s).unwrap();
            let n = layer_one_copies(k, s);
            let mut expected = n * k + (k - 1);
            for layer in 2..=s + 1 {
                expected += n / (k - 2).pow(layer as u32 - 1) * (k - 2);
            }
            assert_eq!(l.hypergraph.n_edges(), expected, "k={k} s={s}");
            assert!(l.hypergraph.is_k_uniform(k));
            assert!(l.hypergraph.max_degree() <= k);
            // every enlarged edge adopts exactly one child
            let enlarged: Vec<usize> = l.copies.iter().filter_map(|c| c.parent_edge).collect();
            let distinct: BTreeSet<usize> = enlarged.iter().copied().collect();
            assert_eq!(enlarged.len(), distinct.len());
            let layer_above: usize = l
                .copies
                .iter()
                .filter(|c| c.address.layer > 1)
                .map(|c| c.edges.len())
                .sum();
            assert_eq!(enlarged.len(), layer_above);
        }
    }

    #[test]
    fn gks_addresses_and_sidecar() {
        let l = build_gks(6, 1).unwrap();
        let leaf = l
            .copy(&LayerAddress {
                layer: 1,
                tuple: vec![4, 5],
            })
            .unwrap();
        assert_eq!(leaf.param, 6);
        assert_eq!(l.hypergraph.vertex_name(leaf.head()), "G(4,5).v_1");
        assert_eq!(l.hypergraph.vertex_name(leaf.tail().1), "G(4,5).v_11");
        let parent = l
            .copy(&LayerAddress {
                layer: 2,
                tuple: vec![5],
            })
            .unwrap();
        // M_4 of G(5) carries the tail pair of G(4,5)
        let e = l.hypergraph.edge(parent.edges[3]);
        assert!(e.contains(&(leaf.tail().0 as Vertex)) && e.contains(&(leaf.tail().1 as Vertex)));
        assert_eq!(leaf.parent_edge, Some(parent.edges[3]));
        let sidecar = write_address_map(&l.copies);
        assert!(sidecar.starts_with("copy 3 () 0 7\n"));
        assert_eq!(sidecar.lines().count(), l.copies.len());
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(build_gks(6, 1).unwrap(), build_gks(6, 1).unwrap());
        assert_eq!(build_gkt_circ(5, 3).unwrap(), build_gkt_circ(5, 3).unwrap());
    }
}
