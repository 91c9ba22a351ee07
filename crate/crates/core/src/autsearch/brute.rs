//! Reference enumerators that share nothing with the refinement engine.
//!
//! [`all_permutations`] checks every one of the `n!` bijections; the
//! backtracking variant assigns images vertex by vertex and rejects a partial
//! map as soon as an edge with all vertices assigned lands outside the edge
//! set. Both are exact and slow.

use crate::hypergraph::{Hypergraph, Permutation, Vertex};

/// Every automorphism of `h`, by checking all `n!` permutations (Heap's
/// algorithm). Identity included.
pub fn all_permutations(h: &Hypergraph) -> Vec<Permutation> {
    let n = h.n_vertices();
    let mut a: Vec<Vertex> = (0..n as Vertex).collect();
    let mut out = Vec::new();
    let mut c = vec![0usize; n];
    if h.preserves_edges(&a) {
        out.push(Permutation::from_images(a.clone()).unwrap());
    }
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            if h.preserves_edges(&a) {
                out.push(Permutation::from_images(a.clone()).unwrap());
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out.sort();
    out
}

struct Ctx<'a> {
    h: &'a Hypergraph,
    order: &'a [usize],
    degrees: &'a [usize],
    closing: &'a [Vec<usize>],
    incidence: &'a [Vec<usize>],
}

/// Vertex order for [`backtrack`]: greedily the vertex that closes the most
/// edges, then the one sharing the most edges with those already placed.
fn assignment_order(h: &Hypergraph) -> Vec<usize> {
    let n = h.n_vertices();
    let incidence = h.incidence();
    let mut missing: Vec<usize> = h.edges().iter().map(Vec::len).collect();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let best = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let closes = incidence[v].iter().filter(|&&e| missing[e] == 1).count();
                let shared = incidence[v].iter().filter(|&&e| missing[e] < h.edge(e).len()).count();
                (closes, shared, incidence[v].len(), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex");
        placed[best] = true;
        for &e in &incidence[best] {
            missing[e] -= 1;
        }
        order.push(best);
    }
    order
}

/// Every automorphism of `h` by vertex-at-a-time backtracking. A partial map
/// is rejected when the assigned part of some edge lands in no edge of the
/// same size, or a fully assigned edge lands outside the edge set.
pub fn backtrack(h: &Hypergraph) -> Vec<Permutation> {
    let n = h.n_vertices();
    let degrees = h.degrees();
    let order = assignment_order(h);
    let mut rank = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    // edges become checkable once their last vertex in `order` is assigned
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (id, e) in h.edges().iter().enumerate() {
        if let Some(last) = e.iter().map(|&x| rank[x as usize]).max() {
            closing[last].push(id);
        }
    }
    let incidence = h.incidence();
    let mut image = vec![Vertex::MAX; n];
    let mut used = vec![false; n];
    let mut out = Vec::new();
    let mut buf = Vec::new();
    let ctx = Ctx {
        h,
        order: &order,
        degrees: &degrees,
        closing: &closing,
        incidence: &incidence,
    };
    fn go(
        i: usize,
        ctx: &Ctx,
        image: &mut Vec<Vertex>,
        used: &mut Vec<bool>,
        buf: &mut Vec<Vertex>,
        out: &mut Vec<Permutation>,
    ) {
        let n = image.len();
        if i == n {
            out.push(Permutation::from_images(image.clone()).unwrap());
            return;
        }
        let h = ctx.h;
        let v = ctx.order[i];
        for w in 0..n {
            if used[w] || ctx.degrees[w] != ctx.degrees[v] {
                continue;
            }
            image[v] = w as Vertex;
            used[w] = true;
            let closed = ctx.closing[i].iter().all(|&id| {
                buf.clear();
                buf.extend(h.edge(id).iter().map(|&x| image[x as usize]));
                buf.sort_unstable();
                h.contains_edge(buf)
            });
            let partial = closed
                && ctx.incidence[v].iter().all(|&id| {
                    let e = h.edge(id);
                    ctx.incidence[w].iter().any(|&f| {
                        let f = h.edge(f);
                        f.len() == e.len()
                            && e.iter().all(|&x| {
                                let y = image[x as usize];
                                y == Vertex::MAX || f.binary_search(&y).is_ok()
                            })
                    })
                });
            if partial {
                go(i + 1, ctx, image, used, buf, out);
            }
            used[w] = false;
        }
        image[v] = Vertex::MAX;
    }
    go(0, &ctx, &mut image, &mut used, &mut buf, &mut out);
    out.sort();
    out
}
