//! Ordered partitions of the nodes of an incidence structure and
//! count-based equitable refinement.
//!
//! Every operation here depends only on cell positions and neighbour counts,
//! never on node identities, so the refined partition of an isomorphic copy
//! is the image of the original one. The refinement trace hashes the same
//! data and is therefore an isomorphism invariant of each search-tree node.

use std::collections::VecDeque;

/// Nodes `0..n_points` are the permuted points; further nodes (edges of a
/// hypergraph) only carry structure. Adjacency is labelled so directed
/// relations can be refined.
#[derive(Debug, Clone)]
pub struct Incidence {
    n_points: usize,
    n_labels: usize,
    offsets: Vec<usize>,
    targets: Vec<(u32, u8)>,
    initial: Vec<Vec<u32>>,
}

impl Incidence {
    /// `adjacency[x]` lists `(neighbour, label)`; `initial` is the ordered
    /// initial colouring. Point cells must precede all other cells and cells
    /// must not mix points with non-points.
    pub fn new(
        n_points: usize,
        n_labels: usize,
        adjacency: Vec<Vec<(u32, u8)>>,
        initial: Vec<Vec<u32>>,
    ) -> Self {
        let mut offsets = Vec::with_capacity(adjacency.len() + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for list in adjacency {
            debug_assert!(list.iter().all(|&(_, l)| (l as usize) < n_labels));
            targets.extend(list);
            offsets.push(targets.len());
        }
        let initial: Vec<Vec<u32>> = initial.into_iter().filter(|c| !c.is_empty()).collect();
        debug_assert_eq!(
            initial.iter().map(Vec::len).sum::<usize>(),
            offsets.len() - 1
        );
        Incidence {
            n_points,
            n_labels: n_labels.max(1),
            offsets,
            targets,
            initial,
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    #[inline]
    fn neighbours(&self, x: u32) -> &[(u32, u8)] {
        &self.targets[self.offsets[x as usize]..self.offsets[x as usize + 1]]
    }

    /// Splits every point cell of the initial colouring into its `seed` part
    /// followed by the rest.
    pub fn with_seed(mut self, seed: &[bool]) -> Self {
        let n_points = self.n_points;
        let mut cells = Vec::with_capacity(self.initial.len() + 1);
        for cell in self.initial.drain(..) {
            if cell.first().is_some_and(|&x| (x as usize) < n_points) {
                let (inside, outside): (Vec<u32>, Vec<u32>) =
                    cell.into_iter().partition(|&x| seed[x as usize]);
                cells.push(inside);
                cells.push(outside);
            } else {
                cells.push(cell);
            }
        }
        self.initial = cells.into_iter().filter(|c| !c.is_empty()).collect();
        self
    }
}

/// Ordered partition of the incidence nodes. Cells are contiguous ranges of
/// `elems` and are identified by their start position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredPartition {
    elems: Vec<u32>,
    pos: Vec<u32>,
    cell_start: Vec<u32>,
    cell_end: Vec<u32>,
    n_cells: usize,
}

/// Reusable buffers for refinement.
#[derive(Debug, Default)]
pub(crate) struct Scratch {
    counts: Vec<u32>,
    touched: Vec<u32>,
    touched_cells: Vec<u32>,
    in_queue: Vec<bool>,
    queue: VecDeque<u32>,
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    (h ^ x).wrapping_mul(0x0100_0000_01b3).rotate_left(17) ^ 0x9e37_79b9_7f4a_7c15
}

impl ColoredPartition {
    /// Initial colouring of `inc`, refined to an equitable partition.
    pub(crate) fn initial(inc: &Incidence, scratch: &mut Scratch) -> (Self, u64) {
        let n = inc.n_nodes();
        let mut elems = Vec::with_capacity(n);
        let mut cell_start = vec![0; n];
        let mut cell_end = vec![0; n];
        for cell in &inc.initial {
            let start = elems.len() as u32;
            elems.extend_from_slice(cell);
            let end = elems.len() as u32;
            for p in start..end {
                cell_start[p as usize] = start;
            }
            cell_end[start as usize] = end;
        }
        let mut pos = vec![0; n];
        for (i, &x) in elems.iter().enumerate() {
            pos[x as usize] = i as u32;
        }
        let mut p = ColoredPartition {
            elems,
            pos,
            cell_start,
            cell_end,
            n_cells: inc.initial.len(),
        };
        scratch.prepare(inc);
        let starts: Vec<u32> = p.cell_starts().collect();
        for s in starts {
            scratch.push(s);
        }
        let trace = p.refine(inc, scratch, 0);
        (p, trace)
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn is_discrete(&self) -> bool {
        self.n_cells == self.elems.len()
    }

    /// Nodes in cell order.
    pub fn elements(&self) -> &[u32] {
        &self.elems
    }

    pub fn position(&self, x: u32) -> u32 {
        self.pos[x as usize]
    }

    pub fn cell_of(&self, x: u32) -> u32 {
        self.cell_start[self.pos[x as usize] as usize]
    }

    pub fn cell(&self, start: u32) -> &[u32] {
        &self.elems[start as usize..self.cell_end[start as usize] as usize]
    }

    fn cell_starts(&self) -> impl Iterator<Item = u32> + '_ {
        let mut s = 0u32;
        std::iter::from_fn(move || {
            if (s as usize) >= self.elems.len() {
                return None;
            }
            let cur = s;
            s = self.cell_end[s as usize];
            Some(cur)
        })
    }

    /// Cells as node lists, in order.
    pub fn cells(&self) -> Vec<Vec<u32>> {
        self.cell_starts().map(|s| self.cell(s).to_vec()).collect()
    }

    /// First non-singleton cell of points.
    pub(crate) fn target_cell(&self, n_points: usize) -> Option<u32> {
        self.cell_starts()
            .take_while(|&s| (s as usize) < n_points)
            .find(|&s| self.cell_end[s as usize] - s > 1)
    }

    /// Splits `x` off to the front of its cell and refines. Returns the
    /// refinement trace; individualizing a singleton only records its cell.
    pub(crate) fn individualize(&mut self, inc: &Incidence, scratch: &mut Scratch, x: u32) -> u64 {
        let start = self.cell_of(x);
        let end = self.cell_end[start as usize];
        if end - start == 1 {
            return mix(0x51, start as u64);
        }
        let px = self.pos[x as usize];
        let y = self.elems[start as usize];
        self.elems.swap(start as usize, px as usize);
        self.pos[x as usize] = start;
        self.pos[y as usize] = px;
        for p in start + 1..end {
            self.cell_start[p as usize] = start + 1;
        }
        self.cell_end[start as usize] = start + 1;
        self.cell_end[start as usize + 1] = end;
        self.n_cells += 1;
        scratch.prepare(inc);
        scratch.push(start);
        self.refine(inc, scratch, mix(0x17, start as u64))
    }

    fn refine(&mut self, inc: &Incidence, sc: &mut Scratch, mut trace: u64) -> u64 {
        let n = inc.n_nodes();
        let labels = inc.n_labels;
        while let Some(s) = sc.queue.pop_front() {
            sc.in_queue[s as usize] = false;
            if self.is_discrete() {
                sc.drain_queue();
                break;
            }
            let end = self.cell_end[s as usize];
            for p in s..end {
                let x = self.elems[p as usize];
                for &(y, l) in inc.neighbours(x) {
                    let slot = l as usize * n + y as usize;
                    if sc.counts.iter().skip(y as usize).step_by(n).all(|&c| c == 0) {
                        sc.touched.push(y);
                    }
                    sc.counts[slot] += 1;
                }
            }
            sc.touched_cells.clear();
            for &y in &sc.touched {
                sc.touched_cells.push(self.cell_of(y));
            }
            sc.touched_cells.sort_unstable();
            sc.touched_cells.dedup();
            trace = mix(trace, s as u64 ^ ((sc.touched.len() as u64) << 32));

            let cells = std::mem::take(&mut sc.touched_cells);
            for &c in &cells {
                let cend = self.cell_end[c as usize];
                if cend - c == 1 {
                    continue;
                }
                let counts = &sc.counts;
                let key = |x: u32| -> u64 {
                    let mut k = 0u64;
                    for l in 0..labels {
                        k = k.wrapping_mul(1 << 21) + counts[l * n + x as usize] as u64;
                    }
                    k
                };
                let slice = &mut self.elems[c as usize..cend as usize];
                slice.sort_by_key(|&x| key(x));
                let first = key(slice[0]);
                let last = key(slice[slice.len() - 1]);
                if first == last {
                    continue;
                }
                // record fragments
                let mut frags: Vec<(u32, u32)> = Vec::new();
                let mut fstart = c;
                let mut prev = first;
                for p in c..cend {
                    let k = key(self.elems[p as usize]);
                    if k != prev {
                        frags.push((fstart, p));
                        trace = mix(trace, prev ^ ((p as u64) << 40));
                        fstart = p;
                        prev = k;
                    }
                }
                frags.push((fstart, cend));
                trace = mix(trace, prev ^ ((cend as u64) << 40));
                for &(a, b) in &frags {
                    for p in a..b {
                        self.pos[self.elems[p as usize] as usize] = p;
                        self.cell_start[p as usize] = a;
                    }
                    self.cell_end[a as usize] = b;
                }
                self.n_cells += frags.len() - 1;
                if sc.in_queue[c as usize] {
                    for &(a, _) in &frags[1..] {
                        sc.push(a);
                    }
                } else {
                    // all fragments but the first largest one
                    let largest = frags
                        .iter()
                        .enumerate()
                        .max_by(|(i, x), (j, y)| (x.1 - x.0).cmp(&(y.1 - y.0)).then(j.cmp(i)))
                        .map(|(i, _)| i)
                        .unwrap();
                    for (i, &(a, _)) in frags.iter().enumerate() {
                        if i != largest {
                            sc.push(a);
                        }
                    }
                }
            }
            sc.touched_cells = cells;
            for &y in &sc.touched {
                for l in 0..labels {
                    sc.counts[l * n + y as usize] = 0;
                }
            }
            sc.touched.clear();
        }
        mix(trace, self.n_cells as u64)
    }
}

impl Scratch {
    fn prepare(&mut self, inc: &Incidence) {
        let n = inc.n_nodes();
        if self.in_queue.len() != n || self.counts.len() != n * inc.n_labels {
            self.counts = vec![0; n * inc.n_labels];
            self.in_queue = vec![false; n];
            self.touched.clear();
            self.queue.clear();
        }
    }

    fn push(&mut self, s: u32) {
        if !self.in_queue[s as usize] {
            self.in_queue[s as usize] = true;
            self.queue.push_back(s);
        }
    }

    fn drain_queue(&mut self) {
        while let Some(s) = self.queue.pop_front() {
            self.in_queue[s as usize] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Path 0-1-2-3 as a plain graph (points only).
    fn path4() -> Incidence {
        let adj = vec![
            vec![(1, 0)],
            vec![(0, 0), (2, 0)],
            vec![(1, 0), (3, 0)],
            vec![(2, 0)],
        ];
        Incidence::new(4, 1, adj, vec![vec![0, 1, 2, 3]])
    }

    #[test]
    fn refinement_splits_by_degree() {
        let inc = path4();
        let mut sc = Scratch::default();
        let (p, _) = ColoredPartition::initial(&inc, &mut sc);
        let mut cells = p.cells();
        for c in &mut cells {
            c.sort_unstable();
        }
        assert_eq!(cells, vec![vec![0, 3], vec![1, 2]]);
    }

    #[test]
    fn individualizing_an_end_discretizes_the_path() {
        let inc = path4();
        let mut sc = Scratch::default();
        let (mut p, _) = ColoredPartition::initial(&inc, &mut sc);
        p.individualize(&inc, &mut sc, 0);
        assert!(p.is_discrete());
        assert_eq!(p.elements(), &[0, 3, 2, 1]);
    }

    #[test]
    fn traces_agree_on_symmetric_choices() {
        let inc = path4();
        let mut sc = Scratch::default();
        let (p, _) = ColoredPartition::initial(&inc, &mut sc);
        let (mut a, mut b) = (p.clone(), p);
        let ta = a.individualize(&inc, &mut sc, 0);
        let tb = b.individualize(&inc, &mut sc, 3);
        assert_eq!(ta, tb);
    }

    #[test]
    fn seed_splits_point_cells() {
        let inc = path4().with_seed(&[false, true, false, false]);
        let mut sc = Scratch::default();
        let (p, _) = ColoredPartition::initial(&inc, &mut sc);
        assert!(p.is_discrete());
    }
}
