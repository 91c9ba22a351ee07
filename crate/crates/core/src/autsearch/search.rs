//! Individualization-refinement search trees.
//!
//! * [`Searcher::group`] walks the first path of the tree and, at every
//!   level, looks for automorphisms mapping the base point to each other
//!   element of its target cell. Orbit sizes along the base multiply to the
//!   group order.
//! * [`Searcher::canonical`] visits one child per orbit of the pointwise
//!   stabilizer of the current path and keeps the least relabeled key.
//! * [`Searcher::involution`] runs two partitions side by side, pairing
//!   `v ↦ w` together with `w ↦ v`.

use num_bigint::BigUint;

use super::partition::{ColoredPartition, Incidence, Scratch};
use super::{BudgetExceeded, Structure};

/// One node on the reference path: its trace and cell count.
type Signature = (u64, usize);

pub(crate) struct Searcher<'a, S: Structure> {
    pub(crate) s: &'a S,
    pub(crate) inc: Incidence,
    scratch: Scratch,
    budget: u64,
    pub(crate) nodes: u64,
}

impl<'a, S: Structure> Searcher<'a, S> {
    pub(crate) fn new(s: &'a S, inc: Incidence, budget: u64) -> Self {
        Searcher {
            s,
            inc,
            scratch: Scratch::default(),
            budget,
            nodes: 0,
        }
    }

    fn n_points(&self) -> usize {
        self.inc.n_points()
    }

    pub(crate) fn root(&mut self) -> Result<(ColoredPartition, u64), BudgetExceeded> {
        self.tick()?;
        Ok(ColoredPartition::initial(&self.inc, &mut self.scratch))
    }

    fn tick(&mut self) -> Result<(), BudgetExceeded> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(BudgetExceeded {
                budget: self.budget,
            });
        }
        Ok(())
    }

    fn child(&mut self, p: &ColoredPartition, x: u32) -> Result<(ColoredPartition, Signature), BudgetExceeded> {
        self.tick()?;
        let mut q = p.clone();
        let t = q.individualize(&self.inc, &mut self.scratch, x);
        let cells = q.n_cells();
        Ok((q, (t, cells)))
    }

    fn leaf_map(&self, reference: &ColoredPartition, leaf: &ColoredPartition) -> Vec<u32> {
        let n = self.n_points();
        let mut image = vec![0u32; n];
        for (&a, &b) in reference.elements()[..n].iter().zip(&leaf.elements()[..n]) {
            image[a as usize] = b;
        }
        image
    }

    /// Generators (appended to `gens`) and order of the automorphism group
    /// of the coloured structure below `p`. With `first_only`, stops after
    /// the first generator and the returned order is meaningless.
    pub(crate) fn group(
        &mut self,
        p: &ColoredPartition,
        gens: &mut Vec<Vec<u32>>,
        first_only: bool,
    ) -> Result<BigUint, BudgetExceeded> {
        let Some(target) = p.target_cell(self.n_points()) else {
            return Ok(BigUint::from(1u32));
        };
        let cell: Vec<u32> = p.cell(target).to_vec();
        let base = cell[0];
        let (pb, sig_b) = self.child(p, base)?;
        let sub_order = self.group(&pb, gens, first_only)?;
        if first_only && !gens.is_empty() {
            return Ok(sub_order);
        }

        // Reference path below `pb`.
        let mut path = vec![sig_b];
        let mut leaf = pb;
        while let Some(t) = leaf.target_cell(self.n_points()) {
            let x = leaf.cell(t)[0];
            let (next, sig) = self.child(&leaf, x)?;
            path.push(sig);
            leaf = next;
        }

        let mut orbits = Orbits::new(self.n_points(), gens);
        for &w in &cell[1..] {
            if orbits.same(base, w) {
                continue;
            }
            if let Some(g) = self.map_into(p, w, &path, &leaf)? {
                orbits.add(&g);
                gens.push(g);
                if first_only {
                    return Ok(sub_order);
                }
            }
        }
        let orbit_size = cell.iter().filter(|&&w| orbits.same(base, w)).count();
        Ok(sub_order * BigUint::from(orbit_size))
    }

    /// An automorphism sending the reference path's first point to `w`.
    fn map_into(
        &mut self,
        p: &ColoredPartition,
        w: u32,
        path: &[Signature],
        reference: &ColoredPartition,
    ) -> Result<Option<Vec<u32>>, BudgetExceeded> {
        let (pw, sig) = self.child(p, w)?;
        if sig != path[0] {
            return Ok(None);
        }
        self.match_below(&pw, 1, path, reference)
    }

    fn match_below(
        &mut self,
        p: &ColoredPartition,
        depth: usize,
        path: &[Signature],
        reference: &ColoredPartition,
    ) -> Result<Option<Vec<u32>>, BudgetExceeded> {
        let Some(t) = p.target_cell(self.n_points()) else {
            let image = self.leaf_map(reference, p);
            return Ok(self.s.is_automorphism(&image).then_some(image));
        };
        if depth >= path.len() {
            return Ok(None);
        }
        let cell: Vec<u32> = p.cell(t).to_vec();
        for x in cell {
            let (q, sig) = self.child(p, x)?;
            if sig != path[depth] {
                continue;
            }
            if let Some(g) = self.match_below(&q, depth + 1, path, reference)? {
                return Ok(Some(g));
            }
        }
        Ok(None)
    }

    /// Least relabeled key over the search tree, with the relabeling that
    /// produces it. `gens` must be automorphisms of the structure.
    pub(crate) fn canonical(
        &mut self,
        root: &ColoredPartition,
        gens: &[Vec<u32>],
    ) -> Result<(S::Key, Vec<u32>), BudgetExceeded> {
        let mut best: Option<(S::Key, Vec<u32>)> = None;
        let mut path = Vec::new();
        self.canonical_dfs(root, gens, &mut path, &mut best)?;
        Ok(best.expect("search tree has at least one leaf"))
    }

    fn canonical_dfs(
        &mut self,
        p: &ColoredPartition,
        gens: &[Vec<u32>],
        path: &mut Vec<u32>,
        best: &mut Option<(S::Key, Vec<u32>)>,
    ) -> Result<(), BudgetExceeded> {
        let n = self.n_points();
        let Some(t) = p.target_cell(n) else {
            let mut relabel = vec![0u32; n];
            for (i, &x) in p.elements()[..n].iter().enumerate() {
                relabel[x as usize] = i as u32;
            }
            let key = self.s.relabeled(&relabel);
            if best.as_ref().map_or(true, |(b, _)| key < *b) {
                *best = Some((key, relabel));
            }
            return Ok(());
        };
        let fixing: Vec<&Vec<u32>> = gens
            .iter()
            .filter(|g| path.iter().all(|&x| g[x as usize] == x))
            .collect();
        let orbits = Orbits::from_refs(n, &fixing);
        let cell: Vec<u32> = p.cell(t).to_vec();
        let mut seen_roots = Vec::new();
        for x in cell {
            let r = orbits.root(x);
            if seen_roots.contains(&r) {
                continue;
            }
            seen_roots.push(r);
            let (q, _) = self.child(p, x)?;
            path.push(x);
            self.canonical_dfs(&q, gens, path, best)?;
            path.pop();
        }
        Ok(())
    }

    /// An involution of the coloured structure below `p`, if one exists.
    pub(crate) fn involution(&mut self, p: &ColoredPartition) -> Result<Option<Vec<u32>>, BudgetExceeded> {
        self.involution_dfs(p, p)
    }

    fn involution_dfs(
        &mut self,
        left: &ColoredPartition,
        right: &ColoredPartition,
    ) -> Result<Option<Vec<u32>>, BudgetExceeded> {
        let n = self.n_points();
        let Some(t) = left.target_cell(n) else {
            if right.target_cell(n).is_some() {
                return Ok(None);
            }
            let image = self.leaf_map(left, right);
            let ok = image.iter().enumerate().any(|(i, &x)| i != x as usize)
                && image.iter().enumerate().all(|(i, &x)| image[x as usize] as usize == i)
                && self.s.is_automorphism(&image);
            return Ok(ok.then_some(image));
        };
        if right.cell_of(right.elements()[t as usize]) != t {
            return Ok(None);
        }
        let v = left.cell(t)[0];
        let mut candidates: Vec<u32> = right.cell(t).iter().copied().filter(|&w| w != v).collect();
        if right.cell(t).contains(&v) {
            candidates.push(v);
        }
        for w in candidates {
            let (l1, s1) = self.child(left, v)?;
            let (r1, s2) = self.child(right, w)?;
            if s1 != s2 {
                continue;
            }
            let (l2, r2) = if w == v {
                (l1, r1)
            } else {
                if l1.cell_of(w) != r1.cell_of(v) {
                    continue;
                }
                let (l2, s1) = self.child(&l1, w)?;
                let (r2, s2) = self.child(&r1, v)?;
                if s1 != s2 {
                    continue;
                }
                (l2, r2)
            };
            if let Some(g) = self.involution_dfs(&l2, &r2)? {
                return Ok(Some(g));
            }
        }
        Ok(None)
    }
}

/// Union-find orbits of the group generated by a set of permutations.
pub(crate) struct Orbits {
    parent: Vec<u32>,
}

impl Orbits {
    pub(crate) fn new(n: usize, gens: &[Vec<u32>]) -> Self {
        let mut o = Orbits {
            parent: (0..n as u32).collect(),
        };
        for g in gens {
            o.add(g);
        }
        o
    }

    fn from_refs(n: usize, gens: &[&Vec<u32>]) -> Self {
        let mut o = Orbits {
            parent: (0..n as u32).collect(),
        };
        for g in gens {
            o.add(g);
        }
        o
    }

    pub(crate) fn root(&self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            x = self.parent[x as usize];
        }
        x
    }

    pub(crate) fn same(&self, a: u32, b: u32) -> bool {
        self.root(a) == self.root(b)
    }

    pub(crate) fn add(&mut self, g: &[u32]) {
        for (i, &x) in g.iter().enumerate() {
            let a = self.root(i as u32);
            let b = self.root(x);
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                self.parent[hi as usize] = lo;
            }
        }
    }

    /// Orbits as sorted classes ordered by least element.
    pub(crate) fn classes(&self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            by_root[self.root(x as u32) as usize].push(x);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    }
}
