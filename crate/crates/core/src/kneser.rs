//! The Kneser graph `KG(n, r)`: all `r`-subsets of `[n]` as vertices, edges
//! between disjoint subsets.
//!
//! Both index spaces are frozen: vertex `i` is the `i`-th `r`-subset in
//! colexicographic order, and edges are numbered by iterating vertex pairs
//! `(i, j)`, `i < j`, in rank order and keeping the disjoint ones. SAT
//! variable numbers and certificate edge order both build on this bijection,
//! so it must never change.

use alloc::vec::Vec;

use crate::combin::{binomial, RSet};
use crate::error::{Error, Result};

/// The Kneser graph `KG(n, r)` with frozen vertex and edge index spaces.
#[derive(Clone, Debug)]
pub struct KneserGraph {
    n: u8,
    r: u8,
    /// Vertex masks in colex order; index = vertex rank.
    vertices: Vec<u64>,
    /// Edges `(i, j)` with `i < j`, ordered by `(i, j)` lexicographically.
    edges: Vec<(u32, u32)>,
    /// `edge_start[i]..edge_start[i + 1]` indexes the edges whose lower
    /// endpoint is `i`; within the slice the upper endpoints ascend.
    edge_start: Vec<u32>,
}

/// A family of pairwise-disjoint `r`-subsets (a clique in `KG(n, r)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueFamily {
    members: Vec<RSet>,
}

impl CliqueFamily {
    /// Validates pairwise disjointness, distinctness, and the packing bound
    /// `|members| * r <= n`.
    pub fn new(members: Vec<RSet>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidParameter("clique family must be nonempty"));
        }
        let n = members[0].ground();
        let r = members[0].cardinality();
        let mut union = 0u64;
        for m in &members {
            if m.ground() != n {
                return Err(Error::GroundSetMismatch);
            }
            if m.cardinality() != r {
                return Err(Error::WrongCardinality {
                    expected: r as usize,
                    actual: m.cardinality() as usize,
                });
            }
            if union & m.mask() != 0 {
                return Err(Error::InvalidParameter(
                    "clique family members must be pairwise disjoint",
                ));
            }
            union |= m.mask();
        }
        Ok(CliqueFamily { members })
    }

    /// The member sets.
    pub fn members(&self) -> &[RSet] {
        &self.members
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Always false; families are nonempty by construction.
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl KneserGraph {
    /// Builds `KG(n, r)`.
    ///
    /// `n < 2r` is allowed and yields an edgeless graph. The only hard caps
    /// are `n <= 64` and an edge count that fits a DIMACS variable index.
    pub fn build(n: u8, r: u8) -> Result<Self> {
        if r < 1 {
            return Err(Error::InvalidParameter("r must be at least 1"));
        }
        if n == 0 || n > 64 {
            return Err(Error::GroundSetTooLarge(n as u64));
        }
        if r > n {
            return Err(Error::InvalidParameter("r must not exceed n"));
        }
        let vertex_count = binomial(n as u64, r as u64)?;
        if vertex_count > u32::MAX as u64 {
            return Err(Error::CapacityExceeded("vertex count exceeds u32"));
        }
        let expected_edges = vertex_count * binomial((n - r) as u64, r as u64)? / 2;
        if expected_edges >= i32::MAX as u64 {
            return Err(Error::CapacityExceeded(
                "edge count exceeds the DIMACS variable space",
            ));
        }

        let mut vertices = Vec::with_capacity(vertex_count as usize);
        for i in 0..vertex_count {
            vertices.push(RSet::unrank(i, n, r).expect("rank in range").mask());
        }

        let mut edges = Vec::with_capacity(expected_edges as usize);
        let mut edge_start = Vec::with_capacity(vertex_count as usize + 1);
        for i in 0..vertices.len() {
            edge_start.push(edges.len() as u32);
            let mi = vertices[i];
            for (dj, &mj) in vertices[i + 1..].iter().enumerate() {
                if mi & mj == 0 {
                    edges.push((i as u32, (i + 1 + dj) as u32));
                }
            }
        }
        edge_start.push(edges.len() as u32);
        debug_assert_eq!(edges.len() as u64, expected_edges);

        Ok(KneserGraph {
            n,
            r,
            vertices,
            edges,
            edge_start,
        })
    }

    /// Ground-set size `n`.
    #[inline]
    pub fn n(&self) -> u8 {
        self.n
    }

    /// Subset size `r`.
    #[inline]
    pub fn r(&self) -> u8 {
        self.r
    }

    /// `C(n, r)`.
    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// `C(n, r) * C(n - r, r) / 2`.
    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// The mask of vertex `v`.
    #[inline]
    pub fn vertex_mask(&self, v: u32) -> u64 {
        self.vertices[v as usize]
    }

    /// The vertex as an [`RSet`].
    pub fn vertex(&self, v: u32) -> RSet {
        RSet::from_mask(self.vertices[v as usize], self.n).expect("stored masks are valid")
    }

    /// The rank of an [`RSet`] vertex, checked against this graph.
    pub fn rank_of(&self, s: &RSet) -> Result<u32> {
        if s.ground() != self.n {
            return Err(Error::GroundSetMismatch);
        }
        if s.cardinality() != self.r {
            return Err(Error::WrongCardinality {
                expected: self.r as usize,
                actual: s.cardinality() as usize,
            });
        }
        Ok(s.rank() as u32)
    }

    /// O(1) adjacency: two vertices are adjacent iff their masks are
    /// disjoint.
    #[inline]
    pub fn adjacent(&self, u: u32, v: u32) -> bool {
        u != v && self.vertices[u as usize] & self.vertices[v as usize] == 0
    }

    /// The frozen edge index of the pair `{u, v}`, if adjacent.
    pub fn edge_index(&self, u: u32, v: u32) -> Option<u32> {
        if !self.adjacent(u, v) {
            return None;
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        let lo = self.edge_start[a as usize] as usize;
        let hi = self.edge_start[a as usize + 1] as usize;
        let slice = &self.edges[lo..hi];
        let pos = slice.binary_search_by_key(&b, |&(_, j)| j).ok()?;
        Some((lo + pos) as u32)
    }

    /// The endpoints `(u, v)`, `u < v`, of edge `e`.
    #[inline]
    pub fn edge(&self, e: u32) -> (u32, u32) {
        self.edges[e as usize]
    }

    /// All edges in index order.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Degree of a vertex (equals `C(n - r, r)` for every vertex).
    pub fn degree(&self, v: u32) -> usize {
        let m = self.vertices[v as usize];
        self.vertices.iter().filter(|&&o| o & m == 0).count()
    }

    /// Streams every `k`-clique (family of `k` pairwise-disjoint vertices)
    /// exactly once, as ascending vertex ranks, in lexicographic order of
    /// the rank tuples. Lazy: nothing is materialized up front.
    pub fn cliques(&self, k: usize) -> CliqueIter<'_> {
        CliqueIter {
            graph: self,
            k,
            stack: Vec::with_capacity(k),
            masks: Vec::with_capacity(k),
            cursor: 0,
            exhausted: k == 0 || k * self.r as usize > self.n as usize,
        }
    }

    /// Counts `k`-cliques by exhausting [`KneserGraph::cliques`], optionally
    /// restricted to cliques whose least vertex rank lies in
    /// `[first_lo, first_hi)` (the deterministic partition boundary used for
    /// parallel counting).
    pub fn clique_count_in(&self, k: usize, first_lo: u32, first_hi: u32) -> u64 {
        let mut it = self.cliques(k);
        it.cursor = first_lo;
        let mut count = 0u64;
        // Lex order makes the first component non-decreasing, so the scan
        // can stop at the first clique past the partition boundary.
        for c in it {
            if c[0] >= first_hi {
                break;
            }
            count += 1;
        }
        count
    }

    /// Converts enumerated ranks into a validated [`CliqueFamily`].
    pub fn family(&self, ranks: &[u32]) -> CliqueFamily {
        let members = ranks.iter().map(|&v| self.vertex(v)).collect();
        CliqueFamily::new(members).expect("enumerated cliques are valid families")
    }

    /// The explicit proper coloring with `n - 2r + 2` colors:
    /// `color(S) = min(min(S), n - 2r + 2)`.
    ///
    /// Requires `n >= 2r`. Colors are 1-based.
    pub fn proper_coloring(&self) -> Result<Vec<u16>> {
        if (self.n as u16) < 2 * self.r as u16 {
            return Err(Error::InvalidParameter(
                "proper coloring needs n >= 2r",
            ));
        }
        let cap = self.n as u16 - 2 * self.r as u16 + 2;
        Ok(self
            .vertices
            .iter()
            .map(|m| {
                let least = m.trailing_zeros() as u16 + 1;
                least.min(cap)
            })
            .collect())
    }

    /// Vertex ranks of the subgraph induced on a ground subset `S`
    /// (given as a mask over `[n]`). The induced structure is isomorphic to
    /// `KG(|S|, r)`; fewer than `r` elements yield an empty set.
    pub fn induced_on(&self, ground_subset: u64) -> Vec<u32> {
        self.vertices
            .iter()
            .enumerate()
            .filter(|(_, &m)| m & !ground_subset == 0)
            .map(|(i, _)| i as u32)
            .collect()
    }
}

/// Lazy backtracking enumerator over `k`-cliques; see
/// [`KneserGraph::cliques`].
pub struct CliqueIter<'g> {
    graph: &'g KneserGraph,
    k: usize,
    /// Current partial clique (vertex ranks, ascending).
    stack: Vec<u32>,
    /// Union masks of the stack prefixes.
    masks: Vec<u64>,
    /// Next candidate rank to try at the current depth.
    cursor: u32,
    exhausted: bool,
}

impl Iterator for CliqueIter<'_> {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.exhausted {
            return None;
        }
        let vcount = self.graph.vertices.len() as u32;
        loop {
            if self.cursor >= vcount {
                // Backtrack: pop one frame and resume after it.
                match self.stack.pop() {
                    Some(v) => {
                        self.masks.pop();
                        self.cursor = v + 1;
                        continue;
                    }
                    None => {
                        self.exhausted = true;
                        return None;
                    }
                }
            }
            let v = self.cursor;
            let used = self.masks.last().copied().unwrap_or(0);
            let mv = self.graph.vertices[v as usize];
            if used & mv != 0 {
                self.cursor += 1;
                continue;
            }
            self.stack.push(v);
            self.masks.push(used | mv);
            if self.stack.len() == self.k {
                let found = self.stack.clone();
                // Resume search as a sibling of the last vertex.
                self.stack.pop();
                self.masks.pop();
                self.cursor = v + 1;
                return Some(found);
            }
            self.cursor = v + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin;

    /// Closed form for the number of k-cliques in KG(n, r):
    /// C(n, kr) * (kr)! / ((r!)^k * k!), computed exactly in u128.
    pub(crate) fn clique_count_closed_form(n: u8, r: u8, k: usize) -> u128 {
        let kr = k as u64 * r as u64;
        if kr > n as u64 {
            return 0;
        }
        let choose = combin::binomial(n as u64, kr).unwrap() as u128;
        // Multinomial (kr)! / (r!)^k counts ordered partitions into k
        // blocks of size r; divide by k! for unordered families.
        let mut ways: u128 = 1;
        let mut remaining = kr;
        for _ in 0..k {
            ways *= combin::binomial(remaining, r as u64).unwrap() as u128;
            remaining -= r as u64;
        }
        let mut kfact: u128 = 1;
        for i in 1..=k as u128 {
            kfact *= i;
        }
        choose * ways / kfact
    }

    #[test]
    fn build_counts() {
        let g = KneserGraph::build(8, 2).unwrap();
        assert_eq!(g.vertex_count(), 28);
        assert_eq!(g.edge_count(), 210);

        let petersen = KneserGraph::build(5, 2).unwrap();
        assert_eq!(petersen.vertex_count(), 10);
        assert_eq!(petersen.edge_count(), 15);

        let g9 = KneserGraph::build(9, 2).unwrap();
        assert_eq!(g9.vertex_count(), 36);
        assert_eq!(g9.edge_count(), 378);

        // n < 2r: edgeless but legal.
        let tiny = KneserGraph::build(3, 2).unwrap();
        assert_eq!(tiny.vertex_count(), 3);
        assert_eq!(tiny.edge_count(), 0);

        assert!(KneserGraph::build(65, 2).is_err());
        assert!(KneserGraph::build(5, 0).is_err());
    }

    #[test]
    fn edge_index_bijection() {
        let g = KneserGraph::build(8, 2).unwrap();
        for e in 0..g.edge_count() as u32 {
            let (u, v) = g.edge(e);
            assert!(u < v);
            assert_eq!(g.edge_index(u, v), Some(e));
            assert_eq!(g.edge_index(v, u), Some(e));
        }
        // Intersecting pair has no edge.
        let a = g.rank_of(&RSet::new(&[1, 2], 8).unwrap()).unwrap();
        let b = g.rank_of(&RSet::new(&[2, 3], 8).unwrap()).unwrap();
        assert_eq!(g.edge_index(a, b), None);
    }

    #[test]
    fn degree_regularity() {
        for (n, r) in [(5u8, 2u8), (8, 2), (9, 2), (10, 3), (13, 3)] {
            let g = KneserGraph::build(n, r).unwrap();
            let expect = combin::binomial((n - r) as u64, r as u64).unwrap() as usize;
            for v in 0..g.vertex_count() as u32 {
                assert_eq!(g.degree(v), expect, "KG({n},{r}) vertex {v}");
            }
        }
    }

    #[test]
    fn triangle_counts_match_closed_form() {
        for (n, r, want) in [(8u8, 2u8, 420u64), (9, 2, 1260), (13, 3, 200_200)] {
            assert_eq!(clique_count_closed_form(n, r, 3), want as u128);
            let g = KneserGraph::build(n, r).unwrap();
            assert_eq!(g.cliques(3).count() as u64, want, "KG({n},{r})");
        }
        // Petersen is triangle-free.
        let petersen = KneserGraph::build(5, 2).unwrap();
        assert_eq!(petersen.cliques(3).count(), 0);
    }

    #[test]
    fn cliques_are_sorted_distinct_and_disjoint() {
        let g = KneserGraph::build(9, 2).unwrap();
        let mut seen = alloc::collections::BTreeSet::new();
        let mut prev: Option<Vec<u32>> = None;
        for c in g.cliques(3) {
            assert!(c.windows(2).all(|w| w[0] < w[1]));
            let fam = g.family(&c);
            assert_eq!(fam.len(), 3);
            if let Some(p) = &prev {
                assert!(p < &c, "lexicographic enumeration order");
            }
            assert!(seen.insert(c.clone()));
            prev = Some(c);
        }
        assert_eq!(seen.len(), 1260);
    }

    #[test]
    fn clique_partition_counting() {
        let g = KneserGraph::build(9, 2).unwrap();
        let v = g.vertex_count() as u32;
        let mid = v / 2;
        let a = g.clique_count_in(3, 0, mid);
        let b = g.clique_count_in(3, mid, v);
        assert_eq!(a + b, 1260);
    }

    #[test]
    fn proper_coloring_examples() {
        // KG(7,2): 5 colors, all 21 edges properly colored.
        let g = KneserGraph::build(7, 2).unwrap();
        let colors = g.proper_coloring().unwrap();
        let distinct: alloc::collections::BTreeSet<u16> = colors.iter().copied().collect();
        assert_eq!(distinct.len(), 5);
        for e in 0..g.edge_count() as u32 {
            let (u, v) = g.edge(e);
            assert_ne!(colors[u as usize], colors[v as usize]);
        }

        // KG(6,2): color({5,6}) = 4 = n - 2r + 2.
        let g6 = KneserGraph::build(6, 2).unwrap();
        let c6 = g6.proper_coloring().unwrap();
        let v56 = g6.rank_of(&RSet::new(&[5, 6], 6).unwrap()).unwrap();
        assert_eq!(c6[v56 as usize], 4);

        // KG(10,3): 6 colors, verified proper by exhaustive edge scan.
        let g10 = KneserGraph::build(10, 3).unwrap();
        let c10 = g10.proper_coloring().unwrap();
        let distinct: alloc::collections::BTreeSet<u16> = c10.iter().copied().collect();
        assert_eq!(distinct.len(), 6);
        for e in 0..g10.edge_count() as u32 {
            let (u, v) = g10.edge(e);
            assert_ne!(c10[u as usize], c10[v as usize]);
        }

        assert!(KneserGraph::build(3, 2).unwrap().proper_coloring().is_err());
    }

    #[test]
    fn induced_subgraph_examples() {
        let g = KneserGraph::build(8, 2).unwrap();
        // S = {1,2,3,4}: KG(4,2) is a perfect matching on 6 vertices.
        let s = 0b1111u64;
        let verts = g.induced_on(s);
        assert_eq!(verts.len(), 6);
        let mut edges = 0;
        for (a, &u) in verts.iter().enumerate() {
            for &v in &verts[a + 1..] {
                if g.adjacent(u, v) {
                    edges += 1;
                }
            }
        }
        assert_eq!(edges, 3);

        // |S| < r yields the empty set, not an error.
        assert!(g.induced_on(0b11).len() == 1); // {1,2} itself
        let g3 = KneserGraph::build(8, 3).unwrap();
        assert!(g3.induced_on(0b11).is_empty());

        // KG(17,2) induced on any 6-set: 15 vertices, 45 edges.
        let g17 = KneserGraph::build(17, 2).unwrap();
        let mut s6 = 0u64;
        for e in [2u8, 3, 5, 8, 13, 17] {
            s6 |= 1 << (e - 1);
        }
        let verts = g17.induced_on(s6);
        assert_eq!(verts.len(), 15);
        let mut edges = 0;
        for (a, &u) in verts.iter().enumerate() {
            for &v in &verts[a + 1..] {
                if g17.adjacent(u, v) {
                    edges += 1;
                }
            }
        }
        assert_eq!(edges, 45);
    }

    #[test]
    fn clique_counts_vs_closed_form_small_sweep() {
        for n in 2u8..=12 {
            for r in 1..=n / 2 {
                let g = KneserGraph::build(n, r).unwrap();
                for k in 2..=4usize {
                    let want = clique_count_closed_form(n, r, k);
                    if want > 50_000 {
                        continue;
                    }
                    assert_eq!(
                        g.cliques(k).count() as u128,
                        want,
                        "KG({n},{r}) k={k}"
                    );
                }
            }
        }
    }
}
