//! Red/blue edge colorings of Kneser graphs and the verification predicates
//! used by every other module.
//!
//! All `find_*` operations return the first witness in canonical enumeration
//! order, so a failing verification reproduces byte-for-byte.

use alloc::vec::Vec;

use crate::combin::{subset_masks, RSet};
use crate::error::{Error, Result};
use crate::kneser::{CliqueFamily, KneserGraph};

/// An edge (or set) color. Red is the color SAT variables assert.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    /// Red.
    Red,
    /// Blue.
    Blue,
}

impl Color {
    /// The other color.
    #[inline]
    pub fn flipped(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    /// One-letter tag used in transcripts and DIMACS comments.
    pub fn letter(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
        }
    }
}

impl core::fmt::Display for Color {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Color::Red => f.write_str("red"),
            Color::Blue => f.write_str("blue"),
        }
    }
}

/// A two-valued coloring over the frozen edge index space of a Kneser
/// graph, one bit per edge (set = red).
#[derive(Clone, Debug)]
pub struct EdgeColoring {
    graph: KneserGraph,
    red: Vec<u64>,
}

/// A monochromatic clique found by [`EdgeColoring::find_mono_clique`].
#[derive(Clone, Debug)]
pub struct MonoWitness {
    /// The pairwise-disjoint family whose edges all carry [`Self::color`].
    pub clique: CliqueFamily,
    /// The witnessed color.
    pub color: Color,
}

impl EdgeColoring {
    /// An all-`color` coloring.
    pub fn uniform(graph: KneserGraph, color: Color) -> Self {
        let words = graph.edge_count().div_ceil(64);
        let fill = match color {
            Color::Red => u64::MAX,
            Color::Blue => 0,
        };
        let mut coloring = EdgeColoring {
            graph,
            red: alloc::vec![fill; words],
        };
        coloring.clear_tail();
        coloring
    }

    /// Builds a coloring from the red edge set; everything else is blue.
    /// Every pair must be a valid edge (disjoint `r`-sets over `[n]`), and
    /// duplicates are rejected.
    pub fn from_red_edges<'a, I>(graph: KneserGraph, red_edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a (RSet, RSet)>,
    {
        let mut coloring = EdgeColoring::uniform(graph, Color::Blue);
        for (a, b) in red_edges {
            let u = coloring.graph.rank_of(a)?;
            let v = coloring.graph.rank_of(b)?;
            let e = coloring
                .graph
                .edge_index(u, v)
                .ok_or(Error::InvalidParameter("red edge endpoints not disjoint"))?;
            if coloring.color_of(e) == Color::Red {
                return Err(Error::InvalidParameter("duplicate red edge"));
            }
            coloring.set(e, Color::Red);
        }
        Ok(coloring)
    }

    fn clear_tail(&mut self) {
        let used = self.graph.edge_count() % 64;
        if used != 0 {
            if let Some(last) = self.red.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
    }

    /// The underlying graph.
    #[inline]
    pub fn graph(&self) -> &KneserGraph {
        &self.graph
    }

    /// Color of edge `e`.
    #[inline]
    pub fn color_of(&self, e: u32) -> Color {
        let w = (e / 64) as usize;
        if self.red[w] >> (e % 64) & 1 == 1 {
            Color::Red
        } else {
            Color::Blue
        }
    }

    /// Recolors edge `e`.
    #[inline]
    pub fn set(&mut self, e: u32, color: Color) {
        let w = (e / 64) as usize;
        match color {
            Color::Red => self.red[w] |= 1u64 << (e % 64),
            Color::Blue => self.red[w] &= !(1u64 << (e % 64)),
        }
    }

    /// Flips the color of edge `e`.
    pub fn flip(&mut self, e: u32) {
        self.set(e, self.color_of(e).flipped());
    }

    /// The coloring with red and blue exchanged.
    pub fn mirror(&self) -> EdgeColoring {
        let mut out = EdgeColoring {
            graph: self.graph.clone(),
            red: self.red.iter().map(|w| !w).collect(),
        };
        out.clear_tail();
        out
    }

    /// Number of red edges.
    pub fn red_count(&self) -> usize {
        self.red.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Edge indices of all red edges, ascending.
    pub fn red_edge_indices(&self) -> Vec<u32> {
        (0..self.graph.edge_count() as u32)
            .filter(|&e| self.color_of(e) == Color::Red)
            .collect()
    }

    /// First monochromatic `k`-clique of the given color, in clique
    /// enumeration order, if any. Exhaustive.
    pub fn find_mono_clique(&self, color: Color, k: usize) -> Option<MonoWitness> {
        if k < 2 {
            // A single vertex is vacuously monochromatic; the interesting
            // domain starts at edges.
            return None;
        }
        'outer: for ranks in self.graph.cliques(k) {
            for (i, &u) in ranks.iter().enumerate() {
                for &v in &ranks[i + 1..] {
                    let e = self.graph.edge_index(u, v).expect("clique pairs are edges");
                    if self.color_of(e) != color {
                        continue 'outer;
                    }
                }
            }
            return Some(MonoWitness {
                clique: self.graph.family(&ranks),
                color,
            });
        }
        None
    }

    /// Whether the coloring is "good" for `(s, t)`: no red `K_s` and no
    /// blue `K_t`.
    pub fn is_good(&self, s: usize, t: usize) -> bool {
        self.find_mono_clique(Color::Red, s).is_none()
            && self.find_mono_clique(Color::Blue, t).is_none()
    }

    /// First ground `m`-set `S` (colex order) whose induced subgraph
    /// `KG(S, r)` is entirely the given color, if any. Exhaustive over all
    /// `C(n, m)` choices; `m > n` is vacuous.
    pub fn find_mono_induced_kneser(&self, color: Color, m: u8) -> Option<RSet> {
        let n = self.graph.n();
        if m > n || m < 2 * self.graph.r() {
            return None;
        }
        'sets: for s_mask in subset_masks(n, m) {
            let verts = self.graph.induced_on(s_mask);
            let mut saw_edge = false;
            for (i, &u) in verts.iter().enumerate() {
                for &v in &verts[i + 1..] {
                    if let Some(e) = self.graph.edge_index(u, v) {
                        saw_edge = true;
                        if self.color_of(e) != color {
                            continue 'sets;
                        }
                    }
                }
            }
            if saw_edge {
                return Some(RSet::from_mask(s_mask, n).expect("mask over [n]"));
            }
        }
        None
    }
}

/// A red/blue coloring of the *complete* graph on an explicit finite list
/// of sets. This is the host structure for empty-intersection triangle
/// questions, where the vertices are large `k`-sets and every pair is an
/// edge regardless of disjointness.
#[derive(Clone, Debug)]
pub struct SetFamilyColoring {
    sets: Vec<RSet>,
    /// Pair colors indexed by `(i, j)`, `i < j`, lexicographically.
    colors: Vec<Color>,
}

impl SetFamilyColoring {
    /// Colors all pairs of `sets` by the given rule.
    pub fn from_fn<F: FnMut(&RSet, &RSet) -> Color>(sets: Vec<RSet>, mut rule: F) -> Result<Self> {
        if sets.len() < 2 {
            return Err(Error::InvalidParameter(
                "a pair coloring needs at least two sets",
            ));
        }
        let ground = sets[0].ground();
        if sets.iter().any(|s| s.ground() != ground) {
            return Err(Error::GroundSetMismatch);
        }
        let mut colors = Vec::with_capacity(sets.len() * (sets.len() - 1) / 2);
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                colors.push(rule(&sets[i], &sets[j]));
            }
        }
        Ok(SetFamilyColoring { sets, colors })
    }

    /// The vertex sets.
    pub fn sets(&self) -> &[RSet] {
        &self.sets
    }

    /// Color of the pair `{i, j}`.
    pub fn pair_color(&self, i: usize, j: usize) -> Color {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        let m = self.sets.len();
        let idx = a * m - a * (a + 1) / 2 + (b - a - 1);
        self.colors[idx]
    }

    /// First monochromatic triple `(A, B, C)` with `A ∩ B ∩ C = ∅`, in
    /// lexicographic index order, if any. Exhaustive.
    pub fn find_empty_intersection_mono_triangle(&self) -> Option<(RSet, RSet, RSet, Color)> {
        let m = self.sets.len();
        for i in 0..m {
            for j in i + 1..m {
                let cij = self.pair_color(i, j);
                for l in j + 1..m {
                    if self.pair_color(i, l) == cij
                        && self.pair_color(j, l) == cij
                        && self.sets[i].mask() & self.sets[j].mask() & self.sets[l].mask() == 0
                    {
                        return Some((self.sets[i], self.sets[j], self.sets[l], cij));
                    }
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kneser::KneserGraph;

    /// Naive oracle: odometer over all ascending k-tuples of vertex ranks
    /// in lexicographic order, checking every pair. Independent of the
    /// backtracking enumerator and the bit-packed color store.
    fn naive_mono_clique(c: &EdgeColoring, color: Color, k: usize) -> Option<Vec<u32>> {
        let g = c.graph();
        let v = g.vertex_count();
        if k > v {
            return None;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        'outer: loop {
            let mut all_match = true;
            for a in 0..k {
                for b in a + 1..k {
                    match g.edge_index(idx[a] as u32, idx[b] as u32) {
                        Some(e) if c.color_of(e) == color => {}
                        _ => {
                            all_match = false;
                            break;
                        }
                    }
                }
                if !all_match {
                    break;
                }
            }
            if all_match {
                return Some(idx.iter().map(|&i| i as u32).collect());
            }
            // Advance the odometer.
            let mut pos = k;
            while pos > 0 {
                pos -= 1;
                if idx[pos] < v - (k - pos) {
                    idx[pos] += 1;
                    for q in pos + 1..k {
                        idx[q] = idx[q - 1] + 1;
                    }
                    continue 'outer;
                }
            }
            return None;
        }
    }

    fn pseudo_random_coloring(graph: KneserGraph, seed: u64) -> EdgeColoring {
        let mut c = EdgeColoring::uniform(graph, Color::Blue);
        let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15) | 1;
        for e in 0..c.graph().edge_count() as u32 {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            if state & 1 == 1 {
                c.set(e, Color::Red);
            }
        }
        c
    }

    #[test]
    fn all_red_has_red_triangle() {
        let g = KneserGraph::build(6, 2).unwrap();
        let c = EdgeColoring::uniform(g, Color::Red);
        assert_eq!(c.graph().cliques(3).count(), 15);
        let w = c.find_mono_clique(Color::Red, 3).unwrap();
        assert_eq!(w.color, Color::Red);
        assert_eq!(w.clique.len(), 3);
        assert!(c.find_mono_clique(Color::Blue, 3).is_none());
        assert!(!c.is_good(3, 3));
    }

    #[test]
    fn mirror_swaps_goodness_sides() {
        let g = KneserGraph::build(7, 2).unwrap();
        let c = pseudo_random_coloring(g, 42);
        let m = c.mirror();
        assert_eq!(c.red_count() + m.red_count(), c.graph().edge_count());
        for s in 2..=3usize {
            for t in 2..=3usize {
                assert_eq!(c.is_good(s, t), m.is_good(t, s));
            }
        }
    }

    #[test]
    fn first_witness_is_canonical() {
        let g = KneserGraph::build(7, 2).unwrap();
        for seed in 0..30u64 {
            let c = pseudo_random_coloring(g.clone(), seed);
            for color in [Color::Red, Color::Blue] {
                for k in 2..=3usize {
                    let fast = c.find_mono_clique(color, k);
                    let naive = naive_mono_clique(&c, color, k);
                    match (fast, naive) {
                        (None, None) => {}
                        (Some(w), Some(ranks)) => {
                            let got: Vec<u32> = w
                                .clique
                                .members()
                                .iter()
                                .map(|s| c.graph().rank_of(s).unwrap())
                                .collect();
                            assert_eq!(got, ranks, "seed {seed} color {color:?} k {k}");
                        }
                        (a, b) => panic!("oracle disagreement: {a:?} vs {b:?}"),
                    }
                }
            }
        }
    }

    #[test]
    fn mono_induced_matching_reduction() {
        // For m = 2r the check reduces to: some ground 2r-set whose
        // C(2r,r)/2 matching edges are all one color.
        let g = KneserGraph::build(6, 2).unwrap();
        let all_red = EdgeColoring::uniform(g, Color::Red);
        let s = all_red.find_mono_induced_kneser(Color::Red, 4).unwrap();
        assert_eq!(s.cardinality(), 4);
        assert_eq!(s.elements(), &[1, 2, 3, 4]); // colex-first 4-set
        assert!(all_red.find_mono_induced_kneser(Color::Blue, 4).is_none());
        // m > n is vacuous.
        assert!(all_red.find_mono_induced_kneser(Color::Red, 7).is_none());
    }

    #[test]
    fn set_family_triangle() {
        // Two sets only: no triangle exists.
        let a = RSet::new(&[1, 2], 6).unwrap();
        let b = RSet::new(&[3, 4], 6).unwrap();
        let two = SetFamilyColoring::from_fn(alloc::vec![a, b], |_, _| Color::Red).unwrap();
        assert!(two.find_empty_intersection_mono_triangle().is_none());

        // Three sets with a common element: monochromatic but never empty
        // intersection.
        let x = RSet::new(&[1, 2], 6).unwrap();
        let y = RSet::new(&[1, 3], 6).unwrap();
        let z = RSet::new(&[1, 4], 6).unwrap();
        let shared =
            SetFamilyColoring::from_fn(alloc::vec![x, y, z], |_, _| Color::Blue).unwrap();
        assert!(shared.find_empty_intersection_mono_triangle().is_none());

        // Add a disjoint completion: now a witness exists.
        let w = RSet::new(&[5, 6], 6).unwrap();
        let four =
            SetFamilyColoring::from_fn(alloc::vec![x, y, z, w], |_, _| Color::Blue).unwrap();
        let (a, b, c, col) = four.find_empty_intersection_mono_triangle().unwrap();
        assert_eq!(col, Color::Blue);
        assert_eq!(a.mask() & b.mask() & c.mask(), 0);
    }
}
