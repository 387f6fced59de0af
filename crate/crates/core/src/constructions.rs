//! Generators for the explicit colorings with provable guarantees. Each
//! construction pairs with the verifier that certifies its output; nothing
//! here is trusted without a re-check.

use alloc::vec::Vec;

use crate::coloring::{Color, EdgeColoring};
use crate::combin::RSet;
use crate::error::{Error, Result};
use crate::kneser::KneserGraph;

/// A 2-coloring of all `r`-subsets of `[n]` — equivalently a vertex
/// 2-coloring of `KG(n, r)`, equivalently an edge coloring of the complete
/// `r`-uniform hypergraph on `[n]`.
#[derive(Clone, Debug)]
pub struct HypergraphColoring {
    n: u8,
    r: u8,
    /// Color per vertex rank (colex order).
    colors: Vec<Color>,
}

impl HypergraphColoring {
    /// Colors every `r`-subset of `[n]` by the given rule.
    pub fn from_fn<F: FnMut(&RSet) -> Color>(n: u8, r: u8, mut rule: F) -> Result<Self> {
        let count = crate::combin::binomial(n as u64, r as u64)?;
        let mut colors = Vec::with_capacity(count as usize);
        for i in 0..count {
            let s = RSet::unrank(i, n, r)?;
            colors.push(rule(&s));
        }
        Ok(HypergraphColoring { n, r, colors })
    }

    /// The quadratic-residue pair coloring of `[q]`: `{a, b}` is red iff
    /// `a - b` is a nonzero square modulo `q`. Requires a prime
    /// `q ≡ 1 (mod 4)` so that residuosity is symmetric.
    pub fn paley(q: u8) -> Result<Self> {
        if q > 64 {
            return Err(Error::GroundSetTooLarge(q as u64));
        }
        if !is_prime(q as u32) || q % 4 != 1 {
            return Err(Error::InvalidParameter(
                "Paley coloring needs a prime q congruent to 1 mod 4",
            ));
        }
        let mut residue = [false; 64];
        for x in 1..q as u32 {
            residue[(x * x % q as u32) as usize] = true;
        }
        HypergraphColoring::from_fn(q, 2, |s| {
            let e = s.elements();
            let diff = (e[1] - e[0]) as usize % q as usize;
            if residue[diff] {
                Color::Red
            } else {
                Color::Blue
            }
        })
    }

    /// Ground-set size.
    pub fn n(&self) -> u8 {
        self.n
    }

    /// Subset size.
    pub fn r(&self) -> u8 {
        self.r
    }

    /// Color of the subset with the given vertex rank.
    pub fn color_of_rank(&self, rank: u32) -> Color {
        self.colors[rank as usize]
    }

    /// Color of an `r`-subset.
    pub fn color_of(&self, s: &RSet) -> Result<Color> {
        if s.ground() != self.n {
            return Err(Error::GroundSetMismatch);
        }
        if s.cardinality() != self.r {
            return Err(Error::WrongCardinality {
                expected: self.r as usize,
                actual: s.cardinality() as usize,
            });
        }
        Ok(self.colors[s.rank() as usize])
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The 5-cycle coloring of `K_5` (as `KG(5, 1)`): cycle edges red, the
/// complementary cycle blue. The classical witness that `R(3,3) > 5`, used
/// as the default base for [`chromatic_lift`].
pub fn five_cycle_base() -> EdgeColoring {
    let g = KneserGraph::build(5, 1).expect("KG(5,1) is tiny");
    let mut c = EdgeColoring::uniform(g, Color::Blue);
    for e in 0..c.graph().edge_count() as u32 {
        let (u, v) = c.graph().edge(e);
        let (a, b) = (u.min(v), u.max(v));
        if b - a == 1 || b - a == 4 {
            c.set(e, Color::Red);
        }
    }
    c
}

/// Pulls a complete-graph edge coloring back through the proper
/// `(n - 2r + 2)`-coloring of `KG(n, r)`: edge `uv` receives
/// `base(color(u), color(v))`.
///
/// The base must color `K_q` with `q = n - 2r + 2`, given as a coloring of
/// the degenerate Kneser graph `KG(q, 1)`. Endpoint colors always differ,
/// so the lookup is well defined; if the base is `(s, t)`-good, so is the
/// lift.
pub fn chromatic_lift(n: u8, r: u8, base: &EdgeColoring) -> Result<EdgeColoring> {
    if (n as u16) < 2 * r as u16 {
        return Err(Error::InvalidParameter("chromatic lift needs n >= 2r"));
    }
    let q = n - 2 * r + 2;
    if base.graph().r() != 1 || base.graph().n() != q {
        return Err(Error::InvalidParameter(
            "base coloring must cover the complete graph on n - 2r + 2 vertices",
        ));
    }
    let g = KneserGraph::build(n, r)?;
    let vertex_colors = g.proper_coloring()?;
    let mut out = EdgeColoring::uniform(g, Color::Blue);
    for e in 0..out.graph().edge_count() as u32 {
        let (u, v) = out.graph().edge(e);
        let (cu, cv) = (vertex_colors[u as usize], vertex_colors[v as usize]);
        debug_assert_ne!(cu, cv, "proper coloring puts the lookup off-diagonal");
        // Vertex i of KG(q,1) is {i+1}, so rank = color - 1.
        let be = base
            .graph()
            .edge_index(cu as u32 - 1, cv as u32 - 1)
            .expect("distinct colors are adjacent in a complete graph");
        out.set(e, base.color_of(be));
    }
    Ok(out)
}

/// The triangle-free split coloring of `KG(3r + 1, r)` for `r >= 2`.
///
/// Partitions the vertices into `X` (sets containing `3r + 1`), `Y` (sets
/// containing `3r` but not `3r + 1`), and `Z` (the rest, a copy of
/// `KG(3r - 1, r)`). Edges inside `Z` and between `X` and `Y` are blue,
/// everything else red. The result has no monochromatic triangle, which
/// puts the `(3, 3)` Kneser Ramsey number above `3r + 1`.
pub fn three_r_plus_one(r: u8) -> Result<EdgeColoring> {
    if r < 2 {
        return Err(Error::InvalidParameter("the split coloring needs r >= 2"));
    }
    if 3 * r as u16 + 1 > 64 {
        return Err(Error::GroundSetTooLarge(3 * r as u64 + 1));
    }
    let n = 3 * r + 1;
    let g = KneserGraph::build(n, r)?;
    let top = 1u64 << (n - 1); // element 3r + 1
    let second = 1u64 << (n - 2); // element 3r
    let mut out = EdgeColoring::uniform(g, Color::Red);
    for e in 0..out.graph().edge_count() as u32 {
        let (u, v) = out.graph().edge(e);
        let (mu, mv) = (out.graph().vertex_mask(u), out.graph().vertex_mask(v));
        let in_x = |m: u64| m & top != 0;
        let in_y = |m: u64| m & top == 0 && m & second != 0;
        let in_z = |m: u64| m & (top | second) == 0;
        let blue = (in_z(mu) && in_z(mv)) || (in_x(mu) && in_y(mv)) || (in_y(mu) && in_x(mv));
        if blue {
            out.set(e, Color::Blue);
        }
    }
    Ok(out)
}

/// Sizes of the `X`/`Y`/`Z` parts of [`three_r_plus_one`]'s partition.
pub fn split_part_sizes(coloring: &EdgeColoring) -> (usize, usize, usize) {
    let g = coloring.graph();
    let n = g.n();
    let top = 1u64 << (n - 1);
    let second = 1u64 << (n - 2);
    let mut x = 0;
    let mut y = 0;
    let mut z = 0;
    for v in 0..g.vertex_count() as u32 {
        let m = g.vertex_mask(v);
        if m & top != 0 {
            x += 1;
        } else if m & second != 0 {
            y += 1;
        } else {
            z += 1;
        }
    }
    (x, y, z)
}

/// The bichromatic-matching coloring of `KG(n, r)` for `n >= 2r`, `r >= 2`.
///
/// Every edge `(A, B)` lies in the unique maximum induced matching on the
/// ground `2r`-set `S = A ∪ B`. Within each `S` the designated edge — the
/// one containing the colex-least `r`-subset of `S`, i.e. the `r` smallest
/// elements — is red and the rest are blue, so every matching carries both
/// colors and no monochromatic induced `KG(2r, r)` exists.
pub fn induced_matching_coloring(n: u8, r: u8) -> Result<EdgeColoring> {
    if r < 2 {
        return Err(Error::InvalidParameter("the matching coloring needs r >= 2"));
    }
    if (n as u16) < 2 * r as u16 {
        return Err(Error::InvalidParameter("the matching coloring needs n >= 2r"));
    }
    let g = KneserGraph::build(n, r)?;
    let mut out = EdgeColoring::uniform(g, Color::Blue);
    for e in 0..out.graph().edge_count() as u32 {
        let (u, v) = out.graph().edge(e);
        let (mu, mv) = (out.graph().vertex_mask(u), out.graph().vertex_mask(v));
        let union = mu | mv;
        // The r smallest elements of S = A union B, as a mask.
        let mut rest = union;
        for _ in 0..r {
            rest &= rest - 1;
        }
        let least = union & !rest;
        if mu == least || mv == least {
            out.set(e, Color::Red);
        }
    }
    Ok(out)
}

/// The partition coloring of `KG(n, r)` built from a hypergraph 2-coloring:
/// vertices split into `P1` (red sets of `h`) and `P2` (blue sets); edges
/// inside a part are red, edges across are blue.
///
/// The blue subgraph is bipartite, hence triangle-free. If `h` has no
/// monochromatic complete `r`-uniform subhypergraph on `3r` vertices, the
/// output also has no red induced `KG(3r, r)`.
pub fn palvolgyi_coloring(h: &HypergraphColoring) -> Result<EdgeColoring> {
    let g = KneserGraph::build(h.n(), h.r())?;
    let mut out = EdgeColoring::uniform(g, Color::Blue);
    for e in 0..out.graph().edge_count() as u32 {
        let (u, v) = out.graph().edge(e);
        if h.color_of_rank(u) == h.color_of_rank(v) {
            out.set(e, Color::Red);
        }
    }
    Ok(out)
}

/// Six `k`-subsets of `[3k]` covering every ground element exactly twice:
/// the three consecutive blocks plus the blocks shifted by `k/2` (two
/// disjoint perfect matchings of the `k`-uniform hypergraph).
///
/// Requires even `k`; the half shift needs `k/2`.
pub fn six_sets(k: u8) -> Result<Vec<RSet>> {
    if k == 0 || k % 2 != 0 {
        return Err(Error::InvalidParameter("six_sets needs even k >= 2"));
    }
    let n16 = 3u16 * k as u16;
    if n16 > 64 {
        return Err(Error::GroundSetTooLarge(n16 as u64));
    }
    let n = n16 as u8;
    let mut out = Vec::with_capacity(6);
    for b in 0..3u16 {
        let elements: Vec<u8> = (1..=k as u16).map(|i| (b * k as u16 + i) as u8).collect();
        out.push(RSet::new(&elements, n)?);
    }
    let h = k as u16 / 2;
    for b in 0..3u16 {
        let mut elements: Vec<u8> = (1..=k as u16)
            .map(|i| (((b * k as u16 + i - 1 + h) % n16) + 1) as u8)
            .collect();
        elements.sort_unstable();
        out.push(RSet::new(&elements, n)?);
    }
    Ok(out)
}
