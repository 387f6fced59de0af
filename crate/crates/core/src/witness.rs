//! Executable forms of the constructive proofs: witness finders that, given
//! any pair-coloring oracle, locate a monochromatic triangle with empty
//! triple intersection by following the proofs' case analyses, plus a
//! brute-force checker for the disjoint-family partition theorem.
//!
//! Oracles are callbacks because the host complete graphs are astronomically
//! large; only queried pairs ever exist. All query sequences are
//! deterministic and replayable from the transcript.

use alloc::vec::Vec;

use crate::coloring::Color;
use crate::combin::{binomial, RSet};
use crate::constructions::six_sets;
use crate::error::{Error, Result};
use crate::kneser::CliqueFamily;

/// A red/blue answer source for pairs of `k`-sets.
pub trait PairOracle {
    /// The color of the pair `{a, b}`. Must be a function of the unordered
    /// pair; inconsistent answers are detected and reported.
    fn pair_color(&mut self, a: &RSet, b: &RSet) -> Color;
}

impl<F: FnMut(&RSet, &RSet) -> Color> PairOracle for F {
    fn pair_color(&mut self, a: &RSet, b: &RSet) -> Color {
        self(a, b)
    }
}

/// A deterministic pseudo-random oracle keyed by a seed; repeated queries
/// of the same pair always agree.
#[derive(Clone, Copy, Debug)]
pub struct SeededOracle {
    /// The seed; two oracles with equal seeds answer identically.
    pub seed: u64,
}

impl PairOracle for SeededOracle {
    fn pair_color(&mut self, a: &RSet, b: &RSet) -> Color {
        let (lo, hi) = if a.mask() <= b.mask() {
            (a.mask(), b.mask())
        } else {
            (b.mask(), a.mask())
        };
        let h = splitmix64(splitmix64(self.seed ^ lo) ^ hi);
        if h & 1 == 1 {
            Color::Red
        } else {
            Color::Blue
        }
    }
}

/// SplitMix64 step, the usual avalanche mixer.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// One oracle query and its answer, in query order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    /// First set as queried.
    pub a: RSet,
    /// Second set as queried.
    pub b: RSet,
    /// The oracle's answer.
    pub answer: Color,
}

/// A monochromatic triangle with empty triple intersection.
#[derive(Clone, Debug)]
pub struct TriangleWitness {
    /// The three sets.
    pub sets: [RSet; 3],
    /// The shared color of the three pairs.
    pub color: Color,
    /// Every oracle query made, in order.
    pub queries: Vec<Query>,
}

/// Which branch of the case analysis produced the witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// The base triple itself was monochromatic.
    BaseMono,
    /// Monochromatic tail triple; a base endpoint had two same-colored
    /// edges into it.
    TailMonoEscape,
    /// Monochromatic tail triple; the pigeonhole closed a triangle on a
    /// base pair.
    TailMonoPigeonhole,
    /// Monochromatic head triple; a tail endpoint had two same-colored
    /// edges into it.
    HeadMonoEscape,
    /// Monochromatic head triple; the pigeonhole closed a triangle on a
    /// tail pair.
    HeadMonoPigeonhole,
}

/// Result of the density-7/3 witness finder.
#[derive(Clone, Debug)]
pub struct Beta73Witness {
    /// The witness triangle.
    pub witness: TriangleWitness,
    /// The branch of the case analysis that fired.
    pub branch: Branch,
    /// Whether the board-reversal orientation was used.
    pub mirrored: bool,
}

/// The named proof sets over the ground `[7k/3]`: three overlapping base
/// `k`-sets on the board `[3k/2]`, three tail sets sharing the off-board
/// block `T`, and six head sets sharing `[k-1]`.
#[derive(Clone, Debug)]
pub struct ProofSets {
    /// Block size (divisible by 6, at least 12).
    pub k: u8,
    /// Ground-set size `7k/3`.
    pub ground: u8,
    /// The base triple: pairwise intersecting, empty triple intersection.
    pub base: [RSet; 3],
    /// Tail sets `T ∪ T_i`; pairwise intersections equal `T` exactly.
    pub tails: [RSet; 3],
    /// Head sets `[k-1]` plus one extra element each.
    pub heads: [RSet; 6],
}

impl ProofSets {
    fn check_k(k: u8) -> Result<(u8, u8)> {
        if k < 12 || k % 6 != 0 {
            return Err(Error::InvalidParameter(
                "the density-7/3 argument needs k >= 12 divisible by 6",
            ));
        }
        let ground = 7 * k as u16 / 3;
        if ground > 64 {
            return Err(Error::GroundSetTooLarge(ground as u64));
        }
        Ok((k, ground as u8))
    }

    /// The standard orientation. `T_1, T_2, T_3` tile `{k+1 .. 3k/2}` as
    /// consecutive `k/6`-blocks; every triple intersection the argument
    /// uses is empty by construction.
    pub fn standard(k: u8) -> Result<Self> {
        let (k, ground) = Self::check_k(k)?;
        Self::build(k, ground, false)
    }

    /// The board-reversal orientation `x -> 3k/2 + 1 - x` (identity on the
    /// tail block). Needed when both base pairs at the standard anchor
    /// share a color: reversal swaps the anchor to the other end of the
    /// board and moves the `T_i` blocks to `[k/2]`.
    pub fn mirrored(k: u8) -> Result<Self> {
        let (k, ground) = Self::check_k(k)?;
        Self::build(k, ground, true)
    }

    fn build(k: u8, ground: u8, mirrored: bool) -> Result<Self> {
        let board = 3 * k as u16 / 2;
        let reflect = |x: u16| -> u8 {
            if mirrored && x <= board {
                (board + 1 - x) as u8
            } else {
                x as u8
            }
        };
        let set = |elements: Vec<u8>| -> Result<RSet> {
            let mut e = elements;
            e.sort_unstable();
            RSet::new(&e, ground)
        };
        let range = |lo: u16, hi: u16| -> Vec<u8> { (lo..=hi).map(reflect).collect() };

        let half = k as u16 / 2;
        let base = [
            set(range(1, k as u16))?,
            set([range(1, half), range(k as u16 + 1, board)].concat())?,
            set(range(half + 1, board))?,
        ];

        // Tail block T sits above the board and is never reflected.
        let tail_block: Vec<u8> = (board + 1..=7 * k as u16 / 3).map(|x| x as u8).collect();
        let sixth = k as u16 / 6;
        let mut tails = Vec::with_capacity(3);
        for i in 0..3u16 {
            let block = range(k as u16 + i * sixth + 1, k as u16 + (i + 1) * sixth);
            tails.push(set([tail_block.clone(), block].concat())?);
        }

        let mut heads = Vec::with_capacity(6);
        for i in 1..=6u16 {
            let mut elements = range(1, k as u16 - 1);
            elements.push(reflect(k as u16 + i - 1));
            heads.push(set(elements)?);
        }

        Ok(ProofSets {
            k,
            ground,
            base,
            tails: [tails[0], tails[1], tails[2]],
            heads: [heads[0], heads[1], heads[2], heads[3], heads[4], heads[5]],
        })
    }
}

/// Memoizing wrapper: each unordered pair is asked once; the transcript
/// records first-query order.
struct CachedOracle<'o> {
    oracle: &'o mut dyn PairOracle,
    answers: alloc::collections::BTreeMap<(u64, u64), Color>,
    transcript: Vec<Query>,
}

impl<'o> CachedOracle<'o> {
    fn new(oracle: &'o mut dyn PairOracle) -> Self {
        CachedOracle {
            oracle,
            answers: alloc::collections::BTreeMap::new(),
            transcript: Vec::new(),
        }
    }

    fn query(&mut self, a: &RSet, b: &RSet) -> Color {
        let key = (a.mask().min(b.mask()), a.mask().max(b.mask()));
        if let Some(&c) = self.answers.get(&key) {
            return c;
        }
        let c = self.oracle.pair_color(a, b);
        self.answers.insert(key, c);
        self.transcript.push(Query {
            a: *a,
            b: *b,
            answer: c,
        });
        c
    }

    /// Re-asks the underlying oracle directly and compares with the cache.
    fn recheck(&mut self, a: &RSet, b: &RSet) -> Result<Color> {
        let key = (a.mask().min(b.mask()), a.mask().max(b.mask()));
        let cached = *self.answers.get(&key).expect("witness pairs were queried");
        let fresh = self.oracle.pair_color(a, b);
        if fresh != cached {
            return Err(Error::InconsistentOracle);
        }
        Ok(cached)
    }
}

/// Finds a monochromatic triangle `A, B, C` with `A ∩ B ∩ C = ∅` among the
/// named proof sets over `[7k/3]`, querying only pairs of those sets.
///
/// The search follows the proof's case analysis: base triple
/// monochromatic → done; otherwise orient (reversing the board when both
/// base pairs at the standard anchor agree); tail triple monochromatic →
/// escape or pigeonhole; otherwise orient among the tails and find a
/// monochromatic head triple among six (guaranteed by `R(3,3) = 6`),
/// closing with the same escape-or-pigeonhole step. Every returned witness
/// is re-checked for monochromaticity (against the live oracle, catching
/// inconsistent oracles) and empty triple intersection.
pub fn beta_73_witness(k: u8, oracle: &mut dyn PairOracle) -> Result<Beta73Witness> {
    let standard = ProofSets::standard(k)?;
    let mut cache = CachedOracle::new(oracle);

    let c01 = cache.query(&standard.base[0], &standard.base[1]);
    let c02 = cache.query(&standard.base[0], &standard.base[2]);
    let c12 = cache.query(&standard.base[1], &standard.base[2]);

    if c01 == c02 && c02 == c12 {
        let witness = finish(
            &mut cache,
            [standard.base[0], standard.base[1], standard.base[2]],
            c01,
        )?;
        return Ok(Beta73Witness {
            witness,
            branch: Branch::BaseMono,
            mirrored: false,
        });
    }

    // Orientation: the anchor must be the base set whose pairwise
    // intersections with the other two avoid the middle block (where the
    // tail extras T_i live). In the standard orientation that is base[0];
    // if its two edges share a color, the board reversal swaps the anchor
    // to the other end and relocates the extras, after which the two
    // anchor edges differ.
    let (sets, mirrored, anchor, red_partner, blue_partner) = if c01 != c02 {
        let (rp, bp) = if c01 == Color::Red { (1, 2) } else { (2, 1) };
        (standard, false, 0usize, rp, bp)
    } else {
        let m = ProofSets::mirrored(k)?;
        // m.base = [S3, S2, S1] as concrete sets; the anchor's edges are
        // the old pairs (S3,S2) = c12 and (S3,S1) = c02, which differ here.
        debug_assert_ne!(c12, c02);
        let (rp, bp) = if c12 == Color::Red { (1, 2) } else { (2, 1) };
        (m, true, 0usize, rp, bp)
    };

    let t01 = cache.query(&sets.tails[0], &sets.tails[1]);
    let t02 = cache.query(&sets.tails[0], &sets.tails[2]);
    let t12 = cache.query(&sets.tails[1], &sets.tails[2]);

    if t01 == t02 && t02 == t12 {
        let mono = t01;
        // Escape or pigeonhole over the base pair of the opposite color.
        let partner = if mono == Color::Blue {
            red_partner
        } else {
            blue_partner
        };
        let pair = [sets.base[anchor], sets.base[partner]];
        let (triple, color, branch) = escape_or_pigeonhole(&mut cache, &pair, &sets.tails, mono);
        let witness = finish(&mut cache, triple, color)?;
        return Ok(Beta73Witness {
            witness,
            branch,
            mirrored,
        });
    }

    // Tail triple bicolored: orient among the tails (any tail pair works
    // for the final pigeonhole, their intersections all equal T).
    let tail_colors = [(0, 1, t01), (0, 2, t02), (1, 2, t12)];
    let (ta, tr, tb) = orient_triple(&tail_colors);

    // Head stage: find the monochromatic triple among the six heads.
    let mut head_colors = [[Color::Red; 6]; 6];
    for x in 0..6usize {
        for y in x + 1..6 {
            head_colors[x][y] = cache.query(&sets.heads[x], &sets.heads[y]);
        }
    }
    let mut mono_triple = None;
    'scan: for x in 0..6usize {
        for y in x + 1..6 {
            for z in y + 1..6 {
                if head_colors[x][y] == head_colors[x][z] && head_colors[x][z] == head_colors[y][z]
                {
                    mono_triple = Some(([x, y, z], head_colors[x][y]));
                    break 'scan;
                }
            }
        }
    }
    let ([hx, hy, hz], mono) =
        mono_triple.ok_or(Error::TheoremViolation("K6 without a monochromatic triangle"))?;
    let head_triple = [sets.heads[hx], sets.heads[hy], sets.heads[hz]];

    let partner = if mono == Color::Blue { tr } else { tb };
    let pair = [sets.tails[ta], sets.tails[partner]];
    let (triple, color, branch) = escape_or_pigeonhole(&mut cache, &pair, &head_triple, mono);
    let branch = match branch {
        Branch::TailMonoEscape => Branch::HeadMonoEscape,
        Branch::TailMonoPigeonhole => Branch::HeadMonoPigeonhole,
        other => other,
    };
    let witness = finish(&mut cache, triple, color)?;
    Ok(Beta73Witness {
        witness,
        branch,
        mirrored,
    })
}

/// Picks a vertex of a bicolored triangle with one incident edge of each
/// color; returns (anchor index, red partner, blue partner).
fn orient_triple(colors: &[(usize, usize, Color); 3]) -> (usize, usize, usize) {
    for v in 0..3usize {
        let incident: Vec<(usize, Color)> = colors
            .iter()
            .filter(|&&(a, b, _)| a == v || b == v)
            .map(|&(a, b, c)| (if a == v { b } else { a }, c))
            .collect();
        if incident[0].1 != incident[1].1 {
            let (rp, bp) = if incident[0].1 == Color::Red {
                (incident[0].0, incident[1].0)
            } else {
                (incident[1].0, incident[0].0)
            };
            return (v, rp, bp);
        }
    }
    unreachable!("a bicolored triangle has a vertex meeting both colors")
}

/// The shared escape-or-pigeonhole step: `pair` carries the color opposite
/// to `mono`; the `family` triple is monochromatic in `mono`.
///
/// If either pair endpoint has two `mono`-colored edges into the family,
/// that endpoint plus those two family members form a `mono` triangle.
/// Otherwise each endpoint has at most one, so some family member sees
/// both endpoints in the opposite color and closes a triangle on the pair.
fn escape_or_pigeonhole(
    cache: &mut CachedOracle<'_>,
    pair: &[RSet; 2],
    family: &[RSet],
    mono: Color,
) -> ([RSet; 3], Color, Branch) {
    let mut edge_colors = [[Color::Red; 6]; 2];
    for (w, endpoint) in pair.iter().enumerate() {
        for (i, member) in family.iter().enumerate() {
            edge_colors[w][i] = cache.query(endpoint, member);
        }
    }
    for (w, endpoint) in pair.iter().enumerate() {
        let matching: Vec<usize> = (0..family.len())
            .filter(|&i| edge_colors[w][i] == mono)
            .collect();
        if matching.len() >= 2 {
            return (
                [*endpoint, family[matching[0]], family[matching[1]]],
                mono,
                Branch::TailMonoEscape,
            );
        }
    }
    let other = mono.flipped();
    for i in 0..family.len() {
        if edge_colors[0][i] == other && edge_colors[1][i] == other {
            return ([pair[0], pair[1], family[i]], other, Branch::TailMonoPigeonhole);
        }
    }
    unreachable!("each endpoint misses at most one family member")
}

/// Post-hoc verification applied to every witness: empty triple
/// intersection is asserted structurally and monochromaticity re-checked
/// against the live oracle.
fn finish(
    cache: &mut CachedOracle<'_>,
    sets: [RSet; 3],
    color: Color,
) -> Result<TriangleWitness> {
    if sets[0].mask() & sets[1].mask() & sets[2].mask() != 0 {
        return Err(Error::TheoremViolation("witness triple intersection nonempty"));
    }
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        if cache.recheck(&sets[a], &sets[b])? != color {
            return Err(Error::TheoremViolation("witness triangle not monochromatic"));
        }
    }
    Ok(TriangleWitness {
        sets,
        color,
        queries: core::mem::take(&mut cache.transcript),
    })
}

/// Exhaustively scans the 20 triples among [`six_sets`]`(k)` for a
/// monochromatic one; existence is guaranteed by `R(3,3) = 6`, and triple
/// intersections are empty because every ground element lies in exactly
/// two of the six sets.
pub fn beta_3_witness(k: u8, oracle: &mut dyn PairOracle) -> Result<TriangleWitness> {
    let sets = six_sets(k)?;
    let mut cache = CachedOracle::new(oracle);
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let cij = cache.query(&sets[i], &sets[j]);
            for l in j + 1..sets.len() {
                if cache.query(&sets[i], &sets[l]) == cij
                    && cache.query(&sets[j], &sets[l]) == cij
                {
                    return finish(&mut cache, [sets[i], sets[j], sets[l]], cij);
                }
            }
        }
    }
    Err(Error::TheoremViolation(
        "six-set complete graph without a monochromatic triangle",
    ))
}

/// Checks the disjoint-family partition theorem on a concrete instance:
/// given a partition of all `r`-subsets of `[n]` into parts `F_1..F_t` and
/// targets `k_1 >= ... >= k_t >= 2` with `n >= k_1 r + sum_{i>=2}(k_i - 1)`,
/// finds a part `i` containing `k_i` pairwise disjoint sets.
///
/// The hypothesis is verified up front (refusal if violated). Failure of
/// the exhaustive search under a valid hypothesis is a theorem violation —
/// an implementation bug, never a mathematical outcome.
pub fn afl_check(
    n: u8,
    r: u8,
    partition: &[u8],
    targets: &[usize],
) -> Result<(usize, CliqueFamily)> {
    let vertex_count = binomial(n as u64, r as u64)?;
    if partition.len() as u64 != vertex_count {
        return Err(Error::WrongCardinality {
            expected: vertex_count as usize,
            actual: partition.len(),
        });
    }
    if targets.is_empty() || targets.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidParameter(
            "targets must be nonincreasing: k_1 >= ... >= k_t",
        ));
    }
    if *targets.last().unwrap() < 2 {
        return Err(Error::InvalidParameter("all targets must be >= 2"));
    }
    if partition.iter().any(|&p| p as usize >= targets.len()) {
        return Err(Error::InvalidParameter("partition index out of range"));
    }
    let required = targets[0] as u64 * r as u64
        + targets[1..].iter().map(|&k| k as u64 - 1).sum::<u64>();
    if (n as u64) < required {
        return Err(Error::HypothesisNotSatisfied(alloc::format!(
            "needs n >= k_1 r + sum(k_i - 1) = {required}, got n = {n}"
        )));
    }

    for (part, &target) in targets.iter().enumerate() {
        let members: Vec<u64> = (0..vertex_count)
            .filter(|&v| partition[v as usize] == part as u8)
            .map(|v| RSet::unrank(v, n, r).expect("rank in range").mask())
            .collect();
        if let Some(masks) = find_disjoint_family(&members, target) {
            let family = CliqueFamily::new(
                masks
                    .iter()
                    .map(|&m| RSet::from_mask(m, n).expect("valid mask"))
                    .collect(),
            )?;
            return Ok((part, family));
        }
    }
    Err(Error::TheoremViolation(
        "no part contains its target disjoint family under a valid hypothesis",
    ))
}

/// Backtracking search for `need` pairwise-disjoint masks, in input order.
fn find_disjoint_family(masks: &[u64], need: usize) -> Option<Vec<u64>> {
    fn go(masks: &[u64], start: usize, used: u64, picked: &mut Vec<u64>, need: usize) -> bool {
        if picked.len() == need {
            return true;
        }
        if masks.len() - start < need - picked.len() {
            return false;
        }
        for i in start..masks.len() {
            if masks[i] & used == 0 {
                picked.push(masks[i]);
                if go(masks, i + 1, used | masks[i], picked, need) {
                    return true;
                }
                picked.pop();
            }
        }
        false
    }
    let mut picked = Vec::with_capacity(need);
    if go(masks, 0, 0, &mut picked, need) {
        Some(picked)
    } else {
        None
    }
}

/// Deterministic pseudo-random partition of the `r`-subsets of `[n]` into
/// `parts` classes, for property testing and the command line.
pub fn random_partition(n: u8, r: u8, parts: u8, seed: u64) -> Result<Vec<u8>> {
    if parts == 0 {
        return Err(Error::InvalidParameter("need at least one part"));
    }
    let count = binomial(n as u64, r as u64)?;
    Ok((0..count)
        .map(|v| (splitmix64(seed ^ splitmix64(v)) % parts as u64) as u8)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_valid(w: &Beta73Witness, oracle: &mut dyn PairOracle) {
        let [a, b, c] = w.witness.sets;
        assert_eq!(a.mask() & b.mask() & c.mask(), 0);
        for (x, y) in [(a, b), (a, c), (b, c)] {
            assert_eq!(oracle.pair_color(&x, &y), w.witness.color);
        }
        assert!(w.witness.queries.len() <= 66);
    }

    #[test]
    fn proof_sets_shape() {
        for k in [12u8, 18, 24] {
            for sets in [ProofSets::standard(k).unwrap(), ProofSets::mirrored(k).unwrap()] {
                assert_eq!(sets.ground as u16, 7 * k as u16 / 3);
                for s in sets.base.iter().chain(&sets.tails).chain(&sets.heads) {
                    assert_eq!(s.cardinality(), k, "k={k}");
                }
                // Base triple: pairwise intersecting, empty overall.
                let [s1, s2, s3] = sets.base;
                assert_eq!(s1.mask() & s2.mask() & s3.mask(), 0);
                assert!(s1.mask() & s2.mask() != 0);
                // Tails pairwise intersect exactly in the tail block.
                let t = sets.tails[0].mask() & sets.tails[1].mask();
                assert_eq!(sets.tails[1].mask() & sets.tails[2].mask(), t);
                assert_eq!(t.count_ones() as u16, 5 * k as u16 / 6);
                // Anchor pairs avoid the tail extras.
                for tail in &sets.tails {
                    let extras = tail.mask() & !t;
                    assert_eq!(s1.mask() & s2.mask() & extras, 0);
                    assert_eq!(s1.mask() & s3.mask() & extras, 0);
                }
                // Heads share [k-1]-sized common block pairwise; tails miss it.
                let common = sets.heads[0].mask() & sets.heads[1].mask();
                assert_eq!(common.count_ones(), k as u32 - 1);
                for h in &sets.heads {
                    for tail in &sets.tails {
                        assert_eq!(tail.mask() & common & h.mask(), common & tail.mask());
                        // Tail and head-common block disjoint:
                        assert_eq!(tail.mask() & common, 0);
                    }
                    // Heads avoid the tail block entirely.
                    assert_eq!(h.mask() & t, 0);
                }
                let distinct: alloc::collections::BTreeSet<u64> = sets
                    .base
                    .iter()
                    .chain(&sets.tails)
                    .chain(&sets.heads)
                    .map(|s| s.mask())
                    .collect();
                // H_1 coincides with a base set by construction; everything
                // else is distinct.
                assert!(distinct.len() >= 11);
            }
        }
        assert!(ProofSets::standard(10).is_err());
        assert!(ProofSets::standard(13).is_err());
        assert!(ProofSets::standard(30).is_err()); // ground 70 > 64
    }

    #[test]
    fn all_red_hits_base_branch() {
        let mut oracle = |_: &RSet, _: &RSet| Color::Red;
        let w = beta_73_witness(12, &mut oracle).unwrap();
        assert_eq!(w.branch, Branch::BaseMono);
        assert_eq!(w.witness.color, Color::Red);
        assert_valid(&w, &mut oracle);
    }

    #[test]
    fn random_oracles_always_yield_valid_witnesses() {
        for seed in 0..1000u64 {
            let mut oracle = SeededOracle { seed };
            let w = beta_73_witness(12, &mut oracle).unwrap();
            assert_valid(&w, &mut oracle);
        }
    }

    #[test]
    fn random_oracles_k18() {
        for seed in 0..100u64 {
            let mut oracle = SeededOracle { seed };
            let w = beta_73_witness(18, &mut oracle).unwrap();
            assert_valid(&w, &mut oracle);
        }
    }

    #[test]
    fn branch_coverage() {
        use Branch::*;
        use Color::*;
        let k = 12u8;
        let std_sets = ProofSets::standard(k).unwrap();
        let mir_sets = ProofSets::mirrored(k).unwrap();

        // Category of a set within an orientation.
        #[derive(PartialEq, Clone, Copy, Debug)]
        enum Cat {
            Base(usize),
            Tail(usize),
            Head(usize),
            Other,
        }
        let categorize = |sets: &ProofSets, m: u64| -> Cat {
            for (i, s) in sets.base.iter().enumerate() {
                if s.mask() == m {
                    return Cat::Base(i);
                }
            }
            for (i, s) in sets.tails.iter().enumerate() {
                if s.mask() == m {
                    return Cat::Tail(i);
                }
            }
            for (i, s) in sets.heads.iter().enumerate() {
                if s.mask() == m {
                    return Cat::Head(i);
                }
            }
            Cat::Other
        };

        // Note: base[0] = heads[0] in the standard orientation, so rules
        // keyed on Base(0) shadow Head(0) and vice versa; the rules below
        // avoid depending on that overlap except where intended.
        type Rule = alloc::boxed::Box<dyn Fn(Cat, Cat) -> Option<Color>>;
        let run = |sets: &'static str, rule: Rule, expect_branch: Branch, expect_mirror: bool| {
            let (std_sets, mir_sets) = (std_sets.clone(), mir_sets.clone());
            let mut oracle = move |a: &RSet, b: &RSet| -> Color {
                let which = if sets == "std" { &std_sets } else { &mir_sets };
                let (ca, cb) = (categorize(which, a.mask()), categorize(which, b.mask()));
                rule(ca, cb).or_else(|| rule(cb, ca)).unwrap_or(Blue)
            };
            let w = beta_73_witness(k, &mut oracle).unwrap();
            assert_eq!(w.branch, expect_branch, "rule for {expect_branch:?}");
            assert_eq!(w.mirrored, expect_mirror, "mirror flag for {expect_branch:?}");
            assert_valid(&w, &mut oracle);
        };

        // Base mono (all blue).
        run("std", alloc::boxed::Box::new(|_, _| Some(Blue)), BaseMono, false);

        // Tail mono blue, anchor escapes: base edges (0,1)=R, (0,2)=B;
        // tails all blue; anchor has blue edges into tails.
        run(
            "std",
            alloc::boxed::Box::new(|a, b| match (a, b) {
                (Cat::Base(0), Cat::Base(1)) => Some(Red),
                (Cat::Base(0), Cat::Base(2)) => Some(Blue),
                (Cat::Base(1), Cat::Base(2)) => Some(Red),
                (Cat::Tail(_), Cat::Tail(_)) => Some(Blue),
                (Cat::Base(0), Cat::Tail(_)) => Some(Blue),
                _ => None,
            }),
            TailMonoEscape,
            false,
        );

        // Tail mono blue, pigeonhole: both red-pair endpoints all red into
        // tails, forcing the red triangle on the base pair.
        run(
            "std",
            alloc::boxed::Box::new(|a, b| match (a, b) {
                (Cat::Base(0), Cat::Base(1)) => Some(Red),
                (Cat::Base(0), Cat::Base(2)) => Some(Blue),
                (Cat::Base(1), Cat::Base(2)) => Some(Red),
                (Cat::Tail(_), Cat::Tail(_)) => Some(Blue),
                (Cat::Base(0), Cat::Tail(_)) => Some(Red),
                (Cat::Base(1), Cat::Tail(_)) => Some(Red),
                _ => None,
            }),
            TailMonoPigeonhole,
            false,
        );

        // Tail mono red, escape via the blue partner.
        run(
            "std",
            alloc::boxed::Box::new(|a, b| match (a, b) {
                (Cat::Base(0), Cat::Base(1)) => Some(Red),
                (Cat::Base(0), Cat::Base(2)) => Some(Blue),
                (Cat::Base(1), Cat::Base(2)) => Some(Red),
                (Cat::Tail(_), Cat::Tail(_)) => Some(Red),
                (Cat::Base(0), Cat::Tail(_)) => Some(Red),
                _ => None,
            }),
            TailMonoEscape,
            false,
        );

        // Head stage: tails bicolored (tail 0-1 red, others blue), heads
        // all blue -> mono blue head triple; tail anchor escapes with blue.
        run(
            "std",
            alloc::boxed::Box::new(|a, b| match (a, b) {
                (Cat::Base(0), Cat::Base(1)) => Some(Red),
                (Cat::Base(0), Cat::Base(2)) => Some(Blue),
                (Cat::Base(1), Cat::Base(2)) => Some(Red),
                (Cat::Tail(0), Cat::Tail(1)) => Some(Red),
                (Cat::Tail(_), Cat::Tail(_)) => Some(Blue),
                (Cat::Head(_), Cat::Head(_)) => Some(Blue),
                (Cat::Tail(_), Cat::Head(_)) => Some(Blue),
                _ => None,
            }),
            HeadMonoEscape,
            false,
        );

        // Head stage pigeonhole: heads all blue but tails keep red edges
        // into them, closing the red triangle on the tail pair.
        run(
            "std",
            alloc::boxed::Box::new(|a, b| match (a, b) {
                (Cat::Base(0), Cat::Base(1)) => Some(Red),
                (Cat::Base(0), Cat::Base(2)) => Some(Blue),
                (Cat::Base(1), Cat::Base(2)) => Some(Red),
                (Cat::Tail(0), Cat::Tail(1)) => Some(Red),
                (Cat::Tail(_), Cat::Tail(_)) => Some(Blue),
                (Cat::Head(_), Cat::Head(_)) => Some(Blue),
                (Cat::Tail(_), Cat::Head(_)) => Some(Red),
                _ => None,
            }),
            HeadMonoPigeonhole,
            false,
        );

        // Mirrored orientation: both standard anchor edges red, third edge
        // blue; then tails (mirrored) all blue and the mirrored anchor
        // escapes.
        run(
            "mir",
            alloc::boxed::Box::new(|a, b| match (a, b) {
                // In the mirrored naming, base[0] = old S3, base[2] = old S1.
                // Standard S-pairs: (S1,S2) = (Base(2),Base(1)), (S1,S3) =
                // (Base(2),Base(0)), (S2,S3) = (Base(1),Base(0)).
                (Cat::Base(2), Cat::Base(1)) => Some(Red),
                (Cat::Base(2), Cat::Base(0)) => Some(Red),
                (Cat::Base(1), Cat::Base(0)) => Some(Blue),
                (Cat::Tail(_), Cat::Tail(_)) => Some(Blue),
                (Cat::Base(0), Cat::Tail(_)) => Some(Blue),
                _ => None,
            }),
            TailMonoEscape,
            true,
        );
    }

    #[test]
    fn inconsistent_oracle_detected() {
        // Answers Red the first 3 queries (base mono), then flips.
        let mut calls = 0usize;
        let mut oracle = move |_: &RSet, _: &RSet| {
            calls += 1;
            if calls <= 3 {
                Color::Red
            } else {
                Color::Blue
            }
        };
        assert_eq!(
            beta_73_witness(12, &mut oracle).unwrap_err(),
            Error::InconsistentOracle
        );
    }

    #[test]
    fn beta3_exhaustive_k2() {
        // All 2^15 colorings of the complete graph on the six 2-sets.
        let sets = six_sets(2).unwrap();
        assert_eq!(sets.len(), 6);
        for assignment in 0u32..1 << 15 {
            let mut oracle = |a: &RSet, b: &RSet| {
                let i = sets.iter().position(|s| s == a).unwrap();
                let j = sets.iter().position(|s| s == b).unwrap();
                let (i, j) = (i.min(j), i.max(j));
                let idx = i * 6 - i * (i + 1) / 2 + (j - i - 1);
                if assignment >> idx & 1 == 1 {
                    Color::Red
                } else {
                    Color::Blue
                }
            };
            let w = beta_3_witness(2, &mut oracle).unwrap();
            assert_eq!(
                w.sets[0].mask() & w.sets[1].mask() & w.sets[2].mask(),
                0,
                "assignment {assignment:#b}"
            );
        }
    }

    #[test]
    fn beta3_first_triple_for_constant_oracle() {
        let mut oracle = |_: &RSet, _: &RSet| Color::Blue;
        let w = beta_3_witness(2, &mut oracle).unwrap();
        let sets = six_sets(2).unwrap();
        assert_eq!(w.sets, [sets[0], sets[1], sets[2]]);
        assert_eq!(w.color, Color::Blue);
    }

    #[test]
    fn beta3_random_oracles_k12() {
        for seed in 0..1000u64 {
            let mut oracle = SeededOracle { seed };
            let w = beta_3_witness(12, &mut oracle).unwrap();
            assert_eq!(w.sets[0].mask() & w.sets[1].mask() & w.sets[2].mask(), 0);
            for (x, y) in [(0, 1), (0, 2), (1, 2)] {
                assert_eq!(
                    oracle.pair_color(&w.sets[x], &w.sets[y]),
                    w.color,
                    "seed {seed}"
                );
            }
        }
    }

    #[test]
    fn afl_hypothesis_boundary() {
        // Two parts, k = (2,2): guaranteed from n = 2r + 1.
        // At n = 2r the hypothesis fails and the check refuses.
        let r = 2u8;
        let below = random_partition(2 * r, r, 2, 7).unwrap();
        assert!(matches!(
            afl_check(2 * r, r, &below, &[2, 2]),
            Err(Error::HypothesisNotSatisfied(_))
        ));
        let at = random_partition(2 * r + 1, r, 2, 7).unwrap();
        let (part, family) = afl_check(2 * r + 1, r, &at, &[2, 2]).unwrap();
        assert!(part < 2);
        assert_eq!(family.len(), 2);
    }

    #[test]
    fn afl_random_partitions_never_alarm() {
        // (n, r, t, k) at and above the hypothesis boundary.
        let cases: &[(u8, u8, &[usize])] = &[
            (5, 2, &[2, 2]),
            (7, 2, &[3, 2]),
            (8, 2, &[2, 2, 2]),
        ];
        for &(n, r, targets) in cases {
            for seed in 0..2000u64 {
                let partition = random_partition(n, r, targets.len() as u8, seed).unwrap();
                let (part, family) = afl_check(n, r, &partition, targets).unwrap();
                assert_eq!(family.len(), targets[part]);
                // Members really are in the claimed part and disjoint.
                let mut union = 0u64;
                for m in family.members() {
                    assert_eq!(partition[m.rank() as usize], part as u8);
                    assert_eq!(union & m.mask(), 0);
                    union |= m.mask();
                }
            }
        }
    }

    #[test]
    fn afl_rejects_bad_inputs() {
        let p = random_partition(6, 2, 2, 1).unwrap();
        assert!(afl_check(6, 2, &p, &[2, 3]).is_err()); // not descending
        assert!(afl_check(6, 2, &p, &[2, 1]).is_err()); // target below 2
        assert!(afl_check(6, 2, &p[1..], &[2, 2]).is_err()); // wrong length
    }
}
