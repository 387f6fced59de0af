//! Subset kernel: canonical `r`-subsets of `[n]`, colexicographic
//! ranking/unranking, and disjointness.
//!
//! The canonical order everywhere in this crate is *colexicographic*: `A`
//! precedes `B` iff the largest element of their symmetric difference lies
//! in `B`. On the one-word bit-set representation this is plain integer
//! order of the masks, which keeps comparisons and ranking cheap. The order
//! is frozen because DIMACS variable numbers depend on it.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported ground set; an `RSet` must fit one machine word.
pub const MAX_GROUND: u8 = 64;

/// Pascal's triangle up to `C(64, k)`; every entry fits in `u64`.
const PASCAL: [[u64; 65]; 65] = {
    let mut t = [[0u64; 65]; 65];
    let mut n = 0;
    while n <= 64 {
        t[n][0] = 1;
        let mut k = 1;
        while k <= n {
            t[n][k] = t[n - 1][k - 1] + if k <= n - 1 { t[n - 1][k] } else { 0 };
            k += 1;
        }
        n += 1;
    }
    t
};

/// Exact binomial coefficient `C(n, k)` for `n <= 64`.
///
/// `k > n` yields 0. Ground sets beyond 64 are rejected rather than
/// silently truncated.
pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if n > MAX_GROUND as u64 {
        return Err(Error::GroundSetTooLarge(n));
    }
    if k > n {
        return Ok(0);
    }
    Ok(PASCAL[n as usize][k as usize])
}

/// A canonical `r`-subset of `[1, n]`, stored as a bit set.
///
/// Bit `e - 1` is set iff element `e` is a member. Equality compares
/// element sets over equal ground sets; `Ord` is colexicographic, which
/// coincides with numeric order of the masks.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RSet {
    mask: u64,
    n: u8,
}

impl RSet {
    /// Builds an `RSet` from strictly ascending 1-based elements.
    pub fn new(elements: &[u8], n: u8) -> Result<Self> {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::GroundSetTooLarge(n as u64));
        }
        if elements.is_empty() {
            return Err(Error::WrongCardinality {
                expected: 1,
                actual: 0,
            });
        }
        let mut mask = 0u64;
        let mut prev = 0u8;
        for &e in elements {
            if e == 0 || e > n {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
            if e <= prev {
                return Err(Error::NotStrictlyAscending);
            }
            mask |= 1u64 << (e - 1);
            prev = e;
        }
        Ok(RSet { mask, n })
    }

    /// Builds an `RSet` from a nonempty bit mask over `[1, n]`.
    pub fn from_mask(mask: u64, n: u8) -> Result<Self> {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::GroundSetTooLarge(n as u64));
        }
        if mask == 0 {
            return Err(Error::WrongCardinality {
                expected: 1,
                actual: 0,
            });
        }
        let ground = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        if mask & !ground != 0 {
            let stray = 64 - (mask & !ground).leading_zeros() as u8;
            return Err(Error::ElementOutOfRange { element: stray, n });
        }
        Ok(RSet { mask, n })
    }

    /// The bit-set view.
    #[inline]
    pub fn mask(&self) -> u64 {
        self.mask
    }

    /// Ground-set size `n`.
    #[inline]
    pub fn ground(&self) -> u8 {
        self.n
    }

    /// Cardinality `r`.
    #[inline]
    pub fn cardinality(&self) -> u8 {
        self.mask.count_ones() as u8
    }

    /// Membership test for a 1-based element.
    #[inline]
    pub fn contains(&self, element: u8) -> bool {
        element >= 1 && element <= self.n && self.mask & (1u64 << (element - 1)) != 0
    }

    /// The sequence view: elements in ascending order.
    pub fn elements(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.cardinality() as usize);
        let mut m = self.mask;
        while m != 0 {
            let e = m.trailing_zeros() as u8 + 1;
            out.push(e);
            m &= m - 1;
        }
        out
    }

    /// Whether two sets over the same ground set share no element.
    pub fn disjoint(&self, other: &RSet) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::GroundSetMismatch);
        }
        Ok(self.mask & other.mask == 0)
    }

    /// Colexicographic rank within all `r`-subsets of `[n]`:
    /// `sum of C(e_i - 1, i)` over the ascending elements `e_1 < ... < e_r`.
    pub fn rank(&self) -> u64 {
        let mut rank = 0u64;
        let mut m = self.mask;
        let mut i = 1u64;
        while m != 0 {
            let e = m.trailing_zeros() as u64 + 1;
            rank += PASCAL[(e - 1) as usize][i as usize];
            i += 1;
            m &= m - 1;
        }
        rank
    }

    /// Inverse of [`RSet::rank`]: the `rank`-th `r`-subset of `[n]` in
    /// colexicographic order.
    pub fn unrank(rank: u64, n: u8, r: u8) -> Result<Self> {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::GroundSetTooLarge(n as u64));
        }
        if r == 0 || r > n {
            return Err(Error::WrongCardinality {
                expected: r as usize,
                actual: 0,
            });
        }
        let count = PASCAL[n as usize][r as usize];
        if rank >= count {
            return Err(Error::RankOutOfRange { rank, count });
        }
        let mut mask = 0u64;
        let mut rem = rank;
        let mut hi = n;
        for i in (1..=r).rev() {
            // Largest e with C(e - 1, i) <= rem; elements descend as i does.
            let mut e = hi;
            while PASCAL[(e - 1) as usize][i as usize] > rem {
                e -= 1;
            }
            rem -= PASCAL[(e - 1) as usize][i as usize];
            mask |= 1u64 << (e - 1);
            hi = e - 1;
        }
        Ok(RSet { mask, n })
    }
}

impl fmt::Display for RSet {
    /// Textual form `{a,b,c}` with ascending elements.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        let mut m = self.mask;
        while m != 0 {
            let e = m.trailing_zeros() + 1;
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
            first = false;
            m &= m - 1;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for RSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RSet({self}, n={})", self.n)
    }
}

impl FromStr for RSet {
    type Err = Error;

    /// Parses the textual form `{a,b,c}`; the ground set defaults to the
    /// largest element (callers typically re-validate against a graph).
    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::Parse {
                line: 0,
                message: String::from("set literal must look like {a,b,c}"),
            })?;
        let mut elements = Vec::new();
        for part in body.split(',') {
            let e: u8 = part.trim().parse().map_err(|_| Error::Parse {
                line: 0,
                message: String::from("set elements must be small integers"),
            })?;
            elements.push(e);
        }
        let n = *elements.iter().max().ok_or_else(|| Error::Parse {
            line: 0,
            message: String::from("empty set literal"),
        })?;
        RSet::new(&elements, n)
    }
}

/// Iterates all `m`-element masks over `[n]` in colexicographic (numeric)
/// order via Gosper's hack.
pub fn subset_masks(n: u8, m: u8) -> SubsetMasks {
    let limit = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
    let first = if m == 0 || m > n {
        None
    } else if m == 64 {
        Some(u64::MAX)
    } else {
        Some((1u64 << m) - 1)
    };
    SubsetMasks { next: first, limit }
}

/// Iterator produced by [`subset_masks`].
pub struct SubsetMasks {
    next: Option<u64>,
    limit: u64,
}

impl Iterator for SubsetMasks {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        if cur > self.limit {
            self.next = None;
            return None;
        }
        // Gosper: smallest larger integer with the same popcount.
        self.next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur.checked_add(c)?;
            Some((((r ^ cur) >> 2) / c) | r)
        };
        Some(cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use proptest::prelude::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(8, 2).unwrap(), 28);
        assert_eq!(binomial(13, 3).unwrap(), 286);
        assert_eq!(binomial(6, 3).unwrap(), 20);
        assert_eq!(binomial(0, 0).unwrap(), 1);
        assert_eq!(binomial(5, 9).unwrap(), 0);
        assert_eq!(binomial(64, 32).unwrap(), 1_832_624_140_942_590_534);
        assert!(matches!(binomial(65, 2), Err(Error::GroundSetTooLarge(65))));
    }

    #[test]
    fn rank_examples() {
        let first = RSet::new(&[1, 2], 8).unwrap();
        assert_eq!(first.rank(), 0);
        let last = RSet::new(&[7, 8], 8).unwrap();
        assert_eq!(last.rank(), 27);
        let second = RSet::new(&[1, 3], 8).unwrap();
        assert_eq!(second.rank(), 1);
    }

    #[test]
    fn unrank_examples() {
        assert_eq!(RSet::unrank(0, 8, 2).unwrap().elements(), &[1, 2]);
        assert_eq!(RSet::unrank(27, 8, 2).unwrap().elements(), &[7, 8]);
        // The 15th 2-subset of [8] in colex order, frozen from full
        // enumeration: {1,2},{1,3},{2,3},{1,4},...,{4,6},{5,6}.
        assert_eq!(RSet::unrank(14, 8, 2).unwrap().elements(), &[5, 6]);
        assert!(matches!(
            RSet::unrank(28, 8, 2),
            Err(Error::RankOutOfRange { rank: 28, count: 28 })
        ));
    }

    #[test]
    fn rank_unrank_roundtrip_exhaustive() {
        for n in 1..=13u8 {
            for r in 1..=n {
                let count = binomial(n as u64, r as u64).unwrap();
                let mut prev_mask = None;
                for i in 0..count {
                    let s = RSet::unrank(i, n, r).unwrap();
                    assert_eq!(s.rank(), i);
                    assert_eq!(s.cardinality(), r);
                    if let Some(p) = prev_mask {
                        assert!(s.mask() > p, "colex order must be ascending mask order");
                    }
                    prev_mask = Some(s.mask());
                }
            }
        }
    }

    #[test]
    fn disjoint_examples() {
        let a = RSet::new(&[1, 2], 8).unwrap();
        let b = RSet::new(&[3, 4], 8).unwrap();
        let c = RSet::new(&[2, 3], 8).unwrap();
        assert!(a.disjoint(&b).unwrap());
        assert!(!a.disjoint(&c).unwrap());
        let d = RSet::new(&[1, 4], 8).unwrap();
        let e = RSet::new(&[5, 6], 8).unwrap();
        assert!(d.disjoint(&e).unwrap());
        let other_ground = RSet::new(&[1, 2], 9).unwrap();
        assert_eq!(a.disjoint(&other_ground), Err(Error::GroundSetMismatch));
    }

    #[test]
    fn invalid_sets_rejected() {
        assert!(RSet::new(&[0, 1], 8).is_err());
        assert!(RSet::new(&[1, 9], 8).is_err());
        assert!(RSet::new(&[2, 2], 8).is_err());
        assert!(RSet::new(&[3, 2], 8).is_err());
        assert!(RSet::new(&[], 8).is_err());
    }

    #[test]
    fn views_agree() {
        for i in 0..binomial(9, 3).unwrap() {
            let s = RSet::unrank(i, 9, 3).unwrap();
            for e in 1..=9u8 {
                assert_eq!(s.contains(e), s.elements().contains(&e));
                assert_eq!(s.contains(e), s.mask() & (1 << (e - 1)) != 0);
            }
        }
    }

    #[test]
    fn display_and_parse() {
        let s = RSet::new(&[1, 4, 7], 8).unwrap();
        assert_eq!(format!("{s}"), "{1,4,7}");
        let parsed: RSet = "{1,4,7}".parse().unwrap();
        assert_eq!(parsed.elements(), s.elements());
        assert!("{}".parse::<RSet>().is_err());
        assert!("1,4,7".parse::<RSet>().is_err());
    }

    #[test]
    fn subset_masks_order_and_count() {
        let all: alloc::vec::Vec<u64> = subset_masks(6, 4).collect();
        assert_eq!(all.len(), 15);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all[0], 0b001111);
        assert_eq!(*all.last().unwrap(), 0b111100);
        assert_eq!(subset_masks(5, 0).count(), 0);
        assert_eq!(subset_masks(5, 6).count(), 0);
    }

    proptest! {
        #[test]
        fn disjoint_symmetric_irreflexive(i in 0u64..126, j in 0u64..126) {
            let a = RSet::unrank(i, 9, 4).unwrap();
            let b = RSet::unrank(j, 9, 4).unwrap();
            prop_assert_eq!(a.disjoint(&b).unwrap(), b.disjoint(&a).unwrap());
            prop_assert!(!a.disjoint(&a).unwrap());
        }

        #[test]
        fn roundtrip_random_large(n in 14u8..=64, seed in any::<u64>()) {
            let r = (seed % (n as u64)).max(1) as u8;
            let count = binomial(n as u64, r as u64).unwrap();
            let i = seed.wrapping_mul(0x9e3779b97f4a7c15) % count;
            let s = RSet::unrank(i, n, r).unwrap();
            prop_assert_eq!(s.rank(), i);
        }
    }
}
