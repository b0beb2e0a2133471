//! Multi-indices over the base directions of a jet chart.
//!
//! A multi-index is an exponent vector: entry `μ` counts how many derivatives
//! are taken in base direction `μ`. With this parametrization every jet
//! coordinate `y^i_γ` is a single independent variable and no factorial
//! weights appear in Euler–Lagrange sums.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(counts: Vec<u32>) -> Self {
        MultiIndex(counts)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The single-direction index `λ` (0-based direction).
    pub fn unit(n: usize, direction: usize) -> Self {
        let mut counts = vec![0; n];
        counts[direction] = 1;
        MultiIndex(counts)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, direction: usize) -> u32 {
        self.0[direction]
    }

    /// `|γ|`
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `γ!`
    pub fn factorial(&self) -> u64 {
        self.0
            .iter()
            .map(|&c| (1..=c as u64).product::<u64>())
            .product()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &MultiIndex) -> Result<MultiIndex> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(MultiIndex(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    /// `γ + λ` for a single direction.
    pub fn incremented(&self, direction: usize) -> MultiIndex {
        let mut counts = self.0.clone();
        counts[direction] += 1;
        MultiIndex(counts)
    }

    /// `γ − λ`, or `None` when `γ_λ = 0`.
    pub fn decremented(&self, direction: usize) -> Option<MultiIndex> {
        if self.0[direction] == 0 {
            return None;
        }
        let mut counts = self.0.clone();
        counts[direction] -= 1;
        Some(MultiIndex(counts))
    }

    /// Directions with a positive count, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(d, _)| d)
    }

    /// Expands the index into a non-decreasing list of directions,
    /// e.g. `(2,0,1)` becomes `[0, 0, 2]`.
    pub fn directions(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(d, &c)| std::iter::repeat_n(d, c as usize))
            .collect()
    }

    pub fn from_directions(n: usize, directions: &[usize]) -> MultiIndex {
        let mut counts = vec![0; n];
        for &d in directions {
            counts[d] += 1;
        }
        MultiIndex(counts)
    }

    /// Parses the textual form `(2,0,1)`.
    pub fn parse(text: &str) -> Result<MultiIndex> {
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("multi-index must be parenthesized: {text}")))?;
        inner
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad multi-index entry {part:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(MultiIndex)
    }
}

/// Graded, then lexicographic with larger leading entries first:
/// `(0,0) < (1,0) < (0,1) < (2,0) < (1,1) < (0,2)`.
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Multi-indices of order exactly `order` in `n` directions, canonical order.
pub fn enumerate_exact(n: usize, order: u32) -> Vec<MultiIndex> {
    fn rec(n: usize, pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if pos + 1 == n {
            cur.push(left);
            out.push(MultiIndex(cur.clone()));
            cur.pop();
            return;
        }
        for c in (0..=left).rev() {
            cur.push(c);
            rec(n, pos + 1, left - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(n, 0, order, &mut Vec::with_capacity(n), &mut out);
    out
}

/// All multi-indices of order `≤ r`, graded then lexicographic.
pub fn enumerate_up_to(n: usize, r: u32) -> Vec<MultiIndex> {
    (0..=r).flat_map(|k| enumerate_exact(n, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn order_examples() {
        assert_eq!(mi(&[0, 0, 0, 0]).order(), 0);
        assert_eq!(mi(&[2, 0, 1]).order(), 3);
        assert_eq!(MultiIndex::unit(4, 1).order(), 1);
        assert_eq!(mi(&[2, 0, 3]).factorial(), 12);
    }

    #[test]
    fn add_examples() {
        assert_eq!(mi(&[1, 0]).add(&mi(&[0, 2])).unwrap(), mi(&[1, 2]));
        assert_eq!(mi(&[3, 1]).add(&MultiIndex::zero(2)).unwrap(), mi(&[3, 1]));
        let twice = MultiIndex::zero(2).incremented(0).incremented(0);
        assert_eq!(twice, mi(&[2, 0]));
        assert!(matches!(
            mi(&[1]).add(&mi(&[1, 0])),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_up_to(1, 2), vec![mi(&[0]), mi(&[1]), mi(&[2])]);
        assert_eq!(
            enumerate_up_to(2, 1),
            vec![mi(&[0, 0]), mi(&[1, 0]), mi(&[0, 1])]
        );
        assert_eq!(enumerate_up_to(2, 2).len(), 6);
    }

    #[test]
    fn enumeration_count_matches_brute_force() {
        fn binom(a: u64, b: u64) -> u64 {
            (1..=b).fold(1, |acc, k| acc * (a + 1 - k) / k)
        }
        for n in 1..=6usize {
            for r in 0..=6u32 {
                // brute force: every vector in [0, r]^n with sum <= r
                let mut brute = 0u64;
                let total = (r as u64 + 1).pow(n as u32);
                for code in 0..total {
                    let mut c = code;
                    let mut s = 0;
                    for _ in 0..n {
                        s += c % (r as u64 + 1);
                        c /= r as u64 + 1;
                    }
                    if s <= r as u64 {
                        brute += 1;
                    }
                }
                let listed = enumerate_up_to(n, r);
                assert_eq!(listed.len() as u64, brute);
                assert_eq!(brute, binom(n as u64 + r as u64, n as u64));
                let mut sorted = listed.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted, listed, "canonical order, no duplicates");
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let g = mi(&[2, 0, 1]);
        assert_eq!(g.to_string(), "(2,0,1)");
        assert_eq!(MultiIndex::parse("(2,0,1)").unwrap(), g);
        assert!(MultiIndex::parse("2,0").is_err());
    }

    proptest::proptest! {
        #[test]
        fn add_is_commutative_and_associative(
            a in proptest::collection::vec(0u32..5, 3),
            b in proptest::collection::vec(0u32..5, 3),
            c in proptest::collection::vec(0u32..5, 3),
        ) {
            let (a, b, c) = (mi(&a), mi(&b), mi(&c));
            proptest::prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            proptest::prop_assert_eq!(
                a.add(&b).unwrap().add(&c).unwrap(),
                a.add(&b.add(&c).unwrap()).unwrap()
            );
            proptest::prop_assert_eq!(a.add(&b).unwrap().order(), a.order() + b.order());
        }
    }
}
