//! Fixed-width bit vectors over a finite point domain.
//!
//! Every hypothesis, representation mask and closure element is a `PointSet`:
//! a subset of `{0, .., len-1}` stored as packed 64-bit words. Bits past `len`
//! are always zero, so word-wise equality and hashing are canonical.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

const WORD_BITS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    len: usize,
    words: Vec<u64>,
}

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS).max(1)
}

impl PointSet {
    /// The empty subset of a domain with `len` points.
    pub fn empty(len: usize) -> Self {
        PointSet {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// The full domain `{0, .., len-1}`.
    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.mask_tail();
        s
    }

    pub fn from_points(len: usize, points: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(len);
        for p in points {
            s.insert(p);
        }
        s
    }

    /// Builds a set from the low `len` bits of `bits` (point `i` = bit `i`).
    pub fn from_bits(len: usize, bits: u64) -> Self {
        assert!(len <= WORD_BITS);
        let mut s = Self::empty(len);
        s.words[0] = bits;
        s.mask_tail();
        s
    }

    fn mask_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            let last = self.words.len() - 1;
            self.words[last] &= (1u64 << rem) - 1;
        }
        if self.len == 0 {
            self.words[0] = 0;
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, p: usize) -> bool {
        debug_assert!(p < self.len);
        self.words[p / WORD_BITS] >> (p % WORD_BITS) & 1 == 1
    }

    /// Function view of the set: `value(x) = 1` iff `x` is a member.
    pub fn value(&self, p: usize) -> bool {
        self.contains(p)
    }

    pub fn insert(&mut self, p: usize) {
        assert!(
            p < self.len,
            "point {p} out of range for domain {}",
            self.len
        );
        self.words[p / WORD_BITS] |= 1 << (p % WORD_BITS);
    }

    pub fn remove(&mut self, p: usize) {
        assert!(p < self.len);
        self.words[p / WORD_BITS] &= !(1 << (p % WORD_BITS));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&p| self.contains(p))
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    /// Symmetric difference; the f-representation of a hypothesis is `h ^ f`.
    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a ^ b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.mask_tail();
        out
    }

    pub fn intersect_with(&mut self, other: &Self) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &Self) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_strict_subset(&self, other: &Self) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    /// First member in point order, if any.
    pub fn min_point(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        debug_assert_eq!(self.len, other.len, "point sets over different domains");
        PointSet {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Canonical value order: compare as little-endian multiword integers.
    pub fn value_cmp(&self, other: &Self) -> std::cmp::Ordering {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
            match a.cmp(b) {
                std::cmp::Ordering::Equal => continue,
                ord => return ord,
            }
        }
        std::cmp::Ordering::Equal
    }

    /// Encodes as an N-character bit string, character `i` = membership of point `i`.
    pub fn to_bitstring(&self) -> String {
        (0..self.len)
            .map(|p| if self.contains(p) { '1' } else { '0' })
            .collect()
    }

    pub fn from_bitstring(s: &str) -> Result<Self, String> {
        let mut out = Self::empty(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '1' => out.insert(i),
                '0' => {}
                _ => return Err(format!("invalid bit character {c:?} at position {i}")),
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointSet({})", self.to_bitstring())
    }
}

impl Serialize for PointSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_bitstring())
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        PointSet::from_bitstring(&s).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_and_membership() {
        let s = PointSet::from_points(10, [0, 3, 9]);
        assert!(s.contains(0) && s.contains(3) && s.contains(9));
        assert!(!s.contains(1) && !s.contains(8));
        assert_eq!(s.count(), 3);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 3, 9]);
    }

    #[test]
    fn full_masks_tail_bits() {
        let f = PointSet::full(70);
        assert_eq!(f.count(), 70);
        assert_eq!(f.complement(), PointSet::empty(70));
    }

    #[test]
    fn set_algebra() {
        let a = PointSet::from_points(6, [0, 1, 2]);
        let b = PointSet::from_points(6, [2, 3]);
        assert_eq!(a.intersection(&b), PointSet::from_points(6, [2]));
        assert_eq!(a.union(&b), PointSet::from_points(6, [0, 1, 2, 3]));
        assert_eq!(
            a.symmetric_difference(&b),
            PointSet::from_points(6, [0, 1, 3])
        );
        assert!(PointSet::from_points(6, [2]).is_strict_subset(&b));
        assert!(!a.is_subset(&b));
    }

    #[test]
    fn bitstring_round_trip() {
        let s = PointSet::from_points(5, [1, 4]);
        assert_eq!(s.to_bitstring(), "01001");
        assert_eq!(PointSet::from_bitstring("01001").unwrap(), s);
        assert!(PointSet::from_bitstring("01x01").is_err());
    }

    #[test]
    fn value_order_is_numeric() {
        let a = PointSet::from_bits(8, 0b0011);
        let b = PointSet::from_bits(8, 0b0100);
        assert_eq!(a.value_cmp(&b), std::cmp::Ordering::Less);
    }
}
