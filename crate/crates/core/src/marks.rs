//! Subsets of marked points.
//!
//! A [`MarkSet`] is a bitset over 0-based mark positions. Text forms (Display,
//! documents, CLI) use the 1-based labels `1..=n`.

use std::cmp::Ordering;
use std::fmt;

/// Largest supported number of marks.
pub const MAX_MARKS: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MarkSet(u64);

impl MarkSet {
    pub const EMPTY: MarkSet = MarkSet(0);

    pub fn from_bits(bits: u64) -> Self {
        MarkSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// All of `0..n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_MARKS);
        if n == MAX_MARKS {
            MarkSet(u64::MAX)
        } else {
            MarkSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(index: usize) -> Self {
        MarkSet(1u64 << index)
    }

    /// From 0-based positions.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        MarkSet(indices.into_iter().fold(0, |acc, i| acc | (1u64 << i)))
    }

    /// From 1-based labels, as written in the literature and in text formats.
    pub fn from_labels(labels: &[usize]) -> Self {
        Self::from_indices(labels.iter().map(|&l| {
            assert!(l >= 1, "mark labels are 1-based");
            l - 1
        }))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 >> index & 1 == 1
    }

    pub fn insert(&mut self, index: usize) {
        self.0 |= 1u64 << index;
    }

    pub fn union(self, other: MarkSet) -> MarkSet {
        MarkSet(self.0 | other.0)
    }

    pub fn intersection(self, other: MarkSet) -> MarkSet {
        MarkSet(self.0 & other.0)
    }

    pub fn difference(self, other: MarkSet) -> MarkSet {
        MarkSet(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> MarkSet {
        MarkSet(!self.0 & Self::full(n).0)
    }

    pub fn is_subset(self, other: MarkSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: MarkSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Ascending 0-based positions.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn labels(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// Representative of the split `{self, complement}` that avoids the last mark.
    pub fn canonical_split(self, n: usize) -> MarkSet {
        if self.contains(n - 1) {
            self.complement(n)
        } else {
            self
        }
    }

    /// Every subset of `0..n`, in increasing bit order.
    pub fn all_subsets(n: usize) -> impl Iterator<Item = MarkSet> {
        assert!(n < MAX_MARKS, "subset enumeration needs n < 64");
        (0..1u64 << n).map(MarkSet)
    }

    /// Every subset of `self`.
    pub fn subsets(self) -> impl Iterator<Item = MarkSet> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let current = next?;
            next = if current == full {
                None
            } else {
                Some((current.wrapping_sub(full)) & full)
            };
            Some(MarkSet(current))
        })
    }

    pub fn sum_of(self, values: &[i64]) -> i64 {
        self.iter().map(|i| values[i]).sum()
    }
}

/// Lexicographic on the ascending element lists, so `{1,2} < {1,2,3} < {1,3}`.
impl Ord for MarkSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for MarkSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MarkSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, label) in self.labels().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{label}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for MarkSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        let s = MarkSet::from_labels(&[1, 3, 4]);
        assert_eq!(s.labels(), vec![1, 3, 4]);
        assert_eq!(s.to_string(), "{1,3,4}");
        assert_eq!(s.len(), 3);
        assert!(s.contains(0) && !s.contains(1));
    }

    #[test]
    fn canonical_split_avoids_last_mark() {
        let s = MarkSet::from_labels(&[4, 5]);
        assert_eq!(s.canonical_split(5), MarkSet::from_labels(&[1, 2, 3]));
        assert_eq!(MarkSet::from_labels(&[1, 2]).canonical_split(5), MarkSet::from_labels(&[1, 2]));
    }

    #[test]
    fn lexicographic_order() {
        let a = MarkSet::from_labels(&[1, 2]);
        let b = MarkSet::from_labels(&[1, 2, 3]);
        let c = MarkSet::from_labels(&[1, 3]);
        assert!(a < b && b < c);
        assert!(MarkSet::EMPTY < a);
    }

    #[test]
    fn subsets_of_a_set() {
        let s = MarkSet::from_labels(&[2, 4, 5]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        assert_eq!(MarkSet::all_subsets(4).count(), 16);
    }
}
