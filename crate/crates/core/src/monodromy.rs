//! Monodromy vectors and the quantities derived from them.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::marks::{MarkSet, MAX_MARKS};

/// `(r, [m_1, ..., m_n])` with `1 <= m_i <= r` and `-2 + n - sum(m) ≡ 0 (mod r)`.
///
/// Entries keep the caller's order; invariants are permutation invariant, so only
/// caches canonicalize.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonodromyVector {
    r: i64,
    marks: Vec<i64>,
}

impl MonodromyVector {
    pub fn validate(r: i64, marks: &[i64]) -> Result<Self> {
        let n = marks.len();
        if r < 2 {
            return Err(Error::Size(format!("r = {r} must be at least 2")));
        }
        if n < 3 {
            return Err(Error::Size(format!("n = {n} must be at least 3")));
        }
        if n > MAX_MARKS - 1 {
            return Err(Error::Size(format!("n = {n} exceeds {}", MAX_MARKS - 1)));
        }
        if let Some((i, &m)) = marks.iter().enumerate().find(|(_, &m)| m < 1 || m > r) {
            return Err(Error::Range { mark: i + 1, value: m, r });
        }
        let residue = -2 + n as i64 - marks.iter().sum::<i64>();
        if residue.rem_euclid(r) != 0 {
            return Err(Error::Divisibility { residue, r });
        }
        Ok(MonodromyVector { r, marks: marks.to_vec() })
    }

    /// Caller guarantees the invariants (used for vectors produced by gluing rules).
    pub(crate) fn new_unchecked(r: i64, marks: Vec<i64>) -> Self {
        debug_assert!(marks.iter().all(|&m| (1..=r).contains(&m)));
        MonodromyVector { r, marks }
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    pub fn n(&self) -> usize {
        self.marks.len()
    }

    pub fn total(&self) -> i64 {
        self.marks.iter().sum()
    }

    /// Rank of the Witten bundle, `-1 + (2 - n + sum(m)) / r`.
    pub fn witten_rank(&self) -> i64 {
        -1 + (2 - self.n() as i64 + self.total()) / self.r
    }

    /// Dimension of the Witten class as a cycle on the moduli space, `n - 3 - rank`.
    /// This is also the dimension of its tropicalization.
    pub fn cycle_dimension(&self) -> i64 {
        self.n() as i64 - 3 - self.witten_rank()
    }

    /// `sum(m) = (n - 2)(r + 1)`, i.e. the class is zero-dimensional.
    pub fn is_numerical(&self) -> bool {
        self.total() == (self.n() as i64 - 2) * (self.r + 1)
    }

    pub fn has_ramond(&self) -> bool {
        self.marks.contains(&self.r)
    }

    /// Monodromy of the node branch on the component that carries the marks in
    /// `side`: `(|side| - 1)(r + 1) - sum_{i in side} m_i`, reduced into `1..=r`.
    ///
    /// When `side` is every mark but `i` this is `m_i` (for valid vectors).
    pub fn side_monodromy(&self, side: MarkSet) -> i64 {
        let raw = (side.len() as i64 - 1) * (self.r + 1) - side.sum_of(&self.marks);
        reduce(raw, self.r)
    }

    /// `(m_J, m_{J^c})` for a split with `2 <= |J| <= n - 2`.
    pub fn node_monodromies(&self, j: MarkSet) -> Result<(i64, i64)> {
        let n = self.n();
        if !j.is_subset(MarkSet::full(n)) || j.len() < 2 || j.len() + 2 > n {
            return Err(Error::Split { subset: j.to_string(), n });
        }
        Ok((self.side_monodromy(j), self.side_monodromy(j.complement(n))))
    }

    /// All vectors obtained by moving one unit from one entry to another while
    /// staying inside `1..=r`.
    pub fn neighbors(&self) -> Vec<MonodromyVector> {
        let n = self.n();
        let mut out = Vec::new();
        for donor in 0..n {
            if self.marks[donor] <= 1 {
                continue;
            }
            for recipient in 0..n {
                if recipient != donor && self.marks[recipient] < self.r {
                    out.push(self.moved(donor, recipient));
                }
            }
        }
        out
    }

    /// `true` when the two vectors differ by `+1` at one position and `-1` at another.
    pub fn is_neighbor_of(&self, other: &MonodromyVector) -> bool {
        if self.r != other.r || self.n() != other.n() {
            return false;
        }
        let mut diffs = self.marks.iter().zip(&other.marks).map(|(a, b)| a - b).filter(|&d| d != 0);
        matches!((diffs.next(), diffs.next(), diffs.next()), (Some(a), Some(b), None) if a + b == 0 && a.abs() == 1)
    }

    /// Moves one unit from `donor` to `recipient`.
    pub fn moved(&self, donor: usize, recipient: usize) -> MonodromyVector {
        let mut marks = self.marks.clone();
        marks[donor] -= 1;
        marks[recipient] += 1;
        MonodromyVector::new_unchecked(self.r, marks)
    }

    pub fn sorted_descending(&self) -> MonodromyVector {
        let mut marks = self.marks.clone();
        marks.sort_unstable_by(|a, b| b.cmp(a));
        MonodromyVector { r: self.r, marks }
    }

    /// Entries at `positions`, in that order.
    pub fn select(&self, positions: &[usize]) -> Vec<i64> {
        positions.iter().map(|&i| self.marks[i]).collect()
    }
}

pub(crate) fn reduce(value: i64, r: i64) -> i64 {
    let v = value.rem_euclid(r);
    if v == 0 {
        r
    } else {
        v
    }
}

impl fmt::Display for MonodromyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={};m=", self.r)?;
        write_list(f, &self.marks)
    }
}

impl fmt::Debug for MonodromyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn write_list(f: &mut impl fmt::Write, values: &[i64]) -> fmt::Result {
    for (k, m) in values.iter().enumerate() {
        if k > 0 {
            f.write_char(',')?;
        }
        write!(f, "{m}")?;
    }
    Ok(())
}

/// Parses `r=10;m=3,4,5,5,6` and validates the result.
impl FromStr for MonodromyVector {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut r = None;
        let mut marks = None;
        for part in text.trim().split(';') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::parse(1, part.trim(), "expected key=value"))?;
            match key.trim() {
                "r" => {
                    let parsed = value.trim().parse::<i64>().map_err(|_| Error::parse(1, "r", format!("not an integer: {value:?}")))?;
                    if r.replace(parsed).is_some() {
                        return Err(Error::parse(1, "r", "given twice"));
                    }
                }
                "m" => {
                    let parsed = parse_int_list(value).map_err(|message| Error::parse(1, "m", message))?;
                    if marks.replace(parsed).is_some() {
                        return Err(Error::parse(1, "m", "given twice"));
                    }
                }
                other => return Err(Error::parse(1, other, "unknown key")),
            }
        }
        let r = r.ok_or_else(|| Error::parse(1, "r", "missing"))?;
        let marks = marks.ok_or_else(|| Error::parse(1, "m", "missing"))?;
        MonodromyVector::validate(r, &marks)
    }
}

pub(crate) fn parse_int_list(text: &str) -> std::result::Result<Vec<i64>, String> {
    text.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| format!("not an integer: {t:?}")))
        .collect()
}

/// All ordered vectors of length `n` with entries in `1..=r` summing to `total`,
/// in lexicographic order. No divisibility filtering.
pub fn ordered_tuples(n: usize, r: i64, total: i64) -> Vec<Vec<i64>> {
    fn rec(n: usize, r: i64, remaining: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if n == 0 {
            if remaining == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let slots = n as i64 - 1;
        let lo = (remaining - slots * r).max(1);
        let hi = (remaining - slots).min(r);
        for m in lo..=hi {
            prefix.push(m);
            rec(n - 1, r, remaining - m, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, r, total, &mut Vec::with_capacity(n), &mut out);
    out
}

/// All non-increasing vectors of length `n` with entries in `1..=r` summing to
/// `total`, in descending lexicographic order.
pub fn descending_tuples(n: usize, r: i64, total: i64) -> Vec<Vec<i64>> {
    fn rec(n: usize, cap: i64, remaining: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if n == 0 {
            if remaining == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let slots = n as i64 - 1;
        let hi = cap.min(remaining - slots);
        // The first entry is the largest, so it must be at least the average.
        let lo = (remaining + n as i64 - 1) / n as i64;
        for m in (lo.max(1)..=hi).rev() {
            prefix.push(m);
            rec(n - 1, m, remaining - m, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, r, total, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Entry sum of the vectors whose Witten class has dimension `dim`.
pub fn total_for_dimension(n: usize, r: i64, dim: i64) -> i64 {
    (n as i64 - 2) * (r + 1) - dim * r
}

/// Every valid ordered vector of length `n` whose class has dimension `dim`.
pub fn vectors_of_dimension(n: usize, r: i64, dim: i64) -> Vec<MonodromyVector> {
    ordered_tuples(n, r, total_for_dimension(n, r, dim))
        .into_iter()
        .map(|marks| MonodromyVector::new_unchecked(r, marks))
        .collect()
}

/// Every ordered numerical vector of length `n`.
pub fn numerical_vectors(n: usize, r: i64) -> Vec<MonodromyVector> {
    vectors_of_dimension(n, r, 0)
}

/// Numerical vectors up to permutation, sorted descending, in descending
/// lexicographic order.
pub fn numerical_partitions(n: usize, r: i64) -> Vec<MonodromyVector> {
    descending_tuples(n, r, total_for_dimension(n, r, 0))
        .into_iter()
        .map(|marks| MonodromyVector::new_unchecked(r, marks))
        .collect()
}
