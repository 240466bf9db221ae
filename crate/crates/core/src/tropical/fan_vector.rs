//! Vectors of the ambient space spanned by `r^k_{i,j}`, `{i,j}` a pair of marks
//! other than the anchor `k`, modulo the single relation `sum r^k_{i,j} = 0`.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::marks::MarkSet;
use crate::rational::{format, one, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct FanVector {
    n: usize,
    anchor: usize,
    /// Coefficients over [`FanVector::pairs`], in that order.
    coeffs: Vec<Rational>,
}

impl FanVector {
    /// Pairs `(i, j)`, `i < j`, of 0-based marks other than `anchor`, in
    /// lexicographic order.
    pub fn pairs(n: usize, anchor: usize) -> Vec<(usize, usize)> {
        (0..n)
            .filter(|&i| i != anchor)
            .flat_map(|i| ((i + 1)..n).filter(move |&j| j != anchor).map(move |j| (i, j)))
            .collect()
    }

    pub fn zero(n: usize, anchor: usize) -> Result<Self> {
        if n < 4 || anchor >= n {
            return Err(Error::Anchor(format!("anchor {} is not a mark of a {n}-marked fan (n >= 4)", anchor + 1)));
        }
        let len = (n - 1) * (n - 2) / 2;
        Ok(FanVector { n, anchor, coeffs: vec![Rational::zero(); len] })
    }

    /// The sum of all generators, which is zero in the quotient.
    pub fn relation(n: usize, anchor: usize) -> Result<Self> {
        let mut v = Self::zero(n, anchor)?;
        v.coeffs.iter_mut().for_each(|c| *c = one());
        Ok(v)
    }

    /// `v_I = sum of r^k_{i,j} over pairs inside I`, for `k` not in `I`.
    pub fn ray(n: usize, subset: MarkSet, anchor: usize) -> Result<Self> {
        let mut v = Self::zero(n, anchor)?;
        if subset.contains(anchor) {
            return Err(Error::Anchor(format!("anchor {} lies in {subset}", anchor + 1)));
        }
        if subset.len() < 2 || subset.len() + 2 > n || !subset.is_subset(MarkSet::full(n)) {
            return Err(Error::Split { subset: subset.to_string(), n });
        }
        for (c, &(i, j)) in v.coeffs.iter_mut().zip(&Self::pairs(n, anchor)) {
            if subset.contains(i) && subset.contains(j) {
                *c = one();
            }
        }
        Ok(v)
    }

    /// `v_S` for either side of the split `{S, S^c}`, using the side without the anchor.
    pub fn split_ray(n: usize, side: MarkSet, anchor: usize) -> Result<Self> {
        let s = if side.contains(anchor) { side.complement(n) } else { side };
        Self::ray(n, s, anchor)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn anchor(&self) -> usize {
        self.anchor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> Option<&Rational> {
        let (i, j) = (i.min(j), i.max(j));
        Self::pairs(self.n, self.anchor).iter().position(|&p| p == (i, j)).map(|p| &self.coeffs[p])
    }

    pub fn add_scaled(&mut self, other: &FanVector, scale: &Rational) {
        assert_eq!((self.n, self.anchor), (other.n, other.anchor), "fan vectors in different frames");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += b * scale;
            }
        }
    }

    /// `self += scale * v_S`, where `S` is the side of the split avoiding the anchor.
    pub fn add_split_ray(&mut self, side: MarkSet, scale: &Rational) -> Result<()> {
        let (n, anchor) = (self.n, self.anchor);
        let s = if side.contains(anchor) { side.complement(n) } else { side };
        if s.len() < 2 || s.len() + 2 > n || !s.is_subset(MarkSet::full(n)) {
            return Err(Error::Split { subset: s.to_string(), n });
        }
        let mut p = 0;
        for i in (0..n).filter(|&i| i != anchor) {
            for j in ((i + 1)..n).filter(|&j| j != anchor) {
                if s.contains(i) && s.contains(j) {
                    self.coeffs[p] += scale;
                }
                p += 1;
            }
        }
        Ok(())
    }

    /// Representative with smallest coefficient 0.
    pub fn normalized(&self) -> FanVector {
        let min = self.coeffs.iter().min().cloned().unwrap_or_else(Rational::zero);
        FanVector { n: self.n, anchor: self.anchor, coeffs: self.coeffs.iter().map(|c| c - &min).collect() }
    }

    /// Zero in the quotient: all coefficients equal.
    pub fn is_zero(&self) -> bool {
        self.coeffs.windows(2).all(|w| w[0] == w[1])
    }

    /// Equality in the quotient.
    pub fn equivalent(&self, other: &FanVector) -> bool {
        self.n == other.n && self.anchor == other.anchor && self.normalized() == other.normalized()
    }
}

impl fmt::Display for FanVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, (i, j)) in self.coeffs.iter().zip(Self::pairs(self.n, self.anchor)) {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{}*r{}_{{{},{}}}", format(c), self.anchor + 1, i + 1, j + 1)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FanVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
