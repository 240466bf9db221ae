//! Piecewise-polynomial structure of `w_r`.
//!
//! At a numerical point, the subsets `S` with `sum_S m >= (|S| - 1) r + n - 2`
//! form its activation pattern. On all points with the same pattern,
//! `N = 2 r^(n-3) w_r` is the polynomial in `(m_1, ..., m_n, r)` obtained by
//! expanding the closed formula over that pattern.

pub mod poly;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

pub use poly::{Monomial, Polynomial};

use crate::error::{Error, Result};
use crate::invariants::{level, satisfies_star1, ClosedFormulaEngine, Engine};
use crate::marks::MarkSet;
use crate::monodromy::{numerical_vectors, MonodromyVector};
use crate::rational::Rational;

/// Largest `r` used when [`strip_agreement`] samples strip points by itself.
pub const STRIP_SAMPLE_R_MAX: i64 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ActivationPattern {
    n: usize,
    active: BTreeSet<MarkSet>,
}

impl ActivationPattern {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn active(&self) -> &BTreeSet<MarkSet> {
        &self.active
    }

    pub fn contains(&self, s: MarkSet) -> bool {
        self.active.contains(&s)
    }

    /// Subsets active in exactly one of the two patterns.
    pub fn toggled(&self, other: &ActivationPattern) -> Vec<MarkSet> {
        self.active.symmetric_difference(&other.active).copied().collect()
    }
}

impl fmt::Display for ActivationPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.active.iter().map(|s| s.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Subsets satisfying the summation condition of the closed formula at `v`.
pub fn activation_pattern(v: &MonodromyVector) -> Result<ActivationPattern> {
    if !v.is_numerical() {
        return Err(Error::Precondition(format!("{v} is not numerical")));
    }
    let n = v.n();
    let active = MarkSet::all_subsets(n).filter(|&s| satisfies_star1(v, s)).collect();
    Ok(ActivationPattern { n, active })
}

/// `(-1)^(1 + |S|) prod_{k=1}^{n-3} (sum_S m - (|S| - 1) r - k)` as a polynomial.
pub fn term_polynomial(n: usize, s: MarkSet) -> Polynomial {
    let mut coeffs = vec![0i64; n + 1];
    for i in s.iter() {
        coeffs[i] = 1;
    }
    coeffs[n] = -(s.len() as i64 - 1);
    let sign = if s.len() % 2 == 1 { 1 } else { -1 };
    let mut p = Polynomial::constant(n + 1, Rational::from_integer(sign.into()));
    for k in 1..=n as i64 - 3 {
        p = &p * &Polynomial::linear(&coeffs, -k);
    }
    p
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberPolynomial {
    pub pattern: ActivationPattern,
    /// `2 r^(n-3) w_r` on the chamber, in `(m_1, ..., m_n, r)`.
    pub poly: Polynomial,
}

impl ChamberPolynomial {
    /// Value of the polynomial at `v`.
    pub fn numerator_at(&self, v: &MonodromyVector) -> Rational {
        let mut point = v.marks().to_vec();
        point.push(v.r());
        self.poly.eval_int(&point)
    }

    /// The polynomial divided by `2 r^(n-3)` at `v`.
    pub fn invariant_at(&self, v: &MonodromyVector) -> Rational {
        let scale = BigInt::from(2) * BigInt::from(v.r()).pow(v.n() as u32 - 3);
        self.numerator_at(v) / Rational::from_integer(scale)
    }
}

pub fn chamber_polynomial(pattern: &ActivationPattern) -> ChamberPolynomial {
    let n = pattern.n;
    let poly = pattern
        .active
        .iter()
        .fold(Polynomial::zero(n + 1), |acc, &s| &acc + &term_polynomial(n, s));
    ChamberPolynomial { pattern: pattern.clone(), poly }
}

/// The hyperplane `sum_S m = (|S| - 1) r + n - 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Wall {
    pub subset: MarkSet,
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}", self.subset)
    }
}

/// Walls cutting the interior: every `S` with `2 <= |S| <= n - 2`. `S` and its
/// complement give different hyperplanes and are both listed.
pub fn walls(n: usize) -> Vec<Wall> {
    if n < 4 {
        return Vec::new();
    }
    let mut out: Vec<Wall> = MarkSet::all_subsets(n)
        .filter(|s| s.len() >= 2 && s.len() + 2 <= n)
        .map(|subset| Wall { subset })
        .collect();
    out.sort();
    out
}

/// `(|S| - 1) r + 1 <= sum_S m <= (|S| - 1) r + n - 3`.
pub fn in_strip(v: &MonodromyVector, s: MarkSet) -> bool {
    (1..=v.n() as i64 - 3).contains(&level(v, s))
}

/// Numerical points with `r <= r_max` lying in the strip of `s`.
pub fn strip_points(n: usize, s: MarkSet, r_max: i64) -> Vec<MonodromyVector> {
    (2..=r_max)
        .flat_map(|r| numerical_vectors(n, r))
        .filter(|v| in_strip(v, s))
        .collect()
}

/// Checks that two chamber polynomials separated by the wall of `wall.subset`
/// agree on its strip, sampling strip points with `r <= STRIP_SAMPLE_R_MAX`.
pub fn strip_agreement(wall: &Wall, low: &ChamberPolynomial, high: &ChamberPolynomial) -> Result<bool> {
    let points = strip_points(low.pattern.n, wall.subset, STRIP_SAMPLE_R_MAX);
    strip_agreement_on(wall, low, high, points.iter())
}

/// As [`strip_agreement`], evaluating at the given points that lie in the strip.
///
/// `high` must be the pattern in which `wall.subset` is active and the patterns
/// must differ in nothing else. Besides sampling, the difference is compared
/// symbolically with the single closed-formula term of `wall.subset`, which
/// has a zero factor at every strip level.
pub fn strip_agreement_on<'a>(
    wall: &Wall,
    low: &ChamberPolynomial,
    high: &ChamberPolynomial,
    points: impl IntoIterator<Item = &'a MonodromyVector>,
) -> Result<bool> {
    let s = wall.subset;
    let n = low.pattern.n;
    if high.pattern.n != n || low.pattern.toggled(&high.pattern) != [s] || !high.pattern.contains(s) {
        return Err(Error::PatternMismatch(format!(
            "patterns [{}] and [{}] are not separated by {wall} alone",
            low.pattern, high.pattern
        )));
    }
    let diff = &high.poly - &low.poly;
    let structural = diff == term_polynomial(n, s);
    let sampled = points.into_iter().filter(|v| v.n() == n && in_strip(v, s)).all(|v| {
        let mut point = v.marks().to_vec();
        point.push(v.r());
        diff.eval_int(&point).is_zero()
    });
    Ok(structural && sampled)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    pub polynomial: ChamberPolynomial,
    pub samples: Vec<MonodromyVector>,
    /// Samples where the polynomial disagrees with `2 r^(n-3) w_r`.
    pub failures: Vec<MonodromyVector>,
}

/// Adjacent chambers: their patterns differ in exactly one subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjacency {
    pub low: ActivationPattern,
    pub high: ActivationPattern,
    pub wall: Wall,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberScan {
    pub n: usize,
    pub r_max: i64,
    pub chambers: BTreeMap<ActivationPattern, Chamber>,
}

/// Groups every ordered numerical vector with `r <= r_max` by activation
/// pattern and checks each one against its chamber polynomial.
pub fn chamber_scan(n: usize, r_max: i64) -> Result<ChamberScan> {
    if n < 3 || r_max < 2 {
        return Err(Error::Precondition(format!("need n >= 3 and r_max >= 2, got n = {n}, r_max = {r_max}")));
    }
    let points: Vec<MonodromyVector> = (2..=r_max).flat_map(|r| numerical_vectors(n, r)).collect();
    let mut groups: BTreeMap<ActivationPattern, Vec<MonodromyVector>> = BTreeMap::new();
    let patterns = points.par_iter().map(activation_pattern).collect::<Result<Vec<_>>>()?;
    for (p, v) in patterns.into_iter().zip(points) {
        groups.entry(p).or_default().push(v);
    }
    let engine = ClosedFormulaEngine::global();
    let chambers = groups
        .into_par_iter()
        .map(|(pattern, samples)| {
            let polynomial = chamber_polynomial(&pattern);
            let mut failures = Vec::new();
            for v in &samples {
                if polynomial.invariant_at(v) != engine.evaluate(v)? {
                    failures.push(v.clone());
                }
            }
            Ok((pattern, Chamber { polynomial, samples, failures }))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(ChamberScan { n, r_max, chambers })
}

impl ChamberScan {
    pub fn verified(&self) -> bool {
        self.chambers.values().all(|c| c.failures.is_empty())
    }

    pub fn max_degree(&self) -> u32 {
        self.chambers.values().map(|c| c.polynomial.poly.degree()).max().unwrap_or(0)
    }

    pub fn sample_count(&self) -> usize {
        self.chambers.values().map(|c| c.samples.len()).sum()
    }

    /// All pairs of scanned chambers whose patterns differ in exactly one subset.
    pub fn adjacencies(&self) -> Vec<Adjacency> {
        let patterns: Vec<&ActivationPattern> = self.chambers.keys().collect();
        let index: HashMap<&BTreeSet<MarkSet>, usize> = patterns.iter().enumerate().map(|(i, p)| (&p.active, i)).collect();
        let mut out = Vec::new();
        for high in &patterns {
            for &s in &high.active {
                let mut lower = high.active.clone();
                lower.remove(&s);
                if let Some(&i) = index.get(&lower) {
                    out.push(Adjacency { low: patterns[i].clone(), high: (*high).clone(), wall: Wall { subset: s } });
                }
            }
        }
        out
    }

    /// Strip agreement for every adjacency, sampled at the scanned points.
    /// Returns the adjacencies that fail.
    pub fn check_strips(&self) -> Result<Vec<Adjacency>> {
        let all: Vec<&MonodromyVector> = self.chambers.values().flat_map(|c| c.samples.iter()).collect();
        let adjacencies = self.adjacencies();
        let walls: BTreeSet<MarkSet> = adjacencies.iter().map(|a| a.wall.subset).collect();
        // The difference across a wall must equal that wall's term, so its
        // samples are evaluated once per wall rather than once per adjacency.
        let sampled: HashMap<MarkSet, bool> = walls
            .into_par_iter()
            .map(|s| {
                let term = term_polynomial(self.n, s);
                let ok = all.iter().filter(|v| in_strip(v, s)).all(|v| {
                    let mut point = v.marks().to_vec();
                    point.push(v.r());
                    term.eval_int(&point).is_zero()
                });
                (s, ok)
            })
            .collect();
        let results = adjacencies
            .into_par_iter()
            .map(|a| {
                let (low, high) = (&self.chambers[&a.low].polynomial, &self.chambers[&a.high].polynomial);
                let ok = strip_agreement_on(&a.wall, low, high, std::iter::empty())? && sampled[&a.wall.subset];
                Ok((!ok).then_some(a))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(results.into_iter().flatten().collect())
    }

    /// One block per chamber: pattern, polynomial, sample count, status.
    pub fn report(&self) -> String {
        let mut out = String::new();
        for (pattern, c) in &self.chambers {
            out.push_str(&format!("pattern {pattern}\n"));
            out.push_str(&format!("poly {}\n", c.polynomial.poly));
            out.push_str(&format!("samples {}\n", c.samples.len()));
            out.push_str(&format!("status {}\n\n", if c.failures.is_empty() { "ok" } else { "FAILED" }));
        }
        out.push_str(&format!(
            "n {} r_max {} chambers {} samples {} max_degree {}\n",
            self.n,
            self.r_max,
            self.chambers.len(),
            self.sample_count(),
            self.max_degree()
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn v(r: i64, marks: &[i64]) -> MonodromyVector {
        MonodromyVector::validate(r, marks).unwrap()
    }

    fn s(labels: &[usize]) -> MarkSet {
        MarkSet::from_labels(labels)
    }

    #[test]
    fn pattern_examples() {
        let p = activation_pattern(&v(10, &[3, 6, 2])).unwrap();
        let expected: BTreeSet<MarkSet> = [MarkSet::EMPTY, s(&[1]), s(&[2]), s(&[3])].into();
        assert_eq!(p.active(), &expected);

        let p = activation_pattern(&v(8, &[4, 5, 5, 6, 7])).unwrap();
        let pairs: Vec<MarkSet> = p.active().iter().copied().filter(|x| x.len() == 2).collect();
        let mut expected = vec![s(&[1, 5]), s(&[2, 4]), s(&[3, 4]), s(&[2, 5]), s(&[3, 5]), s(&[4, 5])];
        expected.sort();
        assert_eq!(pairs, expected);
        assert_eq!(p.active().len(), 1 + 5 + 6);

        let p = activation_pattern(&v(10, &[5, 5, 6, 6])).unwrap();
        assert_eq!(p.active().len(), 1 + 4 + 1);
        assert!(p.contains(s(&[3, 4])));
        assert!(activation_pattern(&v(10, &[3, 4, 5, 5, 6])).is_err());
    }

    #[test]
    fn polynomial_examples() {
        let three = chamber_polynomial(&activation_pattern(&v(10, &[3, 6, 2])).unwrap());
        assert_eq!(three.poly, Polynomial::constant(4, int(2)));

        let a = v(8, &[4, 5, 5, 6, 7]);
        let p = chamber_polynomial(&activation_pattern(&a).unwrap());
        // 2 r^2 w = 2 * 64 / 16.
        assert_eq!(p.numerator_at(&a), int(8));
        assert_eq!(p.invariant_at(&a), ratio(1, 16));
        assert!(p.poly.degree() <= 2);

        // Deep interior of the four-point case: N = 2r + m1 - m2 - m3 - m4,
        // which equals 2(m1 - 1) on the numerical slice.
        let b = v(10, &[3, 6, 6, 7]);
        let p = chamber_polynomial(&activation_pattern(&b).unwrap());
        assert_eq!(p.poly, Polynomial::linear(&[1, -1, -1, -1, 2], 0));
        assert_eq!(p.invariant_at(&b), ratio(1, 5));
    }

    #[test]
    fn wall_counts() {
        assert_eq!(walls(3).len(), 0);
        // Only the six pairs; a triple S of four marks has level 2 - m_l, which
        // never reaches the threshold.
        assert_eq!(walls(4).len(), 6);
        assert_eq!(walls(5).len(), 20);
        assert_eq!(walls(6).len(), 15 + 20 + 15);
    }

    #[test]
    fn strip_agreement_structure() {
        let scan = chamber_scan(4, 12).unwrap();
        assert!(scan.verified());
        let adj = scan.adjacencies();
        assert!(!adj.is_empty());
        let a = &adj[0];
        let (lo, hi) = (&scan.chambers[&a.low].polynomial, &scan.chambers[&a.high].polynomial);
        assert!(strip_agreement(&a.wall, lo, hi).unwrap());
        assert!(matches!(strip_agreement(&a.wall, hi, lo), Err(Error::PatternMismatch(_))));
        assert!(scan.check_strips().unwrap().is_empty());
    }

    #[test]
    fn scan_small_cases() {
        let scan = chamber_scan(3, 8).unwrap();
        assert_eq!(scan.chambers.len(), 1);
        assert_eq!(scan.chambers.values().next().unwrap().polynomial.poly, Polynomial::constant(4, int(2)));
        let scan = chamber_scan(5, 7).unwrap();
        assert!(scan.verified());
        assert!(scan.max_degree() <= 2);
        assert!(scan.report().contains("status ok"));
    }
}
