//! Exhaustive verification suites over bounded ranges of `(n, r)`.
//!
//! Each suite returns a [`SuiteResult`] whose failures carry the input in
//! vector syntax, so any failure can be reproduced from its printed line.

use std::fmt;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::chambers::chamber_scan;
use crate::dominance::{dominance_compare, DominanceOrdering};
use crate::error::{Error, Result};
use crate::invariants::{
    closed_formula, extremal_value, four_point, integrality_quotient, is_extremal, t_term, three_point,
    vanishes, ClosedFormulaEngine, Engine, RecursionOracle, Vanishing,
};
use crate::marks::MarkSet;
use crate::monodromy::{numerical_partitions, numerical_vectors, vectors_of_dimension, MonodromyVector};
use crate::rational::{format, int, Rational};
use crate::tropical::{
    check_balancing_face_by_vertices, check_balancing_face_linear, check_balancing_origin, faces, pushforward,
    TropicalCycle,
};

pub const SUITES: [&str; 11] = [
    "formula-vs-oracle",
    "balancing",
    "face-balancing",
    "wdvv",
    "monotonicity",
    "positivity",
    "integrality",
    "chambers",
    "k-independence",
    "vanishing",
    "base-cases",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub input: String,
    pub expected: String,
    pub got: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: expected {}, got {}", self.input, self.expected, self.got)
    }
}

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub elapsed: Duration,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} cases, {} failures, {:.2}s",
            if self.passed() { "ok" } else { "FAILED" },
            self.name,
            self.cases,
            self.failures.len(),
            self.elapsed.as_secs_f64()
        )
    }
}

fn failure(input: impl fmt::Display, expected: impl Into<String>, got: impl Into<String>) -> Failure {
    Failure { input: input.to_string(), expected: expected.into(), got: got.into() }
}

/// Runs `check` on every case in parallel; errors are recorded as failures.
fn run<T, F>(name: &str, cases: Vec<T>, check: F) -> SuiteResult
where
    T: Sync + fmt::Display,
    F: Fn(&T) -> Result<Vec<Failure>> + Sync,
{
    let start = Instant::now();
    let mut failures: Vec<Failure> = cases
        .par_iter()
        .flat_map_iter(|c| check(c).unwrap_or_else(|e| vec![failure(c, "no error", e.to_string())]))
        .collect();
    failures.sort_by(|a, b| a.input.cmp(&b.input));
    SuiteResult { name: name.to_string(), cases: cases.len(), failures, elapsed: start.elapsed() }
}

fn ordered_numerical(n_min: usize, n_max: usize, r_max: i64) -> Vec<MonodromyVector> {
    (n_min..=n_max).flat_map(|n| (2..=r_max).flat_map(move |r| numerical_vectors(n, r))).collect()
}

fn sorted_numerical(n_min: usize, n_max: usize, r_max: i64) -> Vec<MonodromyVector> {
    (n_min..=n_max).flat_map(|n| (2..=r_max).flat_map(move |r| numerical_partitions(n, r))).collect()
}

fn of_dimension(n_min: usize, n_max: usize, r_max: i64, dim: i64) -> Vec<MonodromyVector> {
    (n_min..=n_max).flat_map(|n| (2..=r_max).flat_map(move |r| vectors_of_dimension(n, r, dim))).collect()
}

fn check_eq(input: impl fmt::Display, expected: &Rational, got: &Rational) -> Vec<Failure> {
    if expected == got {
        Vec::new()
    } else {
        vec![failure(input, format(expected), format(got))]
    }
}

/// Closed formula against the recursion oracle on every ordered numerical
/// vector with `4 <= n <= n_max`, `r <= r_max`.
pub fn formula_vs_oracle(n_max: usize, r_max: i64) -> SuiteResult {
    let oracle = RecursionOracle::new();
    run("formula-vs-oracle", ordered_numerical(4, n_max, r_max), |v| {
        Ok(check_eq(v, &closed_formula(v)?, &oracle.evaluate(v)?))
    })
}

/// Every one-dimensional tropicalization is balanced at every anchor.
pub fn balancing(n_max: usize, r_max: i64) -> SuiteResult {
    run("balancing", of_dimension(4, n_max, r_max, 1), |v| {
        let c = TropicalCycle::tropicalize(v)?;
        let mut out = Vec::new();
        for k in 0..v.n() {
            let report = check_balancing_origin(&c, k)?;
            if !report.balanced {
                out.push(failure(format!("{v} anchor {}", k + 1), "balanced", report.residual.to_string()));
            }
        }
        Ok(out)
    })
}

/// Every two-dimensional tropicalization is balanced along every face, by the
/// per-vertex reduction and by the linear check, with equal residuals.
pub fn face_balancing(n_max: usize, r_max: i64) -> SuiteResult {
    run("face-balancing", of_dimension(5, n_max, r_max, 2), |v| {
        let c = TropicalCycle::tropicalize(v)?;
        let mut out = Vec::new();
        for tau in faces(&c) {
            let by_vertex = check_balancing_face_by_vertices(&c, &tau)?;
            let linear = check_balancing_face_linear(&c, &tau)?;
            if !by_vertex.balanced || !linear.balanced || by_vertex.residual != linear.residual {
                out.push(failure(
                    format!("{v} face {tau}"),
                    "balanced by both checks",
                    format!("per-vertex {}, linear {}", by_vertex.balanced, linear.balanced),
                ));
            }
        }
        Ok(out)
    })
}

/// All three four-point pushforward weights agree, for every choice of four marks.
pub fn wdvv(n_max: usize, r_max: i64) -> SuiteResult {
    run("wdvv", of_dimension(4, n_max, r_max, 1), |v| {
        let c = TropicalCycle::tropicalize(v)?;
        let mut out = Vec::new();
        for keep in MarkSet::full(v.n()).subsets().filter(|s| s.len() == 4) {
            let k: Vec<usize> = keep.iter().collect();
            let p = pushforward(&c, [k[0], k[1], k[2], k[3]])?;
            if !p.holds || p.ab_cd != p.ac_bd {
                out.push(failure(
                    format!("{v} marks {keep}"),
                    "equal pushforward weights",
                    format!("{} {} {}", format(&p.ab_cd), format(&p.ac_bd), format(&p.ad_bc)),
                ));
            }
        }
        Ok(out)
    })
}

/// `a < b` in dominance implies `w(a) >= w(b)`, over all pairs of sorted
/// numerical vectors with equal `(n, r)`. Both sides only depend on the
/// multiset of entries, so sorted representatives cover all vectors.
pub fn monotonicity(n_max: usize, r_max: i64) -> SuiteResult {
    let engine = ClosedFormulaEngine::global();
    let groups: Vec<Group> = (4..=n_max)
        .flat_map(|n| (2..=r_max).map(move |r| Group { n, r, members: numerical_partitions(n, r) }))
        .collect();
    let mut result = run("monotonicity", groups, |g| {
        let values = g.members.iter().map(|v| engine.evaluate(v)).collect::<Result<Vec<_>>>()?;
        let mut out = Vec::new();
        for (a, wa) in g.members.iter().zip(&values) {
            for (b, wb) in g.members.iter().zip(&values) {
                if dominance_compare(a, b)? == DominanceOrdering::Less && wa < wb {
                    out.push(failure(format!("{a} < {b}"), format!(">= {}", format(wb)), format(wa)));
                }
            }
        }
        Ok(out)
    });
    result.cases = (4..=n_max).flat_map(|n| (2..=r_max).map(move |r| numerical_partitions(n, r).len().pow(2))).sum();
    result
}

struct Group {
    n: usize,
    r: i64,
    members: Vec<MonodromyVector>,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} r={}", self.n, self.r)
    }
}

/// `w >= 0`, and `w > 0` exactly when `n - 2 <= m_i <= r - 1` for all `i`.
pub fn positivity(n_max: usize, r_max: i64) -> SuiteResult {
    let engine = ClosedFormulaEngine::global();
    run("positivity", ordered_numerical(3, n_max, r_max), |v| {
        let w = engine.evaluate(v)?;
        let n = v.n() as i64;
        let in_range = v.marks().iter().all(|&m| n - 2 <= m && m <= v.r() - 1);
        let mut out = Vec::new();
        if w.is_negative() {
            out.push(failure(v, ">= 0", format(&w)));
        }
        if w.is_positive() != in_range {
            out.push(failure(v, if in_range { "> 0" } else { "0" }, format(&w)));
        }
        Ok(out)
    })
}

/// `w r^(n-3) / (n-3)!` is a nonnegative integer, equal to 1 on the extremal
/// vectors (smallest entry `n - 2`, all entries in `n - 2 ..= r - 1`).
pub fn integrality(n_max: usize, r_max: i64) -> SuiteResult {
    let engine = ClosedFormulaEngine::global();
    run("integrality", ordered_numerical(3, n_max, r_max), |v| {
        let w = engine.evaluate(v)?;
        let q = integrality_quotient(v, &w)?;
        if is_extremal(v) && (q != 1.into() || w != extremal_value(v.n(), v.r())?) {
            return Ok(vec![failure(v, "normalized value 1", q.to_string())]);
        }
        Ok(Vec::new())
    })
}

/// Chamber polynomials reproduce `2 r^(n-3) w` at every scanned point, have
/// degree at most `n - 3`, and adjacent chambers agree on wall strips.
pub fn chambers(n_max: usize, r_max: i64) -> SuiteResult {
    let start = Instant::now();
    let mut cases = 0;
    let mut failures = Vec::new();
    for n in 4..=n_max {
        match chamber_scan(n, r_max) {
            Err(e) => failures.push(failure(format!("n={n} r_max={r_max}"), "scan", e.to_string())),
            Ok(scan) => {
                cases += scan.sample_count();
                for (pattern, c) in &scan.chambers {
                    for v in &c.failures {
                        failures.push(failure(v, "chamber polynomial value", format!("mismatch in [{pattern}]")));
                    }
                    if c.polynomial.poly.degree() > n as u32 - 3 {
                        failures.push(failure(format!("[{pattern}]"), format!("degree <= {}", n - 3), c.polynomial.poly.degree().to_string()));
                    }
                }
                let adjacencies = scan.adjacencies();
                cases += adjacencies.len();
                match scan.check_strips() {
                    Err(e) => failures.push(failure(format!("n={n} strips"), "strip check", e.to_string())),
                    Ok(bad) => failures.extend(bad.into_iter().map(|a| {
                        failure(format!("[{}] | [{}] across {}", a.low, a.high, a.wall), "agreement on the strip", "disagreement")
                    })),
                }
            }
        }
    }
    SuiteResult { name: "chambers".into(), cases, failures, elapsed: start.elapsed() }
}

/// For every sorted numerical vector and every valid `(i, j)`: `T^{i,j,k}` does
/// not depend on `k`, and `w(m) - w(m - e_i + e_j) = (n - 3) T^{i,j,k}`.
pub fn k_independence(n_max: usize, r_max: i64) -> SuiteResult {
    let engine = ClosedFormulaEngine::global();
    run("k-independence", sorted_numerical(4, n_max, r_max), |v| {
        let n = v.n();
        let (r, m) = (v.r(), v.marks());
        let w = engine.evaluate(v)?;
        let mut out = Vec::new();
        for i in (0..n).filter(|&i| m[i] > 1) {
            for j in (0..n).filter(|&j| j != i && m[j] < r) {
                let moved = engine.evaluate(&v.moved(i, j))?;
                let expected = (&w - &moved) / int(n as i64 - 3);
                for k in (0..n).filter(|&k| k != i && k != j) {
                    let t = t_term(v, i, j, k)?;
                    if t != expected {
                        out.push(failure(
                            format!("{v} i={} j={} k={}", i + 1, j + 1, k + 1),
                            format(&expected),
                            format(&t),
                        ));
                    }
                }
            }
        }
        Ok(out)
    })
}

/// `w = 0` exactly when some `m_i = r` or (for `n >= 4`) some `m_i <= n - 3`.
pub fn vanishing(n_max: usize, r_max: i64) -> SuiteResult {
    let engine = ClosedFormulaEngine::global();
    run("vanishing", ordered_numerical(3, n_max, r_max), |v| {
        let w = engine.evaluate(v)?;
        let class = vanishes(v);
        if w.is_zero() != (class != Vanishing::Nonzero) {
            return Ok(vec![failure(v, format!("{class:?}"), format(&w))]);
        }
        Ok(Vec::new())
    })
}

/// Three-point invariants are 1 and four-point invariants follow the min rule,
/// by the closed formula and by the oracle, for `r <= r_max`.
pub fn base_cases(r_max: i64) -> SuiteResult {
    base_cases_split(r_max, r_max)
}

/// As [`base_cases`] with separate bounds for three and four points.
pub fn base_cases_split(r_max_three: i64, r_max_four: i64) -> SuiteResult {
    let oracle = RecursionOracle::new();
    let cases: Vec<MonodromyVector> = (2..=r_max_three)
        .flat_map(|r| numerical_vectors(3, r))
        .chain((2..=r_max_four).flat_map(|r| numerical_vectors(4, r)))
        .collect();
    run("base-cases", cases, |v| {
        let expected = if v.n() == 3 { three_point(v)? } else { four_point(v)? };
        let mut out = check_eq(format!("{v} closed"), &expected, &closed_formula(v)?);
        out.extend(check_eq(format!("{v} oracle"), &expected, &oracle.evaluate(v)?));
        if v.n() == 3 && expected != int(1) {
            out.push(failure(v, "1", format(&expected)));
        }
        if v.n() == 4 {
            let r = v.r();
            let min = v.marks().iter().map(|&m| (m - 1).min(r - m)).min().unwrap_or(0);
            out.extend(check_eq(format!("{v} min rule"), &Rational::new(min.into(), r.into()), &expected));
        }
        Ok(out)
    })
}

/// Runs a suite by name.
pub fn run_suite(name: &str, n_max: usize, r_max: i64) -> Result<SuiteResult> {
    if n_max < 3 || r_max < 2 {
        return Err(Error::Precondition(format!("need n_max >= 3 and r_max >= 2, got {n_max}, {r_max}")));
    }
    Ok(match name {
        "formula-vs-oracle" => formula_vs_oracle(n_max, r_max),
        "balancing" => balancing(n_max, r_max),
        "face-balancing" => face_balancing(n_max, r_max),
        "wdvv" => wdvv(n_max, r_max),
        "monotonicity" => monotonicity(n_max, r_max),
        "positivity" => positivity(n_max, r_max),
        "integrality" => integrality(n_max, r_max),
        "chambers" => chambers(n_max, r_max),
        "k-independence" => k_independence(n_max, r_max),
        "vanishing" => vanishing(n_max, r_max),
        "base-cases" => base_cases(r_max),
        other => return Err(Error::Precondition(format!("unknown suite {other:?}; known: {}", SUITES.join(", ")))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_at_small_scale() {
        for name in SUITES {
            let result = run_suite(name, 5, 6).unwrap();
            assert!(result.passed(), "{result}: {:?}", result.failures.first());
            assert!(result.cases > 0, "{name}");
        }
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suite("nope", 5, 6).is_err());
        assert!(run_suite("wdvv", 2, 6).is_err());
    }

    #[test]
    fn failures_are_reported_with_inputs() {
        let r = run("demo", vec![1, 2, 3], |&x: &i32| {
            Ok(if x == 2 { vec![failure(x, "odd", "even")] } else { Vec::new() })
        });
        assert!(!r.passed());
        assert_eq!(r.failures[0].to_string(), "2: expected odd, got even");
        assert!(r.to_string().starts_with("FAILED demo: 3 cases, 1 failures"));
    }
}
