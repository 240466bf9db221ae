//! Genus-zero r-spin invariants `w_r(m)` of numerical monodromy vectors.
//!
//! Three independent routes are provided: the 3- and 4-point base cases, the
//! closed inclusion-exclusion formula over subsets `S` of marks satisfying
//! `sum_S m >= (|S| - 1) r + n - 2`, and a recursion oracle
//! ([`oracle::RecursionOracle`]) that only uses the neighbor recursion and
//! Ramond vanishing.

pub mod engine;
pub mod oracle;

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

pub use engine::{ClosedFormulaEngine, Engine, Memo};
pub use oracle::{recursion_oracle, RecursionOracle};

use crate::error::{Error, Result};
use crate::marks::MarkSet;
use crate::monodromy::MonodromyVector;
use crate::rational::{factorial, one, zero, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedFormula,
    Recursion,
    BaseCase,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedFormula => "closed-formula",
            Method::Recursion => "recursion",
            Method::BaseCase => "base-case",
        })
    }
}

/// Which route [`compute`] takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MethodChoice {
    /// Base cases for `n <= 4`, the closed formula otherwise.
    #[default]
    Auto,
    Closed,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantValue {
    pub value: Rational,
    pub method: Method,
}

/// The two summation conditions of the closed formula for one subset `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StarCondition {
    pub subset: MarkSet,
    /// `sum_S m >= (|S| - 1) r + n - 2`
    pub star1: bool,
    /// `sum_S m >= (|S| - 1) r + n - 3`
    pub star2: bool,
}

/// `sum_S m - (|S| - 1) r`. For `S` empty this is `r`.
pub fn level(v: &MonodromyVector, subset: MarkSet) -> i64 {
    subset.sum_of(v.marks()) - (subset.len() as i64 - 1) * v.r()
}

pub fn satisfies_star1(v: &MonodromyVector, subset: MarkSet) -> bool {
    level(v, subset) >= v.n() as i64 - 2
}

pub fn star_condition(v: &MonodromyVector, subset: MarkSet) -> StarCondition {
    let l = level(v, subset);
    let n = v.n() as i64;
    StarCondition { subset, star1: l >= n - 2, star2: l >= n - 3 }
}

fn require_numerical(v: &MonodromyVector) -> Result<()> {
    if v.is_numerical() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{v} is not numerical")))
    }
}

pub fn three_point(v: &MonodromyVector) -> Result<Rational> {
    require_numerical(v)?;
    if v.n() != 3 {
        return Err(Error::Precondition(format!("{v} does not have 3 marks")));
    }
    Ok(one())
}

/// `(1/r) min_i min(m_i - 1, r - m_i)`.
pub fn four_point(v: &MonodromyVector) -> Result<Rational> {
    require_numerical(v)?;
    if v.n() != 4 {
        return Err(Error::Precondition(format!("{v} does not have 4 marks")));
    }
    let r = v.r();
    let min = v.marks().iter().map(|&m| (m - 1).min(r - m)).min().unwrap_or(0);
    Ok(Rational::new(min.into(), r.into()))
}

/// `prod_{k=1}^{count} (l - k)`, in machine integers while they suffice.
fn falling_product(l: i64, count: usize) -> BigInt {
    let mut small: Option<i128> = Some(1);
    for k in 1..=count as i64 {
        small = small.and_then(|p| p.checked_mul((l - k) as i128));
    }
    match small {
        Some(p) => BigInt::from(p),
        None => (1..=count as i64).map(|k| BigInt::from(l - k)).product(),
    }
}

/// Signed summands `(-1)^(1 + |S|) prod_{k=1}^{n-3} (level(S) - k)` of the
/// closed formula's numerator, one per subset satisfying the first condition,
/// in increasing bit order.
pub fn closed_formula_terms(v: &MonodromyVector) -> Result<Vec<(MarkSet, BigInt)>> {
    require_numerical(v)?;
    let n = v.n();
    Ok(MarkSet::all_subsets(n)
        .filter(|&s| satisfies_star1(v, s))
        .map(|s| {
            let p = falling_product(level(v, s), n - 3);
            (s, if s.len() % 2 == 1 { p } else { -p })
        })
        .collect())
}

/// `N = 2 r^(n-3) w_r(v)`.
pub fn closed_formula_numerator(v: &MonodromyVector) -> Result<BigInt> {
    Ok(closed_formula_terms(v)?.into_iter().map(|(_, t)| t).sum())
}

pub fn closed_formula(v: &MonodromyVector) -> Result<Rational> {
    let numer = closed_formula_numerator(v)?;
    let denom = BigInt::from(2) * BigInt::from(v.r()).pow(v.n() as u32 - 3);
    Ok(Rational::new(numer, denom))
}

/// The two `(n - 1)`-point vectors entering `T^{i,j,k}`, when their indicator
/// is on. Positions are 0-based.
///
/// First: `m_i - 1`, the untouched entries, `m_j + m_k - r`.
/// Second: `m_j`, the untouched entries, `m_i + m_k - r - 1`.
pub fn t_term_vectors(
    v: &MonodromyVector,
    i: usize,
    j: usize,
    k: usize,
) -> Result<(Option<MonodromyVector>, Option<MonodromyVector>)> {
    require_numerical(v)?;
    let n = v.n();
    if n < 4 {
        return Err(Error::Precondition(format!("{v}: the recursion needs at least 4 marks")));
    }
    if i >= n || j >= n || k >= n || i == j || j == k || i == k {
        return Err(Error::Precondition(format!("positions ({i}, {j}, {k}) are not distinct marks of {v}")));
    }
    let (r, m) = (v.r(), v.marks());
    if m[i] <= 1 || m[j] >= r {
        return Err(Error::Precondition(format!("{v}: need m_i > 1 and m_j < r at ({i}, {j})")));
    }
    let rest: Vec<i64> = (0..n).filter(|&p| p != i && p != j && p != k).map(|p| m[p]).collect();
    let build = |first: i64, last: i64| {
        let mut marks = Vec::with_capacity(n - 1);
        marks.push(first);
        marks.extend_from_slice(&rest);
        marks.push(last);
        MonodromyVector::new_unchecked(r, marks)
    };
    let a = (m[j] + m[k] >= r + 1).then(|| build(m[i] - 1, m[j] + m[k] - r));
    let b = (m[i] + m[k] >= r + 2).then(|| build(m[j], m[i] + m[k] - r - 1));
    Ok((a, b))
}

/// `T^{i,j,k}` with inner invariants from `engine`.
pub fn t_term_with<E: Engine + ?Sized>(
    engine: &E,
    v: &MonodromyVector,
    i: usize,
    j: usize,
    k: usize,
) -> Result<Rational> {
    let (a, b) = t_term_vectors(v, i, j, k)?;
    let mut total = zero();
    if let Some(a) = a {
        total += engine.evaluate(&a)?;
    }
    if let Some(b) = b {
        total -= engine.evaluate(&b)?;
    }
    Ok(total / Rational::from_integer(v.r().into()))
}

/// `T^{i,j,k}` with inner invariants from the memoized closed formula.
pub fn t_term(v: &MonodromyVector, i: usize, j: usize, k: usize) -> Result<Rational> {
    t_term_with(ClosedFormulaEngine::global(), v, i, j, k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vanishing {
    Nonzero,
    /// Some `m_i = r`.
    Ramond,
    /// `n >= 4` and some `m_i <= n - 3`.
    LowInsertion,
}

/// Classifies a numerical vector; `Nonzero` means `w_r(v) > 0`.
pub fn vanishes(v: &MonodromyVector) -> Vanishing {
    let n = v.n() as i64;
    if v.has_ramond() {
        Vanishing::Ramond
    } else if n >= 4 && v.marks().iter().any(|&m| m <= n - 3) {
        Vanishing::LowInsertion
    } else {
        Vanishing::Nonzero
    }
}

/// `(n - 3)! / r^(n - 3)`.
pub fn extremal_value(n: usize, r: i64) -> Result<Rational> {
    if n < 3 || r < 2 {
        return Err(Error::Precondition(format!("need n >= 3 and r >= 2, got n = {n}, r = {r}")));
    }
    let e = n as u32 - 3;
    Ok(Rational::new(factorial(e), BigInt::from(r).pow(e)))
}

/// Vectors whose invariant is the smallest nonzero value: smallest entry
/// `n - 2` and every entry in `n - 2 ..= r - 1`.
pub fn is_extremal(v: &MonodromyVector) -> bool {
    let n = v.n() as i64;
    let m = v.marks();
    m.iter().min() == Some(&(n - 2)) && m.iter().all(|&x| x <= v.r() - 1)
}

/// `value * r^(n-3) / (n-3)!`, required to be a nonnegative integer.
pub fn integrality_quotient(v: &MonodromyVector, value: &Rational) -> Result<BigInt> {
    let q = value / extremal_value(v.n(), v.r())?;
    if !q.is_integer() || q.is_negative() {
        return Err(Error::IntegralityViolation { input: v.to_string(), value: crate::rational::format(value) });
    }
    Ok(q.to_integer())
}

pub fn normalized_integer(v: &MonodromyVector) -> Result<BigInt> {
    let value = compute(v, MethodChoice::Auto)?.value;
    integrality_quotient(v, &value)
}

pub fn compute(v: &MonodromyVector, choice: MethodChoice) -> Result<InvariantValue> {
    require_numerical(v)?;
    let (value, method) = match choice {
        MethodChoice::Auto if v.n() == 3 => (three_point(v)?, Method::BaseCase),
        MethodChoice::Auto if v.n() == 4 => (four_point(v)?, Method::BaseCase),
        MethodChoice::Auto | MethodChoice::Closed => {
            (ClosedFormulaEngine::global().evaluate(v)?, Method::ClosedFormula)
        }
        MethodChoice::Oracle => (RecursionOracle::global().evaluate(v)?, Method::Recursion),
    };
    Ok(InvariantValue { value, method })
}

/// `w_r` extended by zero to non-numerical vectors.
///
/// A factor whose Witten bundle rank exceeds the dimension of its moduli space
/// has vanishing top Chern class, so products containing it integrate to 0.
pub fn extended_value<E: Engine + ?Sized>(engine: &E, v: &MonodromyVector) -> Result<Rational> {
    if v.is_numerical() {
        engine.evaluate(v)
    } else {
        Ok(zero())
    }
}
