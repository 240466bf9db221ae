//! Multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::{format, Rational};

/// Exponent vector, ordered by total degree and then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in a fixed number of variables; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    vars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(vars: usize) -> Self {
        Polynomial { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Monomial(vec![0; vars]), c);
        p
    }

    pub fn var(vars: usize, index: usize) -> Self {
        let mut e = vec![0; vars];
        e[index] = 1;
        let mut p = Self::zero(vars);
        p.add_term(Monomial(e), Rational::one());
        p
    }

    /// `sum_i coeffs[i] x_i + c`.
    pub fn linear(coeffs: &[i64], c: i64) -> Self {
        let vars = coeffs.len();
        let mut p = Self::constant(vars, Rational::from_integer(c.into()));
        for (i, &a) in coeffs.iter().enumerate() {
            if a != 0 {
                let mut e = vec![0; vars];
                e[i] = 1;
                p.add_term(Monomial(e), Rational::from_integer(a.into()));
            }
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Terms from the highest monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        let mut p = Polynomial::zero(self.vars);
        for (m, a) in &self.terms {
            p.add_term(m.clone(), a * c);
        }
        p
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars, "wrong number of variables");
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter().zip(point).fold(c.clone(), |acc, (&e, x)| acc * num_traits::pow(x.clone(), e as usize))
            })
            .sum()
    }

    /// Evaluation at an integer point.
    pub fn eval_int(&self, point: &[i64]) -> Rational {
        assert_eq!(point.len(), self.vars, "wrong number of variables");
        if let Some(x) = self.eval_i128(point) {
            return Rational::from_integer(x.into());
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                let mono: BigInt = m.0.iter().zip(point).map(|(&e, &x)| BigInt::from(x).pow(e)).product();
                c * Rational::from_integer(mono)
            })
            .sum()
    }
}

impl Polynomial {
    /// Machine-integer evaluation; `None` on a non-integer coefficient or overflow.
    fn eval_i128(&self, point: &[i64]) -> Option<i128> {
        let mut total: i128 = 0;
        for (m, c) in &self.terms {
            if !c.is_integer() {
                return None;
            }
            let mut term: i128 = c.numer().try_into().ok()?;
            for (&e, &x) in m.0.iter().zip(point) {
                term = term.checked_mul((x as i128).checked_pow(e)?)?;
            }
            total = total.checked_add(term)?;
        }
        Some(total)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.vars, rhs.vars, "polynomials in different rings");
        let mut p = Polynomial::zero(self.vars);
        for (ma, a) in &self.terms {
            for (mb, b) in &rhs.terms {
                let e = ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect();
                p.add_term(Monomial(e), a * b);
            }
        }
        p
    }
}

/// Variable names `m1, ..., m(n), r` for `n + 1` variables.
pub fn default_names(vars: usize) -> Vec<String> {
    (1..vars).map(|i| format!("m{i}")).chain(["r".to_string()]).collect()
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let names = default_names(self.vars);
        for (k, (m, c)) in self.terms().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (k, sign) {
                (0, "-") => f.write_str("-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            let abs = c.abs();
            let factors: Vec<String> = m
                .0
                .iter()
                .zip(&names)
                .filter(|(&e, _)| e > 0)
                .map(|(&e, name)| if e == 1 { name.clone() } else { format!("{name}^{e}") })
                .collect();
            if factors.is_empty() {
                f.write_str(&format(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", format(&abs))?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn arithmetic_and_display() {
        // Variables m1, m2, r.
        let x = Polynomial::var(3, 0);
        let r = Polynomial::var(3, 2);
        let p = &(&x + &r) * &(&x - &r);
        assert_eq!(p.to_string(), "m1^2 - r^2");
        assert_eq!(p.degree(), 2);
        assert_eq!(p.eval_int(&[5, 0, 3]), int(16));
        assert_eq!(p.eval(&[ratio(1, 2), int(0), int(1)]), ratio(-3, 4));
        assert!((&p - &p).is_zero());
        let q = Polynomial::linear(&[2, -1, 0], 7);
        assert_eq!(q.to_string(), "2*m1 - m2 + 7");
        assert_eq!(Polynomial::zero(3).to_string(), "0");
        assert_eq!(Polynomial::constant(3, ratio(-1, 2)).to_string(), "-1/2");
    }

    #[test]
    fn graded_order() {
        let a = Monomial(vec![0, 2, 0]);
        let b = Monomial(vec![1, 0, 0]);
        let c = Monomial(vec![0, 1, 1]);
        assert!(b < a);
        assert!(c < a);
    }
}
