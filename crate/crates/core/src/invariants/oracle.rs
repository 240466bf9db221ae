//! Independent evaluation of `w_r` by the neighbor recursion.
//!
//! Starting from a numerical vector, the largest entry below `r` is raised one
//! unit at a time (taking the unit from the smallest entry above 1) until it
//! reaches `r`, where the invariant vanishes. Each step contributes
//! `(n - 3) * T` with `T` built from `(n - 1)`-point invariants that are
//! evaluated by this same oracle. The closed formula is never consulted.

use std::sync::OnceLock;

use super::engine::{Engine, Memo};
use super::{t_term_with, Method};
use crate::error::{Error, Result};
use crate::monodromy::MonodromyVector;
use crate::rational::{int, one, zero, Rational};

#[derive(Default)]
pub struct RecursionOracle {
    memo: Memo,
}

impl RecursionOracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn global() -> &'static RecursionOracle {
        static ORACLE: OnceLock<RecursionOracle> = OnceLock::new();
        ORACLE.get_or_init(RecursionOracle::new)
    }

    /// Number of memoized vectors.
    pub fn cached(&self) -> usize {
        self.memo.len()
    }

    /// Positions `(i, j, k)` of the next step on `marks`: `j` holds the largest
    /// entry, `i` the smallest entry above 1 elsewhere, `k` the first remaining.
    fn step_positions(marks: &[i64]) -> Option<(usize, usize, usize)> {
        let max = *marks.iter().max()?;
        let j = marks.iter().position(|&m| m == max)?;
        let i = (0..marks.len())
            .filter(|&p| p != j && marks[p] > 1)
            .min_by_key(|&p| (marks[p], p))?;
        let k = (0..marks.len()).find(|&p| p != i && p != j)?;
        Some((i, j, k))
    }

    fn run(&self, v: &MonodromyVector) -> Result<Rational> {
        if !v.is_numerical() {
            return Err(Error::Precondition(format!("{v} is not numerical")));
        }
        let n = v.n();
        if n == 3 {
            return Ok(one());
        }
        if v.has_ramond() {
            return Ok(zero());
        }
        let key = Memo::key(v);
        if let Some(value) = self.memo.get(&key) {
            return Ok(value);
        }

        // Walk the chain, remembering each step's contribution.
        let factor = int(n as i64 - 3);
        let mut current = v.sorted_descending();
        let mut visited = Vec::new();
        let mut contributions = Vec::new();
        let tail = loop {
            if current.has_ramond() {
                break zero();
            }
            let key = Memo::key(&current);
            if !visited.is_empty() {
                if let Some(value) = self.memo.get(&key) {
                    break value;
                }
            }
            let (i, j, k) = Self::step_positions(current.marks()).ok_or_else(|| {
                Error::Precondition(format!("no recursion step available from {current}"))
            })?;
            let t = t_term_with(self, &current, i, j, k)?;
            contributions.push(&factor * t);
            visited.push(key);
            current = current.moved(i, j);
        };

        let mut value = tail;
        for (key, c) in visited.into_iter().zip(contributions).rev() {
            value += c;
            self.memo.insert(key, value.clone());
        }
        Ok(value)
    }
}

impl Engine for RecursionOracle {
    fn evaluate(&self, v: &MonodromyVector) -> Result<Rational> {
        self.run(v)
    }

    fn method(&self) -> Method {
        Method::Recursion
    }
}

/// `w_r(v)` by the recursion, using the process-wide memo table.
pub fn recursion_oracle(v: &MonodromyVector) -> Result<Rational> {
    RecursionOracle::global().evaluate(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn v(r: i64, marks: &[i64]) -> MonodromyVector {
        MonodromyVector::validate(r, marks).unwrap()
    }

    #[test]
    fn oracle_examples() {
        let oracle = RecursionOracle::new();
        assert_eq!(oracle.evaluate(&v(10, &[5, 5, 6, 6])).unwrap(), ratio(2, 5));
        assert_eq!(oracle.evaluate(&v(7, &[3, 4, 5, 6, 6])).unwrap(), ratio(2, 49));
        assert_eq!(oracle.evaluate(&v(8, &[4, 5, 5, 6, 7])).unwrap(), ratio(1, 16));
        assert_eq!(oracle.evaluate(&v(10, &[3, 6, 2])).unwrap(), one());
        assert!(oracle.cached() > 0);
        assert!(matches!(oracle.evaluate(&v(10, &[3, 4, 5, 5, 6])), Err(Error::Precondition(_))));
    }

    #[test]
    fn four_point_by_recursion_matches_min_rule() {
        let oracle = RecursionOracle::new();
        for r in 2..=15 {
            for m in crate::monodromy::numerical_vectors(4, r) {
                let min = m.marks().iter().map(|&x| (x - 1).min(r - x)).min().unwrap();
                assert_eq!(oracle.evaluate(&m).unwrap(), ratio(min, r), "{m}");
            }
        }
    }
}
