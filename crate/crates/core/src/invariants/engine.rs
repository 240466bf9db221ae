//! Evaluation engines for numerical invariants and their shared memo table.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;

use dashmap::DashMap;

use super::Method;
use crate::error::Result;
use crate::monodromy::MonodromyVector;
use crate::rational::Rational;

/// Something that evaluates `w_r` on numerical vectors.
pub trait Engine: Sync {
    fn evaluate(&self, v: &MonodromyVector) -> Result<Rational>;
    fn method(&self) -> Method;
}

/// Environment variable capping the number of entries each memo table keeps.
pub const CACHE_LIMIT_VAR: &str = "RSPIN_CACHE_LIMIT";

fn cache_limit() -> usize {
    static LIMIT: OnceLock<usize> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var(CACHE_LIMIT_VAR)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(usize::MAX)
    })
}

/// Concurrent memo table keyed by `(r, marks sorted descending)`.
///
/// Lookups clone the value out so no shard lock is held while the caller
/// recurses.
#[derive(Default)]
pub struct Memo {
    table: DashMap<(i64, Vec<i64>), Rational>,
    inserted: AtomicUsize,
}

impl Memo {
    pub fn key(v: &MonodromyVector) -> (i64, Vec<i64>) {
        (v.r(), v.sorted_descending().marks().to_vec())
    }

    pub fn get(&self, key: &(i64, Vec<i64>)) -> Option<Rational> {
        self.table.get(key).map(|e| e.value().clone())
    }

    pub fn insert(&self, key: (i64, Vec<i64>), value: Rational) {
        if self.inserted.load(Ordering::Relaxed) < cache_limit() {
            self.inserted.fetch_add(1, Ordering::Relaxed);
            self.table.insert(key, value);
        }
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

/// Memoized closed inclusion-exclusion formula.
#[derive(Default)]
pub struct ClosedFormulaEngine {
    memo: Memo,
}

impl ClosedFormulaEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide instance.
    pub fn global() -> &'static ClosedFormulaEngine {
        static ENGINE: OnceLock<ClosedFormulaEngine> = OnceLock::new();
        ENGINE.get_or_init(ClosedFormulaEngine::new)
    }
}

impl Engine for ClosedFormulaEngine {
    fn evaluate(&self, v: &MonodromyVector) -> Result<Rational> {
        let key = Memo::key(v);
        if let Some(value) = self.memo.get(&key) {
            return Ok(value);
        }
        let value = super::closed_formula(v)?;
        self.memo.insert(key, value.clone());
        Ok(value)
    }

    fn method(&self) -> Method {
        Method::ClosedFormula
    }
}
