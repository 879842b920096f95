use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use super::expr::Operator;
use crate::algebra::Polynomial;
use crate::error::Result;
use crate::scalar::Scalar;

/// Computes `Q x^n` for an operator known only through its action.
pub type RowOracle<K> = Arc<dyn Fn(usize) -> Result<Polynomial<K>> + Send + Sync>;

enum Source<K> {
    Expr(Operator<K>),
    Oracle(RowOracle<K>),
}

/// Matrix view `Q x^n = Σ_k c_{n,k} x^k` with a lazily filled row cache.
///
/// Rows are computed outside the lock and inserted with first-writer-wins,
/// so concurrent readers may duplicate work but never see a partial row.
pub struct OperatorTable<K> {
    source: Source<K>,
    rows: RwLock<BTreeMap<usize, Polynomial<K>>>,
}

impl<K: Scalar> OperatorTable<K> {
    pub fn new(op: Operator<K>) -> Self {
        Self {
            source: Source::Expr(op),
            rows: RwLock::new(BTreeMap::new()),
        }
    }

    pub fn from_oracle(oracle: RowOracle<K>) -> Self {
        Self {
            source: Source::Oracle(oracle),
            rows: RwLock::new(BTreeMap::new()),
        }
    }

    pub fn operator(&self) -> Option<&Operator<K>> {
        match &self.source {
            Source::Expr(op) => Some(op),
            Source::Oracle(_) => None,
        }
    }

    /// `Q x^n`, served from the cache after the first computation.
    pub fn row(&self, n: usize) -> Result<Polynomial<K>> {
        if let Some(row) = self.rows.read().expect("row cache poisoned").get(&n) {
            return Ok(row.clone());
        }
        let row = match &self.source {
            Source::Expr(op) => op.apply(&Polynomial::monomial(K::one(), n))?,
            Source::Oracle(f) => f(n)?,
        };
        let mut cache = self.rows.write().expect("row cache poisoned");
        Ok(cache.entry(n).or_insert(row).clone())
    }

    pub fn entry(&self, n: usize, k: usize) -> Result<K> {
        Ok(self.row(n)?.coeff(k))
    }

    /// `q_t(n) = c_{n, n+t}` for `n = 0..=n_max`, zero where `n + t < 0`.
    pub fn diagonal(&self, t: i64, n_max: usize) -> Result<Vec<K>> {
        (0..=n_max)
            .map(|n| match usize::try_from(n as i64 + t) {
                Ok(k) => self.entry(n, k),
                Err(_) => Ok(K::zero()),
            })
            .collect()
    }

    pub fn cached_rows(&self) -> usize {
        self.rows.read().expect("row cache poisoned").len()
    }
}

impl<K: Scalar> fmt::Debug for OperatorTable<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("OperatorTable");
        match &self.source {
            Source::Expr(op) => d.field("operator", op),
            Source::Oracle(_) => d.field("operator", &"<oracle>"),
        };
        d.field("cached_rows", &self.cached_rows()).finish()
    }
}
