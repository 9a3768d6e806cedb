//! The iterated generalization `X^(k)_n` of the two-sequence product identity.
//!
//! Level `-1` is the base sequence `G` and level `0` is `beta G_n + alpha G_{n-1}`.
//! Every higher level is a product convolution of two lower levels:
//!
//! ```text
//! X^(k)_n = X^(L)_{n-i+1} X^(R)_i + X^(L)_{n-i} X^(R)_{i-1}
//! ```
//!
//! with `(L, R) = (m-1, m-1)` for `k = 2m` and `(m, m-1)` for `k = 2m+1`.
//! Values are evaluated at the split `i = n`, which collapses to
//! `X^(L)_1 X^(R)_n + X^(L)_0 X^(R)_{n-1}`; agreement at the other splits is
//! checked separately by [`check_i_independence`].

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fib::FibSequence;
use crate::rational::Rational;
use crate::report::{Counterexample, IdentityReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum XkError {
    #[error("level k={0} is below the base level -1")]
    InvalidLevel(i64),
    #[error("{0}")]
    Precondition(String),
    #[error("malformed combination: {0}")]
    Combo(String),
}

/// The two levels a level-`k` value is built from, for `k >= 0`.
pub fn factor_levels(k: i64) -> Option<(i64, i64)> {
    if k < 0 {
        return None;
    }
    let m = k / 2;
    Some(if k % 2 == 0 { (m - 1, m - 1) } else { (m, m - 1) })
}

/// Memoized values `X^(k)_n` over one base sequence.
#[derive(Debug, Clone)]
pub struct XkTower {
    base: FibSequence,
    cache: HashMap<(i64, i64), Rational>,
}

impl XkTower {
    pub fn new(base: FibSequence) -> Self {
        XkTower {
            base,
            cache: HashMap::new(),
        }
    }

    pub fn from_seeds(alpha: impl Into<Rational>, beta: impl Into<Rational>) -> Self {
        XkTower::new(FibSequence::new(alpha, beta))
    }

    pub fn base(&self) -> &FibSequence {
        &self.base
    }

    pub fn cached_len(&self) -> usize {
        self.cache.len()
    }

    /// `X^(k)_n` for any `k >= -1` and any integer `n`.
    pub fn value(&mut self, k: i64, n: i64) -> Result<Rational, XkError> {
        if k < -1 {
            return Err(XkError::InvalidLevel(k));
        }
        if let Some(v) = self.cache.get(&(k, n)) {
            return Ok(v.clone());
        }
        let v = match k {
            -1 => self.base.term(n),
            0 => &self.base.beta * self.base.term(n) + &self.base.alpha * self.base.term(n - 1),
            _ => {
                let (l, r) = factor_levels(k).expect("k >= 1");
                self.value(l, 1)? * self.value(r, n)? + self.value(l, 0)? * self.value(r, n - 1)?
            }
        };
        self.cache.insert((k, n), v.clone());
        Ok(v)
    }

    /// Right-hand side of the level-`k` identity at split index `i`.
    /// For `k = 0` this is `G_{n-i+1} G_i + G_{n-i} G_{i-1}`.
    pub fn split_value(&mut self, k: i64, n: i64, i: i64) -> Result<Rational, XkError> {
        let (l, r) = factor_levels(k).ok_or(XkError::InvalidLevel(k))?;
        Ok(self.value(l, n - i + 1)? * self.value(r, i)? + self.value(l, n - i)? * self.value(r, i - 1)?)
    }
}

fn seeds_report(name: &str, tower: &XkTower) -> IdentityReport {
    IdentityReport::new(name)
        .param("alpha", tower.base.alpha.to_string())
        .param("beta", tower.base.beta.to_string())
}

/// Evaluates the level-`k` right-hand side at every split `1 <= i <= n` and
/// checks that all of them agree with the canonical value. On success the
/// common value is stored in the report's `value` parameter.
pub fn check_i_independence(tower: &mut XkTower, k: i64, n: i64) -> Result<IdentityReport, XkError> {
    if k < 0 {
        return Err(XkError::InvalidLevel(k));
    }
    if n < 1 {
        return Err(XkError::Precondition(format!("n must be at least 1 (got {n})")));
    }
    let canonical = tower.value(k, n)?;
    let mut report = seeds_report("i-independence", tower).param("k", k).param("n", n);
    for i in 1..=n {
        let at_i = tower.split_value(k, n, i)?;
        report.record(at_i == canonical, || {
            Counterexample::new(&at_i, &canonical).at("k", k).at("n", n).at("i", i)
        });
    }
    if report.pass() {
        report = report.param("value", canonical.to_string());
    }
    Ok(report)
}

/// `X^(k)_n = X^(k)_{n-1} + X^(k)_{n-2}` for `3 <= n <= n_max`.
pub fn check_fib_in_n(tower: &mut XkTower, k: i64, n_max: i64) -> Result<IdentityReport, XkError> {
    if n_max < 3 {
        return Err(XkError::Precondition(format!("n_max must be at least 3 (got {n_max})")));
    }
    let mut report = seeds_report("fib-in-n", tower).param("k", k).param("n_max", n_max);
    for n in 3..=n_max {
        let lhs = tower.value(k, n)?;
        let rhs = tower.value(k, n - 1)? + tower.value(k, n - 2)?;
        report.record(lhs == rhs, || Counterexample::new(&lhs, &rhs).at("k", k).at("n", n));
    }
    Ok(report)
}

/// `X^(k)_n = X^(k-1)_n + X^(k-2)_n` for `2 <= k <= k_max` at a fixed `n`.
pub fn check_meta_fib(tower: &mut XkTower, k_max: i64, n: i64) -> Result<IdentityReport, XkError> {
    if k_max < 2 || n < 2 {
        return Err(XkError::Precondition(format!(
            "need k_max >= 2 and n >= 2 (got k_max={k_max}, n={n})"
        )));
    }
    let mut report = seeds_report("meta-fib", tower).param("k_max", k_max).param("n", n);
    for k in 2..=k_max {
        let lhs = tower.value(k, n)?;
        let rhs = tower.value(k - 1, n)? + tower.value(k - 2, n)?;
        report.record(lhs == rhs, || Counterexample::new(&lhs, &rhs).at("k", k).at("n", n));
        if !report.pass() {
            break;
        }
    }
    Ok(report)
}

/// Seeds for which the tower is Fibonacci in its level index.
pub fn classify_seeds(alpha: &Rational, beta: &Rational) -> bool {
    let (a, b) = (alpha.clone(), beta.clone());
    let zero = Rational::zero();
    let one = Rational::one();
    (a == zero && b == zero) || (a == one && b == one) || (a == -one && b == zero)
}

/// One term `a * X^(k)_n` of a linear combination.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComboTerm {
    pub a: Rational,
    pub k: i64,
    pub n: i64,
}

/// A non-empty linear combination of tower values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ComboSpec {
    terms: Vec<ComboTerm>,
}

impl ComboSpec {
    pub fn new(terms: Vec<ComboTerm>) -> Result<Self, XkError> {
        if terms.is_empty() {
            return Err(XkError::Combo("at least one term is required".into()));
        }
        if let Some(t) = terms.iter().find(|t| t.k < -1) {
            return Err(XkError::InvalidLevel(t.k));
        }
        Ok(ComboSpec { terms })
    }

    /// Parses `[{"a": "2", "k": 1, "n": 4}, ...]`.
    pub fn from_json(text: &str) -> Result<Self, XkError> {
        let terms: Vec<ComboTerm> =
            serde_json::from_str(text).map_err(|e| XkError::Combo(e.to_string()))?;
        ComboSpec::new(terms)
    }

    pub fn terms(&self) -> &[ComboTerm] {
        &self.terms
    }

    /// `sum_j a_j X^(k_j + level_shift)_(n_j + index_shift)`.
    pub fn evaluate(&self, tower: &mut XkTower, level_shift: i64, index_shift: i64) -> Result<Rational, XkError> {
        let mut total = Rational::zero();
        for t in &self.terms {
            total = total + &t.a * tower.value(t.k + level_shift, t.n + index_shift)?;
        }
        Ok(total)
    }
}

impl<'de> Deserialize<'de> for ComboSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<ComboTerm>::deserialize(deserializer)?;
        ComboSpec::new(terms).map_err(serde::de::Error::custom)
    }
}

/// With `Y(t) = sum_j a_j X^(k_j)_(n_j + t)`, checks `Y(t) = Y(t-1) + Y(t-2)`
/// for `2 <= t <= t_max`.
pub fn combo_fib_in_n(tower: &mut XkTower, combo: &ComboSpec, t_max: i64) -> Result<IdentityReport, XkError> {
    if t_max < 2 {
        return Err(XkError::Precondition(format!("t_max must be at least 2 (got {t_max})")));
    }
    let mut report = seeds_report("combo-fib-in-n", tower)
        .param("terms", combo.terms.len())
        .param("t_max", t_max);
    for t in 2..=t_max {
        let lhs = combo.evaluate(tower, 0, t)?;
        let rhs = combo.evaluate(tower, 0, t - 1)? + combo.evaluate(tower, 0, t - 2)?;
        report.record(lhs == rhs, || Counterexample::new(&lhs, &rhs).at("t", t));
    }
    Ok(report)
}

/// With `Y(s) = sum_j a_j X^(k_j + s)_(n_j)`, checks `Y(s) = Y(s-1) + Y(s-2)`
/// for `2 <= s <= s_max`. Every `k_j` must be at least 0 so that the
/// recurrence only involves levels `>= 0`.
pub fn combo_fib_in_k(tower: &mut XkTower, combo: &ComboSpec, s_max: i64) -> Result<IdentityReport, XkError> {
    if s_max < 2 {
        return Err(XkError::Precondition(format!("s_max must be at least 2 (got {s_max})")));
    }
    if let Some(t) = combo.terms.iter().find(|t| t.k < 0) {
        return Err(XkError::Precondition(format!("level shifts need k >= 0 (got {})", t.k)));
    }
    let mut report = seeds_report("combo-fib-in-k", tower)
        .param("terms", combo.terms.len())
        .param("s_max", s_max);
    for s in 2..=s_max {
        let lhs = combo.evaluate(tower, s, 0)?;
        let rhs = combo.evaluate(tower, s - 1, 0)? + combo.evaluate(tower, s - 2, 0)?;
        report.record(lhs == rhs, || Counterexample::new(&lhs, &rhs).at("s", s));
    }
    Ok(report)
}

/// Rows `k = -1..=k_max`, columns `n = 1..=n_max`.
pub fn xk_table(tower: &mut XkTower, k_max: i64, n_max: i64) -> Result<Vec<(i64, Vec<Rational>)>, XkError> {
    (-1..=k_max)
        .map(|k| {
            let row = (1..=n_max).map(|n| tower.value(k, n)).collect::<Result<Vec<_>, _>>()?;
            Ok((k, row))
        })
        .collect()
}
