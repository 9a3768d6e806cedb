//! Linear combinations `sum_j p_j(a, b) * G_{n-j}` with polynomial coefficients.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::poly::BivarPoly;
use crate::fib::FibSequence;
use crate::rational::Rational;

/// Position `j` of `coeffs` holds the coefficient of `G_{n-j}`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GLinearForm {
    coeffs: Vec<BivarPoly>,
}

impl GLinearForm {
    pub fn zero() -> Self {
        GLinearForm::default()
    }

    pub fn new(coeffs: Vec<BivarPoly>) -> Self {
        let mut form = GLinearForm { coeffs };
        form.trim();
        form
    }

    /// `p * G_{n-j}`.
    pub fn term(j: usize, p: BivarPoly) -> Self {
        let mut coeffs = vec![BivarPoly::zero(); j + 1];
        coeffs[j] = p;
        GLinearForm::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(BivarPoly::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BivarPoly] {
        &self.coeffs
    }

    /// Coefficient of `G_{n-j}`.
    pub fn coeff(&self, j: usize) -> BivarPoly {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &GLinearForm) -> GLinearForm {
        let len = self.len().max(other.len());
        GLinearForm::new((0..len).map(|j| &self.coeff(j) + &other.coeff(j)).collect())
    }

    pub fn sub(&self, other: &GLinearForm) -> GLinearForm {
        let len = self.len().max(other.len());
        GLinearForm::new((0..len).map(|j| &self.coeff(j) - &other.coeff(j)).collect())
    }

    pub fn scale(&self, p: &BivarPoly) -> GLinearForm {
        GLinearForm::new(self.coeffs.iter().map(|c| c * p).collect())
    }

    /// The same form re-indexed from `n` to `n - by`.
    pub fn shift_down(&self, by: usize) -> GLinearForm {
        let mut coeffs = vec![BivarPoly::zero(); by];
        coeffs.extend(self.coeffs.iter().cloned());
        GLinearForm::new(coeffs)
    }

    /// Rewrites every `G_{n-j}` with `j >= 2` through `G_{m-2} = G_m - G_{m-1}`
    /// until only `G_n` and `G_{n-1}` remain.
    pub fn reduce(&self) -> GLinearForm {
        let mut coeffs = self.coeffs.clone();
        for j in (2..coeffs.len()).rev() {
            let c = std::mem::take(&mut coeffs[j]);
            coeffs[j - 2] = &coeffs[j - 2] + &c;
            coeffs[j - 1] = &coeffs[j - 1] - &c;
        }
        GLinearForm::new(coeffs)
    }

    /// Evaluates at concrete seeds and index `n`.
    pub fn eval(&self, alpha: &Rational, beta: &Rational, n: i64) -> Rational {
        let seq = FibSequence::new(alpha.clone(), beta.clone());
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, p)| p.eval(alpha, beta) * seq.term(n - j as i64))
            .sum()
    }

    /// Replaces `G_{n-j}` with the polynomial `G_{m-j}`, fixing `n = m`.
    pub fn at_index(&self, m: i64) -> BivarPoly {
        self.coeffs
            .iter()
            .enumerate()
            .fold(BivarPoly::zero(), |acc, (j, p)| &acc + &(p * &super::g_at(m - j as i64)))
    }
}

impl fmt::Display for GLinearForm {
    /// `(b^2 + b)*G[n] + (2*a*b + a)*G[n-1] + (a^2)*G[n-2]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (j, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            let idx = if j == 0 { "n".to_string() } else { format!("n-{j}") };
            write!(f, "({p})*G[{idx}]")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}
