//! Generalized Fibonacci sequences over exact rationals and checkers for the
//! product identities they satisfy.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::rational::Rational;
use crate::report::{Counterexample, IdentityReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FibError {
    #[error("split index i={i} outside 1..=n (n={n})")]
    Range { n: i64, i: i64 },
    #[error("n_max must be at least 1 (got {0})")]
    EmptySweep(i64),
    #[error("{0}")]
    Usage(String),
}

/// Classical Fibonacci number `F_n` as an integer, for any `n` (negative
/// indices via `F_{n-2} = F_n - F_{n-1}`, so `F_{-n} = (-1)^{n+1} F_n`).
pub fn fib_int(n: i64) -> BigInt {
    let (mut a, mut b) = (BigInt::from(0), BigInt::from(1));
    if n >= 0 {
        for _ in 0..n {
            let next = &a + &b;
            a = std::mem::replace(&mut b, next);
        }
    } else {
        for _ in 0..n.unsigned_abs() {
            let prev = &b - &a;
            b = std::mem::replace(&mut a, prev);
        }
    }
    a
}

/// Classical Fibonacci number `F_n` (seeds 0, 1).
pub fn fib(n: i64) -> Rational {
    Rational::from_integer(fib_int(n))
}

/// A two-seed sequence `G_0 = alpha`, `G_1 = beta`, `G_n = G_{n-1} + G_{n-2}`,
/// extended to negative indices by running the recurrence backwards.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FibSequence {
    pub alpha: Rational,
    pub beta: Rational,
}

impl FibSequence {
    pub fn new(alpha: impl Into<Rational>, beta: impl Into<Rational>) -> Self {
        FibSequence {
            alpha: alpha.into(),
            beta: beta.into(),
        }
    }

    /// The classical sequence with seeds (0, 1).
    pub fn classical() -> Self {
        FibSequence::new(0, 1)
    }

    pub fn term(&self, n: i64) -> Rational {
        let (mut a, mut b) = (self.alpha.clone(), self.beta.clone());
        if n >= 0 {
            for _ in 0..n {
                let next = &a + &b;
                a = std::mem::replace(&mut b, next);
            }
        } else {
            for _ in 0..n.unsigned_abs() {
                let prev = &b - &a;
                b = std::mem::replace(&mut a, prev);
            }
        }
        a
    }

    /// Terms `G_from ..= G_to` in one pass.
    pub fn terms(&self, from: i64, to: i64) -> Vec<Rational> {
        if to < from {
            return Vec::new();
        }
        let mut out = Vec::with_capacity((to - from + 1) as usize);
        let mut a = self.term(from);
        let mut b = self.term(from + 1);
        for _ in from..=to {
            out.push(a.clone());
            let next = &a + &b;
            a = std::mem::replace(&mut b, next);
        }
        out
    }

    /// `a1 * self + a2 * other`, which is again a sequence of the same kind.
    pub fn combine(&self, a1: &Rational, other: &FibSequence, a2: &Rational) -> FibSequence {
        FibSequence {
            alpha: a1 * &self.alpha + a2 * &other.alpha,
            beta: a1 * &self.beta + a2 * &other.beta,
        }
    }
}

impl fmt::Display for FibSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(alpha={}, beta={})", self.alpha, self.beta)
    }
}

fn check_split(n: i64, i: i64) -> Result<(), FibError> {
    if 1 <= i && i <= n {
        Ok(())
    } else {
        Err(FibError::Range { n, i })
    }
}

fn seeds_param(report: IdentityReport, prefix: &str, seq: &FibSequence) -> IdentityReport {
    report
        .param(&format!("{prefix}alpha"), seq.alpha.to_string())
        .param(&format!("{prefix}beta"), seq.beta.to_string())
}

fn single_case(name: &str, n: i64, i: i64, lhs: Rational, rhs: Rational) -> IdentityReport {
    let mut report = IdentityReport::new(name).param("n", n).param("i", i);
    report.record(lhs == rhs, || Counterexample::new(&lhs, &rhs).at("n", n).at("i", i));
    report
}

/// `G_n = G_{n-i+1} F_i + G_{n-i} F_{i-1}`.
pub fn check_ruggles(seq: &FibSequence, n: i64, i: i64) -> Result<IdentityReport, FibError> {
    check_split(n, i)?;
    let lhs = seq.term(n);
    let rhs = seq.term(n - i + 1) * fib(i) + seq.term(n - i) * fib(i - 1);
    Ok(seeds_param(single_case("ruggles", n, i, lhs, rhs), "", seq))
}

/// `F_n = F_{n-i+1} F_i + F_{n-i} F_{i-1}`.
pub fn check_corollary1(n: i64, i: i64) -> Result<IdentityReport, FibError> {
    check_split(n, i)?;
    let lhs = fib(n);
    let rhs = fib(n - i + 1) * fib(i) + fib(n - i) * fib(i - 1);
    Ok(single_case("corollary1", n, i, lhs, rhs))
}

/// `beta G_n + alpha G_{n-1} = G_{n-i+1} G_i + G_{n-i} G_{i-1}`.
pub fn check_gg(seq: &FibSequence, n: i64, i: i64) -> Result<IdentityReport, FibError> {
    check_split(n, i)?;
    let lhs = &seq.beta * seq.term(n) + &seq.alpha * seq.term(n - 1);
    let rhs = seq.term(n - i + 1) * seq.term(i) + seq.term(n - i) * seq.term(i - 1);
    Ok(seeds_param(single_case("gg", n, i, lhs, rhs), "", seq))
}

/// Mixed-sequence form with `G` from `seq_a` and `G'` (seeds `alpha'`, `beta'`)
/// from `seq_b`: `beta' G_n + alpha' G_{n-1} = G_{n-i+1} G'_i + G_{n-i} G'_{i-1}`.
pub fn check_two_sequence(
    seq_a: &FibSequence,
    seq_b: &FibSequence,
    n: i64,
    i: i64,
) -> Result<IdentityReport, FibError> {
    check_split(n, i)?;
    let lhs = &seq_b.beta * seq_a.term(n) + &seq_b.alpha * seq_a.term(n - 1);
    let rhs = seq_a.term(n - i + 1) * seq_b.term(i) + seq_a.term(n - i) * seq_b.term(i - 1);
    let report = single_case("two-seq", n, i, lhs, rhs);
    Ok(seeds_param(seeds_param(report, "", seq_a), "b_", seq_b))
}

/// Which product identity a sweep runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    Ruggles,
    Corollary1,
    Gg,
    TwoSequence,
}

impl Identity {
    pub fn name(self) -> &'static str {
        match self {
            Identity::Ruggles => "ruggles",
            Identity::Corollary1 => "corollary1",
            Identity::Gg => "gg",
            Identity::TwoSequence => "two-seq",
        }
    }
}

impl FromStr for Identity {
    type Err = FibError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ruggles" => Ok(Identity::Ruggles),
            "corollary1" => Ok(Identity::Corollary1),
            "gg" => Ok(Identity::Gg),
            "two-seq" | "two-sequence" => Ok(Identity::TwoSequence),
            other => Err(FibError::Usage(format!(
                "unknown identity {other:?} (expected ruggles, corollary1, gg or two-seq)"
            ))),
        }
    }
}

/// Checks one identity over every `1 <= i <= n <= n_max`, stopping at the
/// first counterexample. `second` is required for the two-sequence identity
/// and ignored otherwise; the classical identity ignores `seq` too.
pub fn sweep_identity(
    which: Identity,
    seq: &FibSequence,
    second: Option<&FibSequence>,
    n_max: i64,
) -> Result<IdentityReport, FibError> {
    if n_max < 1 {
        return Err(FibError::EmptySweep(n_max));
    }
    let second = match (which, second) {
        (Identity::TwoSequence, None) => {
            return Err(FibError::Usage("two-seq needs a second seed pair".into()))
        }
        (_, s) => s,
    };
    let mut report = IdentityReport::new(which.name()).param("n_max", n_max);
    report = match which {
        Identity::Corollary1 => report,
        Identity::TwoSequence => seeds_param(
            seeds_param(report, "", seq),
            "b_",
            second.expect("checked above"),
        ),
        _ => seeds_param(report, "", seq),
    };
    'outer: for n in 1..=n_max {
        for i in 1..=n {
            let case = match which {
                Identity::Ruggles => check_ruggles(seq, n, i)?,
                Identity::Corollary1 => check_corollary1(n, i)?,
                Identity::Gg => check_gg(seq, n, i)?,
                Identity::TwoSequence => check_two_sequence(seq, second.unwrap(), n, i)?,
            };
            report.absorb(case);
            if !report.pass() {
                break 'outer;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn classical_values() {
        assert_eq!(fib(0), Rational::from(0));
        assert_eq!(fib(1), Rational::from(1));
        assert_eq!(fib(10), Rational::from(55));
        assert_eq!(fib(-1), Rational::from(1));
        assert_eq!(fib(-2), Rational::from(-1));
        assert_eq!(fib_int(-7), BigInt::from(13));
        assert_eq!(fib_int(-8), BigInt::from(-21));
    }

    #[test]
    fn generalized_terms() {
        assert_eq!(FibSequence::classical().term(7), Rational::from(13));
        assert_eq!(FibSequence::new(2, 1).term(5), Rational::from(11));
        assert_eq!(FibSequence::new(-1, 0).term(4), Rational::from(-2));
        let s = FibSequence::new(2, 1);
        assert_eq!(s.term(-1), Rational::from(-1));
        assert_eq!(s.terms(-2, 3), (-2..=3).map(|n| s.term(n)).collect::<Vec<_>>());
        assert!(s.terms(3, 2).is_empty());
    }

    #[test]
    fn ruggles_examples() {
        let s = FibSequence::new(2, 1);
        let r = check_ruggles(&s, 5, 2).unwrap();
        assert!(r.pass());
        assert!(check_ruggles(&FibSequence::classical(), 9, 4).unwrap().pass());
        for seeds in [(2, 1), (0, 1), (-3, 5), (7, 7)] {
            let s = FibSequence::new(seeds.0, seeds.1);
            for n in 1..15 {
                assert!(check_ruggles(&s, n, n).unwrap().pass());
            }
        }
        assert_eq!(check_ruggles(&s, 5, 0), Err(FibError::Range { n: 5, i: 0 }));
        assert_eq!(check_ruggles(&s, 5, 6), Err(FibError::Range { n: 5, i: 6 }));
    }

    #[test]
    fn corollary1_examples() {
        assert!(check_corollary1(1, 1).unwrap().pass());
        assert!(check_corollary1(10, 5).unwrap().pass());
        assert!(check_corollary1(3, 4).is_err());
        let sweep = sweep_identity(Identity::Corollary1, &FibSequence::classical(), None, 30).unwrap();
        assert!(sweep.pass());
        assert_eq!(sweep.cases, 465);
    }

    #[test]
    fn gg_examples() {
        assert!(check_gg(&FibSequence::new(2, 1), 5, 3).unwrap().pass());
        assert!(check_gg(&FibSequence::new(1, 1), 6, 2).unwrap().pass());
        for n in 1..12 {
            for i in 1..=n {
                let classical = check_gg(&FibSequence::classical(), n, i).unwrap();
                assert!(classical.pass());
            }
        }
    }

    #[test]
    fn two_sequence_examples() {
        let a = FibSequence::new(2, 1);
        let b = FibSequence::new(1, 3);
        assert!(check_two_sequence(&a, &b, 6, 3).unwrap().pass());
        for n in 1..8 {
            for i in 1..=n {
                assert_eq!(
                    check_two_sequence(&a, &a, n, i).unwrap().pass(),
                    check_gg(&a, n, i).unwrap().pass()
                );
            }
        }
        for alpha in -2..=2 {
            for beta in -2..=2 {
                let b = FibSequence::new(alpha, beta);
                let r = sweep_identity(Identity::TwoSequence, &FibSequence::classical(), Some(&b), 20).unwrap();
                assert!(r.pass(), "{r}");
            }
        }
    }

    #[test]
    fn sweep_errors_and_trivial_cases() {
        let zero = FibSequence::new(0, 0);
        assert!(sweep_identity(Identity::Gg, &zero, None, 10).unwrap().pass());
        assert!(matches!("nope".parse::<Identity>(), Err(FibError::Usage(_))));
        assert!(matches!(
            sweep_identity(Identity::TwoSequence, &zero, None, 3),
            Err(FibError::Usage(_))
        ));
        assert_eq!(
            sweep_identity(Identity::Gg, &zero, None, 0),
            Err(FibError::EmptySweep(0))
        );
        let r = sweep_identity(Identity::Ruggles, &FibSequence::new(q("3/2"), q("-1/3")), None, 25).unwrap();
        assert!(r.pass());
    }

    #[test]
    fn a_wrong_identity_is_caught() {
        // the single-sequence form with mismatched seeds on the left fails
        let a = FibSequence::new(2, 1);
        let b = FibSequence::new(1, 3);
        let lhs = &a.beta * a.term(6) + &a.alpha * a.term(5);
        let rhs = a.term(4) * b.term(3) + a.term(3) * b.term(2);
        assert_ne!(lhs, rhs);
    }
}
