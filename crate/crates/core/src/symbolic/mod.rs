//! Symbolic versions of the tower's first levels over the seed variables
//! `a` (alpha) and `b` (beta), and the polynomial system characterizing
//! seeds whose tower is Fibonacci in the level index.

mod form;
mod poly;
mod solve;

use thiserror::Error;

pub use form::GLinearForm;
pub use poly::{BivarPoly, Monomial, UniPoly};
pub use solve::{solve_system, SeedSolutionSet};

use crate::xk::factor_levels;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolicError {
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("only shifts <= 0 are supported (got {0})")]
    PositiveShift(i64),
    #[error("level k={0} is below the base level -1")]
    InvalidLevel(i64),
    #[error("system has infinitely many solutions")]
    InfiniteSolutions,
    #[error("unsupported system: {0}")]
    Unsupported(String),
}

/// Reference coefficients of `X^(1)_n + X^(0)_n` on `G_n, G_{n-1}, G_{n-2}`.
pub const EQ3_PRINTED: [&str; 3] = ["b + b^2", "a + 2*a*b", "a^2"];

/// Reference coefficients of `X^(2)_n` on `G_n, G_{n-1}, G_{n-2}`,
/// with like terms left uncombined.
pub const EQ4_PRINTED: [&str; 3] = ["b^3 + a^2*b", "a^3 + 3*a*b^2 - a^2*b", "b*a^2 + a^2*b - a^3"];

/// The three reference scalar conditions, each as `lhs - rhs`:
/// `1 + b = b^2 + a^2`, `1 + 2b = a^2 + 3b^2 - ab`, `2b - a = 1`.
pub const META_SYSTEM_PRINTED: [&str; 3] = [
    "1 + b - b^2 - a^2",
    "1 + 2*b - a^2 - 3*b^2 + a*b",
    "2*b - a - 1",
];

pub fn parse_printed(forms: &[&str]) -> Vec<BivarPoly> {
    forms
        .iter()
        .map(|s| s.parse().expect("built-in polynomial text parses"))
        .collect()
}

/// `G_index` as a polynomial in the seeds: `G_0 = a`, `G_1 = b`, extended
/// both ways by the recurrence.
pub fn g_at(index: i64) -> BivarPoly {
    let (mut cur, mut next) = (BivarPoly::alpha(), BivarPoly::beta());
    if index >= 0 {
        for _ in 0..index {
            let sum = &cur + &next;
            cur = std::mem::replace(&mut next, sum);
        }
    } else {
        for _ in 0..index.unsigned_abs() {
            let prev = &next - &cur;
            next = std::mem::replace(&mut cur, prev);
        }
    }
    cur
}

/// `X^(0)_{n+shift} = b G_{n+shift} + a G_{n+shift-1}` for `shift <= 0`.
pub fn x0_symbolic(shift: i64) -> Result<GLinearForm, SymbolicError> {
    if shift > 0 {
        return Err(SymbolicError::PositiveShift(shift));
    }
    let j = shift.unsigned_abs() as usize;
    Ok(GLinearForm::term(j, BivarPoly::beta()).add(&GLinearForm::term(j + 1, BivarPoly::alpha())))
}

/// `X^(k)_n` as a form in `G_n, G_{n-1}, ...`, built with the same level
/// pairing and `i = n` split as the numeric tower.
pub fn xk_form(k: i64) -> Result<GLinearForm, SymbolicError> {
    match k {
        ..=-2 => Err(SymbolicError::InvalidLevel(k)),
        -1 => Ok(GLinearForm::term(0, BivarPoly::one())),
        0 => x0_symbolic(0),
        _ => {
            let (l, r) = factor_levels(k).expect("k >= 1");
            let left = xk_form(l)?;
            let right = xk_form(r)?;
            Ok(right
                .scale(&left.at_index(1))
                .add(&right.shift_down(1).scale(&left.at_index(0))))
        }
    }
}

/// `X^(1)_n + X^(0)_n` with `X^(1)_n = b X^(0)_n + a X^(0)_{n-1}`.
pub fn expand_eq3() -> GLinearForm {
    let x0 = x0_symbolic(0).expect("shift 0");
    let x0_prev = x0_symbolic(-1).expect("shift -1");
    let x1 = x0.scale(&BivarPoly::beta()).add(&x0_prev.scale(&BivarPoly::alpha()));
    x1.add(&x0)
}

/// `X^(2)_n = X^(0)_1 X^(0)_n + X^(0)_0 X^(0)_{n-1}`, with `X^(0)_1` and
/// `X^(0)_0` collapsed to polynomials (the latter uses `G_{-1} = b - a`).
pub fn expand_eq4() -> GLinearForm {
    let x0 = x0_symbolic(0).expect("shift 0");
    let x0_prev = x0_symbolic(-1).expect("shift -1");
    let x0_at_1 = &(&BivarPoly::beta() * &g_at(1)) + &(&BivarPoly::alpha() * &g_at(0));
    let x0_at_0 = &(&BivarPoly::beta() * &g_at(0)) + &(&BivarPoly::alpha() * &g_at(-1));
    x0.scale(&x0_at_1).add(&x0_prev.scale(&x0_at_0))
}

/// Coefficient-wise differences `expand_eq4 - expand_eq3`, one per
/// `G_n, G_{n-1}, G_{n-2}`; all must vanish.
pub fn derive_meta_system() -> Vec<BivarPoly> {
    let diff = expand_eq4().sub(&expand_eq3());
    (0..3).map(|j| diff.coeff(j)).collect()
}

/// Rational seeds making every coefficient difference vanish.
pub fn solve_meta_system() -> Result<SeedSolutionSet, SymbolicError> {
    solve_system(&derive_meta_system())
}

/// Whether `form` equals a reference coefficient list after canonicalization.
pub fn matches_printed(form: &GLinearForm, printed: &[&str]) -> bool {
    let expected = parse_printed(printed);
    form.len() == expected.len() && expected.iter().enumerate().all(|(j, p)| &form.coeff(j) == p)
}
