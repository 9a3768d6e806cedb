//! Exact rational solutions of small polynomial systems in `(a, b)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::{BivarPoly, Monomial, UniPoly};
use super::SymbolicError;
use crate::rational::Rational;

/// Set of seed pairs `(alpha, beta)`.
pub type SeedSolutionSet = BTreeSet<(Rational, Rational)>;

/// Common rational roots of univariate polynomials. Errors if all of them vanish.
fn common_roots(polys: &[UniPoly]) -> Result<Vec<Rational>, SymbolicError> {
    let nonzero: Vec<&UniPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
    let pivot = nonzero
        .iter()
        .min_by_key(|p| p.degree())
        .ok_or(SymbolicError::InfiniteSolutions)?;
    Ok(pivot
        .rational_roots()
        .into_iter()
        .filter(|r| nonzero.iter().all(|p| p.eval(r).is_zero()))
        .collect())
}

/// An equation `a^i b^j * (c1 * a + c0(b))` with `c1` a non-zero integer.
struct LinearPivot {
    content: Monomial,
    c1: BigInt,
    c0: UniPoly,
}

fn find_pivot(eqs: &[BivarPoly]) -> Option<LinearPivot> {
    eqs.iter().filter(|e| !e.is_zero()).find_map(|e| {
        let content = e.monomial_content();
        let cofactor = e.div_monomial(content)?;
        let parts = cofactor.as_poly_in_alpha();
        if parts.len() != 2 {
            return None;
        }
        let c1 = match parts[1].coeffs() {
            [c] if c.is_integer() => c.to_integer()?,
            _ => return None,
        };
        (!c1.is_zero()).then(|| LinearPivot {
            content,
            c1,
            c0: parts[0].clone(),
        })
    })
}

/// Solves `eqs = 0` over the rationals. Needs one equation that, after
/// removing its monomial factor, is linear in `a` with a constant leading
/// coefficient; the system is split on that factor (`a = 0`, `b = 0`) and on
/// the linear cofactor, and each branch reduces to univariate root finding.
pub fn solve_system(eqs: &[BivarPoly]) -> Result<SeedSolutionSet, SymbolicError> {
    let pivot = find_pivot(eqs).ok_or(SymbolicError::Unsupported(
        "no equation is linear in a after removing its monomial factor".into(),
    ))?;
    let mut solutions = SeedSolutionSet::new();

    if pivot.content.da > 0 {
        let zero_alpha = UniPoly::zero();
        let polys: Vec<UniPoly> = eqs.iter().map(|e| e.substitute_alpha(&zero_alpha)).collect();
        for b in common_roots(&polys)? {
            solutions.insert((Rational::zero(), b));
        }
    }
    if pivot.content.db > 0 {
        let polys: Vec<UniPoly> = eqs.iter().map(|e| e.substitute_beta(&Rational::zero())).collect();
        for a in common_roots(&polys)? {
            solutions.insert((a, Rational::zero()));
        }
    }
    // c1 * a + c0(b) = 0  =>  a = -c0(b) / c1
    let inv = Rational::new(BigInt::from(-1), pivot.c1.clone());
    let alpha_of_b = &pivot.c0 * &UniPoly::monomial(inv, 0);
    let polys: Vec<UniPoly> = eqs.iter().map(|e| e.substitute_alpha(&alpha_of_b)).collect();
    for b in common_roots(&polys)? {
        solutions.insert((alpha_of_b.eval(&b), b));
    }

    for (a, b) in &solutions {
        debug_assert!(eqs.iter().all(|e| e.eval(a, b).is_zero()));
    }
    Ok(solutions)
}
