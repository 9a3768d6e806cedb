//! Integer polynomials in the two seed variables `a` (alpha) and `b` (beta).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::SymbolicError;
use crate::rational::Rational;

/// Exponents of `a^da * b^db`. Ordered graded-lexicographically with `a`
/// ranking above `b`: total degree first, then the `a` exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub da: u32,
    pub db: u32,
}

impl Monomial {
    pub fn new(da: u32, db: u32) -> Self {
        Monomial { da, db }
    }

    pub fn degree(self) -> u32 {
        self.da + self.db
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.da.cmp(&other.da))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with integer coefficients in `a` and `b`. Zero coefficients
/// are never stored, so equal polynomials have equal representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BivarPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly::default()
    }

    pub fn one() -> Self {
        BivarPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        BivarPoly::monomial(c, 0, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, da: u32, db: u32) -> Self {
        let mut p = BivarPoly::zero();
        p.add_term(Monomial::new(da, db), c.into());
        p
    }

    /// The variable `a` (alpha).
    pub fn alpha() -> Self {
        BivarPoly::monomial(1, 1, 0)
    }

    /// The variable `b` (beta).
    pub fn beta() -> Self {
        BivarPoly::monomial(1, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Coefficient of `a^da b^db` (zero when absent).
    pub fn coeff(&self, da: u32, db: u32) -> BigInt {
        self.terms
            .get(&Monomial::new(da, db))
            .cloned()
            .unwrap_or_default()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &BigInt)> {
        self.terms.iter().rev().map(|(m, c)| (*m, c))
    }

    pub fn degree_in_alpha(&self) -> u32 {
        self.terms.keys().map(|m| m.da).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &BigInt) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    pub fn pow(&self, exp: u32) -> BivarPoly {
        (0..exp).fold(BivarPoly::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, alpha: &Rational, beta: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(m, c)| Rational::from_integer(c.clone()) * alpha.pow(m.da) * beta.pow(m.db))
            .sum()
    }

    /// Largest monomial `a^i b^j` dividing every term (`(0, 0)` for zero).
    pub fn monomial_content(&self) -> Monomial {
        let da = self.terms.keys().map(|m| m.da).min().unwrap_or(0);
        let db = self.terms.keys().map(|m| m.db).min().unwrap_or(0);
        Monomial::new(da, db)
    }

    /// Exact division by a monomial that divides every term.
    pub fn div_monomial(&self, m: Monomial) -> Option<BivarPoly> {
        let mut out = BivarPoly::zero();
        for (t, c) in &self.terms {
            if t.da < m.da || t.db < m.db {
                return None;
            }
            out.add_term(Monomial::new(t.da - m.da, t.db - m.db), c.clone());
        }
        Some(out)
    }

    /// Collects the terms as a polynomial in `a` whose coefficients are
    /// univariate polynomials in `b`.
    pub(crate) fn as_poly_in_alpha(&self) -> Vec<UniPoly> {
        let mut out = vec![UniPoly::zero(); self.degree_in_alpha() as usize + 1];
        for (m, c) in &self.terms {
            let slot = &mut out[m.da as usize];
            *slot = &*slot + &UniPoly::monomial(Rational::from_integer(c.clone()), m.db as usize);
        }
        out
    }

    /// Substitutes `a := alpha_of_b`, giving a univariate polynomial in `b`.
    pub fn substitute_alpha(&self, alpha_of_b: &UniPoly) -> UniPoly {
        let mut out = UniPoly::zero();
        for (m, c) in &self.terms {
            let term = UniPoly::monomial(Rational::from_integer(c.clone()), m.db as usize);
            out = &out + &(&term * &alpha_of_b.pow(m.da));
        }
        out
    }

    /// Substitutes `b := beta`, giving a univariate polynomial in `a`.
    pub fn substitute_beta(&self, beta: &Rational) -> UniPoly {
        let mut out = UniPoly::zero();
        for (m, c) in &self.terms {
            let coeff = Rational::from_integer(c.clone()) * beta.pow(m.db);
            out = &out + &UniPoly::monomial(coeff, m.da as usize);
        }
        out
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, var: char, exp: u32) -> fmt::Result {
    match exp {
        1 => write!(f, "{var}"),
        e => write!(f, "{var}^{e}"),
    }
}

impl fmt::Display for BivarPoly {
    /// Canonical text, e.g. `a^2*b + b^3` or `-a^3 + 2*a^2*b`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let mut need_star = false;
            if m.degree() == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
                need_star = true;
            }
            for (var, exp) in [('a', m.da), ('b', m.db)] {
                if exp == 0 {
                    continue;
                }
                if need_star {
                    write!(f, "*")?;
                }
                write_power(f, var, exp)?;
                need_star = true;
            }
        }
        Ok(())
    }
}

impl FromStr for BivarPoly {
    type Err = SymbolicError;

    /// Parses sums of products such as `b*a^2 + a^2*b - a^3` or `1 + 2*b`.
    /// Like terms are combined. Only `a`, `b`, integers, `*`, `^`, `+`, `-`
    /// and whitespace are accepted.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| SymbolicError::Parse(format!("{why} in {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty polynomial"));
        }
        let mut out = BivarPoly::zero();
        let mut rest = compact.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ if first => (1, rest),
                _ => return Err(bad("missing operator")),
            };
            first = false;
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            if term.is_empty() {
                return Err(bad("empty term"));
            }
            let mut coeff = BigInt::from(sign);
            let mut mono = Monomial::new(0, 0);
            for factor in term.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => {
                        let e: u32 = e.parse().map_err(|_| bad("bad exponent"))?;
                        (b, e)
                    }
                    None => (factor, 1),
                };
                match base {
                    "a" => mono.da += exp,
                    "b" => mono.db += exp,
                    digits if !digits.is_empty() && digits.bytes().all(|c| c.is_ascii_digit()) => {
                        let v: BigInt = digits.parse().map_err(|_| bad("bad integer"))?;
                        coeff *= num_traits::pow(v, exp as usize);
                    }
                    _ => return Err(bad("unknown factor")),
                }
            }
            out.add_term(mono, coeff);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    da: u32,
    db: u32,
    c: String,
}

impl Serialize for BivarPoly {
    /// `[{"da": .., "db": .., "c": "int"}, ...]` in descending monomial order.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms()
            .map(|(m, c)| TermJson {
                da: m.da,
                db: m.db,
                c: c.to_string(),
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BivarPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<TermJson>::deserialize(deserializer)?;
        let mut out = BivarPoly::zero();
        for t in terms {
            let c: BigInt = t.c.parse().map_err(serde::de::Error::custom)?;
            out.add_term(Monomial::new(t.da, t.db), c);
        }
        Ok(out)
    }
}

impl Add for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(Monomial::new(m1.da + m2.da, m1.db + m2.db), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        self.scale(&BigInt::from(-1))
    }
}

impl Neg for BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        -&self
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for BivarPoly {
            type Output = BivarPoly;
            fn $method(self, rhs: BivarPoly) -> BivarPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

/// Dense univariate polynomial with rational coefficients; index = degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly::default()
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        UniPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn pow(&self, exp: u32) -> UniPoly {
        (0..exp).fold(UniPoly::monomial(Rational::one(), 0), |acc, _| &acc * self)
    }

    /// All distinct rational roots, ascending. Panics on the zero polynomial.
    pub fn rational_roots(&self) -> Vec<Rational> {
        assert!(!self.is_zero(), "the zero polynomial has every root");
        // clear denominators
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer().expect("denominators cleared"))
            .collect();
        let zeros = ints.iter().take_while(|c| c.is_zero()).count();
        let reduced = &ints[zeros..];
        let mut roots = Vec::new();
        if zeros > 0 {
            roots.push(Rational::zero());
        }
        if reduced.len() > 1 {
            let lead = reduced.last().expect("non-empty");
            let constant = &reduced[0];
            for p in divisors(constant) {
                for q in divisors(lead) {
                    for sign in [1, -1] {
                        let cand = Rational::new(BigInt::from(sign) * &p, q.clone());
                        if self.eval(&cand).is_zero() && !roots.contains(&cand) {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots
    }
}

/// Positive divisors of a non-zero integer, by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let other = &n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Rational::zero();
        UniPoly::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        UniPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BivarPoly {
        s.parse().unwrap()
    }

    #[test]
    fn ring_examples() {
        let a = BivarPoly::alpha();
        let b = BivarPoly::beta();
        assert_eq!((&a + &b).to_string(), "a + b");
        assert_eq!(((&a + &b) * (&a - &b)).to_string(), "a^2 - b^2");
        let r = p("b + b^2").eval(&Rational::one(), &Rational::one());
        assert_eq!(r, Rational::from(2));
    }

    #[test]
    fn canonical_text() {
        assert_eq!(p("b^3 + a^2*b").to_string(), "a^2*b + b^3");
        assert_eq!(p("b*a^2 + a^2*b - a^3").to_string(), "-a^3 + 2*a^2*b");
        assert_eq!(p("1 + b - b^2 - a^2").to_string(), "-a^2 - b^2 + b + 1");
        assert_eq!(p("a - a").to_string(), "0");
        assert_eq!(p("2^3*a").to_string(), "8*a");
        assert_eq!(p(" 3 * a * b^2 ").coeff(1, 2), BigInt::from(3));
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "a+", "c", "2**a", "a^x", "a b", "+-a"] {
            assert!(bad.parse::<BivarPoly>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn json_form() {
        let poly = p("b^3 + a^2*b");
        let json = serde_json::to_string(&poly).unwrap();
        assert_eq!(json, r#"[{"da":2,"db":1,"c":"1"},{"da":0,"db":3,"c":"1"}]"#);
        let back: BivarPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, poly);
    }

    #[test]
    fn monomial_content_and_division() {
        let d2 = p("2*a^2*b - a^3 - a^2");
        assert_eq!(d2.monomial_content(), Monomial::new(2, 0));
        assert_eq!(d2.div_monomial(Monomial::new(2, 0)).unwrap(), p("2*b - a - 1"));
        assert!(p("a + b").div_monomial(Monomial::new(1, 0)).is_none());
    }

    #[test]
    fn substitution() {
        // a := 2b - 1 in b^2 + a^2 - 1 - b gives 5b^2 - 5b
        let e = p("b^2 + a^2 - 1 - b");
        let lin = UniPoly::new(vec![Rational::from(-1), Rational::from(2)]);
        let u = e.substitute_alpha(&lin);
        assert_eq!(u, UniPoly::new(vec![Rational::zero(), Rational::from(-5), Rational::from(5)]));
        assert_eq!(u.rational_roots(), vec![Rational::zero(), Rational::one()]);
        let v = e.substitute_beta(&Rational::from(0));
        assert_eq!(v.rational_roots(), vec![Rational::from(-1), Rational::from(1)]);
    }

    #[test]
    fn rational_roots_with_fractions() {
        // (2x - 1)(3x + 2)(x - 4) / 7
        let x = |c: i64, d: i64| UniPoly::new(vec![Rational::from(c), Rational::from(d)]);
        let poly = &(&x(-1, 2) * &x(2, 3)) * &x(-4, 1);
        let poly = &poly * &UniPoly::monomial(Rational::new(1, 7), 0);
        assert_eq!(
            poly.rational_roots(),
            vec![Rational::new(-2, 3), Rational::new(1, 2), Rational::from(4)]
        );
        // x^2 - x - 1 has no rational roots
        assert!(UniPoly::new(vec![Rational::from(-1), Rational::from(-1), Rational::from(1)])
            .rational_roots()
            .is_empty());
    }
}
