//! Exact coefficients in the ring Q(i)[π, π⁻¹, n].
//!
//! A scalar is a finite sum of Gaussian rationals times `π^k · n^m`, with
//! `k` any integer and `m ≥ 0`. The symbol `n` stands for the complex
//! dimension and is produced by Kronecker traces `δ_jj`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;

/// A Gaussian rational `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gaussian {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gaussian {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gaussian { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Gaussian { re, im: BigRational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Gaussian { re: self.re.clone(), im: -self.im.clone() }
    }

    fn mul(&self, o: &Gaussian) -> Gaussian {
        Gaussian { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN))
}

/// Exact scalar: map from `(π-exponent, n-exponent)` to a nonzero Gaussian rational.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactScalar {
    terms: BTreeMap<(i32, u32), Gaussian>,
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar::default()
    }

    pub fn one() -> Self {
        ExactScalar::int(1)
    }

    pub fn int(v: i64) -> Self {
        ExactScalar::rational(v, 1)
    }

    pub fn rational(num: i64, den: i64) -> Self {
        ExactScalar::monomial(Gaussian::real(BigRational::new(num.into(), den.into())), 0, 0)
    }

    /// The imaginary unit √−1.
    pub fn i() -> Self {
        ExactScalar::monomial(Gaussian::new(BigRational::zero(), BigRational::one()), 0, 0)
    }

    pub fn pi_pow(k: i32) -> Self {
        ExactScalar::monomial(Gaussian::real(BigRational::one()), k, 0)
    }

    pub fn n_pow(m: u32) -> Self {
        ExactScalar::monomial(Gaussian::real(BigRational::one()), 0, m)
    }

    pub fn monomial(c: Gaussian, pi_exp: i32, n_exp: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((pi_exp, n_exp), c);
        }
        ExactScalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == ExactScalar::one()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, u32), &Gaussian)> {
        self.terms.iter()
    }

    pub fn conj(&self) -> Self {
        ExactScalar { terms: self.terms.iter().map(|(k, c)| (*k, c.conj())).collect() }
    }

    /// Multiplicative inverse, defined only for single-term scalars.
    pub fn inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&(k, m), c) = self.terms.iter().next().unwrap();
        if m != 0 {
            return None;
        }
        let norm = &c.re * &c.re + &c.im * &c.im;
        let inv = Gaussian::new(&c.re / &norm, -(&c.im / &norm));
        Some(ExactScalar::monomial(inv, -k, 0))
    }

    /// Evaluate at π = 3.14159…, n = `n`, √−1 = i.
    pub fn eval(&self, n: f64) -> Complex64 {
        self.terms.iter().map(|(&(k, m), c)| c.to_complex() * std::f64::consts::PI.powi(k) * n.powi(m as i32)).sum()
    }

    fn insert_add(&mut self, key: (i32, u32), c: Gaussian) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                let v = e.get_mut();
                v.re += c.re;
                v.im += c.im;
                if v.is_zero() {
                    e.remove();
                }
            }
        }
    }
}

impl From<i64> for ExactScalar {
    fn from(v: i64) -> Self {
        ExactScalar::int(v)
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(mut self, rhs: ExactScalar) -> ExactScalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        for (k, c) in &rhs.terms {
            self.insert_add(*k, c.clone());
        }
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            terms: self.terms.iter().map(|(k, c)| (*k, Gaussian::new(-c.re.clone(), -c.im.clone()))).collect(),
        }
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        self + &(-rhs)
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: ExactScalar) -> ExactScalar {
        &self - &rhs
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = ExactScalar::zero();
        for (&(k1, m1), c1) in &self.terms {
            for (&(k2, m2), c2) in &rhs.terms {
                out.insert_add((k1 + k2, m1 + m2), c1.mul(c2));
            }
        }
        out
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: ExactScalar) -> ExactScalar {
        &self * &rhs
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for ExactScalar {
    /// Renders as `(a+bi)·π^k·n^m` terms joined by ` + `; `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (&(k, m), c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            let sign = if c.im.is_negative() { '-' } else { '+' };
            write!(f, "({}{}{}i)·π^{}·n^{}", fmt_rat(&c.re), sign, fmt_rat(&c.im.abs()), k, m)?;
        }
        Ok(())
    }
}

fn parse_rat(s: &str) -> Result<BigRational, ParseError> {
    let bad = || ParseError::new(format!("bad rational `{s}`"), 1, 1);
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().map_err(|_| bad())?;
            let q: BigInt = q.parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn parse_term(t: &str) -> Result<ExactScalar, ParseError> {
    let bad = || ParseError::new(format!("bad scalar term `{t}`"), 1, 1);
    let (coef, rest) = t.split_once(")·π^").ok_or_else(bad)?;
    let coef = coef.strip_prefix('(').ok_or_else(bad)?;
    let coef = coef.strip_suffix('i').ok_or_else(bad)?;
    let split = coef[1..].find(['+', '-']).map(|p| p + 1).ok_or_else(bad)?;
    let re = parse_rat(&coef[..split])?;
    let im_str = &coef[split..];
    let im = parse_rat(im_str.strip_prefix('+').unwrap_or(im_str))?;
    let (k, m) = rest.split_once("·n^").ok_or_else(bad)?;
    let k: i32 = k.parse().map_err(|_| bad())?;
    let m: u32 = m.parse().map_err(|_| bad())?;
    Ok(ExactScalar::monomial(Gaussian::new(re, im), k, m))
}

impl FromStr for ExactScalar {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(ExactScalar::zero());
        }
        let mut out = ExactScalar::zero();
        for t in s.split(" + ") {
            out += &parse_term(t.trim())?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pi_exponents_cancel() {
        let a = &ExactScalar::rational(1, 2) * &ExactScalar::pi_pow(1);
        let b = &ExactScalar::int(2) * &ExactScalar::pi_pow(-1);
        assert_eq!(&a * &b, ExactScalar::one());
    }

    #[test]
    fn conjugation_negates_imaginary_part() {
        let a = &(&ExactScalar::i() * &ExactScalar::pi_pow(1)) * &ExactScalar::rational(1, 3);
        let expected = -&a;
        assert_eq!(a.conj(), expected);
    }

    #[test]
    fn additive_inverse_is_empty() {
        let a = &ExactScalar::int(2) + &(&ExactScalar::int(3) * &ExactScalar::i());
        let b = -&a;
        let s = &a + &b;
        assert!(s.is_zero());
        assert_eq!(s.terms().count(), 0);
    }

    #[test]
    fn render_round_trip() {
        let a = &(&ExactScalar::rational(-3, 7) + &ExactScalar::i()) * &ExactScalar::pi_pow(-2);
        let a = &a + &(&ExactScalar::n_pow(2) * &ExactScalar::rational(5, 2));
        let text = a.to_string();
        assert_eq!(text.parse::<ExactScalar>().unwrap(), a);
        assert_eq!(ExactScalar::zero().to_string(), "0");
    }

    #[test]
    fn inverse_of_monomial() {
        let a = &(&ExactScalar::int(4) * &ExactScalar::pi_pow(1)) * &ExactScalar::i();
        assert_eq!(&a * &a.inverse().unwrap(), ExactScalar::one());
        assert!((&ExactScalar::one() + &ExactScalar::pi_pow(1)).inverse().is_none());
    }

    fn small() -> impl Strategy<Value = ExactScalar> {
        prop::collection::vec((-4i64..5, 1i64..4, -3i64..4, -2i32..3, 0u32..3), 0..4).prop_map(|ts| {
            let mut out = ExactScalar::zero();
            for (p, q, im, k, m) in ts {
                let g = Gaussian::new(BigRational::new(p.into(), q.into()), BigRational::new(im.into(), q.into()));
                out += &ExactScalar::monomial(g, k, m);
            }
            out
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small(), b in small(), c in small()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn conj_is_ring_involution(a in small(), b in small()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        }

        #[test]
        fn eval_is_homomorphism(a in small(), b in small(), n in 1u32..5) {
            let n = n as f64;
            let lhs = (&a * &b).eval(n);
            let rhs = a.eval(n) * b.eval(n);
            let scale = 1.0 + lhs.norm().max(rhs.norm());
            prop_assert!((lhs - rhs).norm() <= 1e-14 * scale * 10.0);
            let s = (&a + &b).eval(n) - (a.eval(n) + b.eval(n));
            prop_assert!(s.norm() <= 1e-13 * scale);
        }

        #[test]
        fn text_round_trip(a in small()) {
            prop_assert_eq!(a.to_string().parse::<ExactScalar>().unwrap(), a);
        }
    }
}
