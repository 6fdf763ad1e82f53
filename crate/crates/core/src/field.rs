//! Scalar fields: prime fields with word-sized arithmetic and the rationals
//! with big-integer arithmetic.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{input, Result};

#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Image of num/den; fails when den is not invertible.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem>;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// "F5" or "Q".
    fn label(&self) -> String;
    /// Exact "num/den" rendering.
    fn render(&self, a: &Self::Elem) -> String;
    /// Distinct roots lying in the field.
    fn roots(&self, poly: &[Self::Elem]) -> Vec<Self::Elem>;
    /// A small random element, used for splitting idempotents.
    fn random<R: Rng>(&self, rng: &mut R) -> Self::Elem;

    /// Representative in 0..p for prime fields.
    fn residue(&self, _a: &Self::Elem) -> Option<u64> {
        None
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    /// a += c * b
    fn axpy(&self, a: &mut Self::Elem, c: &Self::Elem, b: &Self::Elem) {
        *a = self.add(a, &self.mul(c, b));
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    fn parse(&self, s: &str) -> Result<Self::Elem> {
        let (n, d) = parse_ratio(s)?;
        self.from_ratio(&n, &d)
    }
}

pub fn parse_ratio(s: &str) -> Result<(BigInt, BigInt)> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| crate::Error::Input(format!("bad scalar {s:?}")))?;
    let d: BigInt = d.parse().map_err(|_| crate::Error::Input(format!("bad scalar {s:?}")))?;
    if d.is_zero() {
        return input(format!("zero denominator in {s:?}"));
    }
    Ok((n, d))
}

/// The prime field F_p, p < 2^31.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return input(format!("{p} is not a supported prime"));
        }
        Ok(Fp { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }

    /// Representative in (-p/2, p/2].
    pub fn signed(&self, a: u64) -> i64 {
        let a = a as i64;
        let p = self.p as i64;
        if a > p / 2 {
            a - p
        } else {
            a
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for Fp {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(!(*a).is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(*a, self.p - 2)
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<u64> {
        let p = BigInt::from(self.p);
        let d = den.mod_floor(&p).to_u64().unwrap();
        if d == 0 {
            return input(format!("denominator {den} vanishes in F_{}", self.p));
        }
        let n = num.mod_floor(&p).to_u64().unwrap();
        Ok(self.mul(&n, &self.inv(&d)))
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn label(&self) -> String {
        format!("F{}", self.p)
    }
    fn render(&self, a: &u64) -> String {
        format!("{a}/1")
    }
    fn roots(&self, poly: &[u64]) -> Vec<u64> {
        (0..self.p)
            .filter(|&x| {
                let mut acc = 0;
                for c in poly.iter().rev() {
                    acc = self.add(&self.mul(&acc, &x), c);
                }
                acc == 0
            })
            .collect()
    }
    fn random<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn residue(&self, a: &u64) -> Option<u64> {
        Some(*a)
    }
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in Q");
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<BigRational> {
        Ok(BigRational::new(num.clone(), den.clone()))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn label(&self) -> String {
        "Q".into()
    }
    fn render(&self, a: &BigRational) -> String {
        format!("{}/{}", a.numer(), a.denom())
    }
    fn roots(&self, poly: &[BigRational]) -> Vec<BigRational> {
        rational_roots(poly)
    }
    fn random<R: Rng>(&self, rng: &mut R) -> BigRational {
        BigRational::from_integer(rng.gen_range(-3i64..=3).into())
    }
}

/// Rational roots by the rational root theorem. Gives up (returns the roots
/// found so far, possibly none) when the extreme coefficients are too large
/// to factor by trial division.
fn rational_roots(poly: &[BigRational]) -> Vec<BigRational> {
    let mut coeffs: Vec<BigRational> = poly.to_vec();
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    if coeffs.len() <= 1 {
        return vec![];
    }
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut roots = Vec::new();
    let mut lo = 0;
    while ints[lo].is_zero() {
        lo += 1;
    }
    if lo > 0 {
        roots.push(BigRational::zero());
    }
    let a0 = ints[lo].abs();
    let an = ints.last().unwrap().abs();
    let (Some(a0), Some(an)) = (a0.to_u64(), an.to_u64()) else {
        return roots;
    };
    if a0 > 1 << 40 || an > 1 << 40 {
        return roots;
    }
    let eval = |x: &BigRational| {
        let mut acc = BigRational::zero();
        for c in coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc.is_zero()
    };
    let mut found = std::collections::BTreeSet::new();
    for d in divisors(a0) {
        for e in divisors(an) {
            for sign in [1i64, -1] {
                let x = BigRational::new(BigInt::from(d) * sign, BigInt::from(e));
                if !found.contains(&x) && eval(&x) {
                    found.insert(x);
                }
            }
        }
    }
    roots.extend(found);
    roots
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

/// Runtime choice of scalar field, as named in exchange files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Prime(u64),
    Rationals,
    /// p-local integers, used by lattice algebras.
    PLocal(u64),
}

impl FieldSpec {
    pub fn parse(s: &str) -> Result<FieldSpec> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(rest) = s.strip_prefix("Zloc(").and_then(|r| r.strip_suffix(')')) {
            let p: u64 = rest
                .parse()
                .map_err(|_| crate::Error::Input(format!("bad field {s:?}")))?;
            Fp::new(p)?;
            return Ok(FieldSpec::PLocal(p));
        }
        if let Some(rest) = s.strip_prefix('F') {
            let p: u64 = rest
                .parse()
                .map_err(|_| crate::Error::Input(format!("bad field {s:?}")))?;
            Fp::new(p)?;
            return Ok(FieldSpec::Prime(p));
        }
        input(format!("unknown field {s:?}"))
    }

    pub fn label(&self) -> String {
        match self {
            FieldSpec::Prime(p) => format!("F{p}"),
            FieldSpec::Rationals => "Q".into(),
            FieldSpec::PLocal(p) => format!("Zloc({p})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_arithmetic() {
        let f = Fp::new(7).unwrap();
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), 5);
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.parse("3/2").unwrap(), 5);
        assert!(f.parse("1/7").is_err());
        assert_eq!(f.roots(&[6, 0, 1]), vec![1, 6]);
    }

    #[test]
    fn rational_roots_found() {
        let q = Rationals;
        // 2x^2 - 3x + 1 = (2x-1)(x-1)
        let poly: Vec<_> = [1, -3, 2].iter().map(|&c| q.from_i64(c)).collect();
        let r = q.roots(&poly);
        assert_eq!(r.len(), 2);
        assert!(r.contains(&BigRational::new(1.into(), 2.into())));
        assert!(q.roots(&[q.from_i64(-2), q.zero(), q.one()]).is_empty());
    }

    #[test]
    fn field_labels() {
        assert_eq!(FieldSpec::parse("F5").unwrap(), FieldSpec::Prime(5));
        assert_eq!(FieldSpec::parse("Zloc(3)").unwrap(), FieldSpec::PLocal(3));
        assert!(FieldSpec::parse("F6").is_err());
    }
}
