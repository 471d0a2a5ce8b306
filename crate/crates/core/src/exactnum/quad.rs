//! Exact elements `a + b·√p` of a real quadratic field (or of Q when `p = 1`).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::NumError;

/// Exact rational number used throughout the crate.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// The field a value lives in: Q, or Q[√p] for a square-free `p > 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Quadratic(u64),
}

impl Field {
    /// Builds Q[√p], reducing `p` to its square-free part; perfect squares give Q.
    pub fn quadratic(p: u64) -> Field {
        let (_, free) = square_free_decompose(p);
        if free == 1 {
            Field::Rational
        } else {
            Field::Quadratic(free)
        }
    }

    pub fn radicand(self) -> u64 {
        match self {
            Field::Rational => 1,
            Field::Quadratic(p) => p,
        }
    }

    pub fn contains(self, x: &QuadNumber) -> bool {
        x.is_rational() || x.p == self.radicand()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Quadratic(p) => write!(f, "quad:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = NumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "rational" || s == "Q" {
            return Ok(Field::Rational);
        }
        if let Some(rest) = s.strip_prefix("quad:") {
            let p: u64 = rest.parse().map_err(|_| NumError::Parse(s.to_string()))?;
            if p == 0 {
                return Err(NumError::Parse(s.to_string()));
            }
            return Ok(Field::quadratic(p));
        }
        Err(NumError::Parse(s.to_string()))
    }
}

/// Splits `n = f²·q` with `q` square-free, returning `(f, q)`.
pub fn square_free_decompose(n: u64) -> (u64, u64) {
    assert!(n > 0, "radicand must be positive");
    let mut rest = n;
    let mut f = 1u64;
    let mut q = 1u64;
    let mut d = 2u64;
    while d * d <= rest {
        let mut e = 0;
        while rest.is_multiple_of(d) {
            rest /= d;
            e += 1;
        }
        f *= d.pow(e / 2);
        if e % 2 == 1 {
            q *= d;
        }
        d += 1;
    }
    q *= rest;
    (f, q)
}

/// An exact real number `a + b·√p`.
///
/// `p` is square-free; `p == 1` exactly when `b == 0`, so equality and hashing
/// are structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadNumber {
    a: Rational,
    b: Rational,
    p: u64,
}

impl QuadNumber {
    pub fn new(a: Rational, b: Rational, p: u64) -> QuadNumber {
        let (f, q) = square_free_decompose(p);
        let b = b * BigRational::from_integer(BigInt::from(f));
        if q == 1 {
            QuadNumber { a: a + b, b: Rational::zero(), p: 1 }
        } else if b.is_zero() {
            QuadNumber { a, b, p: 1 }
        } else {
            QuadNumber { a, b, p: q }
        }
    }

    pub fn rational(a: Rational) -> QuadNumber {
        QuadNumber { a, b: Rational::zero(), p: 1 }
    }

    pub fn int(n: i64) -> QuadNumber {
        QuadNumber::rational(rat_int(n))
    }

    pub fn frac(n: i64, d: i64) -> QuadNumber {
        QuadNumber::rational(rat(n, d))
    }

    /// `√n` for a positive integer `n`.
    pub fn sqrt_int(n: u64) -> QuadNumber {
        QuadNumber::new(Rational::zero(), Rational::one(), n)
    }

    pub fn zero() -> QuadNumber {
        QuadNumber::int(0)
    }

    pub fn one() -> QuadNumber {
        QuadNumber::int(1)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_part(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.p
    }

    pub fn field(&self) -> Field {
        if self.p == 1 {
            Field::Rational
        } else {
            Field::Quadratic(self.p)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.a.is_integer()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    /// Galois conjugate `a − b√p`.
    pub fn conjugate(&self) -> QuadNumber {
        QuadNumber { a: self.a.clone(), b: -self.b.clone(), p: self.p }
    }

    /// Field norm `a² − p·b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(BigInt::from(self.p))
    }

    /// Field trace `2a`.
    pub fn trace(&self) -> Rational {
        &self.a + &self.a
    }

    /// Minimal polynomial over Q, ascending coefficients, monic.
    pub fn minimal_polynomial(&self) -> Vec<Rational> {
        if self.is_rational() {
            vec![-self.a.clone(), Rational::one()]
        } else {
            vec![self.norm(), -self.trace(), Rational::one()]
        }
    }

    pub fn is_algebraic_integer(&self) -> bool {
        self.minimal_polynomial().iter().all(|c| c.is_integer())
    }

    fn compatible(&self, other: &QuadNumber) -> Result<u64, NumError> {
        if self.p == other.p || other.p == 1 {
            Ok(self.p)
        } else if self.p == 1 {
            Ok(other.p)
        } else {
            Err(NumError::FieldMismatch(self.p, other.p))
        }
    }

    fn p_rat(p: u64) -> Rational {
        BigRational::from_integer(BigInt::from(p))
    }

    pub fn try_add(&self, other: &QuadNumber) -> Result<QuadNumber, NumError> {
        let p = self.compatible(other)?;
        Ok(QuadNumber::new(&self.a + &other.a, &self.b + &other.b, p))
    }

    pub fn try_sub(&self, other: &QuadNumber) -> Result<QuadNumber, NumError> {
        let p = self.compatible(other)?;
        Ok(QuadNumber::new(&self.a - &other.a, &self.b - &other.b, p))
    }

    pub fn try_mul(&self, other: &QuadNumber) -> Result<QuadNumber, NumError> {
        let p = self.compatible(other)?;
        let a = &self.a * &other.a + &self.b * &other.b * Self::p_rat(p);
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(QuadNumber::new(a, b, p))
    }

    pub fn try_div(&self, other: &QuadNumber) -> Result<QuadNumber, NumError> {
        if other.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        self.compatible(other)?;
        let n = other.norm();
        let num = self.try_mul(&other.conjugate())?;
        Ok(QuadNumber::new(num.a / &n, num.b / &n, num.p))
    }

    pub fn inverse(&self) -> Result<QuadNumber, NumError> {
        QuadNumber::one().try_div(self)
    }

    pub fn scale(&self, r: &Rational) -> QuadNumber {
        QuadNumber::new(&self.a * r, &self.b * r, self.p)
    }

    pub fn square(&self) -> QuadNumber {
        self * self
    }

    pub fn pow(&self, e: u32) -> QuadNumber {
        let mut acc = QuadNumber::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        let a2 = &self.a * &self.a;
        let pb2 = &self.b * &self.b * Self::p_rat(self.p);
        if a2 > pb2 {
            sa
        } else {
            sb
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> QuadNumber {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact comparison; panics when the two values live in different quadratic fields.
    pub fn total_cmp(&self, other: &QuadNumber) -> Ordering {
        self.partial_cmp(other).expect("comparison across distinct quadratic fields")
    }

    /// A square root inside the value's own field (or inside Q[√n] when the value is a
    /// rational `n·r²`), if one exists.
    pub fn sqrt_in(&self, field: Field) -> Option<QuadNumber> {
        if self.is_negative() {
            return None;
        }
        if self.is_zero() {
            return Some(QuadNumber::zero());
        }
        if let Some(r) = self.to_rational() {
            if let Some(s) = rational_sqrt(&r) {
                return Some(QuadNumber::rational(s));
            }
            if let Field::Quadratic(p) = field {
                // r = p·s² gives √r = s·√p
                let s2 = r / Self::p_rat(p);
                if let Some(s) = rational_sqrt(&s2) {
                    return Some(QuadNumber::new(Rational::zero(), s, p));
                }
            }
            return None;
        }
        if !field.contains(self) {
            return None;
        }
        // (c + e√p)² = c² + p e² + 2ce√p
        let disc = self.norm();
        let root = rational_sqrt(&disc)?;
        let half = rat(1, 2);
        for cand in [(&self.a + &root) * &half, (&self.a - &root) * &half] {
            if cand.is_positive() {
                if let Some(c) = rational_sqrt(&cand) {
                    let e = &self.b / (&c + &c);
                    let r = QuadNumber::new(c, e, self.p);
                    if !r.is_negative() && &r * &r == *self {
                        return Some(r);
                    }
                    let r = -r;
                    if !r.is_negative() && &r * &r == *self {
                        return Some(r);
                    }
                }
            }
        }
        None
    }

    /// Floating approximation, for display and for ordering values of different fields.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.p as f64).sqrt()
    }
}

fn sign_of(r: &Rational) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

impl PartialOrd for QuadNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let diff = self.try_sub(other).ok()?;
        Some(diff.signum().cmp(&0))
    }
}

impl From<i64> for QuadNumber {
    fn from(n: i64) -> Self {
        QuadNumber::int(n)
    }
}

impl From<Rational> for QuadNumber {
    fn from(r: Rational) -> Self {
        QuadNumber::rational(r)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<'a> $trait<&'a QuadNumber> for &'a QuadNumber {
            type Output = QuadNumber;
            fn $method(self, rhs: &'a QuadNumber) -> QuadNumber {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<QuadNumber> for QuadNumber {
            type Output = QuadNumber;
            fn $method(self, rhs: QuadNumber) -> QuadNumber {
                (&self).$try(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<'a> $trait<&'a QuadNumber> for QuadNumber {
            type Output = QuadNumber;
            fn $method(self, rhs: &'a QuadNumber) -> QuadNumber {
                (&self).$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<'a> $trait<QuadNumber> for &'a QuadNumber {
            type Output = QuadNumber;
            fn $method(self, rhs: QuadNumber) -> QuadNumber {
                self.$try(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for QuadNumber {
    type Output = QuadNumber;
    fn neg(self) -> QuadNumber {
        QuadNumber { a: -self.a, b: -self.b, p: self.p }
    }
}

impl Neg for &QuadNumber {
    type Output = QuadNumber;
    fn neg(self) -> QuadNumber {
        QuadNumber { a: -self.a.clone(), b: -self.b.clone(), p: self.p }
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serialized as `a/b` or `a/b+c/d*sqrt(p)`; integers drop the denominator.
impl fmt::Display for QuadNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rational(&self.a));
        }
        let surd = format!("{}*sqrt({})", fmt_rational(&self.b.abs()), self.p);
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-{surd}")
            } else {
                write!(f, "{surd}")
            }
        } else if self.b.is_negative() {
            write!(f, "{}-{surd}", fmt_rational(&self.a))
        } else {
            write!(f, "{}+{surd}", fmt_rational(&self.a))
        }
    }
}

impl fmt::Debug for QuadNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str) -> Result<Rational, NumError> {
    let err = || NumError::Parse(s.to_string());
    let s = s.trim();
    if s.is_empty() {
        return Err(err());
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

impl FromStr for QuadNumber {
    type Err = NumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = || NumError::Parse(s.to_string());
        let Some(star) = t.find("*sqrt(") else {
            return Ok(QuadNumber::rational(parse_rational(t)?));
        };
        let tail = &t[star + 6..];
        let p: u64 = tail.strip_suffix(')').ok_or_else(err)?.trim().parse().map_err(|_| err())?;
        if p == 0 {
            return Err(err());
        }
        let head = &t[..star];
        // the split between rational and surd part is the last sign not at position 0
        let split = head
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (a, b) = match split {
            Some(i) => {
                let a = parse_rational(&head[..i])?;
                let sign = &head[i..i + 1];
                let mag = parse_rational(&head[i + 1..])?;
                (a, if sign == "-" { -mag } else { mag })
            }
            None => (Rational::zero(), parse_rational(head)?),
        };
        Ok(QuadNumber::new(a, b, p))
    }
}

impl serde::Serialize for QuadNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for QuadNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serialized as `rational` or `quad:<p>`.
impl serde::Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Field {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub(crate) fn integer_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![];
    }
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            out.push(d.clone());
            let e = &n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadNumber {
        s.parse().unwrap()
    }

    #[test]
    fn radicand_is_normalized() {
        let x = QuadNumber::sqrt_int(20);
        assert_eq!(x, QuadNumber::new(rat_int(0), rat_int(2), 5));
        assert_eq!(QuadNumber::sqrt_int(9), QuadNumber::int(3));
        assert_eq!(x.radicand(), 5);
    }

    #[test]
    fn golden_ratio_identities() {
        let phi = q("1/2+1/2*sqrt(5)");
        assert_eq!(&phi * &phi, &phi + &QuadNumber::one());
        assert!(phi.is_algebraic_integer());
        assert_eq!(phi.minimal_polynomial(), vec![rat_int(-1), rat_int(-1), rat_int(1)]);
        assert_eq!((&phi * &phi.conjugate()), QuadNumber::int(-1));
    }

    #[test]
    fn exact_sign() {
        assert!(q("3-1*sqrt(8)").is_positive());
        assert!(q("2-1*sqrt(5)").is_negative());
        assert!(q("-1/4+1/4*sqrt(5)") > QuadNumber::zero());
        assert!(q("-1/4-1/4*sqrt(5)") < q("-1/2"));
    }

    #[test]
    fn mixed_radicands_fail() {
        let a = QuadNumber::sqrt_int(2);
        let b = QuadNumber::sqrt_int(3);
        assert_eq!(a.try_add(&b), Err(NumError::FieldMismatch(2, 3)));
        assert!(a.partial_cmp(&b).is_none());
    }

    #[test]
    fn division() {
        let x = q("1+1*sqrt(2)");
        let y = QuadNumber::one().try_div(&x).unwrap();
        assert_eq!(y, q("-1+1*sqrt(2)"));
        assert_eq!(x.try_div(&QuadNumber::zero()), Err(NumError::DivisionByZero));
    }

    #[test]
    fn display_roundtrip() {
        for s in ["0", "-3", "2/7", "1/2+1/2*sqrt(5)", "-1/4-1/4*sqrt(5)", "1*sqrt(3)", "-2/3*sqrt(7)"] {
            assert_eq!(q(s).to_string(), s);
        }
    }

    #[test]
    fn square_roots_in_field() {
        let five = QuadNumber::int(5);
        assert_eq!(five.sqrt_in(Field::Quadratic(5)), Some(QuadNumber::sqrt_int(5)));
        assert_eq!(five.sqrt_in(Field::Rational), None);
        let phi = q("1/2+1/2*sqrt(5)");
        let sq = phi.square();
        assert_eq!(sq.sqrt_in(Field::Quadratic(5)), Some(phi));
        assert_eq!(q("9/4").sqrt_in(Field::Rational), Some(q("3/2")));
    }

    #[test]
    fn field_parsing() {
        assert_eq!("rational".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("quad:20".parse::<Field>().unwrap(), Field::Quadratic(5));
        assert!("quad:x".parse::<Field>().is_err());
    }
}
