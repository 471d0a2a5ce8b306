//! Dense univariate polynomials with exact coefficients, plus splitting of
//! rational polynomials into linear and quadratic factors.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::quad::{integer_divisors, square_free_decompose, QuadNumber, Rational};
use super::NumError;

/// Coefficients in ascending degree; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ExactPolynomial {
    coeffs: Vec<QuadNumber>,
}

impl ExactPolynomial {
    pub fn new(mut coeffs: Vec<QuadNumber>) -> Self {
        while coeffs.last().is_some_and(QuadNumber::is_zero) {
            coeffs.pop();
        }
        ExactPolynomial { coeffs }
    }

    pub fn from_rationals(coeffs: &[Rational]) -> Self {
        Self::new(coeffs.iter().cloned().map(QuadNumber::rational).collect())
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| QuadNumber::int(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(vec![QuadNumber::one()])
    }

    /// `x − r`
    pub fn linear_root(r: &QuadNumber) -> Self {
        Self::new(vec![-r, QuadNumber::one()])
    }

    pub fn coeffs(&self) -> &[QuadNumber] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> QuadNumber {
        self.coeffs.get(i).cloned().unwrap_or_else(QuadNumber::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&QuadNumber> {
        self.coeffs.last()
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(QuadNumber::is_rational)
    }

    pub fn eval(&self, x: &QuadNumber) -> QuadNumber {
        self.coeffs
            .iter()
            .rev()
            .fold(QuadNumber::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![QuadNumber::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &QuadNumber) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Euclidean division; returns `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), NumError> {
        let dd = divisor.degree().ok_or(NumError::DivisionByZero)?;
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![QuadNumber::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].try_div(&lead)?;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &(&c * dc);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Coefficients scaled to coprime integers with positive leading coefficient.
    pub fn primitive_integer_coeffs(&self) -> Option<Vec<BigInt>> {
        if !self.is_rational() || self.is_zero() {
            return None;
        }
        let rats: Vec<Rational> = self.coeffs.iter().map(|c| c.to_rational().unwrap()).collect();
        let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let mut ints: Vec<BigInt> = rats
            .iter()
            .map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        for x in ints.iter_mut() {
            *x = &*x / &g;
        }
        if ints.last().unwrap().is_negative() {
            for x in ints.iter_mut() {
                *x = -x.clone();
            }
        }
        Some(ints)
    }

    /// Splits a rational polynomial into roots of degree ≤ 2 over Q.
    pub fn split_rational(&self) -> Result<RationalSplitting, NumError> {
        split_rational(self)
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{i}")?,
            }
        }
        Ok(())
    }
}

/// An irreducible factor over Q of degree 1 or 2 together with its real roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitFactor {
    /// Monic factor over Q, ascending coefficients.
    pub factor: Vec<Rational>,
    pub roots: Vec<QuadNumber>,
    pub multiplicity: usize,
}

/// Result of splitting a rational polynomial over fields of degree ≤ 2.
#[derive(Clone, Debug, Default)]
pub struct RationalSplitting {
    pub factors: Vec<SplitFactor>,
    /// Monic product of everything that has no root of degree ≤ 2.
    pub residual: ExactPolynomial,
}

impl RationalSplitting {
    pub fn is_complete(&self) -> bool {
        self.residual.degree() == Some(0)
    }

    /// All roots with multiplicity, grouped per factor.
    pub fn roots(&self) -> impl Iterator<Item = (&QuadNumber, usize)> {
        self.factors
            .iter()
            .flat_map(|f| f.roots.iter().map(move |r| (r, f.multiplicity)))
    }
}

fn int_poly_eval(c: &[BigInt], x: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a)
}

fn int_poly_div_exact(c: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    // d monic
    let dd = d.len() - 1;
    if c.len() <= dd {
        return None;
    }
    let mut rem = c.to_vec();
    let mut q = vec![BigInt::zero(); c.len() - dd];
    for k in (0..q.len()).rev() {
        let lc = rem[k + dd].clone();
        if !lc.is_zero() {
            for (j, dc) in d.iter().enumerate() {
                rem[k + j] -= &lc * dc;
            }
        }
        q[k] = lc;
    }
    rem[..dd].iter().all(Zero::is_zero).then_some(q)
}

/// Positive divisors of `n` not exceeding `limit`.
fn bounded_divisors(n: &BigInt, limit: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if limit * limit >= n {
        return integer_divisors(&n).into_iter().filter(|d| d <= limit).collect();
    }
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d <= limit {
        if n.is_multiple_of(&d) {
            out.push(d.clone());
        }
        d += 1;
    }
    out
}

/// Upper bound on the absolute value of every root of a monic integer polynomial.
fn root_bound(c: &[BigInt]) -> BigInt {
    let n = c.len() - 1;
    let mut best = BigInt::zero();
    for i in 1..=n {
        let a = c[n - i].abs();
        if a.is_zero() {
            continue;
        }
        // ceil(a^(1/i))
        let mut r = a.nth_root(i as u32);
        if r.pow(i as u32) < a {
            r += 1;
        }
        if r > best {
            best = r;
        }
    }
    best * 2 + 1
}

fn split_rational(poly: &ExactPolynomial) -> Result<RationalSplitting, NumError> {
    let ints = poly.primitive_integer_coeffs().ok_or(NumError::NotRational)?;
    let n = ints.len() - 1;
    if n == 0 {
        return Ok(RationalSplitting { factors: vec![], residual: ExactPolynomial::one() });
    }
    // substitute x = y / a_n so the polynomial becomes monic in y
    let lead = ints[n].clone();
    let monic: Vec<BigInt> = ints
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if i == n {
                BigInt::one()
            } else {
                c * lead.pow((n - 1 - i) as u32)
            }
        })
        .collect();
    let lead_r = BigRational::from_integer(lead.clone());
    let to_x = |y: QuadNumber| y.scale(&(BigRational::one() / &lead_r));

    let mut rest = monic;
    let mut factors: Vec<SplitFactor> = Vec::new();
    let push = |factors: &mut Vec<SplitFactor>, factor: Vec<Rational>, roots: Vec<QuadNumber>| {
        if let Some(f) = factors.iter_mut().find(|f| f.factor == factor) {
            f.multiplicity += 1;
        } else {
            factors.push(SplitFactor { factor, roots, multiplicity: 1 });
        }
    };

    // integer roots (monic ⇒ rational roots are integers)
    loop {
        if rest.len() <= 1 {
            break;
        }
        let mut found = None;
        if rest[0].is_zero() {
            found = Some(BigInt::zero());
        } else {
            let bound = root_bound(&rest);
            for d in bounded_divisors(&rest[0], &bound) {
                for cand in [d.clone(), -d] {
                    if int_poly_eval(&rest, &cand).is_zero() {
                        found = Some(cand);
                        break;
                    }
                }
                if found.is_some() {
                    break;
                }
            }
        }
        let Some(r) = found else { break };
        rest = int_poly_div_exact(&rest, &[-r.clone(), BigInt::one()]).expect("root divides");
        let x = to_x(QuadNumber::rational(BigRational::from_integer(r)));
        let xr = x.to_rational().unwrap();
        push(&mut factors, vec![-xr, Rational::one()], vec![x]);
    }

    // quadratic factors y² + b y + c with real irrational roots
    'outer: loop {
        if rest.len() <= 2 {
            break;
        }
        let bound = root_bound(&rest);
        let c_bound = &bound * &bound;
        let b_bound: BigInt = &bound * BigInt::from(2);
        for c in bounded_divisors(&rest[0], &c_bound).into_iter().flat_map(|d| [d.clone(), -d]) {
            let mut b = -b_bound.clone();
            while b <= b_bound {
                let disc = &b * &b - &c * BigInt::from(4);
                if disc.is_positive() {
                    let s = disc.sqrt();
                    if &s * &s != disc {
                        let cand = [c.clone(), b.clone(), BigInt::one()];
                        if let Some(q) = int_poly_div_exact(&rest, &cand) {
                            rest = q;
                            let disc_u: u64 = disc.try_into().map_err(|_| NumError::Overflow)?;
                            let (f, p) = square_free_decompose(disc_u);
                            let half = BigRational::new(BigInt::one(), BigInt::from(2));
                            let mb = BigRational::from_integer(-b.clone()) * &half;
                            let sf = BigRational::from_integer(BigInt::from(f)) * &half;
                            let r1 = to_x(QuadNumber::new(mb.clone(), sf.clone(), p));
                            let r2 = to_x(QuadNumber::new(mb, -sf, p));
                            let (r1, r2) = if r1 > r2 { (r2, r1) } else { (r1, r2) };
                            let sum = &r1 + &r2;
                            let prod = &r1 * &r2;
                            let factor = vec![
                                prod.to_rational().unwrap(),
                                -sum.to_rational().unwrap(),
                                Rational::one(),
                            ];
                            push(&mut factors, factor, vec![r1, r2]);
                            continue 'outer;
                        }
                    }
                }
                b += 1;
            }
        }
        break;
    }

    // residual back in x, made monic
    let m = rest.len() - 1;
    let residual: Vec<Rational> = rest
        .iter()
        .enumerate()
        .map(|(i, c)| BigRational::new(c.clone(), lead.pow((m - i) as u32)))
        .collect();
    factors.sort_by(|a, b| {
        let (x, y) = (&a.roots[0], &b.roots[0]);
        x.partial_cmp(y).unwrap_or_else(|| x.to_f64().total_cmp(&y.to_f64()))
    });
    Ok(RationalSplitting { factors, residual: ExactPolynomial::from_rationals(&residual) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::quad::rat;

    #[test]
    fn eval_and_division() {
        // (t-1)(t+2) = t² + t - 2
        let p = ExactPolynomial::from_ints(&[-2, 1, 1]);
        assert!(p.eval(&QuadNumber::int(1)).is_zero());
        let (q, r) = p.div_rem(&ExactPolynomial::from_ints(&[-1, 1])).unwrap();
        assert_eq!(q, ExactPolynomial::from_ints(&[2, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn splits_cycle_polynomial() {
        // char poly of C5: (t-2)(t²+t-1)²
        let a = ExactPolynomial::from_ints(&[-2, 1]);
        let b = ExactPolynomial::from_ints(&[-1, 1, 1]);
        let p = a.mul(&b).mul(&b);
        let s = p.split_rational().unwrap();
        assert!(s.is_complete());
        assert_eq!(s.factors.len(), 2);
        let quad = s.factors.iter().find(|f| f.roots.len() == 2).unwrap();
        assert_eq!(quad.multiplicity, 2);
        for r in &quad.roots {
            assert!(p.eval(r).is_zero());
        }
    }

    #[test]
    fn non_monic_rational_roots() {
        // 6t² - 5t + 1 = (2t-1)(3t-1)
        let p = ExactPolynomial::from_ints(&[1, -5, 6]);
        let s = p.split_rational().unwrap();
        let roots: Vec<_> = s.roots().map(|(r, _)| r.clone()).collect();
        assert_eq!(roots, vec![QuadNumber::frac(1, 3), QuadNumber::frac(1, 2)]);
    }

    #[test]
    fn cubic_residual() {
        // t³ - 3t - 1 is irreducible with three real roots
        let p = ExactPolynomial::from_ints(&[-1, -3, 0, 1]);
        let s = p.split_rational().unwrap();
        assert!(s.factors.is_empty());
        assert_eq!(s.residual.degree(), Some(3));
        let _ = rat(1, 1);
    }
}
