use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exactnum::{QuadNumber, Rational};

/// Polynomial in `(β₁, β₂)` with rational coefficients; keys are exponent pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, e1: u32, e2: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((e1, e2), c);
        }
        BivariatePolynomial { terms }
    }

    /// `c0 + c1 β₁ + c2 β₂`.
    pub fn linear(c0: i64, c1: i64, c2: i64) -> Self {
        let r = |x: i64| Rational::from_integer(x.into());
        Self::monomial(r(c0), 0, 0).add(&Self::monomial(r(c1), 1, 0)).add(&Self::monomial(r(c2), 0, 1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let v = terms.entry(*e).or_insert_with(Rational::zero);
            *v += c;
            if v.is_zero() {
                terms.remove(e);
            }
        }
        BivariatePolynomial { terms }
    }

    pub fn neg(&self) -> Self {
        BivariatePolynomial { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((a1, a2), c) in &self.terms {
            for ((b1, b2), d) in &other.terms {
                out = out.add(&Self::monomial(c * d, a1 + b1, a2 + b2));
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, b1: &QuadNumber, b2: &QuadNumber) -> QuadNumber {
        self.terms.iter().fold(QuadNumber::zero(), |acc, ((e1, e2), c)| {
            &acc + &(&b1.pow(*e1) * &b2.pow(*e2)).scale(c)
        })
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((e1, e2), c)| {
                let mut s = format!("{c}");
                for (name, e) in [("b1", e1), ("b2", e2)] {
                    match e {
                        0 => {}
                        1 => s.push_str(&format!("*{name}")),
                        _ => s.push_str(&format!("*{name}^{e}")),
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Polynomial in `t` whose coefficients are bivariate polynomials, ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct TPoly(pub Vec<BivariatePolynomial>);

impl TPoly {
    pub fn constant(c: BivariatePolynomial) -> Self {
        TPoly(vec![c])
    }

    /// `t − c`.
    pub fn t_minus(c: &BivariatePolynomial) -> Self {
        TPoly(vec![c.neg(), BivariatePolynomial::constant(Rational::one())])
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let zero = BivariatePolynomial::zero();
        TPoly((0..n).map(|i| self.0.get(i).unwrap_or(&zero).add(other.0.get(i).unwrap_or(&zero))).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return TPoly(vec![]);
        }
        let mut out = vec![BivariatePolynomial::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        TPoly(out)
    }

    pub fn scale(&self, c: &BivariatePolynomial) -> Self {
        TPoly(self.0.iter().map(|x| x.mul(c)).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(TPoly::constant(BivariatePolynomial::constant(Rational::one())), |acc, _| acc.mul(self))
    }
}
