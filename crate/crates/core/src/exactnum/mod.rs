//! Exact arithmetic over the rationals and real quadratic fields.

mod matrix;
mod poly;
mod quad;

pub use matrix::ExactMatrix;
pub use poly::{ExactPolynomial, RationalSplitting, SplitFactor};
pub use quad::{rat, rat_int, rational_sqrt, square_free_decompose, Field, QuadNumber, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("operands live in different fields: sqrt({0}) vs sqrt({1})")]
    FieldMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse number: {0:?}")]
    Parse(String),
    #[error("value is not rational")]
    NotRational,
    #[error("integer overflow")]
    Overflow,
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is singular")]
    Singular,
    #[error("shape error: {0}")]
    Shape(String),
}

/// Algebraic integers of degree at most two in `field` all of whose conjugates lie in
/// `[-k, k]`, sorted ascending.
pub fn bounded_algebraic_integers(k: u64, field: Field) -> Vec<QuadNumber> {
    let ki = k as i64;
    let mut out: Vec<QuadNumber> = (-ki..=ki).map(QuadNumber::int).collect();
    if let Field::Quadratic(p) = field {
        let lo = QuadNumber::int(-ki);
        let hi = QuadNumber::int(ki);
        // roots (−b ± f√p)/2 of x² + bx + c, integral when b² − f²p ≡ 0 (mod 4)
        let pi = p as i64;
        for b in -2 * ki..=2 * ki {
            for f in (1..).take_while(|f| f * f * pi <= 4 * ki * ki) {
                if (b * b - f * f * pi).rem_euclid(4) != 0 {
                    continue;
                }
                let root = QuadNumber::new(rat(-b, 2), rat(f, 2), p);
                let conj = root.conjugate();
                if conj >= lo && root <= hi {
                    out.push(root);
                    out.push(conj);
                }
            }
        }
    }
    out.sort_by(QuadNumber::total_cmp);
    out.dedup();
    out
}
