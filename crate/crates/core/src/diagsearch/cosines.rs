use serde::Serialize;

use super::diagram::PruneReason;
use crate::exactnum::{bounded_algebraic_integers, rat_int, Field, QuadNumber};

/// The first two cosine columns. Column 2 follows from column 1 once `q_{11}^1` is known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosineColumns {
    pub field: Field,
    pub m1: u32,
    /// `ω_{h,1}` per relation.
    pub first: Vec<QuadNumber>,
    /// `q_{11}^1`, once known.
    pub krein_q11: Option<QuadNumber>,
}

impl CosineColumns {
    pub fn len(&self) -> usize {
        self.first.len()
    }

    pub fn is_empty(&self) -> bool {
        self.first.is_empty()
    }

    pub fn second(&self, h: usize) -> Option<QuadNumber> {
        second_cosine(self.m1, self.krein_q11.as_ref()?, &self.first[h])
    }

    /// `[ω_{h,1}, ω_{h,2}]` rows; empty column 2 while `q_{11}^1` is unknown.
    pub fn rows(&self) -> Vec<Vec<QuadNumber>> {
        (0..self.len()).map(|h| std::iter::once(self.first[h].clone()).chain(self.second(h)).collect()).collect()
    }
}

/// `ω_{−,2}` from `ω_{−,1}` through `m ω² = 1 + q ω + (m − 1 − q) ω₂`.
pub fn second_cosine(m1: u32, q11: &QuadNumber, w: &QuadNumber) -> Option<QuadNumber> {
    let m = QuadNumber::int(m1 as i64);
    let one = QuadNumber::one();
    let r = &(&m - &one) - q11;
    (&(&(&m * &(w * w)) - &one) - &(q11 * w)).try_div(&r).ok()
}

/// `{λ/k}` over algebraic integers `λ` of the field with all conjugates in `[−k, k]`.
pub fn cosine_candidates(k: u64, field: Field) -> Vec<QuadNumber> {
    let kq = QuadNumber::int(k as i64);
    bounded_algebraic_integers(k, field).into_iter().map(|l| l.try_div(&kq).unwrap()).collect()
}

/// `λ` is an algebraic integer of degree ≤ 2 whose conjugates lie in `[−k, k]`.
pub(crate) fn is_bounded_integer(lambda: &QuadNumber, k: u64) -> bool {
    let kq = QuadNumber::int(k as i64);
    let lo = -&kq;
    let inside = |x: &QuadNumber| *x >= lo && *x <= kq;
    lambda.is_algebraic_integer() && inside(lambda) && inside(&lambda.conjugate())
}

/// Real-field, range, faithfulness, nearest-neighbour and integrality rules on the cosines.
///
/// `valencies[h]` is used when known: `k_h ω_{h,1}` is an eigenvalue of `A_h` and
/// `k_h ω_{h,2}` a rational one.
pub fn check_solution_valid(cos: &CosineColumns, valencies: &[Option<u64>]) -> Result<(), PruneReason> {
    let one = QuadNumber::one();
    let minus_one = -&one;
    let m1 = cos.m1 as u64;
    if let Some(q) = &cos.krein_q11 {
        let r = &QuadNumber::int(m1 as i64 - 1) - q;
        if q.is_negative() || !r.is_positive() {
            return Err(PruneReason::Krein);
        }
    }
    let second: Vec<Option<QuadNumber>> = (0..cos.len()).map(|h| cos.second(h)).collect();
    if cos.first.iter().chain(second.iter().flatten()).any(|w| !cos.field.contains(w)) {
        return Err(PruneReason::Field);
    }
    for (h, w1) in cos.first.iter().enumerate() {
        let top = if h == 0 { !w1.is_one() } else { *w1 >= one };
        let w2_out = second[h].as_ref().is_some_and(|w2| *w2 > one || *w2 < minus_one);
        if top || *w1 < minus_one || w2_out {
            return Err(PruneReason::Range);
        }
    }
    for a in 0..cos.len() {
        for b in a + 1..cos.len() {
            if cos.first[a] == cos.first[b] {
                return Err(PruneReason::Faithfulness);
            }
        }
    }
    if (2..cos.len()).any(|h| cos.first[h] > cos.first[1]) {
        return Err(PruneReason::Nearest);
    }
    if second.iter().flatten().any(|w2| !w2.is_rational()) {
        return Err(PruneReason::EvenColumn);
    }
    for (h, w1) in cos.first.iter().enumerate() {
        if let Some(Some(k)) = valencies.get(h) {
            let kr = rat_int(*k as i64);
            let even_ok = second[h].as_ref().is_none_or(|w2| w2.scale(&kr).is_integer());
            if !is_bounded_integer(&w1.scale(&kr), *k) || !even_ok {
                return Err(PruneReason::Integrality);
            }
        }
    }
    Ok(())
}

/// Roots of `a x² + b x + c` inside the field, ascending; `None` when all coefficients vanish.
pub(crate) fn quadratic_roots(
    a: &QuadNumber,
    b: &QuadNumber,
    c: &QuadNumber,
    field: Field,
) -> Option<Vec<QuadNumber>> {
    if a.is_zero() {
        if b.is_zero() {
            return if c.is_zero() { None } else { Some(vec![]) };
        }
        return Some(vec![(-c).try_div(b).unwrap()]);
    }
    let disc = &(b * b) - &(&QuadNumber::int(4) * &(a * c));
    if disc.is_negative() {
        return Some(vec![]);
    }
    let Some(s) = disc.sqrt_in(field) else { return Some(vec![]) };
    if !field.contains(&s) {
        return Some(vec![]);
    }
    let two_a = a + a;
    let mut roots = vec![(&(-b) - &s).try_div(&two_a).unwrap(), (&(-b) + &s).try_div(&two_a).unwrap()];
    roots.sort_by(QuadNumber::total_cmp);
    roots.dedup();
    Some(roots)
}
