use serde::Serialize;

use super::axioms::Scheme;
use super::SchemeError;
use crate::exactnum::{ExactMatrix, Field, NumError, QuadNumber};

/// Eigenmatrices, multiplicities, Krein parameters and cosines of a scheme.
///
/// Idempotents are indexed `0..=d` with `E_0 = J/|X|`; relations likewise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Spectra {
    #[serde(skip)]
    scheme: Scheme,
    pub field: Field,
    /// `first_eigenmatrix[j][h] = P_{jh}`, the eigenvalue of `A_h` on `E_j`.
    pub first_eigenmatrix: Vec<Vec<QuadNumber>>,
    /// `second_eigenmatrix[h][j] = Q_{hj}`.
    pub second_eigenmatrix: Vec<Vec<QuadNumber>>,
    pub multiplicities: Vec<QuadNumber>,
    /// `krein[k][i][j] = q_{ij}^k`.
    pub krein: Vec<Vec<Vec<QuadNumber>>>,
    /// `cosines[j][h] = ω_{h,j}`: the inner product of unit vectors in relation `h` under `E_j`.
    pub cosines: Vec<Vec<QuadNumber>>,
}

/// Coefficient vectors tried in turn for the generic element `Σ c_i A_i`.
fn coefficient_vectors(d: usize) -> impl Iterator<Item = Vec<i64>> {
    let unit = (0..=d).map(|i| (i == 1) as i64).collect::<Vec<_>>();
    std::iter::once(unit).chain((2..=16i64).map(move |b| (0..=d).map(|i| if i == 0 { 0 } else { b.pow(i as u32 - 1) }).collect()))
}

/// Computes the spectral data by splitting a generic element of the Bose–Mesner algebra.
pub fn spectra(s: &Scheme) -> Result<Spectra, SchemeError> {
    let d = s.degree();
    let xs = QuadNumber::int(s.size() as i64);
    let k: Vec<QuadNumber> = s.valencies().iter().map(|&v| QuadNumber::int(v as i64)).collect();
    let transposed: Vec<ExactMatrix> = (0..=d).map(|i| s.intersection_matrix(i).transpose()).collect();

    let mut rows: Option<Vec<Vec<QuadNumber>>> = None;
    for c in coefficient_vectors(d) {
        let mut t = ExactMatrix::zeros(d + 1, d + 1);
        for (ci, bi) in c.iter().zip(&transposed) {
            if *ci != 0 {
                t = t.add(&bi.scale(&QuadNumber::int(*ci)))?;
            }
        }
        let split = t.char_poly()?.split_rational()?;
        if !split.is_complete() {
            return Err(SchemeError::UnsupportedSplittingField { residual_degree: split.residual.degree().unwrap_or(0) });
        }
        let roots: Vec<QuadNumber> = split.roots().map(|(r, _)| r.clone()).collect();
        let mut radicands: Vec<u64> = roots.iter().map(QuadNumber::radicand).filter(|&p| p != 1).collect();
        radicands.sort_unstable();
        radicands.dedup();
        if radicands.len() > 1 {
            return Err(SchemeError::Num(NumError::FieldMismatch(radicands[0], radicands[1])));
        }
        if roots.len() != d + 1 || split.roots().any(|(_, mult)| mult > 1) {
            continue;
        }
        let mut found = Vec::with_capacity(d + 1);
        for theta in &roots {
            let shifted = t.sub(&ExactMatrix::identity(d + 1).scale(theta))?;
            let ns = shifted.nullspace();
            if ns.len() != 1 {
                return Err(SchemeError::Inconsistent("eigenspace of the generic element is not one-dimensional".into()));
            }
            let u0 = ns[0][0].clone();
            if u0.is_zero() {
                return Err(SchemeError::Inconsistent("eigenvector with vanishing trivial coordinate".into()));
            }
            let row: Vec<QuadNumber> = ns[0].iter().map(|x| x.try_div(&u0)).collect::<Result<_, _>>()?;
            found.push(row);
        }
        rows = Some(found);
        break;
    }
    let mut p_rows = rows.ok_or(SchemeError::GenericElementNotFound)?;
    // E_0 first (it has P_{0h} = k_h), the rest by decreasing eigenvalue of A_1, A_2, …
    p_rows.sort_by(|a, b| {
        let triv_a = a == &k;
        let triv_b = b == &k;
        triv_b.cmp(&triv_a).then_with(|| {
            a.iter().zip(b).skip(1).map(|(x, y)| y.total_cmp(x)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
        })
    });
    if p_rows[0] != k {
        return Err(SchemeError::Inconsistent("trivial idempotent not found".into()));
    }
    let field = p_rows.iter().flatten().map(QuadNumber::field).find(|f| *f != Field::Rational).unwrap_or(Field::Rational);

    let cosines: Vec<Vec<QuadNumber>> = p_rows
        .iter()
        .map(|row| row.iter().zip(&k).map(|(pjh, kh)| pjh.try_div(kh)).collect::<Result<_, _>>())
        .collect::<Result<_, NumError>>()?;
    let mut multiplicities = Vec::with_capacity(d + 1);
    for col in &cosines {
        let norm = col.iter().zip(&k).fold(QuadNumber::zero(), |acc, (w, kh)| &acc + &(&(w * w) * kh));
        let m = xs.try_div(&norm)?;
        if !m.is_integer() || !m.is_positive() {
            return Err(SchemeError::Inconsistent(format!("multiplicity {m} is not a positive integer")));
        }
        multiplicities.push(m);
    }
    let second: Vec<Vec<QuadNumber>> =
        (0..=d).map(|h| (0..=d).map(|j| &multiplicities[j] * &cosines[j][h]).collect()).collect();
    let krein = krein_from_cosines(&k, &multiplicities, &cosines, &xs)?;
    let sp = Spectra {
        scheme: s.clone(),
        field,
        first_eigenmatrix: p_rows,
        second_eigenmatrix: second,
        multiplicities,
        krein,
        cosines,
    };
    sp.check_dual_recurrence()?;
    Ok(sp)
}

fn krein_from_cosines(
    k: &[QuadNumber],
    m: &[QuadNumber],
    w: &[Vec<QuadNumber>],
    xs: &QuadNumber,
) -> Result<Vec<Vec<Vec<QuadNumber>>>, SchemeError> {
    let d = k.len() - 1;
    let mut q = vec![vec![vec![QuadNumber::zero(); d + 1]; d + 1]; d + 1];
    for kk in 0..=d {
        for i in 0..=d {
            for j in 0..=d {
                let sum = (0..=d).fold(QuadNumber::zero(), |acc, h| &acc + &(&k[h] * &(&w[i][h] * &(&w[j][h] * &w[kk][h]))));
                q[kk][i][j] = (&(&m[i] * &m[j]) * &sum).try_div(xs)?;
            }
        }
    }
    Ok(q)
}

impl Spectra {
    pub fn scheme(&self) -> &Scheme {
        &self.scheme
    }

    pub fn degree(&self) -> usize {
        self.multiplicities.len() - 1
    }

    /// `ω_{h,j}`.
    pub fn omega(&self, h: usize, j: usize) -> &QuadNumber {
        &self.cosines[j][h]
    }

    /// Cosines `(ω_{0,j}, …, ω_{d,j})` of idempotent `j` over all relations.
    pub fn cosine_column(&self, j: usize) -> &[QuadNumber] {
        &self.cosines[j]
    }

    /// Krein parameter `q_{ij}^k`.
    pub fn q(&self, i: usize, j: usize, k: usize) -> &QuadNumber {
        &self.krein[k][i][j]
    }

    /// Multiplicity `m_j` as an integer.
    pub fn multiplicity(&self, j: usize) -> usize {
        self.multiplicities[j].to_rational().unwrap().to_integer().try_into().unwrap()
    }

    /// Relabels idempotents so that old idempotent `order[t]` becomes `E_t`.
    pub fn reorder(&self, order: &[usize]) -> Spectra {
        let d = self.degree();
        assert_eq!(order.len(), d + 1);
        let pick = |v: &Vec<QuadNumber>| order.iter().map(|&o| v[o].clone()).collect::<Vec<_>>();
        Spectra {
            scheme: self.scheme.clone(),
            field: self.field,
            first_eigenmatrix: order.iter().map(|&o| self.first_eigenmatrix[o].clone()).collect(),
            second_eigenmatrix: self.second_eigenmatrix.iter().map(pick).collect(),
            multiplicities: pick(&self.multiplicities),
            krein: order
                .iter()
                .map(|&kk| order.iter().map(|&i| order.iter().map(|&j| self.krein[kk][i][j].clone()).collect()).collect())
                .collect(),
            cosines: order.iter().map(|&o| self.cosines[o].clone()).collect(),
        }
    }

    /// First negative Krein parameter `(i, j, k)`, if any.
    pub fn krein_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.degree();
        for kk in 0..=d {
            for i in 0..=d {
                for j in 0..=d {
                    if self.krein[kk][i][j].is_negative() {
                        return Some((i, j, kk));
                    }
                }
            }
        }
        None
    }

    /// `|X|/m_j · E_j`, whose `(x, y)` entry is `ω_{r(x,y), j}`.
    pub fn embedding_gram(&self, j: usize) -> ExactMatrix {
        let s = &self.scheme;
        ExactMatrix::from_fn(s.size(), s.size(), |x, y| self.cosines[j][s.relation(x, y)].clone())
    }

    /// Primitive idempotent `E_j = (1/|X|) Σ_h Q_{hj} A_h`.
    pub fn idempotent(&self, j: usize) -> ExactMatrix {
        let s = &self.scheme;
        let xs = QuadNumber::int(s.size() as i64);
        ExactMatrix::from_fn(s.size(), s.size(), |x, y| &self.second_eigenmatrix[s.relation(x, y)][j] / &xs)
    }

    /// `m_i ω_{r,i} ω_{r,j} = Σ_h q_{hi}^j ω_{r,h}` for every relation `r`.
    fn check_dual_recurrence(&self) -> Result<(), SchemeError> {
        let d = self.degree();
        for r in 0..=d {
            for i in 0..=d {
                for j in 0..=d {
                    let lhs = &self.multiplicities[i] * &(&self.cosines[i][r] * &self.cosines[j][r]);
                    let rhs = (0..=d).fold(QuadNumber::zero(), |acc, h| &acc + &(&self.krein[j][h][i] * &self.cosines[h][r]));
                    if lhs != rhs {
                        return Err(SchemeError::Inconsistent(format!(
                            "dual cosine recurrence fails at r={r}, i={i}, j={j}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Whether all Krein parameters are non-negative, with the first offending `(i, j, k)`.
pub fn krein_check(sp: &Spectra) -> (bool, Option<(usize, usize, usize)>) {
    let v = sp.krein_violation();
    (v.is_none(), v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::named_graph;
    use crate::scheme::scheme_from_graph_distances;

    fn sp(name: &str) -> Spectra {
        spectra(&scheme_from_graph_distances(&named_graph(name).unwrap()).unwrap()).unwrap()
    }

    fn q(s: &str) -> QuadNumber {
        s.parse().unwrap()
    }

    #[test]
    fn johnson_cosines() {
        let s = sp("J(5,2)");
        assert_eq!(s.cosine_column(1), &[q("1"), q("1/6"), q("-2/3")]);
        assert_eq!(s.multiplicity(1), 4);
    }

    #[test]
    fn tesseract_cosines() {
        let s = sp("Q4");
        assert_eq!(s.cosine_column(1), &[q("1"), q("1/2"), q("0"), q("-1/2"), q("-1")]);
        assert_eq!(s.q(1, 1, 1), &q("0"));
    }

    #[test]
    fn trivial_row_and_column() {
        let s = sp("petersen");
        assert!(s.cosine_column(0).iter().all(QuadNumber::is_one));
        assert!((0..=2).all(|j| s.omega(0, j).is_one()));
        assert_eq!(krein_check(&s), (true, None));
    }

    #[test]
    fn icosahedron_needs_sqrt5() {
        let s = sp("icosahedron");
        assert_eq!(s.field, Field::quadratic(5));
        assert_eq!(s.multiplicity(1), 3);
    }
}
