//! Dense matrices over [`QuadNumber`].

use std::fmt;

use super::poly::ExactPolynomial;
use super::quad::QuadNumber;
use super::NumError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<QuadNumber>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![QuadNumber::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = QuadNumber::one();
        }
        m
    }

    /// All-ones matrix `J`.
    pub fn ones(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![QuadNumber::one(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> QuadNumber) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<QuadNumber>>) -> Result<Self, NumError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(NumError::Shape("ragged rows".into()));
        }
        Ok(ExactMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Result<Self, NumError> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| QuadNumber::int(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[QuadNumber] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(QuadNumber::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self, NumError> {
        self.same_shape(other)?;
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, NumError> {
        self.same_shape(other)?;
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    /// Entrywise (Hadamard) product.
    pub fn hadamard(&self, other: &Self) -> Result<Self, NumError> {
        self.same_shape(other)?;
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a * b).collect(),
        })
    }

    pub fn scale(&self, c: &QuadNumber) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, NumError> {
        if self.cols != other.rows {
            return Err(NumError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[QuadNumber]) -> Result<Vec<QuadNumber>, NumError> {
        if v.len() != self.cols {
            return Err(NumError::Shape("vector length mismatch".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(QuadNumber::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    fn same_shape(&self, other: &Self) -> Result<(), NumError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(NumError::Shape("shape mismatch".into()));
        }
        Ok(())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Rank by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut prev = QuadNumber::one();
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(rank, p);
            let pivot = m[(rank, col)].clone();
            for i in rank + 1..m.rows {
                let lead = m[(i, col)].clone();
                for j in col + 1..m.cols {
                    let v = &(&pivot * &m[(i, j)]) - &(&lead * &m[(rank, j)]);
                    m[(i, j)] = &v / &prev;
                }
                m[(i, col)] = QuadNumber::zero();
            }
            prev = pivot;
            rank += 1;
        }
        rank
    }

    pub fn determinant(&self) -> Result<QuadNumber, NumError> {
        let cp = self.char_poly()?;
        let n = self.rows;
        let c0 = cp.coeff(0);
        Ok(if n.is_multiple_of(2) { c0 } else { -c0 })
    }

    /// Characteristic polynomial `det(tI − M)` via reduction to Hessenberg form.
    pub fn char_poly(&self) -> Result<ExactPolynomial, NumError> {
        if !self.is_square() {
            return Err(NumError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h[(i, m - 1)].is_zero()) else {
                continue;
            };
            let t = h[(i, m - 1)].clone();
            if i > m {
                h.swap_rows(i, m);
                h.swap_cols(i, m);
            }
            for i in m + 1..n {
                let u = &h[(i, m - 1)] / &t;
                if u.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = &h[(i, j)] - &(&u * &h[(m, j)]);
                    h[(i, j)] = v;
                }
                for j in 0..n {
                    let v = &h[(j, m)] + &(&u * &h[(j, i)]);
                    h[(j, m)] = v;
                }
            }
        }
        // recurrence on the leading principal minors of the Hessenberg matrix
        let hh = |i: usize, j: usize| h[(i - 1, j - 1)].clone();
        let mut p: Vec<ExactPolynomial> = vec![ExactPolynomial::one()];
        for m in 1..=n {
            let lin = ExactPolynomial::new(vec![-hh(m, m), QuadNumber::one()]);
            let mut pm = lin.mul(&p[m - 1]);
            let mut t = QuadNumber::one();
            for i in 1..m {
                t = &t * &hh(m - i + 1, m - i);
                if t.is_zero() {
                    break;
                }
                let c = &hh(m - i, m) * &t;
                pm = pm.sub(&p[m - i - 1].scale(&c));
            }
            p.push(pm);
        }
        Ok(p.pop().unwrap())
    }

    /// Positive semidefiniteness of a symmetric matrix, from the sign pattern of its
    /// characteristic polynomial.
    pub fn is_psd(&self) -> Result<bool, NumError> {
        if !self.is_symmetric() {
            return Err(NumError::NotSymmetric);
        }
        let cp = self.char_poly()?;
        let n = self.rows;
        // all roots real; none negative iff (−1)^i · coeff(t^{n−i}) ≥ 0
        Ok((0..=n).all(|i| {
            let c = cp.coeff(n - i);
            if i % 2 == 0 {
                !c.is_negative()
            } else {
                !c.is_positive()
            }
        }))
    }

    /// Basis of the right null space, by reduction to row echelon form.
    pub fn nullspace(&self) -> Vec<Vec<QuadNumber>> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inverse().expect("nonzero pivot");
            for j in 0..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in 0..m.cols {
                        let v = &m[(i, j)] - &(&f * &m[(r, j)]);
                        m[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![QuadNumber::zero(); m.cols];
                v[f] = QuadNumber::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&m[(row, f)];
                }
                v
            })
            .collect()
    }

    /// Solves `M x = b` for square invertible `M`.
    pub fn solve(&self, b: &[QuadNumber]) -> Result<Vec<QuadNumber>, NumError> {
        if !self.is_square() {
            return Err(NumError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut aug = Self::from_fn(n, n + 1, |i, j| if j < n { self[(i, j)].clone() } else { b[i].clone() });
        for c in 0..n {
            let p = (c..n).find(|&i| !aug[(i, c)].is_zero()).ok_or(NumError::Singular)?;
            aug.swap_rows(c, p);
            let inv = aug[(c, c)].inverse()?;
            for j in c..=n {
                aug[(c, j)] = &aug[(c, j)] * &inv;
            }
            for i in 0..n {
                if i != c && !aug[(i, c)].is_zero() {
                    let f = aug[(i, c)].clone();
                    for j in c..=n {
                        let v = &aug[(i, j)] - &(&f * &aug[(c, j)]);
                        aug[(i, j)] = v;
                    }
                }
            }
        }
        Ok((0..n).map(|i| aug[(i, n)].clone()).collect())
    }
}

impl std::ops::Index<(usize, usize)> for ExactMatrix {
    type Output = QuadNumber;
    fn index(&self, (i, j): (usize, usize)) -> &QuadNumber {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut QuadNumber {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> ExactMatrix {
        ExactMatrix::from_ints(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).unwrap()
    }

    #[test]
    fn identity_char_poly() {
        let cp = ExactMatrix::identity(2).char_poly().unwrap();
        assert_eq!(cp, ExactPolynomial::from_ints(&[1, -2, 1]));
    }

    #[test]
    fn triangle_char_poly() {
        // det(tI - A(K3)) = t³ - 3t - 2
        assert_eq!(k3().char_poly().unwrap(), ExactPolynomial::from_ints(&[-2, -3, 0, 1]));
    }

    #[test]
    fn non_square_is_an_error() {
        let m = ExactMatrix::zeros(2, 3);
        assert_eq!(m.char_poly(), Err(NumError::NotSquare(2, 3)));
    }

    #[test]
    fn ranks() {
        assert_eq!(ExactMatrix::zeros(4, 4).rank(), 0);
        assert_eq!(ExactMatrix::ones(5, 5).rank(), 1);
        let third = QuadNumber::frac(-1, 3);
        let tet = ExactMatrix::from_fn(4, 4, |i, j| if i == j { QuadNumber::one() } else { third.clone() });
        assert_eq!(tet.rank(), 3);
        assert!(tet.is_psd().unwrap());
    }

    #[test]
    fn psd_checks() {
        assert!(ExactMatrix::identity(3).is_psd().unwrap());
        let d = ExactMatrix::from_ints(&[vec![1, 0], vec![0, -1]]).unwrap();
        assert!(!d.is_psd().unwrap());
        let ns = ExactMatrix::from_ints(&[vec![1, 2], vec![0, 1]]).unwrap();
        assert_eq!(ns.is_psd(), Err(NumError::NotSymmetric));
    }

    #[test]
    fn pentagon_gram_is_psd() {
        let b1: QuadNumber = "-1/4+1/4*sqrt(5)".parse().unwrap();
        let b2: QuadNumber = "-1/4-1/4*sqrt(5)".parse().unwrap();
        let g = ExactMatrix::from_fn(5, 5, |i, j| {
            let d = (i + 5 - j) % 5;
            match d {
                0 => QuadNumber::one(),
                1 | 4 => b1.clone(),
                _ => b2.clone(),
            }
        });
        assert!(g.is_psd().unwrap());
        assert_eq!(g.rank(), 2);
    }

    #[test]
    fn nullspace_and_solve() {
        let m = ExactMatrix::from_ints(&[vec![1, 1], vec![1, 1]]).unwrap();
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).unwrap().iter().all(QuadNumber::is_zero));
        let a = ExactMatrix::from_ints(&[vec![2, 1], vec![1, 3]]).unwrap();
        let x = a.solve(&[QuadNumber::int(3), QuadNumber::int(5)]).unwrap();
        assert_eq!(x, vec![QuadNumber::frac(4, 5), QuadNumber::frac(7, 5)]);
    }
}
