//! Dense quaternion matrices.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::cmatrix::CMatrix;
use crate::quaternion::Quaternion;

/// A dense `rows x cols` quaternion matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Quaternion::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diag(&vec![Quaternion::ONE; n])
    }

    pub fn from_diag(diag: &[Quaternion]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Quaternion,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QMatrix { rows, cols, data }
    }

    /// Builds from row-major data; `None` if the length is not `rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Quaternion>) -> Option<Self> {
        (rows.checked_mul(cols)? == data.len()).then_some(QMatrix { rows, cols, data })
    }

    /// Panics on ragged input; meant for literals in code and tests.
    pub fn from_rows(rows: Vec<Vec<Quaternion>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Quaternion::real(v)).collect())
                .collect(),
        )
    }

    pub fn from_complex(m: &CMatrix) -> Self {
        Self::from_fn(m.rows(), m.cols(), |i, j| {
            Quaternion::from_complex(m[(i, j)])
        })
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

    pub fn data(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Quaternion] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Quaternion> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[Quaternion]) {
        assert_eq!(v.len(), self.rows);
        for (i, q) in v.iter().enumerate() {
            self[(i, j)] = *q;
        }
    }

    pub fn from_cols(rows: usize, cols: &[Vec<Quaternion>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            m.set_col(j, c);
        }
        m
    }

    /// Conjugate transpose `A*`.
    pub fn star(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn frobenius(&self) -> f64 {
        self.data
            .iter()
            .map(Quaternion::norm_sqr)
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Quaternion::norm).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(Quaternion::is_finite)
    }

    pub fn diag(&self) -> Vec<Quaternion> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)])
            .collect()
    }

    pub fn scale(&self, s: f64) -> Self {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|q| *q * s).collect(),
        }
    }

    /// Left multiplication of every entry by `q`.
    pub fn left_scalar(&self, q: Quaternion) -> Self {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| q * *e).collect(),
        }
    }

    /// Right multiplication of every entry by `q`.
    pub fn right_scalar(&self, q: Quaternion) -> Self {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| *e * q).collect(),
        }
    }

    /// `A - q I` with `q` subtracted on the diagonal.
    pub fn shift(&self, q: Quaternion) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] -= q;
        }
        m
    }

    pub fn pow(&self, k: usize) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])])
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &QMatrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)];
            }
        }
    }

    pub fn direct_sum(blocks: &[QMatrix]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// `P A P^T` where row/column `k` of the result is row/column `perm[k]` of `self`.
    pub fn permute_symmetric(&self, perm: &[usize]) -> Self {
        self.submatrix(perm, perm)
    }

    /// Largest entry norm of `self - other`.
    pub fn max_diff(&self, other: &QMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.dist(b))
            .fold(0.0, f64::max)
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self[(i, j)].is_zero()))
    }

    /// `|A* A - I|_F`.
    pub fn unitarity_residual(&self) -> f64 {
        (&(&self.star() * self) - &QMatrix::identity(self.cols)).frobenius()
    }

    /// Every entry has zero `j` and `k` parts.
    pub fn is_complex(&self) -> bool {
        self.data.iter().all(|q| q.y == 0.0 && q.z == 0.0)
    }

    pub fn to_complex(&self) -> CMatrix {
        CMatrix::from_fn(self.rows, self.cols, |i, j| {
            let q = self[(i, j)];
            Complex64::new(q.w, q.x)
        })
    }

    /// Complex adjoint `[[A1, A2], [-conj(A2), conj(A1)]]` where `A = A1 + A2 j`.
    ///
    /// Multiplicative, and maps `A*` to the complex conjugate transpose.
    /// A vector `v = v1 + v2 j` corresponds to the column `[v1; -conj(v2)]`,
    /// which makes right multiplication by complex scalars commute with the map.
    pub fn adjoint_complex(&self) -> CMatrix {
        let (m, n) = (self.rows, self.cols);
        let mut out = CMatrix::zeros(2 * m, 2 * n);
        for i in 0..m {
            for j in 0..n {
                let p = self[(i, j)].split();
                out[(i, j)] = p.z1;
                out[(i, n + j)] = p.z2;
                out[(m + i, j)] = -p.z2.conj();
                out[(m + i, n + j)] = p.z1.conj();
            }
        }
        out
    }
}

/// Quaternion vector to its column in the complex adjoint picture.
pub fn vec_to_complex(v: &[Quaternion]) -> Vec<Complex64> {
    let n = v.len();
    let mut out = vec![Complex64::new(0.0, 0.0); 2 * n];
    for (i, q) in v.iter().enumerate() {
        let p = q.split();
        out[i] = p.z1;
        out[n + i] = -p.z2.conj();
    }
    out
}

/// Inverse of [`vec_to_complex`].
pub fn vec_from_complex(x: &[Complex64]) -> Vec<Quaternion> {
    let n = x.len() / 2;
    (0..n)
        .map(|i| Quaternion::from_pair(x[i], -x[n + i].conj()))
        .collect()
}

pub fn inner(u: &[Quaternion], v: &[Quaternion]) -> Quaternion {
    u.iter()
        .zip(v)
        .fold(Quaternion::ZERO, |acc, (a, b)| acc + a.conj() * *b)
}

pub fn vnorm(v: &[Quaternion]) -> f64 {
    v.iter().map(Quaternion::norm_sqr).sum::<f64>().sqrt()
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    fn index(&self, (i, j): (usize, usize)) -> &Quaternion {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Quaternion {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul<&QMatrix> for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Mul<&[Quaternion]> for &QMatrix {
    type Output = Vec<Quaternion>;
    fn mul(self, v: &[Quaternion]) -> Vec<Quaternion> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Quaternion::ZERO, |acc, (a, b)| acc + *a * *b)
            })
            .collect()
    }
}

impl Add<&QMatrix> for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| *a + *b)
                .collect(),
        }
    }
}

impl Sub<&QMatrix> for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| *a - *b)
                .collect(),
        }
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        self.scale(-1.0)
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|q| q.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion::new(w, x, y, z)
    }

    #[test]
    fn adjoint_examples() {
        let j = QMatrix::from_rows(vec![vec![Quaternion::J]]);
        let c = j.adjoint_complex();
        assert_eq!(c[(0, 0)], Complex64::new(0.0, 0.0));
        assert_eq!(c[(0, 1)], Complex64::new(1.0, 0.0));
        assert_eq!(c[(1, 0)], Complex64::new(-1.0, 0.0));
        assert_eq!(c[(1, 1)], Complex64::new(0.0, 0.0));

        let i = QMatrix::from_rows(vec![vec![Quaternion::I]]);
        let c = i.adjoint_complex();
        assert_eq!(c[(0, 0)], Complex64::new(0.0, 1.0));
        assert_eq!(c[(1, 1)], Complex64::new(0.0, -1.0));
        assert_eq!(c[(0, 1)], Complex64::new(0.0, 0.0));

        assert_eq!(QMatrix::identity(3).adjoint_complex(), CMatrix::identity(6));
    }

    #[test]
    fn vector_map_intertwines() {
        let a = QMatrix::from_rows(vec![
            vec![q(1.0, 2.0, -1.0, 0.5), q(0.0, 1.0, 3.0, -2.0)],
            vec![q(-0.5, 0.0, 1.0, 1.0), q(2.0, -1.0, 0.0, 0.25)],
        ]);
        let v = vec![q(0.3, -1.0, 2.0, 0.7), q(1.1, 0.2, -0.4, 1.5)];
        let av = &a * v.as_slice();
        let chi = a.adjoint_complex();
        let x = vec_to_complex(&v);
        let y: Vec<Complex64> = (0..4)
            .map(|i| (0..4).map(|k| chi[(i, k)] * x[k]).sum())
            .collect();
        let back = vec_from_complex(&y);
        for (p, r) in back.iter().zip(&av) {
            assert!(p.dist(r) < 1e-12);
        }
        assert_eq!(vec_from_complex(&vec_to_complex(&v)), v);
    }

    #[test]
    fn star_reverses_products() {
        let a = QMatrix::from_fn(2, 3, |i, j| q(i as f64, j as f64, 1.0, -(i as f64)));
        let b = QMatrix::from_fn(3, 2, |i, j| q(1.0, (i + j) as f64, -1.0, 0.5));
        let lhs = (&a * &b).star();
        let rhs = &b.star() * &a.star();
        assert!(lhs.max_diff(&rhs) < 1e-12);
        assert_eq!(a.star().star(), a);
    }

    #[test]
    fn direct_sum_and_permutation() {
        let a = QMatrix::from_real_rows(&[&[1.0, 2.0], &[0.0, 3.0]]);
        let b = QMatrix::from_real_rows(&[&[4.0]]);
        let s = QMatrix::direct_sum(&[a, b]);
        assert_eq!(s.rows(), 3);
        assert_eq!(s[(2, 2)], Quaternion::real(4.0));
        let p = s.permute_symmetric(&[2, 0, 1]);
        assert_eq!(p[(0, 0)], Quaternion::real(4.0));
        assert_eq!(p[(1, 2)], Quaternion::real(2.0));
    }

    #[test]
    fn from_vec_checks_length() {
        assert!(QMatrix::from_vec(2, 2, vec![Quaternion::ONE; 3]).is_none());
        assert!(QMatrix::from_vec(usize::MAX, 2, vec![]).is_none());
        assert!(QMatrix::from_vec(1, 2, vec![Quaternion::ONE; 2]).is_some());
    }
}
