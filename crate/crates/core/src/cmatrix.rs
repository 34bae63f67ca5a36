//! Minimal dense complex matrices: the target of the complex adjoint
//! representation and the home of the Hessenberg + shifted-QR eigenvalue
//! iteration.

use std::ops::{Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
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

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn shift(&self, mu: Complex64) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] -= mu;
        }
        m
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = CMatrix::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Eigenvalues via Householder reduction to Hessenberg form followed by
    /// single-shift complex QR with Wilkinson shifts and deflation.
    ///
    /// The iteration budget is `100 * n` QR sweeps in total.
    pub fn eigenvalues(&self) -> Result<Vec<Complex64>> {
        assert!(self.is_square(), "eigenvalues of a non-square matrix");
        let n = self.rows;
        let mut h = self.clone();
        h.reduce_to_hessenberg();
        let mut out = vec![ZERO; n];
        if n == 0 {
            return Ok(out);
        }
        let norm = h.frobenius().max(f64::MIN_POSITIVE);
        let limit = 100 * n.max(1);
        let mut total = 0usize;
        let mut since_deflation = 0usize;
        let mut hi = n - 1;
        loop {
            if hi == 0 {
                out[0] = h[(0, 0)];
                break;
            }
            // locate the start of the active unreduced block
            let mut lo = hi;
            while lo > 0 {
                let sub = h[(lo, lo - 1)].norm();
                let diag = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
                let scale = if diag == 0.0 { norm } else { diag };
                if sub <= f64::EPSILON * scale {
                    h[(lo, lo - 1)] = ZERO;
                    break;
                }
                lo -= 1;
            }
            if lo == hi {
                out[hi] = h[(hi, hi)];
                hi -= 1;
                since_deflation = 0;
                continue;
            }
            total += 1;
            since_deflation += 1;
            if total > limit {
                return Err(Error::NoConvergence {
                    routine: "shifted QR",
                    limit,
                });
            }
            let mu = if since_deflation % 11 == 10 {
                // exceptional shift to break cycles
                h[(hi, hi)] + Complex64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
            } else {
                wilkinson_shift(
                    h[(hi - 1, hi - 1)],
                    h[(hi - 1, hi)],
                    h[(hi, hi - 1)],
                    h[(hi, hi)],
                )
            };
            h.qr_sweep(lo, hi, mu);
        }
        Ok(out)
    }

    fn reduce_to_hessenberg(&mut self) {
        let n = self.rows;
        if n < 3 {
            return;
        }
        for k in 0..n - 2 {
            let alpha_norm: f64 = (k + 1..n)
                .map(|i| self[(i, k)].norm_sqr())
                .sum::<f64>()
                .sqrt();
            if alpha_norm == 0.0 {
                continue;
            }
            let x0 = self[(k + 1, k)];
            let phase = if x0.norm() == 0.0 {
                ONE
            } else {
                x0 / x0.norm()
            };
            // v = x + phase*|x| e1, H = I - 2 v v^H / (v^H v)
            let mut v: Vec<Complex64> = (k + 1..n).map(|i| self[(i, k)]).collect();
            v[0] += phase * alpha_norm;
            let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            if vnorm2 == 0.0 {
                continue;
            }
            // left: rows k+1.., all columns
            for j in 0..n {
                let mut s = ZERO;
                for (t, vi) in v.iter().enumerate() {
                    s += vi.conj() * self[(k + 1 + t, j)];
                }
                let f = s * (2.0 / vnorm2);
                for (t, vi) in v.iter().enumerate() {
                    let e = self[(k + 1 + t, j)] - vi * f;
                    self[(k + 1 + t, j)] = e;
                }
            }
            // right: columns k+1.., all rows
            for i in 0..n {
                let mut s = ZERO;
                for (t, vi) in v.iter().enumerate() {
                    s += self[(i, k + 1 + t)] * vi;
                }
                let f = s * (2.0 / vnorm2);
                for (t, vi) in v.iter().enumerate() {
                    let e = self[(i, k + 1 + t)] - f * vi.conj();
                    self[(i, k + 1 + t)] = e;
                }
            }
            for i in k + 2..n {
                self[(i, k)] = ZERO;
            }
        }
    }

    /// One explicit shifted QR step on the Hessenberg window `lo..=hi`.
    fn qr_sweep(&mut self, lo: usize, hi: usize, mu: Complex64) {
        for i in lo..=hi {
            self[(i, i)] -= mu;
        }
        let mut rots = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (c, s) = givens(self[(k, k)], self[(k + 1, k)]);
            for j in k..=hi {
                let a = self[(k, j)];
                let b = self[(k + 1, j)];
                self[(k, j)] = a * c + s * b;
                self[(k + 1, j)] = -s.conj() * a + b * c;
            }
            self[(k + 1, k)] = ZERO;
            rots.push((c, s));
        }
        for (t, &(c, s)) in rots.iter().enumerate() {
            let k = lo + t;
            for i in lo..=(k + 1).min(hi) {
                let a = self[(i, k)];
                let b = self[(i, k + 1)];
                self[(i, k)] = a * c + b * s.conj();
                self[(i, k + 1)] = -a * s + b * c;
            }
        }
        for i in lo..=hi {
            self[(i, i)] += mu;
        }
    }
}

/// Rotation `[[c, s], [-conj(s), c]]` with real `c` mapping `(a, b)` to `(r, 0)`.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let an = a.norm();
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, ZERO);
    }
    if an == 0.0 {
        return (0.0, b.conj() / bn);
    }
    let r = an.hypot(bn);
    (an / r, (a / an) * b.conj() / r)
}

/// Eigenvalue of `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let m1 = (a + d) * 0.5 + disc;
    let m2 = (a + d) * 0.5 - disc;
    if (m1 - d).norm() <= (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul<&CMatrix> for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
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

impl Sub<&CMatrix> for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}
