//! Singular value decomposition by one-sided Jacobi on quaternion columns.

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::matrix::{inner, vnorm, QMatrix};
use crate::qr::complete_basis;
use crate::quaternion::Quaternion;
use crate::tolerance::Tolerance;

const MAX_SWEEPS: usize = 100;

/// `A = U diag(sigma) V` with `U` (m x m) and `V` (n x n) unitary and
/// `sigma` (length min(m, n)) descending.
#[derive(Debug, Clone, PartialEq)]
pub struct SVDResult {
    pub u: QMatrix,
    pub v: QMatrix,
    pub sigma: Vec<f64>,
}

impl SVDResult {
    /// The `m x n` diagonal factor.
    pub fn sigma_matrix(&self) -> QMatrix {
        let mut s = QMatrix::zeros(self.u.cols(), self.v.rows());
        for (i, v) in self.sigma.iter().enumerate() {
            s[(i, i)] = Quaternion::real(*v);
        }
        s
    }

    pub fn reconstruct(&self) -> QMatrix {
        &(&self.u * &self.sigma_matrix()) * &self.v
    }

    /// Number of singular values above `threshold`.
    pub fn rank_above(&self, threshold: f64) -> usize {
        self.sigma.iter().filter(|s| **s > threshold).count()
    }

    /// Orthonormal basis (as columns) of the kernel, treating singular values
    /// at or below `threshold` as zero.
    pub fn kernel(&self, threshold: f64) -> QMatrix {
        let n = self.v.rows();
        let r = self.rank_above(threshold);
        let vs = self.v.star();
        let cols: Vec<usize> = (r..n).collect();
        vs.submatrix(&(0..n).collect::<Vec<_>>(), &cols)
    }

    /// Orthonormal basis (as columns) of the range.
    pub fn range(&self, threshold: f64) -> QMatrix {
        let m = self.u.rows();
        let r = self.rank_above(threshold);
        self.u
            .submatrix(&(0..m).collect::<Vec<_>>(), &(0..r).collect::<Vec<_>>())
    }
}

/// Full SVD. `tol` is unused by the iteration itself (it runs to machine
/// precision) but kept for a uniform signature.
pub fn svd(a: &QMatrix, _tol: &Tolerance) -> Result<SVDResult> {
    if a.rows() < a.cols() {
        let t = jacobi(&a.star())?;
        return Ok(SVDResult {
            u: t.v.star(),
            v: t.u.star(),
            sigma: t.sigma,
        });
    }
    jacobi(a)
}

fn jacobi(a: &QMatrix) -> Result<SVDResult> {
    let (m, n) = (a.rows(), a.cols());
    let mut w: Vec<Vec<Quaternion>> = (0..n).map(|j| a.col(j)).collect();
    let mut vacc: Vec<Vec<Quaternion>> = (0..n)
        .map(|j| {
            let mut e = vec![Quaternion::ZERO; n];
            e[j] = Quaternion::ONE;
            e
        })
        .collect();
    let eps = f64::EPSILON;
    // columns this small are zero to working precision and never rotated
    let tiny = (eps * a.frobenius()).powi(2);
    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = vnorm(&w[p]).powi(2);
                let beta = vnorm(&w[q]).powi(2);
                let gamma = inner(&w[p], &w[q]);
                let g = gamma.norm();
                if g == 0.0 || alpha <= tiny || beta <= tiny || g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let ubar = (gamma * (1.0 / g)).conj();
                for x in w[q].iter_mut() {
                    *x = *x * ubar;
                }
                for x in vacc[q].iter_mut() {
                    *x = *x * ubar;
                }
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut w, p, q, c, s);
                rotate(&mut vacc, p, q, c, s);
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::NoConvergence {
            routine: "one-sided Jacobi",
            limit: MAX_SWEEPS,
        });
    }

    let mut order: Vec<(f64, usize)> = w.iter().enumerate().map(|(j, c)| (vnorm(c), j)).collect();
    order.sort_by(|x, y| y.0.total_cmp(&x.0));
    let sigma: Vec<f64> = order.iter().map(|o| o.0).collect();
    let smax = sigma.first().copied().unwrap_or(0.0);
    let cutoff = (m.max(n) as f64) * eps * smax;
    let mut ucols = Vec::new();
    for &(s, j) in &order {
        if s > cutoff && s > 0.0 {
            ucols.push(w[j].iter().map(|x| *x / s).collect());
        }
    }
    let u = complete_basis(&QMatrix::from_cols(m, &ucols));
    let vperm: Vec<Vec<Quaternion>> = order.iter().map(|&(_, j)| vacc[j].clone()).collect();
    let v = QMatrix::from_cols(n, &vperm).star();
    Ok(SVDResult { u, v, sigma })
}

fn rotate(cols: &mut [Vec<Quaternion>], p: usize, q: usize, c: f64, s: f64) {
    let (lo, hi) = cols.split_at_mut(q);
    for (xp, xq) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
        let (a, b) = (*xp, *xq);
        *xp = a * c - b * s;
        *xq = a * s + b * c;
    }
}

/// SVD of a complex matrix, carried out in the complex subalgebra. The
/// factors stay complex because every Jacobi step does.
pub fn svd_complex(a: &CMatrix) -> Result<(CMatrix, Vec<f64>, CMatrix)> {
    let r = svd(&QMatrix::from_complex(a), &Tolerance::default())?;
    Ok((r.u.to_complex(), r.sigma, r.v.to_complex()))
}

/// Orthonormal kernel basis (as columns) of a complex matrix.
pub fn kernel_complex(a: &CMatrix, threshold: f64) -> Result<CMatrix> {
    let r = svd(&QMatrix::from_complex(a), &Tolerance::default())?;
    Ok(r.kernel(threshold).to_complex())
}

/// Numerical rank of a complex matrix via singular values.
pub fn rank_complex(a: &CMatrix, threshold: f64) -> Result<usize> {
    let r = svd(&QMatrix::from_complex(a), &Tolerance::default())?;
    Ok(r.rank_above(threshold))
}
