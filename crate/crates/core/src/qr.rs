//! Gram-Schmidt QR over the quaternions.

use crate::error::{Error, Result};
use crate::matrix::{inner, vnorm, QMatrix};
use crate::quaternion::Quaternion;
use crate::tolerance::Tolerance;

/// `S = Q R` with `Q` having orthonormal columns and `R` upper triangular
/// with positive real diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct QRResult {
    pub q: QMatrix,
    pub r: QMatrix,
}

/// Modified Gram-Schmidt with one reorthogonalization pass per column.
///
/// Accepts tall matrices (`cols <= rows`); for square `S` the factor `Q`
/// is unitary.
pub fn gram_schmidt_qr(s: &QMatrix, tol: &Tolerance) -> Result<QRResult> {
    let (m, n) = (s.rows(), s.cols());
    if n > m {
        return Err(Error::BadShape(format!(
            "QR needs cols <= rows, got {m}x{n}"
        )));
    }
    let mut q_cols: Vec<Vec<Quaternion>> = Vec::with_capacity(n);
    let mut r = QMatrix::zeros(n, n);
    for j in 0..n {
        let mut v = s.col(j);
        let scale = vnorm(&v);
        for _pass in 0..2 {
            for (i, qi) in q_cols.iter().enumerate() {
                let c = inner(qi, &v);
                for (vk, qk) in v.iter_mut().zip(qi) {
                    *vk -= *qk * c;
                }
                r[(i, j)] += c;
            }
        }
        let res = vnorm(&v);
        if !(res > tol.eps_rank * scale) {
            return Err(Error::SingularInput {
                column: j,
                residual: res,
            });
        }
        r[(j, j)] = Quaternion::real(res);
        q_cols.push(v.iter().map(|x| *x / res).collect());
    }
    Ok(QRResult {
        q: QMatrix::from_cols(m, &q_cols),
        r,
    })
}

/// Extends orthonormal columns to a unitary matrix. New columns come from
/// the standard basis vectors with the largest residuals.
pub fn complete_basis(q: &QMatrix) -> QMatrix {
    let m = q.rows();
    let mut cols: Vec<Vec<Quaternion>> = (0..q.cols()).map(|j| q.col(j)).collect();
    while cols.len() < m {
        let mut best: Option<(f64, Vec<Quaternion>)> = None;
        for e in 0..m {
            let mut v = vec![Quaternion::ZERO; m];
            v[e] = Quaternion::ONE;
            orthogonalize(&mut v, &cols);
            let n = vnorm(&v);
            if best.as_ref().map_or(true, |(b, _)| n > *b) {
                best = Some((n, v));
            }
        }
        let (n, v) = best.expect("m > 0 here");
        cols.push(v.iter().map(|x| *x / n).collect());
    }
    QMatrix::from_cols(m, &cols)
}

/// Projects `v` onto the orthogonal complement of orthonormal `basis`, twice.
pub fn orthogonalize(v: &mut [Quaternion], basis: &[Vec<Quaternion>]) {
    for _ in 0..2 {
        for b in basis {
            let c = inner(b, v);
            for (vk, bk) in v.iter_mut().zip(b) {
                *vk -= *bk * c;
            }
        }
    }
}
