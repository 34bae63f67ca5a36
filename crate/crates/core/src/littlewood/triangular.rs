//! Nonderogatory check and unitary triangularization with sorted diagonal.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{vec_from_complex, QMatrix};
use crate::qr::gram_schmidt_qr;
use crate::quaternion::Quaternion;
use crate::spectrum::{eigen_clusters, kernel_layers, spectral_scale, Cluster};
use crate::tolerance::Tolerance;

/// `U* A U = T` with `T` upper triangular, standard eigenvalues on the
/// diagonal in descending order, and `z1(t_{l,l+1}) != 0` on equal runs.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularForm {
    pub u: QMatrix,
    pub t: QMatrix,
    pub diag: Vec<Complex64>,
}

/// Snap radius used for discrete decisions on entries.
pub fn canon_threshold(a: &QMatrix, tol: &Tolerance) -> f64 {
    tol.eps_canon * spectral_scale(a)
}

pub fn is_nonderogatory(a: &QMatrix, tol: &Tolerance) -> Result<bool> {
    Ok(derogatory_witness(a, &eigen_clusters(a, tol)?, tol)?.is_none())
}

fn derogatory_witness(a: &QMatrix, clusters: &[Cluster], tol: &Tolerance) -> Result<Option<Error>> {
    let chi = QMatrix::from_complex(&a.adjoint_complex());
    let thr = tol.eps_rank * spectral_scale(a);
    for c in clusters {
        let m = chi.shift(Quaternion::from_complex(c.value));
        let g = kernel_layers(&m, thr, 1)?.first().map_or(0, QMatrix::cols);
        let want = if c.is_real { 2 } else { 1 };
        if g != want {
            return Ok(Some(Error::Derogatory {
                re: c.value.re,
                im: c.value.im,
                geometric: if c.is_real { g / 2 } else { g },
            }));
        }
    }
    Ok(None)
}

pub fn triangularize(a: &QMatrix, tol: &Tolerance) -> Result<TriangularForm> {
    if !a.is_square() {
        return Err(Error::BadShape(format!(
            "triangularization needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let clusters = eigen_clusters(a, tol)?;
    if let Some(e) = derogatory_witness(a, &clusters, tol)? {
        return Err(e);
    }
    let delta = canon_threshold(a, tol);
    if let Some(diag) = already_triangular(a, &clusters, delta) {
        return Ok(TriangularForm {
            u: QMatrix::identity(n),
            t: a.clone(),
            diag,
        });
    }

    let chi = QMatrix::from_complex(&a.adjoint_complex());
    let thr = tol.eps_rank * spectral_scale(a);
    let mut cols: Vec<Vec<Quaternion>> = Vec::with_capacity(n);
    let mut diag = Vec::with_capacity(n);
    for c in &clusters {
        let m = chi.shift(Quaternion::from_complex(c.value));
        let layers = kernel_layers(&m, thr, c.multiplicity)?;
        if layers.len() != c.multiplicity {
            return Err(Error::ChainFailure(format!(
                "expected a chain of length {} at {}, found {}",
                c.multiplicity,
                c.value,
                layers.len()
            )));
        }
        // A unit vector of the top layer generates the whole chain.
        let mut x: Vec<Quaternion> = layers.last().unwrap().col(0);
        let mut chain = Vec::with_capacity(c.multiplicity);
        for _ in 0..c.multiplicity {
            chain.push(vec_from_complex(&complex_part(&x)));
            x = &m * x.as_slice();
        }
        chain.reverse();
        cols.extend(chain);
        diag.extend(std::iter::repeat(c.value).take(c.multiplicity));
    }

    let s = QMatrix::from_cols(n, &cols);
    let u = gram_schmidt_qr(&s, tol)?.q;
    let mut t = &(&u.star() * a) * &u;
    let bound = tol.eps_eig * spectral_scale(a);
    for i in 0..n {
        let d = t[(i, i)].dist(&Quaternion::from_complex(diag[i]));
        if d > bound {
            return Err(Error::ChainFailure(format!(
                "diagonal entry {} off its eigenvalue by {d:e}",
                i + 1
            )));
        }
        t[(i, i)] = Quaternion::from_complex(diag[i]);
        for j in 0..i {
            let e = t[(i, j)].norm();
            if e > bound {
                return Err(Error::ChainFailure(format!(
                    "entry ({}, {}) below the diagonal is {e:e}",
                    i + 1,
                    j + 1
                )));
            }
            t[(i, j)] = Quaternion::ZERO;
        }
    }
    for l in 0..n.saturating_sub(1) {
        if diag[l] == diag[l + 1] && t[(l, l + 1)].split().z1.norm() <= delta {
            return Err(Error::ChainFailure(format!(
                "entry ({}, {}) lies in Cj on an equal-eigenvalue run",
                l + 1,
                l + 2
            )));
        }
    }
    Ok(TriangularForm { u, t, diag })
}

/// Quaternion entries of a complex-embedded vector back to complex numbers.
fn complex_part(x: &[Quaternion]) -> Vec<Complex64> {
    x.iter().map(|q| Complex64::new(q.w, q.x)).collect()
}

/// The diagonal if `a` is already upper triangular with a standard diagonal
/// whose runs match the computed clusters in order, and the `Cj` condition
/// holds.
fn already_triangular(a: &QMatrix, clusters: &[Cluster], delta: f64) -> Option<Vec<Complex64>> {
    if !a.is_upper_triangular() {
        return None;
    }
    let n = a.rows();
    let mut diag = Vec::with_capacity(n);
    for q in a.diag() {
        if q.y != 0.0 || q.z != 0.0 || q.x < 0.0 {
            return None;
        }
        diag.push(Complex64::new(q.w, q.x));
    }
    let mut runs: Vec<(Complex64, usize)> = Vec::new();
    for d in &diag {
        match runs.last_mut() {
            Some(r) if r.0 == *d => r.1 += 1,
            _ => runs.push((*d, 1)),
        }
    }
    if runs.len() != clusters.len()
        || runs
            .iter()
            .zip(clusters)
            .any(|(r, c)| r.1 != c.multiplicity || (r.0 - c.value).norm() > delta)
    {
        return None;
    }
    for l in 0..n.saturating_sub(1) {
        if diag[l] == diag[l + 1] && a[(l, l + 1)].split().z1.norm() <= delta {
            return None;
        }
    }
    Some(diag)
}
