//! Right eigenvalues through the complex adjoint, and generalized kernels.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::quaternion::cmp_descending;
use crate::svd::svd;
use crate::tolerance::Tolerance;

/// One standard eigenvalue with its quaternion algebraic multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cluster {
    pub value: Complex64,
    pub multiplicity: usize,
    pub is_real: bool,
}

/// Standard eigenvalues with multiplicities, descending under `succeq`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenList {
    pub entries: Vec<(Complex64, usize)>,
}

impl EigenList {
    pub fn total(&self) -> usize {
        self.entries.iter().map(|e| e.1).sum()
    }

    /// Each eigenvalue repeated by its multiplicity.
    pub fn expanded(&self) -> Vec<Complex64> {
        self.entries
            .iter()
            .flat_map(|&(v, m)| std::iter::repeat(v).take(m))
            .collect()
    }
}

pub fn spectral_scale(a: &QMatrix) -> f64 {
    1.0 + a.frobenius()
}

pub fn right_eigenvalues(a: &QMatrix, tol: &Tolerance) -> Result<EigenList> {
    Ok(EigenList {
        entries: eigen_clusters(a, tol)?
            .into_iter()
            .map(|c| (c.value, c.multiplicity))
            .collect(),
    })
}

/// Clusters the eigenvalues of the complex adjoint into standard eigenvalues.
///
/// Eigenvalues of a Jordan block of size `k` scatter by roughly
/// `eps^(1/k)`, so a flat merge radius cannot both keep defective clusters
/// together and keep close simple eigenvalues apart. Clusters are split
/// top-down by single linkage with a radius matched to the largest block
/// the cluster could hold, and each candidate is accepted only if its
/// generalized eigenspace has the matching dimension.
pub fn eigen_clusters(a: &QMatrix, tol: &Tolerance) -> Result<Vec<Cluster>> {
    if !a.is_square() {
        return Err(Error::BadShape(format!(
            "eigenvalues need a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if a.rows() == 0 {
        return Ok(vec![]);
    }
    let chi = a.adjoint_complex();
    let folded: Vec<Complex64> = chi
        .eigenvalues()?
        .into_iter()
        .map(|z| if z.im < 0.0 { z.conj() } else { z })
        .collect();
    let ctx = Ctx {
        chi: QMatrix::from_complex(&chi),
        scale: spectral_scale(a),
        tol: *tol,
    };
    let q0 = (folded.len() + 1) / 2;
    let mut out = ctx.resolve(folded, q0)?;
    let t = tol.eps_eig * ctx.scale;
    out.sort_by(|x, y| cmp_descending(x.value, y.value, t));
    Ok(out)
}

struct Ctx {
    chi: QMatrix,
    scale: f64,
    tol: Tolerance,
}

impl Ctx {
    fn radius(&self, q: usize) -> f64 {
        self.tol.eps_eig.max(1e-12f64.powf(1.0 / q as f64)) * self.scale
    }

    fn resolve(&self, pts: Vec<Complex64>, q_cap: usize) -> Result<Vec<Cluster>> {
        let q = ((pts.len() + 1) / 2).min(q_cap).max(1);
        let comps = single_linkage(&pts, self.radius(q));
        if comps.len() > 1 {
            let mut out = Vec::new();
            for c in comps {
                out.extend(self.resolve(c, q)?);
            }
            return Ok(out);
        }
        if let Some(c) = self.accept(&pts, self.radius(q)) {
            return Ok(vec![c]);
        }
        if q > 1 {
            return self.resolve(pts, q - 1);
        }
        Err(Error::InconsistentSpectrum(format!(
            "cluster of {} adjoint eigenvalues near {} has no matching generalized eigenspace",
            pts.len(),
            mean(&pts)
        )))
    }

    fn accept(&self, pts: &[Complex64], radius: f64) -> Option<Cluster> {
        if pts.len() % 2 != 0 {
            return None;
        }
        let m = pts.len() / 2;
        let is_real = pts.iter().all(|z| z.im <= radius);
        let mu = mean(pts);
        let value = if is_real {
            Complex64::new(mu.re, 0.0)
        } else {
            mu
        };
        let expected = if is_real { 2 * m } else { m };
        let shifted = self.chi.shift(crate::Quaternion::from_complex(value));
        let layers = kernel_layers(&shifted, self.tol.eps_rank * self.scale, m).ok()?;
        let dim: usize = layers.iter().map(QMatrix::cols).sum();
        (dim == expected).then_some(Cluster {
            value,
            multiplicity: m,
            is_real,
        })
    }
}

fn mean(pts: &[Complex64]) -> Complex64 {
    pts.iter().sum::<Complex64>() / pts.len().max(1) as f64
}

fn single_linkage(pts: &[Complex64], radius: f64) -> Vec<Vec<Complex64>> {
    let n = pts.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for i in 0..n {
        for j in i + 1..n {
            if (pts[i] - pts[j]).norm() <= radius {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<(usize, Vec<Complex64>)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => g.1.push(pts[i]),
            None => groups.push((r, vec![pts[i]])),
        }
    }
    groups.into_iter().map(|g| g.1).collect()
}

/// Orthonormal layers of the generalized kernel of a square `m`.
///
/// Layer `l` (0-based) spans `ker m^(l+1)` minus `ker m^l`, so the first
/// `l+1` layers together are an orthonormal basis of `ker m^(l+1)`. Each
/// step solves `P m x = 0` with `P` the projector off the kernel found so
/// far, which avoids forming powers. Stops at `max_layers` or at the first
/// empty layer. Singular values at or below `threshold` count as zero.
pub fn kernel_layers(m: &QMatrix, threshold: f64, max_layers: usize) -> Result<Vec<QMatrix>> {
    let n = m.rows();
    let mut layers: Vec<QMatrix> = Vec::new();
    let mut basis = QMatrix::zeros(n, 0);
    let tol = Tolerance::default();
    for _ in 0..max_layers {
        let pm = &project_off(&basis, m);
        let ker = svd(pm, &tol)?.kernel(threshold);
        // New directions: the part of ker orthogonal to what we have.
        let resid = project_off(&basis, &ker);
        let new_dim = ker.cols().saturating_sub(basis.cols());
        if new_dim == 0 || resid.cols() == 0 {
            break;
        }
        let r = svd(&resid, &tol)?;
        let layer = r.u.submatrix(
            &(0..n).collect::<Vec<_>>(),
            &(0..new_dim).collect::<Vec<_>>(),
        );
        let mut cols: Vec<_> = (0..basis.cols()).map(|j| basis.col(j)).collect();
        cols.extend((0..layer.cols()).map(|j| layer.col(j)));
        basis = QMatrix::from_cols(n, &cols);
        layers.push(layer);
    }
    Ok(layers)
}

/// `(I - B B*) x` for orthonormal columns `B`.
pub fn project_off(b: &QMatrix, x: &QMatrix) -> QMatrix {
    if b.cols() == 0 {
        return x.clone();
    }
    x - &(b * &(&b.star() * x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Quaternion;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn examples() {
        let tol = Tolerance::default();
        let a = QMatrix::from_diag(&[Quaternion::I, Quaternion::new(1.0, 0.0, 0.0, 1.0)]);
        let e = right_eigenvalues(&a, &tol).unwrap();
        assert_eq!(e.entries.len(), 2);
        assert!((e.entries[0].0 - c(1.0, 1.0)).norm() < 1e-10);
        assert!((e.entries[1].0 - c(0.0, 1.0)).norm() < 1e-10);

        let j = QMatrix::from_real_rows(&[&[5.0, 1.0], &[0.0, 5.0]]);
        let e = right_eigenvalues(&j, &tol).unwrap();
        assert_eq!(e.entries.len(), 1);
        assert_eq!(e.entries[0].1, 2);
        assert!((e.entries[0].0 - c(5.0, 0.0)).norm() < 1e-10);
        assert_eq!(e.entries[0].0.im, 0.0);

        let d = QMatrix::from_real_rows(&[&[1.0, 0.0, 0.0], &[0.0, 3.0, 0.0], &[0.0, 0.0, 2.0]]);
        let e = right_eigenvalues(&d, &tol).unwrap();
        let vals: Vec<f64> = e.entries.iter().map(|x| x.0.re).collect();
        assert!(vals
            .iter()
            .zip([3.0, 2.0, 1.0])
            .all(|(a, b)| (a - b).abs() < 1e-10));
    }

    #[test]
    fn defective_nonreal_block() {
        let tol = Tolerance::default();
        let a = QMatrix::from_rows(vec![
            vec![Quaternion::I, Quaternion::ONE, Quaternion::J],
            vec![
                Quaternion::ZERO,
                Quaternion::I,
                Quaternion::new(0.5, 0.0, 1.0, 0.0),
            ],
            vec![Quaternion::ZERO, Quaternion::ZERO, Quaternion::I],
        ]);
        let cl = eigen_clusters(&a, &tol).unwrap();
        assert_eq!(cl.len(), 1);
        assert_eq!(cl[0].multiplicity, 3);
        assert!(!cl[0].is_real);
        assert!((cl[0].value - c(0.0, 1.0)).norm() < 1e-8);
    }

    #[test]
    fn conjugated_eigenvalue_standardized() {
        let tol = Tolerance::default();
        let a = QMatrix::from_diag(&[Quaternion::new(2.0, 0.0, -3.0, 4.0), Quaternion::real(-1.0)]);
        let e = right_eigenvalues(&a, &tol).unwrap();
        assert!((e.entries[0].0 - c(2.0, 5.0)).norm() < 1e-10);
        assert!((e.entries[1].0 - c(-1.0, 0.0)).norm() < 1e-10);
        assert_eq!(e.total(), 2);
    }

    #[test]
    fn layers_of_nilpotent() {
        // J3 + J1 at zero: kernel dims 2, 3, 4.
        let mut n = QMatrix::zeros(4, 4);
        n[(0, 1)] = Quaternion::ONE;
        n[(1, 2)] = Quaternion::ONE;
        let l = kernel_layers(&n, 1e-10, 4).unwrap();
        let dims: Vec<usize> = l.iter().map(QMatrix::cols).collect();
        assert_eq!(dims, vec![2, 1, 1]);
    }
}
