//! Weyr characteristic, modified Jordan matrices and the strengthened Schur
//! form for matrices with real spectrum.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{vnorm, QMatrix};
use crate::qr::gram_schmidt_qr;
use crate::quaternion::Quaternion;
use crate::spectrum::{eigen_clusters, kernel_layers, project_off, spectral_scale, EigenList};
use crate::svd::svd;
use crate::tolerance::Tolerance;

/// A decreasingly ordered list of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::BadShape(format!(
                "partition must be decreasing and positive: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }
}

/// `r_i = #{j : m_j >= i}`.
pub fn conjugate_partition(m: &Partition) -> Partition {
    let top = m.parts.first().copied().unwrap_or(0);
    Partition {
        parts: (1..=top)
            .map(|i| m.parts.iter().filter(|&&p| p >= i).count())
            .collect(),
    }
}

/// Weyr characteristic of `A` at the real eigenvalue `lambda`:
/// `r_l = dim ker (A - lambda)^l - dim ker (A - lambda)^(l-1)`.
pub fn weyr_characteristic(a: &QMatrix, lambda: f64, tol: &Tolerance) -> Result<Partition> {
    let layers = kernel_layers(
        &a.shift(Quaternion::real(lambda)),
        tol.eps_rank * spectral_scale(a),
        a.rows(),
    )?;
    if layers.is_empty() {
        return Err(Error::NotAnEigenvalue { lambda });
    }
    Partition::new(layers.iter().map(QMatrix::cols).collect())
}

/// Block matrix with diagonal blocks `lambda I_{r_l}` and `[I; 0]` on the
/// first block superdiagonal inside each eigenvalue's run.
pub fn modified_jordan(eigs: &EigenList, weyrs: &[Vec<usize>]) -> Result<QMatrix> {
    if eigs.entries.len() != weyrs.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} eigenvalues but {} Weyr lists",
            eigs.entries.len(),
            weyrs.len()
        )));
    }
    let mut blocks = Vec::new();
    for (&(lambda, mult), w) in eigs.entries.iter().zip(weyrs) {
        let p = Partition::new(w.clone())?;
        if p.total() != mult {
            return Err(Error::ShapeMismatch(format!(
                "Weyr list {w:?} does not sum to multiplicity {mult}"
            )));
        }
        let n = p.total();
        let mut b = QMatrix::from_diag(&vec![Quaternion::from_complex(lambda); n]);
        let mut off = 0;
        for l in 0..w.len().saturating_sub(1) {
            for k in 0..w[l + 1] {
                b[(off + k, off + w[l] + k)] = Quaternion::ONE;
            }
            off += w[l];
        }
        blocks.push(b);
    }
    Ok(QMatrix::direct_sum(&blocks))
}

/// `U* A U = F` with `F` block upper triangular, diagonal blocks
/// `lambdas[i] I_{sizes[i]}`, and positive-diagonal upper triangular
/// `F_{i,i+1}` whenever `lambdas[i] = lambdas[i+1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchurRealForm {
    #[serde(rename = "U")]
    pub u: QMatrix,
    #[serde(rename = "F")]
    pub f: QMatrix,
    pub lambdas: Vec<f64>,
    pub sizes: Vec<usize>,
}

impl SchurRealForm {
    pub fn offsets(&self) -> Vec<usize> {
        offsets(&self.sizes)
    }
}

fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut o = vec![0];
    for s in sizes {
        o.push(o.last().unwrap() + s);
    }
    o
}

pub fn strengthened_schur(a: &QMatrix, tol: &Tolerance) -> Result<SchurRealForm> {
    if !a.is_square() {
        return Err(Error::BadShape(format!(
            "Schur form needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let scale = spectral_scale(a);
    let clusters = eigen_clusters(a, tol)?;
    if let Some(c) = clusters.iter().find(|c| !c.is_real) {
        return Err(Error::NonRealSpectrum {
            re: c.value.re,
            im: c.value.im,
        });
    }

    let mut s_cols: Vec<Vec<Quaternion>> = Vec::with_capacity(n);
    let mut lambdas = Vec::new();
    let mut sizes = Vec::new();
    for c in &clusters {
        let lambda = c.value.re;
        let m = a.shift(Quaternion::real(lambda));
        let layers = kernel_layers(&m, tol.eps_rank * scale, c.multiplicity)?;
        let weyr: Vec<usize> = layers.iter().map(QMatrix::cols).collect();
        if weyr.iter().sum::<usize>() != c.multiplicity {
            return Err(Error::InconsistentSpectrum(format!(
                "generalized eigenspace at {lambda} has dimension {} but multiplicity {}",
                weyr.iter().sum::<usize>(),
                c.multiplicity
            )));
        }
        for group in layered_chains(&m, &layers)? {
            lambdas.push(lambda);
            sizes.push(group.len());
            s_cols.extend(group);
        }
    }

    let s = QMatrix::from_cols(n, &s_cols);
    let u = gram_schmidt_qr(&s, tol)?.q;
    let mut f = &(&u.star() * a) * &u;
    snap_form(&mut f, &lambdas, &sizes, tol.eps_eig * a.frobenius())?;
    Ok(SchurRealForm {
        u,
        f,
        lambdas,
        sizes,
    })
}

/// Vectors for each Weyr layer, bottom layer first. Layer `l` starts with
/// the images under `m` of layer `l+1`, then is completed inside
/// `ker m^l` orthogonally to `ker m^(l-1)` and those images.
fn layered_chains(m: &QMatrix, layers: &[QMatrix]) -> Result<Vec<Vec<Vec<Quaternion>>>> {
    let s = layers.len();
    let n = m.rows();
    let mut below: Vec<QMatrix> = Vec::with_capacity(s);
    let mut acc = QMatrix::zeros(n, 0);
    for l in layers {
        below.push(acc.clone());
        acc = hcat(&acc, l);
    }
    let mut groups: Vec<Vec<Vec<Quaternion>>> = vec![Vec::new(); s];
    for l in (0..s).rev() {
        let mut group: Vec<Vec<Quaternion>> = Vec::new();
        if l + 1 < s {
            for v in &groups[l + 1] {
                group.push(m * v.as_slice());
            }
        }
        let want = layers[l].cols().checked_sub(group.len()).ok_or_else(|| {
            Error::InconsistentSpectrum(format!(
                "kernel layer dimensions not decreasing at layer {l}"
            ))
        })?;
        if want > 0 {
            let mut known = below[l].clone();
            for v in &group {
                let mut w = v.clone();
                let cols: Vec<Vec<Quaternion>> = (0..known.cols()).map(|j| known.col(j)).collect();
                crate::qr::orthogonalize(&mut w, &cols);
                let nw = vnorm(&w);
                if nw > 0.0 {
                    let unit: Vec<Quaternion> = w.iter().map(|x| *x / nw).collect();
                    known = hcat(&known, &QMatrix::from_cols(n, &[unit]));
                }
            }
            let resid = project_off(&known, &layers[l]);
            let r = svd(&resid, &Tolerance::default())?;
            for j in 0..want {
                group.push(normalize_phase(r.u.col(j)));
            }
        }
        groups[l] = group;
    }
    Ok(groups)
}

/// Rotates `v` on the right so its first largest-modulus entry is positive real.
pub fn normalize_phase(v: Vec<Quaternion>) -> Vec<Quaternion> {
    let big = v.iter().map(Quaternion::norm).fold(0.0, f64::max);
    match v.iter().find(|q| q.norm() >= big * (1.0 - 1e-9)) {
        Some(p) if big > 0.0 => {
            let ph = p.unit().conj();
            v.into_iter().map(|x| x * ph).collect()
        }
        _ => v,
    }
}

fn hcat(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let mut cols: Vec<Vec<Quaternion>> = (0..a.cols()).map(|j| a.col(j)).collect();
    cols.extend((0..b.cols()).map(|j| b.col(j)));
    QMatrix::from_cols(a.rows().max(b.rows()), &cols)
}

/// Writes the exact pattern into `f`; refuses if that moves `f` by more
/// than `bound` in Frobenius norm.
fn snap_form(f: &mut QMatrix, lambdas: &[f64], sizes: &[usize], bound: f64) -> Result<()> {
    let off = offsets(sizes);
    let mut g = f.clone();
    for bi in 0..sizes.len() {
        for bj in 0..sizes.len() {
            for i in off[bi]..off[bi + 1] {
                for j in off[bj]..off[bj + 1] {
                    let e = &mut g[(i, j)];
                    if bi > bj {
                        *e = Quaternion::ZERO;
                    } else if bi == bj {
                        *e = if i == j {
                            Quaternion::real(lambdas[bi])
                        } else {
                            Quaternion::ZERO
                        };
                    } else if bj == bi + 1 && lambdas[bi] == lambdas[bj] {
                        let (li, lj) = (i - off[bi], j - off[bj]);
                        if li > lj {
                            *e = Quaternion::ZERO;
                        } else if li == lj {
                            *e = Quaternion::real(e.w);
                        }
                    }
                }
            }
        }
    }
    let moved = (&g - f).frobenius();
    if moved > bound {
        return Err(Error::ChainFailure(format!(
            "Schur form off its pattern by {moved:e} (allowed {bound:e})"
        )));
    }
    *f = g;
    Ok(())
}

/// Shape predicates of the strengthened Schur form, with every comparison
/// made up to `thr` (use 0 for exact checks). The diagonal of each
/// `F_{i,i+1}` on an equal-eigenvalue run must exceed `positive`.
pub fn has_form_shape(
    f: &QMatrix,
    lambdas: &[f64],
    sizes: &[usize],
    thr: f64,
    positive: f64,
) -> bool {
    if lambdas.len() != sizes.len() || sizes.iter().sum::<usize>() != f.rows() || !f.is_square() {
        return false;
    }
    if lambdas.windows(2).any(|w| w[0] < w[1]) {
        return false;
    }
    let off = offsets(sizes);
    for bi in 0..sizes.len() {
        for bj in 0..sizes.len() {
            for i in off[bi]..off[bi + 1] {
                for j in off[bj]..off[bj + 1] {
                    let e = f[(i, j)];
                    let ok = if bi > bj {
                        e.norm() <= thr
                    } else if bi == bj {
                        let target = if i == j { lambdas[bi] } else { 0.0 };
                        e.dist(&Quaternion::real(target)) <= thr
                    } else if bj == bi + 1 && lambdas[bi] == lambdas[bj] {
                        let (li, lj) = (i - off[bi], j - off[bj]);
                        if li > lj {
                            e.norm() <= thr
                        } else if li == lj {
                            e.imag_norm() <= thr && e.w > positive
                        } else {
                            true
                        }
                    } else {
                        true
                    };
                    if !ok {
                        return false;
                    }
                }
            }
        }
    }
    lambdas
        .windows(2)
        .zip(sizes.windows(2))
        .all(|(l, s)| l[0] != l[1] || s[0] >= s[1])
}

/// True iff `V` is block diagonal conformal with `form.sizes` and `V* F V`
/// again has the form's shape with the same diagonal blocks.
pub fn verify_block_diag_stabilizer(form: &SchurRealForm, v: &QMatrix, tol: &Tolerance) -> bool {
    let n = form.f.rows();
    if v.rows() != n || v.cols() != n {
        return false;
    }
    let thr = tol.eps_canon * (1.0 + form.f.frobenius());
    let off = form.offsets();
    let block_of = |i: usize| off.iter().rposition(|&o| o <= i).unwrap();
    for i in 0..n {
        for j in 0..n {
            if block_of(i) != block_of(j) && v[(i, j)].norm() > thr {
                return false;
            }
        }
    }
    let g = &(&v.star() * &form.f) * v;
    has_form_shape(&g, &form.lambdas, &form.sizes, thr, tol.eps_canon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(conjugate_partition(&p(&[3, 2, 2])), p(&[3, 3, 1]));
        assert_eq!(conjugate_partition(&p(&[1])), p(&[1]));
        assert_eq!(conjugate_partition(&p(&[2, 2])), p(&[2, 2]));
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn weyr_examples() {
        let tol = Tolerance::default();
        let mut a = QMatrix::zeros(4, 4);
        a[(0, 1)] = Quaternion::ONE;
        a[(1, 2)] = Quaternion::ONE;
        assert_eq!(weyr_characteristic(&a, 0.0, &tol).unwrap(), p(&[2, 1, 1]));
        assert_eq!(
            weyr_characteristic(&QMatrix::zeros(3, 3), 0.0, &tol).unwrap(),
            p(&[3])
        );
        let j = QMatrix::from_real_rows(&[&[5.0, 1.0], &[0.0, 5.0]]);
        assert_eq!(weyr_characteristic(&j, 5.0, &tol).unwrap(), p(&[1, 1]));
        assert!(matches!(
            weyr_characteristic(&j, 4.0, &tol),
            Err(Error::NotAnEigenvalue { .. })
        ));
    }

    #[test]
    fn modified_jordan_examples() {
        let zero = |m| EigenList {
            entries: vec![(Complex64::new(0.0, 0.0), m)],
        };
        let b = modified_jordan(&zero(3), &[vec![2, 1]]).unwrap();
        assert_eq!(
            b,
            QMatrix::from_real_rows(&[&[0.0, 0.0, 1.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 0.0]])
        );
        let five = EigenList {
            entries: vec![(Complex64::new(5.0, 0.0), 1)],
        };
        assert_eq!(
            modified_jordan(&five, &[vec![1]]).unwrap(),
            QMatrix::from_real_rows(&[&[5.0]])
        );
        let b = modified_jordan(&zero(2), &[vec![1, 1]]).unwrap();
        assert_eq!(b, QMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]));
        assert!(matches!(
            modified_jordan(&zero(3), &[vec![1, 2]]),
            Err(Error::BadShape(_))
        ));
    }

    #[test]
    fn schur_examples() {
        let tol = Tolerance::default();
        let a = QMatrix::from_real_rows(&[&[5.0, 4.0], &[0.0, 5.0]]);
        let s = strengthened_schur(&a, &tol).unwrap();
        assert_eq!(s.f, a);
        assert!(s.u.max_diff(&QMatrix::identity(2)) < 1e-14);
        assert_eq!(
            (s.lambdas.clone(), s.sizes.clone()),
            (vec![5.0, 5.0], vec![1, 1])
        );

        let a = QMatrix::from_rows(vec![
            vec![Quaternion::ZERO, Quaternion::ZERO],
            vec![Quaternion::J, Quaternion::ZERO],
        ]);
        let s = strengthened_schur(&a, &tol).unwrap();
        assert!(s.f.max_diff(&QMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]])) < 1e-14);
        assert!((&(&s.u.star() * &a) * &s.u).max_diff(&s.f) < 1e-14);

        let a = QMatrix::from_real_rows(&[&[2.0, 0.0], &[0.0, 1.0]]);
        let s = strengthened_schur(&a, &tol).unwrap();
        assert_eq!(s.f, a);
        assert_eq!(s.sizes, vec![1, 1]);
    }

    #[test]
    fn schur_rejects_nonreal() {
        let a = QMatrix::from_diag(&[Quaternion::I, Quaternion::ONE]);
        assert!(matches!(
            strengthened_schur(&a, &Tolerance::default()),
            Err(Error::NonRealSpectrum { .. })
        ));
    }

    #[test]
    fn stabilizer_examples() {
        let tol = Tolerance::default();
        let a = QMatrix::from_real_rows(&[&[5.0, 4.0], &[0.0, 5.0]]);
        let form = strengthened_schur(&a, &tol).unwrap();
        assert!(verify_block_diag_stabilizer(
            &form,
            &QMatrix::identity(2),
            &tol
        ));
        let swap = QMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        assert!(!verify_block_diag_stabilizer(&form, &swap, &tol));
        // A diagonal unitary is conformal but breaks the positive diagonal
        // of F_12 unless both phases agree.
        let v = QMatrix::from_diag(&[Quaternion::J, Quaternion::J]);
        assert!(verify_block_diag_stabilizer(&form, &v, &tol));
        let v = QMatrix::from_diag(&[Quaternion::J, Quaternion::ONE]);
        assert!(!verify_block_diag_stabilizer(&form, &v, &tol));
    }

    #[test]
    fn mixed_jordan_structure() {
        // J3(0) + J1(0) + [2], scrambled by a permutation and a phase.
        let tol = Tolerance::default();
        let eigs = EigenList {
            entries: vec![(Complex64::new(2.0, 0.0), 1), (Complex64::new(0.0, 0.0), 4)],
        };
        let b = modified_jordan(&eigs, &[vec![1], vec![2, 1, 1]]).unwrap();
        let w = QMatrix::from_rows(vec![
            vec![
                Quaternion::ZERO,
                Quaternion::J,
                Quaternion::ZERO,
                Quaternion::ZERO,
                Quaternion::ZERO,
            ],
            vec![
                Quaternion::ZERO,
                Quaternion::ZERO,
                Quaternion::ZERO,
                Quaternion::I,
                Quaternion::ZERO,
            ],
            vec![
                Quaternion::K,
                Quaternion::ZERO,
                Quaternion::ZERO,
                Quaternion::ZERO,
                Quaternion::ZERO,
            ],
            vec![
                Quaternion::ZERO,
                Quaternion::ZERO,
                Quaternion::ZERO,
                Quaternion::ZERO,
                Quaternion::ONE,
            ],
            vec![
                Quaternion::ZERO,
                Quaternion::ZERO,
                Quaternion::ONE,
                Quaternion::ZERO,
                Quaternion::ZERO,
            ],
        ]);
        let a = &(&w.star() * &b) * &w;
        let s = strengthened_schur(&a, &tol).unwrap();
        assert_eq!(s.lambdas, vec![2.0, 0.0, 0.0, 0.0]);
        assert_eq!(s.sizes, vec![1, 2, 1, 1]);
        assert!((&(&s.u.star() * &a) * &s.u).max_diff(&s.f) < 1e-12);
        assert!(has_form_shape(
            &s.f,
            &s.lambdas,
            &s.sizes,
            0.0,
            tol.eps_canon
        ));
    }
}
