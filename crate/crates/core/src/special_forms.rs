//! Canonical forms of idempotent and square-zero matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::quaternion::Quaternion;
use crate::svd::svd;
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Idempotent,
    SquareZero,
}

/// Census of the direct summands: 2x2 blocks `[[1 or 0, b], [0, 0]]`,
/// then `[1]`s, then `[0]`s.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockSummary {
    pub kind: Kind,
    pub b_values: Vec<f64>,
    pub ones: usize,
    pub zeros: usize,
}

impl BlockSummary {
    pub fn size(&self) -> usize {
        (2 * self.b_values.len())
            .saturating_add(self.ones)
            .saturating_add(self.zeros)
    }

    /// Checks the summary's own invariants.
    pub fn is_valid(&self) -> bool {
        self.b_values.iter().all(|b| b.is_finite() && *b > 0.0)
            && self.b_values.windows(2).all(|w| w[0] >= w[1])
            && (self.kind == Kind::Idempotent || self.ones == 0)
    }
}

pub fn projector_canonical(a: &QMatrix, tol: &Tolerance) -> Result<(QMatrix, BlockSummary)> {
    square(a)?;
    let residual = (&(a * a) - a).frobenius();
    let nrm = a.frobenius();
    if residual > tol.eps_eig * (1.0 + nrm * nrm) {
        return Err(Error::NotIdempotent { residual });
    }
    reduce(a, Kind::Idempotent, tol)
}

pub fn square_zero_canonical(a: &QMatrix, tol: &Tolerance) -> Result<(QMatrix, BlockSummary)> {
    square(a)?;
    let residual = (a * a).frobenius();
    let nrm = a.frobenius();
    if residual > tol.eps_eig * nrm * nrm {
        return Err(Error::NotSquareZero { residual });
    }
    reduce(a, Kind::SquareZero, tol)
}

fn square(a: &QMatrix) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::BadShape(format!(
            "expected a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )))
    }
}

/// In a basis whose leading `r` vectors span range(A), both kinds take the
/// shape `[[I or 0, F12], [0, 0]]`; the SVD of `F12` finishes the job.
fn reduce(a: &QMatrix, kind: Kind, tol: &Tolerance) -> Result<(QMatrix, BlockSummary)> {
    let n = a.rows();
    let thr = tol.eps_rank * (1.0 + a.frobenius());
    let outer = svd(a, tol)?;
    let r = outer.rank_above(thr);
    let u0 = outer.u;
    let all: Vec<usize> = (0..n).collect();
    let u_r = u0.submatrix(&all, &(0..r).collect::<Vec<_>>());
    let u_p = u0.submatrix(&all, &(r..n).collect::<Vec<_>>());

    let (w1, w2, b_values) = if r == 0 || r == n {
        (QMatrix::identity(r), QMatrix::identity(n - r), vec![])
    } else {
        let f12 = &(&u_r.star() * a) * &u_p;
        let inner = svd(&f12, tol)?;
        let b: Vec<f64> = inner.sigma.iter().copied().filter(|s| *s > thr).collect();
        (inner.u, inner.v.star(), b)
    };
    let l = b_values.len();
    let u1 = &u_r * &w1;
    let u2 = &u_p * &w2;

    let mut order: Vec<Vec<Quaternion>> = Vec::with_capacity(n);
    for i in 0..l {
        order.push(u1.col(i));
        order.push(u2.col(i));
    }
    order.extend((l..r).map(|i| u1.col(i)));
    order.extend((l..n - r).map(|i| u2.col(i)));
    let u = QMatrix::from_cols(n, &order);

    let summary = match kind {
        Kind::Idempotent => BlockSummary {
            kind,
            b_values,
            ones: r - l,
            zeros: n - r - l,
        },
        Kind::SquareZero => BlockSummary {
            kind,
            b_values,
            ones: 0,
            zeros: n - 2 * l,
        },
    };
    Ok((u, summary))
}

/// The canonical representative of a summary: 2x2 blocks by descending `b`,
/// then the `[1]`s, then the `[0]`s.
pub fn assemble_blocks(summary: &BlockSummary) -> QMatrix {
    let n = summary.size();
    let mut m = QMatrix::zeros(n, n);
    let lead = match summary.kind {
        Kind::Idempotent => Quaternion::ONE,
        Kind::SquareZero => Quaternion::ZERO,
    };
    let mut b = summary.b_values.clone();
    b.sort_by(|x, y| y.total_cmp(x));
    let mut k = 0;
    for v in b {
        m[(k, k)] = lead;
        m[(k, k + 1)] = Quaternion::real(v);
        k += 2;
    }
    for _ in 0..summary.ones {
        m[(k, k)] = Quaternion::ONE;
        k += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &QMatrix, kind: Kind) -> BlockSummary {
        let tol = Tolerance::default();
        let (u, s) = match kind {
            Kind::Idempotent => projector_canonical(a, &tol).unwrap(),
            Kind::SquareZero => square_zero_canonical(a, &tol).unwrap(),
        };
        assert!(u.unitarity_residual() < 1e-12);
        let c = &(&u.star() * a) * &u;
        assert!(c.max_diff(&assemble_blocks(&s)) < 1e-12, "{c}");
        assert!(s.is_valid());
        s
    }

    #[test]
    fn projector_examples() {
        let s = check(
            &QMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 0.0]]),
            Kind::Idempotent,
        );
        assert_eq!((s.b_values.len(), s.ones, s.zeros), (1, 0, 0));
        assert!((s.b_values[0] - 1.0).abs() < 1e-14);

        let s = check(
            &QMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]),
            Kind::Idempotent,
        );
        assert_eq!((s.b_values.len(), s.ones, s.zeros), (0, 1, 1));

        let s = check(&QMatrix::identity(3), Kind::Idempotent);
        assert_eq!((s.b_values.len(), s.ones, s.zeros), (0, 3, 0));
    }

    #[test]
    fn square_zero_examples() {
        let mut a = QMatrix::zeros(2, 2);
        a[(0, 1)] = Quaternion::new(0.0, 1.0, 1.0, 0.0);
        let s = check(&a, Kind::SquareZero);
        assert_eq!(s.zeros, 0);
        assert!((s.b_values[0] - 2f64.sqrt()).abs() < 1e-14);

        let s = check(&QMatrix::zeros(3, 3), Kind::SquareZero);
        assert_eq!((s.b_values.len(), s.zeros), (0, 3));

        let a = QMatrix::from_real_rows(&[&[0.0, 2.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 0.0]]);
        let s = check(&a, Kind::SquareZero);
        assert_eq!(s.b_values, vec![2.0]);
        assert_eq!(s.zeros, 1);
    }

    #[test]
    fn assemble_examples() {
        let s = BlockSummary {
            kind: Kind::Idempotent,
            b_values: vec![2.0],
            ones: 1,
            zeros: 0,
        };
        assert_eq!(
            assemble_blocks(&s),
            QMatrix::from_real_rows(&[&[1.0, 2.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 1.0]])
        );
        let s = BlockSummary {
            kind: Kind::SquareZero,
            b_values: vec![],
            ones: 0,
            zeros: 2,
        };
        assert_eq!(assemble_blocks(&s), QMatrix::zeros(2, 2));
        let s = BlockSummary {
            kind: Kind::SquareZero,
            b_values: vec![1.0],
            ones: 0,
            zeros: 1,
        };
        assert_eq!(
            assemble_blocks(&s),
            QMatrix::from_real_rows(&[&[0.0, 1.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 0.0]])
        );
    }

    #[test]
    fn preconditions_enforced() {
        let tol = Tolerance::default();
        let a = QMatrix::from_real_rows(&[&[2.0]]);
        assert!(matches!(
            projector_canonical(&a, &tol),
            Err(Error::NotIdempotent { .. })
        ));
        assert!(matches!(
            square_zero_canonical(&a, &tol),
            Err(Error::NotSquareZero { .. })
        ));
    }

    #[test]
    fn quaternion_projector() {
        // Oblique projector onto span(e1) along span(e2 - j e1).
        let mut a = QMatrix::zeros(3, 3);
        a[(0, 0)] = Quaternion::ONE;
        a[(0, 1)] = Quaternion::J;
        a[(2, 2)] = Quaternion::ONE;
        assert!((&(&a * &a) - &a).frobenius() < 1e-15);
        let s = check(&a, Kind::Idempotent);
        assert_eq!((s.b_values.len(), s.ones, s.zeros), (1, 1, 0));
        assert!((s.b_values[0] - 1.0).abs() < 1e-14);
    }
}
