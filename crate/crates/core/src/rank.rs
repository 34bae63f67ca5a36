//! Numerical rank by quaternion row reduction.

use crate::matrix::QMatrix;
use crate::quaternion::Quaternion;
use crate::tolerance::Tolerance;

/// Rank with pivots below `eps_rank * |A|_F` counted as zero.
pub fn rank(a: &QMatrix, tol: &Tolerance) -> usize {
    rank_scaled(a, a.frobenius(), tol)
}

/// Rank with pivots below `eps_rank * scale` counted as zero. Used when a
/// matrix is known to be a product whose natural size differs from its own
/// norm, such as powers of a nilpotent.
pub fn rank_scaled(a: &QMatrix, scale: f64, tol: &Tolerance) -> usize {
    let threshold = tol.eps_rank * scale;
    let (m, n) = (a.rows(), a.cols());
    let mut w = a.clone();
    let mut rows: Vec<usize> = (0..m).collect();
    let mut cols: Vec<usize> = (0..n).collect();
    let mut r = 0;
    while r < m.min(n) {
        let mut best = (0.0, r, r);
        for (ii, &i) in rows.iter().enumerate().skip(r) {
            for (jj, &j) in cols.iter().enumerate().skip(r) {
                let v = w[(i, j)].norm();
                if v > best.0 {
                    best = (v, ii, jj);
                }
            }
        }
        if !(best.0 > threshold) {
            break;
        }
        rows.swap(r, best.1);
        cols.swap(r, best.2);
        let (pi, pj) = (rows[r], cols[r]);
        let pinv = w[(pi, pj)].inv();
        for &i in &rows[r + 1..] {
            let f = w[(i, pj)] * pinv;
            if f.is_zero() {
                continue;
            }
            for &j in &cols[r..] {
                let d = f * w[(pi, j)];
                w[(i, j)] -= d;
            }
            w[(i, pj)] = Quaternion::ZERO;
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let tol = Tolerance::default();
        let j2 = QMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert_eq!(rank(&j2, &tol), 1);
        assert_eq!(
            rank(&QMatrix::from_rows(vec![vec![Quaternion::J]]), &tol),
            1
        );
        // j*i = -k, so [j, k] is not j times [1, i].
        let a = QMatrix::from_rows(vec![
            vec![Quaternion::ONE, Quaternion::I],
            vec![Quaternion::J, Quaternion::K],
        ]);
        assert_eq!(rank(&a, &tol), 2);
        let a = QMatrix::from_rows(vec![
            vec![Quaternion::ONE, Quaternion::I],
            vec![Quaternion::J, -Quaternion::K],
        ]);
        assert_eq!(rank(&a, &tol), 1);
        assert_eq!(rank(&QMatrix::zeros(3, 2), &tol), 0);
        assert_eq!(rank(&QMatrix::identity(4), &tol), 4);
    }

    #[test]
    fn right_dependence_is_not_left_dependence() {
        // Second column is the first times i on the right: rank 1.
        let tol = Tolerance::default();
        let c = [Quaternion::ONE, Quaternion::J];
        let a = QMatrix::from_rows(vec![
            vec![c[0], c[0] * Quaternion::I],
            vec![c[1], c[1] * Quaternion::I],
        ]);
        assert_eq!(rank(&a, &tol), 1);
        // Left multiple instead: j*i = -k and i*j = k differ, rank 2.
        let b = QMatrix::from_rows(vec![
            vec![c[0], Quaternion::I * c[0]],
            vec![c[1], Quaternion::I * c[1]],
        ]);
        assert_eq!(rank(&b, &tol), 2);
    }
}
