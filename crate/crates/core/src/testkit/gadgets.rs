use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::quaternion::Quaternion;

fn check_square(name: &str, m: &QMatrix, n: usize) -> Result<()> {
    if m.rows() != n || m.cols() != n {
        return Err(Error::ShapeMismatch(format!(
            "{name} is {}x{}, expected {n}x{n}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

fn scalar_block(n: usize, s: f64) -> QMatrix {
    QMatrix::identity(n).scale(s)
}

/// `[[3I, I, A], [0, 2I, I], [0, 0, I]]`.
pub fn gadget_ma(a: &QMatrix) -> Result<QMatrix> {
    let n = a.rows();
    check_square("A", a, n)?;
    let i = QMatrix::identity(n);
    let mut m = QMatrix::zeros(3 * n, 3 * n);
    for k in 0..3 {
        m.set_block(k * n, k * n, &scalar_block(n, (3 - k) as f64));
    }
    m.set_block(0, n, &i);
    m.set_block(n, 2 * n, &i);
    m.set_block(0, 2 * n, a);
    Ok(m)
}

/// The `5n x 5n` matrix with diagonal `5I, 4I, 3I, 2I, I`, identities at
/// `(1,2)` and `(2,3)`, `A` at `(1,3)`, `C` at `(1,4)`, `B` at `(1,5)` and
/// `D` at `(4,5)` (block indices).
pub fn gadget_m5(a: &QMatrix, b: &QMatrix, c: &QMatrix, d: &QMatrix) -> Result<QMatrix> {
    let n = a.rows();
    for (name, m) in [("A", a), ("B", b), ("C", c), ("D", d)] {
        check_square(name, m, n)?;
    }
    let i = QMatrix::identity(n);
    let mut m = QMatrix::zeros(5 * n, 5 * n);
    for k in 0..5 {
        m.set_block(k * n, k * n, &scalar_block(n, (5 - k) as f64));
    }
    m.set_block(0, n, &i);
    m.set_block(n, 2 * n, &i);
    m.set_block(0, 2 * n, a);
    m.set_block(0, 3 * n, c);
    m.set_block(0, 4 * n, b);
    m.set_block(3 * n, 4 * n, d);
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WildKind {
    /// Jordan blocks `J2(lambda)` and `[lambda]` only; needs complex `M`.
    A,
    /// `A^3 = 0`.
    B,
    /// Pairs of idempotents, the first self-adjoint.
    C,
    /// Pairs with `AB = BA = A^2 = B^2 = 0`.
    D,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WildFixture {
    Single(QMatrix),
    Pair(QMatrix, QMatrix),
}

/// The matrix (or pair) that encodes `M` for the given class. `lambda` is
/// only read for kind `A` and must have positive imaginary part.
pub fn gadget_wild(kind: WildKind, m: &QMatrix, lambda: Complex64) -> Result<WildFixture> {
    let n = m.rows();
    check_square("M", m, n)?;
    let i = QMatrix::identity(n);
    Ok(match kind {
        WildKind::A => {
            if !m.is_complex() {
                return Err(Error::ShapeMismatch("kind a needs a complex M".into()));
            }
            if !(lambda.im > 0.0) {
                return Err(Error::ShapeMismatch(format!(
                    "kind a needs a nonreal standard lambda, got {lambda}"
                )));
            }
            let ij = i.right_scalar(Quaternion::J);
            let mut x = QMatrix::zeros(4 * n, 4 * n);
            for k in 0..4 {
                x.set_block(k * n, k * n, &scalar_block(n, (4 - k) as f64));
            }
            x.set_block(0, 2 * n, &ij);
            x.set_block(0, 3 * n, &m.right_scalar(Quaternion::J));
            x.set_block(n, 2 * n, &ij);
            x.set_block(n, 3 * n, &ij);
            let l = QMatrix::identity(4 * n).left_scalar(Quaternion::from_complex(lambda));
            let mut a = QMatrix::zeros(8 * n, 8 * n);
            a.set_block(0, 0, &l);
            a.set_block(4 * n, 4 * n, &l);
            a.set_block(0, 4 * n, &x);
            WildFixture::Single(a)
        }
        WildKind::B => {
            let mut a = QMatrix::zeros(3 * n, 3 * n);
            a.set_block(0, n, &i);
            a.set_block(n, 2 * n, &i);
            a.set_block(0, 2 * n, m);
            WildFixture::Single(a)
        }
        WildKind::C => {
            let mut p = QMatrix::zeros(2 * n, 2 * n);
            p.set_block(0, 0, &i);
            let rest = &i - m;
            let mut q = QMatrix::zeros(2 * n, 2 * n);
            q.set_block(0, 0, m);
            q.set_block(n, 0, m);
            q.set_block(0, n, &rest);
            q.set_block(n, n, &rest);
            WildFixture::Pair(p, q)
        }
        WildKind::D => {
            let mut p = QMatrix::zeros(2 * n, 2 * n);
            p.set_block(0, n, &i);
            let mut q = QMatrix::zeros(2 * n, 2 * n);
            q.set_block(0, n, m);
            WildFixture::Pair(p, q)
        }
    })
}
