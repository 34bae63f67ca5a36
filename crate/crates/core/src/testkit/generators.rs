use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::matrix::QMatrix;
use crate::qr::gram_schmidt_qr;
use crate::quaternion::{succeq, Quaternion};
use crate::tolerance::Tolerance;

pub fn normal_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    Quaternion::new(
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
    )
}

pub fn random_unit_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    loop {
        let q = normal_quaternion(rng);
        if q.norm() > 1e-3 {
            return q.unit();
        }
    }
}

/// Independent standard-normal coefficients.
pub fn random_matrix<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> QMatrix {
    QMatrix::from_fn(m, n, |_, _| normal_quaternion(rng))
}

/// Q factor of a Gaussian matrix. The R factor has a positive diagonal, so
/// Q is Haar distributed.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> QMatrix {
    loop {
        if let Ok(qr) = gram_schmidt_qr(&random_matrix(n, n, rng), &Tolerance::default()) {
            return qr.q;
        }
    }
}

/// `(S, S^-1)` with `S = W1 diag(d) W2`, Haar `W1`, `W2` and `d` log-uniform
/// in `[1, kappa]`, so the condition number of `S` is at most `kappa`.
pub fn conditioned_similarity<R: Rng + ?Sized>(
    n: usize,
    kappa: f64,
    rng: &mut R,
) -> (QMatrix, QMatrix) {
    let w1 = haar_unitary(n, rng);
    let w2 = haar_unitary(n, rng);
    let d: Vec<f64> = (0..n).map(|_| kappa.powf(rng.gen::<f64>())).collect();
    let dq: Vec<Quaternion> = d.iter().map(|x| Quaternion::real(*x)).collect();
    let di: Vec<Quaternion> = d.iter().map(|x| Quaternion::real(1.0 / x)).collect();
    let s = &(&w1 * &QMatrix::from_diag(&dq)) * &w2;
    let si = &(&w2.star() * &QMatrix::from_diag(&di)) * &w1.star();
    (s, si)
}

/// A sorted standard diagonal for a nonderogatory instance: values on the
/// grid `{-2..2} + {0, 1, 2}i`, each repeated at most three times.
pub fn planted_diagonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Complex64> {
    let mut grid: Vec<Complex64> = (-2..=2)
        .flat_map(|re| (0..=2).map(move |im| Complex64::new(re as f64, im as f64)))
        .collect();
    grid.shuffle(rng);
    let mut diag = Vec::with_capacity(n);
    let mut k = 0;
    while diag.len() < n {
        let run = rng.gen_range(1..=3).min(n - diag.len());
        diag.extend(std::iter::repeat(grid[k]).take(run));
        k += 1;
    }
    diag.sort_by(|a, b| {
        if a == b {
            std::cmp::Ordering::Equal
        } else if succeq(*a, *b) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    diag
}

/// Upper triangular with the given diagonal and Gaussian entries above it;
/// on equal-eigenvalue runs the superdiagonal has `|z1| >= 0.5`.
pub fn planted_triangular<R: Rng + ?Sized>(diag: &[Complex64], rng: &mut R) -> QMatrix {
    let n = diag.len();
    let mut t = QMatrix::from_diag(
        &diag
            .iter()
            .map(|z| Quaternion::from_complex(*z))
            .collect::<Vec<_>>(),
    );
    for l in 0..n {
        for r in l + 1..n {
            t[(l, r)] = loop {
                let q = normal_quaternion(rng);
                if r != l + 1 || diag[l] != diag[r] || q.split().z1.norm() >= 0.5 {
                    break q;
                }
            };
        }
    }
    t
}

/// `W* T W` for a planted triangular `T` and Haar `W`.
pub fn random_nonderogatory<R: Rng + ?Sized>(n: usize, rng: &mut R) -> QMatrix {
    let diag = planted_diagonal(n, rng);
    let t = planted_triangular(&diag, rng);
    let w = haar_unitary(n, rng);
    &(&w.star() * &t) * &w
}

/// Random partition of `n` in decreasing order.
pub fn random_segre<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut left = n;
    while left > 0 {
        let p = rng.gen_range(1..=left);
        parts.push(p);
        left -= p;
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// Real Jordan matrix: one block of size `s` at `lambda` for each `(lambda, s)`.
pub fn jordan_real(blocks: &[(f64, usize)]) -> QMatrix {
    let n: usize = blocks.iter().map(|b| b.1).sum();
    let mut j = QMatrix::zeros(n, n);
    let mut o = 0;
    for &(lambda, s) in blocks {
        for i in 0..s {
            j[(o + i, o + i)] = Quaternion::real(lambda);
            if i + 1 < s {
                j[(o + i, o + i + 1)] = Quaternion::ONE;
            }
        }
        o += s;
    }
    j
}

/// A real-spectrum matrix with planted Jordan structure.
#[derive(Debug, Clone)]
pub struct RealSpectrumInstance {
    pub a: QMatrix,
    /// Eigenvalue with its Segre characteristic, eigenvalues descending.
    pub segre: Vec<(f64, Vec<usize>)>,
}

/// `S J S^-1` with `J` a real Jordan matrix (eigenvalues from `{-2..2}`,
/// random Segre lists) and `cond(S) <= 4`.
pub fn random_real_spectrum<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RealSpectrumInstance {
    let mut values: Vec<f64> = (-2..=2).map(f64::from).collect();
    values.shuffle(rng);
    let mut segre = Vec::new();
    let mut left = n;
    for v in values {
        if left == 0 {
            break;
        }
        let m = if segre.len() == 4 {
            left
        } else {
            rng.gen_range(1..=left)
        };
        segre.push((v, random_segre(m, rng)));
        left -= m;
    }
    segre.sort_by(|a, b| b.0.total_cmp(&a.0));
    let blocks: Vec<(f64, usize)> = segre
        .iter()
        .flat_map(|(v, p)| p.iter().map(move |s| (*v, *s)))
        .collect();
    let (s, si) = conditioned_similarity(n, 4.0, rng);
    RealSpectrumInstance {
        a: &(&s * &jordan_real(&blocks)) * &si,
        segre,
    }
}

/// Nilpotent matrix with the given Segre characteristic, hidden by a
/// similarity with condition number at most 4.
pub fn random_nilpotent<R: Rng + ?Sized>(segre: &[usize], rng: &mut R) -> QMatrix {
    let blocks: Vec<(f64, usize)> = segre.iter().map(|s| (0.0, *s)).collect();
    let n = segre.iter().sum();
    let (s, si) = conditioned_similarity(n, 4.0, rng);
    &(&s * &jordan_real(&blocks)) * &si
}

fn planted_special<R: Rng + ?Sized>(
    top: f64,
    b_values: &[f64],
    ones: usize,
    zeros: usize,
    rng: &mut R,
) -> QMatrix {
    let mut blocks: Vec<QMatrix> = b_values
        .iter()
        .map(|b| QMatrix::from_real_rows(&[&[top, *b], &[0.0, 0.0]]))
        .collect();
    if ones > 0 {
        blocks.push(QMatrix::identity(ones));
    }
    if zeros > 0 {
        blocks.push(QMatrix::zeros(zeros, zeros));
    }
    let c = QMatrix::direct_sum(&blocks);
    let w = haar_unitary(c.rows(), rng);
    &(&w.star() * &c) * &w
}

/// `W* (⊕ [[1, b], [0, 0]] ⊕ I ⊕ 0) W` with Haar `W`.
pub fn random_projector<R: Rng + ?Sized>(
    b_values: &[f64],
    ones: usize,
    zeros: usize,
    rng: &mut R,
) -> QMatrix {
    planted_special(1.0, b_values, ones, zeros, rng)
}

/// `W* (⊕ [[0, b], [0, 0]] ⊕ 0) W` with Haar `W`.
pub fn random_square_zero<R: Rng + ?Sized>(b_values: &[f64], zeros: usize, rng: &mut R) -> QMatrix {
    planted_special(0.0, b_values, 0, zeros, rng)
}

/// Random forest on `1..=n`: each vertex after the first is attached to a
/// random earlier vertex with probability 1/2. Edges `[u, v]` with `u < v`,
/// sorted.
pub fn random_forest<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<[usize; 2]> {
    let mut edges = Vec::new();
    for v in 2..=n {
        if rng.gen_bool(0.5) {
            edges.push([rng.gen_range(1..v), v]);
        }
    }
    edges.sort_unstable();
    edges
}

/// Diagonal `n i, (n-1) i, ..., i` with `a_lr = 1` on each edge.
pub fn forest_witness(n: usize, edges: &[[usize; 2]]) -> QMatrix {
    let mut a = QMatrix::from_diag(
        &(0..n)
            .map(|l| Quaternion::new(0.0, (n - l) as f64, 0.0, 0.0))
            .collect::<Vec<_>>(),
    );
    for e in edges {
        a[(e[0] - 1, e[1] - 1)] = Quaternion::ONE;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::seeded;

    #[test]
    fn haar_is_unitary_and_reproducible() {
        let u = haar_unitary(1, &mut seeded(1));
        assert!((u[(0, 0)].norm() - 1.0).abs() < 1e-14);
        let a = haar_unitary(3, &mut seeded(7));
        assert_eq!(a, haar_unitary(3, &mut seeded(7)));
        assert!(a.unitarity_residual() <= 1e-10);
    }

    #[test]
    fn conditioned_similarity_inverts() {
        let (s, si) = conditioned_similarity(4, 4.0, &mut seeded(3));
        assert!((&s * &si).max_diff(&QMatrix::identity(4)) < 1e-12);
    }

    #[test]
    fn planted_diagonal_is_sorted_with_short_runs() {
        let mut rng = seeded(11);
        for n in 1..=6 {
            let d = planted_diagonal(n, &mut rng);
            assert_eq!(d.len(), n);
            assert!(d.windows(2).all(|w| succeq(w[0], w[1])));
            assert!(d.windows(4).all(|w| !(w[0] == w[3])));
        }
    }

    #[test]
    fn forests_are_forests() {
        let mut rng = seeded(5);
        for n in 1..=6 {
            let e = random_forest(n, &mut rng);
            assert!(crate::littlewood::is_forest(n, &e));
        }
    }
}
