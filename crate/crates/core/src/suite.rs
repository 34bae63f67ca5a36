//! The eleven acceptance criteria as seeded, self-checking runs.

use std::fmt;
use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;

use crate::littlewood::{
    canonical_form, canonical_form_with_order, components, decompose, induced_order, is_forest,
    unitarily_similar, CanonicalResult,
};
use crate::matrix::QMatrix;
use crate::quaternion::{standardize, Quaternion};
use crate::rank::rank_scaled;
use crate::schur_real::{conjugate_partition, has_form_shape, strengthened_schur, Partition};
use crate::special_forms::{assemble_blocks, projector_canonical, square_zero_canonical, Kind};
use crate::svd::svd;
use crate::testkit::{
    forest_witness, gadget_ma, haar_unitary, normal_quaternion, planted_diagonal,
    planted_triangular, random_forest, random_matrix, random_nilpotent, random_nonderogatory,
    random_projector, random_real_spectrum, random_segre, random_square_zero,
    random_unit_quaternion, seeded, trace_word_oracle, SeededRng,
};
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {:<28} {} ({}; {:.2}s)",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.detail,
            self.seconds
        )
    }
}

/// Shared state: criteria 6, 8 and 11 audit what the others produced.
pub struct Suite {
    seed: u64,
    tol: Tolerance,
    results: Vec<CanonicalResult>,
    oracle_invariance: Vec<bool>,
    separation: Vec<(bool, bool)>,
}

fn conj(a: &QMatrix, u: &QMatrix) -> QMatrix {
    &(&u.star() * a) * u
}

fn outcome(
    id: u8,
    name: &'static str,
    start: Instant,
    failures: &[String],
    trials: usize,
) -> Outcome {
    let detail = match failures.first() {
        None => format!("{trials} trials"),
        Some(f) => format!("{} of {trials} failed; first: {f}", failures.len()),
    };
    Outcome {
        id,
        name,
        passed: failures.is_empty() && trials > 0,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

impl Suite {
    pub fn new(seed: u64) -> Self {
        Suite {
            seed,
            tol: Tolerance::default(),
            results: Vec::new(),
            oracle_invariance: Vec::new(),
            separation: Vec::new(),
        }
    }

    fn rng(&self, id: u64) -> SeededRng {
        seeded(
            self.seed
                .wrapping_mul(0x9E37_79B9_7F4A_7C15)
                .wrapping_add(id),
        )
    }

    /// Criteria 1 to 11 in order.
    pub fn run_all(&mut self) -> Vec<Outcome> {
        let mut out = vec![
            self.canonical_invariance(300),
            self.canonical_separation(100),
            self.strengthened_schur(200),
            self.weyr_identity(50),
            self.special_forms(200),
        ];
        let realizability = self.forest_realizability(50);
        let gadget = self.gadget_check(100);
        let svd = self.svd_check(200);
        out.push(self.forest_property());
        out.push(realizability);
        out.push(self.decomposition());
        out.push(gadget);
        out.push(svd);
        out.push(self.oracle_cross_check());
        out
    }

    pub fn canonical_invariance(&mut self, trials: usize) -> Outcome {
        let start = Instant::now();
        let mut rng = self.rng(1);
        let mut failures = Vec::new();
        for t in 0..trials {
            let n = 2 + t % 5;
            let a = random_nonderogatory(n, &mut rng);
            let b = conj(&a, &haar_unitary(n, &mut rng));
            self.oracle_invariance.push(trace_word_oracle(&a, &b, 4));
            match (canonical_form(&a, &self.tol), canonical_form(&b, &self.tol)) {
                (Ok(x), Ok(y)) => {
                    let d = x.canon.max_diff(&y.canon);
                    if d > 1e-6 || x.log != y.log || x.edges != y.edges {
                        failures.push(format!(
                            "trial {t} (n = {n}): entry gap {d:e}, logs equal {}",
                            x.log == y.log
                        ));
                    }
                    self.results.push(x);
                    self.results.push(y);
                }
                (x, y) => failures.push(format!("trial {t}: {:?}", x.err().or(y.err()))),
            }
        }
        outcome(1, "canonical invariance", start, &failures, trials)
    }

    pub fn canonical_separation(&mut self, trials: usize) -> Outcome {
        let start = Instant::now();
        let mut rng = self.rng(2);
        let mut failures = Vec::new();
        for t in 0..trials {
            let n = 2 + t % 5;
            let diag = planted_diagonal(n, &mut rng);
            let pick = |rng: &mut SeededRng| {
                let w = haar_unitary(n, rng);
                conj(&planted_triangular(&diag, rng), &w)
            };
            let a = pick(&mut rng);
            let b = pick(&mut rng);
            let oracle = trace_word_oracle(&a, &b, 4);
            match unitarily_similar(&a, &b, &self.tol) {
                Ok(similar) => {
                    self.separation.push((similar, oracle));
                    if similar {
                        failures.push(format!("trial {t} (n = {n}) reported similar"));
                    }
                }
                Err(e) => failures.push(format!("trial {t}: {e}")),
            }
            for m in [&a, &b] {
                if let Ok(r) = canonical_form(m, &self.tol) {
                    self.results.push(r);
                }
            }
        }
        outcome(2, "canonical separation", start, &failures, trials)
    }

    pub fn strengthened_schur(&mut self, trials: usize) -> Outcome {
        let start = Instant::now();
        let mut rng = self.rng(3);
        let mut failures = Vec::new();
        for t in 0..trials {
            let n = 2 + t % 5;
            let inst = random_real_spectrum(n, &mut rng);
            let a = &inst.a;
            let want_l: Vec<f64> = inst
                .segre
                .iter()
                .flat_map(|(v, p)| {
                    let w = conjugate_partition(&Partition::new(p.clone()).unwrap());
                    w.parts().iter().map(|_| *v).collect::<Vec<_>>()
                })
                .collect();
            let want_s: Vec<usize> = inst
                .segre
                .iter()
                .flat_map(|(_, p)| {
                    conjugate_partition(&Partition::new(p.clone()).unwrap())
                        .parts()
                        .to_vec()
                })
                .collect();
            let check = |a: &QMatrix| -> Result<(Vec<f64>, Vec<usize>), String> {
                let s = strengthened_schur(a, &self.tol).map_err(|e| e.to_string())?;
                let res = (&conj(a, &s.u) - &s.f).frobenius();
                if res > 1e-8 * a.frobenius() {
                    return Err(format!("residual {res:e}"));
                }
                if s.u.unitarity_residual() > 1e-8 {
                    return Err("U not unitary".into());
                }
                if !has_form_shape(&s.f, &s.lambdas, &s.sizes, 0.0, 0.0) {
                    return Err("shape predicates fail".into());
                }
                Ok((s.lambdas, s.sizes))
            };
            let first = check(a);
            let second = check(&conj(a, &haar_unitary(n, &mut rng)));
            match (first, second) {
                (Ok((l1, s1)), Ok((l2, s2))) => {
                    let close = |x: &[f64], y: &[f64]| {
                        x.len() == y.len() && x.iter().zip(y).all(|(p, q)| (p - q).abs() <= 1e-6)
                    };
                    if s1 != s2 || !close(&l1, &l2) {
                        failures.push(format!("trial {t}: data changed under conjugation"));
                    } else if s1 != want_s || !close(&l1, &want_l) {
                        failures.push(format!("trial {t}: sizes {s1:?}, planted {want_s:?}"));
                    }
                }
                (Err(e), _) | (_, Err(e)) => failures.push(format!("trial {t} (n = {n}): {e}")),
            }
        }
        outcome(3, "strengthened Schur", start, &failures, trials)
    }

    pub fn weyr_identity(&mut self, trials: usize) -> Outcome {
        let start = Instant::now();
        let mut rng = self.rng(4);
        let mut failures = Vec::new();
        for t in 0..trials {
            let n = rng.gen_range(1..=6);
            let segre = random_segre(n, &mut rng);
            let weyr = conjugate_partition(&Partition::new(segre.clone()).unwrap());
            let r = weyr.parts();
            let a = random_nilpotent(&segre, &mut rng);
            for l in 0..=r.len() {
                let want: usize = r[l..].iter().sum();
                // zero powers are zero only to roundoff relative to |A|^l
                let got = rank_scaled(&a.pow(l), a.frobenius().powi(l as i32), &self.tol);
                if got != want {
                    failures.push(format!(
                        "trial {t}: Segre {segre:?}, rank(A^{l}) = {got}, expected {want}"
                    ));
                    break;
                }
            }
        }
        outcome(4, "Weyr identity", start, &failures, trials)
    }

    pub fn special_forms(&mut self, trials: usize) -> Outcome {
        let start = Instant::now();
        let mut rng = self.rng(5);
        let mut failures = Vec::new();
        for t in 0..trials {
            let k = rng.gen_range(1..=3);
            let mut b: Vec<f64> = (0..k).map(|_| rng.gen_range(0.2..3.0)).collect();
            b.sort_by(|x, y| y.total_cmp(x));
            let ones = rng.gen_range(0..=2);
            let zeros = rng.gen_range(0..=2);
            for kind in [Kind::Idempotent, Kind::SquareZero] {
                let ones = if kind == Kind::Idempotent { ones } else { 0 };
                let (a, got) = match kind {
                    Kind::Idempotent => {
                        let a = random_projector(&b, ones, zeros, &mut rng);
                        (a.clone(), projector_canonical(&a, &self.tol))
                    }
                    Kind::SquareZero => {
                        let a = random_square_zero(&b, zeros, &mut rng);
                        (a.clone(), square_zero_canonical(&a, &self.tol))
                    }
                };
                let (u, s) = match got {
                    Ok(x) => x,
                    Err(e) => {
                        failures.push(format!("trial {t} {kind:?}: {e}"));
                        continue;
                    }
                };
                let matches = s.b_values.len() == b.len()
                    && s.b_values
                        .iter()
                        .zip(&b)
                        .all(|(x, y)| (x - y).abs() <= 1e-8)
                    && s.ones == ones
                    && s.zeros == zeros;
                let c = assemble_blocks(&s);
                let residual = (&conj(&a, &u) - &c).frobenius();
                let exact = residual <= 1e-8 * (1.0 + a.frobenius())
                    && match kind {
                        Kind::Idempotent => &c * &c == c,
                        Kind::SquareZero => &c * &c == QMatrix::zeros(c.rows(), c.cols()),
                    };
                if !matches || !exact || c.rows() != a.rows() {
                    failures.push(format!(
                        "trial {t} {kind:?}: planted {b:?}, got {:?}, residual {residual:e}",
                        s.b_values
                    ));
                }
            }
        }
        outcome(5, "projector / square-zero", start, &failures, trials)
    }

    /// Audits every canonical result produced so far.
    pub fn forest_property(&self) -> Outcome {
        let start = Instant::now();
        let failures: Vec<String> = self
            .results
            .iter()
            .enumerate()
            .filter(|(_, r)| !is_forest(r.canon.rows(), &r.edges))
            .map(|(i, r)| format!("result {i}: edges {:?}", r.edges))
            .collect();
        outcome(6, "forest property", start, &failures, self.results.len())
    }

    pub fn forest_realizability(&mut self, trials: usize) -> Outcome {
        let start = Instant::now();
        let mut rng = self.rng(7);
        let mut failures = Vec::new();
        for t in 0..trials {
            let n = rng.gen_range(2..=6);
            let edges = random_forest(n, &mut rng);
            let w = forest_witness(n, &edges);
            match canonical_form(&w, &self.tol) {
                Ok(r) => {
                    let mut got = r.edges.clone();
                    got.sort_unstable();
                    let thr = self.tol.eps_canon * (1.0 + w.frobenius());
                    if got != edges || r.canon.max_diff(&w) > thr {
                        failures.push(format!("trial {t}: edges {edges:?}, got {got:?}"));
                    }
                    self.results.push(r);
                }
                Err(e) => failures.push(format!("trial {t}: {e}")),
            }
        }
        outcome(7, "forest realizability", start, &failures, trials)
    }

    /// Every canonical result splits into exact blocks, and each block is
    /// canonical (in the order inherited from the whole matrix) with a tree
    /// as its graph.
    pub fn decomposition(&self) -> Outcome {
        let start = Instant::now();
        let mut failures = Vec::new();
        for (i, r) in self.results.iter().enumerate() {
            let n = r.canon.rows();
            let dec = match decompose(r) {
                Ok(d) => d,
                Err(e) => {
                    failures.push(format!("result {i}: {e}"));
                    continue;
                }
            };
            for (comp, block) in dec.components.iter().zip(&dec.blocks) {
                let verts: Vec<usize> = comp.iter().map(|v| v - 1).collect();
                let ok = canonical_form_with_order(block, &induced_order(n, &verts), &self.tol)
                    .map(|b| {
                        let k = block.rows();
                        let thr = self.tol.eps_canon * (1.0 + block.frobenius());
                        b.canon.max_diff(block) <= thr
                            && b.edges.len() + 1 == k
                            && components(k, &b.edges).len() == 1
                    });
                if !matches!(ok, Ok(true)) {
                    failures.push(format!(
                        "result {i}: block {comp:?} is not a canonical tree ({ok:?})"
                    ));
                }
            }
        }
        outcome(8, "decomposition", start, &failures, self.results.len())
    }

    pub fn gadget_check(&mut self, trials: usize) -> Outcome {
        let start = Instant::now();
        let mut rng = self.rng(9);
        let mut failures = Vec::new();
        for t in 0..trials {
            let a = normal_quaternion(&mut rng);
            let b = match t % 3 {
                0 => {
                    let s = random_unit_quaternion(&mut rng);
                    s.conj() * a * s
                }
                1 => normal_quaternion(&mut rng),
                // same imaginary norm, different real part
                _ => a + Quaternion::real(rng.gen_range(0.1..1.0)),
            };
            let ma = gadget_ma(&QMatrix::from_diag(&[a])).unwrap();
            let mb = gadget_ma(&QMatrix::from_diag(&[b])).unwrap();
            let scale = 1.0 + ma.frobenius().max(mb.frobenius());
            let same = (standardize(a) - standardize(b)).norm() <= self.tol.eps_canon * scale;
            match unitarily_similar(&ma, &mb, &self.tol) {
                Ok(s) if s == same => {}
                Ok(s) => failures.push(format!(
                    "trial {t}: a = {a}, b = {b}, similar {s}, standard forms equal {same}"
                )),
                Err(e) => failures.push(format!("trial {t}: {e}")),
            }
            if let Ok(r) = canonical_form(&ma, &self.tol) {
                self.results.push(r);
            }
        }
        outcome(9, "gadget check", start, &failures, trials)
    }

    pub fn svd_check(&mut self, trials: usize) -> Outcome {
        let start = Instant::now();
        let mut rng = self.rng(10);
        let mut failures = Vec::new();
        for t in 0..trials {
            let (m, n) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
            let a = random_matrix(m, n, &mut rng);
            let s = match svd(&a, &self.tol) {
                Ok(s) => s,
                Err(e) => {
                    failures.push(format!("trial {t}: {e}"));
                    continue;
                }
            };
            let rec = (&a - &s.reconstruct()).frobenius();
            let chi = adjoint_singular_values(&a);
            let paired = chi.len() == 2 * s.sigma.len()
                && s.sigma.iter().enumerate().all(|(k, v)| {
                    (chi[2 * k] - v).abs() <= 1e-8 && (chi[2 * k + 1] - v).abs() <= 1e-8
                });
            if rec > 1e-10 * a.frobenius() || !paired {
                failures.push(format!(
                    "trial {t} ({m}x{n}): reconstruction {rec:e}, doubled spectrum {paired}"
                ));
            }
        }
        outcome(10, "SVD", start, &failures, trials)
    }

    /// The oracle holds on every invariance pair, and never contradicts a
    /// "similar" verdict in the separation run.
    pub fn oracle_cross_check(&self) -> Outcome {
        let start = Instant::now();
        let mut failures: Vec<String> = self
            .oracle_invariance
            .iter()
            .enumerate()
            .filter(|(_, ok)| !**ok)
            .map(|(t, _)| format!("invariance trial {t}: oracle false"))
            .collect();
        failures.extend(
            self.separation
                .iter()
                .enumerate()
                .filter(|(_, (similar, oracle))| *similar && !*oracle)
                .map(|(t, _)| format!("separation trial {t}: similar but oracle false")),
        );
        let agree = self.separation.iter().filter(|(s, o)| !*s && !*o).count();
        let mut o = outcome(
            11,
            "oracle cross-check",
            start,
            &failures,
            self.oracle_invariance.len() + self.separation.len(),
        );
        if o.passed {
            o.detail = format!(
                "{}; oracle also separates {agree} of {} pairs",
                o.detail,
                self.separation.len()
            );
        }
        o
    }
}

/// Singular values of the complex adjoint, descending, from the eigenvalues
/// of the smaller Gram matrix.
fn adjoint_singular_values(a: &QMatrix) -> Vec<f64> {
    let chi = a.adjoint_complex();
    let h = chi.adjoint();
    let g = if chi.rows() >= chi.cols() {
        &h * &chi
    } else {
        &chi * &h
    };
    let mut v: Vec<f64> = g
        .eigenvalues()
        .unwrap_or_default()
        .into_iter()
        .map(|z: Complex64| z.re.max(0.0).sqrt())
        .collect();
    v.sort_by(|x, y| y.total_cmp(x));
    v
}

/// Runs all criteria with the given seed.
pub fn run_acceptance(seed: u64) -> Vec<Outcome> {
    Suite::new(seed).run_all()
}
