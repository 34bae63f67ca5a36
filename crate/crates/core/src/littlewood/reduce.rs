//! Entry-by-entry reduction of a triangular form to its canonical matrix.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::tracker::{initial_tracker, Field, RelationTracker};
use super::triangular::{canon_threshold, triangularize, TriangularForm};
use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::quaternion::{standardize, standardizing_conjugator, succ_zero, Quaternion};
use crate::tolerance::Tolerance;

/// One reduced entry. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogEntry {
    pub entry: [usize; 2],
    pub case: String,
    #[serde(rename = "deltaR")]
    pub delta_r: String,
}

/// The canonical matrix, the edges of its graph (1-based, in the order they
/// were created) and one log row per off-diagonal entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CanonicalResult {
    pub canon: QMatrix,
    pub edges: Vec<[usize; 2]>,
    pub log: Vec<LogEntry>,
    /// Final relations; not serialized, empty after decoding.
    #[serde(skip)]
    pub tracker: RelationTracker,
}

impl CanonicalResult {
    /// Position (1-based) in the reduction order at which each edge appeared.
    pub fn edge_steps(&self) -> Vec<usize> {
        self.edges
            .iter()
            .map(|e| {
                self.log
                    .iter()
                    .position(|x| x.entry == *e)
                    .map_or(0, |p| p + 1)
            })
            .collect()
    }

    /// Shape checks for decoded results: square canon, edges and log rows
    /// pointing at upper-triangular positions.
    pub fn validate(&self) -> Result<()> {
        let n = self.canon.rows();
        if !self.canon.is_square() {
            return Err(Error::BadShape("canon must be square".into()));
        }
        let ok = |e: &[usize; 2]| e[0] >= 1 && e[0] < e[1] && e[1] <= n;
        if let Some(e) = self.edges.iter().find(|e| !ok(e)) {
            return Err(Error::BadShape(format!(
                "edge {e:?} out of range for n = {n}"
            )));
        }
        if let Some(e) = self.log.iter().find(|e| !ok(&e.entry)) {
            return Err(Error::BadShape(format!(
                "log entry {:?} out of range for n = {n}",
                e.entry
            )));
        }
        Ok(())
    }
}

/// `a12, a23, ..., a_{n-1,n}; a13, ...; a1n` as 0-based pairs.
pub fn standard_order(n: usize) -> Vec<(usize, usize)> {
    (1..n)
        .flat_map(|d| (0..n - d).map(move |l| (l, l + d)))
        .collect()
}

/// The standard order of an `n`-vertex matrix restricted to `vertices`
/// (sorted, 0-based) and renumbered to positions within `vertices`.
pub fn induced_order(n: usize, vertices: &[usize]) -> Vec<(usize, usize)> {
    let pos = |v: usize| vertices.iter().position(|&x| x == v);
    standard_order(n)
        .into_iter()
        .filter_map(|(l, r)| Some((pos(l)?, pos(r)?)))
        .collect()
}

/// True iff every admissible `diag(s)` leaves `a` at position `(l, r)` alone.
pub fn is_fixed(a: Quaternion, l: usize, r: usize, tracker: &RelationTracker) -> bool {
    if a.is_zero() {
        return true;
    }
    match tracker.relation(l, r) {
        None => false,
        Some(rel) => match tracker.field(l) {
            Field::H => a.y == 0.0 && a.z == 0.0 && a.x == 0.0,
            Field::C if rel > 0 => a.y == 0.0 && a.z == 0.0,
            Field::C => a.w == 0.0 && a.x == 0.0,
            Field::R => true,
        },
    }
}

/// Reduction in progress: the partially reduced matrix, the relations, and
/// the position in the reduction order.
#[derive(Debug, Clone)]
pub struct ReductionState {
    t: QMatrix,
    tracker: RelationTracker,
    order: Vec<(usize, usize)>,
    rank: Vec<usize>,
    next: usize,
    delta: f64,
    log: Vec<LogEntry>,
    edges: Vec<[usize; 2]>,
}

enum After {
    Restrict(Field),
    Merge(i8),
    MergeReal,
}

impl ReductionState {
    /// `order` must list every position above the diagonal exactly once.
    pub fn new(tri: &TriangularForm, order: Vec<(usize, usize)>, delta: f64) -> Result<Self> {
        let n = tri.t.rows();
        let mut rank = vec![usize::MAX; n * n];
        for (k, &(l, r)) in order.iter().enumerate() {
            if l >= r || r >= n || rank[l * n + r] != usize::MAX {
                return Err(Error::BadShape(format!(
                    "reduction order has a bad or repeated entry ({}, {})",
                    l + 1,
                    r + 1
                )));
            }
            rank[l * n + r] = k;
        }
        if order.len() != n * n.saturating_sub(1) / 2 {
            return Err(Error::BadShape(
                "reduction order does not cover every entry".into(),
            ));
        }
        Ok(ReductionState {
            t: tri.t.clone(),
            tracker: initial_tracker(&tri.diag),
            order,
            rank,
            next: 0,
            delta,
            log: Vec::new(),
            edges: Vec::new(),
        })
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.t
    }

    pub fn tracker(&self) -> &RelationTracker {
        &self.tracker
    }

    pub fn is_done(&self) -> bool {
        self.next == self.order.len()
    }

    pub fn next_entry(&self) -> Option<(usize, usize)> {
        self.order.get(self.next).copied()
    }

    /// Reduces `(l, r)` (0-based), which must be the next entry in order.
    pub fn reduce_entry(&mut self, l: usize, r: usize) -> Result<()> {
        let (el, er) = self.next_entry().unwrap_or((usize::MAX, usize::MAX));
        if (l, r) != (el, er) {
            return Err(Error::InternalOrderViolation {
                l: l + 1,
                r: r + 1,
                expected_l: el.wrapping_add(1),
                expected_r: er.wrapping_add(1),
            });
        }
        let a = self.t[(l, r)].snap(self.delta);
        self.t[(l, r)] = a;
        let (il, ir) = (l + 1, r + 1);
        if is_fixed(a, l, r, &self.tracker) {
            self.push_log(il, ir, "fixed", String::new());
            self.next += 1;
            return Ok(());
        }

        let tr = &self.tracker;
        let (fl, fr) = (tr.field(l), tr.field(r));
        let p = a.split();
        let (z1, z2) = (p.z1, p.z2);
        let q = Quaternion::from_complex;
        let mut assign: Vec<(usize, Quaternion)> = Vec::new();
        let (label, value, after, delta_r): (&str, Quaternion, After, String) = match tr
            .relation(l, r)
        {
            Some(_) if fl == Field::H => {
                assign.push((l, standardizing_conjugator(a, self.delta)));
                (
                    "1b",
                    q(standardize(a)),
                    After::Restrict(Field::C),
                    format!("s{il} in C"),
                )
            }
            Some(1) => {
                assign.push((l, q(phase(z2).sqrt())));
                (
                    "3a",
                    Quaternion::from_pair(z1, Complex64::new(z2.norm(), 0.0)),
                    After::Restrict(Field::R),
                    format!("s{il} in R"),
                )
            }
            Some(_) => {
                assign.push((l, q(phase(z1).sqrt())));
                (
                    "3b",
                    Quaternion::from_pair(Complex64::new(z1.norm(), 0.0), z2),
                    After::Restrict(Field::R),
                    format!("s{il} in R"),
                )
            }
            None if fl == Field::H || fr == Field::H => {
                let u = a * (1.0 / a.norm());
                if fr == Field::H {
                    assign.push((r, u.conj()));
                } else {
                    assign.push((l, u));
                }
                (
                    "1a",
                    Quaternion::real(a.norm()),
                    After::Merge(1),
                    format!("s{il}=s{ir}"),
                )
            }
            None if fl == Field::C && fr == Field::C => {
                if z1 != zero() && z2 != zero() {
                    let sl = (phase(z1) * phase(z2)).sqrt();
                    assign.push((l, q(sl)));
                    assign.push((r, q(sl * phase(z1).conj())));
                    (
                        "2a",
                        Quaternion::new(z1.norm(), 0.0, z2.norm(), 0.0),
                        After::MergeReal,
                        format!("s{il}=s{ir} in R"),
                    )
                } else if z1 != zero() {
                    assign.push((r, q(phase(z1).conj())));
                    (
                        "2b",
                        Quaternion::real(z1.norm()),
                        After::Merge(1),
                        format!("s{il}=s{ir}"),
                    )
                } else {
                    assign.push((r, q(phase(z2))));
                    (
                        "2c",
                        Quaternion::new(0.0, 0.0, z2.norm(), 0.0),
                        After::Merge(-1),
                        format!("s{il}=s{ir}^-1"),
                    )
                }
            }
            None if fl == Field::C || fr == Field::C => {
                let d = format!("s{il}=s{ir} in R");
                if z1 != zero() {
                    let value = if fl == Field::C {
                        assign.push((l, q(phase(z1))));
                        Quaternion::from_pair(Complex64::new(z1.norm(), 0.0), z2 * phase(z1).conj())
                    } else {
                        assign.push((r, q(phase(z1).conj())));
                        Quaternion::from_pair(Complex64::new(z1.norm(), 0.0), z2 * phase(z1))
                    };
                    ("4a", value, After::MergeReal, d)
                } else {
                    assign.push((if fl == Field::C { l } else { r }, q(phase(z2))));
                    (
                        "4b",
                        Quaternion::new(0.0, 0.0, z2.norm(), 0.0),
                        After::MergeReal,
                        d,
                    )
                }
            }
            None => {
                let (label, lead) = if z1 != zero() { ("5a", z1) } else { ("5b", z2) };
                let value = if succ_zero(lead) {
                    a
                } else {
                    assign.push((r, Quaternion::real(-1.0)));
                    -a
                };
                (label, value, After::Merge(1), format!("s{il}=s{ir}"))
            }
        };

        self.apply(&assign);
        self.t[(l, r)] = value;
        match after {
            After::Restrict(f) => self.tracker.restrict(l, f),
            After::Merge(rel) => {
                if self.tracker.union(l, r, rel) {
                    self.edges.push([il, ir]);
                }
            }
            After::MergeReal => {
                if self.tracker.union(l, r, 1) {
                    self.edges.push([il, ir]);
                }
                self.tracker.restrict(l, Field::R);
            }
        }
        self.push_log(il, ir, label, delta_r);
        self.next += 1;
        Ok(())
    }

    /// Applies `diag(s)` determined by prescribing `s_x` for some indices,
    /// extended to their whole classes, to every entry not yet reduced.
    fn apply(&mut self, assign: &[(usize, Quaternion)]) {
        let n = self.t.rows();
        let mut s = vec![Quaternion::ONE; n];
        for &(x, sx) in assign {
            let (_, px) = self.tracker.find(x);
            let rep = if px < 0 { sx.conj() } else { sx };
            for (y, py) in self.tracker.class_of(x) {
                s[y] = if py < 0 { rep.conj() } else { rep };
            }
        }
        let moved: Vec<usize> = (0..n).filter(|&x| s[x] != Quaternion::ONE).collect();
        if moved.is_empty() {
            return;
        }
        for x in 0..n {
            for y in x + 1..n {
                if s[x] == Quaternion::ONE && s[y] == Quaternion::ONE {
                    continue;
                }
                let e = self.t[(x, y)];
                let e2 = s[x].conj() * e * s[y];
                if self.rank[x * n + y] < self.next {
                    debug_assert!(
                        e2.dist(&e) <= 1e-9 * (1.0 + e.norm()),
                        "reduced entry ({}, {}) moved from {e} to {e2}",
                        x + 1,
                        y + 1
                    );
                    continue;
                }
                self.t[(x, y)] = e2;
            }
        }
    }

    fn push_log(&mut self, l: usize, r: usize, case: &str, delta_r: String) {
        self.log.push(LogEntry {
            entry: [l, r],
            case: case.to_string(),
            delta_r,
        });
    }

    pub fn finish(self) -> CanonicalResult {
        CanonicalResult {
            canon: self.t,
            edges: self.edges,
            log: self.log,
            tracker: self.tracker,
        }
    }
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn phase(z: Complex64) -> Complex64 {
    z / z.norm()
}

pub fn canonical_form(a: &QMatrix, tol: &Tolerance) -> Result<CanonicalResult> {
    canonical_form_with_order(a, &standard_order(a.rows()), tol)
}

/// Canonical form with entries reduced in a prescribed order. Used to
/// re-canonicalize a block with the order it inherits from a larger matrix.
pub fn canonical_form_with_order(
    a: &QMatrix,
    order: &[(usize, usize)],
    tol: &Tolerance,
) -> Result<CanonicalResult> {
    let tri = triangularize(a, tol)?;
    let mut st = ReductionState::new(&tri, order.to_vec(), canon_threshold(a, tol))?;
    while let Some((l, r)) = st.next_entry() {
        st.reduce_entry(l, r)?;
    }
    Ok(st.finish())
}

/// Same size, canonical matrices equal within `thr` entrywise, and identical
/// edges and case logs.
pub fn same_canonical(x: &CanonicalResult, y: &CanonicalResult, thr: f64) -> bool {
    x.canon.rows() == y.canon.rows()
        && x.canon.max_diff(&y.canon) <= thr
        && x.edges == y.edges
        && x.log == y.log
}

pub fn unitarily_similar(a: &QMatrix, b: &QMatrix, tol: &Tolerance) -> Result<bool> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Ok(false);
    }
    let x = canonical_form(a, tol)?;
    let y = canonical_form(b, tol)?;
    let thr = tol.eps_canon * (1.0 + a.frobenius().max(b.frobenius()));
    Ok(same_canonical(&x, &y, thr))
}
