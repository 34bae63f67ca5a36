use serde::{Deserialize, Serialize};

/// Thresholds used for every discrete numerical decision.
///
/// `eps_rank` decides when a pivot or singular value counts as zero,
/// `eps_eig` when two computed eigenvalues are the same, and `eps_canon`
/// when a coefficient of a canonical entry is snapped to exact zero.
/// All three are relative to the scale of the matrix being processed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub eps_rank: f64,
    pub eps_eig: f64,
    pub eps_canon: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eps_rank: 1e-9,
            eps_eig: 1e-8,
            eps_canon: 1e-8,
        }
    }
}

impl Tolerance {
    /// Returns `None` unless every threshold is finite and strictly positive.
    pub fn new(eps_rank: f64, eps_eig: f64, eps_canon: f64) -> Option<Self> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if ok(eps_rank) && ok(eps_eig) && ok(eps_canon) {
            Some(Tolerance {
                eps_rank,
                eps_eig,
                eps_canon,
            })
        } else {
            None
        }
    }

    pub fn is_valid(&self) -> bool {
        Self::new(self.eps_rank, self.eps_eig, self.eps_canon).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let t = Tolerance::default();
        assert_eq!((t.eps_rank, t.eps_eig, t.eps_canon), (1e-9, 1e-8, 1e-8));
        assert!(t.is_valid());
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(Tolerance::new(0.0, 1e-8, 1e-8).is_none());
        assert!(Tolerance::new(1e-9, -1.0, 1e-8).is_none());
        assert!(Tolerance::new(1e-9, 1e-8, f64::NAN).is_none());
    }
}
