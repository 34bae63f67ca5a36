//! Union-find over diagonal indices recording which scalars of a diagonal
//! unitary `diag(s_1, ..., s_n)` are still free.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Field of admissible unit scalars for a class. Ordered `R < C < H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Field {
    R,
    C,
    H,
}

/// Each index `x` belongs to a class with representative scalar `t`, and
/// `s_x = t^{e_x}` with `e_x = ±1`. Exponent `-1` only matters for fields
/// `C` and `R` (and for `R` it coincides with `+1`).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RelationTracker {
    parent: Vec<usize>,
    // exponent of x relative to parent[x]
    parity: Vec<i8>,
    // meaningful at roots only
    field: Vec<Field>,
}

impl RelationTracker {
    pub fn new(fields: Vec<Field>) -> Self {
        let n = fields.len();
        RelationTracker {
            parent: (0..n).collect(),
            parity: vec![1; n],
            field: fields,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Class root and the exponent of `x` relative to it.
    pub fn find(&self, mut x: usize) -> (usize, i8) {
        let mut p = 1;
        while self.parent[x] != x {
            p *= self.parity[x];
            x = self.parent[x];
        }
        (x, p)
    }

    pub fn field(&self, x: usize) -> Field {
        self.field[self.find(x).0]
    }

    /// `Some(e)` with `s_l = s_r^e` if the two indices share a class.
    pub fn relation(&self, l: usize, r: usize) -> Option<i8> {
        let (a, pa) = self.find(l);
        let (b, pb) = self.find(r);
        (a == b).then_some(pa * pb)
    }

    /// Records `s_l = s_r^rel` between different classes; the merged class
    /// takes the smaller field. Returns false if they were already related.
    pub fn union(&mut self, l: usize, r: usize, rel: i8) -> bool {
        let (a, pa) = self.find(l);
        let (b, pb) = self.find(r);
        if a == b {
            return false;
        }
        // s_b = s_r^{pb} = s_l^{rel pb} = s_a^{pa rel pb}
        let f = self.field[a].min(self.field[b]);
        self.parent[b] = a;
        self.parity[b] = pa * pb * rel;
        self.field[a] = f;
        true
    }

    /// Lowers the class field of `x` to at most `f`.
    pub fn restrict(&mut self, x: usize, f: Field) {
        let a = self.find(x).0;
        self.field[a] = self.field[a].min(f);
    }

    /// Members of the class of `x` with their exponents.
    pub fn class_of(&self, x: usize) -> Vec<(usize, i8)> {
        let root = self.find(x).0;
        (0..self.len())
            .filter_map(|y| {
                let (r, p) = self.find(y);
                (r == root).then_some((y, p))
            })
            .collect()
    }
}

/// Fresh tracker: field `C` for nonreal eigenvalues and `H` for real ones.
pub fn initial_tracker(diag: &[Complex64]) -> RelationTracker {
    RelationTracker::new(
        diag.iter()
            .map(|z| if z.im > 0.0 { Field::C } else { Field::H })
            .collect(),
    )
}
