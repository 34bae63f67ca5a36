//! The graph of a canonical matrix and its block decomposition.

use serde::{Deserialize, Serialize};

use super::reduce::CanonicalResult;
use crate::error::{Error, Result};
use crate::matrix::QMatrix;

/// Recorded merge edges, 1-based.
pub fn graph(result: &CanonicalResult) -> Vec<[usize; 2]> {
    result.edges.clone()
}

/// True iff the edges on vertices `1..=n` contain no cycle.
pub fn is_forest(n: usize, edges: &[[usize; 2]]) -> bool {
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for e in edges {
        if e[0] == 0 || e[1] == 0 || e[0] > n || e[1] > n {
            return false;
        }
        let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
        if a == b {
            return false;
        }
        parent[b] = a;
    }
    true
}

/// Connected components of the graph on `1..=n`, each sorted, ordered by
/// smallest vertex. Vertices are 1-based.
pub fn components(n: usize, edges: &[[usize; 2]]) -> Vec<Vec<usize>> {
    let mut label: Vec<usize> = (0..=n).collect();
    // n is small: relabel until stable
    loop {
        let mut changed = false;
        for e in edges {
            let m = label[e[0]].min(label[e[1]]);
            for v in [e[0], e[1]] {
                if label[v] != m {
                    label[v] = m;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    for v in 1..=n {
        match out.iter_mut().find(|c| label[c[0]] == label[v]) {
            Some(c) => c.push(v),
            None => out.push(vec![v]),
        }
    }
    out
}

/// Simultaneous row and column permutation of a canonical matrix into a
/// direct sum, one block per component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    /// Old (1-based) index of each new position.
    pub permutation: Vec<usize>,
    pub components: Vec<Vec<usize>>,
    pub blocks: Vec<QMatrix>,
}

pub fn decompose(result: &CanonicalResult) -> Result<Decomposition> {
    let n = result.canon.rows();
    if !is_forest(n, &result.edges) {
        return Err(Error::BadShape("edge list is not a forest on 1..=n".into()));
    }
    let comps = components(n, &result.edges);
    let permutation: Vec<usize> = comps.iter().flatten().copied().collect();
    let zero_based: Vec<usize> = permutation.iter().map(|v| v - 1).collect();
    let p = result.canon.permute_symmetric(&zero_based);
    let mut blocks = Vec::with_capacity(comps.len());
    let mut off = 0;
    for c in &comps {
        let k = c.len();
        for i in 0..n {
            for j in 0..n {
                let inside_i = (off..off + k).contains(&i);
                let inside_j = (off..off + k).contains(&j);
                if inside_i != inside_j && !p[(i, j)].is_zero() {
                    return Err(Error::NotBlockDiagonal {
                        row: permutation[i],
                        col: permutation[j],
                        magnitude: p[(i, j)].norm(),
                    });
                }
            }
        }
        blocks.push(p.block(off, off, k, k));
        off += k;
    }
    Ok(Decomposition {
        permutation,
        components: comps,
        blocks,
    })
}
