use crate::matrix::QMatrix;

/// Real part of the trace.
pub fn re_trace(m: &QMatrix) -> f64 {
    m.diag().iter().map(|q| q.w).sum()
}

/// Words over `{A, A*}` (`false` = A, `true` = A*) of length `1..=max_len`,
/// one per cyclic rotation class.
pub fn words(max_len: usize) -> Vec<Vec<bool>> {
    let mut out = Vec::new();
    for len in 1..=max_len.min(20) {
        for bits in 0u32..(1 << len) {
            let w: Vec<bool> = (0..len).map(|k| bits >> (len - 1 - k) & 1 == 1).collect();
            let minimal = (1..len).all(|s| {
                let rot: Vec<bool> = w[s..].iter().chain(&w[..s]).copied().collect();
                w <= rot
            });
            if minimal {
                out.push(w);
            }
        }
    }
    out
}

fn evaluate(a: &QMatrix, a_star: &QMatrix, w: &[bool]) -> QMatrix {
    let pick = |b: bool| if b { a_star } else { a };
    w[1..]
        .iter()
        .fold(pick(w[0]).clone(), |acc, b| &acc * pick(*b))
}

/// `Re tr w(A, A*) = Re tr w(B, B*)` within `1e-6 (1 + max norm)^len` for
/// every word up to `max_len`. Necessary for unitary similarity, never
/// sufficient.
pub fn trace_word_oracle(a: &QMatrix, b: &QMatrix, max_len: usize) -> bool {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return false;
    }
    let (sa, sb) = (a.star(), b.star());
    let base = 1.0 + a.frobenius().max(b.frobenius());
    words(max_len).iter().all(|w| {
        let d = (re_trace(&evaluate(a, &sa, w)) - re_trace(&evaluate(b, &sb, w))).abs();
        d <= 1e-6 * base.powi(w.len() as i32)
    })
}
