#![no_main]
use libfuzzer_sys::fuzz_target;
use qcanon::Tolerance;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(a) = qcanon::json::parse_matrix(text) else {
        return;
    };
    if a.rows() > 6 || a.cols() > 6 {
        return;
    }
    let tol = Tolerance::default();
    if let Ok(r) = qcanon::littlewood::canonical_form(&a, &tol) {
        let _ = qcanon::littlewood::decompose(&r);
    }
    let _ = qcanon::schur_real::strengthened_schur(&a, &tol);
    let _ = qcanon::special_forms::projector_canonical(&a, &tol);
    let _ = qcanon::special_forms::square_zero_canonical(&a, &tol);
});
