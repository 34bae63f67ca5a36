//! Runs every fuzz corpus seed through the same decoders as the fuzz targets.

use std::path::Path;

use qcanon::json::{
    parse_canonical_result, parse_matrix, parse_schur_form, parse_summary, to_json,
};
use qcanon::littlewood::{canonical_form, decompose};
use qcanon::schur_real::strengthened_schur;
use qcanon::special_forms::{assemble_blocks, projector_canonical, square_zero_canonical};
use qcanon::Tolerance;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<(String, String)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            let bytes = std::fs::read(&p).unwrap();
            (
                p.display().to_string(),
                String::from_utf8_lossy(&bytes).into_owned(),
            )
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn parse_matrix_seeds() {
    let mut ok = 0;
    for (_, text) in seeds("parse_matrix") {
        if let Ok(m) = parse_matrix(&text) {
            assert_eq!(parse_matrix(&to_json(&m)).unwrap(), m);
            ok += 1;
        }
    }
    assert!(ok > 0);
}

#[test]
fn parse_summary_seeds() {
    let mut ok = 0;
    for (_, text) in seeds("parse_summary") {
        if let Ok(s) = parse_summary(&text) {
            if s.size() <= 64 {
                assert_eq!(assemble_blocks(&s).rows(), s.size());
            }
            ok += 1;
        }
    }
    assert!(ok > 0);
}

#[test]
fn parse_canonical_result_seeds() {
    let (mut ok, mut rejected) = (0, 0);
    for (_, text) in seeds("parse_canonical_result") {
        match parse_canonical_result(&text) {
            Ok(r) => {
                decompose(&r).unwrap();
                ok += 1;
            }
            Err(_) => rejected += 1,
        }
    }
    assert!(ok > 0 && rejected > 0);
}

#[test]
fn parse_schur_form_seeds() {
    let (mut ok, mut rejected) = (0, 0);
    for (_, text) in seeds("parse_schur_form") {
        match parse_schur_form(&text) {
            Ok(_) => ok += 1,
            Err(_) => rejected += 1,
        }
    }
    assert!(ok > 0 && rejected > 0);
}

#[test]
fn canon_pipeline_seeds() {
    let tol = Tolerance::default();
    for (name, text) in seeds("canon_pipeline") {
        let a = parse_matrix(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        if a.rows() > 6 || a.cols() > 6 {
            continue;
        }
        if let Ok(r) = canonical_form(&a, &tol) {
            decompose(&r).unwrap();
        }
        let _ = strengthened_schur(&a, &tol);
        let _ = projector_canonical(&a, &tol);
        let _ = square_zero_canonical(&a, &tol);
    }
}
