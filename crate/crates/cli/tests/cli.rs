use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qcanon::json::{parse_canonical_result, parse_matrix, to_json};
use qcanon::testkit::{haar_unitary, random_nonderogatory, seeded};
use qcanon::{QMatrix, Quaternion};
use serde_json::Value;

fn qcanon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcanon"))
        .args(args)
        .output()
        .unwrap()
}

fn write(dir: &Path, name: &str, m: &QMatrix) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, to_json(m)).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn canon_of_a_diagonal() {
    let dir = tempfile::tempdir().unwrap();
    let d = QMatrix::from_real_rows(&[&[3.0, 0.0], &[0.0, 1.0]]);
    let p = write(dir.path(), "a.json", &d);
    let out = qcanon(&["canon", s(&p)]);
    let v = json(&out);
    assert_eq!(v["edges"], serde_json::json!([]));
    let r = parse_canonical_result(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(r.canon, d);
}

#[test]
fn similar_on_an_orbit_pair() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = seeded(4);
    let a = random_nonderogatory(4, &mut rng);
    let u = haar_unitary(4, &mut rng);
    let b = &(&u.star() * &a) * &u;
    let (pa, pb) = (
        write(dir.path(), "a.json", &a),
        write(dir.path(), "b.json", &b),
    );
    assert_eq!(
        json(&qcanon(&["similar", s(&pa), s(&pb)]))["similar"],
        Value::Bool(true)
    );

    let c = QMatrix::from_rows(vec![
        vec![Quaternion::I, Quaternion::ONE],
        vec![Quaternion::ZERO, Quaternion::I],
    ]);
    let d = QMatrix::from_rows(vec![
        vec![Quaternion::I, Quaternion::real(2.0)],
        vec![Quaternion::ZERO, Quaternion::I],
    ]);
    let (pc, pd) = (
        write(dir.path(), "c.json", &c),
        write(dir.path(), "d.json", &d),
    );
    assert_eq!(
        json(&qcanon(&["similar", s(&pc), s(&pd)]))["similar"],
        Value::Bool(false)
    );
}

#[test]
fn projector_and_square_zero() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "p.json",
        &QMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 0.0]]),
    );
    let v = json(&qcanon(&["projector", s(&p)]));
    let b = v["summary"]["b_values"].as_array().unwrap();
    assert_eq!(b.len(), 1);
    assert!((b[0].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let z = write(
        dir.path(),
        "z.json",
        &QMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]),
    );
    let v = json(&qcanon(&["squarezero", s(&z)]));
    assert_eq!(v["summary"]["kind"], "square_zero");
}

#[test]
fn schur_reports_weyr_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "a.json",
        &QMatrix::from_real_rows(&[&[5.0, 4.0], &[0.0, 5.0]]),
    );
    let v = json(&qcanon(&["schur", s(&p)]));
    assert_eq!(v["sizes"], serde_json::json!([1, 1]));
    let out = qcanon(&["--format", "text", "schur", s(&p)]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("sizes: [1, 1]") && text.contains("[5+0i+0j+0k, 4+0i+0j+0k]"),
        "{text}"
    );
}

#[test]
fn decompose_accepts_matrices_and_saved_results() {
    let dir = tempfile::tempdir().unwrap();
    let mut a = QMatrix::from_diag(&[3.0, 2.0, 1.0].map(|y| Quaternion::new(0.0, y, 0.0, 0.0)));
    a[(0, 2)] = Quaternion::ONE;
    let p = write(dir.path(), "a.json", &a);
    let v = json(&qcanon(&["decompose", s(&p)]));
    assert_eq!(v["permutation"], serde_json::json!([1, 3, 2]));

    let saved = dir.path().join("r.json");
    std::fs::write(&saved, qcanon(&["canon", s(&p)]).stdout).unwrap();
    assert_eq!(
        json(&qcanon(&["decompose", s(&saved)]))["permutation"],
        serde_json::json!([1, 3, 2])
    );
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let derog = write(
        dir.path(),
        "d.json",
        &QMatrix::from_diag(&[Quaternion::I, Quaternion::I]),
    );
    let out = qcanon(&["canon", s(&derog)]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.starts_with("error:") && err.lines().count() == 1,
        "{err}"
    );

    let np = write(dir.path(), "n.json", &QMatrix::from_real_rows(&[&[2.0]]));
    assert_eq!(qcanon(&["projector", s(&np)]).status.code(), Some(1));
    let nonreal = write(dir.path(), "i.json", &QMatrix::from_diag(&[Quaternion::I]));
    assert_eq!(qcanon(&["schur", s(&nonreal)]).status.code(), Some(1));

    assert_eq!(
        qcanon(&["canon", s(&dir.path().join("missing.json"))])
            .status
            .code(),
        Some(2)
    );
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"rows":2,"cols":2,"entries":[]}"#).unwrap();
    assert_eq!(qcanon(&["canon", s(&bad)]).status.code(), Some(2));
    assert_eq!(
        qcanon(&["--eps-rank", "-1", "canon", s(&derog)])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(qcanon(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn gadgets_are_deterministic_and_written() {
    let dir = tempfile::tempdir().unwrap();
    let a = qcanon(&["--seed", "9", "gadget", "m5", "--n", "2"]);
    let b = qcanon(&["--seed", "9", "gadget", "m5", "--n", "2"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let m = parse_matrix(std::str::from_utf8(&a.stdout).unwrap()).unwrap();
    assert_eq!(m.rows(), 10);

    let out = dir.path().join("ma.json");
    let q = write(dir.path(), "q.json", &QMatrix::from_diag(&[Quaternion::K]));
    assert!(
        qcanon(&["gadget", "ma", "--input", s(&q), "--out", s(&out)])
            .status
            .success()
    );
    let m = parse_matrix(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(m[(0, 2)], Quaternion::K);

    let pair = json(&qcanon(&["gadget", "wild-d", "--input", s(&q)]));
    assert_eq!(pair.as_array().unwrap().len(), 2);
    assert_eq!(
        qcanon(&["gadget", "wild-a", "--input", s(&q)])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn reports_are_deterministic_and_reparse_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let a = random_nonderogatory(5, &mut seeded(77));
    let p = write(dir.path(), "a.json", &a);
    let x = qcanon(&["canon", s(&p)]);
    let y = qcanon(&["canon", s(&p)]);
    assert_eq!(x.stdout, y.stdout);
    let text = std::str::from_utf8(&x.stdout).unwrap();
    let r = parse_canonical_result(text).unwrap();
    assert_eq!(
        to_json(&r.canon),
        to_json(&parse_matrix(&to_json(&r.canon)).unwrap())
    );
    let again = write(dir.path(), "c.json", &r.canon);
    assert_eq!(
        parse_matrix(&std::fs::read_to_string(again).unwrap()).unwrap(),
        r.canon
    );
}
