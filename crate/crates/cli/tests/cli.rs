use std::path::PathBuf;
use std::process::{Command, Output};

use num_bigint::BigInt;
use torsion_cli::sequence_csv::{read_csv, write_csv};
use torsion_core::exact_linalg::IntMatrix;

fn torsion(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torsion")).args(args).output().expect("binary runs")
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn complex_m3() {
    let o = torsion(&["complex", &data("m3.json")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("H^0: free rank 1, torsion 0, R^2 = 10\n"), "{s}");
    assert!(s.contains("H^1: free rank 1, torsion 0, R^2 = 1/10"), "{s}");
    assert!(s.contains("torsion identity: lhs = 100, rhs = 100: ok"));
}

#[test]
fn complex_times_six() {
    let o = torsion(&["complex", &data("times6.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("H^1: free rank 0, torsion Z/6"));
}

#[test]
fn complex_with_group_action() {
    let o = torsion(&["complex", &data("swap_action.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("|G| = 2"));
}

#[test]
fn malformed_json_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"dims\": [1, 1],\n \"differentials\": [[[1]]").unwrap();
    let o = torsion(&["complex", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2"), "{err}");

    std::fs::write(&bad, r#"{"dims": [1, 2], "differentials": [[[1], [true]]]}"#).unwrap();
    let o = torsion(&["complex", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("differentials[0][1][0]"));

    let o = torsion(&["complex", "/nonexistent/file.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_flags_are_input_errors() {
    assert_eq!(torsion(&["tower", "--circle", "2,1;1,1", "--nmax", "0"]).status.code(), Some(1));
    assert_eq!(torsion(&["tower", "--circle", "2,1;1,1", "--tol", "-1"]).status.code(), Some(1));
    assert_eq!(torsion(&["tower"]).status.code(), Some(1));
    assert_eq!(torsion(&["tower", "--circle", "2,0;0,1"]).status.code(), Some(1));
    assert_eq!(torsion(&["knot", "--alexander", "t^2-2t+3"]).status.code(), Some(1));
    assert_eq!(torsion(&["mahler", "t^^2"]).status.code(), Some(1));
    assert_eq!(torsion(&["--help"]).status.code(), Some(0));
}

#[test]
fn tower_circle_limit() {
    let o = torsion(&["tower", &data("circle_cat.json"), "--nmax", "64", "--tol", "0.05"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    assert!(s.contains("tau2 = 0.962423650119"), "{s}");
    assert!(s.contains("limit check at N = 64"));
}

#[test]
fn tower_trefoil_tau_zero() {
    let o = torsion(&["tower", &data("trefoil.json"), "--nmax", "6"]);
    let s = stdout(&o);
    assert!(s.contains("tau2 = 0.000000000000"), "{s}");
    // Regulators still carry log N / N at this size.
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tower_single_row() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("one.csv");
    let o = torsion(&["tower", "--circle", "2,1;1,1", "--nmax", "1", "--csv", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no limit claim"));
    let rows = read_csv(std::fs::File::open(&csv).unwrap()).unwrap();
    assert_eq!(rows.len(), 1);
}

#[test]
fn tower_non_acyclic_warns() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("zero.json");
    std::fs::write(&f, r#"{"m":1,"dims":[1,1],"differentials":[[["0"]]]}"#).unwrap();
    let o = torsion(&["tower", f.to_str().unwrap(), "--nmax", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("tau2 omitted"), "{s}");
    assert!(s.contains("no limit claim"));
}

#[test]
fn csv_round_trip_and_worker_independence() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for (path, workers) in [(&a, "1"), (&b, "4")] {
        let o = torsion(&["tower", "--circle", "2,1;1,1", "--nmax", "40", "--workers", workers, "--csv", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let text_a = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text_a, std::fs::read_to_string(&b).unwrap());

    let rows = read_csv(text_a.as_bytes()).unwrap();
    let cat = IntMatrix::from_rows(&[[2i64, 1], [1, 1]]);
    let id = IntMatrix::identity(2);
    for r in &rows {
        let oracle = (&id - &cat.pow(r.n as u32)).det().unwrap();
        assert_eq!(r.torsion_orders, vec![BigInt::from(1), num_traits::Signed::abs(&oracle)]);
    }
    let mut again = Vec::new();
    write_csv(&rows, &mut again).unwrap();
    assert_eq!(String::from_utf8(again).unwrap(), text_a);
    assert_eq!(read_csv(text_a.as_bytes()).unwrap(), rows);
}

#[test]
fn mahler_golden() {
    let o = torsion(&["mahler", "t^2-3t+1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("M(p) = 2.618033988750"));
    let o = torsion(&["mahler", "1 + x + y"]);
    assert!(stdout(&o).contains("log M(p) ≈ 0.32306"), "{}", stdout(&o));
}

#[test]
fn knot_table() {
    let o = torsion(&["knot", "--alexander", "t^2-3t+1", "--nmax", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let orders: Vec<&str> = s.lines().skip(2).take(3).map(|l| l.split_whitespace().nth(1).unwrap()).collect();
    assert_eq!(orders, ["1", "5", "16"]);
}

#[test]
fn l2_values() {
    let o = torsion(&["l2", "sl3", "--w", "0,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("t2 = √2/π² ≈ 0.143289792"), "{}", stdout(&o));
    let o = torsion(&["l2", "hyperbolic", "--w", "0,0"]);
    assert!(stdout(&o).starts_with("t2 = -1/(6π)"));
    let o = torsion(&["l2", "sl2c", "--w", "1,0", "--volume", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("13/(6π)"));
    let o = torsion(&["l2", "sl2c", "--w", "2,2", "--volume", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(torsion(&["l2", "sl3", "--w", "0,1,0"]).status.code(), Some(1));
}

#[test]
fn regularize_demo_passes() {
    let o = torsion(&["regularize-demo"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
