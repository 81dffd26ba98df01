mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use common::{first_difference, guarded, rng};
use jacobian_isogeny::cli::{ProblemSpec, EXIT_CHECK, EXIT_SCHEMA, EXIT_SOLVER};
use jacobian_isogeny::oracle::forward_instance;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacobian-isogeny")).args(args).output().unwrap()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("jacobian-isogeny-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn golden_result_is_byte_identical() {
    let out = bin(&["solve", fixture("split_genus3.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let golden = std::fs::read(fixture("split_genus3.result.json")).unwrap();
    assert_eq!(out.stdout, golden);
}

#[test]
fn fixture_regenerates_and_matches_forward_answer() {
    let n = 24;
    let ctx = guarded(11, 4, n);
    let inst = forward_instance(&ctx, 3, n, &mut rng(7)).unwrap();
    let spec = ProblemSpec::from_forward(&inst, 4, n).unwrap();
    assert_eq!(spec.to_json(), std::fs::read_to_string(fixture("split_genus3.json")).unwrap());

    let golden: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("split_genus3.result.json")).unwrap()).unwrap();
    let table = golden["U"].as_array().unwrap();
    let expected = inst.u.convert(&ctx.with_digits(4).unwrap()).unwrap();
    for (k, row) in table.iter().enumerate() {
        for (i, c) in row.as_array().unwrap().iter().enumerate() {
            assert_eq!(c.as_str().unwrap(), expected.term(k, i).value().to_string(), "U[{k}][{i}]");
        }
    }
    assert_eq!(first_difference(&inst.u, &expected, 4), None);
}

#[test]
fn order_one_echoes_initial_data() {
    let mut spec = ProblemSpec::from_json(&std::fs::read_to_string(fixture("split_genus3.json")).unwrap()).unwrap();
    spec.n = 1;
    let path = scratch("echo.json", &spec.to_json());
    let out = bin(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let golden: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("split_genus3.result.json")).unwrap()).unwrap();
    let col0 = |d: &serde_json::Value, key: &str| -> Vec<String> {
        d[key].as_array().unwrap().iter().map(|r| r[0].as_str().unwrap().to_string()).collect()
    };
    assert_eq!(col0(&doc, "U"), col0(&golden, "U"));
    assert_eq!(col0(&doc, "V"), col0(&golden, "V"));
    assert!(doc["U"][0].as_array().unwrap().len() == 1);
}

#[test]
fn repeated_root_is_a_solver_error() {
    let spec = r#"{"context":{"p":7,"N":3},"curve":{"f":[1,0,0,2,0,1]},
        "initial":{"U0":[1,-2,1],"V0":[1,0]},"rhs":{"kind":"series","G":[[0,1],[0,0]]},"n":8}"#;
    let path = scratch("double.json", spec);
    let out = bin(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(EXIT_SOLVER));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotSeparable"));
}

#[test]
fn malformed_file_is_a_schema_error() {
    let path = scratch("bad.json", r#"{"context":{"p":7},"curve":{"f":[1]}}"#);
    let out = bin(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(EXIT_SCHEMA));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: Schema"));
    let out = bin(&["solve", "/nonexistent/problem.json"]);
    assert_eq!(out.status.code(), Some(EXIT_SCHEMA));
}

#[test]
fn check_passes_on_mult_by_three() {
    let out = bin(&["check", fixture("mult3_genus2.json").to_str().unwrap()]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    for name in ["residual", "mumford", "stability", "cantor"] {
        assert!(text.contains(&format!("PASS {name}")), "{text}");
    }
}

#[test]
fn flipped_sign_fails_check() {
    let out = bin(&["check", "--flip-step4-sign", fixture("split_genus3.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(EXIT_CHECK));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn bench_with_empty_range_prints_header() {
    let out = bin(&["bench", "--g", "4..2", "--n", "64..64"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().next().unwrap().split(',').next(), Some("g"));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().filter(|l| !l.starts_with('#')).count(), 1);
}

#[test]
fn bench_small_grid() {
    let out = bin(&["bench", "--g", "1..2", "--n", "16..32", "--p", "11"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = String::from_utf8_lossy(&out.stdout).lines().filter(|l| !l.starts_with('#')).count();
    assert_eq!(rows, 1 + 4);
}
