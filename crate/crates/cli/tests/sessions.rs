//! Golden tests over the session corpus in `sessions/`.
//!
//! Set `WEILJETS_BLESS=1` to rewrite the golden files after an intended change.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;
use weiljets_cli::{run_session, Format, Options};

fn corpus() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("sessions");
    let mut files: Vec<PathBuf> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    files
}

fn options() -> Options {
    Options { verify_oracles: true, ..Options::default() }
}

fn run(path: &Path, format: Format) -> (String, i32) {
    let text = fs::read_to_string(path).unwrap();
    let (out, report) = run_session(&text, options(), format).unwrap();
    (out, report.exit_code())
}

fn result<'a>(report: &'a Value, index: usize) -> &'a Value {
    &report["results"][index]["result"]
}

fn load(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("sessions").join(name);
    serde_json::from_str(&run(&path, Format::Json).0).unwrap()
}

#[test]
fn corpus_matches_golden_files() {
    let bless = std::env::var_os("WEILJETS_BLESS").is_some();
    let files = corpus();
    assert!(files.len() >= 6);
    for path in files {
        let stem = path.file_stem().unwrap().to_str().unwrap().to_string();
        let golden_dir = path.parent().unwrap().join("golden");
        for (format, ext) in [(Format::Json, "json"), (Format::Text, "txt")] {
            let (out, _) = run(&path, format);
            let golden = golden_dir.join(format!("{stem}.{ext}"));
            if bless {
                fs::create_dir_all(&golden_dir).unwrap();
                fs::write(&golden, &out).unwrap();
            } else {
                let expected = fs::read_to_string(&golden).unwrap_or_else(|_| panic!("missing {}", golden.display()));
                assert_eq!(out, expected, "{} differs from its golden file", path.display());
            }
        }
    }
}

#[test]
fn corpus_is_byte_deterministic() {
    for path in corpus() {
        for format in [Format::Json, Format::Text] {
            assert_eq!(run(&path, format), run(&path, format), "{}", path.display());
        }
    }
}

#[test]
fn json_reports_round_trip() {
    for path in corpus() {
        let (out, _) = run(&path, Format::Json);
        let value: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(serde_json::to_string_pretty(&value).unwrap() + "\n", out);
    }
}

#[test]
fn only_the_error_session_fails() {
    for path in corpus() {
        let expected = i32::from(path.file_stem().unwrap() == "errors");
        assert_eq!(run(&path, Format::Json).1, expected, "{}", path.display());
    }
}

#[test]
fn algebra_invariants() {
    let r = load("algebras.json");
    let dims: Vec<(u64, u64, u64, u64)> = (0..8)
        .map(|i| {
            let v = result(&r, i);
            let n = |k: &str| v[k].as_u64().unwrap();
            (n("dim"), n("order"), n("width"), n("der_dim"))
        })
        .collect();
    // R_1^1, R_1^2, R_2^2, R_3^2, (x^2,y^2), (x^2-y^3,xy), R_1^1⊗R_1^1, R_1^2⊗R_1^1
    assert_eq!(
        dims,
        [
            (2, 1, 1, 1),
            (3, 2, 1, 2),
            (6, 2, 2, 10),
            (10, 2, 3, 27),
            (4, 2, 2, 4),
            (5, 3, 2, 5),
            (4, 2, 2, 4),
            (6, 3, 2, 7)
        ]
    );
    assert_eq!(result(&r, 10)["der_stable"], Value::Bool(true));
    assert_eq!(result(&r, 11)["der_stable"], Value::Bool(false));
}

#[test]
fn jet_reports() {
    let r = load("jets.json");
    assert_eq!(result(&r, 1)["classical"], Value::Bool(false));
    assert_eq!(result(&r, 1)["dim"], Value::from(5));
    let fat = result(&r, 13);
    assert_eq!(fat["derived"]["generators"], serde_json::json!(["x", "z", "y^2"]));
    assert_eq!(fat["taylor_condition"], Value::Bool(true));
    for i in 10..=16 {
        assert_eq!(result(&r, i)["oracle_agrees"], Value::Bool(true), "derive #{i}");
    }
    assert_eq!(result(&r, 11)["derived"]["generators"], serde_json::json!(["y", "x^2"]));
    assert_eq!(result(&r, 17)["rank"], Value::from(1));
    assert_eq!(result(&r, 20)["image_dim"], Value::from(1));
}

#[test]
fn group_reports() {
    let r = load("heisenberg.json");
    assert_eq!(result(&r, 0)["base_point"], serde_json::json!(["-1", "3", "11/2"]));
    assert_eq!(result(&r, 2)["hold"], Value::Bool(true));
    for k in ["product_matches", "lie_product_matches", "inverse_matches", "identity_matches"] {
        assert_eq!(result(&r, 3)[k], Value::Bool(true));
    }
}
