use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn depthforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_depthforge"))
        .args(args)
        .env_remove("DEPTHFORGE_MAX_WEIGHT")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = depthforge(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

/// (file stem, arguments). Set DEPTHFORGE_BLESS=1 to rewrite the files.
const GOLDEN: &[(&str, &[&str])] = &[
    ("verify_brown_w12", &["verify", "brown", "--weight", "12"]),
    (
        "verify_brown_to16",
        &["verify", "brown", "--max-weight", "16"],
    ),
    ("period_basis_w10", &["period", "basis", "--weight", "10"]),
    ("period_basis_w22", &["period", "basis", "--weight", "22"]),
    (
        "depth_relations_w16",
        &["depth", "relations", "--weight", "16"],
    ),
    ("depth_matrix_w8", &["depth", "matrix", "--weight", "8"]),
    (
        "verify_prop49_k2_p3",
        &["verify", "prop49", "--k", "2", "--p", "3"],
    ),
    (
        "verify_eigen_w12",
        &["verify", "eigen", "--weight", "12", "--p", "2,3,5"],
    ),
    (
        "verify_lemma17",
        &["verify", "lemma17", "--factors", "Sym1(2),Sym2(4)"],
    ),
    (
        "eis_hecke_w12_p2",
        &["eis", "hecke", "--weight", "12", "--p", "2", "--prec", "60"],
    ),
    (
        "eis_qexp_delta",
        &[
            "eis", "qexp", "--weight", "12", "--form", "delta", "--prec", "12",
        ],
    ),
    (
        "eis_factor_delta",
        &[
            "eis", "factor", "--weight", "12", "--form", "delta", "--prec", "40",
        ],
    ),
    (
        "rep_decompose",
        &["rep", "decompose", "--labels", "Sym1(0),Sym1(0),Sym2(1)"],
    ),
    (
        "rep_bigrade",
        &["rep", "bigrade", "--labels", "Sym2(3),Sym1(2)"],
    ),
    ("bern_number_12", &["bern", "number", "--n", "12"]),
    (
        "bern_poly_4",
        &["bern", "poly", "--n", "4", "--x", "0,1/2,2/7"],
    ),
];

const GOLDEN_CSV: &[(&str, &[&str])] = &[
    (
        "verify_brown_to20",
        &["verify", "brown", "--max-weight", "20", "--format", "csv"],
    ),
    (
        "eis_factor_delta",
        &[
            "eis", "factor", "--weight", "12", "--form", "delta", "--prec", "40", "--format", "csv",
        ],
    ),
];

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

#[test]
fn golden_reports() {
    let bless = std::env::var_os("DEPTHFORGE_BLESS").is_some();
    let cases = GOLDEN
        .iter()
        .map(|(n, a)| (format!("{n}.json"), *a))
        .chain(GOLDEN_CSV.iter().map(|(n, a)| (format!("{n}.csv"), *a)));
    for (file, args) in cases {
        let out = depthforge(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let path = golden_dir().join(&file);
        if bless {
            std::fs::write(&path, &out.stdout).unwrap();
            continue;
        }
        let expected =
            std::fs::read(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        assert!(
            out.stdout == expected,
            "{file} differs from golden output for {args:?}"
        );
    }
}

#[test]
fn documented_examples() {
    let r = json(&["verify", "brown", "--weight", "12"]);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["weight"], 12);
    assert_eq!(r["kernel_dim"], 1);
    assert_eq!(r["period_dim"], 1);
    assert_eq!(r["match"], true);

    let r = json(&["period", "basis", "--weight", "10"]);
    assert_eq!(r["dim"], 0);
    assert_eq!(r["basis"], Value::Array(vec![]));

    let r = json(&["eis", "hecke", "--weight", "12", "--p", "2", "--prec", "60"]);
    assert_eq!(r["eigenvalue"], "2049");
}

#[test]
fn reports_carry_schema_and_reference() {
    for (_, args) in GOLDEN {
        let r = json(args);
        assert_eq!(r["schema"], 1, "{args:?}");
        assert!(
            r["paper_ref"].as_str().is_some_and(|s| !s.is_empty()),
            "{args:?}"
        );
        assert_eq!(r["ok"], true);
        assert!(r["first_failure"].is_null());
    }
}

#[test]
fn delta_values() {
    let r = json(&[
        "eis", "qexp", "--weight", "12", "--form", "delta", "--prec", "6",
    ]);
    let coeffs: Vec<&str> = r["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(coeffs, ["0", "1", "-24", "252", "-1472", "4830"]);
    let r = json(&[
        "eis", "factor", "--weight", "12", "--form", "delta", "--p", "2", "--prec", "10",
    ]);
    // 1 - (-24) + 2^11
    assert_eq!(r["factor"], "2073");
    assert_eq!(r["weil_bound"], true);
}

#[test]
fn failed_verification_exits_one_with_named_failure() {
    let out = depthforge(&["period", "check", "--poly", "x^8*y^2 - x^2*y^8"]);
    assert_eq!(out.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["ok"], false);
    assert_eq!(r["first_failure"], "three_term");

    let out = depthforge(&["period", "check", "--poly", "x^9*y - x*y^9"]);
    assert_eq!(out.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["first_failure"], "even");

    let good = "x^8*y^2 - 3*x^6*y^4 + 3*x^4*y^6 - x^2*y^8";
    assert_eq!(
        json(&["period", "check", "--poly", good])["is_period_poly"],
        true
    );
}

#[test]
fn invalid_input_exits_two() {
    for args in [
        &["verify", "brown", "--weight", "13"][..],
        &["eis", "hecke", "--weight", "12", "--p", "4"],
        &["eis", "hecke", "--weight", "12", "--prec", "1"],
        &["eis", "hecke", "--weight", "12", "--p", "7", "--prec", "10"],
        &["eis", "qexp", "--weight", "10", "--form", "delta"],
        &["rep", "decompose", "--labels", "Sym(2)"],
        &["verify", "lemma17", "--factors", "Sym2(1),Sym1(2)"],
        &["period", "check", "--poly", "x^2 + y"],
        &["depth", "matrix", "--weight", "4"],
        &["frobnicate"],
    ] {
        assert_eq!(depthforge(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn unwritable_output_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("report.json");
    let out = depthforge(&[
        "period",
        "basis",
        "--weight",
        "12",
        "--output",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn output_file_matches_stdout_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("brown.json");
    let args = ["verify", "brown", "--max-weight", "18"];
    let first = depthforge(&args).stdout;
    assert_eq!(first, depthforge(&args).stdout);
    let mut with_file = args.to_vec();
    with_file.extend(["--output", path.to_str().unwrap()]);
    let out = depthforge(&with_file);
    assert!(out.status.success() && out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), first);
}

#[test]
fn batch_range_and_environment_cap() {
    let r = json(&["verify", "brown"]);
    let weights: Vec<u64> = r["cases"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["weight"].as_u64().unwrap())
        .collect();
    assert_eq!(weights, (6..=30).step_by(2).collect::<Vec<_>>());

    let out = Command::new(env!("CARGO_BIN_EXE_depthforge"))
        .args(["verify", "brown"])
        .env("DEPTHFORGE_MAX_WEIGHT", "10")
        .output()
        .unwrap();
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["cases"].as_array().unwrap().len(), 3);

    // The flag wins over the environment.
    let out = Command::new(env!("CARGO_BIN_EXE_depthforge"))
        .args(["verify", "brown", "--max-weight", "14"])
        .env("DEPTHFORGE_MAX_WEIGHT", "10")
        .output()
        .unwrap();
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["cases"].as_array().unwrap().len(), 5);
}

#[test]
fn csv_has_one_row_per_case() {
    let out = depthforge(&["verify", "brown", "--max-weight", "14", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 5);
    assert!(lines[0].split(',').any(|c| c == "kernel_dim"));

    let out = depthforge(&[
        "eis", "factor", "--weight", "12", "--form", "delta", "--prec", "30", "--format", "csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    // Primes up to 15.
    assert_eq!(text.lines().count(), 1 + 6);
}

#[test]
fn prop49_reports_both_entry_readings() {
    let r = json(&["verify", "prop49", "--k", "2", "--p", "5"]);
    assert_eq!(r["holds"], true);
    assert_eq!(r["matrices_checked"], 480);
    assert_eq!(r["entry_c_holds"], false);
    assert!(r["entry_c_failure_matrix"].is_array());
}

#[test]
fn distribution_grid_passes() {
    let r = json(&["bern", "dist"]);
    assert_eq!(r["cases"].as_array().unwrap().len(), 9 * 6 * 4);
    assert_eq!(r["ok"], true);
}
