//! End-to-end tests of the command-line interface: exit codes, report files,
//! config validation, and output modes.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sovstar"))
}

#[test]
fn list_checks_names_everything() {
    let out = bin().arg("list-checks").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in [
        "classification",
        "gamma-inversion",
        "levi",
        "metric-extension",
        "ops-identities",
        "separation",
        "associativity",
        "c1-bracket",
        "delta-derivation",
        "kappa",
        "tau-roundtrip",
        "technstat",
        "leftmult",
        "invtau",
        "theorem-ident",
        "d-extraction",
        "extended-star",
        "vanishing-on-S",
        "sphere-closed-form",
    ] {
        assert!(text.contains(name), "missing {name}");
    }
}

#[test]
fn sphere_demo_n1_passes_and_writes_report() {
    let dir = std::env::temp_dir().join("sovstar-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let report_path = dir.join("n1.json");
    let out = bin()
        .args(["sphere-demo", "--n", "1", "--report"])
        .arg(&report_path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["overall"], "pass");
    assert_eq!(report["engine"]["jet_order"], 10);
    assert!(report["records"].as_array().unwrap().len() > 30);
}

#[test]
fn verify_runs_a_config_with_expected_failures() {
    let dir = std::env::temp_dir().join("sovstar-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let config_path = dir.join("cylinder.json");
    let config = serde_json::json!({
        "dimension": 2,
        "defining_function": [
            {"z_exponents": [1,0], "zbar_exponents": [1,0], "coeff_re": "1", "coeff_im": "0"},
            {"z_exponents": [0,0], "zbar_exponents": [0,0], "coeff_re": "-1", "coeff_im": "0"}
        ],
        "base_points": [
            {"coordinates": [{"re": "1", "im": "0"}, {"re": "0", "im": "0"}],
             "expected_case": "case2",
             "expected_failures": [
                {"check": "gamma-inversion", "error": "GammaSingular"},
                {"check": "kappa", "error": "GammaSingular"}
             ]}
        ],
        "jet_order": 8,
        "nu_order": 2,
        "checks": ["classification", "levi", "gamma-inversion", "kappa"],
        "seed": 11
    });
    std::fs::write(&config_path, config.to_string()).unwrap();
    let out = bin()
        .args(["verify", "--json", "--config"])
        .arg(&config_path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(report["overall"], "pass");
    let records = report["records"].as_array().unwrap();
    let levi = records.iter().find(|r| r["name"] == "levi").unwrap();
    assert!(levi["detail"].as_str().unwrap().contains("degenerate"));
}

#[test]
fn verify_fails_without_declared_expectations() {
    let dir = std::env::temp_dir().join("sovstar-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let config_path = dir.join("cylinder-strict.json");
    let config = serde_json::json!({
        "dimension": 2,
        "defining_function": [
            {"z_exponents": [1,0], "zbar_exponents": [1,0], "coeff_re": "1", "coeff_im": "0"},
            {"z_exponents": [0,0], "zbar_exponents": [0,0], "coeff_re": "-1", "coeff_im": "0"}
        ],
        "base_points": [
            {"coordinates": [{"re": "1", "im": "0"}, {"re": "0", "im": "0"}],
             "expected_case": "case2"}
        ],
        "jet_order": 8,
        "nu_order": 2,
        "checks": ["gamma-inversion"],
        "seed": 11
    });
    std::fs::write(&config_path, config.to_string()).unwrap();
    let out = bin().args(["verify", "--config"]).arg(&config_path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn malformed_and_unknown_field_configs_are_rejected() {
    let dir = std::env::temp_dir().join("sovstar-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let config_path = dir.join("bad.json");
    std::fs::write(&config_path, "{\"dimension\": 1, \"mystery\": true}").unwrap();
    let out = bin().args(["verify", "--config"]).arg(&config_path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("parse error"), "{err}");
}

#[test]
fn order_overrides_are_validated() {
    let dir = std::env::temp_dir().join("sovstar-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let config_path = dir.join("sphere-small.json");
    let config = sovstar::scenario::ScenarioConfig::sphere(1, 8, 2, 1);
    std::fs::write(&config_path, config.to_json()).unwrap();
    // jet order 4 violates the truncation budget for R = 2
    let out = bin()
        .args(["verify", "--jet-order", "4", "--config"])
        .arg(&config_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("truncation budget"), "{err}");
}
