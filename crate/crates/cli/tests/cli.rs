//! End-to-end runs of the heckeblocks binary against the shipped packs.

use std::path::PathBuf;
use std::process::{Command, Output};

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn heckeblocks(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heckeblocks"))
        .arg("--data-dir")
        .arg(data_dir())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn all_blocks_g4_text_layout() {
    let out = stdout(&heckeblocks(&["all-blocks", "G4"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 14, "seven records, two lines each");
    assert_eq!(lines[0], "No essential hyperplane");
    assert_eq!(
        lines[1],
        r#"[["phi{1,0}"],["phi{1,4}"],["phi{1,8}"],["phi{2,5}"],["phi{2,3}"],["phi{2,1}"],["phi{3,2}"]]"#
    );
    // every printed record shows up with its partition intact
    let body: Vec<(&str, &str)> = lines.chunks(2).map(|c| (c[0], c[1])).collect();
    let at = |h: &str| body.iter().find(|(d, _)| *d == h).map(|(_, p)| *p).unwrap();
    assert_eq!(
        at("2c_0-c_1-c_2=0"),
        r#"[["phi{1,0}","phi{2,5}","phi{3,2}"],["phi{1,4}"],["phi{1,8}"],["phi{2,3}"],["phi{2,1}"]]"#
    );
    assert_eq!(
        at("c_0-c_1=0"),
        r#"[["phi{1,0}","phi{1,4}","phi{2,1}"],["phi{1,8}"],["phi{2,5}","phi{2,3}"],["phi{3,2}"]]"#
    );
}

#[test]
fn all_blocks_g4_json_record() {
    let out = stdout(&heckeblocks(&["all-blocks", "G4", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let records = v.as_array().unwrap();
    assert_eq!(records.len(), 7);
    assert!(records[0]["cond"].is_null());
    let rec = records
        .iter()
        .find(|r| r["cond"] == serde_json::json!([2, -1, -1]))
        .expect("cond [2,-1,-1] record present");
    assert_eq!(rec["block"], serde_json::json!([[1, 4, 7], [2], [3], [5], [6]]));
}

#[test]
fn json_and_text_agree() {
    let text = stdout(&heckeblocks(&["all-blocks", "G4"]));
    let json = stdout(&heckeblocks(&["all-blocks", "G4", "--format", "json"]));
    let names = stdout(&heckeblocks(&["validate", "G4"]));
    // character order as validate lists it
    let labels: Vec<&str> = names
        .lines()
        .filter(|l| l.starts_with("  phi"))
        .map(|l| l.trim().split(':').next().unwrap())
        .collect();
    assert_eq!(labels.len(), 7);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let mut rendered = String::new();
    for rec in v.as_array().unwrap() {
        let parts: Vec<Vec<String>> = rec["block"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| {
                p.as_array()
                    .unwrap()
                    .iter()
                    .map(|i| labels[i.as_u64().unwrap() as usize - 1].to_string())
                    .collect()
            })
            .collect();
        rendered.push_str(&serde_json::to_string(&parts).unwrap());
        rendered.push('\n');
    }
    let text_partitions: Vec<&str> =
        text.lines().skip(1).step_by(2).collect();
    assert_eq!(rendered.trim_end().lines().collect::<Vec<_>>(), text_partitions);
}

#[test]
fn unknown_group_is_a_domain_error() {
    let out = heckeblocks(&["all-blocks", "NoSuchGroup"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("unknown group NoSuchGroup"), "{err}");
}

#[test]
fn rouquier_printed_example() {
    let out = stdout(&heckeblocks(&["rouquier-blocks", "G4", "--params", "1,E3*x,E3^2*x^2"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "[ [ 1 ], [ 2, 5, 7 ], [ 3 ], [ 4 ], [ 6 ] ]");
    assert_eq!(
        lines[1],
        r#"[["phi{1,0}"],["phi{1,4}","phi{2,3}","phi{3,2}"],["phi{1,8}"],["phi{2,5}"],["phi{2,1}"]]"#
    );
}

#[test]
fn rouquier_zero_vector_is_one_block() {
    let out = stdout(&heckeblocks(&["rouquier-blocks", "G4", "--n", "0,0,0"]));
    assert_eq!(out.lines().next().unwrap(), "[ [ 1, 2, 3, 4, 5, 6, 7 ] ]");
}

#[test]
fn rouquier_implied_zeta_pattern() {
    // bare powers of x leave the pattern implied: n = (0,1,1)
    let out = stdout(&heckeblocks(&["rouquier-blocks", "G4", "--params", "1,x,x"]));
    assert_eq!(out.lines().next().unwrap(), "[ [ 1 ], [ 2, 3, 4 ], [ 5, 6 ], [ 7 ] ]");
}

#[test]
fn rouquier_single_value_replicates() {
    // q = x^2 becomes [q, E(e), ..., E(e)^{e-1}] on the one orbit: n = (2,0,0)
    let a = stdout(&heckeblocks(&["rouquier-blocks", "G4", "--params", "x^2"]));
    let b = stdout(&heckeblocks(&["rouquier-blocks", "G4", "--n", "2,0,0"]));
    assert_eq!(a, b);
}

#[test]
fn rouquier_parameter_errors() {
    let out = heckeblocks(&["rouquier-blocks", "G4", "--params", "1,2*x,x"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a root of unity"));

    let out = heckeblocks(&["rouquier-blocks", "G4", "--params", "1,x"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad parameter shape"));

    // explicit roots of unity in the wrong slots
    let out = heckeblocks(&["rouquier-blocks", "G4", "--params", "1,E3^2*x,E3*x^2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad parameter shape"));

    let out = heckeblocks(&["rouquier-blocks", "G4", "--n", "0,zero,0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    let out = heckeblocks(&["rouquier-blocks", "G4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = heckeblocks(&["rouquier-blocks", "G4", "--params", "1,x,x", "--n", "0,0,0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = heckeblocks(&["all-blocks", "G4", "--budget", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = heckeblocks(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn essential_hyperplanes_error_text() {
    let out = heckeblocks(&["essential-hyperplanes", "G4", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        String::from_utf8_lossy(&out.stderr).trim(),
        "Error, The number p should divide the order of the group"
    );
}

#[test]
fn essential_hyperplanes_sets() {
    let printed_all = [
        "c_1-c_2=0",
        "c_0-c_1=0",
        "c_0-c_2=0",
        "2c_0-c_1-c_2=0",
        "c_0-2c_1+c_2=0",
        "c_0+c_1-2c_2=0",
    ];
    for p in ["0", "2"] {
        let out = stdout(&heckeblocks(&["essential-hyperplanes", "G4", p]));
        let mut got: Vec<&str> = out.lines().collect();
        let mut want = printed_all.to_vec();
        got.sort();
        want.sort();
        assert_eq!(got, want, "p = {p}");
    }
    let out = stdout(&heckeblocks(&["essential-hyperplanes", "G4", "3"]));
    let mut got: Vec<&str> = out.lines().collect();
    got.sort();
    assert_eq!(got, vec!["c_0-c_1=0", "c_0-c_2=0", "c_1-c_2=0"]);
}

#[test]
fn certified_runs_pass() {
    for args in [
        vec!["all-blocks", "G4", "--certified"],
        vec!["all-blocks", "G6", "--certified"],
        vec!["rouquier-blocks", "G4", "--certified", "--params", "1,E3*x,E3^2*x^2"],
        vec!["rouquier-blocks", "G6", "--certified", "--n", "0,0,0,1,2"],
        vec!["essential-hyperplanes", "G4", "0", "--certified"],
        vec!["essential-hyperplanes", "G6", "3", "--certified"],
        vec!["validate", "G4", "--certified"],
    ] {
        let out = heckeblocks(&args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn validate_reports_and_passes() {
    for g in ["g4", "g6", "g7"] {
        let out = stdout(&heckeblocks(&["validate", g]));
        assert!(out.contains("character table orthogonality: ok"), "{g}: {out}");
        assert!(out.contains("advisories: none"), "{g}: {out}");
    }
    // the big pack lists |W|/degree per character
    let out = stdout(&heckeblocks(&["validate", "G7"]));
    assert!(out.contains("phi{1,0}: 144"));
    assert!(out.contains("phi{3,6}: 48"));
    assert!(out.contains("clifford link: absent"));
    let out = stdout(&heckeblocks(&["validate", "G6"]));
    assert!(out.contains("phi{2,1}: 24"));
    assert!(out.contains("clifford link: ok"));
}

#[test]
fn validate_catches_tampering() {
    let dir = std::env::temp_dir().join("heckeblocks_tamper_test");
    std::fs::create_dir_all(&dir).unwrap();
    let mut pack: serde_json::Value =
        serde_json::from_slice(&std::fs::read(data_dir().join("g4.json")).unwrap()).unwrap();
    let values = pack["classes"][2]["values"].as_array_mut().unwrap();
    values.swap(0, 1);
    std::fs::write(dir.join("g4.json"), serde_json::to_vec(&pack).unwrap()).unwrap();

    let out = Command::new(env!("CARGO_BIN_EXE_heckeblocks"))
        .args(["--data-dir", dir.to_str().unwrap(), "validate", "G4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("character table orthogonality: FAIL"), "{text}");
    assert!(text.contains("orthogonality fails for"), "{text}");

    // other commands surface the loader's verdicts verbatim
    let out = Command::new(env!("CARGO_BIN_EXE_heckeblocks"))
        .args(["--data-dir", dir.to_str().unwrap(), "all-blocks", "G4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("orthogonality fails for"));
}

#[test]
fn env_var_sets_the_data_dir() {
    let out = Command::new(env!("CARGO_BIN_EXE_heckeblocks"))
        .env("HECKEBLOCKS_DATA", data_dir())
        .args(["essential-hyperplanes", "G4", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    // an explicit flag beats the variable
    let out = Command::new(env!("CARGO_BIN_EXE_heckeblocks"))
        .env("HECKEBLOCKS_DATA", data_dir())
        .args(["--data-dir", "/nonexistent", "essential-hyperplanes", "G4", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn show_schur_text_and_json() {
    let out = stdout(&heckeblocks(&["show-schur", "G4", "--char", "phi{1,0}"]));
    assert!(out.starts_with("phi{1,0}: xi = 1"), "{out}");
    assert!(out.contains("Psi("), "{out}");

    let out = stdout(&heckeblocks(&["show-schur", "G4", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 7);
    assert_eq!(v[0]["char"], "phi{1,0}");
    assert!(v[0]["factors"].as_array().unwrap().len() >= 6);

    let out = heckeblocks(&["show-schur", "G4", "--char", "phi{9,9}"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn deterministic_output() {
    let a = stdout(&heckeblocks(&["all-blocks", "G4"]));
    let b = stdout(&heckeblocks(&["all-blocks", "G4"]));
    assert_eq!(a, b);
}
