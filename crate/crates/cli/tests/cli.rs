use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::{Command, Output};

use hkl_core::verify::{ReportBundle, Table, CHECK_NAMES};

fn hkl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hkl"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn tsv_rows(o: &Output) -> Vec<Vec<String>> {
    stdout(o)
        .lines()
        .skip(1)
        .map(|l| l.split('\t').map(str::to_string).collect())
        .collect()
}

fn repo_data() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .to_string_lossy()
        .into_owned()
}

#[test]
fn verify_passes_and_lists_every_check_once() {
    let o = hkl(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let rows = tsv_rows(&o);
    let names: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(names, CHECK_NAMES);
    assert!(rows.iter().all(|r| r[1] == "PASS"));
}

#[test]
fn verify_json_round_trips() {
    let o = hkl(&["verify", "--format", "json", "--data-dir", &repo_data()]);
    assert_eq!(o.status.code(), Some(0));
    let bundle: ReportBundle = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(bundle.checks.len(), 12);
    assert_eq!(bundle.tables.len(), 3);
    let again = serde_json::to_value(&bundle).unwrap();
    assert_eq!(again, serde_json::from_str::<serde_json::Value>(&stdout(&o)).unwrap());
}

#[test]
fn verify_is_deterministic() {
    assert_eq!(stdout(&hkl(&["verify"])), stdout(&hkl(&["verify"])));
}

#[test]
fn niemeier_labels() {
    let o = hkl(&["niemeier", "labels"]);
    assert_eq!(o.status.code(), Some(0));
    let mut got: Vec<String> = tsv_rows(&o).into_iter().map(|r| r[0].clone()).collect();
    got.sort();
    let mut want = [
        "D17", "D9+E8", "D12+D5", "E7^2+D3", "A15+D2", "A11+E6", "D8^2+D1", "D16+D1", "E8^2+D1",
    ];
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn git_sigma_dims() {
    for extra in [&[][..], &["--seed", "12345"][..]] {
        let mut args = vec!["git", "sigma-dims"];
        args.extend_from_slice(extra);
        let o = hkl(&args);
        let dims: Vec<String> = tsv_rows(&o).into_iter().map(|r| r[3].clone()).collect();
        assert_eq!(dims, ["2", "4", "2", "1"]);
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(hkl(&["bogus"]).status.code(), Some(2));
    assert_eq!(hkl(&["verify", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(hkl(&["rep", "tangent", "--a", "one"]).status.code(), Some(2));
    assert_eq!(hkl(&["lattice", "Q9"]).status.code(), Some(2));
    assert_eq!(hkl(&["schedule", "strata", "--type", "V"]).status.code(), Some(2));
}

#[test]
fn unreadable_catalog_fails() {
    let dir = std::env::temp_dir().join(format!("hkl-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("niemeier.json"), "[]").unwrap();
    let o = hkl(&["verify", "--data-dir", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(hkl(&["niemeier", "--data-dir", "/nonexistent"]).status.code(), Some(1));
}

#[test]
fn report_tables() {
    let o = hkl(&["report", "--format", "json"]);
    let tables: BTreeMap<String, Table> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(tables["flips"].rows.len(), 10);
    assert_eq!(tables["type2_matching"].rows[4], ["II(5)", "D9+E8", "10"]);
    assert_eq!(tables["boundary_dimensions"].rows.len(), 9);
    let tsv = stdout(&hkl(&["report"]));
    for name in ["# flips", "# type2_matching", "# boundary_dimensions"] {
        assert!(tsv.contains(name));
    }
}

#[test]
fn schedule_views() {
    let betas = tsv_rows(&hkl(&["schedule", "betas"]));
    assert_eq!(betas.len(), 9);
    assert!(betas.iter().all(|r| r[0] != "1/8"));
    let strata = tsv_rows(&hkl(&["schedule", "strata", "--type", "III"]));
    assert_eq!(strata.len(), 7);
    let fifth: Vec<Vec<String>> = tsv_rows(&hkl(&["schedule"])).into_iter().filter(|r| r[1] == "1/5").collect();
    assert_eq!(fifth.len(), 2);
}

#[test]
fn other_subcommands() {
    let l = tsv_rows(&hkl(&["lattice", "E8+U^2+A2"]));
    assert_eq!(l[0][1..5], ["14", "(2,12)", "3", "true"]);
    let r = tsv_rows(&hkl(&["lattice", "E7", "--roots"]));
    assert_eq!(r[0][6], "126");
    let b = tsv_rows(&hkl(&["blowup", "--weights", "2,3"]));
    assert_eq!(b[0][1], "2");
    assert_eq!(b[1][1], "3");
    let c = tsv_rows(&hkl(&["blowup"]));
    assert_eq!(c[0][2], "WP(4^9,6^13)");
    let d = tsv_rows(&hkl(&["dolgachev"]));
    assert_eq!(d.iter().map(|r| r[6].as_str()).collect::<Vec<_>>(), ["12", "13", "14"]);
    let t = tsv_rows(&hkl(&["rep", "tangent", "--a", "1", "--b", "-3/2"]));
    assert_eq!(t[0][2..], ["13", "V(4)+V(2)^2+V(0)^2"]);
}
