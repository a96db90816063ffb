use assert_cmd::Command;

fn rlab() -> Command {
    Command::cargo_bin("rlab").unwrap()
}

fn stderr_of(args: &[&str]) -> String {
    let out = rlab().args(args).output().unwrap();
    assert_eq!(out.status.code(), Some(1), "{args:?}");
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(!err.trim().is_empty());
    err
}

#[test]
fn refuted_identity_exits_two() {
    let out = rlab().args(["verify", "--id", "EQ_4_7_PRINTED", "--range", "2..32"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("REFUTED"), "{text}");
}

#[test]
fn certified_identities_exit_zero() {
    rlab().args(["verify", "--id", "EQ_3_19", "EQ_4_6_SHIFTED"]).assert().code(0);
    rlab().args(["verify", "--id", "EQ_3_1", "--range", "2..64"]).assert().code(0);
}

#[test]
fn mixed_selection_exits_two() {
    rlab().args(["verify", "--id", "EQ_3_2", "--id", "EQ_3_5"]).assert().code(2);
}

#[test]
fn full_catalog_json_lists_every_entry() {
    let out = rlab().args(["verify", "--all", "--format", "json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), rlab_core::identities::catalog().len());
}

#[test]
fn list_and_help_exit_zero() {
    rlab().args(["verify", "--list"]).assert().code(0);
    rlab().arg("--help").assert().code(0);
    rlab().args(["riordan", "--help"]).assert().code(0);
    rlab().arg("--version").assert().code(0);
}

#[test]
fn diagnostics_name_the_offending_flag() {
    assert!(stderr_of(&["verify", "--id", "EQ_9_9"]).contains("--id"));
    assert!(stderr_of(&["riordan", "--f", "1", "--g", "x", "--matrix", "3"]).contains("--g"));
    assert!(stderr_of(&["riordan", "--f", "1 + y", "--g", "1", "--matrix", "3"]).contains("--f: column 5"));
    assert!(stderr_of(&["riordan", "--f", "1", "--g", "1", "--entry", "3"]).contains("--entry"));
    assert!(stderr_of(&["gen", "--family", "hermite", "--n", "0..3"]).contains("--family"));
    assert!(stderr_of(&["gen", "--family", "s_class", "--n", "0..3"]).contains("--n"));
    assert!(stderr_of(&["gen", "--family", "lucas", "--n", "0..3"]).contains("--p"));
    assert!(stderr_of(&["roots", "--n", "0"]).contains("--n"));
    assert!(stderr_of(&["bpes", "--samples", "/nonexistent/s.csv"]).contains("--samples"));
}

#[test]
fn usage_errors_exit_one() {
    stderr_of(&[]);
    stderr_of(&["frobnicate"]);
    stderr_of(&["gen", "--family", "boubaker", "--n", "5..2"]);
    stderr_of(&["riordan", "--f", "1", "--g", "1", "--matrix", "3", "--rows", "3"]);
}

#[test]
fn order_cap_comes_from_the_environment() {
    rlab().env("RLAB_MAX_ORDER", "10").args(["gen", "--family", "cheb_t", "--n", "0..10"]).assert().code(0);
    let out = rlab()
        .env("RLAB_MAX_ORDER", "10")
        .args(["riordan", "--f", "1", "--g", "1+x^2", "--matrix", "11"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("RLAB_MAX_ORDER"));
    rlab().args(["gen", "--family", "cheb_t", "--n", "0..129"]).assert().code(1);
    rlab().env("RLAB_MAX_ORDER", "lots").args(["gen", "--family", "cheb_t", "--n", "0..3"]).assert().code(1);
}

#[test]
fn bpes_fits_a_sample_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cos.csv");
    let mut text = String::from("r,f\n");
    for j in 0..64 {
        let r = j as f64 / 63.0;
        text.push_str(&format!("{r},{}\n", (std::f64::consts::FRAC_PI_2 * r).cos()));
    }
    std::fs::write(&path, text).unwrap();
    let out = rlab()
        .args(["bpes", "--samples", path.to_str().unwrap(), "--terms", "6", "--radius", "1", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["N"], 6);
    assert_eq!(v["zeta"].as_array().unwrap().len(), 6);
    assert!(v["residual_rms"].as_f64().unwrap() < 1e-6);
    assert_eq!(v["boundary"]["dr_at_zero"], 0.0);

    std::fs::write(&path, "x,y\n0,1\n").unwrap();
    let out = rlab().args(["bpes", "--samples", path.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("header"));
}

#[test]
fn properties_report_shows_both_values() {
    let out = rlab().args(["bpes", "--properties", "2", "--format", "json"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let second = &v["properties"]["second_derivative_at_zero"];
    assert_ne!(second["computed"], second["claimed"]);
    assert_eq!(second["matches"], false);
}

#[test]
fn negative_literals_are_values_not_flags() {
    let out = rlab()
        .args(["gen", "--family", "lucas", "--p", "3x", "--q", "-2", "--seed0", "0", "--seed1", "1", "--n", "0..3", "--format", "csv"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "0,0\n1,1\n2,0,3\n3,-2,0,9\n");
}
