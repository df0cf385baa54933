//! End-to-end command-line behavior: exit codes, schema errors, output
//! round-trips, and format switching.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_campana"))
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("campana-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

fn p2_fan_file(name: &str) -> PathBuf {
    write_temp(
        name,
        r#"{"dim": 2, "rays": [[1,0],[0,1],[-1,-1]], "max_cones": [[0,1],[1,2],[2,0]]}"#,
    )
}

fn p112_fan_file(name: &str) -> PathBuf {
    write_temp(
        name,
        r#"{"dim": 2, "rays": [[1,0],[0,1],[-1,-2]], "max_cones": [[0,1],[1,2],[2,0]]}"#,
    )
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout must be JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn check_certifies_the_unit_sigma_on_p2() {
    let fan = p2_fan_file("check.fan.json");
    let sigma = write_temp(
        "check.sigma.json",
        r#"{"markings": [{"ray":0,"coeff":1},{"ray":1,"coeff":1},{"ray":2,"coeff":1}]}"#,
    );
    let out = run(bin().args(["check", "--char", "2"]).arg(&fan).arg(&sigma));
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["certified"], true);
    assert_eq!(v["good_contact_orders"], true);
}

#[test]
fn check_uncertified_sigma_exits_3() {
    let fan = p2_fan_file("uncert.fan.json");
    let sigma = write_temp(
        "uncert.sigma.json",
        r#"{"markings": [{"ray":0,"coeff":2},{"ray":1,"coeff":2},{"ray":2,"coeff":2}]}"#,
    );
    let out = run(bin().args(["check", "--char", "2"]).arg(&fan).arg(&sigma));
    assert_eq!(exit_code(&out), 3);
    let v = stdout_json(&out);
    assert_eq!(v["certified"], false);
    assert_eq!(v["p_torsion_free"], false);
}

#[test]
fn witness_on_p112_at_3_matches_the_expected_coefficients() {
    let fan = p112_fan_file("witness.fan.json");
    let out = run(bin().args(["witness", "--char", "3"]).arg(&fan));
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["status"], "certified_scrc");
    let markings = v["witness"]["markings"].as_array().unwrap();
    let coeffs: Vec<i64> = markings
        .iter()
        .map(|m| m["coeff"].as_i64().unwrap())
        .collect();
    assert_eq!(coeffs, vec![1, 2, 1]);
}

#[test]
fn witness_is_byte_for_byte_deterministic() {
    let fan = p112_fan_file("det.fan.json");
    let a = run(bin()
        .args(["witness", "--char", "3", "--seed", "0"])
        .arg(&fan));
    let b = run(bin()
        .args(["witness", "--char", "3", "--seed", "0"])
        .arg(&fan));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn witness_with_no_applicable_criterion_exits_3() {
    let fan = p112_fan_file("stuck.fan.json");
    let out = run(bin().args(["witness", "--char", "2"]).arg(&fan));
    assert_eq!(exit_code(&out), 3);
    let v = stdout_json(&out);
    assert_eq!(v["status"], "inconclusive");
    assert_eq!(v["reason"], "no-criterion-applies");
}

#[test]
fn wps_exit_codes_partition_outcomes() {
    let not_scrc = run(bin().args(["wps", "--char", "2", "1", "1", "2"]));
    assert_eq!(exit_code(&not_scrc), 2);
    assert_eq!(stdout_json(&not_scrc)["reason"], "thm5.3:p-divides-weight");

    let certified = run(bin().args(["wps", "--char", "3", "1", "1", "2"]));
    assert_eq!(exit_code(&certified), 0);
    assert_eq!(stdout_json(&certified)["status"], "certified_scrc");

    let inconclusive = run(bin().args([
        "wps",
        "--char",
        "2",
        "--multiplicities",
        "2,inf,inf",
        "1",
        "1",
        "2",
    ]));
    assert_eq!(exit_code(&inconclusive), 3);
    assert_eq!(stdout_json(&inconclusive)["reason"], "thm5.3-absolute-only");
}

#[test]
fn schema_violations_exit_1_with_diagnostics() {
    let missing = run(bin().args(["check", "--char", "2", "/no/such/file.json", "/other.json"]));
    assert_eq!(exit_code(&missing), 1);

    let bad = write_temp("bad.fan.json", r#"{"dim": 2, "rays": "oops"}"#);
    let out = run(bin().args(["classify", "--char", "2"]).arg(&bad));
    assert_eq!(exit_code(&out), 1);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("bad.fan.json"),
        "diagnostic names the file: {stderr}"
    );

    let nonprime = p2_fan_file("nonprime.fan.json");
    let out = run(bin().args(["classify", "--char", "4"]).arg(&nonprime));
    assert_eq!(exit_code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not prime"));

    let invalid = write_temp(
        "invalid.fan.json",
        r#"{"dim": 2, "rays": [[2,0],[0,1],[-1,-1]], "max_cones": [[0,1],[1,2],[2,0]]}"#,
    );
    let out = run(bin().args(["classify", "--char", "2"]).arg(&invalid));
    assert_eq!(exit_code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not primitive"));
}

#[test]
fn subdivide_output_reparses_and_reverifies() {
    let fan = p112_fan_file("sub.fan.json");
    let out = run(bin().args(["subdivide"]).arg(&fan).args(["0", "-1"]));
    assert_eq!(exit_code(&out), 0);
    let fan_json = stdout_json(&out);
    assert_eq!(fan_json["rays"].as_array().unwrap().len(), 4);

    // emitted fan parses back and classifies as all smooth at char 2
    let roundtrip = write_temp("sub.roundtrip.json", &fan_json.to_string());
    let out = run(bin().args(["classify", "--char", "2"]).arg(&roundtrip));
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    for cone in v["cones"].as_array().unwrap() {
        assert_eq!(cone["class"], "smooth");
    }

    // and the subdivision refines the original
    let out = run(bin().args(["refine-check"]).arg(&roundtrip).arg(&fan));
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_json(&out)["refinement"], true);

    let out = run(bin().args(["refine-check"]).arg(&fan).arg(&roundtrip));
    assert_eq!(stdout_json(&out)["refinement"], false);

    // subdividing at an existing ray is an input error
    let out = run(bin().args(["subdivide"]).arg(&fan).args(["1", "0"]));
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn witness_output_reverifies_through_check() {
    let fan = p112_fan_file("reverify.fan.json");
    let out = run(bin().args(["witness", "--char", "3"]).arg(&fan));
    let v = stdout_json(&out);
    let sigma = write_temp("reverify.sigma.json", &v["witness"].to_string());
    let check = run(bin().args(["check", "--char", "3"]).arg(&fan).arg(&sigma));
    assert_eq!(exit_code(&check), 0);
    assert_eq!(stdout_json(&check), v["certificate"]);
}

#[test]
fn oracle_lists_sigma_objects() {
    let fan = p2_fan_file("oracle.fan.json");
    let out = run(bin()
        .args(["oracle", "--char", "2", "--bound", "3"])
        .arg(&fan));
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    let list = v.as_array().expect("oracle emits a JSON list");
    assert_eq!(list.len(), 2);
    for sigma in list {
        assert!(sigma["markings"].is_array());
    }
}

#[test]
fn repair_wps_emits_fan_witness_certificate() {
    let out = run(bin().args(["repair-wps", "--char", "2", "1", "1", "2"]));
    assert_eq!(exit_code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["fan"]["rays"].as_array().unwrap().len(), 4);
    assert_eq!(v["certificate"]["certified"], true);
    assert_eq!(v["certificate"]["good_contact_orders"], true);

    let unnecessary = run(bin().args(["repair-wps", "--char", "3", "1", "1", "2"]));
    assert_eq!(exit_code(&unnecessary), 1);
}

#[test]
fn blowdown_route_through_witness() {
    let coarse = p112_fan_file("coarse.fan.json");
    let sub = run(bin().args(["subdivide"]).arg(&coarse).args(["0", "-1"]));
    let fine = write_temp("fine.fan.json", &stdout_json(&sub).to_string());
    let out = run(bin()
        .args(["witness", "--char", "3"])
        .arg(&fine)
        .arg("--coarse")
        .arg(&coarse));
    assert_eq!(exit_code(&out), 0);

    // not a refinement: the direct routes fail on P(1,1,5) at char 5, so the
    // blow-down route engages and rejects a coarse fan it does not refine
    let p115 = write_temp(
        "blowdown-p115.fan.json",
        r#"{"dim": 2, "rays": [[1,0],[0,1],[-1,-5]], "max_cones": [[0,1],[1,2],[2,0]]}"#,
    );
    let p2 = p2_fan_file("blowdown-p2.fan.json");
    let out = run(bin()
        .args(["witness", "--char", "5"])
        .arg(&p115)
        .arg("--coarse")
        .arg(&p2));
    assert_eq!(exit_code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("refine"));
}

#[test]
fn text_format_renders_key_value_lines() {
    let fan = p2_fan_file("text.fan.json");
    let out = run(bin()
        .args(["classify", "--char", "2", "--format", "text"])
        .arg(&fan));
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("criterion_holds"));
    assert!(!text.trim_start().starts_with('{'));
}
