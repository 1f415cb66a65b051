use std::path::PathBuf;
use std::process::Command;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_h1loc"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let (code, out, err) = run(&all);
    assert!(code != 0 || !out.is_empty(), "{err}");
    (
        code,
        serde_json::from_str(&out).unwrap_or(serde_json::Value::Null),
    )
}

#[test]
fn verify_counterexample_exit_codes() {
    let (code, report) = json(&["verify-counterexample", "-p", "3"]);
    assert_eq!(code, 0);
    assert_eq!(report["schema"], 1);
    assert_eq!(report["verdict"], true);
    let loc = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "h1loc_nontrivial")
        .unwrap();
    assert_eq!(
        loc["values"]["h1loc_invariant_factors"],
        serde_json::json!([3])
    );
    assert_eq!(run(&["verify-counterexample", "-p", "2"]).0, 2);
    assert_eq!(run(&["verify-counterexample", "-p", "15"]).0, 2);
    assert_eq!(run(&["verify-counterexample", "-p", "101"]).0, 3);
    assert_eq!(
        run(&["verify-counterexample", "-p", "5", "--cap", "10"]).0,
        3
    );
    assert_eq!(run(&["verify-counterexample"]).0, 2);
}

#[test]
fn text_output_has_a_verdict_line() {
    let (code, out, _) = run(&["verify-counterexample", "-p", "5"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "verdict: PASS"));
}

#[test]
fn reports_are_byte_identical() {
    let a = run(&["verify-counterexample", "-p", "5", "--format", "json"]);
    let b = run(&[
        "verify-counterexample",
        "-p",
        "5",
        "--format",
        "json",
        "--jobs",
        "4",
    ]);
    assert_eq!(a, b);
    let gp = fixture("gp3.json");
    let c = run(&[
        "h1loc",
        "--input",
        gp.to_str().unwrap(),
        "--basis",
        "--format",
        "json",
    ]);
    let d = run(&[
        "h1loc",
        "--input",
        gp.to_str().unwrap(),
        "--basis",
        "--format",
        "json",
    ]);
    assert_eq!(c, d);
}

#[test]
fn h1loc_of_counterexample_and_cyclic_groups() {
    let gp = fixture("gp3.json");
    let (code, out) = json(&["h1loc", "--input", gp.to_str().unwrap(), "--basis"]);
    assert_eq!(code, 0);
    assert_eq!(out["invariant_factors"], serde_json::json!([3]));
    assert_eq!(out["group_order"], 9);
    assert_eq!(out["basis"].as_array().unwrap().len(), 1);
    assert_eq!(out["basis"][0].as_array().unwrap().len(), 9);
    assert_eq!(out["label"], "G_3 = <gamma1, gamma2>");

    let (_, cyc) = json(&["h1loc", "--input", fixture("cyclic.json").to_str().unwrap()]);
    assert_eq!(cyc["invariant_factors"], serde_json::json!([]));
    let (_, h1) = json(&["h1", "--input", gp.to_str().unwrap()]);
    assert_eq!(h1["command"], "h1");
    assert_eq!(h1["invariant_factors"], serde_json::json!([3]));
    let (_, t) = json(&["h1", "--input", fixture("trivial.json").to_str().unwrap()]);
    assert_eq!(t["invariant_factors"], serde_json::json!([]));
}

#[test]
fn bad_inputs_exit_two() {
    let bad = fixture("noninvertible.json");
    let (code, _, err) = run(&["h1loc", "--input", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("error"));
    assert_eq!(run(&["h1", "--input", "/does/not/exist.json"]).0, 2);
    assert_eq!(
        run(&["sylow", "--input", fixture("int_s3.json").to_str().unwrap()]).0,
        2
    );
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn resource_cap_exits_three() {
    let order18 = fixture("order18.json");
    assert_eq!(
        run(&["h1", "--input", order18.to_str().unwrap(), "--cap", "10"]).0,
        3
    );
    let inf = fixture("int_infinite.json");
    assert_eq!(
        run(&[
            "check-injectivity",
            "--input",
            inf.to_str().unwrap(),
            "-p",
            "3"
        ])
        .0,
        3
    );
}

#[test]
fn sylow_and_reductions() {
    let (code, out) = json(&[
        "sylow",
        "--input",
        fixture("order18.json").to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(out["group_order"], 18);
    assert_eq!(out["sylow"]["order"], 9);
    assert_eq!(out["reductions"][0]["image_order"], 6);
    assert_eq!(out["reductions"][0]["kernel_order"], 3);
    assert_eq!(out["reductions"][0]["kernel_inside_sylow"], true);
    let (_, gp) = json(&["sylow", "--input", fixture("gp3.json").to_str().unwrap()]);
    assert_eq!(gp["sylow"]["order"], 9);
    let (_, t) = json(&[
        "sylow",
        "--input",
        fixture("trivial.json").to_str().unwrap(),
    ]);
    assert_eq!(t["sylow"]["order"], 1);
}

#[test]
fn injectivity_instances() {
    for (file, p, order) in [
        ("int_gamma1_p3.json", "3", 3),
        ("int_gamma1_p5.json", "5", 5),
        ("int_s3.json", "3", 6),
        ("int_s3.json", "5", 6),
        ("int_trivial.json", "3", 1),
    ] {
        let (code, out) = json(&[
            "check-injectivity",
            "--input",
            fixture(file).to_str().unwrap(),
            "-p",
            p,
        ]);
        assert_eq!(code, 0, "{file} p={p}");
        let c = &out["checks"][0]["values"];
        assert_eq!(c["integer_group_order"], order);
        assert_eq!(c["image_order"], order);
    }
    let (code, _, _) = run(&[
        "check-injectivity",
        "--input",
        fixture("int_s3.json").to_str().unwrap(),
        "-p",
        "2",
    ]);
    assert_eq!(code, 2);
}
