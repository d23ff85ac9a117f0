use std::path::PathBuf;
use std::process::{Command, Output};

fn regulus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regulus"))
        .args(args)
        .env_remove("REGULUS_BUDGET_N")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("regulus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn coeff_examples() {
    let out = regulus(&["coeff", "--ell", "3", "--r", "12", "--n", "9", "--mod", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "0");
    assert_eq!(
        stdout(&regulus(&["coeff", "--ell", "3", "--r", "2", "--n", "2"])).trim(),
        "5"
    );
    assert_eq!(
        stdout(&regulus(&["coeff", "--ell", "5", "--r", "6", "--n", "0"])).trim(),
        "1"
    );
}

#[test]
fn coeff_check_cross_prints_oracle() {
    let out = regulus(&["coeff", "--profile", "2,3,5", "--n-max", "12", "--check"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 13);
    assert!(text.lines().all(|l| l.ends_with(" ok")), "{text}");
}

#[test]
fn oracle_with_enumeration() {
    let out = regulus(&[
        "oracle",
        "--ell",
        "3",
        "--r",
        "2",
        "--n-max",
        "8",
        "--enumerate",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("0 1 1 ok\n1 2 2 ok\n2 5 5 ok\n"));
    let out = regulus(&[
        "oracle",
        "--ell",
        "3",
        "--r",
        "2",
        "--n-max",
        "50",
        "--enumerate",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["identity", "--name", "bogus"][..],
        &["coeff", "--ell", "3", "--n", "2"],
        &["coeff", "--ell", "1", "--r", "2", "--n", "2"],
        &["coeff", "--ell", "3", "--r", "2", "--n", "2", "--mod", "1"],
        &["verify", "--family", "thm9.ix"],
        &["suite", "--only", "no.such.check"],
        &["suite", "--all", "--order", "10"],
        &["suite"],
        &["frobnicate"],
    ] {
        assert_eq!(regulus(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn identity_passes_and_reports() {
    let out = regulus(&["identity", "--name", "11diss", "--order", "1000"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"status\": \"pass\""));
    let out = regulus(&[
        "identity", "--name", "5diss", "--order", "64", "--format", "markdown",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("| identity.5diss | pass |"));
}

#[test]
fn verify_families() {
    assert_eq!(
        regulus(&["verify", "--family", "thm1.i"]).status.code(),
        Some(0)
    );
    assert_eq!(
        regulus(&["verify", "--family", "eq32"]).status.code(),
        Some(0)
    );
    assert_eq!(
        regulus(&["verify", "--family", "THM4_9"]).status.code(),
        Some(0)
    );
    let lax = regulus(&["verify", "--family", "thm2.i"]);
    assert_eq!(lax.status.code(), Some(0));
    assert!(stdout(&lax).contains("vacuous"));
    assert_eq!(
        regulus(&["verify", "--family", "thm2.i", "--strict"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn verify_custom_registry() {
    let path = scratch("registry.json");
    let registry = r#"{"version": 1, "families": [
        {"id": "frobenius5", "ell": 5, "r": {"slope": 0, "intercept": 5}, "modulus": 5,
         "t_values": [0], "index": "5*n + 1", "kind": "vanishing"}
    ]}"#;
    std::fs::write(&path, registry).unwrap();
    let out = regulus(&["verify", "--registry", path.to_str().unwrap()]);
    let text = stdout(&out);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{text}{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(text.contains("\"id\": \"frobenius5\""));

    let wrong = registry.replace("5*n + 1", "5*n + 5");
    std::fs::write(&path, wrong).unwrap();
    assert_eq!(
        regulus(&["verify", "--registry", path.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );

    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(
        regulus(&["verify", "--registry", path.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn suite_filter_and_report_file() {
    let path = scratch("identities.json");
    let out = regulus(&[
        "suite",
        "--only",
        "identities",
        "--report",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&written).unwrap();
    assert_eq!(v["version"], 1);
    assert_eq!(v["checks"].as_array().unwrap().len(), 4);
    for key in [
        "id",
        "status",
        "params_swept",
        "indices_checked",
        "violations",
        "ms",
    ] {
        assert!(v["checks"][0].get(key).is_some(), "{key}");
    }
}

#[test]
fn suite_budget_from_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_regulus"))
        .args(["suite", "--only", "identity.2diss"])
        .env("REGULUS_BUDGET_N", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"indices_checked\": 101"));
    let bad = Command::new(env!("CARGO_BIN_EXE_regulus"))
        .args(["suite", "--only", "identities"])
        .env("REGULUS_BUDGET_N", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn suite_markdown_and_jobs() {
    let out = regulus(&[
        "suite",
        "--only",
        "thm4,bridges",
        "--format",
        "markdown",
        "--jobs",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("| thm4.ii | pass |"));
    assert!(text.contains("| bridge."));
}
