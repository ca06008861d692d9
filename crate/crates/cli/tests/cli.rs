use std::path::PathBuf;
use std::process::Command;

use covdeg::formulas::zp_degree;
use covdeg::reprings::EquivElem;
use covdeg::verify::VerificationReport;
use covdeg_cli::run;
use serde_json::Value;

fn tables() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../tables")
}

#[test]
fn zp_text_shows_both_forms() {
    let out = run(&["degree", "zp", "--p", "3", "--m", "3", "--k", "1"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("([5·L2(Z3)] + rho_triv)(1 - c)"), "{}", out.stdout);
    assert!(out.stdout.contains("6·l0 + 5·l1 + 5·l2 ⊗ (1-c)"), "{}", out.stdout);
}

#[test]
fn furuta_precondition_exits_2() {
    let out = run(&["degree", "furuta", "--m", "2", "--k", "1"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("non-integral Furuta coefficient (m-2k-1 = -1)"));
    let out = run(&["--format", "json", "degree", "furuta", "--m", "2", "--k", "1"]);
    let v: Value = serde_json::from_str(&out.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "precondition");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["degree", "zp", "--p", "3"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["degree", "zp", "--p", "9", "--m", "3", "--k", "1"]).code, 2);
    let out = run(&["--format", "json", "degree", "zp", "--p", "3"]);
    let v: Value = serde_json::from_str(&out.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "usage");
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn degree_json_round_trips() {
    let out = run(&["--format", "json", "degree", "zp", "--p", "5", "--m", "4", "--k", "1"]);
    assert_eq!(out.code, 0);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    let back = EquivElem::from_json(&v["degree"], None).unwrap();
    assert_eq!(back, zp_degree(5, 4, 1).unwrap());
    assert_eq!(v["closed_form"]["l2"].to_string(), "1638");
}

#[test]
fn report_json_round_trips() {
    let out = run(&["--format=json", "verify", "lemma", "--n", "15"]);
    assert_eq!(out.code, 0);
    let r: VerificationReport = serde_json::from_str(&out.stdout).unwrap();
    assert!(r.pass);
    assert_eq!(r.identity, "product_lemma");
}

#[test]
fn cover_and_z6_reports() {
    let out = run(&["verify", "cover", "--p", "5", "--m", "5", "--k", "2", "--N", "2", "--M", "3"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.starts_with("PASS cover_identity"));
    let out = run(&["verify", "z6", "--mx", "23", "--kx", "6", "--beta0", "-3h + 2c", "--beta1", "h*c"]);
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
    assert_eq!(run(&["verify", "z6", "--mx", "22", "--kx", "6"]).code, 2);
}

#[test]
fn solve_z6_values() {
    let out = run(&["--format", "json", "solve", "z6", "--mx", "23", "--kx", "6", "--beta0", "0", "--beta1", "0"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    let h0: Vec<String> = v["betas"].as_array().unwrap().iter().map(|b| b["h"][0].to_string()).collect();
    assert_eq!(h0, ["null", "null", "172", "344", "340", "168"]);
    assert_eq!(v["b"]["c"].to_string(), "-344");
}

#[test]
fn bryan_acknowledgement() {
    let out = run(&["degree", "bryan", "--q", "2", "--m", "3", "--k", "1"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("--assert-bryan-hypothesis"));
    let out = run(&["--format", "json", "degree", "bryan", "--q", "2", "--m", "3", "--k", "1", "--assert-bryan-hypothesis"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["hypothesis_acknowledged"], true);
    assert_eq!(v["closed_form"]["group"], "Z2xZ2");
}

#[test]
fn tables_from_search_path() {
    let dir = tables();
    let dir = dir.to_str().unwrap();
    let out = run(&["--table-path", dir, "chartab", "check", "f21.tbl"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("order 21, 5 classes"));
    let out = run(&["--table-path", dir, "degree", "odd-sum", "--group", "f21.tbl", "--m", "4", "--k", "1"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(run(&["degree", "odd-sum", "--group", "nope.tbl", "--m", "4", "--k", "1"]).code, 2);
}

#[test]
fn table_errors_carry_positions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.tbl");
    std::fs::write(&path, "group G\norder 3\nclasses 1\nclass 1a sz 1 ord 1\n").unwrap();
    let out = run(&["--format", "json", "chartab", "check", path.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    let v: Value = serde_json::from_str(&out.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "parse");
    assert_eq!((v["error"]["line"].as_u64(), v["error"]["column"].as_u64()), (Some(4), Some(10)));
}

#[test]
fn env_table_path_in_binary() {
    let out = Command::new(env!("CARGO_BIN_EXE_covdeg"))
        .args(["chartab", "check", "f21.tbl"])
        .env("COVDEG_TABLE_PATH", tables())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("F21"));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("covdeg.toml");
    std::fs::write(&cfg, "format = \"json\"\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let out = run(&["--config", cfg, "degree", "furuta", "--m", "5", "--k", "1"]);
    assert!(serde_json::from_str::<Value>(&out.stdout).is_ok(), "{}", out.stdout);
    let out = run(&["--config", cfg, "--format", "text", "degree", "furuta", "--m", "5", "--k", "1"]);
    assert!(out.stdout.starts_with("Furuta degree"));

    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "primes = [3, 9]\n").unwrap();
    let out = run(&["--config", bad.to_str().unwrap(), "verify", "lemma", "--n", "3"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("9 is not an odd prime"));
}

#[test]
fn small_verify_all() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("small.toml");
    std::fs::write(
        &cfg,
        "max_n = 9\naudit_max_n = 7\nodd_groups = [\"Z3\", \"Z5\"]\nz6 = [[23, 6]]\nrandom_betas = 3\ncover_grid = \"3..3,1..1\"\n",
    )
    .unwrap();
    let out = run(&["--config", cfg.to_str().unwrap(), "verify", "all", "--primes", "3,5", "--grid", "3..5,1..1"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("0 failed"), "{}", out.stdout);

    // Z9 has non-generating elements where ∧*(λ⊗c) has trace 0
    std::fs::write(&cfg, "max_n = 3\naudit_max_n = 3\nodd_groups = [\"Z9\"]\nz6 = []\n").unwrap();
    let out = run(&["--config", cfg.to_str().unwrap(), "--format", "json", "verify", "all", "--primes", "3", "--grid", "3..3,1..1"]);
    assert_eq!(out.code, 1);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["pass"], false);
    assert!(v["summary"]["failed"].as_u64().unwrap() > 0);
}
