use std::fs;
use std::process::{Command, Output};

fn rghw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rghw"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn shifted_bound_for_the_q4_pair() {
    let o = rghw(&[
        "bound",
        "--family",
        "hermitian",
        "--q",
        "4",
        "--mu1",
        "12",
        "--mu2",
        "8",
        "--m",
        "2",
        "--tier",
        "shifted",
    ]);
    assert!(o.status.success());
    let rows = json(&o);
    assert_eq!(rows[0]["value"], 58);
    assert_eq!(rows[0]["kind"], "lower-bound");
}

#[test]
fn oracle_reads_code_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.code");
    let b = dir.path().join("b.code");
    // [4, 2] and a one-dimensional subcode over GF(3)
    fs::write(&a, "3 4 2\n1 0 1 1\n0 1 1 2\n").unwrap();
    fs::write(&b, "3 4 1\n1 1 2 0\n").unwrap();
    let o = rghw(&[
        "oracle",
        "--code-file",
        a.to_str().unwrap(),
        "--code2-file",
        b.to_str().unwrap(),
        "--m",
        "1",
        "--format",
        "csv",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let line = text.lines().nth(1).unwrap();
    assert!(line.starts_with("oracle,3,,,1,,exact,"), "{line}");
    // codewords of C1 outside C2 have weight at least 3 here
    assert!(line.contains(",exact,3,"), "{line}");
}

#[test]
fn oracle_rejects_non_nested_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.code");
    let b = dir.path().join("b.code");
    fs::write(&a, "2 3 1\n1 1 0\n").unwrap();
    fs::write(&b, "2 3 1\n0 1 1\n").unwrap();
    let o = rghw(&[
        "oracle",
        "--code-file",
        a.to_str().unwrap(),
        "--code2-file",
        b.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn mds_profile_is_analytic() {
    let o = rghw(&[
        "scheme", "--mds", "--q", "8", "--n", "5", "--k1", "3", "--k2", "1", "profile",
    ]);
    assert!(o.status.success());
    let rows = json(&o);
    let get = |name: &str| -> Vec<i64> {
        rows.as_array()
            .unwrap()
            .iter()
            .filter(|r| r["scenario"] == name)
            .map(|r| r["value"].as_i64().unwrap())
            .collect()
    };
    assert_eq!(get("t"), vec![1, 2]);
    assert_eq!(get("r"), vec![2, 3]);
}

#[test]
fn reproduce_writes_both_formats_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    for target in ["table2", "ex3", "lemma9"] {
        let o = rghw(&["reproduce", target, "--out", dir.path().to_str().unwrap()]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{target}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(dir.path().join(format!("{target}.csv")).exists());
        let report: serde_json::Value = serde_json::from_str(
            &fs::read_to_string(dir.path().join(format!("{target}.json"))).unwrap(),
        )
        .unwrap();
        assert_eq!(report["target"], target);
    }
    let o = rghw(&["reproduce", "ex3", "--out", dir.path().to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("rank-computed H*"));
}

#[test]
fn unknown_target_is_an_input_error() {
    assert_eq!(rghw(&["reproduce", "ex9"]).status.code(), Some(3));
    assert_eq!(rghw(&["nonsense"]).status.code(), Some(3));
}

#[test]
fn share_then_reconstruct_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let shares = dir.path().join("shares.json");
    let common = [
        "--family",
        "hermitian",
        "--q",
        "2",
        "--mu1",
        "5",
        "--mu2",
        "3",
    ];
    let mut args = vec!["ramp", "share"];
    args.extend(common);
    args.extend([
        "--secret",
        "1,3",
        "--seed",
        "11",
        "--out",
        shares.to_str().unwrap(),
    ]);
    assert!(rghw(&args).status.success());
    let again = dir.path().join("again.json");
    args.pop();
    args.push(again.to_str().unwrap());
    assert!(rghw(&args).status.success());
    assert_eq!(fs::read(&shares).unwrap(), fs::read(&again).unwrap());

    let mut args = vec!["ramp", "reconstruct"];
    args.extend(common);
    args.extend(["--shares", shares.to_str().unwrap()]);
    let o = rghw(&args);
    assert!(o.status.success());
    assert_eq!(json(&o)["secret"], serde_json::json!([1, 3]));

    // too few shares leave the secret undetermined
    let all: serde_json::Value = serde_json::from_slice(&fs::read(&shares).unwrap()).unwrap();
    let one = serde_json::json!({ "0": all["0"] });
    let partial = dir.path().join("partial.json");
    fs::write(&partial, one.to_string()).unwrap();
    let mut args = vec!["ramp", "reconstruct"];
    args.extend(common);
    args.extend(["--shares", partial.to_str().unwrap()]);
    let o = rghw(&args);
    assert!(o.status.success());
    assert!(json(&o)["secret"].is_null());
}

#[test]
fn hermitian_profile_modes() {
    let o = rghw(&[
        "ramp",
        "profile",
        "--family",
        "hermitian",
        "--q",
        "4",
        "--mu1",
        "12",
        "--mu2",
        "8",
        "--mode",
        "bound",
        "--format",
        "csv",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("t,4,,,1,,lower-bound,51,"), "{text}");
    assert!(text.contains("r,4,,,3,,upper-bound,62,"), "{text}");
    let o = rghw(&[
        "ramp",
        "profile",
        "--family",
        "hermitian",
        "--q",
        "2",
        "--mu1",
        "5",
        "--mu2",
        "3",
        "--mode",
        "oracle",
    ]);
    assert!(o.status.success());
    assert_eq!(json(&o)[0]["kind"], "exact");
}

#[test]
fn hermitian_code_and_diff_table() {
    let o = rghw(&[
        "hermitian",
        "--q",
        "4",
        "code",
        "--mu",
        "12",
        "--format",
        "csv",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("16 64 7\n"));
    let o = rghw(&["hermitian", "--q", "8", "diff-table"]);
    let rows = json(&o);
    assert_eq!(rows.as_array().unwrap().len(), 7);
}

#[test]
fn semigroup_and_field_summaries() {
    let o = rghw(&["semigroup", "4,5", "--mu", "4", "--m", "3"]);
    let v = json(&o);
    assert_eq!(
        (
            v["genus"].as_i64(),
            v["z"].as_i64(),
            v["z_closed_form"].as_i64()
        ),
        (Some(6), Some(7), Some(7))
    );
    let o = rghw(&["field", "3^2", "--mul", "4", "5"]);
    let v = json(&o);
    assert_eq!(v["order"], 9);
    assert!(v["product"].as_u64().unwrap() < 9);
}
