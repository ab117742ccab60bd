use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ramanujan"));
    c.args(args).env_remove("STIRLING_MAX_BITS");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn theta_digits() {
    let o = run(&["theta", "1", "--digits", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("0.3359 ± "), "{}", stdout(&o));
    let o = run(&["theta", "3", "--digits", "4"]);
    assert!(stdout(&o).starts_with("0.6305 ± "));
}

#[test]
fn theta_many_digits() {
    let o = run(&["theta", "7", "--digits", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    let mid = stdout(&o).split(' ').next().unwrap().to_string();
    assert_eq!(mid.len(), 1002);
}

#[test]
fn theta_formats() {
    let o = run(&["theta", "2", "--digits", "6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["mid"], "0.511762");
    assert_eq!(v["n"], 2);
    let o = run(&["theta", "2", "--digits", "6", "--format", "csv"]);
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let rec = r.records().next().unwrap().unwrap();
    assert_eq!(&rec[2], "0.511762");
}

#[test]
fn usage_errors_exit_3() {
    for args in [
        &["theta", "0"][..],
        &["theta", "1", "--digits", "0"],
        &["theta", "1", "--digits", "1001"],
        &["theta", "x"],
        &["verify", "bogus"],
        &["table", "--from", "5", "--to", "2"],
        &["table", "--from", "0", "--to", "2"],
        &[],
    ] {
        assert_eq!(run(args).status.code(), Some(3), "{args:?}");
    }
    assert_eq!(run_env(&["theta", "1"], &[("STIRLING_MAX_BITS", "lots")]).status.code(), Some(3));
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "--help"]).status.code(), Some(0));
}

#[test]
fn precision_exhaustion_exits_2() {
    let o = run_env(&["theta", "5", "--digits", "100"], &[("STIRLING_MAX_BITS", "64")]);
    assert_eq!(o.status.code(), Some(2));
    let o = run_env(&["verify", "exp-ratio"], &[("STIRLING_MAX_BITS", "8")]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
}

#[test]
fn table_rows_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("t.csv");
    let json_path = dir.path().join("t.json");
    let base = ["table", "--from", "1", "--to", "3"];
    for (fmt, p) in [("csv", &csv_path), ("json", &json_path)] {
        let mut args = base.to_vec();
        args.extend(["--format", fmt, "--out", p.to_str().unwrap()]);
        assert_eq!(run(&args).status.code(), Some(0));
    }
    let mut rdr = csv::Reader::from_path(&csv_path).unwrap();
    assert_eq!(
        rdr.headers().unwrap().iter().collect::<Vec<_>>(),
        ["n", "theta_mid", "theta_rad", "alpha", "beta", "weak_lower", "sandwich_ok", "monotone_ok"]
    );
    let from_csv: Vec<serde_json::Value> = rdr
        .records()
        .map(|r| {
            let r = r.unwrap();
            serde_json::json!({
                "n": r[0].parse::<u64>().unwrap(),
                "theta_mid": &r[1], "theta_rad": &r[2], "alpha": &r[3], "beta": &r[4], "weak_lower": &r[5],
                "sandwich_ok": r[6].parse::<bool>().unwrap(), "monotone_ok": r[7].parse::<bool>().unwrap(),
            })
        })
        .collect();
    let from_json: Vec<serde_json::Value> =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(from_csv, from_json);
    assert_eq!(from_json.len(), 3);
    assert_eq!(from_json[0]["alpha"], "1/4");
    assert_eq!(from_json[0]["beta"], "1");
    assert!(from_json.iter().all(|r| r["monotone_ok"] == true && r["sandwich_ok"] == true));
}

#[test]
fn table_io_error_exits_4() {
    let o = run(&["table", "--from", "1", "--to", "2", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(o.status.code(), Some(4));
    let o = run(&["verify", "staircase", "--report", "/nonexistent-dir/r.json"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn staircase_report() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = run(&["verify", "staircase", "--report", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: serde_json::Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(v["overall"], "verified");
    for key in ["tool_version", "policy", "steps", "derived_constants"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let step = v["steps"].as_array().unwrap().iter().find(|s| s["id"] == "staircase.n2-expected-fail").unwrap();
    assert_eq!(step["status"], "verified");
    assert_eq!(step["witness"]["value"], serde_json::json!({"num": "-13", "den": "1"}));
}

#[test]
fn verify_all_exits_0() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("all.json");
    let o = run(&["verify", "all", "--report", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    let k = &v["derived_constants"]["difference.K"];
    assert_eq!(k["num"], "140238134154457251840000000");
    assert_eq!(k["den"], "1");
}
