use std::process::{Command, Output};

fn gkk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gkk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn build_writes_exact_entries() {
    let o = gkk(&["build", "--n", "4", "--k", "1", "--t", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"], 4);
    assert_eq!(v["params"]["k"], 1);
    // first row 1, 0, a_1, a_2 solved from det A(3) = t, det A(4) = t^2:
    // 1 + a_1 = t, and the 4x4 expansion is linear in a_2
    let e = v["entries"].as_array().unwrap();
    let cell = |i: usize| format!("{}/{}", e[i][0].as_str().unwrap(), e[i][1].as_str().unwrap());
    assert_eq!([cell(0), cell(1), cell(2), cell(3)], ["1/1", "0/1", "-1/2", "-1/4"]);
}

#[test]
fn classify_exit_code_reflects_failures() {
    let ok = gkk(&["classify", "--identity", "3", "--format", "csv"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok).lines().filter(|l| l.contains(",true,")).count(), 7);

    let unstable = gkk(&["classify", "--limit", "--k", "21", "--properties", "pos_stable"]);
    assert_eq!(unstable.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&unstable)).unwrap();
    assert_eq!(v["reports"][0]["params"]["boundary"], true);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["classify"][..],
        &["build", "--n", "4", "--k", "1"],
        &["build", "--n", "4", "--k", "1", "--t", "3/2"],
        &["build", "--identity", "2", "--limit", "--k", "1"],
        &["scan-k", "--k-max", "20"],
        &["classify", "--identity", "2", "--properties", "Q"],
        &["no-such-command"],
    ] {
        let o = gkk(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn scan_reports_threshold() {
    let o = gkk(&["scan-k", "--k-max", "25", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("first unstable k = 21"));
    let rows: Vec<String> = stdout(&o).lines().skip(1).map(str::to_owned).collect();
    assert_eq!(rows.len(), 23);
    assert!(rows[17].starts_with("20,") && rows[17].ends_with("positive"));
    assert!(rows[18].starts_with("21,") && rows[18].ends_with("negative"));
}

#[test]
fn output_file_and_config() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.csv");
    let cfg = dir.path().join("gkk.toml");
    std::fs::write(&cfg, "format = \"csv\"\n").unwrap();
    let o = gkk(&[
        "charpoly",
        "--named",
        "eta",
        "--k",
        "2",
        "--config",
        cfg.to_str().unwrap(),
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("degree,coefficient"));
}

#[test]
fn identical_output_across_thread_counts() {
    let args = |jobs: &'static str| {
        vec![
            "classify", "--n", "8", "--k", "2", "--t", "1/3", "--cap-n", "8", "--jobs", jobs,
        ]
    };
    let one = gkk(&args("1"));
    let four = gkk(&args("4"));
    assert_eq!(one.status.code(), four.status.code());
    assert_eq!(stdout(&one), stdout(&four));
}
