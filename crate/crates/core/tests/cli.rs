use std::process::{Command, Output};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_secretary-rank"))
        .args(args)
        .env("RANK_ARRIVAL_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn run_with_flags_and_check() {
    let out = cli(&["run", "--algo", "dense", "--sizes", "32,64,128", "--trials", "20", "--check"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("slope"));
    assert!(text.contains("check passed"));
}

#[test]
fn check_failure_exits_3() {
    let out = cli(&[
        "run", "--algo", "random", "--sizes", "32,64,128", "--trials", "20", "--check", "--slope-range", "0.0,1.0",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn config_errors_exit_2() {
    assert_eq!(cli(&["run", "--algo", "quicksort"]).status.code(), Some(2));
    assert_eq!(cli(&["run", "--algo", "dense", "--sizes", "8,4"]).status.code(), Some(2));
    assert_eq!(cli(&["run", "--config", "/nonexistent/config.json"]).status.code(), Some(2));
    assert_eq!(cli(&["solve-alpha", "--n", "1024", "--m", "2048"]).status.code(), Some(2));
    assert_eq!(cli(&["scan-anticoncentration", "--rho-r", "1.5"]).status.code(), Some(2));
}

#[test]
fn run_from_config_file_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let results = dir.path().join("results.csv");
    let summary = dir.path().join("summary.json");
    let config = dir.path().join("config.json");
    std::fs::write(
        &config,
        format!(
            r#"{{"algorithm":"general","sizes":[64,128],"m_rule":{{"kind":"power","beta":2.0}},
                "trials":4,"master_seed":3,
                "output":{{"results_csv":{:?},"summary_json":{:?}}}}}"#,
            results, summary
        ),
    )
    .unwrap();
    let out = cli(&["run", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(&results).unwrap();
    assert_eq!(csv.lines().count(), 1 + 2 * 4);
    assert!(csv.lines().nth(1).unwrap().starts_with("general,64,4096,0,"));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&summary).unwrap()).unwrap();
    assert_eq!(json["groups"].as_array().unwrap().len(), 2);
}

#[test]
fn solve_alpha_prints_parameters() {
    let out = cli(&["solve-alpha", "--n", "1024", "--m", "10000000000"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("alpha 5.79976769"), "{text}");
    assert!(text.contains("height 23"));
    assert!(text.contains("leaf_width 1191"));
}

#[test]
fn scan_and_bst_height() {
    let out = cli(&["scan-anticoncentration", "--sizes", "100,1000"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("n,r,t,k_star,p_star,sqrt_n_p_star"));
    assert!(text.lines().nth(1).unwrap().starts_with("100,50,50,25,"));

    let out = cli(&["bst-height", "--n", "1000", "--trials", "200"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("mean_over_ln_n"));
}

#[test]
fn oracle_check_passes() {
    let out = cli(&["oracle-check", "--cases", "30"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("PASS")).count(), 6);
}

#[test]
fn traces_are_deterministic_csv() {
    let a = cli(&["trace", "--algo", "dense", "--n", "20", "--seed", "5"]);
    let b = cli(&["trace", "--algo", "dense", "--n", "20", "--seed", "5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().next(), Some("t,r_t,x_t,erank,pi"));
    assert_eq!(text.lines().count(), 21);

    let tree = cli(&["trace", "--algo", "sparse", "--n", "16", "--seed", "5"]);
    assert_eq!(tree.status.code(), Some(0));
    assert_eq!(stdout(&tree).lines().next(), Some("t,node_depth,position,overflow_flag"));

    assert_eq!(cli(&["trace", "--algo", "random", "--n", "4"]).status.code(), Some(2));
}
