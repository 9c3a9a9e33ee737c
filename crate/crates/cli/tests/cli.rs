//! End-to-end runs of the `clusterx` binary.

use std::process::{Command, Output};

fn clusterx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clusterx"))
        .args(args)
        .env_remove("CLUSTERX_CACHE_DIR")
        .output()
        .expect("spawn clusterx")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn count_xvars_matches_table() {
    for (args, want) in [
        (["--type", "A", "--rank", "3", "--semifield", "universal"], "30"),
        (["--type", "F", "--rank", "4", "--semifield", "principal"], "48"),
        (["--type", "G", "--rank", "2", "--semifield", "universal"], "16"),
    ] {
        let mut a = vec!["count-xvars", "--expect-paper", "--format", "json"];
        a.extend(args);
        let o = clusterx(&a);
        assert_eq!(o.status.code(), Some(0), "{a:?}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["xvars"].to_string(), want);
        assert_eq!(v["pass"], true);
    }
}

#[test]
fn table_output_is_deterministic() {
    let a = ["count-xvars", "--type", "B", "--rank", "3", "--expect-paper"];
    let (x, y) = (clusterx(&a), clusterx(&a));
    assert_eq!(x.stdout, y.stdout);
    assert!(stdout(&x).lines().nth(1).unwrap().split_whitespace().any(|c| c == "44"));
}

#[test]
fn long_runs_are_gated() {
    let o = clusterx(&["count-xvars", "--type", "E", "--rank", "8"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--allow-long"));
}

#[test]
fn node_limit_gives_partial_json_and_exit_2() {
    let o = clusterx(&["count-xvars", "--type", "D", "--rank", "5", "--max-nodes", "7"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["complete"], false);
    assert!(v["nodes"].as_array().unwrap().len() >= 7);
}

#[test]
fn verify_commands_pass() {
    let runs: [&[&str]; 6] = [
        &["verify", "bijection", "--type", "D", "--rank", "4"],
        &["verify", "quad-counts", "--surface", "punctured", "--n", "5"],
        &["verify", "quad-counts", "--surface", "folded-plain", "--n", "8"],
        &["verify", "pairs", "--type", "G", "--rank", "2"],
        &["verify", "geometric", "--type", "C", "--rank", "3", "--trials", "20"],
        &["verify", "exchange-graph-coincide", "--type", "B", "--rank", "3"],
    ];
    for a in runs {
        let o = clusterx(a);
        assert_eq!(o.status.code(), Some(0), "{a:?}: {}", stdout(&o));
        assert_eq!(stdout(&o).lines().last(), Some("pass"));
    }
    let o = clusterx(&["verify", "quad-counts", "--surface", "punctured", "--n", "5"]);
    assert!(stdout(&o).contains("130 = 130"));
    let o = clusterx(&["verify", "pairs", "--type", "G", "--rank", "2"]);
    assert!(stdout(&o).contains("16 = 16"));
}

#[test]
fn geometric_report_depends_only_on_seed() {
    let a = ["verify", "geometric", "--type", "A", "--rank", "4", "--format", "json", "--rng-seed", "7"];
    let (x, y) = (clusterx(&a), clusterx(&a));
    assert_eq!(x.stdout, y.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&x)).unwrap();
    assert_eq!(v["pairs_total"], v["separated"]);
}

#[test]
fn emitted_graphs() {
    let o = clusterx(&["emit", "exchange-graph", "--type", "A", "--rank", "2", "--format", "dot"]);
    let dot = stdout(&o);
    assert_eq!(dot.lines().filter(|l| l.contains("tooltip")).count(), 5);
    assert_eq!(dot.matches(" -- ").count(), 5);

    let o = clusterx(&["emit", "flip-graph", "--surface", "plain", "--n", "6"]);
    let dot = stdout(&o);
    assert_eq!(dot.lines().filter(|l| l.contains("[label=")).count(), 14);
    assert_eq!(dot.matches(" -- ").count(), 21);

    let o = clusterx(&["emit", "exchange-graph", "--type", "A", "--rank", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 14);
}

#[test]
fn emitted_xvars_and_quads() {
    let o = clusterx(&["emit", "xvars", "--type", "B", "--rank", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 12);
    assert_eq!(v["xvars"].as_array().unwrap().len(), 12);

    let o = clusterx(&["emit", "xvars", "--type", "A", "--rank", "2", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 11);

    let o = clusterx(&["emit", "quads", "--surface", "plain", "--n", "6"]);
    let csv = stdout(&o);
    assert_eq!(csv.lines().next(), Some("key,diagonal,triangulations"));
    assert_eq!(csv.lines().count(), 1 + 30);
}

#[test]
fn output_file_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a3.dot");
    let o = clusterx(&["emit", "exchange-graph", "--type", "A", "--rank", "3", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&out).unwrap().starts_with("graph \"A3\""));

    let cache = dir.path().join("cache");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_clusterx"))
            .args(["count-xvars", "--type", "C", "--rank", "3", "--expect-paper"])
            .env("CLUSTERX_CACHE_DIR", &cache)
            .output()
            .unwrap()
    };
    let first = run();
    assert_eq!(first.status.code(), Some(0));
    assert!(cache.join("C3-universal.json").exists());
    let second = run();
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(clusterx(&["count-xvars", "--type", "Q", "--rank", "3"]).status.code(), Some(2));
    assert_eq!(
        clusterx(&["emit", "flip-graph", "--surface", "plain", "--n", "6", "--format", "csv"]).status.code(),
        Some(2)
    );
    assert_eq!(
        clusterx(&["count-xvars", "--type", "A", "--rank", "3", "--semifield", "tropical"]).status.code(),
        Some(2)
    );
}
