use std::path::Path;
use std::process::{Command, Output};

fn linkpred(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linkpred"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_path3(dir: &Path) -> String {
    let path = dir.join("path3.txt");
    std::fs::write(&path, "a b\nb c\n").unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn rank_path_inverse_square() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_path3(dir.path());
    let out = linkpred(&[
        "rank", "--graph", &graph, "--method", "shapley-closeness", "--k", "2", "--f",
        "inverse-square", "--top", "1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "a,c,0.75"), "{text}");
    assert!(text.starts_with("# config:"), "{text}");
}

#[test]
fn rank_common_neighbors_and_lrw() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_path3(dir.path());
    let out = linkpred(&["rank", "--graph", &graph, "--method", "cn", "--k", "2", "--top", "1"]);
    assert!(stdout(&out).lines().any(|l| l == "a,c,1"));
    let out = linkpred(&["rank", "--graph", &graph, "--method", "lrw", "--k", "1", "--top", "1"]);
    assert!(stdout(&out).lines().any(|l| l == "a,c,0"));
}

#[test]
fn rank_usage_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_path3(dir.path());
    for args in [
        vec!["rank", "--graph", &graph, "--method", "nope", "--k", "2"],
        vec!["rank", "--graph", &graph, "--method", "shapley-closeness", "--k", "2", "--f", "bad"],
        vec![
            "rank", "--graph", &graph, "--method", "semivalue-closeness", "--k", "2", "--weights",
            "bad",
        ],
        vec!["rank", "--graph", &graph, "--method", "cn", "--k", "2", "--unknown-flag"],
    ] {
        let out = linkpred(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn unreadable_graph_exits_2() {
    let out = linkpred(&[
        "rank", "--graph", "/no/such/file.txt", "--method", "cn", "--k", "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generate_is_deterministic_with_forced_edge_count() {
    let out1 = linkpred(&["generate", "--n", "5", "--m0", "3", "--m", "2", "--seed", "7"]);
    let out2 = linkpred(&["generate", "--n", "5", "--m0", "3", "--m", "2", "--seed", "7"]);
    assert!(out1.status.success());
    assert_eq!(stdout(&out1), stdout(&out2));
    let edges = stdout(&out1).lines().filter(|l| !l.starts_with('#')).count();
    assert_eq!(edges, 7);

    let out = linkpred(&["generate", "--n", "3", "--m0", "3", "--m", "2", "--seed", "7"]);
    let edges = stdout(&out).lines().filter(|l| !l.starts_with('#')).count();
    assert_eq!(edges, 3);
}

#[test]
fn generate_rejects_bad_parameters() {
    let out = linkpred(&["generate", "--n", "3", "--m0", "4", "--m", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn evaluate_is_reproducible_and_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("report");
    let args = [
        "evaluate",
        "--graph",
        "karate",
        "--methods",
        "shapley-closeness,cn",
        "--k-list",
        "1,2",
        "--trials",
        "2",
        "--seed",
        "7",
        "--out",
        out_dir.to_str().unwrap(),
    ];
    let a = linkpred(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let b = linkpred(&args);
    assert_eq!(stdout(&a), stdout(&b));
    let csv = std::fs::read_to_string(out_dir.join("report.csv")).unwrap();
    // 4 method/k rows, 2 metrics each, plus header
    assert_eq!(csv.lines().count(), 9);
    assert!(csv.starts_with("method,k,metric,mean,stddev,trials"));
    let json = std::fs::read_to_string(out_dir.join("report.json")).unwrap();
    assert!(json.contains("\"master_seed\": 7"));
    assert!(json.contains("dataset_checksum_sha256"));
}

#[test]
fn evaluate_rejects_bad_fraction() {
    let out = linkpred(&[
        "evaluate", "--graph", "karate", "--trials", "1", "--fraction", "1.5",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn thread_count_does_not_change_output() {
    let base = [
        "evaluate", "--graph", "karate", "--methods", "shapley-closeness", "--k-list", "2",
        "--trials", "3", "--seed", "11",
    ];
    let mut one = base.to_vec();
    one.extend(["--threads", "1"]);
    let mut eight = base.to_vec();
    eight.extend(["--threads", "8"]);
    let a = linkpred(&one);
    let b = linkpred(&eight);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn bench_row_count_matches_grid() {
    let out = linkpred(&[
        "bench", "--sizes", "40,60", "--k-list", "1,2", "--methods",
        "shapley-closeness,cn", "--repeats", "1",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = stdout(&out)
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("n,"))
        .count();
    assert_eq!(rows, 2 * 2 * 2);
}

#[test]
fn verify_passes_small_and_rejects_large() {
    let out = linkpred(&["verify", "--max-n", "4", "--k-list", "1,2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("verify: PASS"));
    let out = linkpred(&["verify", "--max-n", "12"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_documents_subcommands_and_exits_0() {
    let out = linkpred(&["--help"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stderr).into_owned() + &stdout(&out);
    for sub in ["rank", "evaluate", "generate", "bench", "verify"] {
        assert!(text.contains(sub), "missing {sub} in help");
    }
}
