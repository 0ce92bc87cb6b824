use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rubik-np"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn reduce_worked_example_sizes() {
    let input = corpus("worked_example.json");
    for (target, side) in [("square", 30), ("cube-sqtm", 36), ("cube-stm", 36)] {
        let out = run(&["reduce", "--input", path_str(&input), "--target", target]);
        assert_eq!(code(&out), 0);
        let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(v["side"], side);
        assert_eq!(v["k"], 9);
        assert!(v["transformation"].is_null());
    }
    let out = run(&["reduce", "--input", path_str(&input), "--group"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["configuration"].is_null());
    assert!(v["transformation"]["map"].is_array());
}

#[test]
fn reduce_rejects_degree_one_grid() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("bar.json");
    std::fs::write(&g, r#"{"vertices":[[0,0],[1,0]]}"#).unwrap();
    let out = run(&["reduce", "--input", path_str(&g)]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("degree 1"));
}

#[test]
fn reduce_accepts_grid_graphs() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("square.json");
    std::fs::write(&g, r#"{"vertices":[[0,0],[1,0],[0,1],[1,1]]}"#).unwrap();
    let out = run(&["reduce", "--input", path_str(&g)]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["source"]["labels"].as_array().unwrap().len(), 8);
    let p = dir.path().join("promise.json");
    std::fs::write(&p, r#"{"vertices":[[0,0],[1,0],[2,0]],"s":[0,0],"t":[2,0]}"#).unwrap();
    let out = run(&["certify", "--input", path_str(&p), "--search"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).split_whitespace().count(), 5);
}

#[test]
fn certify_search_and_verify() {
    let dir = TempDir::new().unwrap();
    let input = corpus("worked_example.json");
    let out = run(&["certify", "--input", path_str(&input), "--search"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "y:1 x:1 y:3 x:3 y:2 x:2 y:4 x:1 y:5");

    let seq = dir.path().join("seq.txt");
    let red = dir.path().join("reduced.json");
    let out = run(&["certify", "--input", path_str(&input), "--search", "--target", "cube-stm", "--group", "--output", path_str(&seq)]);
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read_to_string(&seq).unwrap().split_whitespace().count(), 9);
    assert_eq!(code(&run(&["reduce", "--input", path_str(&input), "--target", "cube-stm", "--group", "--output", path_str(&red)])), 0);
    let out = run(&["verify", "--input", path_str(&red), "--solution", path_str(&seq)]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["accepted"], true);

    let out = run(&["verify", "--input", path_str(&red), "--moves", "z:4:ccw"]);
    assert_eq!(code(&out), 1);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["reasons"][0]["reason"], "not_solved");
}

#[test]
fn certify_no_instance_and_bad_certificate() {
    let out = run(&["certify", "--input", path_str(&corpus("two_apart.json")), "--search"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("no path"));

    let dir = TempDir::new().unwrap();
    let cert = dir.path().join("cert.json");
    std::fs::write(&cert, r#"{"ordering":[1,2,3,4,5]}"#).unwrap();
    let out = run(&["certify", "--input", path_str(&corpus("worked_example.json")), "--certificate", path_str(&cert)]);
    assert_eq!(code(&out), 3);
    std::fs::write(&cert, r#"{"ordering":[1,3,2,4,5]}"#).unwrap();
    let out = run(&["certify", "--input", path_str(&corpus("worked_example.json")), "--certificate", path_str(&cert)]);
    assert_eq!(code(&out), 0);
}

#[test]
fn solve_yes_and_no() {
    let dir = TempDir::new().unwrap();
    let yes = dir.path().join("yes.json");
    let no = dir.path().join("no.json");
    run(&["reduce", "--input", path_str(&corpus("one_bit.json")), "--output", path_str(&yes)]);
    run(&["reduce", "--input", path_str(&corpus("two_apart.json")), "--output", path_str(&no)]);
    let out = run(&["solve", "--input", path_str(&yes)]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).split_whitespace().count(), 3);
    let out = run(&["solve", "--input", path_str(&no), "--max-depth", "3"]);
    assert_eq!(code(&out), 1);
    let out = run(&["solve", "--input", path_str(&no), "--strategy", "uni", "--no-pruning"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn solve_capacity_exit() {
    let dir = TempDir::new().unwrap();
    let red = dir.path().join("r.json");
    run(&["reduce", "--input", path_str(&corpus("two_apart.json")), "--output", path_str(&red)]);
    let out = run(&["solve", "--input", path_str(&red), "--node-limit", "10"]);
    assert_eq!(code(&out), 4);
}

#[test]
fn render_is_deterministic() {
    let a = run(&["render", "--solved", "2", "--kind", "cube"]);
    let b = run(&["render", "--solved", "2", "--kind", "cube"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a), "   WW\n   WW\n\nOO GG RR YY\nOO GG RR YY\n\n   BB\n   BB\n");
    let svg = run(&["render", "--solved", "4", "--format", "svg", "--face", "+z"]);
    assert!(stdout(&svg).starts_with("<svg"));
    let top = run(&["render", "--input", path_str(&corpus("one_bit.json")), "--predict", "cb", "--face", "+z"]);
    assert_eq!(code(&top), 0);
    assert_eq!(stdout(&top).lines().count(), 12);
}

#[test]
fn usage_and_io_errors() {
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["reduce", "--target", "dodecahedron"])), 2);
    assert_eq!(code(&run(&["solve", "--input", "/definitely/not/here.json"])), 2);
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"labels":["11","01"]}"#).unwrap();
    assert_eq!(code(&run(&["reduce", "--input", path_str(&bad)])), 3);
    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(code(&run(&["reduce", "--input", path_str(&bad)])), 3);
}

#[test]
fn selftest_passes_on_bundled_manifest() {
    let out = run(&["selftest", "--rounds", "3", "--manifest", path_str(&corpus("manifest.json"))]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("PASS")).count(), 8);
}

#[test]
fn pipeline_closure_over_corpus() {
    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(corpus("manifest.json")).unwrap()).unwrap();
    let dir = TempDir::new().unwrap();
    for item in manifest["items"].as_array().unwrap() {
        let input = corpus(item["input"].as_str().unwrap());
        let out = run(&["certify", "--input", path_str(&input), "--search"]);
        match item["expected"].as_str().unwrap() {
            "yes" => {
                assert_eq!(code(&out), 0, "{}", item["name"]);
                let red = dir.path().join("r.json");
                run(&["reduce", "--input", path_str(&input), "--output", path_str(&red)]);
                let v = run(&["verify", "--input", path_str(&red), "--moves", stdout(&out).trim()]);
                assert_eq!(code(&v), 0, "{}", item["name"]);
            }
            _ => assert_eq!(code(&out), 1, "{}", item["name"]),
        }
    }
}

#[test]
fn reduced_instance_round_trips_through_files() {
    let dir = TempDir::new().unwrap();
    let first = dir.path().join("a.json");
    run(&["reduce", "--input", path_str(&corpus("three_path.json")), "--target", "cube-sqtm", "--output", path_str(&first)]);
    let text = std::fs::read_to_string(&first).unwrap();
    let parsed: rubik_np::reduction::ReducedInstance = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&parsed).unwrap(), text.trim_end());
}
