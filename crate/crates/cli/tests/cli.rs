use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn zeta_kit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zeta-kit")).args(args).output().unwrap()
}

fn json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}\n{}", String::from_utf8_lossy(&output.stdout), String::from_utf8_lossy(&output.stderr))
    })
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.display().to_string()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn zeta_on_triangle_with_pendant() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "tp.txt", "a b\nb c\nc a\na d\n");
    let out = zeta_kit(&["zeta", &file]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema"], "zeta-kit/1");
    assert_eq!(v["zeta"], serde_json::json!([2, 2, 2, 1]));
    assert_eq!(v["cheap"], serde_json::json!(["b", "c", "d"]));
    assert_eq!(v["layers"][0], serde_json::json!(["b", "c", "d"]));
}

#[test]
fn generated_example_through_cheap_greedy() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("g2.txt");
    let out = zeta_kit(&["gen", "--family", "example1", "--k", "2", "--out", path_str(&file)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["m"], 20);

    let out = zeta_kit(&["greedy", path_str(&file), "--algo", "cheap", "--trace"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["size"], 6);
    assert_eq!(v["z_bound"], "31/12");
    assert_eq!(v["trace"][0]["picked"], serde_json::json!(["6", "7", "8", "9"]));
    assert_eq!(v["trace"][0]["lambda"], "-5/4");
}

#[test]
fn bounds_on_path() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "p6.txt", "0 1\n1 2\n2 3\n3 4\n4 5\n");
    let v = json(&zeta_kit(&["bounds", &file]));
    assert_eq!(v["bounds"]["z2"], "4");
    assert_eq!(v["bounds"]["forest_z2"], "4");
    assert_eq!(v["approx"]["z2"], "4.000000");
    assert_eq!(v["bounds"]["turan_zeta"], "3");
}

#[test]
fn dimacs_input_with_warning() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "c4.col", "c square\np edge 4 5\ne 1 2\ne 2 3\ne 3 4\ne 4 1\ne 2 1\n");
    let v = json(&zeta_kit(&["zeta", &file]));
    assert_eq!(v["graph"]["m"], 4);
    assert_eq!(v["graph"]["warnings"].as_array().unwrap().len(), 1);
    assert_eq!(v["labels"], serde_json::json!(["1", "2", "3", "4"]));
}

#[test]
fn oracle_and_family() {
    let dir = TempDir::new().unwrap();
    let c5 = write(&dir, "c5.txt", "0 1\n1 2\n2 3\n3 4\n4 0\n");
    let v = json(&zeta_kit(&["oracle", &c5, "--k", "0"]));
    assert_eq!(v["alpha"], 2);
    assert_eq!(v["bounds"]["z1"], "5/3");
    let v = json(&zeta_kit(&["oracle", &c5, "--k", "1"]));
    assert_eq!(v["alpha"], 3);

    let bridged = write(&dir, "tt.txt", "0 1\n1 2\n2 0\n3 4\n4 5\n5 3\n2 3\n");
    let v = json(&zeta_kit(&["family-f", &bridged]));
    assert_eq!(v["in_family_f"], true);
    assert_eq!(v["alpha0"], 2);
    assert_eq!(v["cliques"].as_array().unwrap().len(), 2);

    let outside = write(&dir, "x.txt", "0 3\n0 4\n0 5\n1 2\n1 5\n2 3\n2 4\n3 4\n");
    let out = zeta_kit(&["family-f", &outside]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["in_family_f"], false);
    assert_eq!(v["alpha0_equals_z1"], true);
}

#[test]
fn exit_statuses() {
    let dir = TempDir::new().unwrap();
    assert_eq!(zeta_kit(&[]).status.code(), Some(1));
    assert_eq!(zeta_kit(&["greedy", "x", "--algo", "bogus"]).status.code(), Some(1));
    assert_eq!(zeta_kit(&["zeta", "/nonexistent/file"]).status.code(), Some(1));
    assert_eq!(zeta_kit(&["--help"]).status.code(), Some(0));

    let bad = write(&dir, "loop.txt", "0 0\n");
    let out = zeta_kit(&["zeta", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    let star = write(&dir, "star.txt", "0 1\n0 2\n0 3\n");
    assert_eq!(zeta_kit(&["greedy", &star, "--algo", "forest-k"]).status.code(), Some(1));
    let out = zeta_kit(&["greedy", &star, "--algo", "forest-k", "--k", "1"]);
    assert_eq!(out.status.code(), Some(3), "leaf repair on a star is logged as an anomaly");
    let v = json(&out);
    assert_eq!(v["size"], 3);
    assert_eq!(v["anomalies"][0]["candidate"], serde_json::json!(["0", "3"]));

    let triangle = write(&dir, "k3.txt", "0 1\n1 2\n2 0\n");
    assert_eq!(zeta_kit(&["greedy", &triangle, "--algo", "forest-k", "--k", "1"]).status.code(), Some(1));
    assert_eq!(zeta_kit(&["greedy", &triangle, "--algo", "2cheap"]).status.code(), Some(0));
}

#[test]
fn seeded_min_greedy() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("g3.txt");
    zeta_kit(&["gen", "--family", "example1", "--k", "3", "--out", path_str(&file)]);
    let a = json(&zeta_kit(&["greedy", path_str(&file), "--algo", "min", "--seed", "5"]));
    let b = json(&zeta_kit(&["greedy", path_str(&file), "--algo", "min", "--seed", "5"]));
    assert_eq!(a, b);
    assert!(a["size"].as_u64().unwrap() <= 10);
}

#[test]
fn bench_reports() {
    let dir = TempDir::new().unwrap();
    let graphs = dir.path().join("graphs");
    fs::create_dir(&graphs).unwrap();
    for (name, args) in [
        ("b.txt", vec!["--family", "cycle", "--n", "7"]),
        ("a.col", vec!["--family", "random-gnp", "--n", "18", "--p", "0.3", "--seed", "4"]),
        ("c.txt", vec!["--family", "family-F", "--sizes", "3,2,4", "--extra", "3", "--seed", "1"]),
    ] {
        let out = graphs.join(name);
        let mut argv = vec!["gen"];
        argv.extend(args);
        argv.extend(["--out", path_str(&out)]);
        assert!(zeta_kit(&argv).status.success());
    }
    let report = dir.path().join("report.json");
    let out = zeta_kit(&["bench", "--dir", path_str(&graphs), "--out", path_str(&report), "--threads", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["schema"], "zeta-kit/1");
    let names: Vec<&str> = v["rows"].as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["a.col", "b.txt", "c.txt"]);
    let cycle = &v["rows"][1];
    assert_eq!(cycle["bounds"]["z1"], "7/3");
    assert_eq!(cycle["oracle"]["alpha0"], 3);
    assert_eq!(v["rows"][2]["family_f"], true);

    let csv = dir.path().join("report.csv");
    assert!(zeta_kit(&["bench", "--dir", path_str(&graphs), "--out", path_str(&csv)]).status.success());
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().nth(2).unwrap().starts_with("b.txt,edge-list,7,7,2,2,2,2.000000,7/3,"));

    fs::write(graphs.join("d.txt"), "1 2 3\n").unwrap();
    assert_eq!(zeta_kit(&["bench", "--dir", path_str(&graphs), "--out", path_str(&report)]).status.code(), Some(2));
}

#[test]
fn conjecture_search_reports() {
    let out = zeta_kit(&["conjecture", "--k", "3", "--n", "8", "--trials", "20", "--seed", "2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["trials"], 20);
    assert!(v["counterexamples"].is_array());
    assert!(v["min_slack"].is_string());
}

#[test]
fn stdin_input() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_zeta-kit"))
        .args(["bounds", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"0 1\n1 2\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(json(&out)["bounds"]["z1"], "3/2");
}
