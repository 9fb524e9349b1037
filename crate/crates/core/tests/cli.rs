use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_diagdist"))
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin()
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

const CYCLE5: &str = "# five cycle\nn 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n";

#[test]
fn distance_of_cycle5() {
    let dir = TempDir::new().unwrap();
    write(&dir, "cycle5.eg", CYCLE5);
    let o = run(&["distance", "cycle5.eg"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("distance = 3\n"), "{out}");
    assert!(out.contains("support: v1=(0,1) v2=(1,0) v5=(1,0)"), "{out}");
    assert!(stderr(&o).is_empty());
}

#[test]
fn distance_single_vertex_warns() {
    let dir = TempDir::new().unwrap();
    write(&dir, "single.eg", "n 1\n");
    let o = run(&["distance", "single.eg"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("distance = 1\n"));
    assert!(stderr(&o).contains("vertex 1 is isolated"));
    let q = run(&["distance", "single.eg", "--quiet"], dir.path());
    assert_eq!(stdout(&q), "distance = 1\n");
    assert!(stderr(&q).is_empty());
}

#[test]
fn json_schema() {
    let dir = TempDir::new().unwrap();
    write(&dir, "k3.eg", "n 3\ne 1 2\ne 2 3\ne 1 3\n");
    let o = run(&["distance", "k3.eg", "--json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    for key in [
        "command",
        "p",
        "n",
        "distance",
        "witness_z",
        "witness_x",
        "warnings",
        "elapsed_ms",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["command"], "distance");
    assert_eq!(v["distance"], 2);
    assert_eq!(v["p"], 2);
    assert_eq!(v["witness_z"].as_array().unwrap().len(), 3);
}

#[test]
fn text_and_json_agree() {
    let dir = TempDir::new().unwrap();
    write(&dir, "g.eg", "p 3\nn 4\ne 1 2 2\ne 2 3\ne 3 4\ne 4 1 2\n");
    let text = stdout(&run(&["distance", "g.eg"], dir.path()));
    let v = json(&run(&["distance", "g.eg", "--json"], dir.path()));
    let d: usize = text
        .lines()
        .next()
        .unwrap()
        .trim_start_matches("distance = ")
        .parse()
        .unwrap();
    assert_eq!(v["distance"].as_u64().unwrap() as usize, d);
    let z: Vec<String> = v["witness_z"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e.to_string())
        .collect();
    let x: Vec<String> = v["witness_x"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e.to_string())
        .collect();
    assert!(text.contains(&format!(
        "witness (z | x) = {} | {}",
        z.join(" "),
        x.join(" ")
    )));
}

#[test]
fn prime_flag_beats_header() {
    let dir = TempDir::new().unwrap();
    // A double edge: present mod 3, vanishing mod 2.
    write(&dir, "g.eg", "p 3\nn 2\ne 1 2 2\n");
    let header = json(&run(&["distance", "g.eg", "--json"], dir.path()));
    assert_eq!(header["p"], 3);
    assert_eq!(header["distance"], 2);
    let flag = run(&["distance", "g.eg", "--p", "2", "--json"], dir.path());
    let v = json(&flag);
    assert_eq!(v["p"], 2);
    assert_eq!(v["distance"], 1);
    assert!(stderr(&flag).contains("vanishes"));
    write(&dir, "plain.eg", "n 2\ne 1 2\n");
    assert_eq!(
        json(&run(&["distance", "plain.eg", "--json"], dir.path()))["p"],
        2
    );
}

#[test]
fn code_distance_outputs() {
    let dir = TempDir::new().unwrap();
    write(&dir, "c5.eg", CYCLE5);
    write(&dir, "e1.codes", "0 0 0 0 0\n1 0 0 0 0\n");
    write(&dir, "zero.codes", "# only zero\n0 0 0 0 0\n");
    write(&dir, "ones.codes", "0 0 0 0 0\n1 1 1 1 1\n");

    let o = run(&["code-distance", "c5.eg", "e1.codes"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("delta = 1 at pair (1,2)\n"));

    let o = run(&["code-distance", "c5.eg", "zero.codes"], dir.path());
    assert!(stdout(&o).starts_with("delta = 3 at pair (1,1)\n"));

    let v = json(&run(
        &["code-distance", "c5.eg", "ones.codes", "--json"],
        dir.path(),
    ));
    let pairs = v["pairs"].as_array().unwrap();
    let get = |r: u64, s: u64| {
        pairs.iter().find(|e| e["r"] == r && e["s"] == s).unwrap()["distance"]
            .as_u64()
            .unwrap()
    };
    assert_eq!(get(1, 2), get(2, 1));
    assert_eq!(get(1, 2), 3);
    assert_eq!(get(1, 1), 3);
    assert_eq!(v["distance"], 3);
}

#[test]
fn kernel_outputs() {
    let dir = TempDir::new().unwrap();
    write(&dir, "e2.eg", "n 2\n");
    write(&dir, "k2.eg", "n 2\ne 1 2\n");
    let o = run(&["kernel", "e2.eg"], dir.path());
    assert!(stdout(&o).ends_with("kernel basis (2 vectors):\n0 0 | 1 0\n0 0 | 0 1\n"));
    let o = run(&["kernel", "k2.eg"], dir.path());
    assert!(stdout(&o).ends_with("kernel basis (2 vectors):\n0 1 | 1 0\n1 0 | 0 1\n"));
    let v = json(&run(&["kernel", "k2.eg", "--json"], dir.path()));
    assert_eq!(v["lambda"], serde_json::json!([[1, 0, 0, 1], [0, 1, 1, 0]]));
}

#[test]
fn verify_outputs() {
    let dir = TempDir::new().unwrap();
    write(&dir, "c5.eg", CYCLE5);
    write(&dir, "e2.eg", "n 2\n");
    write(&dir, "ones.codes", "0 0 0 0 0\n1 1 1 1 1\n");
    let o = run(&["verify", "c5.eg"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("MATCH (3 = 3)"));
    let o = run(&["verify", "c5.eg", "--codes", "ones.codes"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pair (1,2): kernel search = 3, oracle = 3"));
    let o = run(&["verify", "e2.eg"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("MATCH (1 = 1)"));
    assert!(stderr(&o).contains("isolated"));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    write(&dir, "bad.eg", "n 3\ne 1 4\n");
    write(&dir, "loop.eg", "n 3\ne 2 2\n");
    write(&dir, "c5.eg", CYCLE5);
    write(&dir, "short.codes", "0 0 0\n");
    write(&dir, "empty.codes", "# nothing\n");

    let o = run(&["distance", "bad.eg"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"));
    assert_eq!(
        run(&["distance", "loop.eg"], dir.path()).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["distance", "missing.eg"], dir.path()).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["code-distance", "c5.eg", "short.codes"], dir.path())
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["code-distance", "c5.eg", "empty.codes"], dir.path())
            .status
            .code(),
        Some(2)
    );

    assert_eq!(run(&["distance"], dir.path()).status.code(), Some(1));
    assert_eq!(
        run(&["distance", "c5.eg", "--p", "9"], dir.path())
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["gen", "star", "4"], dir.path()).status.code(),
        Some(1)
    );

    let o = run(&["distance", "c5.eg", "--max-n", "4"], dir.path());
    assert_eq!(o.status.code(), Some(3));
    let o = run(
        &["distance", "c5.eg", "--max-n", "4", "--force"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));

    // 3^8 words exceeds the oracle cap only for larger n; 3^16 > 2^20.
    let big = run(&["gen", "path", "8"], dir.path());
    write(&dir, "p8.eg", &stdout(&big));
    assert_eq!(
        run(&["verify", "p8.eg", "--p", "3"], dir.path())
            .status
            .code(),
        Some(3)
    );

    let o = run(&["distance", "bad.eg", "--json"], dir.path());
    let v = json(&o);
    assert_eq!(v["exit_code"], 2);
    assert!(v.get("distance").is_none());
    assert!(v["error"].as_str().unwrap().contains("line 2"));
}

#[test]
fn gen_round_trips_through_distance() {
    let dir = TempDir::new().unwrap();
    let o = run(&["gen", "cycle", "5"], dir.path());
    assert_eq!(
        stdout(&o),
        "n 5\ne 1 2 1\ne 1 5 1\ne 2 3 1\ne 3 4 1\ne 4 5 1\n"
    );
    write(&dir, "c5.eg", &stdout(&o));
    assert!(stdout(&run(&["distance", "c5.eg"], dir.path())).starts_with("distance = 3"));
}
