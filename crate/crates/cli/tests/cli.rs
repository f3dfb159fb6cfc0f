use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn boxcolour(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boxcolour"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exited normally")
}

/// Runs a command that must succeed and saves its stdout as `name`.
fn save(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let out = boxcolour(args, dir);
    assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let path = dir.join(name);
    fs::write(&path, &out.stdout).unwrap();
    path
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).expect("valid JSON")
}

#[test]
fn hypercube_colouring_verifies() {
    let dir = TempDir::new().unwrap();
    save(dir.path(), "q4.json", &["hypercube", "4"]);
    let doc = json(&fs::read_to_string(dir.path().join("q4.json")).unwrap());
    assert_eq!(doc["n"], 16);
    assert_eq!(
        doc["palette"]["g"].as_u64().unwrap() + doc["palette"]["h"].as_u64().unwrap(),
        5
    );

    save(dir.path(), "q4.el", &["gen", "hypercube", "4"]);
    let out = boxcolour(&["verify", "q4.json", "--graph", "q4.el"], dir.path());
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("ok"));
}

#[test]
fn bichromatic_four_cycle_fails_verification() {
    let dir = TempDir::new().unwrap();
    let doc = r#"{"n":4,"palette":{"g":2,"h":0},"edges":[[0,1,"0"],[1,2,"1"],[2,3,"0"],[0,3,"1"]]}"#;
    fs::write(dir.path().join("c4.json"), doc).unwrap();
    let out = boxcolour(&["verify", "c4.json"], dir.path());
    assert_eq!(code(&out), 1);
    assert!(
        stdout(&out).contains("bichromatic cycle in colours {0, 1}"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn scan_small_graphs_stays_within_two_of_delta() {
    let dir = TempDir::new().unwrap();
    let out = boxcolour(&["scan", "--max-n", "6"], dir.path());
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,m,delta,aci,aci_minus_delta,nodes,time_ms"));
    let excess: Vec<i64> = lines.map(|l| l.split(',').nth(4).unwrap().parse().unwrap()).collect();
    assert_eq!(excess.len(), 143);
    assert!(excess.iter().all(|&x| (0..=2).contains(&x)));
    assert!(String::from_utf8_lossy(&out.stderr).contains("max a'-Δ = 2"));
}

#[test]
fn scan_rows_follow_input_order() {
    let dir = TempDir::new().unwrap();
    let columns = |out: &Output| -> Vec<String> {
        stdout(out)
            .lines()
            .skip(1)
            .map(|l| l.rsplit_once(',').unwrap().0.to_owned())
            .collect()
    };
    let first = boxcolour(&["scan", "--max-n", "5"], dir.path());
    let again = boxcolour(&["scan", "--max-n", "5"], dir.path());
    // everything except the timing column is deterministic
    assert_eq!(columns(&first), columns(&again));
}

#[test]
fn generated_graphs_round_trip() {
    let dir = TempDir::new().unwrap();
    for format in ["edgelist", "graph6"] {
        save(dir.path(), "p3", &["gen", "path", "3", "--format", format]);
        save(dir.path(), "c4", &["gen", "cycle", "4", "--format", format]);
        let product = save(dir.path(), "prod", &["product", "p3", "c4", "--format", format]);
        let again = save(dir.path(), "again", &["product", "p3", "c4", "--format", format]);
        assert_eq!(fs::read(&product).unwrap(), fs::read(&again).unwrap());

        // re-parse through aci and check its witness against the file
        save(dir.path(), "aci.json", &["aci", "prod", "--format", format]);
        let doc = json(&fs::read_to_string(dir.path().join("aci.json")).unwrap());
        assert_eq!(doc["aci"], 4);
        fs::write(dir.path().join("x.json"), doc["colouring"].to_string()).unwrap();
        let out = boxcolour(&["verify", "x.json", "--graph", "prod", "--format", format], dir.path());
        assert_eq!(code(&out), 0, "{format}");
    }
}

#[test]
fn compose_writes_product_and_verified_colouring() {
    let dir = TempDir::new().unwrap();
    save(dir.path(), "g.el", &["gen", "cycle", "4"]);
    save(dir.path(), "h.el", &["gen", "path", "2"]);
    save(
        dir.path(),
        "x.json",
        &[
            "compose",
            "--g",
            "g.el",
            "--h",
            "h.el",
            "--solve-factors",
            "--graph-out",
            "prod.el",
        ],
    );
    let doc = json(&fs::read_to_string(dir.path().join("x.json")).unwrap());
    assert_eq!(doc["edges"].as_array().unwrap().len(), 12);
    let out = boxcolour(&["verify", "x.json", "--graph", "prod.el"], dir.path());
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "ok: proper and acyclic with 4 colours");
}

#[test]
fn compose_accepts_supplied_factor_colourings() {
    let dir = TempDir::new().unwrap();
    save(dir.path(), "g.el", &["gen", "complete", "4"]);
    save(dir.path(), "h.el", &["gen", "path", "3"]);
    save(dir.path(), "xg.json", &["greedy", "g.el", "--seed", "7"]);
    save(dir.path(), "xh.json", &["greedy", "h.el"]);
    save(
        dir.path(),
        "x.json",
        &[
            "compose", "--g", "g.el", "--h", "h.el", "--xg", "xg.json", "--xh", "xh.json",
        ],
    );
    let out = boxcolour(&["verify", "x.json"], dir.path());
    assert_eq!(code(&out), 0);

    // a colouring of the wrong graph is an input error
    let out = boxcolour(
        &["compose", "--g", "h.el", "--h", "h.el", "--xg", "xg.json"],
        dir.path(),
    );
    assert_eq!(code(&out), 2);
}

#[test]
fn cyclic_factor_colouring_is_a_verification_failure() {
    let dir = TempDir::new().unwrap();
    save(dir.path(), "c4.el", &["gen", "cycle", "4"]);
    save(dir.path(), "k2.el", &["gen", "path", "2"]);
    // cycle(4) lists its edges as 01, 03, 12, 23
    let doc = r#"{"n":4,"palette":{"g":2,"h":0},"edges":[[0,1,"0"],[0,3,"1"],[1,2,"1"],[2,3,"0"]]}"#;
    fs::write(dir.path().join("bad.json"), doc).unwrap();
    let out = boxcolour(
        &["compose", "--g", "c4.el", "--h", "k2.el", "--xg", "bad.json"],
        dir.path(),
    );
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("bichromatic"));
}

#[test]
fn single_edge_factors_are_solved_exactly() {
    let dir = TempDir::new().unwrap();
    save(dir.path(), "k2.el", &["gen", "path", "2"]);
    save(dir.path(), "x.json", &["compose", "--g", "k2.el", "--h", "k2.el"]);
    let out = boxcolour(&["verify", "x.json"], dir.path());
    assert_eq!(stdout(&out).trim(), "ok: proper and acyclic with 3 colours");
}

#[test]
fn vertex_colouring_is_proper_and_within_bound() {
    let dir = TempDir::new().unwrap();
    save(dir.path(), "p.el", &["gen", "petersen"]);
    let out = boxcolour(&["vertex-color", "p.el"], dir.path());
    assert_eq!(code(&out), 0);
    let doc = json(&stdout(&out));
    let colour = |v: usize| doc[v.to_string()].as_u64().unwrap();
    let graph = fs::read_to_string(dir.path().join("p.el")).unwrap();
    for line in graph.lines().skip(1) {
        let (u, v) = line.split_once(' ').unwrap();
        assert_ne!(colour(u.parse().unwrap()), colour(v.parse().unwrap()));
    }
    assert!((0..10).all(|v| colour(v) < 3));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    save(dir.path(), "k6.el", &["gen", "complete", "6"]);
    fs::write(dir.path().join("junk.el"), "3 1\n0 7\n").unwrap();
    fs::write(dir.path().join("cfg"), "budget_nodes = 5\n").unwrap();
    let cases: &[(&[&str], i32)] = &[
        (&["aci", "k6.el"], 0),
        (&["aci", "k6.el", "--lower-only"], 0),
        (&["aci", "k6.el", "--budget-nodes", "5"], 3),
        (&["aci", "k6.el", "--config", "cfg"], 3),
        (&["aci", "k6.el", "--config", "cfg", "--budget-nodes", "100000"], 0),
        (&["aci", "k6.el", "--budget-secs", "-1"], 2),
        (&["aci", "missing.el"], 2),
        (&["aci", "junk.el"], 2),
        (&["aci", "k6.el", "--format", "graph6"], 2),
        (&["aci", "k6.el", "--greedy", "--lower-only"], 2),
        (&["gen", "grid", "3"], 2),
        (&["gen", "cycle", "2"], 2),
        (&["hypercube", "0"], 2),
        (&["scan"], 2),
        (&["scan", "--max-n", "12"], 2),
        (&["scan", "--max-n", "7", "--min-n", "7", "--budget-nodes", "50"], 3),
        (&["vertex-color", "junk.el"], 2),
        (&["frobnicate"], 2),
        (&["--help"], 0),
    ];
    for &(args, expected) in cases {
        assert_eq!(code(&boxcolour(args, dir.path())), expected, "{args:?}");
    }
}

#[test]
fn greedy_is_seeded() {
    let dir = TempDir::new().unwrap();
    save(dir.path(), "k6.el", &["gen", "complete", "6"]);
    let runs: Vec<String> = ["1", "1", "2"]
        .iter()
        .map(|seed| stdout(&boxcolour(&["greedy", "k6.el", "--seed", seed], dir.path())))
        .collect();
    assert_eq!(runs[0], runs[1]);
    let out = boxcolour(&["aci", "k6.el", "--greedy"], dir.path());
    let colours = json(&stdout(&out))["colours"].as_u64().unwrap();
    assert!((7..=15).contains(&colours));
}
