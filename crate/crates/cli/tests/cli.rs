use std::path::PathBuf;
use std::process::Command;

use detcut::generators::{complete, dumbbell, glued_cliques};
use detcut::graph::{conductance, format_edge_list};
use detcut::Graph;
use serde_json::Value;

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Scratch {
        let dir = std::env::temp_dir().join(format!("detcut-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn graph(&self, name: &str, g: &Graph) -> String {
        let p = self.0.join(name);
        std::fs::write(&p, format_edge_list(g)).unwrap();
        p.display().to_string()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        std::fs::remove_dir_all(&self.0).ok();
    }
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_detcut")).args(args).output().unwrap();
    let text = |b: Vec<u8>| String::from_utf8(b).unwrap();
    (out.status.code().unwrap(), text(out.stdout), text(out.stderr))
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn vc_on_glued_cliques_returns_a_verified_cut() {
    let dir = Scratch::new("vc");
    let g = glued_cliques(6, 2);
    let (code, out, _) = run(&["vc", "--k", "3", &dir.graph("glued.txt", &g)]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["k_connected"], false);
    let cut: Vec<usize> = v["cut"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as usize).collect();
    assert_eq!(cut.len(), 2);
    assert!(g.is_vertex_cut(&cut));
}

#[test]
fn complete_graph_cut_is_certified() {
    let dir = Scratch::new("k8");
    let (code, out, _) = run(&["cut", "--algo", "pagerank", "--phi", "0.1", &dir.graph("k8.txt", &complete(8))]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["outcome"], "certificate");
    assert!(v["certificate"]["lower_bound"].as_f64().unwrap() >= 0.1);
}

#[test]
fn dumbbell_cut_is_within_its_bound() {
    let dir = Scratch::new("cut");
    let g = dumbbell(8);
    for algo in ["pagerank", "jtree", "recursive"] {
        let (code, out, _) = run(&["cut", "--algo", algo, "--phi", "0.05", &dir.graph("d.txt", &g)]);
        assert_eq!(code, 0, "{algo}");
        let v = json(&out);
        if v["outcome"] == "cut" {
            let s: Vec<usize> = v["cut"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as usize).collect();
            assert!(conductance(&g, &s).unwrap() <= v["bound"].as_f64().unwrap() + 1e-9, "{algo}");
        }
    }
}

#[test]
fn errors_map_to_exit_codes() {
    let dir = Scratch::new("err");
    let k4 = dir.graph("k4.txt", &complete(4));
    let (code, _, err) = run(&["cut", "--phi", "2.0", &k4]);
    assert_eq!(code, 2);
    assert!(err.contains("phi must lie in (0,1]"));
    assert_eq!(run(&["cut", "--phi", "0.1", "--bogus", &k4]).0, 64);
    assert_eq!(run(&["frobnicate"]).0, 64);
    let missing = dir.0.join("missing.txt").display().to_string();
    assert_eq!(run(&["vc", "--k", "2", &missing]).0, 2);
    let bad = dir.0.join("bad.txt");
    std::fs::write(&bad, "3 2\n0 1\n1 7\n").unwrap();
    let (code, _, err) = run(&["vc", "--k", "2", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn empty_bench_is_header_only() {
    for sizes in [vec!["--sizes"], vec!["--sizes", ""], vec![]] {
        let mut args = vec!["bench", "--family", "dumbbell", "--no-timing"];
        args.extend(sizes);
        let (code, out, _) = run(&args);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 1);
        assert!(out.starts_with("family,n,m,algo,"));
    }
}

fn rows(out: &str) -> Vec<Vec<String>> {
    out.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn dumbbell_bench_rows_respect_bounds() {
    let (code, out, _) = run(&["bench", "--family", "dumbbell", "--sizes", "20,40,80", "--algos", "pagerank,jtree", "--no-timing"]);
    assert_eq!(code, 0);
    let rows = rows(&out);
    assert_eq!(rows.len(), 6);
    for r in &rows {
        assert_eq!(r[5], "cut");
        let achieved: f64 = r[6].parse().unwrap();
        let bound: f64 = r[7].parse().unwrap();
        assert!(achieved <= bound + 1e-9, "{r:?}");
        assert!(r[9].is_empty());
    }
}

#[test]
fn expander_bench_certifies() {
    let (code, out, _) = run(&["bench", "--family", "expander", "--sizes", "20,40", "--no-timing"]);
    assert_eq!(code, 0);
    let rows = rows(&out);
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r[5] == "certificate"), "{out}");
}
