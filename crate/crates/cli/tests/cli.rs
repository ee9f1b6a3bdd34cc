use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latticelab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut args = args.to_vec();
    args.push("--json");
    let out = run(&args);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stderr)));
    (code(&out), v)
}

#[test]
fn endos_counts_match_known_values() {
    for (file, n) in [
        ("c2.json", 2),
        ("c3.json", 3),
        ("b2.json", 7),
        ("m3.json", 16),
    ] {
        let out = run(&["endos", &fixture(file), "--count"]);
        assert_eq!(code(&out), 0);
        assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), n.to_string());
    }
    let (c, v) = json(&["endos", &fixture("c3.json"), "--list"]);
    assert_eq!(c, 0);
    assert_eq!(v["morphisms"].as_array().unwrap().len(), 3);
}

#[test]
fn endos_between_lattices() {
    let (c, v) = json(&[
        "endos",
        &fixture("c2.json"),
        "--codomain",
        &fixture("c3.json"),
    ]);
    assert_eq!(c, 0);
    // Kernel 1 gives the zero map; kernel 0 maps 2 onto [0, n].
    assert_eq!(v["count"], 2);
}

#[test]
fn analyze_reports_and_sets_exit_code() {
    let (c, v) = json(&["analyze", &fixture("excip.json"), "--props", "cip,rickart"]);
    assert_eq!(c, 1);
    assert_eq!(v["results"][0]["property"], "cip");
    assert_eq!(v["results"][0]["holds"], true);
    assert_eq!(v["results"][1]["holds"], false);
    let (c, _) = json(&["analyze", &fixture("b3.json"), "--props", "all"]);
    assert_eq!(c, 0);
}

#[test]
fn analyze_with_a_monoid_file() {
    let (c, v) = json(&[
        "analyze",
        &fixture("c3.json"),
        "--monoid",
        &fixture("c3-module-monoid.json"),
        "--props",
        "rickart",
    ]);
    assert_eq!(c, 1);
    assert_eq!(v["monoid_size"], 3);
    assert_eq!(v["results"][0]["witness"]["kernel"], "n");
}

#[test]
fn module_bridge_for_z4() {
    let out = run(&["module", "--group", "4", "--props", "rickart"]);
    assert_eq!(code(&out), 1);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("rickart: false"), "{text}");
    let (c, _) = json(&["module", "--group", "2,2"]);
    assert_eq!(c, 0);
}

#[test]
fn validate_decompose_and_dot() {
    assert_eq!(code(&run(&["validate", &fixture("m3.json")])), 0);
    assert_eq!(code(&run(&["validate", &fixture("n5.json")])), 1);
    let (c, v) = json(&["decompose", &fixture("b3.json")]);
    assert_eq!(c, 0);
    assert_eq!(v["blocks"].as_array().unwrap().len(), 3);
    // The pentagon cannot be decomposed: input error.
    assert_eq!(code(&run(&["decompose", &fixture("n5.json")])), 2);

    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("b2.dot");
    let out = run(&[
        "export-dot",
        &fixture("b2.json"),
        "-o",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph \"B2\""));
    assert_eq!(text.matches("->").count(), 4);
}

#[test]
fn product_writes_a_loadable_lattice() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("p.json");
    let out = run(&[
        "product",
        &fixture("c2.json"),
        &fixture("c2.json"),
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let (c, v) = json(&["validate", out_path.to_str().unwrap()]);
    assert_eq!(c, 0);
    assert_eq!(v["size"], 4);
    assert_eq!(v["distributive"], true);
}

#[test]
fn theorems_over_a_corpus_directory() {
    let (c, v) = json(&[
        "theorems",
        "--corpus",
        &fixture(""),
        "--checks",
        "kerpi,if2",
    ]);
    assert_eq!(c, 0);
    // c2, c3, b2, b3, m3, n5, excip; the morphism and monoid files are skipped.
    assert_eq!(v["lattice_count"], 7);
    assert_eq!(v["checks"].as_array().unwrap().len(), 2);
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "theorems",
        "--random",
        "10",
        "--max-size",
        "6",
        "--seed",
        "3",
        "--json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let threads = run(&[&args[..], &["--threads", "1"]].concat());
    assert_eq!(a.stdout, threads.stdout);
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(code(&run(&["analyze", &fixture("c3.json"), "--bogus"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["validate", "/nonexistent/lattice.json"])), 2);
    assert_eq!(
        code(&run(&["analyze", &fixture("c3.json"), "--props", "nope"])),
        2
    );
    assert_eq!(code(&run(&["theorems", "--checks", "nope"])), 2);
    assert_eq!(code(&run(&["module", "--group", "4,6"])), 2);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"name":"x","elements":["a","b"],"covers":[]}"#).unwrap();
    let out = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(!out.stderr.is_empty());
}

#[test]
fn size_cap_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_latticelab"))
        .args(["endos", &fixture("b3.json"), "--count"])
        .env("LATTICELAB_MAX_SIZE", "4")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}
