use std::process::{Command, Output};

use proptest::prelude::*;
use sethom::{PairState, SDigraph};
use sethom_cli::formats::{from_shd, to_shd};

fn sethom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sethom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn d5_is_not_homogeneous() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d5.shd");
    let p = path.to_str().unwrap();
    assert_eq!(sethom(&["build", "D(5)", "-o", p]).status.code(), Some(0));
    let o = sethom(&["check", "hom", p]);
    assert_eq!(o.status.code(), Some(3));
    let text = stdout(&o);
    assert!(text.contains("fails at k=2"), "{text}");
    assert!(text.contains("[0, 2] -> [0, 3]"), "{text}");
    assert!(o.stderr.is_empty());
}

#[test]
fn h3_is_set_homogeneous() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h3.shd");
    let p = path.to_str().unwrap();
    assert_eq!(sethom(&["build", "H3", "-o", p]).status.code(), Some(0));
    let o = sethom(&["check", "set-hom", p]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn e6_dot_export() {
    let o = sethom(&["export", "--format", "dot", "expr:E6"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    let directed = dot.lines().filter(|l| l.contains("->") && !l.contains("dir=none")).count();
    let undirected = dot.lines().filter(|l| l.contains("dir=none")).count();
    assert_eq!((directed, undirected), (6, 3));
}

#[test]
fn json_export() {
    let o = sethom(&["export", "--format", "json", "expr:D(3)"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n"], 3);
    assert_eq!(v["arcs"], serde_json::json!([[0, 1], [1, 2], [2, 0]]));
    assert_eq!(v["edges"], serde_json::json!([]));
}

#[test]
fn k_variants() {
    assert_eq!(sethom(&["check", "k-hom", "expr:D(5)", "-k", "1"]).status.code(), Some(0));
    assert_eq!(sethom(&["check", "k-hom", "expr:D(5)", "-k", "2"]).status.code(), Some(3));
    assert_eq!(sethom(&["check", "k-set-hom", "expr:D(5)", "-k", "2"]).status.code(), Some(0));
    assert_eq!(sethom(&["check", "hom", "expr:E6", "--max-k", "1"]).status.code(), Some(0));
}

#[test]
fn errors_exit_one_with_diagnostic() {
    for args in [
        &["build", "Q(3)"][..],
        &["check", "set-hom", "/nonexistent/file.shd"],
        &["infinite", "s5"],
        &["infinite", "r1"],
        &["frobnicate"],
    ] {
        let o = sethom(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn malformed_shd_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.shd");
    std::fs::write(&path, "SHD1 n=2\n.>\n>.\n").unwrap();
    let o = sethom(&["aut", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":3:"));
}

#[test]
fn caps_exit_two() {
    assert_eq!(sethom(&["enumerate", "--max-n", "7"]).status.code(), Some(2));
    assert_eq!(sethom(&["infinite", "t4", "--size", "61"]).status.code(), Some(2));
}

#[test]
fn enumerate_reports() {
    let o = sethom(&["enumerate", "--max-n", "3", "--cross-check"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("n=3 classes=16"));
    assert!(text.contains("cross-check: clean"));
    let o = sethom(&["enumerate", "--max-n", "4", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["counts"], serde_json::json!([1, 1, 3, 16, 218]));
}

#[test]
fn infinite_samples() {
    let o = sethom(&["infinite", "t4", "--size", "20", "--seed", "7", "--census", "--witness", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["census"]["forbidden"], 0);
    assert_eq!(v["witness"].as_array().unwrap().len(), 3);
    let again = sethom(&["infinite", "t4", "--size", "20", "--seed", "7", "--census", "--witness", "--json"]);
    assert_eq!(o.stdout, again.stdout);

    let o = sethom(&["infinite", "r3", "--size", "12", "--seed", "1", "--witness"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("witness:"));
}

#[test]
fn aut_summary() {
    let text = stdout(&sethom(&["aut", "expr:X"]));
    assert!(text.starts_with("order 1296\n"), "{text}");
    let text = stdout(&sethom(&["aut", "expr:D(5)"]));
    assert!(text.contains("vertex orbits 1"));
    assert!(text.contains("orbitals 4"));
}

#[test]
fn catalog_listing() {
    let text = stdout(&sethom(&["catalog", "list"]));
    assert!(text.contains("H3") && text.contains("J(n)"));
    let text = stdout(&sethom(&["catalog", "list", "--max-n", "6"]));
    assert!(text.contains("E6") && text.contains("F6"));
}

fn arb_digraph() -> impl Strategy<Value = SDigraph> {
    (0usize..12).prop_flat_map(|n| {
        proptest::collection::vec(0u8..4, n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut it = bits.into_iter();
            SDigraph::from_fn(n, |_, _| PairState::from_bits(it.next().unwrap())).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn shd_round_trip(d in arb_digraph()) {
        let text = to_shd(&d);
        prop_assert_eq!(from_shd(&text).unwrap(), d);
    }

    #[test]
    fn shd_file_round_trip_through_binary(d in arb_digraph()) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.shd");
        std::fs::write(&path, to_shd(&d)).unwrap();
        let o = sethom(&["export", "--format", "json", path.to_str().unwrap()]);
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        prop_assert_eq!(v["n"].as_u64().unwrap() as usize, d.n());
        prop_assert_eq!(v["arcs"].as_array().unwrap().len(), d.census().1);
        prop_assert_eq!(v["edges"].as_array().unwrap().len(), d.census().0);
    }
}
