use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use beadgraph::algebra::{serialize_element, DiagramElement, Space};
use beadgraph::graphs::{serialize_graph, theta};
use tempfile::TempDir;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_beadgraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn dim_phi_two() {
    let o = bin(&["dim", "--space", "phi", "--euler", "2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("1"));
    assert!(out.contains("space A(phi)") && out.contains("euler 2") && out.contains("rank "));
}

#[test]
fn dim_json() {
    let o = bin(&["--format", "json", "dim", "--space", "lambda", "--euler", "2", "--bead-window", "1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dimension"], 4);
    assert_eq!(v["space"], "lambda");
}

#[test]
fn contract_broken_theta_is_theta() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "theta.graph", &serialize_graph(&theta()));
    let o = bin(&["contract", "--break", s(&g)]);
    assert!(o.status.success());
    let scheme = write(&dir, "theta.scheme", &stdout(&o));
    let o = bin(&["contract", s(&scheme), "--audit", "1"]);
    assert!(o.status.success());
    let expect = serialize_element(&DiagramElement::from_graph(Space::Phi, &theta()).unwrap());
    let out = stdout(&o);
    assert!(out.starts_with(&expect), "{out}");
    assert!(out.contains("audit vortex 1: pass"));
}

#[test]
fn eqlink_axioms_all_pass() {
    let o = bin(&["eqlink", "--axioms", "--seed", "7", "--count", "200"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(!out.contains("FAIL"), "{out}");
    assert!(out.contains("pass sliding") && out.contains("pass cutting"));
}

#[test]
fn eqlink_file() {
    let dir = TempDir::new().unwrap();
    let d = write(
        &dir,
        "clasp.diag",
        "component a 0 1 0 -1\ncomponent b 0 0 0 0\ncrossing a 0 b 0 +1\ncrossing b 1 a 1 +1\ncrossing a 2 b 3 -1\ncrossing b 2 a 3 -1\n",
    );
    assert_eq!(stdout(&bin(&["eqlink", s(&d), "--from", "a", "--to", "b"])), "1 - t\n");
    assert_eq!(stdout(&bin(&["eqlink", s(&d), "--from", "b", "--to", "a"])), "-t^-1 + 1\n");
    let winding = write(&dir, "w.diag", "component a 1\ncomponent b 0\n");
    let o = bin(&["eqlink", s(&winding)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("winds 1"));
}

#[test]
fn reduce_and_hair() {
    let dir = TempDir::new().unwrap();
    let text = "space lambda\nterm 2\nvertex u tri 0 2 4\nvertex v tri 1 3 5\nedge 0 1 t\nedge 2 3\nedge 4 5\n";
    let e = write(&dir, "e.elem", text);
    let out = stdout(&bin(&["reduce", s(&e)]));
    assert!(out.contains("dimension 4"), "{out}");
    assert!(out.contains("coordinates"));
    let o = bin(&["hair", s(&e), "--max-degree", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("space star\n"));
}

#[test]
fn ring_output() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "theta.graph", &serialize_graph(&theta()));
    let out = stdout(&bin(&["ring", s(&g), "--kind", "h1"]));
    assert!(out.contains("rank 2"), "{out}");
    let o = bin(&["--format", "json", "ring", s(&g), "--kind", "edge", "--monomial", "1,-1,0"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["normal_form"].is_array());
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["dim", "--space", "bogus", "--euler", "2"]).status.code(), Some(2));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bin(&["dim", "--space", "star", "--euler", "2"]).status.code(), Some(1));
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.elem", "space phi\nterm 1\nvertex x bogus\n");
    let o = bin(&["reduce", s(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.elem") && err.contains("line 3"), "{err}");
    assert_eq!(bin(&["reduce", "/nonexistent/x.elem"]).status.code(), Some(1));
}

#[test]
fn deterministic_output() {
    for args in [
        &["axioms", "--seed", "3", "--count", "40"][..],
        &["dim", "--space", "phi", "--euler", "4", "--seed", "9"][..],
    ] {
        let (a, b) = (bin(args), bin(args));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn selftest_passes() {
    let o = bin(&["selftest"]);
    assert!(o.status.success(), "{}", stdout(&o));
}
