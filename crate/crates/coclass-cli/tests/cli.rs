use clap::Parser;
use coclass_cli::{resolve, run, Cli};
use coclass_fixtures::FixtureSet;
use std::process::Command;

fn exe() -> Command {
    Command::new(env!("CARGO_BIN_EXE_coclass"))
}

fn out(args: &[&str]) -> (i32, String) {
    let cli = Cli::try_parse_from(std::iter::once("coclass").chain(args.iter().copied())).unwrap();
    match run(&cli, &mut |_| {}) {
        Ok(o) => (o.code, o.stdout),
        Err(e) => (e.code(), String::new()),
    }
}

#[test]
fn group_report() {
    let (code, s) = out(&["group", "G(5,7;0;0,0,0,0)"]);
    assert_eq!(code, 0);
    assert!(s.contains("kappa (0043) b.10"), "{s}");
    assert!(s.contains("tau(1) 2²\n"));
    assert!(s.contains("zeta 1²\n"));
    let (_, s) = out(&["group", "G(3;0;0,0)"]);
    assert!(s.contains("kappa (0000) a.1"));
}

#[test]
fn malformed_selector_is_usage_error() {
    let st = exe().args(["-q", "group", "G(5,7;0;0"]).status().unwrap();
    assert_eq!(st.code(), Some(2));
    let st = exe().args(["--bound", "0", "group", "G(3;0;0,0)"]).status().unwrap();
    assert_eq!(st.code(), Some(2));
    let st = exe().args(["frobnicate"]).status().unwrap();
    assert_eq!(st.code(), Some(2));
}

#[test]
fn selectors_resolve_through_fixtures() {
    let set = FixtureSet::builtin().unwrap();
    let r = |s: &str| resolve(s, &set).map(|p| p.to_string()).map_err(|e| e.code());
    assert_eq!(r("<2187,64>"), Ok("G(5,7;0;0,0,0,0)".into()));
    assert_eq!(r("⟨2187,64⟩−#2;33"), Ok("G(6,9;0;0,0,0,0)".into()));
    assert_eq!(r("P7-#2;39"), Ok("G(6,9;0;0,-1,0,1)".into()));
    assert_eq!(r("T5R3"), Ok("G(7,11;0;0,0,0,1)".into()));
    assert_eq!(r("T4P9"), Ok("G(6,9;0;0,0,0,0)".into()));
    assert_eq!(r("P3"), Ok("G(3;0;0,0)".into()));
    assert_eq!(r("P8"), Err(2));
    assert_eq!(r("T4R9"), Err(2));
    assert_eq!(r("<1,1>"), Err(2));
}

#[test]
fn coclass_one_tree() {
    let (code, s) = out(&["tree", "C3xC3", "--bound", "9"]);
    assert_eq!(code, 0);
    assert!(s.contains("branches 2:2 3:4 4:6 5:7 6:6 7:7 8:6 9:1*\n"), "{s}");
    assert!(s.contains("depth 1\n"));
    assert!(s.contains("width 7\n"));
    assert!(s.contains("information content 19\n"));
    let (code, _) = out(&["tree", "C3xC3", "--bound", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn dot_export_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.dot");
    let st = exe().args(["-q", "tree", "T4P9", "--bound", "12", "--format", "dot", "--out"]).arg(&path).status().unwrap();
    assert_eq!(st.code(), Some(0));
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.trim_end().ends_with('}'));
    let vertices = dot.lines().filter(|l| l.trim_start().starts_with('v') && l.contains("[label=")).count();
    let edges = dot.lines().filter(|l| l.contains(" -> ")).count();
    assert_eq!(vertices, 35);
    assert_eq!(edges, vertices - 1);
}

#[test]
fn periodicity_of_coclass_one() {
    let (code, s) = out(&["periodicity", "C3xC3", "--bound", "9"]);
    assert_eq!(code, 0);
    assert_eq!(s, "C3xC3: pre=2 len=2 start=4\n");
    let (_, s) = out(&["periodicity", "C3xC3", "--bound", "5"]);
    assert!(s.contains("not yet periodic"), "{s}");
}

#[test]
fn verify_exit_codes() {
    let (code, s) = out(&["verify", "--table", "coclass1"]);
    assert_eq!(code, 0, "{s}");
    assert!(s.ends_with("# pass 19 fail 0 skip 0\n"), "{s}");
    let st = exe().args(["-q", "verify", "--fixtures", "/no/such/fixtures"]).status().unwrap();
    assert_eq!(st.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let src = concat!(env!("CARGO_MANIFEST_DIR"), "/../coclass-fixtures/data/coclass1.json");
    let text = std::fs::read_to_string(src).unwrap().replacen("\"(1000)\"", "\"(3000)\"", 1);
    std::fs::write(dir.path().join("coclass1.json"), text).unwrap();
    let o = exe().args(["-q", "verify", "--fixtures"]).arg(dir.path()).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.contains("not ok"));
    assert!(s.contains("kappa: expected (3000), got (1000)"));
}

#[test]
fn json_output_is_deterministic() {
    let a = out(&["tree", "C3xC3", "--bound", "7", "--format", "json"]).1;
    let b = out(&["tree", "C3xC3", "--bound", "7", "--format", "json", "--jobs", "1"]).1;
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["name"], "C3xC3");
    let a = out(&["verify", "--table", "coclass1", "--format", "json"]).1;
    assert_eq!(a, out(&["verify", "--table", "coclass1", "--format", "json"]).1);
}

#[test]
fn group_isomorphism() {
    let (code, s) = out(&["iso", "G(4;0;0,1)", "G(4;0;0,-1)"]);
    assert_eq!(code, 0);
    assert!(s.starts_with("G(4;0;0,1) ~ G(4;0;0,-1): isomorphic\n"), "{s}");
    let (code, s) = out(&["iso", "G(4;0;0,1)", "G(4;0;0,0)"]);
    assert_eq!(code, 1);
    assert!(s.contains("not isomorphic"));
    assert_eq!(out(&["iso", "G(4;0;0,1)", "G(4;0;0,0)", "--law", "d23-d19"]).0, 2);
}

#[test]
fn forest_one_ledger() {
    let (code, s) = out(&["forest", "1", "--bound", "9"]);
    assert_eq!(code, 0, "{s}");
    assert!(s.contains("ledger 19 = 0 + (19)\n"), "{s}");
    assert_eq!(out(&["forest", "1", "--against", "2"]).0, 2);
    assert_eq!(out(&["forest", "2"]).0, 2);
    assert_eq!(out(&["forest", "1", "--format", "dot"]).0, 2);
}
