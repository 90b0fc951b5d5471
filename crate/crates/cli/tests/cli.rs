use std::path::PathBuf;
use std::process::{Command, Output};

fn facposet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_facposet")).args(args).env("FACPOSET_THREADS", "2").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).to_string()
}

fn temp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("facposet-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn fixtures_list_names_every_fixture() {
    let o = facposet(&["fixtures", "list"]);
    assert!(o.status.success());
    let s = stdout(&o);
    for name in ["sym4_long_cycle", "dihedral8_rt", "ex44_rrrt", "dunce_hat", "thm612_n4"] {
        assert!(s.lines().any(|l| l == name), "{name} missing");
    }
}

#[test]
fn analyze_writes_a_versioned_report() {
    let out = temp("sym4.json");
    let o = facposet(&["analyze", "--fixture", "sym4_long_cycle", "--json", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["version"], 1);
    assert_eq!(v["summary"]["maximal_chains"], 16);
    assert_eq!(v["connectivity"]["totally_chain_connected"], true);
    assert_eq!(v["hurwitz"]["connected"], true);
    assert_eq!(v["cycle_graph"]["min_feedback_arc_set"], 6);
    assert_eq!(v["shelling"]["status"], "shellable");
    assert!(v["orders"]["compatible_count"].as_u64().unwrap() > 0);
}

#[test]
fn analyze_rrrt_interval() {
    let out = temp("ex44.json");
    let o = facposet(&["analyze", "--fixture", "ex44_rrrt", "--json", out.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["hurwitz"]["connected"], true);
    assert_eq!(v["connectivity"]["totally_chain_connected"], false);
    assert_eq!(v["shelling"]["status"], "not_shellable");
    assert_eq!(v["orders"]["compatible_count"], 0);
}

#[test]
fn analyze_boolean_one() {
    let o = facposet(&["analyze", "--family", "boolean:1"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("maximal chains 1"), "{s}");
    assert!(s.contains("shelling: shellable"), "{s}");
}

#[test]
fn permutation_file_input() {
    let p = temp("s4.txt");
    std::fs::write(&p, "# transpositions of S4\n(1 2)\n(1 3)\n(1 4)\n(2 3)\n(2 4)\n(3 4)\n").unwrap();
    let o = facposet(&["orbits", "--perm", p.to_str().unwrap(), "--target", "(1 2 3 4)"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("16 maximal chains in 1 Hurwitz orbits"));
}

#[test]
fn generating_set_not_closed_under_conjugation() {
    let p = temp("bad.txt");
    std::fs::write(&p, "universe: (1 2), (1 2 3 4)\n(1 2)\n").unwrap();
    let o = facposet(&["build", "--perm", p.to_str().unwrap(), "--target", "(1 2)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("conjugation closure"));
}

#[test]
fn table_input() {
    // cyclic group of order 3 generated by both non-identity elements
    let p = temp("c3.json");
    std::fs::write(
        &p,
        r#"{"order":3,"mul":[[0,1,2],[1,2,0],[2,0,1]],"identity":0,"generators":[1,2],"names":["e","x","y"]}"#,
    )
    .unwrap();
    let o = facposet(&["orders", "--table", p.to_str().unwrap(), "--target", "x"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn orders_with_explicit_order() {
    let o = facposet(&["orders", "--fixture", "thm612_n3", "--order", "a,c,d,b"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("compatible: true"), "{s}");
    assert!(s.contains("EL-labeling: true"), "{s}");
}

#[test]
fn cycle_graph_reports_feedback_arc_set() {
    let o = facposet(&["cycle-graph", "--fixture", "ex44_rrrt"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("minimum feedback arc set: 9"));
    let o = facposet(&["cycle-graph", "--fixture", "thm612_n4", "--order", "a,c,f,d,e,b"]);
    assert!(stdout(&o).contains("induced order linear: true"));
}

#[test]
fn builds_round_trip_through_interval_files() {
    let p = temp("built.json");
    let o = facposet(&["build", "--fixture", "sym4_long_cycle", "--json", p.to_str().unwrap()]);
    assert!(o.status.success());
    let o = facposet(&["orbits", "--interval", p.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("16 maximal chains in 1 Hurwitz orbits"));
}

#[test]
fn export_dot_kinds() {
    for kind in ["hasse", "chain", "hurwitz", "cycle", "reduced"] {
        let o = facposet(&["export", "--fixture", "sym4_long_cycle", "--dot", kind]);
        assert!(o.status.success(), "{kind}: {}", String::from_utf8_lossy(&o.stderr));
        let s = stdout(&o);
        assert!(s.contains('{') && s.trim_end().ends_with('}'), "{kind}");
    }
}

#[test]
fn reduced_export_without_compatible_order_fails() {
    let o = facposet(&["export", "--fixture", "ex44_rrrt", "--dot", "reduced"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn shelling_subcommand() {
    let o = facposet(&["shelling", "--fixture", "ex44_rrrt"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("not shellable"));
    let o = facposet(&["shelling", "--fixture", "dunce_hat", "--budget-search", "1000"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("inconclusive"));
}

#[test]
fn scan_families() {
    let out = temp("scan.json");
    let o = facposet(&["scan", "--families", "sym:3..4,boolean:1..3", "--json", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["instances"].as_array().unwrap().len(), 5);
    assert_eq!(v["candidate_count"], 0);
}

#[test]
fn scan_group_subsets() {
    let p = temp("d4.txt");
    std::fs::write(&p, "(1 2 3 4)\n(1 3)\n").unwrap();
    let o = facposet(&["scan", "--group", p.to_str().unwrap(), "--lengths", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(facposet(&["analyze", "--fixture", "nope"]).status.code(), Some(2));
    assert_eq!(facposet(&["analyze"]).status.code(), Some(2));
    assert_eq!(facposet(&["orders", "--fixture", "ex44_rrrt", "--order", "r,zz"]).status.code(), Some(2));
    assert_eq!(facposet(&["analyze", "--family", "sym:9"]).status.code(), Some(3));
}

#[test]
fn chain_budget_exits_with_three() {
    let o = facposet(&["orbits", "--fixture", "sym4_long_cycle", "--budget-chains", "4"]);
    assert_eq!(o.status.code(), Some(3));
}
