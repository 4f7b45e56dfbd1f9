use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn bdsa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bdsa"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn check_l_reports_cycle() {
    let o = bdsa(&["check", &path("f1.bds"), "l"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "Condition (L): FAILS; cycle word=x base=a\n");
    let o = bdsa(&["check", &path("f2.bds"), "l", "--method", "all"]);
    assert_eq!(stdout(&o), "Condition (L): HOLDS\n");
}

#[test]
fn unknown_atom_exits_2() {
    let o = bdsa(&["check", &path("missing_atom.bds"), "l"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr(&o), "line 3: UnknownAtom c\n");
}

#[test]
fn simple_explains_refutation() {
    let o = bdsa(&["check", &path("f5.bds"), "simple", "--method", "all"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "simple: NO (not minimal; saturated hereditary ideal top={b})\n");
    let o = bdsa(&["check", &path("f3.bds"), "simple"]);
    assert_eq!(stdout(&o), "simple: YES (minimal and satisfies Condition (L))\n");
}

#[test]
fn k_and_minimal() {
    let o = bdsa(&["check", &path("f5.bds"), "k", "--method", "all"]);
    assert_eq!(stdout(&o), "Condition (K): FAILS; base=a beta=x\n");
    let o = bdsa(&["check", &path("f4.bds"), "minimal"]);
    assert!(stdout(&o).starts_with("minimal: NO (saturated hereditary ideal top="));
    let o = bdsa(&["check", &path("f1.bds"), "minimal", "--method", "all"]);
    assert_eq!(stdout(&o), "minimal: YES\n");
}

#[test]
fn report_json_is_stable() {
    let a = bdsa(&["report", &path("f2.bds"), "--json"]);
    let b = bdsa(&["--threads", "1", "report", &path("f2.bds"), "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.contains("\"schemaVersion\": 1"));
    assert!(text.contains("\"satHereditaryIdeals\": 2"));
    assert!(text.contains("\"maximalTails\": 1"));
}

#[test]
fn empty_system_is_minimal() {
    let o = bdsa(&["report", &path("empty.bds"), "--json"]);
    let text = stdout(&o);
    assert!(text.contains("\"degenerate\": true"));
    assert!(text.contains("\"minimal\": true"));
}

#[test]
fn graph_dot() {
    let o = bdsa(&["graph", &path("f1.bds"), "--dot", "-"]);
    assert_eq!(stdout(&o), "digraph E {\n  \"a\";\n  \"a\" -> \"a\" [label=\"x\"];\n}\n");
    let out = std::env::temp_dir().join(format!("bdsa-f5-{}.dot", std::process::id()));
    let o = bdsa(&["graph", &path("f5.bds"), "--dot", &out.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(0));
    let dot = std::fs::read_to_string(&out).unwrap();
    assert!(dot.contains("\"b\" -> \"a\" [label=\"y\"]"));
    std::fs::remove_file(out).ok();
}

#[test]
fn listings() {
    let o = bdsa(&["tails", &path("f5.bds")]);
    assert_eq!(stdout(&o), "complement={} noncyclic\ncomplement={b} cyclic base=a beta=x\ncount: 2\n");
    let o = bdsa(&["gauge-ideals", &path("f1.bds")]);
    assert_eq!(stdout(&o), "H={} S={a}\nH={a} S={a}\ncount: 2\n");
    let o = bdsa(&["ideals", &path("f4.bds")]);
    assert!(stdout(&o).ends_with("count: 4\n"));
}

#[test]
fn quotient_and_bprime() {
    let o = bdsa(&["quotient", &path("f5.bds"), "--top", "{b}"]);
    assert!(stdout(&o).starts_with("atoms a\nlabels x y\nact x a = {a}\n"));
    let o = bdsa(&["quotient", &path("f5.bds"), "--top", "{a}"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("NotHereditary"));
    let o = bdsa(&["bprime", &path("f2.bds")]);
    assert!(stdout(&o).starts_with("# a = pair a\natoms a\n"));
}

#[test]
fn gen_roundtrips_through_validate() {
    let o = bdsa(&["gen", "--seed", "5", "--atoms", "4", "--labels", "3", "--shrink", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let file = std::env::temp_dir().join(format!("bdsa-gen-{}.bds", std::process::id()));
    std::fs::write(&file, &o.stdout).unwrap();
    let v = bdsa(&["validate", &file.to_string_lossy()]);
    assert_eq!(stdout(&v), "ok: 4 atoms, 3 labels\n");
    let again = bdsa(&["gen", "--seed", "5", "--atoms", "4", "--labels", "3", "--shrink", "0.5"]);
    assert_eq!(o.stdout, again.stdout);
    std::fs::remove_file(file).ok();
}

#[test]
fn soft_cap_is_enforced() {
    let names: Vec<String> = (0..13).map(|i| format!("a{i}")).collect();
    let file = std::env::temp_dir().join(format!("bdsa-cap-{}.bds", std::process::id()));
    std::fs::write(&file, format!("atoms {}\nlabels x\n", names.join(" "))).unwrap();
    let o = bdsa(&["validate", &file.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("line 1: TooManyAtoms 13"));
    let o = Command::new(env!("CARGO_BIN_EXE_bdsa"))
        .args(["validate", &file.to_string_lossy()])
        .env("BDSA_MAX_ATOMS", "16")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    std::fs::remove_file(file).ok();
}

#[test]
fn crosscheck_small_run() {
    let o = bdsa(&["crosscheck", "--seed", "1", "--count", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "crosscheck: 20 instances, 0 mismatches\n");
}
