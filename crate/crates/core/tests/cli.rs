use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equimorse")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("equimorse-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn annulus_args(extra: &[&str]) -> Vec<String> {
    let d = data("annulus");
    let mut v: Vec<String> = ["--complex", "complex.txt", "--group", "group.txt"]
        .iter()
        .map(|s| if s.ends_with(".txt") { d.join(s).display().to_string() } else { s.to_string() })
        .collect();
    v.extend(extra.iter().map(|s| s.to_string()));
    v
}

fn with(cmd: &str, args: &[String]) -> Output {
    let mut all = vec![cmd];
    all.extend(args.iter().map(String::as_str));
    run(&all)
}

#[test]
fn quotient_lists_eleven_objects() {
    let o = with("quotient", &annulus_args(&[]));
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("object ")).count(), 11);
    assert_eq!(text.lines().filter(|l| l.starts_with("orbit ")).count(), 11);
    assert_eq!(text.lines().filter(|l| l.starts_with("stab ")).count(), 64);
}

#[test]
fn matchcheck_on_empty_matching_passes() {
    let d = scratch("empty");
    std::fs::write(d.join("m.txt"), "# nothing matched\n").unwrap();
    let m = d.join("m.txt").display().to_string();
    let o = with("matchcheck", &annulus_args(&["--matching", &m]));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS"));
    std::fs::remove_dir_all(d).unwrap();
}

#[test]
fn incompatible_matching_exits_with_verification_failure() {
    let d = scratch("bad");
    std::fs::write(d.join("m.txt"), "pair a0 c0 -> a0 c0 d0\n").unwrap();
    let m = d.join("m.txt").display().to_string();
    let o = with("matchcheck", &annulus_args(&["--matching", &m]));
    assert_eq!(o.status.code(), Some(1));
    let out = d.join("out").display().to_string();
    let o = with("run", &annulus_args(&["--matching", &m, "--out", &out]));
    assert_eq!(o.status.code(), Some(1));
    let report = std::fs::read_to_string(d.join("out/report.json")).unwrap();
    assert!(report.contains("\"failed_stage\": \"compatibility\""));
    std::fs::remove_dir_all(d).unwrap();
}

#[test]
fn parse_errors_exit_with_input_error() {
    let d = scratch("parse");
    std::fs::write(d.join("x.txt"), "simplex a b\nsimplx b c\n").unwrap();
    let o = run(&["validate", "--complex", &d.join("x.txt").display().to_string()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    std::fs::remove_dir_all(d).unwrap();
}

#[test]
fn run_on_annulus_reports_circle() {
    let d = data("annulus");
    let m = d.join("matching.txt").display().to_string();
    let l = d.join("lifts.txt").display().to_string();
    let o = with("run", &annulus_args(&["--matching", &m, "--lifts", &l]));
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "PASS");
    assert_eq!(v["summary"]["flow_objects_quotient"], 9);
    assert_eq!(v["summary"]["development_homology"]["betti"], serde_json::json!([1, 1]));
}

#[test]
fn cone_collapses_to_a_point() {
    let d = data("cone");
    let p = |f: &str| d.join(f).display().to_string();
    let o = run(&["develop", "--complex", &p("complex.txt"), "--group", &p("group.txt"), "--matching", &p("matching.txt")]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("object ")).count(), 1);
    assert_eq!(text.lines().filter(|l| l.starts_with("act ")).count(), 6);
}

#[test]
fn dumped_categories_reload_for_homology_and_nerve() {
    let d = scratch("dump");
    let out = d.display().to_string();
    let m = data("annulus").join("matching.txt").display().to_string();
    let o = with("dump", &annulus_args(&["--matching", &m, "--what", "development", "--out", &out]));
    assert!(o.status.success());
    let cat = d.join("category.txt").display().to_string();
    let o = run(&["homology", "--category", &cat]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("betti: [1, 1]"));
    let o = run(&["nerve", "--category", &cat]);
    assert!(stdout(&o).contains("double nerve cells: [48,"));
    std::fs::remove_dir_all(d).unwrap();
}

#[test]
fn subdividing_twice_regularizes() {
    let d = scratch("subdivide");
    std::fs::write(d.join("x.txt"), "simplex a b c\n").unwrap();
    std::fs::write(d.join("g.txt"), "gen t = (a b)\n").unwrap();
    let p = |f: &str| d.join(f).display().to_string();
    let o = run(&["validate", "--complex", &p("x.txt"), "--group", &p("g.txt")]);
    assert_eq!(o.status.code(), Some(1));
    let mut complex = p("x.txt");
    let mut group = p("g.txt");
    for round in ["sd1", "sd2"] {
        let o = run(&["subdivide", "--complex", &complex, "--group", &group, "--out", &p(round)]);
        assert!(o.status.success());
        complex = d.join(round).join("complex.txt").display().to_string();
        group = d.join(round).join("group.txt").display().to_string();
    }
    let o = run(&["validate", "--complex", &complex, "--group", &group]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["run", "--complex", &complex, "--group", &group]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::remove_dir_all(d).unwrap();
}

#[test]
fn zero_budget_is_rejected() {
    let o = with("run", &annulus_args(&["--budget-nerve", "0"]));
    assert_eq!(o.status.code(), Some(2));
}
