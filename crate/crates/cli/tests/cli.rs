use std::fs;
use std::path::PathBuf;
use std::process::Command;

use cotorlab::checks::CheckReport;
use cotorlab::combinat::Poset;
use cotorlab::report::{read_reports, Report};
use cotorlab::Error;
use cotorlab_cli::{parse_poset, parse_poset_file, parse_quiver, parse_quiver_file, CliError};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cotorlab"))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> (String, i32) {
    let out = bin().args(args).output().unwrap();
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

const CROWN_QV: &str = "vertex x1\nvertex x2\nvertex y1\nvertex y2\n\
arrow a: x1 -> y1\narrow b: x1 -> y2\narrow c: x2 -> y1\narrow d: x2 -> y2\n";

#[test]
fn poset_files() {
    let dir = TempDir::new().unwrap();
    let p = parse_poset_file(&write(&dir, "c.po", "0 < 1\n1 < 2")).unwrap();
    assert_eq!(p.len(), 3);
    assert!(p.lt(0, 2));
    let q = parse_poset("# a chain\n0 < 1\n\n# done\n1 < 2\n").unwrap();
    assert!(cotorlab::combinat::poset_isomorphic(&q, &Poset::chain(3), 10).unwrap().is_some());
    assert!(matches!(parse_poset("x < y\ny < x"), Err(Error::Cycle(..))));
    assert!(matches!(parse_poset("x < y < z"), Err(Error::Parse { line: 1, .. })));
    assert!(matches!(
        parse_poset_file(&dir.path().join("missing.po")),
        Err(CliError::Io { .. })
    ));
}

#[test]
fn quiver_files() {
    let q = parse_quiver("vertex x\nvertex y\narrow a: x -> y").unwrap();
    assert_eq!((q.vertices().len(), q.arrows().len()), (2, 1));
    assert!(matches!(
        parse_quiver("vertex x\nvertex y\narrow a: x -> y\narrow a: y -> x"),
        Err(Error::Parse { line: 4, .. })
    ));
    assert!(matches!(
        parse_quiver("vertex x\narrow a: x -> z"),
        Err(Error::UnknownLabel(_))
    ));
    let dir = TempDir::new().unwrap();
    assert_eq!(parse_quiver_file(&write(&dir, "c.qv", CROWN_QV)).unwrap().arrows().len(), 4);
}

#[test]
fn cotor_divided_powers() {
    let (out, code) = run(&["cotor", "--coalgebra", "div", "--trunc", "8", "--nmax", "4"]);
    assert_eq!(code, 0);
    let r = Report::from_json(out.trim()).unwrap();
    assert_eq!(r.dims, vec![1, 1, 0, 0, 0]);
    assert_eq!(r.n_max, 4);
}

#[test]
fn verify_suspension_passes() {
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "crown.qv", CROWN_QV);
    let (out, code) = run(&["verify", "suspension", "--quiver", q.to_str().unwrap(), "--nmax", "2"]);
    assert_eq!(code, 0);
    let r = CheckReport::from_json(out.trim()).unwrap();
    assert!(r.passed());
    assert_eq!(r.cases[0].left, vec![1, 0]);
}

#[test]
fn verification_failure_exits_one() {
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "crown.qv", CROWN_QV);
    let (_, code) = run(&["verify", "eta", "--quiver", q.to_str().unwrap(), "--nmax", "2"]);
    assert_eq!(code, 1);
}

#[test]
fn series_dispatch() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.txt", "1,1,1,1,1,1,1,1");
    let (out, code) = run(&["series", "mul", "--kind", "dirichlet", "--bound", "8", f.to_str().unwrap(), f.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let coeffs: Vec<&str> = v["coeffs"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(coeffs, ["1", "2", "2", "3", "2", "4", "2", "4"]);
    let lit = write(&dir, "g.txt", "kind=ordinary bound=3 coeffs=1,-1");
    let (out, _) = run(&["series", "inv", lit.to_str().unwrap()]);
    assert!(out.contains("kind=ordinary bound=3 coeffs=1,1,1"));
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let cyc = write(&dir, "cyc.po", "x < y\ny < x\n");
    assert_eq!(run(&["hh", "--poset", cyc.to_str().unwrap()]).1, 2);
    let chain = write(&dir, "c.po", "a < b\n");
    assert_eq!(run(&["ext", "--poset", chain.to_str().unwrap(), "--from", "a", "--to", "q"]).1, 2);
    assert_eq!(run(&["frobnicate"]).1, 2);
    assert_eq!(run(&["cotor", "--coalgebra", "binq", "--trunc", "4"]).1, 2);
}

#[test]
fn budget_from_environment() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "d.po", "0 < a\n0 < b\na < 1\nb < 1\n");
    let out = bin()
        .args(["hh", "--poset", p.to_str().unwrap(), "--full", "--nmax", "3"])
        .env("COTORLAB_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn reports_are_stable_and_round_trip() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "crown.po", "y1 < x1\ny1 < x2\ny2 < x1\ny2 < x2\n");
    let path = p.to_str().unwrap();
    let invocations: Vec<Vec<&str>> = vec![
        vec!["--no-timings", "hh", "--poset", path, "--nmax", "2"],
        vec!["--no-timings", "hh", "--poset", path, "--nmax", "2", "--full"],
        vec!["--no-timings", "ext", "--poset", path, "--from", "y1", "--to", "x1", "--nmax", "2"],
        vec!["--no-timings", "poset", "nerve", path, "--nmax", "2"],
        vec!["--no-timings", "cotor", "--coalgebra", "bin", "--trunc", "6", "--nmax", "3"],
    ];
    let mut all = String::new();
    for args in &invocations {
        let (a, code) = run(args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(run(args).0, a, "not byte-stable: {args:?}");
        all.push_str(&a);
    }
    let reports = read_reports(all.as_bytes()).unwrap();
    assert_eq!(reports.len(), invocations.len());
    let again: String = reports.iter().map(|r| r.to_json() + "\n").collect();
    assert_eq!(again, all);
    assert_eq!(reports[0].dims, vec![1, 1, 0]);
    assert_eq!(reports[0].dims, reports[1].dims);
    assert_eq!(reports[2].dims, vec![0, 1, 0]);
    assert_eq!(reports[3].dims, vec![1, 1, 0]);
}

#[test]
fn tsv_view() {
    let (out, code) = run(&["--tsv", "cotor", "--coalgebra", "div", "--trunc", "4", "--nmax", "2"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "object\ttool\tdegree_cap\tn\tdim");
    assert_eq!(lines[2], "div(4)\tcotor\t4\t1\t1");
}

#[test]
fn quiver_suspend_output_reparses() {
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "crown.qv", CROWN_QV);
    let (out, code) = run(&["quiver", "suspend", q.to_str().unwrap()]);
    assert_eq!(code, 0);
    let s = parse_quiver(&out).unwrap();
    assert_eq!((s.vertices().len(), s.arrows().len()), (6, 8));
    assert!(s.is_ordered());
}
