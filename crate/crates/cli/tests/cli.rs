use std::path::Path;
use std::process::Command;

use lifedens_cli::{run, EXIT_BUDGET, EXIT_FALSIFIED, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

const FIB: &str = include_str!("../../core/data/certs/fibonacci.cert");

fn lifedens(args: &[&str]) -> (i32, String) {
    run(std::iter::once("lifedens").chain(args.iter().copied()))
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn still_life_check_on_gallery_torus() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("chicken_wire.pat");
    let (s, _) = lifedens(&["gallery", "chicken_wire", "--torus", "-o", path(&file)]);
    assert_eq!(s, EXIT_OK);
    let (s, out) = lifedens(&["check", "--still-life", path(&file)]);
    assert_eq!(s, EXIT_OK);
    assert!(out.starts_with("still life: yes, density 1/2\n"), "{out}");
}

#[test]
fn failed_still_life_is_status_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("blinker.pat");
    assert_eq!(lifedens(&["gen", "blinker", "-o", path(&file)]).0, EXIT_OK);
    let (s, out) = lifedens(&["check", "--still-life", path(&file)]);
    assert_eq!(s, EXIT_FALSIFIED);
    assert!(out.starts_with("still life: no, density 3/25"), "{out}");
    assert!(out.contains("births: 2"), "{out}");
    let (s, out) = lifedens(&["period", path(&file)]);
    assert_eq!(s, EXIT_OK);
    assert!(out.starts_with("period 2\n"), "{out}");
}

#[test]
fn certificate_verification() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("fib.cert");
    std::fs::write(&file, FIB).unwrap();
    let (s, out) = lifedens(&["bound", "verify", path(&file)]);
    assert_eq!(s, EXIT_OK);
    assert!(out.starts_with("max weight 105/168 ≤ 5/8: valid\n"), "{out}");

    let wrong = FIB.replace("D 5/8", "D 1/2");
    std::fs::write(&file, wrong).unwrap();
    let (s, out) = lifedens(&["bound", "verify", path(&file)]);
    assert_eq!(s, EXIT_FALSIFIED);
    assert!(out.contains("invalid"), "{out}");

    std::fs::write(&file, FIB).unwrap();
    let (s, _) = lifedens(&["bound", "verify", "--budget", "10", path(&file)]);
    assert_eq!(s, EXIT_BUDGET);
}

#[test]
fn search_reports() {
    let (s, out) = lifedens(&["search", "--dims", "3x3", "--degree", "7"]);
    assert_eq!(s, EXIT_OK);
    assert!(out.starts_with("max density 8/9\n"), "{out}");
    let (s, out) = lifedens(&["search", "--dims", "4x4", "--still-life"]);
    assert_eq!(s, EXIT_OK);
    assert!(out.starts_with("max still-life density 1/2\n"), "{out}");
    let (s, out) = lifedens(&["search", "--dims", "3x3", "--degree", "2", "--neighborhood", "tri6"]);
    assert_eq!(s, EXIT_OK);
    assert!(out.starts_with("max density "), "{out}");
    let (s, out) = lifedens(&["search", "--dims", "6x6", "--degree", "3", "--budget", "100"]);
    assert_eq!(s, EXIT_BUDGET);
    assert!(out.starts_with("budget exhausted"), "{out}");
    let (s, out) = lifedens(&["search", "--dims", "4x4", "--degree", "2", "--enumerate"]);
    assert_eq!(s, EXIT_OK);
    assert!(out.contains("optima up to symmetry: 1"), "{out}");
}

#[test]
fn usage_errors_are_status_two() {
    assert_eq!(lifedens(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(lifedens(&["search", "--dims", "3y3", "--degree", "1"]).0, EXIT_USAGE);
    assert_eq!(lifedens(&["check", "/nonexistent/file.pat"]).0, EXIT_USAGE);
    assert_eq!(lifedens(&["gen", "no_such_thing"]).0, EXIT_USAGE);
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.pat");
    std::fs::write(&file, "torus 2 3 2\n#.#\n##\n").unwrap();
    let (s, out) = lifedens(&["density", path(&file)]);
    assert_eq!(s, EXIT_USAGE);
    assert!(out.contains("line 3"), "{out}");
}

#[test]
fn json_mirrors_text() {
    let (s, out) = lifedens(&["--json", "search", "--dims", "3x3", "--degree", "7"]);
    assert_eq!(s, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["max_density"], "8/9");
    assert_eq!(v["proven_optimal"], true);

    let (_, out) = lifedens(&["--json", "bound", "analytic", "--degree", "2"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["bound"], "1/2");
}

#[test]
fn other_commands() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("s.pat");
    assert_eq!(lifedens(&["gen", "stripes", "--tile", "6x6", "-o", path(&file)]).0, EXIT_OK);
    let (s, out) = lifedens(&["density", path(&file)]);
    assert_eq!(s, EXIT_OK);
    assert!(out.starts_with("density 1/2"), "{out}");
    let (s, out) = lifedens(&["check", "--degree", "2", path(&file)]);
    assert_eq!(s, EXIT_OK, "{out}");
    let (s, _) = lifedens(&["check", "--degree", "1", path(&file)]);
    assert_eq!(s, EXIT_FALSIFIED);

    let (s, out) = lifedens(&["evolve", "--steps", "3", path(&file)]);
    assert_eq!(s, EXIT_OK);
    assert!(out.starts_with("torus 2 6 6\n"), "{out}");

    let (s, out) = lifedens(&["voronoi", path(&file)]);
    assert_eq!(s, EXIT_OK);
    assert!(out.starts_with("x\ty\tarea\talpha\talpha0\ttype\n"), "{out}");
    assert!(out.contains("# cells 18 sigma 0 sigma0 0 density 1/2"), "{out}");

    let (s, out) = lifedens(&["bound", "lp", "--box", "2x2", "--degree", "0"]);
    assert_eq!(s, EXIT_OK);
    assert!(out.starts_with("D* 1/4\n"), "{out}");

    let (s, out) = lifedens(&["gallery", "--list"]);
    assert_eq!(s, EXIT_OK);
    assert!(out.lines().any(|l| l == "dozens"));
    let (s, out) = lifedens(&["gallery", "hoey_2"]);
    assert_eq!(s, EXIT_OK);
    assert!(out.starts_with("grid "), "{out}");
    assert_eq!(lifedens(&["gallery", "hoey_2", "--torus"]).0, EXIT_USAGE);
}

#[test]
fn output_is_deterministic() {
    let a = lifedens(&["search", "--dims", "4x4", "--degree", "3"]);
    let b = lifedens(&["search", "--dims", "4x4", "--degree", "3"]);
    assert_eq!(a, b);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_lifedens");
    let out = Command::new(bin).args(["search", "--dims", "3x3", "--degree", "7"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("max density 8/9"));
    let out = Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}
