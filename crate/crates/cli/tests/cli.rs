//! End-to-end runs of the `expcone` binary.

use std::process::{Command, Output};

use expcone_core::report::validate_report;
use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_expcone")).args(args).output().unwrap()
}

/// Runs a command expected to succeed and returns its validated report.
fn report(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    validate_report(&v).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    v
}

#[test]
fn conedim_of_catalog_algebras() {
    let v = report(&["conedim", "catalog:sol"]);
    assert_eq!(v["results"]["value"], 1);
    let v = report(&["conedim", "catalog:twisted_heisenberg_pair"]);
    assert_eq!(v["results"]["value"], 3);
    assert_eq!(v["results"]["quotient"], "R^3");
    assert_eq!(v["command"], "conedim catalog:twisted_heisenberg_pair");
    assert!(v["anchors"]["value"].as_str().unwrap().contains("cone dimension"));
}

#[test]
fn broken_algebra_is_a_domain_error() {
    let out = run(&["validate", &data("broken.alg")]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("JacobiViolation"), "{err}");
    assert!(err.contains("(x, y, z)"), "{err}");
}

#[test]
fn parse_errors_exit_2_with_location() {
    let path = std::env::temp_dir().join(format!("expcone-bad-{}.alg", std::process::id()));
    std::fs::write(&path, "basis: x y\n[x,y] = 2 w\n").unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains(":2:11: unknown basis element `w`"), "{err}");
    assert_eq!(run(&["conedim", "catalog:nope"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn algebra_commands_produce_valid_reports() {
    for cmd in ["validate", "analyze", "exprad", "conedim", "cat0", "section"] {
        for name in ["heisenberg", "sol", "rotation", "twisted_heisenberg_pair", "heisenberg_on_heisenberg", "weakly_triangulable"] {
            if cmd == "section" && name == "rotation" {
                let out = run(&[cmd, "catalog:rotation"]);
                assert_eq!(out.status.code(), Some(1));
                assert!(String::from_utf8_lossy(&out.stderr).contains("NotWeaklyTriangulable"));
                continue;
            }
            report(&[cmd, &format!("catalog:{name}")]);
        }
    }
    let v = report(&["analyze", "catalog:sl2_annotated"]);
    assert_eq!(v["results"]["cartan"], Value::Null);
    let v = report(&["cat0", "catalog:heisenberg_by_sol"]);
    assert_eq!(v["results"]["embeds"], false);
    assert_eq!(v["results"]["reason"], "quotient_nonabelian_nilshadow");
    let v = report(&["liftprobe", "catalog:twisted_heisenberg_pair", "--seed", "0", "--scales", "6"]);
    let rows = v["results"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 7);
    assert!(rows[0]["ratio"].as_str().unwrap().starts_with("approx:"));
}

#[test]
fn reports_are_byte_identical() {
    let a = run(&["analyze", "catalog:heisenberg_on_heisenberg"]).stdout;
    let b = run(&["analyze", "catalog:heisenberg_on_heisenberg"]).stdout;
    assert_eq!(a, b);
    let base = ["padic", "check", "--prime", "3", "--size", "3", "--samples", "300", "--seed", "7"];
    let one = run(&[&base[..], &["--threads", "1"]].concat());
    let three = run(&[&base[..], &["--threads", "3"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, three.stdout);
}

#[test]
fn padic_commands() {
    let v = report(&["padic", "check", "--prime", "2", "--size", "2", "--samples", "200"]);
    assert_eq!(v["results"]["passed"], true);
    let v = report(&["padic", "length", "--prime", "2", &data("upper3.padic")]);
    let m = v["results"]["matrices"].as_array().unwrap();
    assert_eq!(m.len(), 2);
    // diag(1/2, 1, 2): |v_2| up to 1, so length 2·1; the unipotent part has
    // entries 2 (above 1/2) and 2 (above 1): log norm -1 (or smaller)
    assert_eq!(m[0]["diagonal_log_norm"], "1");
    assert_eq!(m[0]["length"], "2");
    let v = report(&["padic", "conedim", &data("upper3.torus")]);
    assert_eq!(v["results"]["value"], 3);
    let out = run(&["padic", "conedim", &data("unipotent_only.torus")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotCompactlyGenerated"));
    assert_eq!(run(&["padic", "check", "--prime", "4", "--size", "2"]).status.code(), Some(1));
}

#[test]
fn distortion_and_growth() {
    let csv = std::env::temp_dir().join(format!("expcone-bs-{}.csv", std::process::id()));
    let v = report(&["distortion", "--model", "bs:1:2", "--radius", "9", "--out", csv.to_str().unwrap()]);
    let text = std::fs::read_to_string(&csv).unwrap();
    std::fs::remove_file(&csv).ok();
    assert!(text.starts_with("intrinsic_size,ambient_length\n"));
    assert_eq!(text.lines().count() - 1, v["results"]["rows"].as_u64().unwrap() as usize);
    let out = run(&["distortion", "--model", "zk:2", "--radius", "3"]);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("intrinsic_size,ambient_length\n"));
    let v = report(&["growth", "--model", "heis", "--radius", "8"]);
    assert_eq!(v["results"]["verdict"], "subexponential");
    let v = report(&["growth", "--model", "lamp:2", "--radius", "8"]);
    assert_eq!(v["results"]["verdict"], "exponential");
    let out = run(&["growth", "--model", "sol:2,1,1,2", "--radius", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn covering_commands() {
    let v = report(&["covdim", &data("line7.metric"), "--scale", "5/2"]);
    assert_eq!(v["results"]["multiplicity"], 2);
    assert_eq!(v["results"]["dimension"], 1);
    let v = report(&["burillo", &data("product.fib")]);
    assert_eq!(v["results"]["passed"], true);
    assert_eq!(v["results"]["parallel"]["parallel"], true);
    assert_eq!(v["results"]["levels"].as_array().unwrap().len(), 3);
    let v = report(&["quotient", "--model", "bs:1:2", "--radius", "6"]);
    assert_eq!(v["results"]["interior"]["slack"], "1");
}

#[test]
fn catalog_commands() {
    let out = run(&["catalog", "list"]);
    let list = String::from_utf8_lossy(&out.stdout);
    for name in ["heisenberg", "sol", "rotation", "weakly_triangulable", "twisted_heisenberg_pair", "heisenberg_on_heisenberg", "sl2_annotated"] {
        assert!(list.lines().any(|l| l.starts_with(name)), "{name}");
    }
    let out = run(&["catalog", "emit", "sol"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(expcone_core::formats::parse_algebra(&text).is_ok());
}
