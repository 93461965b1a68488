use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn lbz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lbz")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn family(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(format!("{name}.lbz"));
    let mut full = vec!["family"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let o = lbz(&full);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn check_exit_codes() {
    let dir = TempDir::new().unwrap();
    let diamond = family(dir.path(), "diamond", &["diamond", "--field", "GF(5)"]);
    let o = lbz(&["check", diamond.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("convention: right"));

    let broken = write(
        dir.path(),
        "broken.lbz",
        r#"{"format":"lbz-1","convention":"right","field":"Q","dim":2,"basis":["a","b"],
            "products":[{"left":"b","right":"b","value":{"b":"1"}}]}"#,
    );
    let o = lbz(&["check", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness: x = b, y = b, z = b, defect = b"), "{}", stdout(&o));

    let bad = write(dir.path(), "bad.lbz", r#"{"format":"lbz-1","field":"GF(4)"}"#);
    assert_eq!(lbz(&["check", bad.to_str().unwrap()]).status.code(), Some(2));
    let extra = write(
        dir.path(),
        "extra.lbz",
        r#"{"format":"lbz-1","convention":"right","field":"Q","dim":1,"basis":["a"],"products":[],"note":1}"#,
    );
    assert_eq!(lbz(&["check", extra.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(lbz(&["check", "/nonexistent.lbz"]).status.code(), Some(2));
}

#[test]
fn inv_selectors() {
    let dir = TempDir::new().unwrap();
    let diamond = family(dir.path(), "diamond", &["diamond", "--field", "GF(5)"]);
    let o = lbz(&["inv", "--kernel", diamond.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("I = span{a}"));

    let abelian = family(dir.path(), "abelian", &["abelian", "--n", "3", "--field", "GF(2)"]);
    let o = lbz(&["inv", "--all", "--format", "json", abelian.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["convention"], "right");
    assert_eq!(v["flags"]["is_lie"], true);
    assert_eq!(v["flags"]["is_nilpotent"], true);
    assert_eq!(v["flags"]["quasi_abelian_class"], "abelian");
    assert_eq!(v["square"], "span{}");

    let sl2 = family(dir.path(), "sl2", &["sl2", "--field", "GF(7)"]);
    let o = lbz(&["inv", "--radical", sl2.to_str().unwrap()]);
    assert!(stdout(&o).contains("radical = span{}"), "{}", stdout(&o));

    let q = family(dir.path(), "cyclic_q", &["cyclic", "--n", "3"]);
    let o = lbz(&["inv", "--series", q.to_str().unwrap()]);
    assert!(stdout(&o).contains("class 3"));
    assert_eq!(lbz(&["inv", "--radical", q.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn lattice_exports() {
    let dir = TempDir::new().unwrap();
    let diamond = family(dir.path(), "diamond", &["diamond", "--field", "GF(3)"]);
    let dot = stdout(&lbz(&["lattice", "--dot", diamond.to_str().unwrap()]));
    assert!(dot.starts_with("// convention: right\ndigraph"));
    assert_eq!(dot.matches("->").count(), 4);
    let json: serde_json::Value = serde_json::from_str(&stdout(&lbz(&["lattice", "--json", diamond.to_str().unwrap()]))).unwrap();
    assert_eq!(json["lattice"]["nodes"].as_array().unwrap().len(), 4);
    let capped = lbz(&["lattice", "--max-nodes", "3", diamond.to_str().unwrap()]);
    assert_eq!(capped.status.code(), Some(2));
}

#[test]
fn iso_verdicts() {
    let dir = TempDir::new().unwrap();
    let diamond = family(dir.path(), "diamond", &["diamond", "--field", "GF(2)"]);
    let abelian = family(dir.path(), "abelian", &["abelian", "--n", "2", "--field", "GF(2)"]);
    let almost = family(dir.path(), "almost", &["almost-abelian", "--n", "2", "--field", "GF(2)"]);
    let (d, a, aa) = (diamond.to_str().unwrap(), abelian.to_str().unwrap(), almost.to_str().unwrap());
    let o = lbz(&["iso", "--lattice", d, d]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(2 isomorphisms)"));
    assert_eq!(lbz(&["iso", "--lattice", d, a]).status.code(), Some(1));
    assert_eq!(lbz(&["iso", "--lattice", a, aa]).status.code(), Some(0));
    assert_eq!(lbz(&["iso", "--algebra", a, aa]).status.code(), Some(1));
    assert_eq!(lbz(&["iso", d, d]).status.code(), Some(0));
    let other = family(dir.path(), "d3", &["diamond", "--field", "GF(3)"]);
    assert_eq!(lbz(&["iso", d, other.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn family_documents_round_trip() {
    let dir = TempDir::new().unwrap();
    let c = family(dir.path(), "c", &["cyclic", "--n", "3", "--alpha", "1", "--alpha", "-1/2"]);
    let text = std::fs::read_to_string(&c).unwrap();
    assert!(text.contains("\"-1/2\""));
    assert_eq!(lbz(&["check", c.to_str().unwrap()]).status.code(), Some(0));
    let left = family(dir.path(), "left", &["diamond", "--convention", "left", "--field", "GF(5)"]);
    let o = lbz(&["check", left.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("convention: left"));
    // reading a left table as right fails the identity
    let o = lbz(&["check", "--convention", "right", left.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(lbz(&["family", "sl2", "--field", "GF(2)"]).status.code(), Some(2));
    assert_eq!(lbz(&["family", "abelian"]).status.code(), Some(2));
}

#[test]
fn atlas_is_deterministic_across_threads() {
    let one = lbz(&["atlas", "2", "2", "--threads", "1"]);
    let four = lbz(&["atlas", "2", "2", "--threads", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let text = stdout(&one);
    assert!(text.contains("convention: right"));
    assert!(text.contains("result: all asserted checks pass"));
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("atlas.json");
    let o = lbz(&["atlas", "2", "2", "3", "--format", "json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["ok"], true);
    assert_eq!(v["header"]["convention"], "right");
}
