use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn skc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skc"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut all = vec!["gen"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let o = skc(&all);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    path
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

// K_4 doubled plus a pendant edge: the bridge is the only bottleneck
const BRIDGED: &str = r#"{"type":"pin","m":5,"edges":[
 {"members":[1,2],"mult":2},{"members":[1,3],"mult":2},{"members":[1,4],"mult":2},
 {"members":[2,3],"mult":2},{"members":[2,4],"mult":2},{"members":[3,4],"mult":2},
 {"members":[4,5]}]}"#;

#[test]
fn info_on_harary_graph() {
    let dir = TempDir::new().unwrap();
    let h = gen(dir.path(), "h.json", &["harary", "4", "3"]);
    let o = skc(&["info", h.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("H(X_M) = 6"));
    assert!(text.contains("I=2, R_CO=4, argmin: S"));
}

#[test]
fn classify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let strict = gen(dir.path(), "h.json", &["harary", "4", "3"]);
    let tie = gen(dir.path(), "c.json", &["chan", "5"]);
    let not = write(dir.path(), "b.json", BRIDGED);
    assert_eq!(
        skc(&["classify", strict.to_str().unwrap()]).status.code(),
        Some(0)
    );
    assert_eq!(
        skc(&["classify", tie.to_str().unwrap()]).status.code(),
        Some(1)
    );
    let o = skc(&["classify", not.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("NotTypeS margin=-9/4"));
}

#[test]
fn json_output_parses() {
    let dir = TempDir::new().unwrap();
    let h = gen(dir.path(), "h.json", &["harary", "4", "3"]);
    let p = h.to_str().unwrap();
    for verb in ["info", "classify", "omnivocal", "rsk", "protocol"] {
        let o = skc(&["--json", verb, p]);
        assert_eq!(o.status.code(), Some(0), "{verb}");
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert!(v.is_object(), "{verb}");
    }
    let o = skc(&["--json", "classify", p]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["class"], "StrictTypeS");
    assert_eq!(v["margin"]["value"], "1/2");
}

#[test]
fn generated_files_round_trip() {
    let dir = TempDir::new().unwrap();
    let a = gen(dir.path(), "a.json", &["omni", "4", "0.5"]);
    let first = std::fs::read_to_string(&a).unwrap();
    let o = skc(&["gen", "omni", "4", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), first.trim());
    assert_eq!(skc(&["info", a.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn protocol_run_and_replay_record() {
    let dir = TempDir::new().unwrap();
    let c = gen(dir.path(), "c.json", &["cycle", "4"]);
    let run = dir.path().join("run.json");
    // σ̄(C_4) = 4/3, so three copies carry four trees
    let o = skc(&[
        "protocol",
        c.to_str().unwrap(),
        "--n",
        "3",
        "--seed",
        "7",
        "--emit-run",
        run.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).trim(),
        "σ=4 key=4b transcript=8b secrecy=EXACT agreement=OK"
    );
    let first = std::fs::read_to_string(&run).unwrap();
    skc(&[
        "protocol",
        c.to_str().unwrap(),
        "--n",
        "3",
        "--seed",
        "7",
        "--emit-run",
        run.to_str().unwrap(),
    ]);
    assert_eq!(std::fs::read_to_string(&run).unwrap(), first);
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["key"].as_array().unwrap().len(), 4);
}

#[test]
fn sequential_flag_gives_same_output() {
    let dir = TempDir::new().unwrap();
    let h = gen(dir.path(), "h.json", &["harary", "6", "3"]);
    let p = h.to_str().unwrap();
    assert_eq!(
        stdout(&skc(&["info", p])),
        stdout(&skc(&["--sequential", "info", p]))
    );
}

#[test]
fn allocate_listing() {
    let o = skc(&["allocate", "5", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("R(4): Q(123)←Q(2), Q(125)←Q(2), Q(135)←Q(3), Q(235)←Q(3)\n"));
    assert!(text.contains("claims=OK"));
}

#[test]
fn errors_exit_with_three() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.json", "{");
    let o = skc(&["info", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.json"));
    assert_eq!(
        skc(&["info", dir.path().join("missing.json").to_str().unwrap()])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(skc(&["gen", "sts", "8"]).status.code(), Some(3));
    assert_eq!(skc(&["gen", "nope", "1"]).status.code(), Some(3));
    assert_eq!(skc(&["frob"]).status.code(), Some(3));
    assert_eq!(skc(&["--version"]).status.code(), Some(0));
    assert_eq!(skc(&["--help"]).status.code(), Some(0));
}

#[test]
fn protocol_rejects_disconnected_and_non_graph_models() {
    let dir = TempDir::new().unwrap();
    let d = write(
        dir.path(),
        "d.json",
        r#"{"type":"pin","m":4,"edges":[{"members":[1,2]},{"members":[3,4]}]}"#,
    );
    let o = skc(&["protocol", d.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let omni = gen(dir.path(), "o.json", &["omni", "4", "0.5"]);
    assert_eq!(
        skc(&["protocol", omni.to_str().unwrap()]).status.code(),
        Some(3)
    );
}

#[test]
fn rsk_on_bridged_graph() {
    let dir = TempDir::new().unwrap();
    let b = write(dir.path(), "b.json", BRIDGED);
    let o = skc(&["rsk", b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("R_CO = 12"));
    assert!(text.contains("R_SK ≤ 3 [spanning-tree packing protocol]"));
    assert!(text.contains("maximality: NotMaximal"));
}
