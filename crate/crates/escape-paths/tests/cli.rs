//! End-to-end tests through the compiled binary: exit codes, determinism,
//! and the documented output formats.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_escape-paths")
}

fn run<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(bin()).args(args).output().unwrap()
}

fn write_candidate(dir: &Path, name: &str) -> std::path::PathBuf {
    let file = dir.join(format!("{name}.json"));
    let out = Command::new(bin())
        .args(["candidates", "--name", name, "-o"])
        .arg(&file)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    file
}

#[test]
fn length_prints_twelve_decimals() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_candidate(dir.path(), "theorem1");
    let out = run([std::ffi::OsStr::new("length"), file.as_os_str()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim(), "6.397242236757");
}

#[test]
fn theorem2_length_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_candidate(dir.path(), "theorem2");
    let out = run([std::ffi::OsStr::new("length"), file.as_os_str()]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "5.141592653590");
    let out = run([std::ffi::OsStr::new("verify"), file.as_os_str()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("covered"));
}

#[test]
fn malformed_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    std::fs::write(&file, "{ not json").unwrap();
    let out = run([std::ffi::OsStr::new("verify"), file.as_os_str()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));

    // missing file
    let out = run(["length", "/nonexistent/x.json"]);
    assert_eq!(out.status.code(), Some(1));

    // unknown flag is a usage error, also exit 1
    let out = run(["verify", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(1));

    // unknown candidate name
    let out = run(["candidates", "--name", "bogus", "-o", "/tmp/never.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    let out = run(["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("radians"), "unit convention documented in --help");
}

#[test]
fn optimize_prints_family_minimum() {
    let out = run(["optimize", "--family", "figure2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("alpha_star=0.5235987"), "got: {text}");
    assert!(text.contains("length=6.3972422"), "got: {text}");
}

#[test]
fn bounds_table_contains_documented_rows() {
    let out = run(["bounds"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("6.3972422368"));
    assert!(text.contains("5.1415926536"));
    assert!(text.contains("7.66"));
    assert!(text.contains("10.66"));

    // the generic dimension row needs caller-supplied constants
    let out = run(["bounds", "--dim", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(["bounds", "--dim", "4", "--c-lower", "1.0", "--c-upper", "3.0"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn search_is_deterministic_for_fixed_seed() {
    let dir = tempfile::tempdir().unwrap();
    let args = |out: &Path| {
        vec![
            "search".into(),
            "--mode".into(),
            "theorem2".into(),
            "--vertices".into(),
            "8".into(),
            "--seed".into(),
            "5".into(),
            "--iterations".into(),
            "2000".into(),
            "-o".into(),
            out.as_os_str().to_owned(),
        ]
    };
    let f1 = dir.path().join("a.json");
    let f2 = dir.path().join("b.json");
    let o1 = run(args(&f1));
    let o2 = run(args(&f2));
    assert_eq!(o1.status.code(), Some(0));
    assert_eq!(o1.stdout, o2.stdout);
    assert_eq!(
        std::fs::read(&f1).unwrap(),
        std::fs::read(&f2).unwrap(),
        "identical seeds must write identical files"
    );
}

#[test]
fn shorten_reports_moves_and_writes_result() {
    // retraced detour: out to (2.4, 0) and back to (2, 0) before circling
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("detour.json");
    std::fs::write(
        &input,
        r#"{
  "version": 1,
  "pieces": [
    { "type": "segment", "from": [0.0, 0.0], "to": [2.4, 0.0] },
    { "type": "segment", "from": [2.4, 0.0], "to": [2.0, 0.0] },
    { "type": "arc", "center": [0.0, 0.0], "radius": 2.0, "start_angle": 0.0, "end_angle": 6.283185307179586, "ccw": true }
  ]
}
"#,
    )
    .unwrap();
    let output = dir.path().join("shortened.json");
    let out = Command::new(bin())
        .args(["shorten"])
        .arg(&input)
        .arg("-o")
        .arg(&output)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("total saved"), "got: {text}");
    let verify = run([std::ffi::OsStr::new("verify"), output.as_os_str()]);
    assert_eq!(verify.status.code(), Some(0), "shortened path must stay covered");
}

#[test]
fn plot_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_candidate(dir.path(), "theorem1");
    let svg_file = dir.path().join("t1.svg");
    let out = Command::new(bin())
        .args(["plot"])
        .arg(&file)
        .args(["--tangents", "grid:12", "-o"])
        .arg(&svg_file)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(&svg_file).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("stroke-dasharray").count(), 12);

    // bad tangent spec
    let out = Command::new(bin())
        .args(["plot"])
        .arg(&file)
        .args(["--tangents", "grid:x", "-o"])
        .arg(&svg_file)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
