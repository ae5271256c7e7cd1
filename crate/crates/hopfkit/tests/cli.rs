//! End-to-end tests of the command-line interface: exit codes, report
//! files, determinism of outputs.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hopfkit"))
}

fn write_gallery(dir: &Path, name: &str) -> std::path::PathBuf {
    let path = dir.join(format!("{name}.json"));
    let status = bin()
        .args(["gallery", name, "--out"])
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());
    path
}

#[test]
fn gallery_scenarios_run_clean() {
    let tmp = tempfile::tempdir().unwrap();
    for name in ["trivial", "sweedler", "taft3_f7", "qplane"] {
        let scenario = write_gallery(tmp.path(), name);
        let out_dir = tmp.path().join(format!("out_{name}"));
        let output = bin()
            .args(["run"])
            .arg(&scenario)
            .arg("--out")
            .arg(&out_dir)
            .output()
            .unwrap();
        assert_eq!(
            output.status.code(),
            Some(0),
            "{name}: {}",
            String::from_utf8_lossy(&output.stdout)
        );
        assert!(out_dir.join("report.json").exists());
        assert!(out_dir.join("report.txt").exists());
        let text = std::fs::read_to_string(out_dir.join("report.txt")).unwrap();
        assert!(text.contains("PASS"), "{text}");
        assert!(!text.contains("FAIL"), "{text}");
    }
}

#[test]
fn run_reports_hilbert_series_and_exports() {
    let tmp = tempfile::tempdir().unwrap();
    let scenario = write_gallery(tmp.path(), "sweedler");
    let out_dir = tmp.path().join("out");
    let status = bin()
        .args(["run"])
        .arg(&scenario)
        .arg("--out")
        .arg(&out_dir)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let hilbert = std::fs::read_to_string(out_dir.join("hilbert.json")).unwrap();
    assert!(hilbert.contains("[\n    1,\n    1,\n    0,\n    0,\n    0\n  ]"), "{hilbert}");
    for id in ["U", "A", "twist", "bw", "bv", "klambda", "kgamma"] {
        assert!(
            out_dir.join("exports").join(format!("{id}.json")).exists(),
            "missing export {id}"
        );
    }
    assert!(out_dir.join("relations.txt").exists());
}

#[test]
fn verification_failure_exits_one_and_names_the_axiom() {
    let tmp = tempfile::tempdir().unwrap();
    let scenario = write_gallery(tmp.path(), "sweedler");
    let text = std::fs::read_to_string(&scenario)
        .unwrap()
        .replace("\"phi\": [[\"-1\"]]", "\"phi\": [[\"1\"]]");
    let bad = tmp.path().join("bad.json");
    std::fs::write(&bad, text).unwrap();
    let output = bin().args(["run"]).arg(&bad).output().unwrap();
    assert_eq!(output.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("C.2"), "{stdout}");
}

#[test]
fn schema_error_exits_two() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = tmp.path().join("broken.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let status = bin().args(["run"]).arg(&bad).status().unwrap();
    assert_eq!(status.code(), Some(2));
    // missing file is also unusable input
    let status = bin().args(["run", "/nonexistent/x.json"]).status().unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn resource_bound_exits_three() {
    let tmp = tempfile::tempdir().unwrap();
    let scenario = write_gallery(tmp.path(), "sweedler");
    let status = bin()
        .args(["run"])
        .arg(&scenario)
        .args(["--cap", "1"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));
}

#[test]
fn unknown_gallery_exits_two() {
    let status = bin().args(["gallery", "nope"]).status().unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn export_and_reimport() {
    let tmp = tempfile::tempdir().unwrap();
    let scenario = write_gallery(tmp.path(), "sweedler");
    let out = tmp.path().join("A.json");
    let status = bin()
        .args(["export"])
        .arg(&scenario)
        .arg("A")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let json = std::fs::read_to_string(&out).unwrap();
    let parsed = hopfkit::io::from_json_str(&json).unwrap();
    let hopf = hopfkit::io::import_hopf(&parsed).unwrap();
    assert_eq!(hopf.dim(), 4);
    assert_eq!(hopfkit::io::to_json_string(&hopfkit::io::export_hopf(&hopf)), json);
    // unknown object id
    let status = bin()
        .args(["export"])
        .arg(&scenario)
        .arg("nope")
        .arg(tmp.path().join("x.json"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn runs_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let scenario = write_gallery(tmp.path(), "sweedler");
    let mut blobs = Vec::new();
    for i in 0..2 {
        let out_dir = tmp.path().join(format!("det{i}"));
        let status = bin()
            .args(["run"])
            .arg(&scenario)
            .arg("--out")
            .arg(&out_dir)
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
        let mut blob = std::fs::read(out_dir.join("report.json")).unwrap();
        blob.extend(std::fs::read(out_dir.join("exports/twist.json")).unwrap());
        blob.extend(std::fs::read(out_dir.join("exports/A.json")).unwrap());
        blobs.push(blob);
    }
    assert_eq!(blobs[0], blobs[1]);
}

#[test]
fn gallery_emission_is_byte_exact() {
    let tmp = tempfile::tempdir().unwrap();
    let a = write_gallery(tmp.path(), "double_sweedler");
    let b = tmp.path().join("again.json");
    bin()
        .args(["gallery", "double_sweedler", "--out"])
        .arg(&b)
        .status()
        .unwrap();
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}
