use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(file: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(file).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_poincare")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn homology_text_output() {
    let text = stdout(&["homology", "--zoo", "klein_bottle8"]);
    assert_eq!(text, "degree=0 ring=Z betti=1 torsion=[]\ndegree=1 ring=Z betti=1 torsion=[2]\ndegree=2 ring=Z betti=0 torsion=[]\n");
    let one = stdout(&["cohomology", "--zoo", "projective_plane6", "--ring", "Z2", "--degree", "1"]);
    assert_eq!(one, "degree=1 ring=Z2 betti=1 torsion=[]\n");
}

#[test]
fn json_output_parses() {
    let text = stdout(&["duality", "--zoo", "sphere3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["pass"], serde_json::Value::Bool(true));
    assert_eq!(v["degrees"].as_array().unwrap().len(), 4);
    let text = stdout(&["validate", "--zoo", "genus2_surface", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["euler_characteristic"], serde_json::json!(-2));
}

#[test]
fn outputs_repeat_byte_for_byte() {
    let cyc = data("torus7_meridian.cyc");
    let cases: Vec<Vec<&str>> = vec![
        vec!["dual", "--zoo", "torus7", "--format", "json"],
        vec!["duality", "--zoo", "projective_space11", "--ring", "Z2"],
        vec!["level-curve", "--zoo", "torus7", "--cocycle", &cyc, "--t", "3/4"],
        vec!["deform", "--zoo", "torus7", "--cocycle", &cyc, "--format", "json"],
    ];
    for args in cases {
        let (a, b) = (run(&args), run(&args));
        assert_eq!((a.status.code(), &a.stdout, &a.stderr), (b.status.code(), &b.stdout, &b.stderr), "{args:?}");
    }
}

#[test]
fn export_file_written() {
    let dir = std::env::temp_dir().join(format!("poincare-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("curve.txt");
    let cyc = data("torus7_meridian.cyc");
    stdout(&["level-curve", "--zoo", "torus7", "--cocycle", &cyc, "--export", path.to_str().unwrap()]);
    assert!(!std::fs::read_to_string(&path).unwrap().is_empty());
    std::fs::remove_dir_all(Path::new(&dir)).ok();
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["duality", "--zoo", "torus7"]).status.code(), Some(0));
    let fail = run(&["duality", "--input", &data("suspended_torus.txt")]);
    assert_eq!(fail.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&fail.stdout).contains("verdict=fail"));
    for args in [
        vec!["homology"],
        vec!["homology", "--zoo", "torus7", "--input", "x.txt"],
        vec!["homology", "--zoo", "torus3"],
        vec!["homology", "--zoo", "torus7", "--ring", "Q"],
        vec!["homology", "--zoo", "torus7", "--degree", "5"],
        vec!["duality", "--zoo", "klein_bottle8", "--ring", "Z"],
        vec!["validate", "--input", "/nonexistent/complex.txt"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
    let cyc = data("torus7_meridian.cyc");
    let out = run(&["level-curve", "--zoo", "torus7", "--cocycle", &cyc, "--t", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}
