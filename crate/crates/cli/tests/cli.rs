//! End-to-end checks of the command-line surface: exit codes, file
//! artifacts, and byte determinism.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_newton-measure"))
}

fn write_gauss_config(dir: &Path, c: f64) -> std::path::PathBuf {
    let path = dir.join("problem.json");
    std::fs::write(
        &path,
        format!(r#"{{"p": [[1, 0]], "q": [[0, 0], [0, 0], [-1, 0]], "c": [{c}, 0]}}"#),
    )
    .unwrap();
    path
}

#[test]
fn info_reports_constants() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_gauss_config(dir.path(), 0.3);
    let out = bin().args(["info", "--config"]).arg(&cfg).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("lambda = 1/2"));
    assert!(text.contains("c_1"));
    assert!(text.contains("2.372453850"));
}

#[test]
fn malformed_config_is_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{not json").unwrap();
    let out = bin().args(["info", "--config"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Degenerate problem: constant q.
    std::fs::write(&path, r#"{"p": [[1,0]], "q": [[2,0]], "c": [0,0]}"#).unwrap();
    let out = bin().args(["info", "--config"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn vanishing_sector_constant_is_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    // c = -sqrt(pi)/2 kills the first sector constant.
    let cfg = write_gauss_config(dir.path(), -0.8862269254527580);
    let out = bin().args(["info", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("Baker domain likely"), "stderr: {err}");
}

#[test]
fn curve_csv_shape() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("curve.csv");
    let out = bin()
        .args(["curve", "--mu", "1", "--alpha", "1", "--ymax", "1000", "--out"])
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&out_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("y,gamma"));
    assert!(text.lines().count() > 100);
}

#[test]
fn zeros_csv_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_gauss_config(dir.path(), 0.3);
    let a = dir.path().join("zeros_a.csv");
    let b = dir.path().join("zeros_b.csv");
    for path in [&a, &b] {
        let out = bin()
            .args(["zeros", "--kmin", "5", "--kmax", "12", "--config"])
            .arg(&cfg)
            .arg("--out")
            .arg(path)
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let ta = std::fs::read(&a).unwrap();
    let tb = std::fs::read(&b).unwrap();
    assert_eq!(ta, tb);
    let text = String::from_utf8(ta).unwrap();
    assert!(text.lines().count() > 20);
    assert!(text.starts_with("j,k,v_re,v_im"));
}

#[test]
fn render_writes_deterministic_ppm() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_gauss_config(dir.path(), 0.3);
    let img_a = dir.path().join("a.ppm");
    let img_b = dir.path().join("b.ppm");
    for path in [&img_a, &img_b] {
        let out = bin()
            .args([
                "render",
                "--res",
                "48",
                "--budget",
                "60",
                "--window",
                "-2,-2,2,2",
                "--config",
            ])
            .arg(&cfg)
            .arg("--out")
            .arg(path)
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let a = std::fs::read(&img_a).unwrap();
    let b = std::fs::read(&img_b).unwrap();
    assert!(a.starts_with(b"P6\n48 48\n255\n"));
    assert_eq!(a, b);
    // PNG sibling is also produced.
    assert!(dir.path().join("a.png").exists());
}

#[test]
fn density_csv_deterministic_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_gauss_config(dir.path(), 0.3);
    let run = |seed: &str| {
        let out = bin()
            .args([
                "density", "--center", "0,0", "--radius", "2", "--n", "200", "--budget", "60",
                "--seed", seed, "--config",
            ])
            .arg(&cfg)
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    let a = run("11");
    let b = run("11");
    let c = run("12");
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn verify_gamma_passes() {
    let out = bin().args(["verify", "gamma"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
}

#[test]
fn unknown_verify_target_is_exit_2() {
    let out = bin().args(["verify", "nonsense"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
