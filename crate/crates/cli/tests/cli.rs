use std::fs;
use std::path::Path;
use std::process::Command;

fn usk() -> Command {
    Command::new(env!("CARGO_BIN_EXE_usk"))
}

const SMALL: &str = r#"
[[scenario]]
preset = "mm1-known-1"
validation_size = 100

[scenario.ga]
population = 12
generations = 6
polish_steps = 2
"#;

fn write_config(dir: &Path, text: &str) -> std::path::PathBuf {
    let p = dir.join("cfg.toml");
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn run_writes_outputs_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let mut outputs = Vec::new();
    for name in ["a", "b"] {
        let out = dir.path().join(name);
        let status = usk()
            .args(["run", "--reps", "2", "--seed", "9", "--jobs", "2", "--config"])
            .arg(&cfg)
            .arg("--out")
            .arg(&out)
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
        outputs.push(out);
    }
    for file in ["results.csv", "summary.csv", "metadata.json"] {
        let a = fs::read(outputs[0].join(file)).unwrap();
        assert_eq!(a, fs::read(outputs[1].join(file)).unwrap(), "{file} differs");
    }
    let results = fs::read_to_string(outputs[0].join("results.csv")).unwrap();
    assert_eq!(results.lines().count(), 1 + 2 * 2);
    assert!(results.starts_with("scenario,surrogate,rep,seed,status,ermse,nmae,basis_size,sigma_vs,error\n"));
    assert!(outputs[0].join("timings.csv").exists());
}

#[test]
fn summarize_rebuilds_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let out = dir.path().join("o");
    let ok = usk().args(["run", "--reps", "1", "--config"]).arg(&cfg).arg("--out").arg(&out).status().unwrap();
    assert!(ok.success());
    let before = fs::read(out.join("summary.csv")).unwrap();
    fs::remove_file(out.join("summary.csv")).unwrap();
    let st = usk().args(["summarize", "--in"]).arg(&out).status().unwrap();
    assert!(st.success());
    assert_eq!(before, fs::read(out.join("summary.csv")).unwrap());
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "[[scenario]]\npreset = \"nope-1\"\n");
    let st = usk().args(["run", "--config"]).arg(&cfg).arg("--out").arg(dir.path().join("o")).status().unwrap();
    assert_eq!(st.code(), Some(2));
    let st = usk().args(["run", "--config"]).arg(dir.path().join("missing.toml")).status().unwrap();
    assert_eq!(st.code(), Some(2));
}

#[test]
fn partial_failure_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    // 39 full-PCE terms cannot be calibrated by 32 points
    let cfg = write_config(
        dir.path(),
        "[[scenario]]\npreset = \"eggbox-1\"\nfull_degree = 9\nvalidation_size = 50\n[scenario.ga]\npopulation = 8\ngenerations = 3\npolish_steps = 1\n",
    );
    let st = usk().args(["run", "--reps", "1", "--config"]).arg(&cfg).arg("--out").arg(dir.path().join("o")).status().unwrap();
    assert_eq!(st.code(), Some(1));
}

#[test]
fn lists_presets() {
    let out = usk().arg("list-scenarios").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 13);
    assert!(text.contains("ishigami-3"));
}
