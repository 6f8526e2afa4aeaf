use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use serde_json::Value;

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run(config: &Path, out: &Path, extra: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_khessian"))
        .arg("run")
        .arg(config)
        .arg("--out")
        .arg(out)
        .arg("--quiet")
        .args(extra)
        .stderr(Stdio::null())
        .status()
        .unwrap()
        .code()
        .unwrap()
}

fn inline(dir: &Path, text: &str) -> PathBuf {
    let p = dir.join("config.toml");
    std::fs::write(&p, text).unwrap();
    p
}

fn records(out: &Path) -> Vec<Value> {
    std::fs::read_to_string(out.join("report.jsonl"))
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn shipped_configs_exit_as_documented() {
    let expected = [
        ("bounds", 0),
        ("eigenvalue", 0),
        ("existence", 0),
        ("nonexistence", 0),
        ("uniqueness", 0),
        ("verify", 0),
        ("multiplicity", 4),
    ];
    for (name, code) in expected {
        let dir = tempfile::tempdir().unwrap();
        let got = run(&configs().join(format!("{name}.toml")), dir.path(), &[]);
        assert_eq!(got, code, "{name}");
        assert!(!records(dir.path()).is_empty(), "{name}");
    }
}

#[test]
fn report_records_carry_required_fields() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&configs().join("existence.toml"), dir.path(), &[]), 0);
    let recs = records(dir.path());
    for r in &recs {
        for key in ["kind", "values", "tolerances", "pass", "grid_size"] {
            assert!(r.get(key).is_some(), "missing {key} in {r}");
        }
    }
    let v = recs.iter().find(|r| r["kind"] == "verification").unwrap();
    assert_eq!(v["pass"], Value::Bool(true));
    assert_eq!(v["grid_size"], 1001);
}

#[test]
fn solution_csv_format() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        run(
            &configs().join("existence.toml"),
            dir.path(),
            &["--grid", "201"]
        ),
        0
    );
    let text = std::fs::read_to_string(dir.path().join("solution_1.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,v_1,v_2"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 201);
    for field in rows[7].split(',') {
        let mantissa = field.split('e').next().unwrap().replace(['-', '.'], "");
        assert_eq!(mantissa.len(), 17, "{field}");
    }
    assert!(rows[200].starts_with("1.0000000000000000e0,0.0000000000000000e0"));
}

#[test]
fn runs_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let cfg = configs().join("uniqueness.toml");
    assert_eq!(run(&cfg, a.path(), &["--grid", "301"]), 0);
    assert_eq!(run(&cfg, b.path(), &["--grid", "301"]), 0);
    let read = |d: &Path, f: &str| std::fs::read(d.join(f)).unwrap();
    assert_eq!(
        read(a.path(), "report.jsonl"),
        read(b.path(), "report.jsonl")
    );
    assert_eq!(
        read(a.path(), "solution_1.csv"),
        read(b.path(), "solution_1.csv")
    );
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    assert_eq!(run(&dir.path().join("missing.toml"), &out, &[]), 2);
    let bad = [
        "scenario = \"existence\"\nN = 2\nk = [1, 1]\ngamma = [0.5, 0.5]\nbogus = 1\n",
        "scenario = \"existence\"\nN = 2\nk = [1, 3]\ngamma = [0.5, 0.5]\n",
        "scenario = \"existence\"\nN = 2\nk = [1, 1]\n",
        "scenario = \"flying\"\nN = 2\nk = [1, 1]\ngamma = [0.5, 0.5]\n",
    ];
    for text in bad {
        assert_eq!(run(&inline(dir.path(), text), &out, &[]), 2, "{text}");
    }
    let ok = inline(
        dir.path(),
        "scenario = \"bounds\"\nN = 2\nk = [1, 1]\ngamma = [1.0, 1.0]\n",
    );
    assert_eq!(run(&ok, &out, &["--grid", "3"]), 2);
}

#[test]
fn unmet_hypotheses_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let critical = "scenario = \"existence\"\nN = 2\nk = [1, 1]\ngamma = [1.0, 1.0]\nM = 201\n";
    assert_eq!(run(&inline(dir.path(), critical), &out, &[]), 3);
    let growth = records(&out)
        .into_iter()
        .find(|r| r["kind"] == "growth")
        .unwrap();
    assert_eq!(growth["values"]["condition"], "None");

    let not_critical =
        "scenario = \"eigenvalue\"\nN = 2\nk = [1, 1]\ngamma = [0.5, 0.5]\nM = 201\n";
    assert_eq!(run(&inline(dir.path(), not_critical), &out, &[]), 3);
}

#[test]
fn failed_verification_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let rough = "scenario = \"existence\"\nN = 2\nk = [1, 1]\ngamma = [0.5, 0.5]\nM = 401\n";
    assert_eq!(run(&inline(dir.path(), rough), &out, &[]), 4);
    let v = records(&out)
        .into_iter()
        .find(|r| r["kind"] == "verification")
        .unwrap();
    assert_eq!(v["pass"], Value::Bool(false));
}

#[test]
fn verify_scenario_reads_a_csv() {
    let dir = tempfile::tempdir().unwrap();
    let solved = dir.path().join("solved");
    assert_eq!(
        run(
            &configs().join("existence.toml"),
            &solved,
            &["--grid", "401"]
        ),
        0
    );
    let text = "scenario = \"verify\"\nN = 3\nk = [2, 2]\ngamma = [1.0, 1.0]\nsolution_csv = \"solved/solution_1.csv\"\n";
    let out = dir.path().join("out");
    assert_eq!(run(&inline(dir.path(), text), &out, &[]), 0);
    let v = records(&out)
        .into_iter()
        .find(|r| r["kind"] == "verification")
        .unwrap();
    assert_eq!(v["grid_size"], 401);
}
