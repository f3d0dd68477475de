use std::path::PathBuf;
use std::process::Command as Proc;

use k3kit::cli::{render, run, run_on_text, Command, Envelope, Format, JobSpec, SCHEMA};
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn job(cmd: Command, file: &str) -> JobSpec {
    let mut j = JobSpec::new(cmd, data(file));
    j.ample = if cmd == Command::Cone { Some(vec![-1, 1]) } else { None };
    j
}

const CASES: &[(Command, &str)] = &[
    (Command::Lattice, "k3.json"),
    (Command::Lattice, "he7e7.json"),
    (Command::Dform, "he7e7.json"),
    (Command::Overlattices, "he7e7.json"),
    (Command::Embed, "saturation.json"),
    (Command::Weierstrass, "rank18.json"),
    (Command::Weierstrass, "rank19.json"),
    (Command::Cone, "nodal_quartic.json"),
    (Command::Fibration, "p1p2.json"),
];

fn leaves(path: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                leaves(&p, x, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in items.iter().enumerate() {
                leaves(&format!("{path}[{i}]"), x, out);
            }
        }
        Value::String(s) => out.push((path.into(), s.clone())),
        other => out.push((path.into(), other.to_string())),
    }
}

#[test]
fn json_reports_round_trip() {
    for &(cmd, file) in CASES {
        let (code, out) = run(&job(cmd, file));
        assert_eq!(code, 0, "{file}: {out}");
        let env: Envelope = serde_json::from_str(&out).unwrap();
        assert_eq!(env.schema, SCHEMA);
        assert_eq!(env.command, cmd);
        assert_eq!(render(&env, Format::Json), out);
    }
}

#[test]
fn reports_are_deterministic() {
    for &(cmd, file) in CASES {
        let a = run(&job(cmd, file));
        let b = run(&job(cmd, file));
        assert_eq!(a, b);
    }
}

#[test]
fn text_lists_every_json_leaf() {
    for &(cmd, file) in CASES {
        let (_, json) = run(&job(cmd, file));
        let mut tj = job(cmd, file);
        tj.format = Format::Text;
        let (_, text) = run(&tj);
        let v: Value = serde_json::from_str(&json).unwrap();
        let mut want = Vec::new();
        leaves("", &v, &mut want);
        for (path, value) in want {
            let line = format!("{path}: {value}");
            let prefix = format!("{path}: ");
            // scalar leaves show up verbatim, flat arrays show up as one line under their parent
            let covered = text.lines().any(|l| l == line)
                || text.lines().any(|l| {
                    let parent = path.rsplit_once('[').map(|(p, _)| p).unwrap_or(&path);
                    l.starts_with(&format!("{parent}: ["))
                });
            assert!(covered, "{file}: missing {prefix}{value} in\n{text}");
        }
    }
}

#[test]
fn rationals_are_p_over_q_strings() {
    let (_, out) = run(&job(Command::Dform, "he7e7.json"));
    let v: Value = serde_json::from_str(&out).unwrap();
    let qs = v["result"]["q_values"].as_array().unwrap();
    let shown: Vec<&str> = qs.iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(shown, ["1/2", "1/2", "5/4"]);
}

#[test]
fn exit_codes() {
    let (code, out) = run(&job(Command::Weierstrass, "nonminimal.json"));
    assert_eq!(code, 3);
    assert!(out.contains("NonMinimal"));
    let (code, _) = run(&JobSpec::new(Command::Cone, data("nodal_quartic.json")));
    assert_eq!(code, 2);
    let (code, _) = run(&JobSpec::new(Command::Lattice, data("does_not_exist.json")));
    assert_eq!(code, 2);
    let (code, _) = run_on_text(&JobSpec::new(Command::Lattice, "x"), "{not json");
    assert_eq!(code, 2);
    let (code, out) = run_on_text(&JobSpec::new(Command::Weierstrass, "x"), r#"{"d": 1, "alpha": ["1"], "beta": ["0"]}"#);
    assert_eq!(code, 2, "{out}");
}

#[test]
fn binary_runs_end_to_end() {
    let exe = env!("CARGO_BIN_EXE_k3kit");
    let out = Proc::new(exe).args(["lattice", "--in"]).arg(data("k3.json")).args(["--format", "json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["rank"], 22);
    assert_eq!(v["result"]["signature"], serde_json::json!([3, 19]));

    let out = Proc::new(exe).args(["cone", "--in"]).arg(data("fiber_section.json")).args(["--ample", "3,1", "--format", "json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["walls"], serde_json::json!([[0, 1]]));
    assert_eq!(v["result"]["automorphisms"], "finite");

    let out = Proc::new(exe).args(["weierstrass", "--in"]).arg(data("nonminimal.json")).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Proc::new(exe).args(["lattice", "--in"]).arg(data("k3.json")).args(["--enum-bound", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
