use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pathramsey"))
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin().args(args).current_dir(dir).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn graphs(dir: &TempDir) {
    write(dir, "k3.edges", "3 3\n0 1\n0 2\n1 2\n");
    write(dir, "p3.edges", "3 2\n0 1\n1 2\n");
    write(dir, "p4.edges", "4 3\n0 1\n1 2\n2 3\n");
    write(dir, "k2.edges", "2 1\n0 1\n");
}

#[test]
fn arrow_k3_p3_holds() {
    let dir = TempDir::new().unwrap();
    graphs(&dir);
    let out = run(&["arrow", "--host", "k3.edges", "--pattern", "p3.edges", "--colours", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["arrows"], true);
}

#[test]
fn arrow_p4_p3_fails_with_exit_one() {
    let dir = TempDir::new().unwrap();
    graphs(&dir);
    let out = run(&["arrow", "--host", "p4.edges", "--pattern", "p3.edges", "--colours", "2"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["arrows"], false);
    assert_eq!(v["counterexample_revalidated"], true);
}

#[test]
fn arrow_reads_config_and_flags_override() {
    let dir = TempDir::new().unwrap();
    graphs(&dir);
    write(&dir, "a.json", r#"{"host": "p4.edges", "pattern": "p3.edges", "colours": 2}"#);
    let out = run(&["arrow", "--config", "a.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["arrow", "--config", "a.json", "--host", "k3.edges"], dir.path());
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn constants_chain_matches() {
    let dir = TempDir::new().unwrap();
    let out = run(
        &["constants", "--k", "1", "--s", "2", "--r", "1", "--t", "2", "--quad", "3,950400,1,0.05", "--d0", "1"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["R"], 2);
    assert_eq!(v["delta"], "1/40");
}

#[test]
fn gen_then_verify_passes() {
    let dir = TempDir::new().unwrap();
    let cfg = configs().join("class_p_toy.json");
    let cfg = cfg.to_str().unwrap();
    let out = run(&["gen", "--config", cfg, "--out", "g.edges", "--log", "log.json"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.path().join("log.json").exists());
    let out = run(&["verify-p", "--config", cfg, "--graph", "g.edges", "--exhaustive"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn step_is_byte_identical_and_replays() {
    let dir = TempDir::new().unwrap();
    let cfg = configs().join("step_toy_adversarial.json");
    let cfg = cfg.to_str().unwrap();
    for name in ["a.json", "b.json"] {
        let out = run(&["step", "--config", cfg, "--seed", "11", "--out", name], dir.path());
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let a = fs::read(dir.path().join("a.json")).unwrap();
    assert_eq!(a, fs::read(dir.path().join("b.json")).unwrap());
    let report: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(report["schemaVersion"], 1);
    assert_eq!(report["outcome"]["kind"], "reducedColours");
    let out = run(&["report", "--input", "a.json", "--replay"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("replay: identical"), "{text}");
}

#[test]
fn step_preset_mono_finds_power() {
    let dir = TempDir::new().unwrap();
    let out = run(&["step", "--preset", "toy-mono"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["outcome"]["kind"], "monoPowerFound");
}

#[test]
fn malformed_config_names_the_field() {
    let dir = TempDir::new().unwrap();
    let text = fs::read_to_string(configs().join("step_toy_adversarial.json")).unwrap();
    write(&dir, "bad.json", &text.replace("\"lll_resamples_per_edge\"", "\"lll_resamples\""));
    let out = run(&["step", "--config", "bad.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("budgets.lll_resamples"), "{err}");

    write(&dir, "zero.json", &text.replace("\"segments\": 6", "\"segments\": 0"));
    let out = run(&["step", "--config", "zero.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("`segments`"));
}

#[test]
fn missing_argument_is_an_error() {
    let dir = TempDir::new().unwrap();
    graphs(&dir);
    let out = run(&["power", "--graph", "p4.edges"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("`k`"));
}

#[test]
fn power_and_blowups() {
    let dir = TempDir::new().unwrap();
    graphs(&dir);
    let out = run(&["power", "--graph", "p4.edges", "--k", "2"], dir.path());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "4 5\n0 1\n0 2\n1 2\n1 3\n2 3\n");
    let out = run(&["blowup", "--graph", "k2.edges", "--t", "2", "--sheared"], dir.path());
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("4 4\n"));
    let out = run(&["blowup", "--graph", "k2.edges", "--t", "2"], dir.path());
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("4 6\n"));
}

#[test]
fn partition_and_longpath() {
    let dir = TempDir::new().unwrap();
    graphs(&dir);
    let out = run(&["partition", "--graph", "p4.edges", "--ell", "1"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["valid"], true);

    let out = run(&["longpath", "--graph", "p4.edges", "--target", "4", "--out", "path.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["segments", "--graph", "p4.edges", "--path", "path.json", "--t", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["auxiliary"]["edges"].as_array().unwrap().len(), 1);

    let out = run(&["longpath", "--graph", "k3.edges", "--target", "4"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["found"], false);
}

#[test]
fn embed_base_on_a_cycle() {
    let dir = TempDir::new().unwrap();
    let edges: String = (0..10).map(|i| format!("{} {}\n", i.min((i + 1) % 10), i.max((i + 1) % 10))).collect();
    let mut lines: Vec<&str> = edges.lines().collect();
    lines.sort_by_key(|l| l.split(' ').map(|x| x.parse::<usize>().unwrap()).collect::<Vec<_>>());
    write(&dir, "c10.edges", &format!("10 10\n{}\n", lines.join("\n")));
    let out = run(&["embed-base", "--graph", "c10.edges", "--k", "2", "--n", "8", "--seed", "4"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["valid"], true);
    assert_eq!(v["embedding"].as_object().unwrap().len(), 8);
}

#[test]
fn lll_embed_from_config() {
    let dir = TempDir::new().unwrap();
    let inst = configs().join("lll_cycle.json");
    write(&dir, "c.json", &format!("{{\"instance\": {:?}}}", inst.to_str().unwrap()));
    let out = run(&["lll-embed", "--config", "c.json", "--seed", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["outcome"]["embedding"].as_object().unwrap().len(), 5);
    let out = run(&["lll-embed", "--config", "c.json", "--max-resamples", "0"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn edge_budget_single_edge() {
    let dir = TempDir::new().unwrap();
    graphs(&dir);
    let out = run(&["edge-budget", "--graph", "k2.edges", "--r", "1", "--t", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["formula"], 4);
    assert_eq!(v["enumerated"], 4);
}
