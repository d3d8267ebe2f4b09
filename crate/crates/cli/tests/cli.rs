use std::path::Path;
use std::process::{Command, Output};

fn mkq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mkq"))
        .args(args)
        .env_remove("MKQ_OUT_DIR")
        .output()
        .expect("run mkq")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

const SMALL_CONFIG: &str = r#"{
    "instances": [{"path": "inst.json"}, {"scenario": 2}],
    "solvers": [
        {"kind": "ws_init_qaoa", "layers": [1], "shots": 300, "optimizer": {"max_iter": 20}},
        {"kind": "sa", "anneal": {"num_reads": 40, "sweeps": 40}}
    ],
    "repeats": 2,
    "seed": 5
}"#;

fn write_config(dir: &Path) -> String {
    let inst = mkq(&["generate", "--items", "3", "--knapsacks", "1", "--seed", "4", "--out", dir.join("inst.json").to_str().unwrap()]);
    assert!(inst.status.success());
    let path = dir.join("bench.json");
    std::fs::write(&path, SMALL_CONFIG).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn generate_scenario_and_random() {
    let v = stdout_json(&mkq(&["generate", "--scenario", "3"]));
    assert_eq!(v["weights"].as_array().unwrap().len(), 5);
    let a = mkq(&["generate", "--items", "5", "--knapsacks", "2", "--weights", "2:4", "--seed", "8"]);
    let b = mkq(&["generate", "--items", "5", "--knapsacks", "2", "--weights", "2:4", "--seed", "8"]);
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    assert!(v["weights"].as_array().unwrap().iter().all(|w| (2..=4).contains(&w.as_u64().unwrap())));
}

#[test]
fn solve_reports_a_run() {
    let v = stdout_json(&mkq(&["solve", "--scenario", "1", "--solver", "sa", "--seed", "3"]));
    assert_eq!(v["qubits"], 12);
    assert_eq!(v["v_opt"], 22);
    assert_eq!(v["best_bitstring"].as_str().unwrap().len(), 12);
    let v = stdout_json(&mkq(&["solve", "--scenario", "2", "--solver", "ws_qaoa", "--shots", "500"]));
    assert_eq!(v["p"], 1);
    assert!(v["o90"].as_f64().is_some());
}

#[test]
fn bench_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path());
    let (o1, o2) = (dir.path().join("a"), dir.path().join("b"));
    for o in [&o1, &o2] {
        let out = mkq(&["bench", "--config", &cfg, "--out", o.to_str().unwrap(), "--workers", "2"]);
        assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    }
    let r1 = std::fs::read(o1.join("results.csv")).unwrap();
    assert_eq!(r1, std::fs::read(o2.join("results.csv")).unwrap());
    assert!(o1.join("timings.csv").exists());
    assert!(o1.join("series").is_dir());

    let report = mkq(&["report", "--runs", o1.join("runs.json").to_str().unwrap()]);
    assert!(report.status.success());
    assert_eq!(report.stdout, r1);

    let stdout = mkq(&["bench", "--config", &cfg, "--solver", "sa"]);
    assert!(stdout.status.success());
    let text = String::from_utf8(stdout.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().skip(1).all(|l| l.contains(",sa,")));
}

#[test]
fn bad_input_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"instances": [{"scenario": 1}], "solvers": [], "bogus": 1}"#).unwrap();
    assert_eq!(mkq(&["bench", "--config", cfg.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(mkq(&["bench", "--config", "/nonexistent/cfg.json"]).status.code(), Some(1));
    assert_eq!(mkq(&["solve", "--scenario", "9"]).status.code(), Some(1));
    assert_eq!(mkq(&["solve", "--scenario", "1", "--solver", "nope"]).status.code(), Some(1));
    assert_eq!(mkq(&["--help"]).status.code(), Some(0));
}

#[test]
fn estimate_runtime_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sched.csv");
    let v = stdout_json(&mkq(&[
        "estimate-runtime",
        "--scenario",
        "1",
        "--t-meas",
        "0",
        "--t-opt",
        "0",
        "--schedule-csv",
        csv.to_str().unwrap(),
    ]));
    let t_circ = v["t_circ_us"].as_f64().unwrap();
    let total = v["total_runtime_s"].as_f64().unwrap();
    assert!((total - 80.0 * 10_000.0 * t_circ * 1e-6).abs() < 1e-6 * total);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("gate,qubits,start_ns,duration_ns"));
    assert_eq!(text.lines().count() as u64, v["native_gates"].as_u64().unwrap() + 1);
    assert_eq!(mkq(&["estimate-runtime", "--scenario", "1", "--solver", "sa"]).status.code(), Some(1));
}
