use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_qaoadla"));
    c.env_remove("QAOADLA_THREADS");
    c
}

fn fixture(name: &str) -> String {
    format!("{}/fixtures/graphs/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn validator() -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let schema: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn assert_valid(out: &Output) -> serde_json::Value {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    let val = validator();
    let errors: Vec<String> = val.iter_errors(&v).map(|e| format!("{e} at {}", e.instance_path())).collect();
    assert!(errors.is_empty(), "schema errors: {errors:#?}");
    assert_eq!(v["schema_version"], "qaoadla-report/1.0");
    v
}

#[test]
fn every_command_matches_schema() {
    let house = fixture("house");
    let path4 = fixture("path4");
    let v = assert_valid(&run(&["classify", &house, "--verify"]));
    assert_eq!(v["dim_free"], 510);
    let v = assert_valid(&run(&["report", &path4]));
    assert_eq!(v["ansatze"].as_array().unwrap().len(), 4);
    let v = assert_valid(&run(&["report", &house, "--ansatz", "standard", "--extra-z", "1"]));
    assert!(v.get("hierarchy").is_none());
    assert_valid(&run(&["survey", "--n", "6"]));
    let v = assert_valid(&run(&["gradvar", &house, "--samples", "10"]));
    assert!(v["rows"][0]["deep_variance"].is_number());
    assert_valid(&run(&["gradvar", "--ensemble", "complete", "--n-min", "3", "--n-max", "5", "--samples", "10", "--normalize"]));
    assert_valid(&run(&["saturate", &fixture("spider")]));
    assert_valid(&run(&["characters", &fixture("complete5")]));
    assert_valid(&run(&["characters", &house]));
    let v = assert_valid(&run(&["verify-free-families", "--n-max", "4"]));
    assert_eq!(v["failures"], 0);
}

#[test]
fn schema_rejects_corrupted_output() {
    let out = run(&["report", &fixture("path4"), "--ansatz", "free"]);
    let good: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let val = validator();
    assert!(val.is_valid(&good));
    let mut bad = good.clone();
    bad["schema_version"] = "qaoadla-report/0.9".into();
    assert!(!val.is_valid(&bad));
    let mut bad = good.clone();
    bad["ansatze"][0]["blocks"][0]["half"] = "sideways".into();
    assert!(!val.is_valid(&bad));
    let mut bad = good;
    bad["ansatze"][0].as_object_mut().unwrap().remove("dim_commutant");
    assert!(!val.is_valid(&bad));
}

#[test]
fn input_forms() {
    let a = run(&["classify", "DyK"]);
    let b = run(&["classify", "--format", "json", r#"{"n":5,"edges":[[1,2],[1,3],[2,3],[2,4],[3,5],[4,5]]}"#]);
    let c = run(&["classify", &fixture("house")]);
    let mut child = bin().args(["classify", "-", "--format", "graph6"]).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(b"DyK\n").unwrap();
    let d = child.wait_with_output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert_eq!(a.stdout, d.stdout);
}

#[test]
fn input_errors_exit_2() {
    for args in [
        vec!["classify", "!!!"],
        vec!["classify", "--format", "json", "DyK"],
        vec!["report", &fixture("disconnected4"), "--ansatz", "standard"],
        vec!["report", "G~~~~{"],
        vec!["report", "DyK", "--ansatz", "qaoa"],
        vec!["report", "DyK", "--extra-z", "9"],
        vec!["survey", "--n", "9"],
        vec!["gradvar"],
        vec!["gradvar", "--ensemble", "3regular", "--n-min", "5", "--n-max", "5"],
        vec!["nonsense"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty(), "{args:?} wrote to stdout");
    }
    let hint = run(&["report", "G~~~~{"]);
    assert!(String::from_utf8_lossy(&hint.stderr).contains("--allow-n8"));
    let bad_env = bin().args(["classify", "DyK"]).env("QAOADLA_THREADS", "many").output().unwrap();
    assert_eq!(bad_env.status.code(), Some(2));
}

#[test]
fn gradvar_csv_and_out_file() {
    let dir = std::env::temp_dir().join(format!("qaoadla-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("g.csv");
    let json = dir.join("g.json");
    let base = ["gradvar", "--ensemble", "complete", "--n-min", "4", "--n-max", "5", "--samples", "12"];
    let out = bin().args(base).arg("--out").arg(&csv).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,graph6,edges,params,mean_variance,log2_mean_variance,deep_variance,deep_variance_bound");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("4,C~,6,10,"));
    let out = bin().args(base).arg("--out").arg(&json).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for cmd in ["classify", "report", "survey", "gradvar", "saturate", "characters", "verify-free-families"] {
        assert!(text.contains(cmd), "help lists {cmd}");
    }
}
