use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superharm"))
        .args(args)
        .output()
        .expect("spawn superharm")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn groups_list_shows_catalog() {
    let o = run(&["groups", "list"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("B2\tn=2\t|G|=8\tdegrees=[2, 4]"), "{out}");
    assert!(out.contains("G-3-1-2\tn=2\t|G|=18\tdegrees=[3, 6]"), "{out}");
}

#[test]
fn wallach_passes() {
    let o = run(&["verify", "--theorem", "wallach", "--group", "S3-standard"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("status:     pass"));
    assert!(out.contains("t^2 + q*t + q^2*t + q^3"), "{out}");
}

#[test]
fn molien_b2_invariants() {
    let o = run(&[
        "molien", "--group", "B2", "--char", "trivial", "--sym", "V", "--ext", "Vdual", "--qmax", "4", "--tmax", "2",
        "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    // (1 + q t)(1 + q^3 t) / (1 - q^2)(1 - q^4)
    assert_eq!(stdout(&o), "q,t0,t1,t2\n0,1,0,0\n1,0,1,0\n2,1,0,0\n3,0,2,0\n4,2,0,1\n");
}

#[test]
fn not_applicable_exits_two() {
    let o = run(&["verify", "--theorem", "alt-harmonics", "--group", "S3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("not-applicable"));
}

#[test]
fn unknown_names_exit_two_with_options() {
    let o = run(&["verify", "--theorem", "nope", "--group", "B2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("alt-harmonics-hilb"));
    let o = run(&["molien", "--group", "Q7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("I2-<m>"));
    let o = run(&["basis", "--group", "B2", "--which", "alt-upstairs", "--bidegree", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_report_is_deterministic() {
    let args = ["verify", "--theorem", "property-suite", "--group", "B2", "--seed", "7", "--iterations", "5", "--format", "json"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["seed"], 7);
    assert!(v.get("elapsed_ms").is_none());
}

#[test]
fn harmonics_basis_for_b2() {
    let o = run(&["basis", "--group", "B2", "--which", "harmonics-det", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let bidegrees: Vec<_> = v["elements"].as_array().unwrap().iter().map(|e| e["bidegree"].clone()).collect();
    assert_eq!(bidegrees, vec![serde_json::json!([0, 2]), serde_json::json!([1, 1]), serde_json::json!([3, 1]), serde_json::json!([4, 0])]);
}

#[test]
fn vandermonde_reports_scalar() {
    let o = run(&["vandermonde", "--group", "S3-power"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("c = 6;"));
}

#[test]
fn groups_check_reads_spec_file() {
    let mut file = std::env::temp_dir();
    file.push(format!("superharm-spec-{}.json", std::process::id()));
    let spec = r#"{"label": "S2-file", "n": 2, "conductor": 1,
        "generators": [[["0","1"],["1","0"]]], "invariants": ["x1 + x2", "x1^2 + x2^2"]}"#;
    std::fs::File::create(&file).unwrap().write_all(spec.as_bytes()).unwrap();
    let o = run(&["groups", "check", file.to_str().unwrap()]);
    std::fs::remove_file(&file).ok();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("ok\tS2-file\tn=2\t|G|=2"));
}

#[test]
fn thread_cap_is_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_superharm"))
        .args(["groups", "list"])
        .env("SUPERHARM_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_superharm"))
        .args(["verify", "--theorem", "alt-hilb", "--group", "B2"])
        .env("SUPERHARM_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}
