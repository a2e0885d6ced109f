use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_requilibrium"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

fn example(dir: &TempDir, args: &[&str], name: &str) -> (String, serde_json::Value) {
    let path = dir.path().join(name);
    let p = path.to_str().unwrap();
    let mut all = vec!["example"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--output", p]);
    let o = run(&all);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let json = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    (p.to_owned(), json)
}

#[test]
fn det_one_by_one() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "a.json", r#"{"r":2,"d":1,"q":2,"kind":"configuration","entries":[{"idx":[1,2],"vec":["7"]}]}"#);
    let o = run(&["det", "--input", &f]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "det = 7\nNONZERO\n");
}

#[test]
fn det_matrix_dump_is_labeled() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "a.json", r#"{"r":2,"d":1,"q":2,"kind":"configuration","entries":[{"idx":[1,2],"vec":["7"]}]}"#);
    let o = run(&["det", "--input", &f, "--matrix"]);
    assert_eq!(stdout(&o), "matrix 1x1\ncolumns: {1,2}\nE{1}[1]: 7\ndet = 7\nNONZERO\n");
}

#[test]
fn det_of_cross_product_example_is_zero() {
    let dir = TempDir::new().unwrap();
    let (p, json) = example(&dir, &["cross-product", "--seed", "1"], "cp.json");
    assert_eq!((json["q"].as_u64(), json["r"].as_u64(), json["d"].as_u64()), (Some(9), Some(3), Some(3)));
    let o = run(&["det", "--input", &p]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "det = 0\nZERO\n");
}

#[test]
fn det_exit_codes() {
    let dir = TempDir::new().unwrap();
    let wrong_q = write(&dir, "q.json", r#"{"r":2,"d":1,"q":3,"kind":"configuration","entries":[]}"#);
    assert_eq!(code(&run(&["det", "--input", &wrong_q])), 3);
    let malformed = write(&dir, "m.json", r#"{"r":2,"d":1,"q":2,"kind":"configuration","entries":[{"idx":[1,2],"vec":["1/0"]}]}"#);
    assert_eq!(code(&run(&["det", "--input", &malformed])), 2);
    let not_json = write(&dir, "n.json", "{");
    assert_eq!(code(&run(&["det", "--input", &not_json])), 2);
    assert_eq!(code(&run(&["det", "--input", "/nonexistent/file.json"])), 2);
    assert_eq!(code(&run(&["det"])), 2);
}

#[test]
fn examples_have_the_advertised_shapes() {
    let dir = TempDir::new().unwrap();
    let (_, diff) = example(&dir, &["differences", "--d", "2", "--seed", "1"], "d.json");
    assert_eq!((diff["q"].as_u64(), diff["r"].as_u64()), (Some(4), Some(2)));
    assert_eq!(diff["kind"], "configuration");
    let (_, wedge) = example(&dir, &["wedge", "--s", "3", "--seed", "1"], "w.json");
    assert_eq!((wedge["d"].as_u64(), wedge["q"].as_u64()), (Some(3), Some(9)));
    assert_eq!(code(&run(&["example", "wedge", "--s", "2"])), 2);
    assert_eq!(code(&run(&["example", "differences", "--d", "0"])), 2);
    assert_eq!(code(&run(&["example", "cross-product", "--bound", "0"])), 2);
}

#[test]
fn examples_are_reproducible_from_seed() {
    let a = run(&["example", "differences", "--d", "3", "--seed", "9"]);
    let b = run(&["example", "differences", "--d", "3", "--seed", "9"]);
    let c = run(&["example", "differences", "--d", "3", "--seed", "10"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn difference_configurations_have_zero_det() {
    let dir = TempDir::new().unwrap();
    for d in ["2", "3"] {
        let (p, _) = example(&dir, &["differences", "--d", d, "--seed", "4"], "d.json");
        assert_eq!(stdout(&run(&["det", "--input", &p])), "det = 0\nZERO\n");
    }
}

#[test]
fn solve_overdetermined_is_solvable() {
    let dir = TempDir::new().unwrap();
    let entries: Vec<String> = (1..=5)
        .flat_map(|j| (1..j).map(move |i| (i, j)))
        .map(|(i, j)| format!(r#"{{"idx":[{i},{j}],"vec":["{}","{}"]}}"#, i * j % 5 + 1, (i + 2 * j) % 7))
        .collect();
    let f = write(&dir, "f.json", &format!(r#"{{"r":2,"d":2,"q":5,"kind":"forces","entries":[{}]}}"#, entries.join(",")));
    let o = run(&["solve", "--input", &f]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("SOLVABLE\n"), "{text}");
    assert!(text.contains("residual = 0\n"));
    assert!(!text.contains("det ="), "q != rd has no determinant");
}

#[test]
fn solve_stored_witness_is_unsolvable() {
    let o = run(&["solve", "--input", fixture("witness_r2_d2_forces.json").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "UNSOLVABLE\ndet = 5940\nconsistency: CONSISTENT\n");
    let o = run(&["det", "--input", fixture("witness_r2_d2_forces.json").to_str().unwrap()]);
    assert_eq!(stdout(&o), "det = 5940\nNONZERO\n");
}

#[test]
fn solve_zero_forces_returns_a_basis_lambda() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "z.json", r#"{"r":2,"d":2,"q":4,"kind":"forces","entries":[]}"#);
    let o = run(&["solve", "--input", &f]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "SOLVABLE\nlambda:\n  {1,2} = 1\nresidual = 0\ndet = 0\nconsistency: CONSISTENT\n");
}

#[test]
fn solve_rejects_configuration_files() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c.json", r#"{"r":2,"d":1,"q":2,"kind":"configuration","entries":[]}"#);
    assert_eq!(code(&run(&["solve", "--input", &f])), 2);
}

#[test]
fn witness_search_parallel_matches_sequential() {
    let args = ["witness-search", "--r", "2", "--d", "3", "--trials", "12", "--seed", "7"];
    let seq = run(&args);
    let mut par_args = args.to_vec();
    par_args.push("--parallel");
    let par = run(&par_args);
    assert_eq!(code(&seq), 0);
    assert_eq!(seq.stdout, par.stdout);
    let report: serde_json::Value = serde_json::from_slice(&seq.stdout).unwrap();
    assert_eq!(report["trials"], 12);
    assert!(report["nonzero_count"].as_u64().unwrap() >= 1);
    let w = &report["first_witness"];
    assert_ne!(w["det"], "0");
    assert_eq!(w["configuration"]["q"], 6);
}

#[test]
fn witness_report_reproduces_through_det() {
    let dir = TempDir::new().unwrap();
    let o = run(&["witness-search", "--r", "2", "--d", "2", "--trials", "3", "--seed", "1"]);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let w = &report["first_witness"];
    let f = write(&dir, "w.json", &w["configuration"].to_string());
    let det = stdout(&run(&["det", "--input", &f]));
    assert_eq!(det, format!("det = {}\nNONZERO\n", w["det"].as_str().unwrap()));
}

#[test]
fn witness_search_rejects_bad_parameters() {
    assert_eq!(code(&run(&["witness-search", "--r", "2", "--d", "2", "--trials", "0"])), 2);
    assert_eq!(code(&run(&["witness-search", "--r", "2", "--d", "2", "--bound", "0"])), 2);
    assert_eq!(code(&run(&["witness-search", "--r", "0", "--d", "2"])), 2);
}

#[test]
fn verify_relations_on_examples() {
    let dir = TempDir::new().unwrap();
    let (p, _) = example(&dir, &["cross-product", "--seed", "2"], "cp.json");
    let o = run(&["verify-relations", "--input", &p, "--trials", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "structural: HOLD\nrelations: HOLD (3 trials)\n");
    let (p, _) = example(&dir, &["differences", "--d", "3"], "d.json");
    let o = run(&["verify-relations", "--input", &p]);
    assert_eq!(stdout(&o), "relations: HOLD (10 trials)\n");
}

#[test]
fn selfcheck_passes_and_lists_trial_counts() {
    let o = run(&["selfcheck"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    for p in ["vanishing", "dependence relations", "multilinearity", "theorem consistency"] {
        for rd in ["r=2 d=2", "r=3 d=2"] {
            assert!(text.contains(&format!("PASS  {p} {rd} (20 trials)")), "{p} {rd} missing:\n{text}");
        }
    }
    assert!(text.ends_with("selfcheck: PASS\n"));
    assert_eq!(run(&["selfcheck", "--parallel"]).stdout, o.stdout);
}

#[test]
fn selfcheck_detects_corrupted_signs() {
    let seq = run(&["selfcheck", "--corrupt-signs"]);
    assert_eq!(code(&seq), 1);
    let text = stdout(&seq);
    assert!(text.contains("FAIL  dependence relations r=2 d=2"), "{text}");
    assert!(text.contains("FAIL  dependence relations r=3 d=2"), "{text}");
    assert_eq!(run(&["selfcheck", "--corrupt-signs", "--parallel"]).stdout, seq.stdout);
}

#[test]
fn round_trip_through_example_output_is_idempotent() {
    let dir = TempDir::new().unwrap();
    let (p, _) = example(&dir, &["wedge", "--s", "3", "--seed", "5"], "w.json");
    let text = std::fs::read_to_string(&p).unwrap();
    let parsed = requilibrium_cli::tensor_file::TensorFile::from_json(&text).unwrap();
    let canon = requilibrium_cli::tensor_file::TensorFile::from_tensor(&parsed.validate().unwrap());
    assert_eq!(canon.to_json(), text);
}
