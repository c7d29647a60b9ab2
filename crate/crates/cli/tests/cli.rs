use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chaninfo")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn field(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no {key} in\n{text}"))
        .parse()
        .unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn compute_identity_and_dephasing() {
    let o = run(&["compute", "--channel", p(&data("identity_qubit.json")), "--state", p(&data("maximally_mixed_qubit.json"))]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("# command: compute\n"));
    assert!((field(&out, "mutual") - 1.386294).abs() < 1e-6);

    let o = run(&["compute", "--channel", p(&data("dephasing_0.25.json")), "--state", p(&data("maximally_mixed_qubit.json"))]);
    assert!((field(&stdout(&o), "coherent") - 0.130812).abs() < 1e-6);
    assert!(field(&stdout(&o), "theorem1_residual").abs() < 1e-10);
}

#[test]
fn malformed_kraus_names_the_field() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"dim_in": 2, "dim_out": 2, "kraus": [[[1, 0], [0]]]}"#).unwrap();
    let o = run(&["compute", "--channel", p(&bad), "--state", p(&data("maximally_mixed_qubit.json"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("kraus"), "{}", stderr(&o));
}

#[test]
fn non_trace_preserving_channel_reports_the_residual() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("lossy.json");
    std::fs::write(&bad, r#"{"dim_in": 1, "dim_out": 1, "kraus": [[[0.5, 0]]]}"#).unwrap();
    let o = run(&["compute", "--channel", p(&bad), "--state", p(&data("maximally_mixed_qubit.json"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("residual"), "{}", stderr(&o));
}

#[test]
fn verify_suites() {
    let o = run(&["verify", "theorem1", "--count", "100"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let row = out.lines().find(|l| l.starts_with("theorem1,\"I(rho,Phi)+I(rho,Phi~)-2H(rho)\"")).unwrap();
    let worst: f64 = row.split(',').nth(6).unwrap().parse().unwrap();
    assert!(worst <= 1e-8);
    assert!(out.ends_with("# result: pass\n"));

    assert!(run(&["verify", "lemma7", "--count", "500"]).status.success());
}

#[test]
fn verify_unknown_suite_lists_choices() {
    let o = run(&["verify", "nosuch"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    for s in ["theorem1", "corollary1", "prop1", "prop3", "lemma7", "monotonicity"] {
        assert!(err.contains(s), "{err}");
    }
}

#[test]
fn verify_with_impossible_tolerance_reports_violators() {
    let o = run(&["verify", "theorem1", "--count", "5", "--tol", "1e-300", "--seed", "4"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("violated") && err.contains("seeds ["), "{err}");
    assert!(stdout(&o).ends_with("# result: fail\n"));
}

#[test]
fn random_suite_requires_a_seed() {
    assert_eq!(run(&["random-suite"]).status.code(), Some(2));
    let o = run(&["random-suite", "prop3", "monotonicity", "--seed", "8", "--count", "10"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("suite,")).count(), 1);
    assert!(out.lines().any(|l| l.starts_with("monotonicity,")));
}

#[test]
fn optimize_modes() {
    let o = run(&["optimize", "--channel", p(&data("identity_qubit.json")), "--mode", "ea"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!((field(&out, "value") - 1.386294).abs() < 1e-6);
    assert!(field(&out, "duality_gap") <= 1e-6);

    let o = run(&["optimize", "--channel", p(&data("erasure_0.25.json")), "--mode", "coherent"]);
    assert!((field(&stdout(&o), "value") - 0.346574).abs() < 1e-5);
    assert!(stdout(&o).contains("certified: false"));
}

#[test]
fn optimize_constrained_writes_trace_and_flags_infeasibility() {
    let dir = TempDir::new().unwrap();
    let trace = dir.path().join("trace.csv");
    let h = data("qubit_hamiltonian.json");
    let o = run(&[
        "optimize", "--channel", p(&data("identity_qubit.json")), "--mode", "ea-constrained",
        "--hamiltonian", p(&h), "--energy", "0.2", "--trace-csv", p(&trace),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    // 2 h2(0.2) for the qubit Gibbs state with mean energy 0.2.
    let gibbs = -2.0 * (0.2f64 * 0.2f64.ln() + 0.8 * 0.8f64.ln());
    assert!((field(&stdout(&o), "value") - gibbs).abs() < 1e-5);
    let csv = std::fs::read_to_string(&trace).unwrap();
    assert!(csv.starts_with("iteration,objective,duality_gap,constraint_slack\n"));

    let o = run(&[
        "optimize", "--channel", p(&data("identity_qubit.json")), "--mode", "ea-constrained",
        "--hamiltonian", p(&h), "--energy", "-0.5",
    ]);
    assert_eq!(o.status.code(), Some(3));

    let o = run(&["optimize", "--channel", p(&data("identity_qubit.json")), "--mode", "ea-constrained"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_lemma1_on_diagonal_operators_is_monotone() {
    let dir = TempDir::new().unwrap();
    let diag = |v: &[f64]| {
        let n = v.len();
        let entries: Vec<String> = (0..n * n)
            .map(|k| if k / n == k % n { format!("[{}, 0]", v[k / n]) } else { "[0, 0]".into() })
            .collect();
        format!("{{\"matrix\": [{}]}}", entries.join(", "))
    };
    std::fs::write(dir.path().join("a.json"), diag(&[0.4, 0.3, 0.2, 0.1, 0.6])).unwrap();
    std::fs::write(dir.path().join("b.json"), diag(&[0.2, 0.2, 0.2, 0.2, 0.2])).unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"lemma": "lemma1", "a": "a.json", "b": "b.json"}"#).unwrap();
    let o = run(&["sweep", "lemma1", "--config", p(&cfg)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let body: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body[0], "n,quantity,value,target,deviation");
    for q in ["H(PnAPn)", "H(PnAPn||PnBPn)"] {
        let col: Vec<f64> = body[1..]
            .iter()
            .filter(|l| l.split(',').nth(1) == Some(q))
            .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
            .collect();
        assert_eq!(col.len(), 5);
        assert!(col.windows(2).all(|w| w[1] >= w[0] - 1e-10), "{q}: {col:?}");
    }
}

#[test]
fn sweep_theorem1_proof_on_dephasing() {
    let o = run(&["sweep", "theorem1-proof", "--config", p(&data("sweeps/theorem1-proof.json"))]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let last = out.lines().filter(|l| l.starts_with("2,X_n+Y_n,")).next().unwrap();
    let cols: Vec<f64> = last.split(',').skip(2).map(|x| x.parse().unwrap()).collect();
    assert!((cols[0] - 2.0 * std::f64::consts::LN_2).abs() < 1e-8);
    assert!(cols[2] < 1e-8);
}

#[test]
fn sweep_input_errors() {
    let o = run(&["sweep", "lemma1", "--config", p(&data("sweeps/bad-ladder.json"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("ladder"));
    assert_eq!(run(&["sweep", "lemma99", "--config", p(&data("sweeps/lemma1.json"))]).status.code(), Some(2));
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("typo.json");
    std::fs::write(&cfg, r#"{"lemma": "lemma1", "rnaks": [1, 2]}"#).unwrap();
    assert_eq!(run(&["sweep", "lemma1", "--config", p(&cfg)]).status.code(), Some(2));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    for (k, args) in [
        vec!["sweep", "example2", "--config", p(&data("sweeps/example2.json"))],
        vec!["sweep", "lemma7", "--config", p(&data("sweeps/lemma7.json"))],
        vec!["random-suite", "--seed", "3", "--count", "20"],
    ]
    .into_iter()
    .enumerate()
    {
        let mut bodies = Vec::new();
        for rep in 0..2 {
            let out = dir.path().join(format!("{k}-{rep}.csv"));
            let mut a = args.clone();
            a.extend(["--out", p(&out)]);
            let o = run(&a);
            assert!(o.status.success(), "{args:?}: {}", stderr(&o));
            let text = std::fs::read_to_string(&out).unwrap();
            // The manifest names the output file, which differs between runs.
            bodies.push(text.lines().filter(|l| !l.starts_with("# output:")).collect::<Vec<_>>().join("\n"));
        }
        assert_eq!(bodies[0], bodies[1], "{args:?}");
    }
}
