use iwasawa_cli::{run_from_args, run_suite, RunConfig, Status, Suite};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = run_from_args(std::iter::once("iwasawa").chain(args.iter().copied()));
    (out.code, out.text)
}

fn config(primes: Vec<u64>, n: u32, prec: u32) -> RunConfig {
    RunConfig { primes, n, prec, theta: None, d: None, a: None, jobs: Some(2), seed: 0 }
}

#[test]
fn thm5_example_passes() {
    let (code, text) = run(&["verify", "--suite", "thm5", "--p", "5", "--d", "3", "--n", "1", "--N", "2"]);
    assert_eq!(code, 0, "{text}");
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["provenance"]["N"], 2);
    assert_eq!(v["provenance"]["seed"], 0);
    let recs = v["records"].as_array().unwrap();
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["status"], "pass");
    assert_eq!(recs[0]["parameters"]["d"], 3);
    assert!(recs[0]["witness"].is_null());
}

#[test]
fn lemma2_example_passes() {
    let (code, text) = run(&["verify", "--suite", "lemma2", "--p", "5", "--n", "2"]);
    assert_eq!(code, 0, "{text}");
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["records"].as_array().unwrap().len(), 3);
}

#[test]
fn cor1_sweep_small_range() {
    let report = run_suite(Suite::Cor1, &config(vec![5, 7, 11, 13, 37], 2, 1)).unwrap();
    assert_eq!(report.records.len(), 1 + 2 + 4 + 5 + 17);
    assert_eq!(report.worst(), Status::Pass);
}

#[test]
fn every_suite_passes_at_five() {
    use Suite::*;
    for s in [Lemma1, Lemma2, Lemma3, Lemma4, Lemma5, Lemma6, Thm1, Thm2, Thm4, Thm5, Thm6, Cor1, Interpolation] {
        let n = if matches!(s, Lemma1 | Thm1 | Thm4) { 1 } else { 2 };
        let report = run_suite(s, &config(vec![5], n, 2)).unwrap();
        assert!(!report.records.is_empty(), "{s:?}");
        assert_eq!(report.worst(), Status::Pass, "{s:?}");
    }
}

#[test]
fn reports_are_deterministic() {
    let strip = |r: iwasawa_cli::Report| {
        r.records.into_iter().map(|x| (x.parameters, x.status, x.witness)).collect::<Vec<_>>()
    };
    let mut cfg = config(vec![7], 2, 2);
    let a = strip(run_suite(Suite::Thm6, &cfg).unwrap());
    cfg.jobs = Some(1);
    let b = strip(run_suite(Suite::Thm6, &cfg).unwrap());
    assert_eq!(a, b);
}

#[test]
fn lambda_table_rows() {
    let (code, text) = run(&["lambda-table", "--p", "5"]);
    assert_eq!(code, 0);
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body, ["p,j,mu,lambda,fprime_nonzero", "5,2,0,0,true"]);
    assert!(text.starts_with("# iwasawa "));

    let (code, text) = run(&["lambda-table", "--p", "37", "--n", "1", "--N", "1"]);
    assert_eq!(code, 0);
    assert!(text.lines().any(|l| l == "37,32,0,1,true"));
    let mus: Vec<&str> = text.lines().skip(3).map(|l| l.split(',').nth(2).unwrap()).collect();
    assert_eq!(mus.len(), 17);
    assert!(mus.iter().all(|m| *m == "0"));
}

#[test]
fn configuration_errors_exit_two() {
    for args in [
        vec!["verify", "--suite", "thm5", "--p", "4"],
        vec!["verify", "--suite", "thm5", "--p", "3"],
        vec!["verify", "--suite", "thm5", "--p", "5", "--n", "4"],
        vec!["verify", "--suite", "thm5", "--p", "5", "--N", "9"],
        vec!["verify", "--suite", "thm5", "--p", "5", "--d", "5"],
        vec!["verify", "--suite", "nope"],
        vec!["lambda-table", "--p-max", "3"],
        vec!["fseries", "--p", "5"],
    ] {
        assert_eq!(run(&args).0, 2, "{args:?}");
    }
}

#[test]
fn dumps() {
    let (code, text) = run(&["fseries", "--p", "5", "--theta", "2", "--n", "1", "--format", "csv"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "k,coefficient");
    assert_eq!(rows.len(), 1 + 5);
    // lambda = 0 at p = 5, so the constant term is a unit
    let c0: u64 = rows[1].split(',').nth(1).unwrap().parse().unwrap();
    assert_ne!(c0 % 5, 0);

    let (code, text) = run(&["mirimanoff", "--p", "5", "--theta", "2", "--a", "2", "--n", "1"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 5);
    assert_eq!(run(&["mirimanoff", "--p", "5", "--theta", "2", "--a", "1"]).0, 2);
}

#[test]
fn trace_table() {
    let (code, text) = run(&["trace", "--p", "5", "--ell-max", "31"]);
    assert_eq!(code, 0);
    assert!(text.lines().any(|l| l == "5,31,3,7,-10,-10,true,true"));
    let (code, text) = run(&["trace", "--p", "7", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["matches"] == true));
}
