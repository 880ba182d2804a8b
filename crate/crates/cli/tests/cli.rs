use std::fs;
use std::process::{Command, Output};

fn splitprob(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_splitprob")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = splitprob(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    splitprob(args).status.code().expect("exit code")
}

#[test]
fn exact_examples() {
    assert!(stdout(&["exact", "--q", "2", "--n", "2"]).lines().any(|l| l == "r_2 = 1/3"));
    assert_eq!(stdout(&["exact", "--q", "2", "--n", "0"]), "r_0 = 1\n");
    assert_eq!(code(&["exact", "--q", "1", "--n", "3"]), 2);
}

#[test]
fn exact_methods_print_the_same_values() {
    let base = stdout(&["exact", "--q", "3", "--n", "6"]);
    assert_eq!(stdout(&["exact", "--q", "3", "--n", "6", "--method", "theorem1"]), base);
    assert_eq!(stdout(&["exact", "--q", "3", "--n", "6", "--method", "series"]), base);
}

#[test]
fn symbolic_example_and_limit() {
    assert!(stdout(&["symbolic", "--n", "2"]).lines().any(|l| l == "r_2 = q/(2*(q+1))"));
    assert_eq!(code(&["symbolic", "--n", "20"]), 3);
    let checked = stdout(&["symbolic", "--n", "4", "--check"]);
    assert_eq!(checked.matches("functional_equation PASS").count(), 4);
}

#[test]
fn trees_gamma_example() {
    let out = stdout(&["trees", "--q", "2", "--n", "4", "--check-gamma"]);
    assert!(out.lines().any(|l| l == "gamma_4 = nu_4 = 1/588672 PASS"), "{out}");
}

#[test]
fn argument_errors_exit_two() {
    assert_eq!(code(&["exact", "--q", "2.5", "--n", "3"]), 2);
    assert_eq!(code(&["nonmonic", "--q", "2", "--n", "3", "--method", "symbolic"]), 2);
    assert_eq!(code(&["nonmonic", "--n", "3"]), 2);
    assert_eq!(code(&["sample", "--p", "4", "--n", "2"]), 2);
    assert_eq!(code(&["verify", "11"]), 2);
    assert_eq!(code(&["zeros", "--q", "3.5", "--probe", "2"]), 2);
}

#[test]
fn nonmonic_methods_agree() {
    let direct = stdout(&["nonmonic", "--q", "2", "--n", "4"]);
    assert!(direct.contains("r^nm_2 = 1/2\n") && direct.contains("r^nm_3 = 25/186\n"));
    assert_eq!(stdout(&["nonmonic", "--q", "2", "--n", "4", "--method", "euler"]), direct);
    assert_eq!(stdout(&["nonmonic", "--q", "2", "--n", "4", "--method", "theorem"]), direct);
}

#[test]
fn ff_bruteforce_agrees() {
    let out = stdout(&["ff", "--q", "3", "--n", "3", "--bruteforce"]);
    assert!(out.starts_with("rbar_3 = 10/27\n") && out.contains("PASS"), "{out}");
}

#[test]
fn classify_reports_outcome() {
    let out = stdout(&["classify", "--p", "2", "--precision", "8", "--coeffs", "-8,-2"]);
    assert!(out.starts_with("SPLITS\n"), "{out}");
    let out = stdout(&["classify", "--p", "2", "--precision", "8", "--coeffs", "1,1"]);
    assert!(out.starts_with("NOT_SPLIT\n"), "{out}");
}

#[test]
fn sample_is_byte_identical() {
    let args = ["sample", "--p", "2", "--n", "2", "--samples", "100000", "--seed", "7", "--format", "json"];
    let first = stdout(&args);
    assert_eq!(stdout(&args), first);
    let mut threaded = args.to_vec();
    threaded.extend(["--workers", "3"]);
    assert_eq!(stdout(&threaded), first);
}

#[test]
fn csv_headers_are_stable() {
    assert!(stdout(&["exact", "--q", "2", "--n", "3", "--format", "csv"]).starts_with("n,r_n,s_n\n"));
    assert!(stdout(&["symbolic", "--n", "2", "--format", "csv"]).starts_with("n,r_n\n"));
    assert!(stdout(&["nonmonic", "--q", "2", "--n", "2", "--format", "csv"]).starts_with("n,r_nm_n\n"));
    assert!(stdout(&["asymptotics", "--q", "2", "--n", "32", "--report", "log-sn", "--format", "csv"])
        .starts_with("n,log_q_s_n\n"));
    assert!(stdout(&["verify", "4", "--format", "csv"]).starts_with("criterion,passed,seconds\n"));
    assert!(stdout(&["ff", "--q", "2", "--n", "2", "--format", "csv"]).starts_with("key,value\n"));
}

#[test]
fn emit_w_and_output_use_the_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_splitprob"))
        .args(["asymptotics", "--q", "2", "--n", "512", "--emit-w", "--output", "summary.json", "--format", "json"])
        .env("SPLITPROB_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let read = |name: &str| fs::read_to_string(dir.path().join(name)).unwrap();
    assert!(read("wbar_q2.csv").starts_with("n,frac_log_q_n,value\n"));
    assert_eq!(read("wbar_q2.csv").lines().count(), 513);
    assert!(read("wbar_q2_binned.csv").starts_with("bin_start,mean_value,count\n"));
    let w = read("w_q2.csv");
    assert!(w.starts_with("x,zeta\n"));
    assert_eq!(w.lines().count(), 1026);
    let summary: serde_json::Value = serde_json::from_str(&read("summary.json")).unwrap();
    assert_eq!(summary["written"].as_array().unwrap().len(), 3);
    assert_eq!(summary["lemr"]["r2"], "6/31");
}

#[test]
fn zeros_reports_a_certified_zero() {
    let out: serde_json::Value = serde_json::from_str(&stdout(&["zeros", "--q", "2", "--format", "json"])).unwrap();
    let z0 = out["zero"]["z0"][0].as_f64().unwrap();
    assert!(z0 < -2.0 && z0 > -3.0);
    assert!((out["zero"]["winding"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    let probe = stdout(&["zeros", "--q", "2", "--probe", "3"]);
    assert!(probe.contains("EMPIRICAL EVIDENCE"));
}

#[test]
fn verify_single_criterion() {
    let out = stdout(&["verify", "4"]);
    assert!(out.lines().last().unwrap().starts_with("criterion 4: PASS"));
}
