use std::process::Command;

fn json(args: &[&str]) -> serde_json::Value {
    let out = Command::new(env!("CARGO_BIN_EXE_splitprob")).args(["--format", "json"]).args(args).output().unwrap();
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn check(schema: &str, args: &[&str]) {
    let path = format!("{}/schemas/{schema}.schema.json", env!("CARGO_MANIFEST_DIR"));
    let schema: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let instance = json(args);
    let errors: Vec<String> = validator.iter_errors(&instance).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{args:?}: {errors:?}");
}

#[test]
fn outputs_match_their_schemas() {
    check("exact", &["exact", "--q", "2", "--n", "4"]);
    check("symbolic", &["symbolic", "--n", "3"]);
    check("symbolic", &["symbolic", "--n", "3", "--check"]);
    check("nonmonic", &["nonmonic", "--q", "3", "--n", "4"]);
    check("nonmonic", &["nonmonic", "--n", "3", "--method", "symbolic"]);
    check("ff", &["ff", "--q", "3", "--n", "3", "--bruteforce"]);
    check("trees", &["trees", "--q", "2", "--n", "4", "--check-gamma"]);
    check("classify", &["classify", "--p", "2", "--precision", "6", "--coeffs", "-1,0,1"]);
    check("sample", &["sample", "--p", "2", "--n", "2", "--samples", "2000"]);
    check("sample", &["sample", "--p", "2", "--n", "2", "--precision", "3", "--exhaustive"]);
    check("asymptotics", &["asymptotics", "--q", "2", "--n", "128"]);
    check("zeros", &["zeros", "--q", "2", "--property5", "200", "--probe", "10"]);
    check("verify", &["verify", "1"]);
}
