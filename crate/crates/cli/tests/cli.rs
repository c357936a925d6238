use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charvar"))
        .args(args)
        .env_remove("CHARVAR_MEMORY_CEILING")
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn schema(command: &str) -> jsonschema::Validator {
    let path: PathBuf = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{command}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn corpus() -> Vec<(Vec<String>, i32)> {
    let torus = data("torus.pres");
    let trefoil = data("trefoil.pres");
    let two = data("two_relator.pres");
    let c4 = data("c4.graph");
    let cases: Vec<(&str, i32)> = vec![
        ("betti --preset surface --genus 2 --char 2,3,5,7", 0),
        ("betti --preset torus --char trivial", 0),
        ("betti --preset free --rank 3 --char generic", 0),
        ("betti --preset product-surface --genus 2,2 --nu pencil --char 2,3", 0),
        ("betti --input {torus} --char 1/2,-3", 0),
        ("betti --input {two} --char 2,3,5", 0),
        ("betti --preset surface --genus 2 --char 2,3", 1),
        ("betti --preset nope", 1),
        ("alexander --preset surface --genus 2", 0),
        ("alexander --input {trefoil}", 0),
        ("alexander --input {torus} --nu 1;0", 0),
        ("jumploci --preset torus", 0),
        ("jumploci --preset surface --genus 2 --t 2", 0),
        ("jumploci --preset free --rank 3 --t 2", 0),
        ("jumploci --input {trefoil}", 0),
        ("jumploci --preset stallings --r 3", 0),
        ("jumploci --preset product-surface --genus 2,1 --r 2", 0),
        ("certify --preset free --r 1", 0),
        ("certify --preset surface --genus 3 --nu pencil --r 1", 0),
        ("certify --preset stallings --r 3", 0),
        ("certify --preset torus --r 1", 2),
        ("certify --preset free --nu 0;0", 2),
        ("certify --preset surface --genus 2 --nu 2;0;0;0", 1),
        ("probe --preset free --r 1 --trials 8", 0),
        ("probe --preset torus --nu 1;0 --trials 8", 0),
        ("kernel --preset stallings --r 2", 0),
        ("kernel --input {trefoil} --nu 1;1", 0),
        ("kernel --input {two} --nu 1;0;0", 0),
        ("kernel --graph {c4}", 0),
        ("kernel --preset product-surface --genus 2,2 --nu pencil", 1),
        ("window --preset torus --nu 1;0 --radius 3", 0),
        ("window --graph {c4} --radius 3", 0),
        ("raag --family octahedron", 0),
        ("raag --graph {c4}", 0),
        ("bb --family complete:3", 0),
        ("bb --graph {c4}", 0),
        ("bb --family empty:2", 0),
        ("flag --family cycle:5", 0),
        ("flag --graph {c4}", 0),
        ("pencil --genus 2,2,2", 0),
        ("pencil --genus 3,2", 0),
        ("pencil --genus 1,2", 1),
        ("oracle --preset free", 0),
        ("oracle --preset torus --nu 1;0", 0),
        ("oracle --preset surface --genus 2 --nu 1;0;0;0", 0),
    ];
    cases
        .into_iter()
        .map(|(line, code)| {
            let line = line.replace("{torus}", &torus).replace("{trefoil}", &trefoil).replace("{two}", &two).replace("{c4}", &c4);
            (line.split(' ').map(String::from).collect(), code)
        })
        .collect()
}

#[test]
fn json_output_matches_schema_across_corpus() {
    for (args, expected) in corpus() {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, v) = run_json(&refs);
        assert_eq!(code, expected, "{args:?}: {v}");
        let validator = schema(&args[0]);
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| format!("{} at {}", e, e.instance_path)).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}\n{v}");
        assert_eq!(v["command"], args[0].as_str());
        assert_eq!(v.get("error").is_some(), code != 0, "{args:?}: {v}");
    }
}

#[test]
fn reruns_are_byte_identical() {
    for line in [
        "certify --preset stallings --r 3 --seed 17",
        "probe --preset free --r 1 --trials 20 --seed 5",
        "jumploci --preset product-surface --genus 2,2 --r 2",
        "window --preset torus --nu 1;0 --radius 3",
    ] {
        let args: Vec<&str> = line.split(' ').collect();
        let mut json = vec!["--json"];
        json.extend_from_slice(&args);
        let a = run(&json);
        let b = run(&json);
        assert!(a.status.success(), "{line}");
        assert_eq!(a.stdout, b.stdout, "{line}");
        assert_eq!(run(&args).stdout, run(&args).stdout, "{line}");
    }
}

#[test]
fn surface_betti_example() {
    let (_, v) = run_json(&["betti", "--preset", "surface", "--genus", "2", "--char", "2,3,5,7"]);
    assert_eq!(v["result"]["betti"], serde_json::json!([0, 2, 0]));
    let text = String::from_utf8(run(&["betti", "--preset", "surface", "--genus", "2", "--char", "2,3,5,7"]).stdout).unwrap();
    assert!(text.contains("(0, 2, 0)"), "{text}");
}

#[test]
fn pencil_example() {
    let (_, v) = run_json(&["pencil", "--genus", "2,2,2"]);
    assert_eq!(v["result"]["critical_points"], 8);
    assert_eq!(v["result"]["euler_x"], -8);
    assert_eq!(v["result"]["branch_sizes"], serde_json::json!([2, 2, 2]));
}

#[test]
fn product_of_genus_two_surfaces_certified() {
    let (code, v) = run_json(&["certify", "--preset", "product-surface", "--genus", "2,2,2", "--nu", "pencil", "--r", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["conclusions"], serde_json::json!(["H_leq_r_infinite", "not_FP_r", "not_commensurable_FP_r"]));
    assert_eq!(v["result"]["evidence"]["generic_betti"], serde_json::json!([0, 0, 0, 8, 0, 0, 0]));
}

#[test]
fn failed_hypothesis_reports_verdict() {
    let (code, v) = run_json(&["certify", "--preset", "torus"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["detail"]["status"], "not-full");
    let out = run(&["certify", "--preset", "torus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error["));
}

#[test]
fn trefoil_kernel_is_free_of_rank_two() {
    let (_, v) = run_json(&["kernel", "--input", &data("trefoil.pres"), "--nu", "1;1"]);
    let h1 = &v["result"]["homology"]["degrees"][1];
    assert_eq!(h1["torsion_factors"], serde_json::json!(["t^2 - t + 1"]));
    assert_eq!(h1["torsion_dimension"], 2);
    assert_eq!(h1["free_rank"], 0);
}

#[test]
fn memory_ceiling_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_charvar"))
        .args(["--json", "window", "--preset", "stallings", "--radius", "6"])
        .env("CHARVAR_MEMORY_CEILING", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["code"], "WindowTooLarge");
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["probe", "--preset", "free", "--trials", "0"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let (code, v) = run_json(&["betti"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["code"], "usage");
    let (code, v) = run_json(&["raag"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["code"], "usage");
}

#[test]
fn schemas_reject_malformed_reports() {
    let (_, mut v) = run_json(&["pencil", "--genus", "2,2,2"]);
    let validator = schema("pencil");
    assert!(validator.is_valid(&v));
    v["result"]["critical_points"] = Value::from("eight");
    assert!(!validator.is_valid(&v));
    let (_, mut v) = run_json(&["certify", "--preset", "free"]);
    v["result"]["conclusions"] = serde_json::json!(["not_FP_r"]);
    assert!(!schema("certify").is_valid(&v));
    v["command"] = Value::from("betti");
    assert!(!schema("certify").is_valid(&v));
}
