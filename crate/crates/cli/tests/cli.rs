use std::path::PathBuf;

use detmbqc_cli::dispatch;
use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("detmbqc").chain(args.iter().copied());
    let code = dispatch(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn instance(name: &str) -> String {
    root().join("instances").join(name).display().to_string()
}

fn validated(schema: &str, args: &[&str]) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    let doc: Value = serde_json::from_str(&out).unwrap();
    let path = root().join("schemas").join(format!("{schema}.schema.json"));
    let schema_doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema_doc).unwrap();
    if let Err(errors) = compiled.validate(&doc) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{args:?} does not match {schema}: {msgs:#?}");
    };
    doc
}

#[test]
fn every_command_matches_its_schema() {
    let ex1 = instance("example1.json");
    let bell = instance("bell_yy.json");
    validated("phase-diagram", &["phase-diagram", "--rmax", "2", "--mmax", "8"]);
    validated("family-eval", &["family", "eval", "--r", "1", "--t", "2", "--m", "5", "--chi", "2", "--input", "1011000000000001"]);
    validated("family-eval", &["family", "eval", "--instance", &ex1, "--input", "110"]);
    validated("family-table", &["family", "table", "--r", "0", "--t", "1", "--m", "2", "--chi", "2"]);
    validated("family-check", &["family", "check", "--r", "1", "--t", "2", "--m", "4", "--chi", "2"]);
    validated("example1", &["example1"]);
    validated("example2", &["example2"]);
    validated("lulc-verify", &["lulc", "verify"]);
    validated("lulc-and", &["lulc", "and", "--a", "0", "--b", "1"]);
    validated("hvm", &["hvm", "--instance", &ex1]);
    validated("hvm", &["hvm", "--instance", &bell]);
    validated("oracle-compare", &["oracle-compare", "--instance", &ex1, "--trials", "20", "--seed", "5"]);
    validated("ax", &["ax", "--r", "2", "--m", "4"]);
}

#[test]
fn family_check_verdicts() {
    let doc = validated("family-check", &["family", "check", "--r", "1", "--t", "2", "--m", "5", "--chi", "2"]);
    let p = &doc["payload"];
    assert_eq!(p["deterministic"], true);
    assert_eq!(p["sufficient"], true);
    assert_eq!(p["linear"], false);
}

#[test]
fn lulc_and_first_bit() {
    let doc = validated("lulc-and", &["lulc", "and", "--a", "1", "--b", "1"]);
    assert_eq!(doc["payload"]["o"][0], 1);
}

#[test]
fn usage_errors_exit_two() {
    let input17 = "1".repeat(17);
    let (code, out, err) = call(&["family", "eval", "--r", "1", "--t", "2", "--m", "5", "--chi", "2", "--input", &input17]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("16"), "{err}");
    assert_eq!(call(&["no-such-command"]).0, 2);
    assert_eq!(call(&["phase-diagram", "--rmax", "x", "--mmax", "2"]).0, 2);
    assert_eq!(call(&["lulc", "and", "--a", "2", "--b", "0"]).0, 2);
    assert_eq!(call(&["family", "table", "--r", "3", "--t", "1", "--m", "2", "--chi", "2"]).0, 2);
    assert_eq!(call(&["ax", "--r", "0", "--m", "3"]).0, 2);
    assert_eq!(call(&["hvm", "--instance", "/nonexistent.json"]).0, 2);
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("phase-diagram"));
}

#[test]
fn analysis_failures_exit_one() {
    let (code, _, err) = call(&["family", "table", "--r", "1", "--t", "2", "--m", "4", "--chi", "2"]);
    assert_eq!(code, 1);
    assert!(err.contains("analysis failed"), "{err}");
    // the zero input of Q(1,2,4,2) measures every site in the same basis,
    // which an odd-weight output row cannot survive
    let mut found = false;
    for x in 0..1u32 << 11 {
        let input: String = (0..11).map(|k| if x >> k & 1 == 1 { '1' } else { '0' }).collect();
        let (code, out, _) = call(&["family", "eval", "--r", "1", "--t", "2", "--m", "4", "--chi", "2", "--input", &input]);
        let doc: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(code == 0, doc["payload"]["ok"] == true);
        if code == 1 {
            assert!(doc["payload"]["output"].is_null());
            found = true;
            break;
        }
    }
    assert!(found);
}

#[test]
fn phase_diagram_csv() {
    let (code, out, _) = call(&["phase-diagram", "--rmax", "1", "--mmax", "4", "--csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "r,m,class,chi_max,witness_t");
    assert_eq!(lines.len(), 9);
    assert!(lines.contains(&"1,4,Unknown,,"));
    assert!(lines.contains(&"0,1,DeterministicLinear,,"));
    let (code, out, _) = call(&["phase-diagram", "--rmax", "0", "--mmax", "0", "--csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "r,m,class,chi_max,witness_t\n");
}

#[test]
fn example1_csv_and_instance_file_agree() {
    let expected = "i0,i1,i2,o0\n0,0,0,1\n1,0,0,0\n0,1,0,0\n1,1,0,0\n0,0,1,0\n1,0,1,0\n0,1,1,0\n1,1,1,1\n";
    let (code, out, _) = call(&["example1", "--csv"]);
    assert_eq!((code, out.as_str()), (0, expected));
    let ex1 = instance("example1.json");
    let (code, out, _) = call(&["family", "table", "--instance", &ex1, "--csv"]);
    assert_eq!((code, out.as_str()), (0, expected));
}

#[test]
fn csv_needs_a_table() {
    let (code, _, err) = call(&["example1", "--csv", "--json"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn output_is_reproducible() {
    for args in [
        vec!["phase-diagram", "--rmax", "3", "--mmax", "12"],
        vec!["example1"],
        vec!["oracle-compare", "--instance", "INSTANCE", "--trials", "10", "--seed", "9"],
    ] {
        let ex1 = instance("example1.json");
        let args: Vec<&str> = args.iter().map(|a| if *a == "INSTANCE" { ex1.as_str() } else { a }).collect();
        assert_eq!(call(&args), call(&args));
    }
}
