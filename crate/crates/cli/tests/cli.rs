use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ybhom")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn betti(v: &Value) -> Vec<u64> {
    v["homology"].as_array().unwrap().iter().map(|g| g["betti"].as_u64().unwrap()).collect()
}

fn torsion(v: &Value, k: usize) -> Vec<u64> {
    v["homology"][k]["torsion"].as_array().unwrap().iter().map(|t| t.as_u64().unwrap()).collect()
}

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&["verify", "--braiding", "minmax:3"]), 0);
    assert_eq!(code(&["verify", "--braiding", "flip:2", "--idempotent"]), 1);
    assert_eq!(code(&["verify", "--braiding", "size2:maxmax", "--ybe", "--idempotent"]), 0);
    assert_eq!(code(&["verify", "--braiding", &format!("factorization:{}", data("s3_factorization.json"))]), 0);
    assert_eq!(code(&["verify", "--braiding", "identity:2", "--coeff", "adjoint", "--bimodule"]), 1);
    assert_eq!(code(&["verify", "--braiding", "minmax:3", "--coeff", "trivial:2", "--bimodule"]), 0);
    assert_eq!(code(&["verify", "--braiding", "nonsense:3"]), 2);
    assert_eq!(code(&["verify", "--braiding", "size2:no-such-tag"]), 2);
    assert_eq!(code(&["verify", "--braiding", "/no/such/file.json"]), 2);
    assert_eq!(code(&["verify", "--braiding", "minmax:2", "--unit"]), 2);
    assert_eq!(code(&["verify", "--braiding", "identity:3", "--pseudo-unit", "0", "--unit"]), 0);
}

#[test]
fn classify_counts_and_bounds() {
    assert_eq!(json(&["classify", "--size", "1"])["classes"], 1);
    let r = json(&["classify", "--size", "2", "--check"]);
    assert_eq!(r["classes"], 16);
    let reps = r["representatives"].as_array().unwrap();
    let mut tags: Vec<&str> = reps.iter().map(|e| e["tag"].as_str().expect("every class is a catalog tag")).collect();
    tags.sort_unstable();
    tags.dedup();
    assert_eq!(tags.len(), 16);
    assert_eq!(code(&["classify", "--size", "4"]), 3);
}

#[test]
fn homology_examples() {
    let r = json(&["homology", "--braiding", "identity:1", "--critical", "--coeff", "trivial", "--maxdeg", "5"]);
    assert_eq!(betti(&r), [1, 1, 0, 0, 0]);
    assert_eq!(betti(&json(&["homology", "--braiding", "minmax:3", "--critical"])), [1, 3, 3, 1]);
    let r = json(&["homology", "--monoid", &data("c2.json"), "--bar", "--maxdeg", "3"]);
    assert_eq!((betti(&r)[1], torsion(&r, 1)), (0, vec![2]));
    // the bar route from a braiding goes through its reduced monoid
    let s3 = format!("factorization:{}", data("s3_factorization.json"));
    let bar = json(&["homology", "--braiding", &s3, "--bar"]);
    let crit = json(&["homology", "--braiding", &s3, "--critical"]);
    let dbl = json(&["homology", "--braiding", &s3, "--double"]);
    assert_eq!(bar["homology"], crit["homology"]);
    assert_eq!(dbl["homology"], crit["homology"]);
    assert_eq!(torsion(&crit, 3), [6]);
    // cohomology of minmax:2 over F_2
    let r = json(&["homology", "--braiding", "minmax:2", "--full", "--cohomology", "--prime", "2", "--maxdeg", "3"]);
    assert_eq!(r["orientation"], "cochain");
    assert_eq!(r["betti_mod_p"]["p"], 2);
    // lattices load from files
    let r = json(&["homology", "--braiding", &format!("lattice:{}", data("divisors12_lattice.json")), "--critical"]);
    assert_eq!(betti(&r)[0], 1);
    assert_eq!(code(&["homology", "--braiding", "minmax:3", "--double"]), 2);
    assert_eq!(code(&["homology", "--braiding", "identity:2", "--bar"]), 3);
    assert_eq!(code(&["--maxdeg", "9", "homology", "--braiding", "minmax:2"]), 2);
}

#[test]
fn compare_verdicts() {
    for (file, h1) in [("s3_factorization.json", vec![2]), ("c2xc3_factorization.json", vec![6]), ("c2xc2_factorization.json", vec![2, 2])] {
        let r = json(&["compare", "--braiding", &format!("factorization:{}", data(file)), "--maxdeg", "3"]);
        assert_eq!(r["all_agree"], true);
        let got: Vec<u64> = r["degrees"][1]["bar"]["torsion"].as_array().unwrap().iter().map(|t| t.as_u64().unwrap()).collect();
        assert_eq!(got, h1, "{file}");
    }
    assert_eq!(json(&["compare", "--braiding", &format!("assoc:{}", data("c3.json")), "--coeff", "regular"])["all_agree"], true);
    let r = json(&["compare", "--braiding", &format!("assoc:{}", data("c2.json")), "--coeff", &data("c2_sign_bimodule.json")]);
    assert_eq!(r["all_agree"], true);
    let out = run(&["compare", "--braiding", "identity:2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("closed forms"));
    assert_eq!(code(&["compare", "--braiding", &format!("factorization:{}", data("s3_factorization.json")), "--bound", "3"]), 3);
}

#[test]
fn product_commands() {
    let (f, g) = (data("f1.json"), data("g1.json"));
    // σ(x,y) = (y',x'): on the flip the (1,1) cup is the antisymmetrization, on the identity it cancels
    let r = json(&["products", "cup", "--braiding", "flip:2", "--f", &f, "--g", &g]);
    assert_eq!(r["result"]["values"]["0,1"], -7);
    assert_eq!(r["result"]["values"]["1,0"], 7);
    let r = json(&["products", "cup", "--braiding", "identity:2", "--f", &f, "--g", &g]);
    assert!(r["result"]["values"].as_object().unwrap().is_empty());
    let r = json(&["products", "cup-left-right", "--braiding", "minmax:2", "--f", &f, "--g", &g]);
    assert_eq!(r["left"]["degree"], 2);
    assert_eq!(code(&["products", "homotopy", "--braiding", "identity:2", "--coeff", "mod:7", "--random", "3,2"]), 0);
    assert_eq!(code(&["products", "homotopy", "--braiding", "minmax:3", "--coeff", "mod:7", "--random", "2,2", "--seed", "3"]), 0);
    let s3 = format!("factorization:{}", data("s3_factorization.json"));
    assert_eq!(code(&["products", "qs-cup", "--braiding", &s3, "--random", "2,2"]), 0);
    let r = json(&["products", "hirsch", "--braiding", "size2:constant"]);
    assert_eq!(r["formula_fails"], true);
    assert_eq!(r["cocycle_violation"], Value::Null);
    assert_eq!(json(&["products", "hirsch", "--braiding", "minmax:2"])["formula_fails"], false);
    // circle needs trivial coefficients; cochains must match the set and the degree bound
    assert_eq!(code(&["products", "circle", "--braiding", "identity:2", "--coeff", "structure:2", "--random", "1,1"]), 2);
    assert_eq!(code(&["products", "cup", "--braiding", "identity:3", "--f", &data("g2.json"), "--g", &g]), 0);
    assert_eq!(code(&["products", "cup", "--braiding", "identity:1", "--f", &f, "--g", &g]), 2);
    assert_eq!(code(&["products", "cup", "--braiding", "identity:2", "--f", &f]), 2);
}

fn temp_path(dir: &tempfile::TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

#[test]
fn outputs_are_deterministic_and_written_whole() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 4] = [
        &["products", "homotopy", "--braiding", "minmax:3", "--coeff", "mod:7", "--random", "2,1", "--seed", "11"],
        &["export", "--kind", "critical", "--braiding", "minmax:4", "--maxdeg", "5"],
        &["verify", "--suites", "c"],
        &["classify", "--size", "2"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let mut bytes = Vec::new();
        for round in 0..2 {
            let p = temp_path(&dir, &format!("out{i}-{round}.json"));
            let mut full: Vec<&str> = args.to_vec();
            let ps = p.display().to_string();
            full.extend(["--out", &ps]);
            assert_eq!(code(&full), 0, "{args:?}");
            bytes.push(std::fs::read(&p).unwrap());
        }
        assert_eq!(bytes[0], bytes[1], "{args:?}");
        let _: Value = serde_json::from_slice(&bytes[0]).unwrap();
    }
    // only the renamed result remains in the directory
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2 * cases.len());
}

#[test]
fn export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let p = temp_path(&dir, "minmax3.json").display().to_string();
    assert_eq!(code(&["export", "--kind", "braiding", "--braiding", "minmax:3", "--out", &p]), 0);
    assert_eq!(betti(&json(&["homology", "--braiding", &p, "--critical"])), [1, 3, 3, 1]);
    let c = json(&["export", "--kind", "full", "--braiding", "minmax:2", "--maxdeg", "3"]);
    assert_eq!(c["orientation"], "chain");
    let ranks: Vec<u64> = c["degrees"].as_array().unwrap().iter().map(|d| d["rank"].as_u64().unwrap()).collect();
    assert_eq!(ranks, [1, 2, 4, 8]);
    assert_eq!(c["maps"][0]["from"], 1);
    let c = json(&["export", "--kind", "bar", "--monoid", &data("s3.json"), "--maxdeg", "3"]);
    assert_eq!(c["degrees"][2]["rank"], 25);
}
