use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn here(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(rel)
}

fn cliffrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cliffrep")).args(args).env_remove("GA_SEED").output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn golden(args: &[&str], file: &str) {
    let out = cliffrep(args);
    assert_eq!(stdout(&out), std::fs::read_to_string(here(&format!("golden/{file}"))).unwrap(), "{args:?}");
}

#[test]
fn golden_outputs() {
    golden(&["surface", "lines"], "lines.json");
    golden(&["surface", "genus", "--D", "5;2,2,2,2,2,2"], "genus_cubic.json");
    golden(&["surface", "moduli", "--D", "6;2,2,2,2,2,2", "--r", "2"], "moduli_2h.json");
    golden(&["surface", "hilbert", "--r", "1", "--t", "1"], "hilbert_1_1.json");
    golden(&["--format", "table", "surface", "ulrich", "--D", "3;1,1,1,1,1,1", "--r", "1"], "ulrich_h_r1.txt");
    golden(&["construct", "clock-shift", "--d", "3"], "../fixtures/clockshift3.json");
}

#[test]
fn catalog_counts() {
    assert_eq!(stdout(&cliffrep(&["surface", "cubics", "--count"])).trim(), "72");
    assert_eq!(stdout(&cliffrep(&["surface", "lines", "--count"])).trim(), "27");
    assert_eq!(json(&cliffrep(&["surface", "cubics"])).as_array().unwrap().len(), 72);
}

#[test]
fn exit_codes() {
    let rep = here("fixtures/clockshift3.json");
    let form = here("fixtures/x3y3.json");
    assert_eq!(code(&cliffrep(&["verify", "--rep", path(&rep), "--form", path(&form)])), 0);
    assert_eq!(code(&cliffrep(&["irreducible", "--rep", path(&rep)])), 0);

    let h = cliffrep(&["surface", "ulrich", "--D", "3;1,1,1,1,1,1", "--r", "1"]);
    assert_eq!(code(&h), 1);
    assert_eq!(json(&h)["decompositions"], 0);
    assert_eq!(code(&cliffrep(&["surface", "ulrich", "--D", "6;2,2,2,2,2,2", "--r", "2"])), 0);

    assert_eq!(code(&cliffrep(&["surface", "ulrich", "--D", "3;1,1", "--r", "1"])), 2);
    assert_eq!(code(&cliffrep(&["surface", "stable", "--D", "3;1,1,1,1,1,1", "--r", "1"])), 2);
    assert_eq!(code(&cliffrep(&["verify", "--rep", "/nonexistent.json", "--form", path(&form)])), 2);
    assert_eq!(code(&cliffrep(&["frobnicate"])), 2);
    assert_eq!(code(&cliffrep(&["construct", "clock-shift", "--d", "2", "--c2", "-1", "--gamma2", "-1"])), 2);
}

#[test]
fn errors_are_module_qualified() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = cliffrep(&["nondegenerate", "--form", path(&bad)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: format:"));

    let out = cliffrep(&["surface", "families", "--r", "9"]);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: lattice:"));
}

#[test]
fn corrupted_representation_is_a_negative_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let mut rep: Value =
        serde_json::from_str(&std::fs::read_to_string(here("fixtures/clockshift3.json")).unwrap()).unwrap();
    rep["matrices"][0][0][0] = Value::String("[1,0]@3".into());
    let p = dir.path().join("bad.json");
    std::fs::write(&p, rep.to_string()).unwrap();
    let form = here("fixtures/x3y3.json");
    for method in ["expansion", "relations"] {
        let out = cliffrep(&["verify", "--rep", path(&p), "--form", path(&form), "--method", method]);
        assert_eq!(code(&out), 1);
        assert_eq!(json(&out)["passed"], false);
    }
}

#[test]
fn construct_split_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let rep = dir.path().join("t.json");
    let form = dir.path().join("f.json");
    let out = cliffrep(&["construct", "tensor", "--d", "3", "--n", "3", "--form-out", path(&form)]);
    assert_eq!(code(&out), 0);
    std::fs::write(&rep, &out.stdout).unwrap();
    assert_eq!(code(&cliffrep(&["verify", "--rep", path(&rep), "--form", path(&form)])), 0);
    let irr = cliffrep(&["irreducible", "--rep", path(&rep)]);
    assert_eq!(code(&irr), 1);
    assert_eq!(json(&irr)["algebra_dimension"], 27);

    assert_eq!(code(&cliffrep(&["split", "--rep", path(&rep)])), 2, "split needs a seed");
    let split = cliffrep(&["split", "--rep", path(&rep), "--seed", "4"]);
    assert_eq!(code(&split), 0);
    let split = json(&split);
    let parts = split["parts"].as_array().unwrap();
    assert_eq!(parts.len(), 3);
    let mut files = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        let f = dir.path().join(format!("p{i}.json"));
        std::fs::write(&f, p["representation"].to_string()).unwrap();
        assert_eq!(code(&cliffrep(&["verify", "--rep", path(&f), "--form", path(&form)])), 0);
        let det = json(&cliffrep(&["detid", "--rep", path(&f), "--form", path(&form)]));
        assert_eq!(det["r"], 1);
        files.push(f);
    }
    let eq = cliffrep(&["equivalent", "--rep", path(&files[0]), "--other", path(&files[1])]);
    assert_eq!(code(&eq), 1);
    assert_eq!(json(&eq)["intertwiner_dimension"], 0);

    let sum = cliffrep(&["sum", "--rep", path(&files[0]), "--other", path(&files[0])]);
    let s = dir.path().join("sum.json");
    std::fs::write(&s, &sum.stdout).unwrap();
    assert_eq!(code(&cliffrep(&["verify", "--rep", path(&s), "--form", path(&form)])), 0);
    assert_eq!(json(&cliffrep(&["equivalent", "--rep", path(&s), "--other", path(&s)]))["intertwiner_dimension"], 4);
}

fn pretty<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).unwrap() + "\n"
}

/// Every emitted artifact parses into the library type and serializes back
/// to the same bytes.
#[test]
fn emitted_artifacts_round_trip_bit_identically() {
    use cliffrep::clifford::{Form, Representation, RepresentationJson};
    use cliffrep::linearizer::SolutionDump;
    use cliffrep::poly::PolyJson;

    let dir = tempfile::tempdir().unwrap();
    let form_path = dir.path().join("f.json");
    let rep = stdout(&cliffrep(&["construct", "tensor", "--d", "3", "--n", "3", "--form-out", path(&form_path)]));
    let form_text = std::fs::read_to_string(&form_path).unwrap();

    let parsed = Representation::from_json(&serde_json::from_str::<RepresentationJson>(&rep).unwrap()).unwrap();
    assert_eq!(pretty(&parsed.to_json()), rep);
    let form = Form::from_json(&serde_json::from_str::<PolyJson>(&form_text).unwrap()).unwrap();
    assert_eq!(pretty(&form.to_json()), form_text);

    let rep_path = dir.path().join("t.json");
    std::fs::write(&rep_path, &rep).unwrap();
    let split = json(&cliffrep(&["split", "--rep", path(&rep_path), "--seed", "1"]));
    for part in split["parts"].as_array().unwrap() {
        let text = pretty(&part["representation"]);
        let r = Representation::from_json(&serde_json::from_str::<RepresentationJson>(&text).unwrap()).unwrap();
        assert_eq!(pretty(&r.to_json()), text);
    }

    let dump = stdout(&cliffrep(&["solve3", "--form", path(&form_path), "--starts", "6", "--seed", "2"]));
    let parsed: SolutionDump = serde_json::from_str(&dump).unwrap();
    parsed.solutions().unwrap();
    assert_eq!(pretty(&parsed), dump);
}

#[test]
fn transform_writes_the_transformed_form() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.json");
    std::fs::write(&m, r#"[["1","1"],["0","1"]]"#).unwrap();
    let g = dir.path().join("g.json");
    let rep = here("fixtures/clockshift3.json");
    let out = cliffrep(&[
        "transform",
        "--rep",
        path(&rep),
        "--matrix",
        path(&m),
        "--form",
        path(&here("fixtures/x3y3.json")),
        "--form-out",
        path(&g),
    ]);
    assert_eq!(code(&out), 0);
    let b = dir.path().join("b.json");
    std::fs::write(&b, &out.stdout).unwrap();
    assert_eq!(code(&cliffrep(&["verify", "--rep", path(&b), "--form", path(&g)])), 0);
    assert_eq!(code(&cliffrep(&["verify", "--rep", path(&b), "--form", path(&here("fixtures/x3y3.json"))])), 1);
}

#[test]
fn solve_then_classify_with_env_seed() {
    let dir = tempfile::tempdir().unwrap();
    let form = dir.path().join("f.json");
    cliffrep(&["construct", "tensor", "--d", "3", "--n", "3", "--form-out", path(&form)]);

    assert_eq!(code(&cliffrep(&["solve3", "--form", path(&form), "--starts", "4"])), 2);

    let run = || {
        Command::new(env!("CARGO_BIN_EXE_cliffrep"))
            .args(["solve3", "--form", path(&form), "--starts", "30"])
            .env("GA_SEED", "7")
            .output()
            .unwrap()
    };
    let a = run();
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, run().stdout, "fixed seed is reproducible");
    assert!(String::from_utf8_lossy(&a.stderr).contains("classes"));

    let explicit = cliffrep(&["solve3", "--form", path(&form), "--starts", "30", "--seed", "7"]);
    assert_eq!(explicit.stdout, a.stdout);

    let dump = dir.path().join("sol.json");
    std::fs::write(&dump, &a.stdout).unwrap();
    let classes = cliffrep(&["classify", "--solutions", path(&dump)]);
    assert_eq!(code(&classes), 0);
    let n = json(&classes)["class_count"].as_u64().unwrap();
    assert!((1..=72).contains(&n));

    let mut tampered: Value = json(&a);
    tampered["solutions"][0]["residual"] = Value::from(0.25);
    std::fs::write(&dump, tampered.to_string()).unwrap();
    assert_eq!(code(&cliffrep(&["classify", "--solutions", path(&dump)])), 2);
}

#[test]
fn degenerate_cubic_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let form = dir.path().join("f.json");
    std::fs::write(&form, r#"{"n":3,"coeffs":{"3,0,0":"1","0,3,0":"1","0,0,3":"1","1,1,1":"-3"}}"#).unwrap();
    assert_eq!(code(&cliffrep(&["nondegenerate", "--form", path(&form)])), 1);
    let out = cliffrep(&["solve3", "--form", path(&form), "--seed", "1", "--starts", "2"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("linearizer"));
}

#[test]
fn every_subcommand_has_help() {
    for sub in [
        vec!["relations"],
        vec!["verify"],
        vec!["irreducible"],
        vec!["equivalent"],
        vec!["detid"],
        vec!["nondegenerate"],
        vec!["construct", "clock-shift"],
        vec!["construct", "tensor"],
        vec!["split"],
        vec!["sum"],
        vec!["transform"],
        vec!["surface", "ulrich"],
        vec!["surface", "stable"],
        vec!["surface", "families"],
        vec!["solve3"],
        vec!["classify"],
    ] {
        let mut args = sub.clone();
        args.push("--help");
        let out = cliffrep(&args);
        assert_eq!(code(&out), 0, "{sub:?}");
        assert!(stdout(&out).len() > 80, "{sub:?}");
    }
}
