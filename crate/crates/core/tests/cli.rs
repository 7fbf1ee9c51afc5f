use std::path::PathBuf;
use std::process::Command;

use arithinv::report::{
    self, ClosureReport, FlatnessJson, GeneratorsReport, HsopReport, InvariantsReport, MolienReport, SecondaryReport,
    VerifyReport, SCHEMA,
};
use serde::{de::DeserializeOwned, Serialize};

fn catalog(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "catalog", &format!("{name}.json")].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("arithinv").chain(args.iter().copied());
    let code = arithinv::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(group: &str, args: &[&str]) -> (i32, String) {
    let input = catalog(group);
    let mut argv = vec!["--input", input.as_str(), "--format", "json"];
    argv.extend_from_slice(args);
    let (code, out, _) = run(&argv);
    (code, out)
}

fn round_trip<T: Serialize + DeserializeOwned>(text: &str) {
    let parsed: T = report::from_json(text).unwrap();
    assert_eq!(report::to_json(&parsed), text);
    let v: serde_json::Value = serde_json::from_str(text).unwrap();
    assert_eq!(v["schema"], SCHEMA);
}

#[test]
fn reports_round_trip_byte_for_byte() {
    let (c, t) = json("c4_z", &["closure"]);
    assert_eq!(c, 0);
    round_trip::<ClosureReport>(&t);
    let (c, t) = json("sign_q", &["invariants", "--degree", "2"]);
    assert_eq!(c, 0);
    round_trip::<InvariantsReport>(&t);
    let (c, t) = json("swap_z", &["generators"]);
    assert_eq!(c, 4, "Z at the bound without a sweep warns");
    round_trip::<GeneratorsReport>(&t);
    let (c, t) = json("swap_z", &["hsop", "--primes", "2,3"]);
    assert_eq!(c, 0);
    round_trip::<HsopReport>(&t);
    let (c, t) = json("sign_q", &["secondary"]);
    assert_eq!(c, 0);
    round_trip::<SecondaryReport>(&t);
    let (c, t) = json("sign_z", &["molien", "--truncate", "6"]);
    assert_eq!(c, 0);
    round_trip::<MolienReport>(&t);
    let (c, t) = json("sign_z", &["flatness", "--max-degree", "3", "--primes", "2"]);
    assert_eq!(c, 0);
    round_trip::<FlatnessJson>(&t);
    let (c, t, _) = run(&["verify", "--filter", "swap", "--format", "json"]);
    assert_eq!(c, 0);
    round_trip::<VerifyReport>(&t);
}

#[test]
fn output_is_deterministic() {
    for args in [&["hsop", "--seed", "7"][..], &["secondary"], &["generators", "--extra-sweep", "1"]] {
        let a = json("c3_q", args);
        let b = json("c3_q", args);
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn hsop_text_and_lift() {
    let input = catalog("s3_z");
    let (code, out, _) = run(&["--input", &input, "hsop", "--lift", "7"]);
    assert_eq!(code, 0);
    assert!(out.contains("{ℚ, 7}"), "{out}");
}

#[test]
fn molien_values() {
    let (code, t) = json("sign_z", &["molien", "--truncate", "4"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&t).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!([1, 0, 3, 0, 5]));
}

#[test]
fn molien_modular_is_an_error() {
    let input = catalog("swap_f2");
    let (code, _, err) = run(&["--input", &input, "molien"]);
    assert_eq!(code, 1);
    assert!(err.contains("error"), "{err}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    };

    // unreadable or malformed input
    assert_eq!(run(&["--input", "/nonexistent/g.json", "closure"]).0, 2);
    let bad = write("bad.json", "{\"ring\": \"Z\"");
    assert_eq!(run(&["--input", &bad, "closure"]).0, 2);
    assert_eq!(run(&["closure", "--no-such-flag"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);

    // closure failures
    let big = catalog("s3_z");
    assert_eq!(run(&["--input", &big, "--cap", "3", "closure"]).0, 3);
    let singular = write("sing.json", r#"{"ring": "Z", "n": 2, "generators": [[[2, 0], [0, 1]]]}"#);
    assert_eq!(run(&["--input", &singular, "closure"]).0, 3);
    let infinite = write("inf.json", r#"{"ring": "Z", "n": 2, "generators": [[[1, 1], [0, 1]]]}"#);
    assert_eq!(run(&["--input", &infinite, "--cap", "50", "closure"]).0, 3);

    // warnings at the degree bound
    let sign = catalog("sign_q");
    assert_eq!(run(&["--input", &sign, "generators"]).0, 0);
    assert_eq!(run(&["--input", &sign, "generators", "--bound", "1"]).0, 0);
    let trivial = catalog("trivial_z");
    assert_eq!(run(&["--input", &trivial, "generators"]).0, 4);
    assert_eq!(run(&["--input", &trivial, "generators", "--extra-sweep", "2"]).0, 0);

    // residue field too small for admissible linear forms: F_2, n = 3, all of GL(3,2)'s unipotents
    let unip = write(
        "unip.json",
        r#"{"ring": "F2", "n": 3, "generators": [[[1, 1, 0], [0, 1, 0], [0, 0, 1]], [[1, 0, 0], [0, 1, 1], [0, 0, 1]], [[0, 1, 0], [1, 0, 0], [0, 0, 1]], [[1, 0, 0], [0, 0, 1], [0, 1, 0]]]}"#,
    );
    assert_eq!(run(&["--input", &unip, "hsop"]).0, 5);

    // a catalog with a false claim
    let corrupt: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", "corrupt"].iter().collect();
    let (code, out, _) = run(&["verify", "--catalog", corrupt.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("not invariant"), "{out}");
}

#[test]
fn binary_reads_stdin() {
    use std::io::Write;
    let doc = std::fs::read_to_string(catalog("c4_z")).unwrap();
    let mut child = Command::new(env!("CARGO_BIN_EXE_arithinv"))
        .args(["--input", "-", "--format", "json", "closure"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(doc.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], 4);
}
