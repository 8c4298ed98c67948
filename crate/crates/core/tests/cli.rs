use std::path::Path;
use std::process::{Command, Output};

use graded_lie::cli::{case_names, DatumSpec};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graded-lie")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn every_bundled_case_round_trips() {
    for name in case_names() {
        let spec = DatumSpec::from_case(name).unwrap();
        let again = DatumSpec::parse(&spec.to_toml()).unwrap();
        assert_eq!(spec, again, "{name}");
    }
    assert_eq!(DatumSpec::from_case("fold:D4G2").unwrap(), DatumSpec::from_case("fold-D4G2").unwrap());
    assert_eq!(DatumSpec::from_case("descend:G2Q").unwrap(), DatumSpec::from_case("G2Q").unwrap());
}

#[test]
fn verify_passes_with_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a2.json");
    let report = dir.path().join("report.json");
    let o = run(&[
        "verify", "--case", "a2-coxeter", "--out", out.to_str().unwrap(),
        "--report", report.to_str().unwrap(), "--format", "json",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&report);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["passed"], true);
    assert!(r["checks"].as_array().unwrap().iter().any(|c| c["name"] == "jacobi"));
    let a = json(&out);
    assert_eq!(a["schema"], 1);
    assert_eq!(a["dim"], 8);
    assert_eq!(a["aut_order"], 3);
    assert_eq!(a["basis"][0], "h1");
    assert_eq!(a["grading"]["dims"], serde_json::json!([2, 3, 3]));
    let leftovers: Vec<_> = std::fs::read_dir(dir.path()).unwrap().filter_map(|e| e.ok()).filter(|e| e.file_name().to_string_lossy().contains(".tmp-")).collect();
    assert!(leftovers.is_empty());
}

#[test]
fn text_report_lists_checks() {
    let o = run(&["fold", "--case", "fold:A3C2"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("PASS  type"));
    assert!(text.contains("C2"));
    assert!(text.ends_with("all checks passed\n"));
}

#[test]
fn invalid_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    };
    let cases = [
        write("syntax.toml", "lattice = \"A2\"\nautomorphism = {"),
        write("unknown_key.toml", "lattice = \"A2\"\ncolour = 1\nautomorphism = { kind = \"word\", word = [1, 2] }\n"),
        write("bad_lattice.toml", "lattice = \"Q9\"\nautomorphism = { kind = \"minus_identity\" }\n"),
        write("bad_word.toml", "lattice = \"A2\"\nautomorphism = { kind = \"word\", word = [1, 7] }\n"),
        write("not_elliptic.toml", "lattice = \"A2\"\nautomorphism = { kind = \"word\", word = [1] }\n"),
        write("bad_matrix.toml", "lattice = \"A2\"\nautomorphism = { kind = \"matrix\", rows = [[2, 0], [0, 1]] }\n"),
    ];
    for p in &cases {
        let o = run(&["verify", "--spec", p.to_str().unwrap()]);
        assert_eq!(code(&o), 2, "{}", p.display());
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(code(&run(&["verify", "--case", "no-such-case"])), 2);
    assert_eq!(code(&run(&["verify", "--spec", "/nonexistent/spec.toml"])), 2);
    assert_eq!(code(&run(&["fold", "--case", "a2-coxeter"])), 2);
}

#[test]
fn failed_verification_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    // d = 3 on A2 but an ε meant for d = 2
    let p = dir.path().join("bad_eps.toml");
    std::fs::write(&p, "lattice = \"A2\"\nautomorphism = { kind = \"word\", word = [1, 2] }\nepsilon = \"trivial\"\n").unwrap();
    let o = run(&["verify", "--spec", p.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&o), 1, "{}", String::from_utf8_lossy(&o.stderr));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let check = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "input-datum").unwrap();
    assert_eq!(check["passed"], false);
    assert!(check.get("witness").is_some());
}

#[test]
fn artifacts_are_byte_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    for (cmd, case) in [("construct", "d4-coxeter"), ("fold", "fold:D4G2"), ("descend", "descend:G2Q"), ("rep", "e8-d5")] {
        let a = dir.path().join("a.json");
        let b = dir.path().join("b.json");
        assert_eq!(code(&run(&[cmd, "--case", case, "--out", a.to_str().unwrap(), "--threads", "1"])), 0);
        assert_eq!(code(&run(&[cmd, "--case", case, "--out", b.to_str().unwrap(), "--threads", "2"])), 0);
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap(), "{cmd} {case}");
    }
}

#[test]
fn spec_file_matches_named_case() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("d4.toml");
    std::fs::write(&spec, DatumSpec::from_case("d4-coxeter").unwrap().to_toml()).unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    assert_eq!(code(&run(&["construct", "--case", "d4-coxeter", "--out", a.to_str().unwrap()])), 0);
    assert_eq!(code(&run(&["construct", "--spec", spec.to_str().unwrap(), "--out", b.to_str().unwrap()])), 0);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn prop_check_and_cases() {
    let o = run(&["prop-check", "--case", "e8-d3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    for n in ["pairing-equality", "pairing-sum", "root-sum", "coxeter-pairing-trivial", "z-bracket"] {
        assert!(names.contains(&n), "{n}");
    }
    let o = run(&["cases"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stdout).unwrap().lines().any(|l| l == "descend-G2Q"));
}
