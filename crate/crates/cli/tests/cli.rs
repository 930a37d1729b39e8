use std::fs;
use std::path::Path;
use std::process::Command;

use queerify_cli::report::strip_timing;
use queerify_cli::{run, Outcome};
use serde_json::Value;

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("queerify").chain(args.iter().copied()))
}

fn report(o: &Outcome) -> Value {
    serde_json::from_str(o.stdout.trim())
        .unwrap_or_else(|e| panic!("{e}: {:?} / {:?}", o.stdout, o.stderr))
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn psq3_file_is_simple() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("psq3.qalg");
    let c = cli(&["construct", "psq", "3", "-o", path(&f)]);
    assert_eq!(c.code, 0, "{}", c.stderr);
    assert_eq!(report(&c)["result"]["algebra"]["dim"], 16);

    let s = cli(&["simplicity", path(&f), "--expect", "simple"]);
    assert_eq!(s.code, 0, "{}", s.stderr);
    let r = report(&s);
    assert_eq!(r["verdict"], "simple");
    assert_eq!(r["result"]["certificate"]["envelope_dim"], 256);
    assert_eq!(r["inputs"][0]["kind"], "file");
}

#[test]
fn psq2_file_fails_expectation_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("psq2.qalg");
    assert_eq!(cli(&["construct", "psq", "2", "-o", path(&f)]).code, 0);
    let s = cli(&["simplicity", path(&f), "--expect", "simple"]);
    assert_eq!(s.code, 1);
    let r = report(&s);
    assert_eq!(r["verdict"], "not-simple");
    let w = &r["result"]["witness"];
    assert_eq!(w["dim"], 3);
    // The odd part is the ideal.
    for label in w["basis"].as_array().unwrap() {
        assert!(label.as_str().unwrap().starts_with("Pi("), "{label}");
    }
    // Without --expect the command only reports.
    assert_eq!(cli(&["simplicity", path(&f)]).code, 0);
}

#[test]
fn losev_half_two_is_not_simple() {
    let o = cli(&["losev", "--c", "1/2", "--n", "2"]);
    assert_eq!(o.code, 0);
    let r = report(&o);
    assert_eq!(r["result"]["simple"], false);
    assert_eq!(
        cli(&["losev", "--c", "1/2", "--n", "2", "--expect", "simple"]).code,
        1
    );
}

#[test]
fn malformed_qalg_exits_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.qalg");
    fs::write(&f, "{\"schema\": \"qalg/1\",\n  \"dim\": oops}\n").unwrap();
    let o = cli(&["validate", path(&f)]);
    assert_eq!(o.code, 2);
    assert!(o.stdout.is_empty());
    assert!(o.stderr.contains("line 2"), "{}", o.stderr);
    assert!(o.stderr.contains("column"), "{}", o.stderr);
}

#[test]
fn invalid_algebra_never_reaches_computation() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("m2.qalg");
    assert_eq!(cli(&["construct", "mat", "2", "-o", path(&f)]).code, 0);
    // Break associativity by editing one structure constant.
    let mut v: Value = serde_json::from_str(&fs::read_to_string(&f).unwrap()).unwrap();
    v["products"][0][2][0][1] = Value::String("2".into());
    fs::write(&f, serde_json::to_string(&v).unwrap()).unwrap();

    let o = cli(&["simplicity", path(&f)]);
    assert_eq!(o.code, 2, "{}", o.stdout);
    assert!(o.stderr.contains("fails validation"), "{}", o.stderr);

    let o = cli(&["validate", path(&f)]);
    assert_eq!(o.code, 1);
    assert_eq!(report(&o)["verdict"], "invalid");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(cli(&["no-such-command"]).code, 2);
    assert_eq!(cli(&["simplicity", "psq(x)"]).code, 2);
    assert_eq!(cli(&["losev", "--c", "half", "--n", "2"]).code, 2);
    assert_eq!(cli(&["--help"]).code, 0);
}

#[test]
fn budget_exceeded_exits_3_with_report() {
    let o = cli(&[
        "condition-check",
        "mat-super(1,2)",
        "--field",
        "F3",
        "--strategy",
        "exhaustive",
        "--budget",
        "10",
    ]);
    assert_eq!(o.code, 3);
    assert_eq!(report(&o)["verdict"], "budget-exceeded");
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["condition-check", "clifford(3,-1,natural)", "--seed", "7"][..],
        &["simplicity", "psq(3)"],
        &["herstein", "mat(3)"],
        &["dunkl-survey", "--n", "2", "--word-len", "2", "--dmax", "3"],
    ] {
        let mut a = report(&cli(args));
        let mut b = report(&cli(args));
        strip_timing(&mut a);
        strip_timing(&mut b);
        assert_eq!(a.to_string(), b.to_string(), "{args:?}");
        assert!(a["seed"].is_u64());
    }
}

#[test]
fn condition_check_matches_golden() {
    let o = cli(&["condition-check", "clifford(2,-1,natural)"]);
    assert_eq!(o.code, 0);
    let mut got = report(&o);
    strip_timing(&mut got);

    // The witness is checked directly before the golden comparison:
    // x1 is odd, not supercentral, and squares to -1.
    assert_eq!(got["verdict"], "violated");
    assert_eq!(got["result"]["witness"]["display"], "x1");
    assert_eq!(
        got["result"]["witness"]["u_squared"],
        serde_json::json!(["-1", "0", "0", "0"])
    );

    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("golden/condition_clifford2.json");
    let want: Value = serde_json::from_str(&fs::read_to_string(golden).unwrap()).unwrap();
    assert_eq!(got, want);
}

#[test]
fn roundtrip_preserves_fingerprint() {
    let dir = tempfile::tempdir().unwrap();
    for expr in [
        "mat(3)",
        "mat-super(1,2)",
        "q-assoc(2)",
        "clifford(3,1,natural)",
        "psq(3)",
        "herstein(mat(3))",
    ] {
        let f = dir.path().join("a.qalg");
        assert_eq!(cli(&["construct", expr, "-o", path(&f)]).code, 0, "{expr}");
        let o = cli(&["fingerprint", path(&f), "--compare", expr]);
        assert_eq!(o.code, 0, "{expr}: {}", o.stdout);
        assert_eq!(report(&o)["verdict"], "equal");
    }
}

#[test]
fn qtr_tower_writes_all_members() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(&[
        "qtr-tower",
        "3",
        "--out-dir",
        path(dir.path()),
        "--expect",
        "18/17/17/16",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    for name in ["q", "sq", "pq", "psq"] {
        let f = dir.path().join(format!("{name}.qalg"));
        assert_eq!(
            cli(&["validate", path(&f), "--expect", "valid"]).code,
            0,
            "{name}"
        );
    }
    let s = cli(&["simplicity", path(&dir.path().join("psq.qalg"))]);
    assert_eq!(report(&s)["verdict"], "simple");
}

#[test]
fn smash_with_trivial_and_explicit_actions() {
    let o = cli(&[
        "smash",
        "mat(2)",
        "--group",
        "symmetric:3",
        "--expect",
        "24",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);

    // The trivial action written out as an explicit matrix.
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("act.json");
    fs::write(
        &f,
        r#"{"generators": [1], "matrices": [[["1","0"],["0","1"]]]}"#,
    )
    .unwrap();
    let o = cli(&[
        "smash",
        "group-algebra(cyclic,2)",
        "--group",
        "cyclic:2",
        "--actions",
        path(&f),
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(report(&o)["verdict"], "4");
}

fn manifest(dir: &Path, text: &str) -> String {
    let f = dir.join("m.manifest");
    fs::write(&f, text).unwrap();
    f.to_str().unwrap().to_string()
}

#[test]
fn empty_manifest_passes() {
    let dir = tempfile::tempdir().unwrap();
    let m = manifest(dir.path(), "# nothing here\n\n");
    let o = cli(&["batch", &m]);
    assert_eq!(o.code, 0);
    let r = report(&o);
    assert_eq!(r["result"]["total"], 0);
    assert_eq!(r["verdict"], "pass");
}

#[test]
fn wrong_expectation_is_flagged() {
    let dir = tempfile::tempdir().unwrap();
    let m = manifest(
        dir.path(),
        "losev --c 1/2 --n 2 expect: not-simple\nsimplicity 'psq(2)' expect: simple\nherstein 'mat(2)' expect: simple\n",
    );
    let o = cli(&["batch", &m, "--jobs", "3"]);
    assert_eq!(o.code, 1);
    let r = report(&o);
    assert_eq!(r["result"]["failed_lines"], serde_json::json!([2]));
    let entries = r["result"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 3);
    assert_eq!(entries[1]["pass"], false);
    assert_eq!(entries[1]["verdict"], "not-simple");
    assert!(entries[0]["pass"].as_bool().unwrap() && entries[2]["pass"].as_bool().unwrap());
}

#[test]
fn manifest_parse_error_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let m = manifest(dir.path(), "simplicity 'psq(3)'\n");
    assert_eq!(cli(&["batch", &m]).code, 2);
}

#[test]
fn shipped_manifest_passes_in_manifest_order() {
    let m = Path::new(env!("CARGO_MANIFEST_DIR")).join("manifests/theorems.manifest");
    let a = cli(&["batch", path(&m), "--jobs", "8"]);
    assert_eq!(a.code, 0, "{}", a.stderr);
    let b = cli(&["batch", path(&m), "--jobs", "1"]);
    let (mut ra, mut rb) = (report(&a), report(&b));
    strip_timing(&mut ra);
    strip_timing(&mut rb);
    assert_eq!(ra.to_string(), rb.to_string());
    let lines: Vec<u64> = ra["result"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["line"].as_u64().unwrap())
        .collect();
    assert!(lines.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_queerify");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let o = status(&["losev", "--c", "1/2", "--n", "2", "--expect", "not-simple"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8(o.stdout)
        .unwrap()
        .starts_with("{\"schema\":\"qreport/1\""));
    assert_eq!(
        status(&["simplicity", "psq(2)", "--expect", "simple"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(status(&["simplicity", "nonsense("]).status.code(), Some(2));
}

/// Recorded, not asserted against any presumed psq: the subquotients of
/// Cliff(n) and of its queerification for n <= 4.
#[test]
fn montgomery_on_clifford_matches_golden() {
    let mut rows = Vec::new();
    for n in 1..=4 {
        for expr in [
            format!("clifford({n},-1,natural)"),
            format!("queerify-assoc(clifford({n},-1,natural))"),
        ] {
            let o = cli(&["montgomery-sl", &expr]);
            assert_eq!(o.code, 0, "{expr}: {}", o.stderr);
            let r = report(&o);
            let x = &r["result"];
            rows.push(serde_json::json!({
                "input": expr,
                "even_dim": x["algebra"]["even_dim"],
                "odd_dim": x["algebra"]["odd_dim"],
                "derived_dim": x["derived_dim"],
                "center_dim": x["center_dim"],
                "verdict": r["verdict"],
            }));
        }
    }
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("golden/montgomery_clifford.json");
    let want: Value = serde_json::from_str(&fs::read_to_string(golden).unwrap()).unwrap();
    assert_eq!(Value::Array(rows), want);
}
