use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use oblique::cli::{execute, CommandOutcome, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
use oblique::crypto::{build_dictionary, write_dictionary, DEFAULT_DECODE_MARGIN};
use oblique::linalg::{read_csv, write_csv};
use oblique::rng::gaussian_matrix;
use oblique::Matrix;
use proptest::prelude::*;
use tempfile::TempDir;

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        Self {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn p(&self, name: &str) -> String {
        self.path(name).to_string_lossy().into_owned()
    }

    fn csv(&self, name: &str, rows: &[&[f64]]) -> String {
        write_csv(self.path(name), &Matrix::from_rows(rows).unwrap()).unwrap();
        self.p(name)
    }

    fn dictionary(&self) -> String {
        let dict = build_dictionary(8, 3, 256, 42, DEFAULT_DECODE_MARGIN).unwrap();
        write_dictionary(self.path("dict.csv"), &dict).unwrap();
        self.p("dict.csv")
    }
}

fn run(args: &[&str]) -> CommandOutcome {
    execute(std::iter::once("oblique").chain(args.iter().copied()))
}

fn binary(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_oblique")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn cur_fixture(fx: &Fixture) -> String {
    fx.csv("a.csv", &[&[0.0, 1.0, 0.5], &[1.0, 2.0, 1.5], &[2.0, 7.0, 4.5]])
}

#[test]
fn factorize_cur_example() {
    let fx = Fixture::new();
    let a = cur_fixture(&fx);
    let prefix = fx.p("cur");
    let out = run(&["factorize", "--input", &a, "--method", "cur", "--cols", "1,2", "--rows", "1,2", "--out-prefix", &prefix, "--json"]);
    assert_eq!(out.exit_code, EXIT_OK, "{}", out.diagnostics);
    let json = out.json().unwrap();
    assert!(json["relative_residual"].as_f64().unwrap() <= 1e-12);
    let g = read_csv(fx.path("cur_g.csv")).unwrap();
    let want = Matrix::from_rows(&[[-2.0, 1.0], [1.0, 0.0]]).unwrap();
    assert!(g.max_abs_diff(&want).unwrap() <= 1e-12);
    for suffix in ["f", "h"] {
        assert!(fx.path(&format!("cur_{suffix}.csv")).exists());
    }

    let (f, g, h) = (fx.p("cur_f.csv"), fx.p("cur_g.csv"), fx.p("cur_h.csv"));
    assert_eq!(run(&["verify", "--a", &a, "--f", &f, "--g", &g, "--h", &h]).exit_code, EXIT_OK);
    let mut bumped = read_csv(&g).unwrap().into_data();
    bumped[0] += 1.0;
    write_csv(&g, &Matrix::new(2, 2, bumped).unwrap()).unwrap();
    assert_eq!(run(&["verify", "--a", &a, "--f", &f, "--g", &g, "--h", &h]).exit_code, EXIT_FAILURE);
    fs::write(fx.path("empty.csv"), "").unwrap();
    let empty = fx.p("empty.csv");
    assert_eq!(run(&["verify", "--a", &empty, "--f", &f, "--g", &g, "--h", &h]).exit_code, EXIT_USAGE);
}

#[test]
fn factorize_identity_lu_and_random() {
    let fx = Fixture::new();
    let i3 = fx.csv("i.csv", &[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]]);
    let prefix = fx.p("lu");
    assert_eq!(run(&["factorize", "--input", &i3, "--method", "lu", "--out-prefix", &prefix]).exit_code, EXIT_OK);
    for suffix in ["f", "g", "h"] {
        assert_eq!(read_csv(fx.path(&format!("lu_{suffix}.csv"))).unwrap(), Matrix::identity(3));
    }

    let a = gaussian_matrix(10, 3, 1).matmul(&gaussian_matrix(3, 7, 2)).unwrap();
    write_csv(fx.path("rand.csv"), &a).unwrap();
    let input = fx.p("rand.csv");
    let out = run(&["factorize", "--input", &input, "--method", "random", "--r", "5", "--q", "4", "--seed", "1", "--json"]);
    assert_eq!(out.exit_code, EXIT_OK, "{}", out.diagnostics);
    assert!(out.json().unwrap()["relative_residual"].as_f64().unwrap() <= 1e-10);

    // cur without a selection is a usage error
    assert_eq!(run(&["factorize", "--input", &input, "--method", "cur"]).exit_code, EXIT_USAGE);
}

#[test]
fn solve_examples() {
    let fx = Fixture::new();
    let f = fx.csv("f.csv", &[&[0.0, 1.0, 0.5], &[0.0, 2.0, 1.0]]);
    let b = fx.csv("b.csv", &[&[1.0, 0.0, 1.0], &[2.0, 0.0, 2.0]]);
    let d = fx.csv("d.csv", &[&[1.0, 1.0], &[0.0, 0.0], &[1.0, 1.0]]);
    let out_g = fx.p("g.csv");
    let out = run(&["solve", "--a", &f, "--f", &f, "--h", &f, "--b", &b, "--d", &d, "--out", &out_g, "--json"]);
    assert_eq!(out.exit_code, EXIT_OK, "{}", out.diagnostics);
    let want = Matrix::from_rows(&[[0.0, 0.0], [4.0 / 25.0, 8.0 / 25.0], [2.0 / 25.0, 4.0 / 25.0]]).unwrap();
    assert!(read_csv(&out_g).unwrap().max_abs_diff(&want).unwrap() <= 1e-12);
    let json = out.json().unwrap();
    for key in ["err", "err1", "err2"] {
        assert!(json[key].as_f64().unwrap() <= 1e-12, "{key}");
    }

    let i = fx.csv("i.csv", &[&[1.0, 0.0], &[0.0, 1.0]]);
    let out = run(&["solve", "--a", &i, "--f", &i, "--h", &i, "--json"]);
    assert_eq!(out.exit_code, EXIT_OK);
    let json = out.json().unwrap();
    assert!(json["err"].as_f64().unwrap() <= 1e-14);

    // B orthogonal to the range of F, which is spanned by (1, 2)
    let bo = fx.csv("bo.csv", &[&[2.0, 0.0, 0.0], &[-1.0, 0.0, 0.0]]);
    let out = run(&["solve", "--a", &f, "--f", &f, "--h", &f, "--b", &bo, "--d", &d]);
    assert_eq!(out.exit_code, EXIT_FAILURE);
    assert!(out.diagnostics.contains("rank preservation"), "{}", out.diagnostics);
}

#[test]
fn key_lifecycle() {
    let fx = Fixture::new();
    let dict = fx.dictionary();
    let (sk, pk) = (fx.p("sk.json"), fx.p("pk.json"));
    let out = run(&["keygen", "--dict", &dict, "--r", "5", "--seed", "1", "--out-secret", &sk, "--out-public", &pk, "--json"]);
    assert_eq!(out.exit_code, EXIT_OK, "{}", out.diagnostics);
    assert!(out.json().unwrap()["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));

    let guard = run(&["keygen", "--dict", &dict, "--r", "3", "--seed", "1", "--out-secret", &sk, "--out-public", &pk]);
    assert_eq!(guard.exit_code, EXIT_FAILURE);
    assert_eq!(run(&["keygen", "--dict", &dict, "--r", "5", "--seed", "1", "--out-secret", &sk]).exit_code, EXIT_USAGE);

    fs::write(fx.path("msg.txt"), "HELLO").unwrap();
    let (msg, c) = (fx.p("msg.txt"), fx.p("c.json"));
    let out = run(&["encrypt", "--public", &pk, "--in", &msg, "--dict", &dict, "--seed", "7", "--out", &c]);
    assert_eq!(out.exit_code, EXIT_OK, "{}", out.diagnostics);
    let back = fx.p("back.txt");
    let out = run(&["decrypt", "--secret", &sk, "--in", &c, "--dict", &dict, "--out", &back]);
    assert_eq!(out.exit_code, EXIT_OK, "{}", out.diagnostics);
    assert_eq!(fs::read(&back).unwrap(), b"HELLO");

    // single symbol
    let one = fx.p("one.json");
    assert_eq!(run(&["encrypt", "--public", &pk, "--column", "72", "--dict", &dict, "--seed", "3", "--out", &one]).exit_code, EXIT_OK);
    let out = run(&["decrypt", "--secret", &sk, "--in", &one, "--dict", &dict]);
    assert!(out.report.contains("\nH\n"), "{}", out.report);

    // empty message
    fs::write(fx.path("empty.txt"), "").unwrap();
    let (empty, ce) = (fx.p("empty.txt"), fx.p("ce.json"));
    assert_eq!(run(&["encrypt", "--public", &pk, "--in", &empty, "--dict", &dict, "--seed", "7", "--out", &ce]).exit_code, EXIT_OK);
    let cfile: serde_json::Value = serde_json::from_str(&fs::read_to_string(&ce).unwrap()).unwrap();
    assert_eq!(cfile["length"], 0);
    assert_eq!(cfile["payload"]["cols"], 0);

    // wrong secret key
    let (sk2, pk2) = (fx.p("sk2.json"), fx.p("pk2.json"));
    assert_eq!(run(&["keygen", "--dict", &dict, "--r", "5", "--seed", "2", "--out-secret", &sk2, "--out-public", &pk2]).exit_code, EXIT_OK);
    let wrong = run(&["decrypt", "--secret", &sk2, "--in", &c, "--dict", &dict]);
    assert_eq!(wrong.exit_code, EXIT_FAILURE);
    assert!(wrong.diagnostics.contains("decode failed"), "{}", wrong.diagnostics);

    // corrupt key file
    fs::write(fx.path("bad.json"), "{\"version\": 1}").unwrap();
    let bad = fx.p("bad.json");
    assert_eq!(run(&["decrypt", "--secret", &bad, "--in", &c, "--dict", &dict]).exit_code, EXIT_USAGE);
}

#[test]
fn demo_passes_and_reports_json() {
    let out = run(&["demo"]);
    assert_eq!(out.exit_code, EXIT_OK, "{}", out.report);
    assert!(!out.report.contains("FAIL"));
    assert!(out.json().is_none());

    let out = run(&["demo", "--json"]);
    let json = out.json().unwrap();
    assert_eq!(json["all_pass"], true);
    assert!(json["items"].as_array().unwrap().len() >= 10);

    // a tighter tolerance can only fail more items
    let strict = run(&["demo", "--tol", "1e-15", "--json"]).json().unwrap();
    let passed = |v: &serde_json::Value| v["items"].as_array().unwrap().iter().filter(|i| i["pass"] == true).count();
    assert!(passed(&strict) <= passed(&json));
    assert_eq!(strict["all_pass"] == true, run(&["demo", "--tol", "1e-15"]).exit_code == EXIT_OK);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&[]).exit_code, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).exit_code, EXIT_USAGE);
    assert_eq!(run(&["factorize", "--input", "x.csv", "--method", "nope"]).exit_code, EXIT_USAGE);
    assert_eq!(run(&["verify", "--a", "/nonexistent/a.csv", "--f", "f", "--g", "g", "--h", "h"]).exit_code, EXIT_USAGE);
    assert_eq!(run(&["--help"]).exit_code, EXIT_OK);
}

fn files_equal(a: &Path, b: &Path) -> bool {
    fs::read(a).unwrap() == fs::read(b).unwrap()
}

#[test]
fn binary_output_is_deterministic() {
    let fx = Fixture::new();
    let dict = fx.dictionary();
    fs::write(fx.path("msg.txt"), "determinism").unwrap();
    let msg = fx.p("msg.txt");
    for run_id in ["1", "2"] {
        let (sk, pk, c) = (fx.p(&format!("sk{run_id}.json")), fx.p(&format!("pk{run_id}.json")), fx.p(&format!("c{run_id}.json")));
        let (code, _) = binary(&["keygen", "--dict", &dict, "--r", "6", "--two-sided", "--q", "7", "--seed", "5", "--out-secret", &sk, "--out-public", &pk]);
        assert_eq!(code, 0);
        let (code, _) = binary(&["encrypt", "--public", &pk, "--in", &msg, "--dict", &dict, "--seed", "9", "--out", &c]);
        assert_eq!(code, 0);
        let a = fx.p("dict.csv");
        let prefix = fx.p(&format!("r{run_id}"));
        let (code, _) = binary(&["factorize", "--input", &a, "--method", "random", "--r", "5", "--q", "5", "--seed", "3", "--out-prefix", &prefix]);
        assert_eq!(code, 0);
    }
    for name in ["sk", "pk", "c"] {
        assert!(files_equal(&fx.path(&format!("{name}1.json")), &fx.path(&format!("{name}2.json"))), "{name}");
    }
    for s in ["f", "g", "h"] {
        assert!(files_equal(&fx.path(&format!("r1_{s}.csv")), &fx.path(&format!("r2_{s}.csv"))));
    }
    let (code, stdout) = binary(&["demo", "--json"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"all_pass\": true"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    // exit 0 iff the residual is within --tol, checked against the binary
    #[test]
    fn verify_exit_code_tracks_residual(bump in -1.0f64..1.0, tol_exp in -12i32..-1) {
        let fx = Fixture::new();
        let a = cur_fixture(&fx);
        let f = fx.csv("f.csv", &[&[0.0, 1.0], &[1.0, 2.0], &[2.0, 7.0]]);
        let g = fx.csv("g.csv", &[&[-2.0 + bump, 1.0], &[1.0, 0.0]]);
        let h = fx.csv("h.csv", &[&[0.0, 1.0, 0.5], &[1.0, 2.0, 1.5]]);
        let tol = 10f64.powi(tol_exp);
        let t = tol.to_string();
        let (code, _) = binary(&["verify", "--a", &a, "--f", &f, "--g", &g, "--h", &h, "--tol", &t, "--json"]);
        let am = read_csv(&a).unwrap();
        let rebuilt = Matrix::chain(&[&read_csv(&f).unwrap(), &read_csv(&g).unwrap(), &read_csv(&h).unwrap()]).unwrap();
        let residual = rebuilt.distance(&am).unwrap() / am.frobenius_norm();
        prop_assert_eq!(code == 0, residual <= tol);
        prop_assert!(code == 0 || code == 1);
    }
}
