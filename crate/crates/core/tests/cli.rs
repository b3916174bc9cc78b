mod common;

use std::io::Write;
use std::process::{Command, Stdio};

use common::*;
use diophz::cert::CertDocument;
use diophz::cli::{run, run_with_stdin, Outcome};
use rand::seq::SliceRandom;
use rand::Rng;

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("diophz").chain(args.iter().copied()))
}

fn verify_stdin(doc: &str) -> Outcome {
    run_with_stdin(["diophz", "verify", "-"], Some(doc))
}

#[test]
fn goldens_in_process() {
    assert_eq!(GOLDENS.len(), 20);
    for g in GOLDENS {
        let out = cli(g.args);
        assert_eq!(out.stdout, g.stdout, "{:?}", g.args);
        assert_eq!(out.code, g.code, "{:?}: {}", g.args, out.stderr);
        if g.code != 0 {
            assert!(!out.stderr.is_empty(), "{:?} failed silently", g.args);
        }
    }
}

#[test]
fn goldens_through_the_binary() {
    for g in GOLDENS {
        let out = Command::new(env!("CARGO_BIN_EXE_diophz")).args(g.args).output().unwrap();
        assert_eq!(String::from_utf8(out.stdout).unwrap(), g.stdout, "{:?}", g.args);
        assert_eq!(out.status.code(), Some(g.code), "{:?}", g.args);
    }
}

#[test]
fn binary_verifies_from_stdin() {
    let doc = cli(&["witness", "divu", "Z^3 + 2*Z^2 + 2*Z + 1", "6"]).stdout;
    for (text, code) in [(doc.clone(), 0), (doc.replace("\"n\": ", "\"n\": 1"), 1), ("{".to_string(), 2)] {
        let mut child = Command::new(env!("CARGO_BIN_EXE_diophz"))
            .args(["verify", "-"])
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::piped())
            .spawn()
            .unwrap();
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
        let out = child.wait_with_output().unwrap();
        assert_eq!(out.status.code(), Some(code), "{}", String::from_utf8_lossy(&out.stderr));
    }
}

/// Builds a certificate, checks it re-serializes byte for byte, and pipes it
/// into `verify`.
fn pipe(args: &[&str], expect_detail: &str) {
    let built = cli(args);
    assert_eq!(built.code, 0, "{:?}: {}", args, built.stderr);
    let doc = CertDocument::from_json_str(&built.stdout).unwrap();
    assert_eq!(doc.to_json_string(), built.stdout);
    let v = verify_stdin(&built.stdout);
    assert_eq!(v.code, 0, "{:?}: {}", args, v.stderr);
    assert!(v.stdout.starts_with("accept ("), "{}", v.stdout);
    assert!(v.stdout.ends_with(&format!("{}\n", expect_detail)), "{:?}: {}", args, v.stdout);
}

fn random_product(rng: &mut impl Rng, u: u64) -> Coeffs {
    let all = signed_subset_products(u);
    all.choose(rng).unwrap().2.clone()
}

#[test]
fn divu_and_divisor_pipes() {
    let mut rng = rng(51);
    let (mut divu, mut divisor, mut cmember) = (0, 0, 0);
    while divu < 50 || divisor < 50 || cmember < 50 {
        let u = rng.gen_range(1..=12u64);
        let p = random_product(&mut rng, u);
        let text = zpoly(&p).to_string();
        let us = u.to_string();
        if divu < 50 && p.len() >= 4 && p[0] == 1.into() {
            pipe(&["witness", "divu", &text, &us], "");
            divu += 1;
        }
        if divisor < 50 {
            pipe(&["witness", "divisor", &text, &us], &format!("u = {}", 3 * u));
            divisor += 1;
        }
        if cmember < 50 {
            pipe(&["witness", "cmember", &text, &us], "");
            cmember += 1;
        }
    }
}

#[test]
fn zz_pipe() {
    let mut rng = rng(52);
    let mut done = 0;
    while done < 50 {
        let x = zpoly(&random_zpoly(&mut rng, 2, 6));
        let text = x.to_string();
        let out = cli(&["witness", "zz", &text]);
        if out.code == 1 {
            // over the degree budget
            continue;
        }
        pipe(&["witness", "zz", &text], &format!("X = {}", text));
        done += 1;
    }
}

#[test]
fn degree_pipe() {
    let mut rng = rng(53);
    let f = qi();
    let mut done = 0;
    while done < 50 {
        let p = random_kpoly(&mut rng, &f, 6, 5);
        let Some(d) = p.degree() else { continue };
        let text = p.to_string().replace('a', "i");
        pipe(&["--field", "Q(i)/i^2+1", "witness", "degree", &text], &format!("d = {}", d));
        done += 1;
    }
}

#[test]
fn verify_rejects_tampered_documents() {
    let doc = cli(&["witness", "zz", "Z^2 + 3"]).stdout;
    assert_eq!(doc, GOLDEN_ZZ);
    let tampered = doc.replace("\"X\": \"Z^2 + 3\"", "\"X\": \"Z^2 + 4\"");
    let out = verify_stdin(&tampered);
    assert_eq!(out.code, 1);
    assert!(out.stderr.starts_with("reject: "), "{}", out.stderr);
    let json = run_with_stdin(["diophz", "--output", "json", "verify", "-"], Some(&tampered));
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(v["verdict"], "reject");
    for bad in [
        doc.replace("dioph-cert/1", "dioph-cert/9"),
        doc.replace("\"zz\"", "\"xx\""),
        doc.replace("\"C\": \"2\"", "\"C\": \"2\", \"extra\": 1"),
        doc.replace("Z^2 + 1", "Z^^2"),
    ] {
        assert_eq!(verify_stdin(&bad).code, 2, "{}", bad);
    }
}

#[test]
fn json_output_parses() {
    for args in [
        &["--output", "json", "cyclo", "12"][..],
        &["--output", "json", "cheb", "3"],
        &["--output", "json", "recognize-c", "Z^2 - 1"],
        &["--output", "json", "approx", "1 - Z + 3*Z^2", "3"],
        &["--output", "json", "valuation", "1/Z"],
        &["--output", "json", "qf", "case", "Z^2"],
        &["--output", "json", "--field", "Q(a)/a^2-5", "decompose", "a/2"],
        &["--output", "json", "--field", "Q(a)/a^2-5", "embeddings"],
        &["--output", "json", "--field", "Q(i)/i^2+1", "qf", "forms", "Z", "--p", "5", "--alpha", "i", "--pi", "5"],
    ] {
        let out = cli(args);
        assert_eq!(out.code, 0, "{:?}: {}", args, out.stderr);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{:?}: {}", args, e));
        assert!(v.is_object() || v.is_array());
    }
    let v: serde_json::Value = serde_json::from_str(&cli(&["--output", "json", "valuation", "0"]).stdout).unwrap();
    assert_eq!(v["v_Z"], "inf");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &[][..],
        &["cyclo"],
        &["cyclo", "0"],
        &["cyclo", "x"],
        &["approx", "1 + Z", "0"],
        &["valuation", "1/0"],
        &["--field", "Q(a)/a^2-1", "cyclo", "3"],
        &["--precision", "4", "--field", "Q(a)/a^2+1", "embeddings"],
        &["decompose", "Z", "--ring", "Z[2]"],
        &["no-such-command"],
    ] {
        assert_eq!(cli(args).code, 2, "{:?}", args);
    }
    let help = cli(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("witness"));
}

#[test]
fn check_failures_exit_one() {
    for args in [
        &["recognize-c", "2*Z + 1"][..],
        &["witness", "divu", "Z^2 + Z + 1", "3"],
        &["witness", "divisor", "Z + 2", "4"],
        &["witness", "degree", "Z^3", "2"],
        &["--field", "Q(a)/a^2+1", "decompose", "a*Z", "--ring", "Z"],
        &["--field", "Q(a)/a^2+1", "qf", "forms", "Z", "--p", "4", "--alpha", "a"],
    ] {
        let out = cli(args);
        assert_eq!(out.code, 1, "{:?}: {}", args, out.stderr);
        assert!(out.stderr.ends_with('\n'));
    }
}
