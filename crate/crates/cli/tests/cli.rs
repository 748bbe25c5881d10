use std::process::Command;

use serde_json::Value;

fn n2sca(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_n2sca")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8"),
        String::from_utf8(out.stderr).expect("utf-8"),
    )
}

#[test]
fn act_examples() {
    assert_eq!(n2sca(&["act", "L[1]", "1", "--module", "omega", "--parity", "even"]).1.trim(), "lam*x + 1/2*lam*y");
    assert_eq!(n2sca(&["act", "Gp[2]", "1", "--parity", "odd"]).1.trim(), "2*lam^2*alp^-1*x + 4*lam^2*alp^-1*y");
    assert_eq!(n2sca(&["act", "C", "x^5*y"]).1.trim(), "0");
}

#[test]
fn act_on_quotients_and_restrictions() {
    let (code, out, _) = n2sca(&["act", "L[1]", "x", "--module", "quotient", "--a", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "lam*x^2 + 1/2*lam*x - 1/2*lam");
    let (code, out, _) =
        n2sca(&["act", "G[0]", "1", "--algebra", "N1R", "--module", "quotient", "--a", "-1", "--alp0", "2"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.trim(), "sqrt2");
}

#[test]
fn act_errors_are_usage_errors() {
    let (code, _, err) = n2sca(&["act", "L[1", "1"]);
    assert_eq!(code, 3);
    assert!(err.contains("position"), "{err}");
    let (code, _, err) = n2sca(&["act", "L[1]", "x + s"]);
    assert_eq!(code, 3, "{err}");
    let (code, _, _) = n2sca(&["act", "G[0]", "1", "--algebra", "N1R"]);
    assert_eq!(code, 3);
}

#[test]
fn verify_examples_pass() {
    for args in [
        &["verify", "algebra", "--which", "R", "--window", "3"][..],
        &["verify", "homomorphism", "--map", "sigma", "--window", "4"],
        &["verify", "submodule", "--spec", "M[h=y^2-1]", "--window", "3", "--degree", "3"],
        &["verify", "quotient", "--a", "-1", "--window", "2", "--degree", "2"],
        &["verify", "module", "--window", "2", "--degree", "2", "--lam0", "3/2", "--alp0", "sqrt2"],
    ] {
        let (code, out, err) = n2sca(args);
        assert_eq!(code, 0, "{args:?}: {out}{err}");
        assert!(out.contains(": pass"), "{out}");
    }
}

#[test]
fn keeping_the_center_breaks_upsilon2() {
    let (code, out, _) =
        n2sca(&["verify", "homomorphism", "--map", "upsilon2", "--keep-center", "--window", "1", "--json"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "fail");
    assert!(!v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn decompose_examples() {
    let (code, out, _) = n2sca(&["decompose", "--h", "y^2-1", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["factors"], serde_json::json!(["S(lam,alp,-1)", "S(lam,alp,1)"]));
    assert_eq!(v["chain"], serde_json::json!(["M[h=y-1]", "M[h=y^2-1]"]));
    assert!(v["links"].as_array().unwrap().iter().all(|l| l["status"] == "pass"));

    let (code, out, _) = n2sca(&["decompose", "--h", "y"]);
    assert_eq!(code, 0);
    assert!(out.contains("Omega / M[h=y] = S(lam,alp,0)"), "{out}");

    let (code, out, _) = n2sca(&["decompose", "--h", "y^2-3", "--json"]);
    assert_eq!(code, 2);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "inconclusive");
}

#[test]
fn decompose_with_wrong_roots_is_inconclusive() {
    let (code, _, _) = n2sca(&["decompose", "--h", "y^2-1", "--roots=2,1"]);
    assert_eq!(code, 2);
    let (code, out, _) = n2sca(&["decompose", "--h", "y^2-1", "--roots=1,-1", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["factors"], serde_json::json!(["S(lam,alp,-1)", "S(lam,alp,1)"]));
}

#[test]
fn restrict_checks() {
    for check in ["relations", "rank1", "g0"] {
        let (code, out, _) = n2sca(&["restrict", "--algebra", "N1R", "--a", "1", "--check", check, "--window", "2"]);
        assert_eq!(code, 0, "{check}: {out}");
    }
    let (code, _, _) = n2sca(&["restrict", "--algebra", "N1NS", "--a", "1", "--check", "rank1"]);
    assert_eq!(code, 3);
    let (code, out, _) = n2sca(&["restrict", "--a", "0", "--check", "simplicity"]);
    assert_eq!(code, 0, "{out}");
    let (code, _, _) = n2sca(&["restrict", "--a", "2", "--check", "simplicity", "--word-length", "4"]);
    assert_eq!(code, 0);
}

#[test]
fn usage_errors_exit_3_and_help_exits_0() {
    assert_eq!(n2sca(&["verify", "bogus"]).0, 3);
    assert_eq!(n2sca(&["verify", "algebra", "--window", "0"]).0, 3);
    assert_eq!(n2sca(&["verify", "homomorphism", "--map", "rho"]).0, 3);
    assert_eq!(n2sca(&["verify", "submodule", "--spec", "M[h=0]"]).0, 3);
    assert_eq!(n2sca(&["decompose", "--h", "y^2-a"]).0, 3);
    assert_eq!(n2sca(&[]).0, 3);
    assert_eq!(n2sca(&["--help"]).0, 0);
    assert_eq!(n2sca(&["--version"]).0, 0);
}
