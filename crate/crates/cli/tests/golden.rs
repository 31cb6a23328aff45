//! Output of the `ord` binary against stored transcripts.
//!
//! Set `ORD_UPDATE_GOLDEN=1` to rewrite the transcripts after an intended change.

use std::path::PathBuf;
use std::process::Command;

/// Stdout followed by an `exit N` line.
fn transcript(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_ord")).args(args).output().expect("binary runs");
    let code = out.status.code().expect("exited normally");
    format!("{}exit {code}\n", String::from_utf8(out.stdout).expect("utf-8 output"))
}

fn check(name: &str, args: &[&str]) {
    let first = transcript(args);
    assert_eq!(transcript(args), first, "{name}: output differs between runs");
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.txt"));
    if std::env::var_os("ORD_UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &first).unwrap();
        return;
    }
    let stored = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(first, stored, "{name}: args {args:?}");
}

#[test]
fn cmp_finite() {
    check("cmp_2_3", &["cmp", "2", "3"]);
    check("cmp_emit_cert", &["cmp", "2", "3", "--emit-cert"]);
}

#[test]
fn cmp_omega() {
    check("cmp_w_w", &["cmp", "w", "w"]);
    check("cmp_w_1w", &["cmp", "w", "1+w"]);
    check("cmp_w_1w_kernel", &["cmp", "w", "1+w", "--kernel"]);
    check("cmp_w_ww_kernel", &["cmp", "w", "w+w", "--kernel"]);
    check("cmp_eps0_w", &["cmp", "eps0", "w", "--width", "16"]);
}

#[test]
fn trees() {
    check("tree_3", &["tree", "3", "--mu-bound", "4"]);
    check("tree_w", &["tree", "w", "--mu-bound", "5"]);
    check("tree_w2", &["tree", "w+2", "--mu-bound", "5"]);
}

#[test]
fn demos() {
    check("demo_lpo_opaque", &["demo", "lpo", "--prefix", "001", "--tail", "opaque"]);
    check("demo_lpo_const", &["demo", "lpo", "--prefix", "001", "--tail", "const"]);
    check("demo_ml_lpo", &["demo", "ml-lpo", "--prefix", "0011", "--tail", "opaque"]);
    check("demo_llpo_opaque", &["demo", "llpo", "--prefix", "0100", "--tail", "opaque"]);
    check("demo_llpo_const", &["demo", "llpo", "--prefix", "0100", "--tail", "const"]);
    check("demo_llpo_zeros", &["demo", "llpo", "--prefix", "000", "--tail", "opaque"]);
}

#[test]
fn eval_and_sequents() {
    check("eval_finite", &["eval", "2^3*(1+4)"]);
    check("eval_omega", &["eval", "w+1"]);
    check("ml_prove_disjunction", &["ml-prove", "3 < 2, 2 <= 3"]);
    check("ml_prove_underivable", &["ml-prove", "suc(1, 2) < 3"]);
}

#[test]
fn law_battery() {
    check("check_laws", &["check-laws", "--seed", "7", "--cases", "20"]);
}
