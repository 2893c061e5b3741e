//! Golden-file harness shared by the CLI tests and the acceptance suite.
//!
//! Each case runs the binary inside `tests/golden` and compares a transcript
//! (exit code, stdout, stderr) with `tests/golden/expected/<name>.txt`.
//! Run with `BLESS=1` to rewrite the expected files.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use stocheff_cli::format::{load_str, save};

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub code: i32,
}

const fn case(name: &'static str, code: i32, args: &'static [&'static str]) -> Case {
    Case { name, args, code }
}

pub const CASES: &[Case] = &[
    case("check_ex1", 0, &["check", "ex1.json"]),
    case("check_profiles", 0, &["check", "step.json", "--profiles"]),
    case("check_bad_row", 2, &["check", "bad.json"]),
    case("check_missing_file", 2, &["check", "missing.json"]),
    case("check_space", 0, &["check", "space.json"]),
    case("check_nbhd", 0, &["check", "nbhd.json"]),
    case("check_charrel", 0, &["check", "rel.json"]),
    case("check_congruence", 0, &["check", "congruence.json"]),
    case("check_ts", 0, &["check", "ts.json"]),
    case("check_nlmp", 0, &["check", "nlmp.json"]),
    case("check_profiles_needs_eff", 2, &["check", "nbhd.json", "--profiles"]),
    case("modelcheck_ex1", 0, &["modelcheck", "ex1.json", "--formula", "dia[1/8] p"]),
    case("modelcheck_nested", 0, &["modelcheck", "ex1.json", "--formula", "dia[1/2] dia[1/2] p & top"]),
    case("modelcheck_syntax_error", 2, &["modelcheck", "ex1.json", "--formula", "dia[1/8 p"]),
    case("modelcheck_unbound_atom", 2, &["modelcheck", "ex1.json", "--formula", "dia[0] r"]),
    case("modelcheck_wrong_kind", 2, &["modelcheck", "nbhd.json", "--formula", "p"]),
    case("gameeval_dual", 0, &["gameeval", "nbhd.json", "--game", "dual c", "--target", "z"]),
    case("gameeval_star", 0, &["gameeval", "nbhd.json", "--game", "step*", "--target", "y"]),
    case("gameeval_seq_union", 0, &["gameeval", "nbhd.json", "--game", "c | step ; step", "--target", "z"]),
    case("gameeval_empty_target", 0, &["gameeval", "nbhd.json", "--game", "c*", "--target", ""]),
    case("gameeval_unknown_state", 2, &["gameeval", "nbhd.json", "--game", "c", "--target", "w"]),
    case("compose_kleisli", 0, &["compose", "kernel.json", "step.json", "--event", "y,z", "--q", "1/4", "--verify-kleisli"]),
    case("compose_plain", 0, &["compose", "kernel.json", "step.json", "--event", "z", "--q", "1/8"]),
    case("compose_not_pointed", 0, &["compose", "ts.json", "ts.json", "--event", "t", "--q", "0", "--verify-kleisli"]),
    case("compose_bad_threshold", 2, &["compose", "ts.json", "ts.json", "--event", "t", "--q", "3/2"]),
    case("compose_mismatch", 2, &["compose", "nlmp.json", "kernel.json", "--event", "b", "--q", "1/4"]),
    case("quotient_blocks", 0, &["quotient", "twins.json", "--alpha", "a,b|c", "--beta", "a,b|c"]),
    case("quotient_document", 0, &["quotient", "twins.json", "--congruence", "congruence.json"]),
    case("quotient_violation", 1, &["quotient", "twins.json", "--alpha", "a,c|b"]),
    case("quotient_bad_blocks", 2, &["quotient", "twins.json", "--alpha", "a,b"]),
    case("equiv_logical_self", 0, &["equiv", "logical", "kernel.json", "kernel.json"]),
    case("equiv_behavioral_quotient", 0, &["equiv", "behavioral", "twins.json", "twins_quotient.json"]),
    case("equiv_logical_collapse", 0, &["equiv", "logical", "single.json", "halves.json"]),
    case("equiv_logical_false", 1, &["equiv", "logical", "halves.json", "thirds.json"]),
    case("equiv_behavioral_false", 1, &["equiv", "behavioral", "halves.json", "thirds.json"]),
    case("equiv_bound", 3, &["equiv", "logical", "twins.json", "twins.json", "--max-search", "0"]),
    case("charrel_check_ok", 0, &["charrel", "check", "rel.json"]),
    case("charrel_check_bad", 1, &["charrel", "check", "rel_bad.json"]),
    case("charrel_extract_ok", 0, &["charrel", "extract", "rel.json"]),
    case("charrel_extract_bad", 1, &["charrel", "extract", "rel_bad.json"]),
    case("lift_kernel", 0, &["lift", "kernel", "kernel.json"]),
    case("lift_ts", 0, &["lift", "ts", "ts.json"]),
    case("lift_nlmp", 0, &["lift", "nlmp", "nlmp.json"]),
    case("lift_wrong_kind", 2, &["lift", "ts", "kernel.json"]),
    case("usage_error", 2, &["frobnicate"]),
];

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_stocheff"))
        .args(args)
        .current_dir(golden_dir())
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exited normally"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

fn transcript(case: &Case, code: i32, stdout: &str, stderr: &str) -> String {
    let argv = case
        .args
        .iter()
        .map(|a| if a.is_empty() || a.contains(' ') { format!("{a:?}") } else { a.to_string() })
        .collect::<Vec<_>>()
        .join(" ");
    format!("$ stocheff {argv}\nexit: {code}\n--- stdout\n{stdout}--- stderr\n{stderr}")
}

/// Runs one case; `Err` describes the first mismatch.
pub fn check_case(case: &Case) -> Result<(), String> {
    let (code, stdout, stderr) = run(case.args);
    let actual = transcript(case, code, &stdout, &stderr);
    let path = golden_dir().join("expected").join(format!("{}.txt", case.name));
    if std::env::var_os("BLESS").is_some() {
        std::fs::write(&path, &actual).map_err(|e| e.to_string())?;
    }
    if code != case.code {
        return Err(format!("{}: exit {code}, expected {}\n{actual}", case.name, case.code));
    }
    let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected != actual {
        return Err(format!("{}: transcript differs\n--- expected\n{expected}--- actual\n{actual}", case.name));
    }
    Ok(())
}

/// Every fixture, and every document the CLI prints, survives load/save byte for byte
/// once normalized, and loads back to an equal model.
pub fn check_round_trips() -> Result<usize, String> {
    let mut texts = Vec::new();
    for entry in std::fs::read_dir(golden_dir()).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        if path.extension().is_some_and(|e| e == "json") && !path.ends_with("bad.json") {
            texts.push((path.display().to_string(), std::fs::read_to_string(&path).map_err(|e| e.to_string())?));
        }
    }
    for case in CASES.iter().filter(|c| c.code == 0 && matches!(c.args[0], "lift" | "quotient")) {
        texts.push((case.name.to_string(), run(case.args).1));
    }
    for (name, text) in &texts {
        let model = load_str(text).map_err(|e| format!("{name}: {e}"))?;
        let saved = save(&model);
        let again = load_str(&saved).map_err(|e| format!("{name} (saved): {e}"))?;
        if again != model {
            return Err(format!("{name}: reloaded model differs"));
        }
        if save(&again) != saved {
            return Err(format!("{name}: second save differs"));
        }
    }
    Ok(texts.len())
}
