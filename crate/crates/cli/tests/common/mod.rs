#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

const fn case(name: &'static str, args: &'static [&'static str], exit: i32) -> Case {
    Case { name, args, exit }
}

/// At least one case per subcommand, plus every nonzero exit code.
pub const CASES: &[Case] = &[
    case("poly-add", &["poly", "add", "1 + q", "q^-1 - q"], 0),
    case("poly-mul", &["poly", "mul", "1 + q", "1 - q + q^2"], 0),
    case("poly-bad", &["poly", "add", "1 +", "q"], 2),
    case("qbinom-4-2", &["qbinom", "4", "2"], 0),
    case("qbinom-outside", &["qbinom", "3", "-1"], 0),
    case("series-from-poly", &["series", "from-poly", "q^-1 + 2 + q^5", "--order", "3"], 0),
    case("series-add", &["series", "add", "1 + q", "q^2", "--order", "4"], 0),
    case("series-mul", &["series", "mul", "1 + q", "1 - q", "--order", "4"], 0),
    case("series-invert", &["series", "invert", "1 - q", "--order", "6"], 0),
    case("series-invert-singular", &["series", "invert", "2 - q", "--order", "6"], 2),
    case("pochhammer-euler", &["pochhammer", "--length", "inf", "--order", "15"], 0),
    case(
        "pochhammer-half",
        &["pochhammer", "--sign", "-1", "--exponent", "1/2", "--length", "3", "--order", "4"],
        0,
    ),
    case("pochhammer-divergent", &["pochhammer", "--exponent", "0", "--length", "inf", "--order", "4"], 2),
    case("ssyt", &["ssyt", "--shape", "2,1", "--content", "1,1,1"], 0),
    case("charge", &["charge", "--word", "2,1,1"], 0),
    case("kostka-foulkes", &["kostka-foulkes", "--lambda", "2,1", "--mu", "1,1,1"], 0),
    case("kostka-foulkes-nonpartition", &["kostka-foulkes", "--lambda", "1,2", "--mu", "1,1,1"], 2),
    case("kostka-number", &["kostka-number", "--lambda", "3,2,1", "--mu", "1,2,1,2"], 0),
    case("paths", &["paths", "--shapes", "1x2,1x1", "--n", "3", "--weight", "1,1,1"], 0),
    case(
        "paths-highest-weight",
        &["paths", "--shapes", "1x1,1x1,1x1", "--n", "3", "--weight", "2,1", "--highest-weight-only"],
        0,
    ),
    case("paths-unsupported", &["paths", "--shapes", "2x1", "--n", "3", "--weight", "1,1"], 4),
    case("crystal-f", &["crystal", "f", "--path", "11(x)2", "--n", "3", "--i", "1"], 0),
    case("crystal-e", &["crystal", "e", "--path", "11(x)2", "--n", "3", "--i", "1"], 0),
    case("crystal-e-none", &["crystal", "e", "--path", "11(x)2", "--n", "3", "--i", "2"], 0),
    case("crystal-hw", &["crystal", "hw", "--path", "1(x)2(x)1", "--n", "2"], 0),
    case("crystal-bad-index", &["crystal", "f", "--path", "1(x)2", "--n", "2", "--i", "2"], 2),
    case("energy-local", &["energy", "local", "--u", "12", "--v", "11", "--n", "2"], 0),
    case("energy-path", &["energy", "path", "--path", "2(x)1(x)1", "--n", "2"], 0),
    case("rc-list", &["rc-list", "--shapes", "1x1,1x1", "--n", "2", "--weight", "1,1"], 0),
    case("rc-list-rows", &["rc-list", "--shapes", "1x2,1x1", "--n", "3", "--weight", "1,1,1"], 0),
    case("rc-info", &["rc-info", "--rc", "[1:0][]", "--shapes", "1x1,1x1", "--n", "3"], 0),
    case("rc-info-invalid", &["rc-info", "--rc", "[1:5][]", "--shapes", "1x1,1x1", "--n", "3"], 0),
    case("bijection-path", &["bijection", "--path", "2(x)1(x)1", "--n", "2"], 0),
    case("bijection-rc", &["bijection", "--rc", "[1:-1]", "--shapes", "1x1,1x1,1x1", "--n", "2"], 0),
    case(
        "bijection-check",
        &["bijection", "--check", "--shapes", "1x2,1x1,1x1", "--n", "3", "--weight", "2,1,1"],
        0,
    ),
    case("bijection-unsupported", &["bijection", "--check", "--shapes", "2x1", "--n", "3", "--weight", "1,1"], 4),
    case("kostka-both", &["kostka", "--shapes", "1x1,1x1", "--n", "2", "--weight", "1,1", "--side", "both"], 0),
    case("kostka-fermionic", &["kostka", "--shapes", "1x2", "--n", "2", "--weight", "1,1", "--side", "fermionic"], 0),
    case(
        "kostka-path",
        &["kostka", "--shapes", "1x2,1x1,1x1", "--n", "3", "--weight", "2,1,1", "--side", "path"],
        0,
    ),
    case(
        "kostka-restricted",
        &["kostka", "--shapes", "1x1,1x1,1x1", "--n", "3", "--weight", "2,1", "--side", "restricted"],
        0,
    ),
    case("kostka-bad-weight", &["kostka", "--shapes", "1x1,1x1", "--n", "2", "--weight", "1,,2"], 2),
    case("kostka-size-mismatch", &["kostka", "--shapes", "1x1,1x1", "--n", "2", "--weight", "3"], 2),
    case("kostka-missing-flag", &["kostka", "--n", "2", "--weight", "1,1"], 2),
    case("eval-fermionic", &["eval", "--preset", "rogers-ramanujan-2", "--side", "fermionic", "--order", "20"], 0),
    case("eval-bosonic", &["eval", "--preset", "n1-sm28-ns-vacuum", "--side", "bosonic", "--order", "6"], 0),
    case(
        "compare-equal",
        &["compare", "andrews-gordon-7-1:fermionic", "andrews-gordon-7-1:bosonic", "--order", "20"],
        0,
    ),
    case(
        "compare-unequal",
        &["compare", "rogers-ramanujan-1:fermionic", "rogers-ramanujan-2:fermionic", "--order", "10"],
        3,
    ),
    case("character-rr1", &["character", "--preset", "rogers-ramanujan-1", "--order", "50"], 0),
    case("character-n2", &["character", "--preset", "n2-k1-ns-vacuum"], 0),
    case("character-perturbed", &["character", "--preset", "rogers-ramanujan-1-perturbed", "--order", "20"], 3),
    case("character-unknown", &["character", "--preset", "no-such-preset"], 5),
    case("bailey-verify", &["bailey", "--verify", "--order", "12"], 0),
    case("bailey-corrupt", &["bailey", "--verify", "--order", "12", "--corrupt-beta", "2"], 3),
    case(
        "bailey-step",
        &["bailey", "--step", "--pair", "unit", "--max-index", "2", "--order", "6", "--rho", "q^1/2"],
        0,
    ),
    case(
        "bailey-limit",
        &["bailey", "--limit", "--pair", "conjugate-unit", "--steps", "1", "--order", "30"],
        0,
    ),
    case("bailey-bad-param", &["bailey", "--verify", "--order", "5", "--rho", "x^2"], 2),
    case("presets", &["presets"], 0),
    case("no-subcommand", &[], 2),
];

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_fermionic")
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    /// Exit code and both streams in one stable document.
    pub fn transcript(&self) -> String {
        format!("exit: {}\n--- stdout\n{}--- stderr\n{}", self.code, self.stdout, self.stderr)
    }
}

pub fn run(args: &[&str], format: &str) -> Run {
    let out = Command::new(bin())
        .args(args)
        .args(["--format", format])
        .env_remove("FERMIONIC_PRESET_DIR")
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub fn schema() -> serde_json::Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas").join("output.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).expect("schema file")).expect("schema json")
}
