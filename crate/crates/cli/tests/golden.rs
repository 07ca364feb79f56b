mod common;

use common::{golden_dir, run, schema, CASES};
use serde_json::Value;

const FORMATS: [&str; 2] = ["text", "json"];

/// Set `UPDATE_GOLDEN=1` to rewrite the expected transcripts.
#[test]
fn transcripts_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatched = Vec::new();
    for c in CASES {
        for f in FORMATS {
            let got = run(c.args, f).transcript();
            let file = golden_dir().join(format!("{}.{f}.txt", c.name));
            if update {
                std::fs::write(&file, &got).unwrap();
                continue;
            }
            let want = std::fs::read_to_string(&file).unwrap_or_else(|_| panic!("missing {}", file.display()));
            if got != want {
                mismatched.push(format!("{}.{f}", c.name));
            }
        }
    }
    assert!(mismatched.is_empty(), "golden mismatch: {mismatched:?}");
}

#[test]
fn exit_codes_follow_the_contract() {
    for c in CASES {
        let r = run(c.args, "json");
        assert_eq!(r.code, c.exit, "{}: {}", c.name, r.stderr);
        if matches!(r.code, 0 | 3) {
            assert!(r.stderr.is_empty(), "{}", c.name);
        } else {
            assert!(r.stdout.is_empty() && !r.stderr.is_empty(), "{}", c.name);
        }
    }
}

#[test]
fn reruns_are_byte_identical() {
    for c in CASES {
        for f in FORMATS {
            let a = run(c.args, f);
            let b = run(c.args, f);
            assert_eq!(a.transcript(), b.transcript(), "{}.{f}", c.name);
        }
    }
}

#[test]
fn json_output_validates_against_schema() {
    let validator = jsonschema::validator_for(&schema()).expect("schema compiles");
    for c in CASES.iter().filter(|c| matches!(c.exit, 0 | 3)) {
        let out: Value = serde_json::from_str(&run(c.args, "json").stdout).expect("json stdout");
        let errors: Vec<String> = validator.iter_errors(&out).map(|e| format!("{e} at {}", e.instance_path)).collect();
        assert!(errors.is_empty(), "{}: {errors:?}", c.name);
    }
}

#[test]
fn schema_rejects_a_malformed_payload() {
    let validator = jsonschema::validator_for(&schema()).unwrap();
    let mut out: Value = serde_json::from_str(&run(&["qbinom", "4", "2"], "json").stdout).unwrap();
    out["result"]["polynomial"]["terms"][0][1] = Value::from(1);
    assert!(!validator.is_valid(&out));
}

#[test]
fn text_is_a_rendering_of_the_json_payload() {
    for c in CASES.iter().filter(|c| matches!(c.exit, 0 | 3)) {
        let json: Value = serde_json::from_str(&run(c.args, "json").stdout).unwrap();
        assert_eq!(run(c.args, "text").stdout, fermionic_cli::render::text(&json), "{}", c.name);
    }
}

#[test]
fn timing_is_opt_in() {
    let r = run(&["qbinom", "5", "2", "--timing"], "json");
    let out: Value = serde_json::from_str(&r.stdout).unwrap();
    assert!(out["timing"]["elapsed_ms"].is_number());
    let validator = jsonschema::validator_for(&schema()).unwrap();
    assert!(validator.is_valid(&out));
    let plain: Value = serde_json::from_str(&run(&["qbinom", "5", "2"], "json").stdout).unwrap();
    assert!(plain["timing"].is_null());
}

#[test]
fn version_names_library_and_registry() {
    let out = std::process::Command::new(common::bin()).arg("--version").output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success());
    assert!(text.starts_with(&format!("fermionic {}\n", fermionic::VERSION)), "{text}");
    assert!(text.contains("preset registry 1 (fermionic-preset/1, 8 presets, builtin)"), "{text}");
}

#[test]
fn preset_directory_override_is_honoured() {
    let dir = std::env::temp_dir().join(format!("fermionic-presets-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/presets/rogers-ramanujan-2.toml");
    std::fs::copy(src, dir.join("only.toml")).unwrap();
    let run = |name: &str| {
        std::process::Command::new(common::bin())
            .args(["character", "--preset", name])
            .env("FERMIONIC_PRESET_DIR", &dir)
            .output()
            .unwrap()
    };
    assert_eq!(run("rogers-ramanujan-2").status.code(), Some(0));
    assert_eq!(run("rogers-ramanujan-1").status.code(), Some(5));
    std::fs::remove_dir_all(&dir).unwrap();
}
