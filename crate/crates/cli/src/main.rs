use std::process::ExitCode;
use std::time::Instant;

use clap::{CommandFactory, Parser};
use serde_json::{json, Value};

use fermionic::qseries::PresetRegistry;
use fermionic_cli::args::{Cli, Format};
use fermionic_cli::{execute, render, run::exit_code};

/// Subcommand path such as `poly add`, read off the serialized arguments.
fn command_name(v: &Value) -> (String, Value) {
    let mut name = Vec::new();
    let mut cur = v.clone();
    loop {
        match cur {
            Value::String(s) => return (join(name, s), json!({})),
            Value::Object(ref m) if m.len() == 1 => {
                let (k, inner) = m.iter().next().unwrap();
                name.push(k.clone());
                match inner.get("op") {
                    Some(op) => cur = op.clone(),
                    None => return (name.join(" "), inner.clone()),
                }
            }
            other => return (name.join(" "), other),
        }
    }
}

fn join(mut name: Vec<String>, last: String) -> String {
    name.push(last);
    name.join(" ")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if cli.version {
        let registry = match PresetRegistry::load() {
            Ok(r) => r.version(),
            Err(e) => format!("unavailable: {e}"),
        };
        println!("fermionic {}", fermionic::VERSION);
        println!("preset registry {registry}");
        return ExitCode::SUCCESS;
    }
    let Some(cmd) = cli.command else {
        eprintln!("{}", Cli::command().render_usage());
        return ExitCode::from(2);
    };
    let (command, input) = command_name(&serde_json::to_value(&cmd).expect("arguments serialize"));
    let start = Instant::now();
    let outcome = match execute(&cmd) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    let timing = if cli.timing {
        json!({ "elapsed_ms": start.elapsed().as_secs_f64() * 1000.0 })
    } else {
        Value::Null
    };
    let envelope = json!({
        "command": command,
        "input": input,
        "result": outcome.result,
        "timing": timing,
        "version": fermionic::VERSION,
    });
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&envelope).expect("json")),
        Format::Text => print!("{}", render::text(&envelope)),
    }
    ExitCode::from(outcome.exit as u8)
}
