mod common;

use std::collections::BTreeSet;

use clap::CommandFactory;
use fermionic_cli::args::Cli;
use fermionic_cli::registry::REGISTRY;

/// Every library operation a user can reach.
const OPERATIONS: &[&str] = &[
    "poly_add", "poly_mul", "q_binomial", "series_from_poly", "series_add", "series_mul",
    "series_invert", "pochhammer", "enumerate_ssyt", "charge", "kostka_foulkes", "kostka_number",
    "enumerate_paths", "f_op", "e_op", "is_highest_weight", "local_energy", "intrinsic_energy",
    "vacancy", "lower_bound", "enumerate_rc", "cocharge", "path_to_rc", "rc_to_path",
    "check_statistic", "fermionic_kostka", "path_kostka", "restricted_kostka", "verify_identity",
    "verify_bailey_pair", "bailey_step", "eval_fermionic", "eval_bosonic", "compare_series",
    "character",
];

fn leaf_commands(cmd: &clap::Command, prefix: &str, out: &mut BTreeSet<String>) {
    for sub in cmd.get_subcommands().filter(|s| s.get_name() != "help") {
        let name = if prefix.is_empty() { sub.get_name().to_string() } else { format!("{prefix} {}", sub.get_name()) };
        if sub.has_subcommands() {
            leaf_commands(sub, &name, out);
        } else {
            out.insert(name);
        }
    }
}

#[test]
fn every_operation_is_reachable_from_exactly_one_subcommand() {
    for op in OPERATIONS {
        let owners: Vec<&str> = REGISTRY.iter().filter(|(_, ops)| ops.contains(op)).map(|(c, _)| *c).collect();
        assert_eq!(owners.len(), 1, "{op} is exposed by {owners:?}");
    }
}

#[test]
fn registry_matches_the_command_grammar() {
    let mut grammar = BTreeSet::new();
    leaf_commands(&Cli::command(), "", &mut grammar);
    let registered: BTreeSet<String> = REGISTRY.iter().map(|(c, _)| c.to_string()).collect();
    assert_eq!(grammar, registered);
}

#[test]
fn every_subcommand_has_a_golden_case_and_a_schema() {
    let schema = common::schema();
    let listed: BTreeSet<&str> =
        schema["properties"]["command"]["enum"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    for (cmd, _) in REGISTRY {
        let words: Vec<&str> = cmd.split(' ').collect();
        assert!(
            common::CASES.iter().any(|c| c.args.len() >= words.len() && c.args[..words.len()] == words[..]),
            "no golden case for `{cmd}`"
        );
        assert!(listed.contains(cmd), "no schema branch for `{cmd}`");
    }
}
