//! Which library operations each subcommand exposes.

/// Subcommand path and the operations it reaches.
pub const REGISTRY: &[(&str, &[&str])] = &[
    ("poly add", &["poly_add"]),
    ("poly mul", &["poly_mul"]),
    ("qbinom", &["q_binomial"]),
    ("series from-poly", &["series_from_poly"]),
    ("series add", &["series_add"]),
    ("series mul", &["series_mul"]),
    ("series invert", &["series_invert"]),
    ("pochhammer", &["pochhammer"]),
    ("ssyt", &["enumerate_ssyt"]),
    ("charge", &["charge"]),
    ("kostka-foulkes", &["kostka_foulkes"]),
    ("kostka-number", &["kostka_number"]),
    ("paths", &["enumerate_paths"]),
    ("crystal f", &["f_op"]),
    ("crystal e", &["e_op"]),
    ("crystal hw", &["is_highest_weight"]),
    ("energy local", &["local_energy"]),
    ("energy path", &["intrinsic_energy"]),
    ("rc-list", &["enumerate_rc"]),
    ("rc-info", &["vacancy", "lower_bound", "cocharge"]),
    ("bijection", &["path_to_rc", "rc_to_path", "check_statistic"]),
    ("kostka", &["fermionic_kostka", "path_kostka", "restricted_kostka", "verify_identity"]),
    ("eval", &["eval_fermionic", "eval_bosonic"]),
    ("compare", &["compare_series"]),
    ("character", &["character"]),
    ("bailey", &["verify_bailey_pair", "bailey_step", "weak_limit"]),
    ("presets", &[]),
];

/// Operations of a subcommand path, if registered.
pub fn operations(command: &str) -> Option<&'static [&'static str]> {
    REGISTRY.iter().find(|(c, _)| *c == command).map(|(_, ops)| *ops)
}
