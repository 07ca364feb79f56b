//! Command-line grammar.

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "fermionic",
    about = "Exact unrestricted Kostka polynomials, rigged configurations and q-series identities",
    disable_version_flag = true
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Append wall-clock timing to the output (breaks byte-identical reruns).
    #[arg(long, global = true)]
    pub timing: bool,
    /// Print library and preset-registry versions.
    #[arg(long)]
    pub version: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

/// An instance: tensor factors, rank and weight.
#[derive(Args, Debug, Serialize)]
pub struct Instance {
    /// Tensor factors as rectangles `RxC`, e.g. `1x2,1x1`.
    #[arg(long, allow_hyphen_values = true)]
    pub shapes: String,
    /// Rank of `sl_n`.
    #[arg(long)]
    pub n: usize,
    /// Weight as a comma-separated composition.
    #[arg(long)]
    pub weight: String,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Polynomial arithmetic.
    Poly {
        #[command(subcommand)]
        op: PolyOp,
    },
    /// Gaussian binomial `[m choose k]_q`.
    Qbinom { m: u64, #[arg(allow_hyphen_values = true)] k: i64 },
    /// Truncated power series arithmetic.
    Series {
        #[command(subcommand)]
        op: SeriesOp,
    },
    /// Expansion of `(sign·q^exponent; q^step)_length`.
    Pochhammer {
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        sign: i8,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        exponent: String,
        #[arg(long, default_value = "1")]
        step: String,
        /// A nonnegative integer or `inf`.
        #[arg(long)]
        length: String,
        #[arg(long)]
        order: i64,
    },
    /// Semistandard tableaux of a shape and content.
    Ssyt {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        content: String,
    },
    /// Charge of a word with partition content.
    Charge {
        #[arg(long)]
        word: String,
    },
    /// Kostka–Foulkes polynomial `K_{λμ}(q)`.
    KostkaFoulkes {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
    },
    /// Kostka number `K_{λμ}`.
    KostkaNumber {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
    },
    /// All paths of an instance.
    Paths {
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        highest_weight_only: bool,
    },
    /// Crystal operators on a path such as `12(x)1`.
    Crystal {
        #[command(subcommand)]
        op: CrystalOp,
    },
    /// Local and intrinsic energy.
    Energy {
        #[command(subcommand)]
        op: EnergyOp,
    },
    /// All unrestricted rigged configurations of an instance.
    RcList {
        #[command(flatten)]
        instance: Instance,
    },
    /// Vacancy numbers, lower bounds, cocharge and validity of one rigged configuration.
    RcInfo {
        /// Levels in brackets, rows as `length:rigging`, e.g. `[2:0,1:-1][1:0]`.
        #[arg(long, allow_hyphen_values = true)]
        rc: String,
        #[arg(long)]
        shapes: String,
        #[arg(long)]
        n: usize,
    },
    /// The path/rigged-configuration bijection.
    #[command(group(ArgGroup::new("mode").required(true).args(["path", "rc", "check"])))]
    Bijection {
        /// Map this path to its rigged configuration.
        #[arg(long)]
        path: Option<String>,
        /// Map this rigged configuration to its path.
        #[arg(long, allow_hyphen_values = true)]
        rc: Option<String>,
        /// Run round trips and the statistic check over the whole instance.
        #[arg(long, requires = "weight")]
        check: bool,
        #[arg(long)]
        shapes: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        weight: Option<String>,
    },
    /// Unrestricted Kostka polynomial from either side of the identity.
    Kostka {
        #[command(flatten)]
        instance: Instance,
        #[arg(long, value_enum, default_value_t = Side::Both)]
        side: Side,
    },
    /// One side of a character preset, without its offset.
    Eval {
        #[arg(long)]
        preset: String,
        #[arg(long, value_enum)]
        side: SumSide,
        #[arg(long)]
        order: i64,
    },
    /// Compares two preset sides `NAME:fermionic|bosonic`, without offsets.
    Compare {
        left: String,
        right: String,
        #[arg(long)]
        order: i64,
    },
    /// Verifies a character preset.
    Character {
        #[arg(long)]
        preset: String,
        /// Defaults to the preset's declared order.
        #[arg(long)]
        order: Option<i64>,
    },
    /// Bailey pairs and the Bailey lemma.
    #[command(group(ArgGroup::new("mode").required(true).args(["verify", "step", "limit"])))]
    Bailey {
        /// Check the defining relation of the seed pair (after any steps).
        #[arg(long)]
        verify: bool,
        /// Apply `--steps` lemma steps with `--rho`, `--sigma` and print the result.
        #[arg(long)]
        step: bool,
        /// Apply `--steps` lemma steps, then the `n → ∞` limit with `--rho`, `--sigma`.
        #[arg(long)]
        limit: bool,
        #[arg(long, value_enum, default_value_t = Seed::Unit)]
        pair: Seed,
        /// Base exponent `k` with `a = q^k`.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        k: String,
        #[arg(long, default_value_t = 6)]
        max_index: usize,
        #[arg(long)]
        order: i64,
        /// `inf` or `[-]q^R`.
        #[arg(long, default_value = "inf", allow_hyphen_values = true)]
        rho: String,
        #[arg(long, default_value = "inf", allow_hyphen_values = true)]
        sigma: String,
        #[arg(long, default_value_t = 0)]
        steps: usize,
        /// Negative-control fixture: double `β_n` at this index before checking.
        #[arg(long)]
        corrupt_beta: Option<usize>,
    },
    /// Lists the preset registry.
    Presets,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolyOp {
    Add { #[arg(allow_hyphen_values = true)] a: String, #[arg(allow_hyphen_values = true)] b: String },
    Mul { #[arg(allow_hyphen_values = true)] a: String, #[arg(allow_hyphen_values = true)] b: String },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesOp {
    /// Truncation of a polynomial.
    FromPoly {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(long)]
        order: u64,
    },
    Add {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        order: u64,
    },
    Mul {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        order: u64,
    },
    Invert {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(long)]
        order: u64,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrystalOp {
    /// Apply `f_i`.
    F {
        #[arg(long)]
        path: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
    },
    /// Apply `e_i`.
    E {
        #[arg(long)]
        path: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
    },
    /// Whether every `e_i` annihilates the path.
    Hw {
        #[arg(long)]
        path: String,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnergyOp {
    /// Local energy `H(u ⊗ v)` of two rows.
    Local {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        n: usize,
    },
    /// Intrinsic energy of a path.
    Path {
        #[arg(long)]
        path: String,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Fermionic,
    Path,
    Both,
    Restricted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SumSide {
    Fermionic,
    Bosonic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Seed {
    Unit,
    ConjugateUnit,
}
