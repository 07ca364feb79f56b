//! Named character identities stored as TOML files.
//!
//! A preset pairs a [`FermionicSumSpec`] with a [`BosonicSumSpec`], an overall
//! exponent offset (conformal weight minus `c/24`) and a declared
//! verification order. The registry refuses files without an order of at
//! least [`MIN_ORDER`]. Built-in presets are compiled in; setting
//! [`PRESET_DIR_ENV`] replaces them with every `*.toml` file in that
//! directory.

use std::path::Path as FsPath;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::Deserialize;

use super::bosonic::{eval_bosonic, BinomialFactor, BosonicSumSpec, BosonicTerm};
use super::fermionic::{eval_fermionic, AffineForm, FermionicSumSpec, Restriction, SumFactor};
use super::Prefactor;
use crate::error::{Error, Result};
use crate::qalg::{
    compare_series, parse_rational, PochhammerLength, PochhammerSpec, SeriesComparison,
    TruncatedSeries,
};

pub const PRESET_FORMAT: &str = "fermionic-preset/1";
pub const PRESET_DIR_ENV: &str = "FERMIONIC_PRESET_DIR";
pub const REGISTRY_VERSION: &str = "1";
/// Smallest verification order a preset may declare.
pub const MIN_ORDER: i64 = 20;

const BUILTIN: &[(&str, &str)] = &[
    ("andrews-gordon-7-1.toml", include_str!("../../presets/andrews-gordon-7-1.toml")),
    ("n1-sm28-ns-h-1-4.toml", include_str!("../../presets/n1-sm28-ns-h-1-4.toml")),
    ("n1-sm28-ns-perturbed.toml", include_str!("../../presets/n1-sm28-ns-perturbed.toml")),
    ("n1-sm28-ns-vacuum.toml", include_str!("../../presets/n1-sm28-ns-vacuum.toml")),
    ("n2-k1-ns-vacuum.toml", include_str!("../../presets/n2-k1-ns-vacuum.toml")),
    ("rogers-ramanujan-1.toml", include_str!("../../presets/rogers-ramanujan-1.toml")),
    ("rogers-ramanujan-1-perturbed.toml", include_str!("../../presets/rogers-ramanujan-1-perturbed.toml")),
    ("rogers-ramanujan-2.toml", include_str!("../../presets/rogers-ramanujan-2.toml")),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preset {
    pub name: String,
    pub family: String,
    pub order: i64,
    pub offset: Rational64,
    /// Expected to fail verification.
    pub negative_control: bool,
    pub provenance: String,
    pub fermionic: FermionicSumSpec,
    pub bosonic: BosonicSumSpec,
}

/// Both sides of a preset, shifted by its offset, and their comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterReport {
    pub name: String,
    pub order: i64,
    pub offset: Rational64,
    pub fermionic: TruncatedSeries,
    pub bosonic: TruncatedSeries,
    pub comparison: SeriesComparison,
    pub equal: bool,
}

/// Evaluates both sides through `offset + order` and compares them.
pub fn character(preset: &Preset, order: i64) -> Result<CharacterReport> {
    let one = BigInt::one();
    let f = eval_fermionic(&preset.fermionic, order)?.scale(&one, preset.offset);
    let b = eval_bosonic(&preset.bosonic, order)?.scale(&one, preset.offset);
    let comparison = compare_series(&f, &b);
    Ok(CharacterReport {
        name: preset.name.clone(),
        order,
        offset: preset.offset,
        equal: comparison.equal,
        fermionic: f,
        bosonic: b,
        comparison,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresetRegistry {
    presets: Vec<Preset>,
    /// Where the presets came from: `builtin` or a directory.
    pub source: String,
}

impl PresetRegistry {
    pub fn builtin() -> Result<Self> {
        let presets = BUILTIN.iter().map(|(_, text)| Preset::from_toml(text)).collect::<Result<_>>()?;
        Self::from_presets(presets, "builtin".into())
    }

    pub fn from_dir(dir: &FsPath) -> Result<Self> {
        let bad = |m: String| Error::Preset { name: dir.display().to_string(), message: m };
        let mut files: Vec<_> = std::fs::read_dir(dir)
            .map_err(|e| bad(e.to_string()))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "toml"))
            .collect();
        files.sort();
        let presets = files
            .iter()
            .map(|f| Preset::from_toml(&std::fs::read_to_string(f).map_err(|e| bad(e.to_string()))?))
            .collect::<Result<_>>()?;
        Self::from_presets(presets, dir.display().to_string())
    }

    /// The directory named by [`PRESET_DIR_ENV`] if set, otherwise the built-ins.
    pub fn load() -> Result<Self> {
        match std::env::var_os(PRESET_DIR_ENV) {
            Some(dir) if !dir.is_empty() => Self::from_dir(FsPath::new(&dir)),
            _ => Self::builtin(),
        }
    }

    fn from_presets(mut presets: Vec<Preset>, source: String) -> Result<Self> {
        presets.sort_by(|a, b| a.name.cmp(&b.name));
        if let Some(w) = presets.windows(2).find(|w| w[0].name == w[1].name) {
            return Err(Error::Preset { name: w[0].name.clone(), message: "duplicate preset name".into() });
        }
        Ok(PresetRegistry { presets, source })
    }

    pub fn presets(&self) -> &[Preset] {
        &self.presets
    }

    pub fn get(&self, name: &str) -> Result<&Preset> {
        self.presets.iter().find(|p| p.name == name).ok_or_else(|| Error::UnknownPreset(name.into()))
    }

    pub fn version(&self) -> String {
        format!("{REGISTRY_VERSION} ({PRESET_FORMAT}, {} presets, {})", self.presets.len(), self.source)
    }
}

// File representation.

#[derive(Deserialize)]
#[serde(untagged)]
enum Rat {
    Int(i64),
    Text(String),
}

impl Rat {
    fn value(&self) -> Result<Rational64> {
        match self {
            Rat::Int(n) => Ok(Rational64::from_integer(*n)),
            Rat::Text(s) => Ok(parse_rational(s)?),
        }
    }
}

fn rat_zero() -> Rat {
    Rat::Int(0)
}

fn rat_one() -> Rat {
    Rat::Int(1)
}

fn plus() -> i8 {
    1
}

fn one_i32() -> i32 {
    1
}

fn yes() -> bool {
    true
}

#[derive(Deserialize)]
#[serde(untagged)]
enum LengthFile {
    Finite(u64),
    Named(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AffineFile {
    coefficients: Vec<i64>,
    #[serde(default)]
    constant: i64,
}

impl AffineFile {
    fn form(&self) -> AffineForm {
        AffineForm::new(self.coefficients.clone(), self.constant)
    }
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum FactorFile {
    Pochhammer {
        #[serde(default = "plus")]
        sign: i8,
        exponent: Rat,
        #[serde(default = "rat_one")]
        step: Rat,
        length: AffineFile,
        power: i32,
    },
    QBinomial {
        top: AffineFile,
        bottom: AffineFile,
        #[serde(default = "one_i32")]
        power: i32,
    },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum RestrictionFile {
    Congruence {
        coefficients: Vec<i64>,
        #[serde(default)]
        constant: i64,
        modulus: i64,
    },
    Inequality {
        coefficients: Vec<i64>,
        #[serde(default)]
        constant: i64,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PrefactorFile {
    #[serde(default = "plus")]
    sign: i8,
    exponent: Rat,
    #[serde(default = "rat_one")]
    step: Rat,
    length: LengthFile,
    power: i32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FermionicFile {
    quadratic: Vec<Vec<Rat>>,
    linear: Vec<Rat>,
    #[serde(default = "rat_zero")]
    constant: Rat,
    #[serde(default)]
    parity: Vec<i64>,
    #[serde(default)]
    factors: Vec<FactorFile>,
    #[serde(default)]
    restrictions: Vec<RestrictionFile>,
    #[serde(default)]
    prefactor: Vec<PrefactorFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BinomialFile {
    #[serde(default = "plus")]
    sign: i8,
    slope: Rat,
    intercept: Rat,
    power: i32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TermFile {
    #[serde(default = "one_i64")]
    coefficient: i64,
    #[serde(default = "yes")]
    alternating: bool,
    quadratic: Rat,
    #[serde(default = "rat_zero")]
    linear: Rat,
    #[serde(default = "rat_zero")]
    constant: Rat,
    #[serde(default)]
    factors: Vec<BinomialFile>,
}

fn one_i64() -> i64 {
    1
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BosonicFile {
    terms: Vec<TermFile>,
    #[serde(default)]
    prefactor: Vec<PrefactorFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PresetFile {
    format: String,
    name: String,
    family: String,
    order: Option<i64>,
    #[serde(default = "rat_zero")]
    offset: Rat,
    #[serde(default)]
    negative_control: bool,
    provenance: String,
    fermionic: FermionicFile,
    bosonic: BosonicFile,
}

fn prefactor(p: &PrefactorFile) -> Result<Prefactor> {
    let length = match &p.length {
        LengthFile::Finite(n) => PochhammerLength::Finite(*n),
        LengthFile::Named(s) if s == "infinity" => PochhammerLength::Infinite,
        LengthFile::Named(s) => return Err(Error::Invalid(format!("bad Pochhammer length `{s}`"))),
    };
    let spec = PochhammerSpec { sign: p.sign, exponent: p.exponent.value()?, step: p.step.value()?, length };
    Ok(Prefactor { spec, power: p.power })
}

fn sign(s: i8) -> Result<i8> {
    if s == 1 || s == -1 {
        Ok(s)
    } else {
        Err(Error::Invalid(format!("sign must be 1 or -1, got {s}")))
    }
}

impl FermionicFile {
    fn spec(&self) -> Result<FermionicSumSpec> {
        let factors = self
            .factors
            .iter()
            .map(|f| {
                Ok(match f {
                    FactorFile::Pochhammer { sign: s, exponent, step, length, power } => SumFactor::Pochhammer {
                        sign: sign(*s)?,
                        exponent: exponent.value()?,
                        step: step.value()?,
                        length: length.form(),
                        power: *power,
                    },
                    FactorFile::QBinomial { top, bottom, power } => {
                        SumFactor::QBinomial { top: top.form(), bottom: bottom.form(), power: *power }
                    }
                })
            })
            .collect::<Result<_>>()?;
        let restrictions = self
            .restrictions
            .iter()
            .map(|r| match r {
                RestrictionFile::Congruence { coefficients, constant, modulus } => Restriction::Congruence {
                    form: AffineForm::new(coefficients.clone(), *constant),
                    modulus: *modulus,
                },
                RestrictionFile::Inequality { coefficients, constant } => {
                    Restriction::Inequality { form: AffineForm::new(coefficients.clone(), *constant) }
                }
            })
            .collect();
        Ok(FermionicSumSpec {
            quadratic: self
                .quadratic
                .iter()
                .map(|r| r.iter().map(Rat::value).collect::<Result<_>>())
                .collect::<Result<_>>()?,
            linear: self.linear.iter().map(Rat::value).collect::<Result<_>>()?,
            constant: self.constant.value()?,
            parity: self.parity.clone(),
            factors,
            restrictions,
            prefactor: self.prefactor.iter().map(prefactor).collect::<Result<_>>()?,
        })
    }
}

impl BosonicFile {
    fn spec(&self) -> Result<BosonicSumSpec> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(BosonicTerm {
                    coefficient: t.coefficient,
                    alternating: t.alternating,
                    quadratic: t.quadratic.value()?,
                    linear: t.linear.value()?,
                    constant: t.constant.value()?,
                    factors: t
                        .factors
                        .iter()
                        .map(|f| {
                            Ok(BinomialFactor {
                                sign: sign(f.sign)?,
                                slope: f.slope.value()?,
                                intercept: f.intercept.value()?,
                                power: f.power,
                            })
                        })
                        .collect::<Result<_>>()?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(BosonicSumSpec { terms, prefactor: self.prefactor.iter().map(prefactor).collect::<Result<_>>()? })
    }
}

impl Preset {
    /// Parses and validates one preset file.
    pub fn from_toml(text: &str) -> Result<Self> {
        let file: PresetFile = toml::from_str(text)
            .map_err(|e| Error::Preset { name: "<unparsed>".into(), message: e.to_string() })?;
        let name = file.name.clone();
        let wrap = |e: Error| Error::Preset { name: name.clone(), message: e.to_string() };
        let fail = |m: String| Err(Error::Preset { name: name.clone(), message: m });
        if file.format != PRESET_FORMAT {
            return fail(format!("format `{}` is not `{PRESET_FORMAT}`", file.format));
        }
        let Some(order) = file.order else {
            return fail("no declared verification order".into());
        };
        if order < MIN_ORDER {
            return fail(format!("declared order {order} is below {MIN_ORDER}"));
        }
        let fermionic = file.fermionic.spec().map_err(wrap)?;
        fermionic.growth().map_err(wrap)?;
        let bosonic = file.bosonic.spec().map_err(wrap)?;
        if bosonic.terms.iter().any(|t| t.quadratic <= Rational64::zero()) {
            return fail("bosonic quadratic coefficients must be positive".into());
        }
        Ok(Preset {
            name: file.name,
            family: file.family,
            order,
            offset: file.offset.value().map_err(wrap)?,
            negative_control: file.negative_control,
            provenance: file.provenance,
            fermionic,
            bosonic,
        })
    }
}
