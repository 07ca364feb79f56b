//! q-series identities: Bailey pairs and the Bailey lemma, generic fermionic
//! and bosonic evaluators, and named character presets.
//!
//! All evaluation is exact. Fractional exponents are handled by the rational
//! offset and grid of [`TruncatedSeries`]; every result records the exponent
//! through which it is guaranteed.

mod bailey;
mod bosonic;
mod fermionic;
mod preset;

pub use bailey::{
    bailey_step, verify_bailey_pair, weak_limit, BaileyFailure, BaileyPair, BaileyParam,
    BaileyReport,
};
pub use bosonic::{eval_bosonic, eval_bosonic_through, BinomialFactor, BosonicSumSpec, BosonicTerm};
pub use fermionic::{
    eval_fermionic, eval_fermionic_through, lattice_points, AffineForm, FermionicSumSpec, Growth,
    Restriction, SumFactor,
};
pub use preset::{
    character, CharacterReport, Preset, PresetRegistry, MIN_ORDER, PRESET_DIR_ENV, PRESET_FORMAT,
};

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::qalg::{
    pochhammer_through, series_invert, series_mul, PochhammerLength, PochhammerSpec,
    TruncatedSeries,
};

/// A Pochhammer symbol raised to a nonzero integer power.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prefactor {
    pub spec: PochhammerSpec,
    pub power: i32,
}

impl Prefactor {
    /// `(q;q)_∞^power`.
    pub fn euler(power: i32) -> Self {
        Prefactor { spec: PochhammerSpec::standard(1, PochhammerLength::Infinite), power }
    }

    fn check(&self) -> Result<()> {
        if self.power == 0 {
            return Err(Error::Invalid("prefactor power must be nonzero".into()));
        }
        if self.spec.exponent <= Rational64::zero() {
            return Err(Error::Invalid(format!(
                "prefactor Pochhammer needs exponent > 0, got {}",
                self.spec.exponent
            )));
        }
        Ok(())
    }
}

/// `spec^power` through `through`; negative powers need a unit constant term.
pub(crate) fn power_series(
    spec: &PochhammerSpec,
    power: i32,
    through: Rational64,
) -> Result<TruncatedSeries> {
    let base = pochhammer_through(spec, through)?;
    let mut s = base.clone();
    for _ in 1..power.unsigned_abs() {
        s = series_mul(&s, &base);
    }
    if power < 0 {
        s = series_invert(&s)?;
    }
    Ok(s.truncate_through(through))
}

/// Product of prefactors through `through`.
pub(crate) fn prefactor_series(list: &[Prefactor], through: Rational64) -> Result<TruncatedSeries> {
    let mut acc = TruncatedSeries::one(through);
    for p in list {
        p.check()?;
        acc = series_mul(&acc, &power_series(&p.spec, p.power, through)?);
    }
    Ok(acc.truncate_through(through))
}
