//! Theta-like sums `Σ_{j∈Z} c (±1)^j q^{aj²+bj+c} Π (1 + ε q^{uj+v})^p`
//! times a product of Pochhammer symbols.
//!
//! A factor whose exponent `uj+v` is negative is rewritten as
//! `ε^p q^{p(uj+v)} (1 + ε q^{-(uj+v)})^p`, so every factor has valuation
//! zero and a term contributes only when its shifted exponent is within the
//! truncation bound. The shifted exponent is at least
//! `aj² - B|j| + c - S` with `B = |b| + Σ|pu|` and `S = Σ|pv|`, which is
//! what bounds the range of `j`.

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use super::{power_series, prefactor_series, Prefactor};
use crate::error::{Error, Result};
use crate::qalg::{series_add, series_mul, PochhammerLength, PochhammerSpec, TruncatedSeries};

/// `(1 + sign·q^{slope·j + intercept})^power`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BinomialFactor {
    pub sign: i8,
    pub slope: Rational64,
    pub intercept: Rational64,
    pub power: i32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BosonicTerm {
    pub coefficient: i64,
    /// Multiply the `j`-th summand by `(-1)^j`.
    pub alternating: bool,
    /// `a` in `aj² + bj + c`; must be positive.
    pub quadratic: Rational64,
    pub linear: Rational64,
    pub constant: Rational64,
    pub factors: Vec<BinomialFactor>,
}

impl BosonicTerm {
    /// `Σ_j (-1)^j q^{aj²+bj}`.
    pub fn theta(a: Rational64, b: Rational64) -> Self {
        BosonicTerm {
            coefficient: 1,
            alternating: true,
            quadratic: a,
            linear: b,
            constant: Rational64::zero(),
            factors: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BosonicSumSpec {
    pub terms: Vec<BosonicTerm>,
    pub prefactor: Vec<Prefactor>,
}

impl BosonicSumSpec {
    /// `Σ_j (-1)^j q^{aj²+bj} / (q;q)_∞^k`; `k = 0` gives the bare theta sum.
    pub fn theta_over_euler(a: Rational64, b: Rational64, k: i32) -> Self {
        BosonicSumSpec {
            terms: vec![BosonicTerm::theta(a, b)],
            prefactor: if k == 0 { Vec::new() } else { vec![Prefactor::euler(-k)] },
        }
    }
}

/// One summand after rewriting: coefficient, exponent and positive-exponent factors.
struct Summand {
    coefficient: BigInt,
    exponent: Rational64,
    factors: Vec<(i8, Rational64, i32)>,
}

fn summand(t: &BosonicTerm, j: i64) -> Result<Option<Summand>> {
    let jr = Rational64::from_integer(j);
    let mut coefficient = BigInt::from(t.coefficient);
    if t.alternating && j % 2 != 0 {
        coefficient = -coefficient;
    }
    let mut exponent = t.quadratic * jr * jr + t.linear * jr + t.constant;
    let mut factors = Vec::new();
    for f in &t.factors {
        let mut e = f.slope * jr + f.intercept;
        if e.is_zero() {
            if f.power < 0 {
                return Err(Error::Invalid(format!("factor (1 + {}) at j = {j} is not invertible", f.sign)));
            }
            coefficient *= BigInt::from(1 + f.sign as i64).pow(f.power as u32);
            continue;
        }
        if e < Rational64::zero() {
            exponent += Rational64::from_integer(f.power as i64) * e;
            if f.sign < 0 && f.power % 2 != 0 {
                coefficient = -coefficient;
            }
            e = -e;
        }
        factors.push((f.sign, e, f.power));
    }
    Ok(if coefficient.is_zero() { None } else { Some(Summand { coefficient, exponent, factors }) })
}

/// The largest `|j|` that can contribute through `through`.
fn j_range(t: &BosonicTerm, through: Rational64) -> Result<i64> {
    let a = t.quadratic;
    if a <= Rational64::zero() {
        return Err(Error::NonGrowing(format!("bosonic quadratic coefficient {a} must be positive")));
    }
    let mut slope = t.linear.abs();
    let mut slack = Rational64::zero();
    for f in &t.factors {
        let p = Rational64::from_integer(f.power.unsigned_abs() as i64);
        slope += p * f.slope.abs();
        slack += p * f.intercept.abs();
    }
    let lower = |j: i64| {
        let j = Rational64::from_integer(j);
        a * j * j - slope * j + t.constant - slack
    };
    let vertex = (slope / (a * Rational64::from_integer(2))).ceil().to_integer();
    let mut j = vertex.max(0);
    while lower(j) <= through {
        j += 1;
    }
    Ok(j)
}

pub fn eval_bosonic(spec: &BosonicSumSpec, order: i64) -> Result<TruncatedSeries> {
    eval_bosonic_through(spec, Rational64::from_integer(order))
}

/// Known through exponent `through`.
pub fn eval_bosonic_through(spec: &BosonicSumSpec, through: Rational64) -> Result<TruncatedSeries> {
    let mut summands = Vec::new();
    for t in &spec.terms {
        let top = j_range(t, through)?;
        for j in -top..=top {
            if let Some(s) = summand(t, j)? {
                if s.exponent <= through {
                    summands.push(s);
                }
            }
        }
    }
    let lowest = summands.iter().map(|s| s.exponent).min().unwrap_or(through);
    let mut acc = TruncatedSeries::zero_through(through, *through.denom() as u32, through);
    for s in &summands {
        let reach = through - s.exponent;
        let mut term = TruncatedSeries::one(reach);
        for &(sign, e, power) in &s.factors {
            // 1 + sign·q^e is the one-factor symbol (-sign·q^e; q)_1.
            let one = PochhammerSpec {
                sign: -sign,
                exponent: e,
                step: Rational64::one(),
                length: PochhammerLength::Finite(1),
            };
            term = series_mul(&term, &power_series(&one, power, reach)?);
        }
        acc = series_add(&acc, &term.scale(&s.coefficient, s.exponent).truncate_through(through));
    }
    if !spec.prefactor.is_empty() {
        let reach = through - lowest.min(Rational64::zero());
        acc = series_mul(&acc, &prefactor_series(&spec.prefactor, reach)?);
    }
    Ok(acc.truncate_through(through))
}
