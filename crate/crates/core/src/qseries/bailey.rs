//! Bailey pairs relative to `a = q^k` and the Bailey lemma.
//!
//! A pair stores `α_n, β_n` for `n = 0..=M` as truncated series and satisfies
//! `β_n = Σ_{j≤n} α_j / ((q;q)_{n-j} (aq;q)_{n+j})`. One application of the
//! lemma with parameters `ρ, σ` maps it to
//!
//! ```text
//! α'_n = (aq)^n P_ρ(n) P_σ(n) / ((aq/ρ)_n (aq/σ)_n) · α_n
//! β'_n = Σ_j (aq)^j P_ρ(j) P_σ(j) (aq/ρσ)_{n-j} / ((q)_{n-j} (aq/ρ)_n (aq/σ)_n) · β_j
//! ```
//!
//! with the multiplier `P_x(j) = (x)_j x^{-j}`. For `x = ε q^r` this is
//! `ε^j q^{-rj} (ε q^r)_j`; as `x → ∞` it tends to `(-1)^j q^{j(j-1)/2}` and
//! every symbol with `x` in a denominator tends to 1. Both regimes go
//! through the same code below.

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use super::power_series;
use crate::error::{Error, Result};
use crate::qalg::{
    compare_series, pochhammer_through, series_add, series_mul, PochhammerLength, PochhammerSpec,
    TruncatedSeries,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaileyPair {
    /// `k` with `a = q^k`; must exceed `-1`.
    pub base_exponent: Rational64,
    pub alpha: Vec<TruncatedSeries>,
    pub beta: Vec<TruncatedSeries>,
    /// Every stored series is exact through this exponent.
    pub order: Rational64,
}

/// A Bailey lemma parameter: `sign·q^exponent`, or the limit `∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaileyParam {
    Infinite,
    Finite { sign: i8, exponent: Rational64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaileyFailure {
    pub n: usize,
    pub exponent: Rational64,
    /// Coefficient of `β_n`.
    pub expected: BigInt,
    /// Coefficient of the defining sum.
    pub actual: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaileyReport {
    pub holds: bool,
    /// Exponent through which every index was compared.
    pub order_checked: Rational64,
    pub indices_checked: usize,
    pub first_failure: Option<BaileyFailure>,
}

fn check_base(k: Rational64) -> Result<()> {
    if k <= -Rational64::one() {
        return Err(Error::Invalid(format!("Bailey base exponent {k} must exceed -1")));
    }
    Ok(())
}

fn finite(sign: i8, exponent: Rational64, n: usize) -> PochhammerSpec {
    PochhammerSpec { sign, exponent, step: Rational64::one(), length: PochhammerLength::Finite(n as u64) }
}

/// `1/(sign·q^exponent; q)_n` through `through`.
fn inv_poch(sign: i8, exponent: Rational64, n: usize, through: Rational64) -> Result<TruncatedSeries> {
    if n == 0 {
        return Ok(TruncatedSeries::one(through));
    }
    power_series(&finite(sign, exponent, n), -1, through)
}

impl BaileyPair {
    pub fn new(
        base_exponent: Rational64,
        alpha: Vec<TruncatedSeries>,
        beta: Vec<TruncatedSeries>,
        order: Rational64,
    ) -> Result<Self> {
        check_base(base_exponent)?;
        if alpha.len() != beta.len() || alpha.is_empty() {
            return Err(Error::SizeMismatch(format!(
                "Bailey pair needs equally many α and β terms, got {} and {}",
                alpha.len(),
                beta.len()
            )));
        }
        Ok(BaileyPair { base_exponent, alpha, beta, order })
    }

    /// `α = δ_{n0}`, `β_n = 1/((q)_n (aq)_n)` for `n ≤ max_index`.
    pub fn unit(k: Rational64, max_index: usize, order: i64) -> Result<Self> {
        check_base(k)?;
        let t = Rational64::from_integer(order);
        let alpha = (0..=max_index)
            .map(|n| if n == 0 { TruncatedSeries::one(t) } else { TruncatedSeries::zero_through(t, 1, t) })
            .collect();
        let beta = (0..=max_index)
            .map(|n| {
                let a = inv_poch(1, Rational64::one(), n, t)?;
                Ok(series_mul(&a, &inv_poch(1, k + 1, n, t)?))
            })
            .collect::<Result<_>>()?;
        Self::new(k, alpha, beta, t)
    }

    /// `β = δ_{n0}` with
    /// `α_n = (-1)^n q^{n(n-1)/2} (1 - q^{k+2n}) (q^{k+1})_{n-1} / (q)_n` for `n ≥ 1`.
    pub fn conjugate_unit(k: Rational64, max_index: usize, order: i64) -> Result<Self> {
        check_base(k)?;
        let t = Rational64::from_integer(order);
        let mut alpha = vec![TruncatedSeries::one(t)];
        for n in 1..=max_index {
            let tri = Rational64::from_integer((n * (n - 1) / 2) as i64);
            let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            let lift = pochhammer_through(&finite(1, k + Rational64::from_integer(2 * n as i64), 1), t)?;
            let mid = pochhammer_through(&finite(1, k + 1, n - 1), t)?;
            let s = series_mul(&series_mul(&lift, &mid), &inv_poch(1, Rational64::one(), n, t)?);
            alpha.push(s.scale(&sign, tri).truncate_through(t));
        }
        let beta = (0..=max_index)
            .map(|n| if n == 0 { TruncatedSeries::one(t) } else { TruncatedSeries::zero_through(t, 1, t) })
            .collect();
        Self::new(k, alpha, beta, t)
    }

    pub fn max_index(&self) -> usize {
        self.alpha.len() - 1
    }
}

/// Checks the defining relation for every stored index through `min(order, p.order)`.
pub fn verify_bailey_pair(p: &BaileyPair, order: i64) -> BaileyReport {
    let t = p.order.min(Rational64::from_integer(order));
    let k = p.base_exponent;
    let mut checked = t;
    let m = p.max_index();
    let inv_q: Vec<_> = (0..=m).map(|i| inv_poch(1, Rational64::one(), i, t)).collect();
    let inv_aq: Vec<_> = (0..=2 * m).map(|i| inv_poch(1, k + 1, i, t)).collect();
    for n in 0..=m {
        let mut sum = TruncatedSeries::zero_through(t, *t.denom() as u32, t);
        for j in 0..=n {
            let (Ok(a), Ok(b)) = (&inv_q[n - j], &inv_aq[n + j]) else {
                // k > -1 keeps every symbol invertible.
                unreachable!("Bailey denominators are invertible");
            };
            let term = series_mul(&series_mul(&p.alpha[j], a), b);
            sum = series_add(&sum, &term);
        }
        let beta = p.beta[n].truncate_through(t);
        let c = compare_series(&beta, &sum.truncate_through(t));
        checked = checked.min(c.checked_through);
        if let Some(d) = c.first_discrepancy {
            return BaileyReport {
                holds: false,
                order_checked: checked,
                indices_checked: n + 1,
                first_failure: Some(BaileyFailure { n, exponent: d.exponent, expected: d.left, actual: d.right }),
            };
        }
    }
    BaileyReport { holds: true, order_checked: checked, indices_checked: m + 1, first_failure: None }
}

/// Pieces of the lemma for one parameter relative to `a = q^k`.
impl BaileyParam {
    /// `P_x(j) = (x)_j x^{-j}`, exact through at least `through`.
    fn multiplier(&self, j: usize, through: Rational64) -> Result<TruncatedSeries> {
        match *self {
            BaileyParam::Infinite => {
                let sign = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                let e = Rational64::from_integer((j * j.saturating_sub(1) / 2) as i64);
                Ok(TruncatedSeries::monomial(sign, e, through))
            }
            BaileyParam::Finite { sign, exponent } => {
                let shift = exponent * Rational64::from_integer(j as i64);
                let reach = through + shift.max(Rational64::zero());
                let s = pochhammer_through(&finite(sign, exponent, j), reach)?;
                let eps = if sign < 0 && j % 2 == 1 { -BigInt::one() } else { BigInt::one() };
                Ok(s.scale(&eps, -shift))
            }
        }
    }

    /// `1/(aq/x)_n`.
    fn inv_shifted(&self, k: Rational64, n: usize, through: Rational64) -> Result<TruncatedSeries> {
        match *self {
            BaileyParam::Infinite => Ok(TruncatedSeries::one(through)),
            BaileyParam::Finite { sign, exponent } => {
                let e = k + 1 - exponent;
                if e <= Rational64::zero() && n > 0 {
                    return Err(Error::Invalid(format!(
                        "parameter q^{exponent} makes (aq/ρ)_n non-invertible for a = q^{k}"
                    )));
                }
                inv_poch(sign, e, n, through)
            }
        }
    }
}

/// `(aq/ρσ)` as a sign and exponent, or `None` when either parameter is infinite.
fn joint(k: Rational64, rho: BaileyParam, sigma: BaileyParam) -> Option<(i8, Rational64)> {
    match (rho, sigma) {
        (BaileyParam::Finite { sign: s1, exponent: r1 }, BaileyParam::Finite { sign: s2, exponent: r2 }) => {
            Some((s1 * s2, k + 1 - r1 - r2))
        }
        _ => None,
    }
}

fn min_valuation(p: &BaileyPair) -> Rational64 {
    p.alpha
        .iter()
        .chain(&p.beta)
        .filter_map(|s| s.valuation())
        .min()
        .unwrap_or(Rational64::zero())
        .min(Rational64::zero())
}

/// Precision for the exact pieces of a lemma step. Inputs are only known
/// through `p.order`, so computing the pieces past it loses nothing; the
/// margin covers multipliers whose valuation drops below zero.
fn working_order(p: &BaileyPair, rho: BaileyParam, sigma: BaileyParam, t: Rational64, m: usize) -> Rational64 {
    let margin: Rational64 = [rho, sigma]
        .iter()
        .map(|x| match x {
            BaileyParam::Infinite => Rational64::zero(),
            BaileyParam::Finite { exponent, .. } => exponent.abs() * Rational64::from_integer(m as i64),
        })
        .sum();
    p.order.max(t) - min_valuation(p) + margin + 1
}

/// `(aq)^j P_ρ(j) P_σ(j)`, exact through `work`.
fn weight(k: Rational64, rho: BaileyParam, sigma: BaileyParam, j: usize, work: Rational64) -> Result<TruncatedSeries> {
    let jr = Rational64::from_integer(j as i64);
    let e = (k + 1) * jr;
    // Each factor may drop the valuation of the product by its own depth.
    let depth = |x: BaileyParam| match x {
        BaileyParam::Infinite => Rational64::zero(),
        BaileyParam::Finite { exponent, .. } => exponent.abs() * jr,
    };
    let reach = work + e.abs() + depth(rho) + depth(sigma);
    let aq = TruncatedSeries::monomial(BigInt::one(), e, reach);
    let w = series_mul(&series_mul(&rho.multiplier(j, reach)?, &sigma.multiplier(j, reach)?), &aq);
    Ok(w.truncate_through(work))
}

/// One application of the Bailey lemma, exact through `target`.
pub fn bailey_step(p: &BaileyPair, rho: BaileyParam, sigma: BaileyParam, target: i64) -> Result<BaileyPair> {
    let k = p.base_exponent;
    let t = Rational64::from_integer(target);
    let m = p.max_index();
    let work = working_order(p, rho, sigma, t, m);
    let mults: Vec<TruncatedSeries> =
        (0..=m).map(|j| weight(k, rho, sigma, j, work)).collect::<Result<_>>()?;
    let mut alpha = Vec::with_capacity(m + 1);
    let mut beta = Vec::with_capacity(m + 1);
    for n in 0..=m {
        let den = series_mul(&rho.inv_shifted(k, n, work)?, &sigma.inv_shifted(k, n, work)?);
        alpha.push(series_mul(&series_mul(&mults[n], &den), &p.alpha[n]));
        let mut sum = TruncatedSeries::zero_through(work, *work.denom() as u32, work);
        for j in 0..=n {
            let mut term = series_mul(&mults[j], &p.beta[j]);
            term = series_mul(&term, &inv_poch(1, Rational64::one(), n - j, work)?);
            if let Some((s, e)) = joint(k, rho, sigma) {
                term = series_mul(&term, &pochhammer_through(&finite(s, e, n - j), work)?);
            }
            sum = series_add(&sum, &term);
        }
        beta.push(series_mul(&sum, &den));
    }
    let achieved = alpha.iter().chain(&beta).map(|s| s.known_through()).min().unwrap();
    if achieved < t {
        return Err(Error::InsufficientOrder { required: p.order + (t - achieved), available: p.order });
    }
    let alpha = alpha.iter().map(|s| s.truncate_through(t)).collect();
    let beta = beta.iter().map(|s| s.truncate_through(t)).collect();
    BaileyPair::new(k, alpha, beta, t)
}

/// The `n → ∞` limit of one lemma step:
/// `Σ (aq)^n P_ρ(n) P_σ(n) β_n` and
/// `(aq/ρ)_∞ (aq/σ)_∞ / ((aq)_∞ (aq/ρσ)_∞) · Σ (aq)^n P_ρ(n) P_σ(n) / ((aq/ρ)_n (aq/σ)_n) · α_n`.
///
/// Terms past the stored range must start above `order`; this is checked
/// against the multiplier at the first missing index, assuming later terms
/// have valuation at least the smallest stored one.
pub fn weak_limit(
    p: &BaileyPair,
    rho: BaileyParam,
    sigma: BaileyParam,
    order: i64,
) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let k = p.base_exponent;
    let t = Rational64::from_integer(order);
    let m = p.max_index();
    let work = working_order(p, rho, sigma, t, m + 1);
    let mult = |j: usize| weight(k, rho, sigma, j, work);
    let tail = mult(m + 1)?.valuation().unwrap_or(work) + min_valuation(p);
    if tail <= t {
        return Err(Error::Invalid(format!(
            "weak limit through {t} needs Bailey pair terms past index {m}"
        )));
    }
    let mut lhs = TruncatedSeries::zero_through(t, *t.denom() as u32, t);
    let mut rhs = lhs.clone();
    for n in 0..=m {
        let w = mult(n)?;
        lhs = series_add(&lhs, &series_mul(&w, &p.beta[n]).truncate_through(work));
        let den = series_mul(&rho.inv_shifted(k, n, work)?, &sigma.inv_shifted(k, n, work)?);
        rhs = series_add(&rhs, &series_mul(&series_mul(&w, &den), &p.alpha[n]).truncate_through(work));
    }
    let aq = PochhammerSpec { sign: 1, exponent: k + 1, step: Rational64::one(), length: PochhammerLength::Infinite };
    let mut pre = power_series(&aq, -1, work)?;
    for x in [rho, sigma] {
        if let BaileyParam::Finite { sign, exponent } = x {
            let spec = PochhammerSpec { sign, exponent: k + 1 - exponent, step: Rational64::one(), length: PochhammerLength::Infinite };
            pre = series_mul(&pre, &power_series(&spec, 1, work)?);
        }
    }
    if let Some((s, e)) = joint(k, rho, sigma) {
        let spec = PochhammerSpec { sign: s, exponent: e, step: Rational64::one(), length: PochhammerLength::Infinite };
        pre = series_mul(&pre, &power_series(&spec, -1, work)?);
    }
    let rhs = series_mul(&pre, &rhs);
    let achieved = lhs.known_through().min(rhs.known_through());
    if achieved < t {
        return Err(Error::InsufficientOrder { required: p.order + (t - achieved), available: p.order });
    }
    Ok((lhs.truncate_through(t), rhs.truncate_through(t)))
}
