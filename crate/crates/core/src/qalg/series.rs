//! Dense truncated power series with a rational exponent offset.
//!
//! A series stores `q^offset · Σ_i c_i q^{i/d}` together with the promise
//! that every coefficient with index `< coeffs.len()` is exact. Nothing is
//! claimed past that point, and every operation shrinks the promise to what
//! its inputs actually support.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::poly::IntPolynomial;
use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("non-invertible series: leading coefficient {0} is not a unit")]
    NonInvertible(String),
    #[error("non-invertible series: no nonzero coefficient is known")]
    UnknownLeading,
    #[error("divergent Pochhammer symbol: infinite product needs exponent > 0, got {0}")]
    Divergent(Rational64),
    #[error("invalid Pochhammer step {0}: must be positive")]
    BadStep(Rational64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    offset: Rational64,
    denom: u32,
    coeffs: Vec<BigInt>,
}

fn lcm(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

/// Parses `3`, `-1/60` or `7/2` into a rational.
pub fn parse_rational(s: &str) -> Result<Rational64, ParseError> {
    let t = s.trim();
    let bad = || ParseError::new(format!("bad rational `{s}`"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(n, d))
        }
        None => t.parse::<i64>().map(Rational64::from_integer).map_err(|_| bad()),
    }
}

fn to_index(x: Rational64, d: u32) -> i64 {
    let v = x * Rational64::from_integer(d as i64);
    debug_assert!(v.is_integer(), "exponent {x} off the 1/{d} grid");
    v.to_integer()
}

impl TruncatedSeries {
    /// Raw constructor; `denom` must be positive.
    pub fn new(offset: Rational64, denom: u32, coeffs: Vec<BigInt>) -> Self {
        assert!(denom > 0, "series step denominator must be positive");
        Self { offset, denom, coeffs }
    }

    /// The zero series known for exponents `offset ..= through` on grid `1/denom`.
    pub fn zero_through(offset: Rational64, denom: u32, through: Rational64) -> Self {
        let len = to_index(through - offset, denom) + 1;
        Self::new(offset, denom, vec![BigInt::zero(); len.max(0) as usize])
    }

    /// `c q^e` known through exponent `through`.
    pub fn monomial(c: BigInt, e: Rational64, through: Rational64) -> Self {
        let d = lcm(*e.denom(), *through.denom()) as u32;
        if through < e {
            return Self::new(through, d, vec![BigInt::zero()]);
        }
        let mut s = Self::zero_through(e, d, through);
        s.coeffs[0] = c;
        s
    }

    pub fn one(through: Rational64) -> Self {
        Self::monomial(BigInt::one(), Rational64::zero(), through)
    }

    /// A polynomial in `t = q^{1/d}`, known through `q`-exponent `through`.
    pub fn from_scaled_poly(p: &IntPolynomial, d: u32, through: Rational64) -> Self {
        let d2 = lcm(d as i64, *through.denom()) as u32;
        let f = (d2 / d) as i64;
        let top = to_index(through, d2);
        let lo = p.min_exponent().map(|e| e * f).unwrap_or(top).min(top);
        let mut coeffs = vec![BigInt::zero(); (top - lo + 1) as usize];
        for (e, c) in p.terms() {
            if e * f <= top {
                coeffs[(e * f - lo) as usize] = c.clone();
            }
        }
        Self::new(Rational64::new(lo, d2 as i64), d2, coeffs)
    }

    pub fn offset(&self) -> Rational64 {
        self.offset
    }

    /// Exponent step is `1/denom`.
    pub fn denom(&self) -> u32 {
        self.denom
    }

    /// Index of the last exact coefficient; `-1` when nothing is known.
    pub fn order(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// First exponent whose coefficient is not known.
    pub fn known_until(&self) -> Rational64 {
        self.offset + Rational64::new(self.coeffs.len() as i64, self.denom as i64)
    }

    /// Last exponent whose coefficient is known.
    pub fn known_through(&self) -> Rational64 {
        self.known_until() - Rational64::new(1, self.denom as i64)
    }

    /// Coefficient of `q^e`, or `None` if it lies beyond the guaranteed order.
    pub fn coeff_at(&self, e: Rational64) -> Option<BigInt> {
        if e >= self.known_until() {
            return None;
        }
        if e < self.offset {
            return Some(BigInt::zero());
        }
        let k = (e - self.offset) * Rational64::from_integer(self.denom as i64);
        if !k.is_integer() {
            return Some(BigInt::zero());
        }
        Some(self.coeffs[k.to_integer() as usize].clone())
    }

    /// Exponent of the first nonzero known coefficient.
    pub fn valuation(&self) -> Option<Rational64> {
        self.first_nonzero()
            .map(|i| self.offset + Rational64::new(i as i64, self.denom as i64))
    }

    fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Same series on the finer grid `1/(denom·m)`.
    pub fn rescale(&self, m: u32) -> Self {
        if m == 1 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() * m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * m as usize] = c.clone();
        }
        Self::new(self.offset, self.denom * m, coeffs)
    }

    fn on_grid(&self, d: u32) -> Self {
        assert!(d % self.denom == 0);
        self.rescale(d / self.denom)
    }

    /// Drops everything past exponent `through`.
    pub fn truncate_through(&self, through: Rational64) -> Self {
        let d = lcm(self.denom as i64, *through.denom()) as u32;
        let mut s = self.on_grid(d);
        let keep = to_index(through - s.offset, d) + 1;
        if keep <= 0 {
            return Self::zero_through(through, d, through);
        }
        s.coeffs.truncate(keep as usize);
        s
    }

    /// Multiplies by `c q^e` exactly.
    pub fn scale(&self, c: &BigInt, e: Rational64) -> Self {
        let mut s = self.clone();
        s.offset += e;
        for x in &mut s.coeffs {
            *x *= c;
        }
        s
    }

    /// Reads off an exact Laurent polynomial in `t = q^{1/denom}` (offset included).
    pub fn to_scaled_poly(&self) -> IntPolynomial {
        let base = to_index(self.offset, self.denom);
        IntPolynomial::from_terms(
            self.coeffs.iter().enumerate().map(|(i, c)| (base + i as i64, c.clone())),
        )
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "offset={} step=", self.offset)?;
        if self.denom == 1 {
            f.write_str("1")?;
        } else {
            write!(f, "1/{}", self.denom)?;
        }
        write!(f, " order={}:", self.order())?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, " {c}")?;
        }
        Ok(())
    }
}

/// Exact truncation of `p`; offset is the minimal exponent (0 for zero).
pub fn series_from_poly(p: &IntPolynomial, order: u64) -> TruncatedSeries {
    let lo = p.min_exponent().unwrap_or(0);
    let mut coeffs = vec![BigInt::zero(); order as usize + 1];
    for (e, c) in p.terms() {
        let i = (e - lo) as usize;
        if i <= order as usize {
            coeffs[i] = c.clone();
        }
    }
    TruncatedSeries::new(Rational64::from_integer(lo), 1, coeffs)
}

pub fn series_add(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    let (a, b, base) = align(a, b);
    let d = a.denom;
    let until = a.known_until().min(b.known_until());
    let len = to_index(until - base, d).max(0) as usize;
    let sa = to_index(a.offset - base, d) as usize;
    let sb = to_index(b.offset - base, d) as usize;
    let mut coeffs = vec![BigInt::zero(); len];
    for (i, slot) in coeffs.iter_mut().enumerate() {
        if i >= sa {
            *slot += &a.coeffs[i - sa];
        }
        if i >= sb {
            *slot += &b.coeffs[i - sb];
        }
    }
    TruncatedSeries::new(base, d, coeffs)
}

/// Puts both series on one grid; returns them with the smaller offset.
fn align(a: &TruncatedSeries, b: &TruncatedSeries) -> (TruncatedSeries, TruncatedSeries, Rational64) {
    let d = lcm(
        lcm(a.denom as i64, b.denom as i64),
        *(a.offset - b.offset).denom(),
    ) as u32;
    let base = a.offset.min(b.offset);
    (a.on_grid(d), b.on_grid(d), base)
}

pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    let d = lcm(a.denom as i64, b.denom as i64) as u32;
    let a = a.on_grid(d);
    let b = b.on_grid(d);
    let va = a.first_nonzero().unwrap_or(a.coeffs.len());
    let vb = b.first_nonzero().unwrap_or(b.coeffs.len());
    let len = (a.coeffs.len() + vb).min(b.coeffs.len() + va);
    let mut coeffs = vec![BigInt::zero(); len];
    for (i, x) in a.coeffs.iter().enumerate().skip(va) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate().skip(vb) {
            if i + j >= len {
                break;
            }
            coeffs[i + j] += x * y;
        }
    }
    TruncatedSeries::new(a.offset + b.offset, d, coeffs)
}

/// Multiplicative inverse; the leading known coefficient must be `±1`.
pub fn series_invert(s: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    let v = s.first_nonzero().ok_or(SeriesError::UnknownLeading)?;
    let lead = &s.coeffs[v];
    if !lead.abs().is_one() {
        return Err(SeriesError::NonInvertible(lead.to_string()));
    }
    let a = &s.coeffs[v..];
    let n = a.len();
    let mut out: Vec<BigInt> = Vec::with_capacity(n);
    out.push(lead.clone());
    for k in 1..n {
        let mut acc = BigInt::zero();
        for j in 1..=k {
            if !a[j].is_zero() {
                acc += &a[j] * &out[k - j];
            }
        }
        // lead is ±1, so dividing by it is multiplying by it.
        out.push(-(acc * lead));
    }
    let offset = -(s.offset + Rational64::new(v as i64, s.denom as i64));
    Ok(TruncatedSeries::new(offset, s.denom, out))
}

/// A coefficient mismatch located by [`compare_series`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub exponent: Rational64,
    pub left: BigInt,
    pub right: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesComparison {
    pub equal: bool,
    /// Common exponent step is `1/denom`.
    pub denom: u32,
    /// Last exponent compared.
    pub checked_through: Rational64,
    pub first_discrepancy: Option<Discrepancy>,
}

/// Coefficientwise comparison up to the smaller guaranteed order.
pub fn compare_series(a: &TruncatedSeries, b: &TruncatedSeries) -> SeriesComparison {
    let (a2, b2, base) = align(a, b);
    let d = a2.denom;
    let until = a2.known_until().min(b2.known_until());
    let step = Rational64::new(1, d as i64);
    let len = to_index(until - base, d).max(0);
    let mut first = None;
    for i in 0..len {
        let e = base + Rational64::new(i, d as i64);
        let x = a2.coeff_at(e).unwrap_or_default();
        let y = b2.coeff_at(e).unwrap_or_default();
        if x != y {
            first = Some(Discrepancy { exponent: e, left: x, right: y });
            break;
        }
    }
    SeriesComparison {
        equal: first.is_none(),
        denom: d,
        checked_through: until - step,
        first_discrepancy: first,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PochhammerLength {
    Finite(u64),
    Infinite,
}

/// The symbol `(sign·q^exponent; q^step)_length = Π_k (1 - sign·q^{exponent + k·step})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PochhammerSpec {
    pub sign: i8,
    pub exponent: Rational64,
    pub step: Rational64,
    pub length: PochhammerLength,
}

impl PochhammerSpec {
    /// `(q^r; q)_n` with a positive sign.
    pub fn standard(r: i64, length: PochhammerLength) -> Self {
        Self {
            sign: 1,
            exponent: Rational64::from_integer(r),
            step: Rational64::one(),
            length,
        }
    }
}

/// Expansion of the symbol known through integer exponent `order`.
pub fn pochhammer(spec: &PochhammerSpec, order: i64) -> Result<TruncatedSeries, SeriesError> {
    pochhammer_through(spec, Rational64::from_integer(order))
}

/// Expansion of the symbol known through exponent `through`.
pub fn pochhammer_through(
    spec: &PochhammerSpec,
    through: Rational64,
) -> Result<TruncatedSeries, SeriesError> {
    if spec.step <= Rational64::zero() {
        return Err(SeriesError::BadStep(spec.step));
    }
    if spec.length == PochhammerLength::Infinite && spec.exponent <= Rational64::zero() {
        return Err(SeriesError::Divergent(spec.exponent));
    }
    let d = lcm(
        lcm(*spec.exponent.denom(), *spec.step.denom()),
        *through.denom(),
    ) as u32;
    let top = to_index(through, d);
    let r = to_index(spec.exponent, d);
    let m = to_index(spec.step, d);
    let sign = BigInt::from(spec.sign);
    let exps = (0..).map(|k: i64| r + k * m);
    let count = match spec.length {
        PochhammerLength::Finite(n) => n as i64,
        PochhammerLength::Infinite => i64::MAX,
    };

    // Factors with nonpositive exponent are multiplied out exactly.
    let mut low = IntPolynomial::one();
    let mut k = 0;
    for e in exps.clone().take(count.min(1 << 40) as usize) {
        if e > 0 {
            break;
        }
        let f = IntPolynomial::from_terms([(0, BigInt::one()), (e, -sign.clone())]);
        low = &low * &f;
        k += 1;
    }
    if low.is_zero() {
        return Ok(TruncatedSeries::zero_through(through, d, through));
    }
    let v = low.min_exponent().unwrap();
    let high_top = (top - v).max(0) as usize;
    let mut high = vec![BigInt::zero(); high_top + 1];
    high[0] = BigInt::one();
    let mut kk = k;
    while kk < count {
        let e = r + kk * m;
        if e as usize > high_top {
            break;
        }
        for i in (e as usize..=high_top).rev() {
            let t = &high[i - e as usize] * &sign;
            high[i] -= t;
        }
        kk += 1;
    }
    let mut out = IntPolynomial::zero();
    for (e, c) in low.terms() {
        for (i, h) in high.iter().enumerate() {
            if !h.is_zero() && e + (i as i64) <= top {
                out.add_term(e + i as i64, c * h);
            }
        }
    }
    if v > top {
        return Ok(TruncatedSeries::zero_through(through, d, through));
    }
    let mut coeffs = vec![BigInt::zero(); (top - v + 1) as usize];
    for (e, c) in out.terms() {
        coeffs[(e - v) as usize] = c.clone();
    }
    Ok(TruncatedSeries::new(Rational64::new(v, d as i64), d, coeffs))
}
