//! Lattice sums `Σ_n s^{p·n} q^{½nᵀAn + b·n + c} Π factors(n)` over `n ≥ 0`.
//!
//! Every factor has valuation zero, so a lattice point contributes below the
//! truncation bound `T` only if its exponent `E(n)` is at most `T`. The set
//! of such points is enumerated depth first. Before enumerating, the spec
//! must pass one of two growth tests:
//!
//! * `A` positive definite. The bound at a prefix is the real minimum of
//!   `E` over the remaining coordinates, a convex function of the next
//!   coordinate, so the scan along that coordinate stops once the bound
//!   exceeds `T` and is no longer decreasing.
//! * `A` entrywise nonnegative with `A_ii/2 + b_i > 0` for every `i`. Then
//!   `E` strictly increases in every coordinate on the orthant and the bound
//!   at a prefix is `E` with the remaining coordinates set to zero.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{power_series, Prefactor};
use crate::error::{Error, Result};
use crate::qalg::{
    q_binomial, series_add, series_mul, PochhammerLength, PochhammerSpec, TruncatedSeries,
};

/// `Σ coefficients_i n_i + constant`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AffineForm {
    pub coefficients: Vec<i64>,
    pub constant: i64,
}

impl AffineForm {
    pub fn new(coefficients: Vec<i64>, constant: i64) -> Self {
        Self { coefficients, constant }
    }

    /// The coordinate `n_i` of a `dim`-vector.
    pub fn coordinate(dim: usize, i: usize) -> Self {
        let mut c = vec![0; dim];
        c[i] = 1;
        Self::new(c, 0)
    }

    pub fn eval(&self, n: &[i64]) -> i64 {
        self.constant + self.coefficients.iter().zip(n).map(|(a, x)| a * x).sum::<i64>()
    }
}

/// A multiplicative factor whose arguments depend on the summation vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SumFactor {
    /// `(sign·q^exponent; q^step)_{length(n)}^power`. Negative powers are
    /// denominators and need `exponent > 0`; positive powers need
    /// `exponent ≥ 0`.
    Pochhammer {
        sign: i8,
        exponent: Rational64,
        step: Rational64,
        length: AffineForm,
        power: i32,
    },
    /// `[top(n), bottom(n)]_q^power` with `power ≥ 1`; zero outside `0 ≤ bottom ≤ top`.
    QBinomial { top: AffineForm, bottom: AffineForm, power: i32 },
}

impl SumFactor {
    /// `1/(q;q)_{n_i}`.
    pub fn q_factorial_denominator(dim: usize, i: usize) -> Self {
        SumFactor::Pochhammer {
            sign: 1,
            exponent: Rational64::one(),
            step: Rational64::one(),
            length: AffineForm::coordinate(dim, i),
            power: -1,
        }
    }
}

/// Constraint on the summation vector, checked at every lattice point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Restriction {
    /// `form(n) ≡ 0 (mod modulus)`.
    Congruence { form: AffineForm, modulus: i64 },
    /// `form(n) ≥ 0`.
    Inequality { form: AffineForm },
}

impl Restriction {
    fn admits(&self, n: &[i64]) -> bool {
        match self {
            Restriction::Congruence { form, modulus } => form.eval(n).rem_euclid(*modulus) == 0,
            Restriction::Inequality { form } => form.eval(n) >= 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FermionicSumSpec {
    /// Symmetric matrix `A`; the exponent is `½nᵀAn + b·n + c`.
    pub quadratic: Vec<Vec<Rational64>>,
    pub linear: Vec<Rational64>,
    pub constant: Rational64,
    /// The term sign is `(-1)^{parity·n}`; empty means all positive.
    pub parity: Vec<i64>,
    pub factors: Vec<SumFactor>,
    pub restrictions: Vec<Restriction>,
    /// Constant product multiplying the whole sum.
    pub prefactor: Vec<Prefactor>,
}

/// Which growth test a spec passed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Growth {
    PositiveDefinite,
    Monotone,
}

impl FermionicSumSpec {
    pub fn dim(&self) -> usize {
        self.linear.len()
    }

    /// `Σ q^{½nᵀAn+b·n} / Π (q;q)_{n_i}` with integer data.
    pub fn with_factorials(a: &[&[i64]], b: &[i64]) -> Self {
        let dim = b.len();
        FermionicSumSpec {
            quadratic: a
                .iter()
                .map(|r| r.iter().map(|&x| Rational64::from_integer(x)).collect())
                .collect(),
            linear: b.iter().map(|&x| Rational64::from_integer(x)).collect(),
            factors: (0..dim).map(|i| SumFactor::q_factorial_denominator(dim, i)).collect(),
            ..Default::default()
        }
    }

    fn check_shapes(&self) -> Result<()> {
        let d = self.dim();
        let bad = |m: String| Err(Error::Invalid(m));
        if self.quadratic.len() != d || self.quadratic.iter().any(|r| r.len() != d) {
            return bad(format!("quadratic form must be {d}x{d}"));
        }
        for i in 0..d {
            for j in 0..i {
                if self.quadratic[i][j] != self.quadratic[j][i] {
                    return bad("quadratic form must be symmetric".into());
                }
            }
        }
        if !self.parity.is_empty() && self.parity.len() != d {
            return bad(format!("parity vector must have length {d}"));
        }
        let forms = self.factors.iter().flat_map(|f| match f {
            SumFactor::Pochhammer { length, .. } => vec![length],
            SumFactor::QBinomial { top, bottom, .. } => vec![top, bottom],
        });
        let forms = forms.chain(self.restrictions.iter().map(|r| match r {
            Restriction::Congruence { form, .. } | Restriction::Inequality { form } => form,
        }));
        for f in forms {
            if f.coefficients.len() != d {
                return bad(format!("affine form {:?} must have {d} coefficients", f.coefficients));
            }
        }
        for f in &self.factors {
            match f {
                SumFactor::Pochhammer { exponent, step, power, .. } => {
                    if *step <= Rational64::zero() {
                        return bad(format!("Pochhammer step {step} must be positive"));
                    }
                    if *power == 0 {
                        return bad("factor power must be nonzero".into());
                    }
                    if *power < 0 && *exponent <= Rational64::zero() {
                        return bad(format!("denominator Pochhammer needs exponent > 0, got {exponent}"));
                    }
                    if *power > 0 && *exponent < Rational64::zero() {
                        return bad(format!("numerator Pochhammer needs exponent >= 0, got {exponent}"));
                    }
                }
                SumFactor::QBinomial { power, .. } if *power < 1 => {
                    return bad("q-binomial power must be at least 1".into());
                }
                SumFactor::QBinomial { .. } => {}
            }
        }
        for r in &self.restrictions {
            if let Restriction::Congruence { modulus, .. } = r {
                if *modulus <= 0 {
                    return bad(format!("congruence modulus {modulus} must be positive"));
                }
            }
        }
        for p in &self.prefactor {
            p.check()?;
        }
        Ok(())
    }

    /// Load-time termination check; fails with [`Error::NonGrowing`].
    pub fn growth(&self) -> Result<Growth> {
        self.check_shapes()?;
        let a = big_matrix(&self.quadratic);
        if is_positive_definite(&a) {
            return Ok(Growth::PositiveDefinite);
        }
        let zero = Rational64::zero();
        let nonneg = self.quadratic.iter().flatten().all(|x| *x >= zero);
        let grows = (0..self.dim())
            .all(|i| self.quadratic[i][i] / Rational64::from_integer(2) + self.linear[i] > zero);
        if nonneg && grows {
            Ok(Growth::Monotone)
        } else {
            Err(Error::NonGrowing(
                "quadratic form is neither positive definite nor nonnegative with \
                 A_ii/2 + b_i > 0 for every i"
                    .into(),
            ))
        }
    }
}

fn big(x: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

fn small(x: &BigRational) -> Result<Rational64> {
    match (x.numer().to_i64(), x.denom().to_i64()) {
        (Some(n), Some(d)) => Ok(Rational64::new(n, d)),
        _ => Err(Error::Invalid(format!("exponent {x} out of range"))),
    }
}

fn big_matrix(a: &[Vec<Rational64>]) -> Vec<Vec<BigRational>> {
    a.iter().map(|r| r.iter().map(|&x| big(x)).collect()).collect()
}

/// All leading principal minors positive, by exact elimination.
fn is_positive_definite(a: &[Vec<BigRational>]) -> bool {
    let mut m = a.to_vec();
    let n = m.len();
    for k in 0..n {
        if !m[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            let f = &m[i][k] / &m[k][k];
            for j in k..n {
                let t = &f * &m[k][j];
                m[i][j] -= t;
            }
        }
    }
    true
}

/// Exact inverse of a nonsingular matrix.
fn invert(a: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !m[i][k].is_zero()).expect("singular block");
        m.swap(k, p);
        let piv = m[k][k].clone();
        for x in m[k].iter_mut() {
            *x /= &piv;
        }
        for i in 0..n {
            if i != k && !m[i][k].is_zero() {
                let f = m[i][k].clone();
                for j in 0..2 * n {
                    let t = &f * &m[k][j];
                    m[i][j] -= t;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Lower bounds on the exponent over completions of a prefix.
struct Bounds {
    a: Vec<Vec<BigRational>>,
    b: Vec<BigRational>,
    c: BigRational,
    growth: Growth,
    /// Inverses of the trailing blocks `A[k..][k..]`, positive definite case only.
    tails: Vec<Vec<Vec<BigRational>>>,
}

impl Bounds {
    fn new(spec: &FermionicSumSpec, growth: Growth) -> Self {
        let a = big_matrix(&spec.quadratic);
        let d = a.len();
        let tails = match growth {
            Growth::PositiveDefinite => (0..d)
                .map(|k| {
                    let block: Vec<Vec<_>> = a[k..].iter().map(|r| r[k..].to_vec()).collect();
                    invert(&block)
                })
                .collect(),
            Growth::Monotone => Vec::new(),
        };
        Bounds {
            b: spec.linear.iter().map(|&x| big(x)).collect(),
            c: big(spec.constant),
            a,
            growth,
            tails,
        }
    }

    /// The exponent with coordinates past the prefix set to zero.
    fn partial(&self, n: &[i64]) -> BigRational {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut e = self.c.clone();
        for (i, &x) in n.iter().enumerate() {
            let x = BigRational::from_integer(BigInt::from(x));
            e += &self.b[i] * &x;
            for (j, &y) in n.iter().enumerate() {
                e += &half * &self.a[i][j] * &x * BigRational::from_integer(BigInt::from(y));
            }
        }
        e
    }

    fn bound(&self, n: &[i64]) -> BigRational {
        let k = n.len();
        let e = self.partial(n);
        if k == self.a.len() || self.growth == Growth::Monotone {
            return e;
        }
        let g: Vec<BigRational> = (k..self.a.len())
            .map(|r| {
                let mut s = self.b[r].clone();
                for (p, &x) in n.iter().enumerate() {
                    s += &self.a[r][p] * BigRational::from_integer(BigInt::from(x));
                }
                s
            })
            .collect();
        let h = &self.tails[k];
        let mut quad = BigRational::zero();
        for (i, gi) in g.iter().enumerate() {
            for (j, gj) in g.iter().enumerate() {
                quad += gi * &h[i][j] * gj;
            }
        }
        e - quad / BigRational::from_integer(BigInt::from(2))
    }

    fn enumerate(&self, prefix: &mut Vec<i64>, top: &BigRational, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == self.a.len() {
            out.push(prefix.clone());
            return;
        }
        let mut v = 0;
        loop {
            prefix.push(v);
            let here = self.bound(prefix);
            if &here > top {
                let stop = match self.growth {
                    Growth::Monotone => true,
                    Growth::PositiveDefinite => {
                        *prefix.last_mut().unwrap() += 1;
                        self.bound(prefix) >= here
                    }
                };
                prefix.pop();
                if stop {
                    return;
                }
            } else {
                self.enumerate(prefix, top, out);
                prefix.pop();
            }
            v += 1;
        }
    }
}

/// Lattice points contributing through exponent `through`, with their
/// exponents, in lexicographic order. Restrictions are applied.
pub fn lattice_points(
    spec: &FermionicSumSpec,
    through: Rational64,
) -> Result<Vec<(Vec<i64>, Rational64)>> {
    let growth = spec.growth()?;
    let bounds = Bounds::new(spec, growth);
    let mut raw = Vec::new();
    bounds.enumerate(&mut Vec::new(), &big(through), &mut raw);
    raw.into_iter()
        .filter(|n| spec.restrictions.iter().all(|r| r.admits(n)))
        .map(|n| {
            let e = small(&bounds.partial(&n))?;
            Ok((n, e))
        })
        .collect()
}

/// Known through integer exponent `order`.
pub fn eval_fermionic(spec: &FermionicSumSpec, order: i64) -> Result<TruncatedSeries> {
    eval_fermionic_through(spec, Rational64::from_integer(order))
}

/// Known through exponent `through`.
pub fn eval_fermionic_through(spec: &FermionicSumSpec, through: Rational64) -> Result<TruncatedSeries> {
    let points = lattice_points(spec, through)?;
    let lowest = points.iter().map(|p| p.1).min().unwrap_or(through);
    // Factor expansions are needed through `through - E`, at most this far.
    let reach = through - lowest;
    let mut cache: HashMap<(usize, Vec<i64>), Option<TruncatedSeries>> = HashMap::new();
    let mut acc = TruncatedSeries::zero_through(through, *through.denom() as u32, through);
    for (n, e) in &points {
        let mut term = TruncatedSeries::one(reach);
        let mut vanishes = false;
        for (idx, f) in spec.factors.iter().enumerate() {
            let key = (idx, factor_args(f, n));
            let s = match cache.get(&key) {
                Some(s) => s.clone(),
                None => {
                    let s = factor_series(f, &key.1, reach)?;
                    cache.insert(key, s.clone());
                    s
                }
            };
            match s {
                Some(s) => term = series_mul(&term, &s),
                None => {
                    vanishes = true;
                    break;
                }
            }
        }
        if vanishes {
            continue;
        }
        let odd = spec.parity.iter().zip(n).map(|(p, x)| p * x).sum::<i64>() % 2 != 0;
        let sign = if odd { -BigInt::one() } else { BigInt::one() };
        acc = series_add(&acc, &term.scale(&sign, *e).truncate_through(through));
    }
    if !spec.prefactor.is_empty() {
        acc = series_mul(&acc, &super::prefactor_series(&spec.prefactor, through - lowest.min(Rational64::zero()))?);
    }
    Ok(acc.truncate_through(through))
}

fn factor_args(f: &SumFactor, n: &[i64]) -> Vec<i64> {
    match f {
        SumFactor::Pochhammer { length, .. } => vec![length.eval(n)],
        SumFactor::QBinomial { top, bottom, .. } => vec![top.eval(n), bottom.eval(n)],
    }
}

/// Expansion of one factor at the given arguments; `None` when it vanishes.
fn factor_series(f: &SumFactor, args: &[i64], reach: Rational64) -> Result<Option<TruncatedSeries>> {
    match f {
        SumFactor::Pochhammer { sign, exponent, step, power, .. } => {
            let len = args[0];
            if len < 0 {
                if *power < 0 {
                    return Ok(None);
                }
                return Err(Error::Invalid(format!("numerator Pochhammer with length {len}")));
            }
            let spec = PochhammerSpec {
                sign: *sign,
                exponent: *exponent,
                step: *step,
                length: PochhammerLength::Finite(len as u64),
            };
            power_series(&spec, *power, reach).map(Some)
        }
        SumFactor::QBinomial { power, .. } => {
            let (m, k) = (args[0], args[1]);
            if m < 0 || k < 0 || k > m {
                return Ok(None);
            }
            let b = TruncatedSeries::from_scaled_poly(&q_binomial(m as u64, k), 1, reach);
            let mut s = b.clone();
            for _ in 1..*power {
                s = series_mul(&s, &b);
            }
            Ok(Some(s))
        }
    }
}
