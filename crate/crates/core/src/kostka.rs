//! Unrestricted Kostka polynomials, computed from both sides of the
//! fermionic identity.
//!
//! The fermionic side `M = Σ q^{cc(ν,J)}` runs over unrestricted rigged
//! configurations; the path side `X = Σ q^{D(b)}` runs over all paths of the
//! weight. With the conventions of this crate `M = X` holds on the nose, so
//! the frozen normalization between the two is `sign = 1, shift = 0`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::combinat::{Composition, Partition};
use crate::crystals::{enumerate_paths, intrinsic_energy, is_highest_weight};
use crate::error::{Error, Result};
use crate::qalg::{q_binomial, IntPolynomial};
use crate::rc::{
    blocks, cocharge, configurations, enumerate_rc, quadratic_form, vacancy, MultiplicityArray,
};

/// The affine map `P(q) ↦ q^shift · P(q^sign)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Normalization {
    pub sign: i64,
    pub shift: i64,
}

impl Normalization {
    pub fn apply(&self, p: &IntPolynomial) -> IntPolynomial {
        let p = if self.sign < 0 { p.invert_variable() } else { p.clone() };
        p.shift(self.shift)
    }
}

/// Frozen relation `path = q^shift · fermionic(q^sign)`; see [`calibrate_normalization`].
pub const GLOBAL_NORMALIZATION: Normalization = Normalization { sign: 1, shift: 0 };

/// Relation between the highest-weight path sum for rows `μ` and weight `λ`
/// and the Kostka–Foulkes polynomial: `restricted = q^{n(μ)} K_{λμ}(q^{-1})`.
pub fn charge_normalization(mu: &Partition) -> Normalization {
    Normalization { sign: -1, shift: mu.n_statistic() as i64 }
}

/// Tensor factor data and a weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KostkaInstance {
    pub l: MultiplicityArray,
    pub weight: Composition,
}

impl KostkaInstance {
    pub fn new(l: MultiplicityArray, weight: Composition) -> Result<Self> {
        if weight.size() != l.total_boxes() {
            return Err(Error::SizeMismatch(format!(
                "weight {} has {} boxes, factors {} hold {}",
                weight,
                weight.size(),
                l,
                l.total_boxes()
            )));
        }
        if weight.padded(l.n()).is_none() {
            return Err(Error::SizeMismatch(format!("weight {} longer than n = {}", weight, l.n())));
        }
        Ok(Self { l, weight })
    }

    pub fn rows(n: usize, rows: &[usize], weight: &[usize]) -> Result<Self> {
        Self::new(MultiplicityArray::from_rows(n, rows), Composition::new(weight.to_vec()))
    }

    pub fn n(&self) -> usize {
        self.l.n()
    }
}

fn count_poly<I: IntoIterator<Item = i64>>(exps: I) -> IntPolynomial {
    IntPolynomial::from_terms(exps.into_iter().map(|e| (e, BigInt::one())))
}

/// `Σ q^{cc}` over the explicitly enumerated rigged configurations.
pub fn fermionic_kostka(inst: &KostkaInstance) -> IntPolynomial {
    count_poly(enumerate_rc(&inst.l, &inst.weight).iter().map(cocharge))
}

/// The fermionic sum evaluated per configuration with q-binomial window counts.
///
/// Riggings of a block of `m` equal rows form a multiset in `[M, p]`. The
/// lower bounds one level down only see, for each row length, the smallest
/// excess `J - M`, so the levels are summed top-down over those profiles:
/// with window width `W` and smallest excess `x` a block contributes
/// `q^{m(M+x)} [W-1-x+m-1, m-1]`, and the last level `q^{mM} [W+m-1, m]`.
pub fn fermionic_kostka_closed(inst: &KostkaInstance) -> IntPolynomial {
    closed_form(inst, 0)
}

/// Test fixture: the closed form with every lower bound lowered by `widen`.
/// Any nonzero `widen` corrupts the rigging windows.
#[doc(hidden)]
pub fn fermionic_kostka_corrupted(inst: &KostkaInstance, widen: i64) -> IntPolynomial {
    closed_form(inst, widen)
}

fn closed_form(inst: &KostkaInstance, widen: i64) -> IntPolynomial {
    let mut total = IntPolynomial::zero();
    for config in configurations(&inst.l, &inst.weight) {
        let k = config.len();
        if k == 0 {
            total = &total + &IntPolynomial::one();
            continue;
        }
        let vac: Vec<Vec<(usize, usize, i64)>> = (0..k)
            .map(|a| {
                blocks(&config[a])
                    .into_iter()
                    .map(|(i, m)| (i, m, vacancy(&config, &inst.l, a + 1, i).unwrap()))
                    .collect()
            })
            .collect();
        let mut memo = BTreeMap::new();
        let windows = level_sum(k, &vac, widen, Vec::new(), &mut memo);
        total = &total + &windows.shift(quadratic_form(&config));
    }
    total
}

type Memo = BTreeMap<(usize, Vec<(usize, i64)>), IntPolynomial>;

fn level_sum(
    a: usize,
    vac: &[Vec<(usize, usize, i64)>],
    widen: i64,
    above: Vec<(usize, i64)>,
    memo: &mut Memo,
) -> IntPolynomial {
    if a == 0 {
        return IntPolynomial::one();
    }
    if let Some(p) = memo.get(&(a, above.clone())) {
        return p.clone();
    }
    let bound = |i: usize| -> i64 {
        let best = above.iter().map(|&(l, x)| i.min(l) as i64 - x).max().unwrap_or(0);
        best.max(0) - i as i64 - widen
    };
    let blocks: Vec<(usize, usize, i64, i64)> = vac[a - 1]
        .iter()
        .map(|&(i, m, p)| (i, m, bound(i), p - bound(i) + 1))
        .collect();
    let result = if blocks.iter().any(|b| b.3 <= 0) {
        IntPolynomial::zero()
    } else if a == 1 {
        let mut acc = IntPolynomial::one();
        for &(_, m, lo, w) in &blocks {
            let f = q_binomial((w - 1 + m as i64) as u64, m as i64).shift(m as i64 * lo);
            acc = &acc * &f;
        }
        acc
    } else {
        let mut acc = IntPolynomial::zero();
        let mut profile = Vec::new();
        profiles(&blocks, 0, IntPolynomial::one(), &mut profile, &mut |weight, prof| {
            let below = level_sum(a - 1, vac, widen, prof.to_vec(), memo);
            acc = &acc + &(weight * &below);
        });
        acc
    };
    memo.insert((a, above), result.clone());
    result
}

fn profiles(
    blocks: &[(usize, usize, i64, i64)],
    b: usize,
    weight: IntPolynomial,
    prof: &mut Vec<(usize, i64)>,
    k: &mut dyn FnMut(&IntPolynomial, &[(usize, i64)]),
) {
    if b == blocks.len() {
        k(&weight, prof);
        return;
    }
    let (i, m, lo, w) = blocks[b];
    let m = m as i64;
    for x in 0..w {
        let f = q_binomial((w - 1 - x + m - 1) as u64, m - 1).shift(m * (lo + x));
        prof.push((i, x));
        profiles(blocks, b + 1, &weight * &f, prof, k);
        prof.pop();
    }
}

fn row_lengths(inst: &KostkaInstance) -> Result<Vec<usize>> {
    inst.l.row_lengths()
}

/// `Σ q^{D(b)}` over all paths of the weight.
pub fn path_kostka(inst: &KostkaInstance) -> Result<IntPolynomial> {
    let shapes = row_lengths(inst)?;
    let paths = enumerate_paths(&shapes, inst.n(), &inst.weight)?;
    Ok(count_poly(paths.iter().map(|p| intrinsic_energy(p) as i64)))
}

/// `Σ q^{D(b)}` over highest-weight paths; needs a dominant weight.
pub fn restricted_kostka(inst: &KostkaInstance) -> Result<IntPolynomial> {
    let shapes = row_lengths(inst)?;
    let w = inst.weight.padded(inst.n()).unwrap_or_default();
    if !Composition::new(w.clone()).is_dominant() {
        return Err(Error::NonDominant(w));
    }
    let paths = enumerate_paths(&shapes, inst.n(), &inst.weight)?;
    Ok(count_poly(
        paths.iter().filter(|p| is_highest_weight(p)).map(|p| intrinsic_energy(p) as i64),
    ))
}

/// First exponent where two polynomials differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub exponent: i64,
    pub fermionic: BigInt,
    pub path: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub instance: KostkaInstance,
    pub fermionic: IntPolynomial,
    pub path: IntPolynomial,
    pub normalization: Normalization,
    pub equal: bool,
    pub counterexample: Option<Counterexample>,
}

/// Compares both sides under [`GLOBAL_NORMALIZATION`].
pub fn verify_identity(inst: &KostkaInstance) -> Result<IdentityReport> {
    let fermionic = fermionic_kostka(inst);
    let path = path_kostka(inst)?;
    Ok(compare_sides(inst, fermionic, path))
}

/// Builds the report for given polynomials (exposed for negative controls).
pub fn compare_sides(
    inst: &KostkaInstance,
    fermionic: IntPolynomial,
    path: IntPolynomial,
) -> IdentityReport {
    let normalized = GLOBAL_NORMALIZATION.apply(&fermionic);
    let diff = &normalized - &path;
    let counterexample = diff.min_exponent().map(|e| Counterexample {
        exponent: e,
        fermionic: normalized.coeff(e),
        path: path.coeff(e),
    });
    IdentityReport {
        instance: inst.clone(),
        equal: counterexample.is_none(),
        fermionic,
        path,
        normalization: GLOBAL_NORMALIZATION,
        counterexample,
    }
}

/// Calibration family: two single boxes for `n = 2`, every weight.
pub fn calibration_instances() -> Vec<KostkaInstance> {
    crate::combinat::compositions(2, 2)
        .into_iter()
        .map(|w| KostkaInstance::new(MultiplicityArray::from_rows(2, &[1, 1]), w).unwrap())
        .collect()
}

/// The unique `(sign, shift)` with `path = q^shift fermionic(q^sign)` on every
/// calibration instance, if there is one.
pub fn calibrate_normalization() -> Option<Normalization> {
    let pairs: Vec<(IntPolynomial, IntPolynomial)> = calibration_instances()
        .iter()
        .map(|i| (fermionic_kostka(i), path_kostka(i).expect("rows")))
        .collect();
    let mut found = Vec::new();
    for sign in [1, -1] {
        for shift in -8..=8 {
            let n = Normalization { sign, shift };
            if pairs.iter().all(|(f, p)| n.apply(f) == *p) {
                found.push(n);
            }
        }
    }
    (found.len() == 1).then(|| found[0])
}

/// Whether `fermionic_kostka` is unchanged under every permutation of the weight.
pub fn weight_symmetric(inst: &KostkaInstance) -> bool {
    let n = inst.n();
    let w = inst.weight.padded(n).unwrap_or_default();
    let base = fermionic_kostka(inst);
    let mut perm = w.clone();
    perm.sort_unstable();
    loop {
        let other = KostkaInstance { l: inst.l.clone(), weight: Composition::new(perm.clone()) };
        if fermionic_kostka(&other) != base {
            return false;
        }
        if !next_permutation(&mut perm) {
            return true;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
