//! q-series identities checked against independent partition-counting oracles.

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};

use fermionic::qalg::{
    compare_series, pochhammer, series_invert, series_mul, PochhammerLength, PochhammerSpec,
    TruncatedSeries,
};
use fermionic::qseries::{
    bailey_step, character, eval_bosonic, eval_fermionic, eval_fermionic_through,
    verify_bailey_pair, weak_limit, BaileyPair, BaileyParam, BosonicSumSpec, FermionicSumSpec,
    PresetRegistry,
};

/// Coefficients of `Π_{p ∈ parts} 1/(1 - t^p)` through `t^top`.
fn partitions_into(parts: impl Fn(usize) -> bool, top: usize) -> Vec<i64> {
    let mut c = vec![0i64; top + 1];
    c[0] = 1;
    for p in (1..=top).filter(|&p| parts(p)) {
        for i in p..=top {
            c[i] += c[i - p];
        }
    }
    c
}

fn coeffs(s: &TruncatedSeries) -> Vec<i64> {
    s.coeffs().iter().map(|c| c.to_i64().unwrap()).collect()
}

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn euler() -> PochhammerSpec {
    PochhammerSpec::standard(1, PochhammerLength::Infinite)
}

#[test]
fn pentagonal_number_theorem() {
    let theta = eval_bosonic(&BosonicSumSpec::theta_over_euler(r(3, 2), r(-1, 2), 0), 30).unwrap();
    let product = pochhammer(&euler(), 30).unwrap();
    let c = compare_series(&theta, &product);
    assert!(c.equal && c.checked_through == Rational64::from_integer(30), "{c:?}");
    let one = series_mul(&theta, &series_invert(&product).unwrap());
    let mut expected = vec![0; 31];
    expected[0] = 1;
    assert_eq!(coeffs(&one), expected);
}

#[test]
fn rogers_ramanujan_to_order_50() {
    for (b, residues, lin) in [(0, [1, 4], r(1, 2)), (1, [2, 3], r(3, 2))] {
        let f = eval_fermionic(&FermionicSumSpec::with_factorials(&[&[2]], &[b]), 50).unwrap();
        let bos = eval_bosonic(&BosonicSumSpec::theta_over_euler(r(5, 2), lin, 1), 50).unwrap();
        let c = compare_series(&f, &bos);
        assert!(c.equal, "b = {b}: {c:?}");
        assert_eq!(c.checked_through, Rational64::from_integer(50));
        assert_eq!(coeffs(&f), partitions_into(|p| residues.contains(&(p % 5)), 50));
    }
}

#[test]
fn mismatched_rogers_ramanujan_sides_differ_at_q1() {
    let f = eval_fermionic(&FermionicSumSpec::with_factorials(&[&[2]], &[0]), 20).unwrap();
    let bos = eval_bosonic(&BosonicSumSpec::theta_over_euler(r(5, 2), r(3, 2), 1), 20).unwrap();
    let d = compare_series(&f, &bos).first_discrepancy.unwrap();
    assert_eq!((d.exponent, d.left, d.right), (Rational64::one(), BigInt::one(), BigInt::zero()));
}

#[test]
fn fermionic_evaluation_is_prefix_stable() {
    let spec = FermionicSumSpec::with_factorials(&[&[2, 2], &[2, 4]], &[0, 1]);
    let long = eval_fermionic(&spec, 40).unwrap();
    for n in [0, 1, 7, 19, 33] {
        let short = eval_fermionic(&spec, n).unwrap();
        assert_eq!(short.coeffs(), &long.coeffs()[..short.coeffs().len()], "order {n}");
    }
    let half = eval_fermionic_through(&spec, r(41, 2)).unwrap();
    assert_eq!(half.known_through(), r(41, 2));
}

/// `α_n = (-1)^n q^{n(3n-1)/2}(1 + q^n)`, `β_n = 1/(q)_n` relative to `a = 1`.
fn rogers_pair(m: usize, order: i64) -> BaileyPair {
    let t = Rational64::from_integer(order);
    let mut alpha = vec![TruncatedSeries::one(t)];
    let mut beta = vec![TruncatedSeries::one(t)];
    for n in 1..=m as i64 {
        let s = if n % 2 == 0 { 1 } else { -1 };
        let mut c = vec![BigInt::zero(); (order + 1) as usize];
        for e in [n * (3 * n - 1) / 2, n * (3 * n + 1) / 2] {
            if e <= order {
                c[e as usize] += s;
            }
        }
        alpha.push(TruncatedSeries::new(Rational64::zero(), 1, c));
        let inv = partitions_into(|p| p <= n as usize, order as usize);
        beta.push(TruncatedSeries::new(Rational64::zero(), 1, inv.into_iter().map(BigInt::from).collect()));
    }
    BaileyPair::new(Rational64::zero(), alpha, beta, t).unwrap()
}

#[test]
fn bailey_unit_and_classical_pairs() {
    for k in [Rational64::zero(), Rational64::one(), r(1, 2)] {
        let unit = BaileyPair::unit(k, 8, 30).unwrap();
        let rep = verify_bailey_pair(&unit, 30);
        assert!(rep.holds && rep.order_checked == Rational64::from_integer(30), "{rep:?}");
    }
    let rep = verify_bailey_pair(&rogers_pair(8, 30), 30);
    assert!(rep.holds && rep.indices_checked == 9, "{rep:?}");
}

#[test]
fn corrupted_beta_is_caught() {
    let mut p = rogers_pair(6, 20);
    p.beta[2] = p.beta[2].scale(&BigInt::from(2), Rational64::zero());
    let rep = verify_bailey_pair(&p, 20);
    let f = rep.first_failure.expect("corruption must be reported");
    assert_eq!(f.n, 2);
    assert_eq!(f.exponent, Rational64::zero());
}

#[test]
fn bailey_chain_gives_rogers_ramanujan() {
    let seed = BaileyPair::conjugate_unit(Rational64::zero(), 8, 30).unwrap();
    let step = bailey_step(&seed, BaileyParam::Infinite, BaileyParam::Infinite, 30).unwrap();
    assert!(verify_bailey_pair(&step, 30).holds);
    let classical = rogers_pair(8, 30);
    for n in 0..=8 {
        assert!(compare_series(&step.alpha[n], &classical.alpha[n]).equal, "alpha_{n}");
        assert!(compare_series(&step.beta[n], &classical.beta[n]).equal, "beta_{n}");
    }
    let (lhs, rhs) = weak_limit(&step, BaileyParam::Infinite, BaileyParam::Infinite, 30).unwrap();
    assert!(compare_series(&lhs, &rhs).equal);
    assert_eq!(coeffs(&lhs), partitions_into(|p| p % 5 == 1 || p % 5 == 4, 30));
}

#[test]
fn two_chain_steps_give_the_modulus_seven_identity() {
    let seed = BaileyPair::conjugate_unit(Rational64::zero(), 6, 20).unwrap();
    let one = bailey_step(&seed, BaileyParam::Infinite, BaileyParam::Infinite, 20).unwrap();
    let two = bailey_step(&one, BaileyParam::Infinite, BaileyParam::Infinite, 20).unwrap();
    assert!(verify_bailey_pair(&two, 20).holds);
    let (lhs, rhs) = weak_limit(&two, BaileyParam::Infinite, BaileyParam::Infinite, 20).unwrap();
    assert!(compare_series(&lhs, &rhs).equal);
    assert_eq!(coeffs(&lhs), partitions_into(|p| ![0, 3, 4].contains(&(p % 7)), 20));
}

#[test]
fn lemma_output_always_verifies() {
    let params = [
        BaileyParam::Infinite,
        BaileyParam::Finite { sign: -1, exponent: r(1, 2) },
        BaileyParam::Finite { sign: 1, exponent: r(1, 2) },
        BaileyParam::Finite { sign: -1, exponent: Rational64::zero() },
    ];
    let mut stepped = 0;
    for k in [Rational64::zero(), r(1, 2), Rational64::one()] {
        for seed in [BaileyPair::unit(k, 5, 16).unwrap(), BaileyPair::conjugate_unit(k, 5, 16).unwrap()] {
            for rho in params {
                for sigma in params {
                    let Ok(s) = bailey_step(&seed, rho, sigma, 10) else { continue };
                    let rep = verify_bailey_pair(&s, 10);
                    assert!(rep.holds, "k={k} {rho:?} {sigma:?}: {rep:?}");
                    stepped += 1;
                }
            }
        }
    }
    assert_eq!(stepped, 3 * 2 * 16, "every parameter choice is admissible here");
}

/// Product oracles in `t = q^{1/2}` for the N=1 presets.
fn gollnitz_gordon(residues: [usize; 3], top: usize) -> Vec<i64> {
    partitions_into(|p| residues.contains(&(p % 8)), top)
}

/// The N=2 fermionic sum expanded by hand in `t = q^{1/2}`.
fn n2_oracle(top: usize) -> Vec<i64> {
    let mul = |a: &[i64], b: &[i64]| {
        let mut c = vec![0i64; top + 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate().take(top + 1 - i) {
                c[i + j] += x * y;
            }
        }
        c
    };
    let mut total = vec![0i64; top + 1];
    let mut n = 0;
    while 2 * n <= top {
        let mut term = vec![0i64; top + 1];
        term[2 * n] = 1;
        for k in 0..n {
            let mut f = vec![0i64; top + 1];
            f[0] = 1;
            if 2 * k + 1 <= top {
                f[2 * k + 1] = 1;
            }
            term = mul(&mul(&term, &f), &f);
        }
        let den = partitions_into(|p| p % 2 == 0 && p <= 2 * n, top);
        term = mul(&term, &den);
        for (a, b) in total.iter_mut().zip(term) {
            *a += b;
        }
        n += 1;
    }
    total
}

#[test]
fn presets_verify_to_declared_order() {
    let reg = PresetRegistry::builtin().unwrap();
    assert!(reg.presets().len() >= 6);
    for p in reg.presets() {
        assert!(p.order >= 20, "{}", p.name);
        let rep = character(p, p.order).unwrap();
        if p.negative_control {
            let d = rep.comparison.first_discrepancy.as_ref();
            assert!(!rep.equal && d.is_some(), "{} must fail", p.name);
        } else {
            assert!(rep.equal, "{}: {:?}", p.name, rep.comparison);
            assert_eq!(rep.comparison.checked_through, p.offset + p.order, "{}", p.name);
        }
    }
}

#[test]
fn preset_series_match_product_oracles() {
    let reg = PresetRegistry::builtin().unwrap();
    let half = |name: &str| {
        let p = reg.get(name).unwrap();
        let rep = character(p, 30).unwrap();
        assert_eq!(rep.fermionic.offset(), p.offset);
        assert_eq!(rep.fermionic.denom(), 2);
        coeffs(&rep.fermionic)
    };
    assert_eq!(half("n1-sm28-ns-vacuum"), gollnitz_gordon([3, 4, 5], 60));
    assert_eq!(half("n1-sm28-ns-h-1/4"), gollnitz_gordon([1, 4, 7], 60));
    assert_eq!(half("n2-k1-ns-vacuum"), n2_oracle(60));
}

#[test]
fn presets_lead_with_one_at_order_zero() {
    for p in PresetRegistry::builtin().unwrap().presets() {
        let rep = character(p, 0).unwrap();
        for s in [&rep.fermionic, &rep.bosonic] {
            assert_eq!(s.coeff_at(p.offset), Some(BigInt::one()), "{}", p.name);
        }
    }
}

#[test]
fn negative_controls_report_their_discrepancy() {
    let reg = PresetRegistry::builtin().unwrap();
    let rr = character(reg.get("rogers-ramanujan-1-perturbed").unwrap(), 20).unwrap();
    let d = rr.comparison.first_discrepancy.unwrap();
    assert_eq!(d.exponent, r(-1, 60) + 1);
    let n1 = character(reg.get("n1-sm28-ns-perturbed").unwrap(), 20).unwrap();
    let d = n1.comparison.first_discrepancy.unwrap();
    assert_eq!(d.exponent, r(7, 32) + r(3, 2));
}
