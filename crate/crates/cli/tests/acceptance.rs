//! Acceptance criteria 1 to 8, one PASS/FAIL line each with its runtime.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

use fermionic::bijection::{check_statistic, path_to_rc, rc_to_path};
use fermionic::combinat::{compositions, kostka_foulkes, kostka_number, partitions, Composition, Partition};
use fermionic::crystals::enumerate_paths;
use fermionic::kostka::{
    calibrate_normalization, charge_normalization, fermionic_kostka, fermionic_kostka_closed, path_kostka,
    restricted_kostka, verify_identity, KostkaInstance, GLOBAL_NORMALIZATION,
};
use fermionic::qalg::{compare_series, pochhammer, q_binomial, IntPolynomial, PochhammerLength, PochhammerSpec};
use fermionic::qseries::{
    bailey_step, character, eval_bosonic, eval_fermionic, verify_bailey_pair, weak_limit, BaileyPair,
    BaileyParam, BosonicSumSpec, FermionicSumSpec, PresetRegistry, MIN_ORDER,
};
use fermionic::rc::{enumerate_rc, validate, MultiplicityArray};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn binomial(m: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (m - i) / (i + 1))
}

fn q_algebra() -> Check {
    let mut cases = 0;
    for m in 0..=12u64 {
        for k in 0..=m {
            let ki = k as i64;
            let b = q_binomial(m, ki);
            ensure(b == q_binomial(m, (m - k) as i64), || format!("symmetry m={m} k={k}"))?;
            if m > 0 {
                let (up, left) = (q_binomial(m - 1, ki - 1), q_binomial(m - 1, ki));
                ensure(b == &up + &left.shift(ki), || format!("first q-Pascal m={m} k={k}"))?;
                ensure(b == &up.shift((m - k) as i64) + &left, || format!("second q-Pascal m={m} k={k}"))?;
            }
            ensure(b.eval_one() == BigInt::from(binomial(m, k)), || format!("q=1 m={m} k={k}"))?;
            let d = b.dense();
            ensure(d.iter().eq(d.iter().rev()), || format!("palindrome m={m} k={k}"))?;
            ensure(b.max_exponent() == Some(ki * (m - k) as i64), || format!("degree m={m} k={k}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} binomials"))
}

/// Semistandard fillings by brute force over letter arrangements.
fn brute_count(shape: &[usize], mu: &[usize]) -> usize {
    let mut letters: Vec<usize> = mu.iter().enumerate().flat_map(|(i, &m)| vec![i + 1; m]).collect();
    let mut count = 0;
    loop {
        let mut rows = Vec::new();
        let mut at = 0;
        for &len in shape {
            rows.push(&letters[at..at + len]);
            at += len;
        }
        let weak = rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        let strict = rows.windows(2).all(|w| w[1].iter().zip(w[0]).all(|(lo, hi)| lo > hi));
        count += usize::from(weak && strict);
        let Some(i) = (1..letters.len()).rev().find(|&i| letters[i - 1] < letters[i]) else {
            return count;
        };
        let j = (i..letters.len()).rev().find(|&j| letters[j] > letters[i - 1]).unwrap();
        letters.swap(i - 1, j);
        letters[i..].reverse();
    }
}

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

fn classical_oracles() -> Check {
    let kf = |l: &str, m: &str| kostka_foulkes(&part(l), &part(m)).map_err(|e| e.to_string());
    ensure(kf("2", "1,1")?.to_string() == "q", || "K_(2),(1,1) is not q".into())?;
    ensure(kf("2,1", "1,1,1")?.to_string() == "q + q^2", || "K_(2,1),(1,1,1) is not q + q^2".into())?;
    let mut pairs = 0;
    for lambda in (0..=6).flat_map(partitions) {
        let diag = kostka_foulkes(&lambda, &lambda).map_err(|e| e.to_string())?;
        ensure(diag == IntPolynomial::one(), || format!("K_λλ for λ = {lambda}"))?;
        for mu in partitions(lambda.size()) {
            let k = kostka_foulkes(&lambda, &mu).map_err(|e| e.to_string())?;
            let count = brute_count(lambda.parts(), mu.parts());
            ensure(k.eval_one() == BigInt::from(count), || format!("K_{lambda},{mu}(1)"))?;
            let number = kostka_number(&lambda, &Composition::from(&mu)).map_err(|e| e.to_string())?;
            ensure(number == count, || format!("kostka_number {lambda} {mu}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn grid() -> Vec<(usize, Vec<usize>, Composition)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for boxes in 0..=6 {
            for rows in partitions(boxes) {
                for w in compositions(boxes, n) {
                    out.push((n, rows.parts().to_vec(), w));
                }
            }
        }
    }
    out
}

fn bijection_suite() -> Check {
    let (mut instances, mut objects) = (0, 0);
    for (n, rows, w) in grid() {
        let l = MultiplicityArray::from_rows(n, &rows);
        let paths = enumerate_paths(&rows, n, &w).map_err(|e| e.to_string())?;
        let rcs = enumerate_rc(&l, &w);
        ensure(paths.len() == rcs.len(), || format!("counts differ n={n} rows={rows:?} w={w}"))?;
        for p in &paths {
            let rc = path_to_rc(p);
            ensure(validate(&rc, &l).as_ref() == Ok(&w), || format!("weight of Φ({p})"))?;
            ensure(rc_to_path(&rc, &l).as_ref() == Ok(p), || format!("round trip from {p}"))?;
        }
        for rc in &rcs {
            let p = rc_to_path(rc, &l).map_err(|e| e.to_string())?;
            ensure(path_to_rc(&p) == *rc, || format!("round trip from {rc}"))?;
        }
        instances += 1;
        objects += paths.len() + rcs.len();
    }
    Ok(format!("{instances} instances, {objects} objects"))
}

fn main_theorem() -> Check {
    ensure(calibrate_normalization() == Some(GLOBAL_NORMALIZATION), || "calibration disagrees".into())?;
    let mut instances = 0;
    for (n, rows, w) in grid() {
        let inst = KostkaInstance::rows(n, &rows, w.parts()).map_err(|e| e.to_string())?;
        let report = verify_identity(&inst).map_err(|e| e.to_string())?;
        ensure(report.equal, || format!("identity fails n={n} rows={rows:?} w={w}"))?;
        let explicit = fermionic_kostka(&inst);
        ensure(explicit == fermionic_kostka_closed(&inst), || format!("routes differ n={n} rows={rows:?} w={w}"))?;
        let count = enumerate_paths(&rows, n, &w).map_err(|e| e.to_string())?.len();
        ensure(explicit.eval_one() == BigInt::from(count), || format!("q=1 n={n} rows={rows:?} w={w}"))?;
        for p in enumerate_paths(&rows, n, &w).map_err(|e| e.to_string())? {
            ensure(check_statistic(&p).consistent, || format!("statistic at {p}"))?;
        }
        ensure(path_kostka(&inst).map_err(|e| e.to_string())? == report.path, || "path side unstable".into())?;
        instances += 1;
    }
    Ok(format!("{instances} instances, sign {} shift {}", GLOBAL_NORMALIZATION.sign, GLOBAL_NORMALIZATION.shift))
}

fn restricted() -> Check {
    let mut pairs = 0;
    for mu in (0..=6).flat_map(partitions) {
        let norm = charge_normalization(&mu);
        for lambda in partitions(mu.size()) {
            let kf = kostka_foulkes(&lambda, &mu).map_err(|e| e.to_string())?;
            for n in [lambda.len().max(1), lambda.len() + 1] {
                let inst = KostkaInstance::rows(n, mu.parts(), lambda.parts()).map_err(|e| e.to_string())?;
                let r = restricted_kostka(&inst).map_err(|e| e.to_string())?;
                ensure(r == norm.apply(&kf), || format!("λ={lambda} μ={mu} n={n}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} (λ, μ, n) triples"))
}

/// Coefficients of `Π_{p ∈ parts} 1/(1 - q^p)`.
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

fn q_series() -> Check {
    let r = Rational64::new;
    let e = |x: fermionic::Error| x.to_string();
    let theta = eval_bosonic(&BosonicSumSpec::theta_over_euler(r(3, 2), r(-1, 2), 0), 30).map_err(e)?;
    let euler = pochhammer(&PochhammerSpec::standard(1, PochhammerLength::Infinite), 30).map_err(|x| x.to_string())?;
    let c = compare_series(&theta, &euler);
    ensure(c.equal && c.checked_through == r(30, 1), || format!("pentagonal: {c:?}"))?;
    for (b, residues, lin) in [(0, [1, 4], r(1, 2)), (1, [2, 3], r(3, 2))] {
        let f = eval_fermionic(&FermionicSumSpec::with_factorials(&[&[2]], &[b]), 50).map_err(e)?;
        let bos = eval_bosonic(&BosonicSumSpec::theta_over_euler(r(5, 2), lin, 1), 50).map_err(e)?;
        let c = compare_series(&f, &bos);
        ensure(c.equal && c.checked_through == r(50, 1), || format!("Rogers–Ramanujan b={b}: {c:?}"))?;
        let got: Vec<i64> = f.coeffs().iter().map(|x| x.to_i64().unwrap()).collect();
        ensure(got == partitions_into(|p| residues.contains(&(p % 5)), 50), || format!("product side b={b}"))?;
    }
    let unit = BaileyPair::unit(Rational64::zero(), 8, 30).map_err(e)?;
    ensure(verify_bailey_pair(&unit, 30).holds, || "unit pair".into())?;
    let seed = BaileyPair::conjugate_unit(Rational64::zero(), 8, 30).map_err(e)?;
    let step = bailey_step(&seed, BaileyParam::Infinite, BaileyParam::Infinite, 30).map_err(e)?;
    ensure(verify_bailey_pair(&step, 30).holds, || "chain step".into())?;
    let (lhs, rhs) = weak_limit(&step, BaileyParam::Infinite, BaileyParam::Infinite, 30).map_err(e)?;
    ensure(compare_series(&lhs, &rhs).equal, || "chain limit sides differ".into())?;
    let got: Vec<i64> = lhs.coeffs().iter().map(|x| x.to_i64().unwrap()).collect();
    ensure(got == partitions_into(|p| p % 5 == 1 || p % 5 == 4, 30), || "chain limit is not RR".into())?;
    Ok("pentagonal 30, RR 50, Bailey chain 30".into())
}

fn presets() -> Check {
    let reg = PresetRegistry::builtin().map_err(|e| e.to_string())?;
    let (mut good, mut controls) = (0, 0);
    for p in reg.presets() {
        ensure(p.order >= MIN_ORDER, || format!("{} declares order {}", p.name, p.order))?;
        let rep = character(p, p.order).map_err(|e| format!("{}: {e}", p.name))?;
        if p.negative_control {
            let d = rep.comparison.first_discrepancy.as_ref();
            ensure(!rep.equal && d.is_some_and(|d| d.left != d.right), || format!("{} passed", p.name))?;
            controls += 1;
        } else {
            ensure(rep.equal, || format!("{} fails: {:?}", p.name, rep.comparison.first_discrepancy))?;
            let last = rep.comparison.checked_through - p.offset;
            ensure(last >= Rational64::from_integer(p.order), || format!("{} checked through {last}", p.name))?;
            good += 1;
        }
    }
    Ok(format!("{good} presets verified, {controls} negative controls rejected"))
}

fn cli_contract() -> Check {
    let mut runs = 0;
    for c in common::CASES {
        for f in ["text", "json"] {
            let a = common::run(c.args, f);
            ensure(a.code == c.exit, || format!("{}.{f}: exit {} not {}", c.name, a.code, c.exit))?;
            let file = common::golden_dir().join(format!("{}.{f}.txt", c.name));
            let want = std::fs::read_to_string(&file).map_err(|e| format!("{}: {e}", file.display()))?;
            ensure(a.transcript() == want, || format!("{}.{f} differs from golden", c.name))?;
            let b = common::run(c.args, f);
            ensure(a.transcript() == b.transcript(), || format!("{}.{f} rerun differs", c.name))?;
            runs += 2;
        }
    }
    Ok(format!("{} cases, {runs} runs", common::CASES.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, f64, fn() -> Check); 8] = [
        ("q-binomial suite, m <= 12", 5.0, q_algebra),
        ("classical Kostka-Foulkes oracles, |λ| <= 6", 30.0, classical_oracles),
        ("bijection round trips and weight, n <= 3, <= 6 boxes", 120.0, bijection_suite),
        ("fermionic = path under the frozen normalization", f64::INFINITY, main_theorem),
        ("restricted sum reproduces Kostka-Foulkes, |λ| <= 6", f64::INFINITY, restricted),
        ("pentagonal, Rogers-Ramanujan and Bailey chain", 20.0, q_series),
        ("presets verify to declared order, controls fail", f64::INFINITY, presets),
        ("CLI golden files, exit codes, byte-identical reruns", f64::INFINITY, cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let outcome = match outcome {
            Ok(d) if secs > *limit => Err(format!("{d}; took {secs:.2}s, limit {limit}s")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {}: PASS ({secs:.2}s) {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL ({secs:.2}s) {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
