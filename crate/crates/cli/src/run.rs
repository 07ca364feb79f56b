//! Subcommand handlers. Each returns a JSON result and an exit code.

use std::str::FromStr;

use num_rational::Rational64;
use serde_json::{json, Value};

use fermionic::bijection::{check_statistic, path_to_rc, rc_to_path_ordered};
use fermionic::combinat::{charge, enumerate_ssyt, kostka_foulkes, kostka_number, Composition, Partition};
use fermionic::crystals::{
    e_op, enumerate_paths, f_op, intrinsic_energy, is_highest_weight, local_energy, Path, RowFactor,
};
use fermionic::kostka::{fermionic_kostka, path_kostka, restricted_kostka, verify_identity, KostkaInstance};
use fermionic::qalg::{
    compare_series, parse_rational, pochhammer, poly_add, poly_mul, q_binomial, series_add,
    series_from_poly, series_invert, series_mul, IntPolynomial, ParseError, PochhammerLength,
    PochhammerSpec, TruncatedSeries,
};
use fermionic::qseries::{
    bailey_step, character, eval_bosonic, eval_fermionic, verify_bailey_pair, weak_limit, BaileyPair,
    BaileyParam, BaileyReport, PresetRegistry,
};
use fermionic::rc::{cocharge, enumerate_rc, lower_bound, validate, MultiplicityArray, RiggedConfiguration};
use fermionic::{Error, Result};

use crate::args::{Command, CrystalOp, EnergyOp, Instance, PolyOp, Seed, SeriesOp, Side, SumSide};
use crate::render;

/// Exit code for a verified inequality.
pub const EXIT_UNEQUAL: i32 = 3;

/// A finished subcommand.
pub struct Outcome {
    pub result: Value,
    pub exit: i32,
}

fn ok(result: Value) -> Result<Outcome> {
    Ok(Outcome { result, exit: 0 })
}

fn verdict(result: Value, holds: bool) -> Result<Outcome> {
    Ok(Outcome { result, exit: if holds { 0 } else { EXIT_UNEQUAL } })
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnsupportedShape { .. } => 4,
        Error::UnknownPreset(_) => 5,
        _ => 2,
    }
}

fn parsed<T: FromStr<Err = ParseError>>(s: &str) -> Result<T> {
    Ok(s.parse()?)
}

fn instance(i: &Instance) -> Result<(KostkaInstance, Vec<(usize, usize)>)> {
    let (l, order) = MultiplicityArray::parse_shapes(&i.shapes, i.n)?;
    let weight: Composition = parsed(&i.weight)?;
    Ok((KostkaInstance::new(l, weight)?, order))
}

/// Row lengths in the given order; any taller rectangle is unsupported.
fn rows(order: &[(usize, usize)]) -> Result<Vec<usize>> {
    order
        .iter()
        .map(|&(r, c)| if r == 1 { Ok(c) } else { Err(Error::UnsupportedShape { rows: r, cols: c }) })
        .collect()
}

fn word(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::Parse(ParseError::new(format!("bad word `{s}`")));
    if s.contains(',') {
        s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect()
    } else {
        s.trim().chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect()
    }
}

fn row(s: &str, n: usize) -> Result<RowFactor> {
    let p = Path::parse(s, n)?;
    match p.factors() {
        [f] => Ok(f.clone()),
        _ => Err(Error::Invalid(format!("`{s}` is not a single row"))),
    }
}

fn param(s: &str) -> Result<BaileyParam> {
    let t = s.trim();
    if t == "inf" || t == "∞" {
        return Ok(BaileyParam::Infinite);
    }
    let (sign, rest) = match t.strip_prefix('-') {
        Some(r) => (-1, r),
        None => (1, t),
    };
    let bad = || Error::Parse(ParseError::new(format!("bad Bailey parameter `{s}`: expected inf or [-]q^R")));
    let exponent = match rest.strip_prefix('q').ok_or_else(bad)? {
        "" => Rational64::from_integer(1),
        e => parse_rational(e.strip_prefix('^').ok_or_else(bad)?)?,
    };
    Ok(BaileyParam::Finite { sign, exponent })
}

fn param_text(p: BaileyParam) -> String {
    match p {
        BaileyParam::Infinite => "inf".into(),
        BaileyParam::Finite { sign, exponent } => {
            format!("{}q^{exponent}", if sign < 0 { "-" } else { "" })
        }
    }
}

pub fn execute(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Poly { op } => {
            let (a, b, f): (_, _, fn(&IntPolynomial, &IntPolynomial) -> IntPolynomial) = match op {
                PolyOp::Add { a, b } => (a, b, poly_add),
                PolyOp::Mul { a, b } => (a, b, poly_mul),
            };
            ok(json!({ "polynomial": render::poly(&f(&parsed(a)?, &parsed(b)?)) }))
        }
        Command::Qbinom { m, k } => ok(json!({ "polynomial": render::poly(&q_binomial(*m, *k)) })),
        Command::Series { op } => {
            let s = match op {
                SeriesOp::FromPoly { p, order } => series_from_poly(&parsed(p)?, *order),
                SeriesOp::Add { a, b, order } => series_add(
                    &series_from_poly(&parsed(a)?, *order),
                    &series_from_poly(&parsed(b)?, *order),
                ),
                SeriesOp::Mul { a, b, order } => series_mul(
                    &series_from_poly(&parsed(a)?, *order),
                    &series_from_poly(&parsed(b)?, *order),
                ),
                SeriesOp::Invert { p, order } => series_invert(&series_from_poly(&parsed(p)?, *order))?,
            };
            ok(json!({ "series": render::series(&s) }))
        }
        Command::Pochhammer { sign, exponent, step, length, order } => {
            if sign.abs() != 1 {
                return Err(Error::Invalid(format!("sign must be 1 or -1, got {sign}")));
            }
            let length = match length.trim() {
                "inf" | "∞" => PochhammerLength::Infinite,
                n => PochhammerLength::Finite(
                    n.parse().map_err(|_| ParseError::new(format!("bad length `{n}`")))?,
                ),
            };
            let spec = PochhammerSpec {
                sign: *sign,
                exponent: parse_rational(exponent)?,
                step: parse_rational(step)?,
                length,
            };
            ok(json!({ "series": render::series(&pochhammer(&spec, *order)?) }))
        }
        Command::Ssyt { shape, content } => {
            let shape: Partition = shape.parse()?;
            let ts = enumerate_ssyt(&shape, &parsed(content)?)?;
            let list: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
            ok(json!({ "count": ts.len(), "tableaux": list }))
        }
        Command::Charge { word: w } => ok(json!({ "charge": charge(&word(w)?)? })),
        Command::KostkaFoulkes { lambda, mu } => {
            let p = kostka_foulkes(&lambda.parse()?, &mu.parse()?)?;
            ok(json!({ "polynomial": render::poly(&p) }))
        }
        Command::KostkaNumber { lambda, mu } => {
            ok(json!({ "count": kostka_number(&lambda.parse()?, &parsed(mu)?)? }))
        }
        Command::Paths { instance: i, highest_weight_only } => {
            let (inst, order) = instance(i)?;
            let mut paths = enumerate_paths(&rows(&order)?, inst.n(), &inst.weight)?;
            if *highest_weight_only {
                paths.retain(is_highest_weight);
            }
            let list: Vec<String> = paths.iter().map(|p| p.to_string()).collect();
            ok(json!({ "instance": render::instance(&inst), "count": list.len(), "paths": list }))
        }
        Command::Crystal { op } => match op {
            CrystalOp::F { path, n, i } | CrystalOp::E { path, n, i } => {
                let p = Path::parse(path, *n)?;
                let out = if matches!(op, CrystalOp::F { .. }) { f_op(&p, *i)? } else { e_op(&p, *i)? };
                ok(json!({ "path": p.to_string(), "i": i, "result": out.map(|q| q.to_string()) }))
            }
            CrystalOp::Hw { path, n } => {
                let p = Path::parse(path, *n)?;
                ok(json!({ "path": p.to_string(), "highest_weight": is_highest_weight(&p) }))
            }
        },
        Command::Energy { op } => match op {
            EnergyOp::Local { u, v, n } => {
                let (u, v) = (row(u, *n)?, row(v, *n)?);
                ok(json!({ "u": u.to_string(), "v": v.to_string(), "local_energy": local_energy(&u, &v) }))
            }
            EnergyOp::Path { path, n } => {
                let p = Path::parse(path, *n)?;
                ok(json!({ "path": p.to_string(), "energy": intrinsic_energy(&p) }))
            }
        },
        Command::RcList { instance: i } => {
            let (inst, _) = instance(i)?;
            let list: Vec<Value> = enumerate_rc(&inst.l, &inst.weight)
                .iter()
                .map(|rc| {
                    json!({
                        "text": rc.to_string(),
                        "levels": render::rigged(rc, &inst.l),
                        "cocharge": cocharge(rc),
                    })
                })
                .collect();
            ok(json!({ "instance": render::instance(&inst), "count": list.len(), "rigged_configurations": list }))
        }
        Command::RcInfo { rc, shapes, n } => rc_info(rc, shapes, *n),
        Command::Bijection { path, rc, check, shapes, n, weight } => {
            if let Some(p) = path {
                let p = Path::parse(p, *n)?;
                let l = MultiplicityArray::from_rows(*n, &p.shapes());
                let rc = path_to_rc(&p);
                return ok(json!({
                    "path": p.to_string(),
                    "rigged_configuration": { "text": rc.to_string(), "levels": render::rigged(&rc, &l) },
                }));
            }
            let shapes = shapes
                .as_deref()
                .ok_or_else(|| Error::Invalid("--shapes is required with --rc and --check".into()))?;
            if let Some(rc) = rc {
                let (l, order) = MultiplicityArray::parse_shapes(shapes, *n)?;
                let rc: RiggedConfiguration = rc.parse()?;
                let p = rc_to_path_ordered(&rc, &l, &rows(&order)?)?;
                return ok(json!({ "rigged_configuration": rc.to_string(), "path": p.to_string() }));
            }
            debug_assert!(*check);
            let weight = weight.clone().unwrap_or_default();
            bijection_check(&Instance { shapes: shapes.into(), n: *n, weight })
        }
        Command::Kostka { instance: i, side } => {
            let (inst, _) = instance(i)?;
            let single = |name: &str, p: IntPolynomial| {
                ok(json!({ "instance": render::instance(&inst), "side": name, "polynomial": render::poly(&p) }))
            };
            match side {
                Side::Fermionic => single("fermionic", fermionic_kostka(&inst)),
                Side::Path => single("path", path_kostka(&inst)?),
                Side::Restricted => single("restricted", restricted_kostka(&inst)?),
                Side::Both => {
                    let r = verify_identity(&inst)?;
                    let counterexample = r.counterexample.as_ref().map_or(Value::Null, |c| {
                        json!({
                            "exponent": c.exponent,
                            "fermionic": render::int(&c.fermionic),
                            "path": render::int(&c.path),
                        })
                    });
                    verdict(
                        json!({
                            "instance": render::instance(&inst),
                            "fermionic": render::poly(&r.fermionic),
                            "path": render::poly(&r.path),
                            "normalization": render::normalization(&r.normalization),
                            "equal": r.equal,
                            "counterexample": counterexample,
                        }),
                        r.equal,
                    )
                }
            }
        }
        Command::Eval { preset, side, order } => {
            let s = side_series(&PresetRegistry::load()?, preset, *side, *order)?;
            ok(json!({ "preset": preset, "side": side_name(*side), "order": order, "series": render::series(&s) }))
        }
        Command::Compare { left, right, order } => {
            let reg = PresetRegistry::load()?;
            let mut sides = Vec::new();
            for spec in [left, right] {
                let (name, side) = spec.rsplit_once(':').ok_or_else(|| {
                    Error::Parse(ParseError::new(format!("bad side `{spec}`: expected NAME:fermionic|bosonic")))
                })?;
                let side = match side {
                    "fermionic" => SumSide::Fermionic,
                    "bosonic" => SumSide::Bosonic,
                    _ => return Err(Error::Parse(ParseError::new(format!("unknown side `{side}`")))),
                };
                sides.push((name, side, side_series(&reg, name, side, *order)?));
            }
            let c = compare_series(&sides[0].2, &sides[1].2);
            let echo = |(name, side, s): &(&str, SumSide, TruncatedSeries)| {
                json!({ "preset": name, "side": side_name(*side), "series": render::series(s) })
            };
            verdict(
                json!({ "left": echo(&sides[0]), "right": echo(&sides[1]), "comparison": render::comparison(&c) }),
                c.equal,
            )
        }
        Command::Character { preset, order } => {
            let reg = PresetRegistry::load()?;
            let p = reg.get(preset)?;
            let r = character(p, order.unwrap_or(p.order))?;
            verdict(
                json!({
                    "preset": r.name,
                    "order": r.order,
                    "offset": render::rational(r.offset),
                    "negative_control": p.negative_control,
                    "fermionic": render::series(&r.fermionic),
                    "bosonic": render::series(&r.bosonic),
                    "comparison": render::comparison(&r.comparison),
                }),
                r.equal,
            )
        }
        Command::Bailey { step, limit, pair, k, max_index, order, rho, sigma, steps, corrupt_beta, .. } => {
            let k = parse_rational(k)?;
            let (rho, sigma) = (param(rho)?, param(sigma)?);
            let steps = if *step { (*steps).max(1) } else { *steps };
            let mut p = chain(*pair, k, *max_index, *order, rho, sigma, steps)?;
            if let Some(n) = *corrupt_beta {
                let b = p.beta.get_mut(n).ok_or_else(|| {
                    Error::IndexOutOfRange(format!("--corrupt-beta {n} exceeds max index {}", p.alpha.len() - 1))
                })?;
                *b = series_add(b, b);
            }
            let mut out = json!({
                "pair": match pair { Seed::Unit => "unit", Seed::ConjugateUnit => "conjugate-unit" },
                "k": render::rational(k),
                "max_index": max_index,
                "order": order,
                "rho": param_text(rho),
                "sigma": param_text(sigma),
                "steps": steps,
            });
            if *limit {
                let (lhs, rhs) = weak_limit(&p, rho, sigma, *order)?;
                let c = compare_series(&lhs, &rhs);
                out["lhs"] = render::series(&lhs);
                out["rhs"] = render::series(&rhs);
                out["comparison"] = render::comparison(&c);
                return verdict(out, c.equal);
            }
            if *step {
                out["alpha"] = p.alpha.iter().map(render::series).collect();
                out["beta"] = p.beta.iter().map(render::series).collect();
            }
            let report = verify_bailey_pair(&p, *order);
            out["report"] = bailey_report(&report);
            verdict(out, report.holds)
        }
        Command::Presets => {
            let reg = PresetRegistry::load()?;
            let list: Vec<Value> = reg
                .presets()
                .iter()
                .map(|p| {
                    json!({
                        "name": p.name,
                        "family": p.family,
                        "order": p.order,
                        "offset": render::rational(p.offset),
                        "negative_control": p.negative_control,
                        "provenance": p.provenance,
                    })
                })
                .collect();
            ok(json!({ "registry": reg.version(), "presets": list }))
        }
    }
}

fn side_name(s: SumSide) -> &'static str {
    match s {
        SumSide::Fermionic => "fermionic",
        SumSide::Bosonic => "bosonic",
    }
}

fn side_series(reg: &PresetRegistry, name: &str, side: SumSide, order: i64) -> Result<TruncatedSeries> {
    let p = reg.get(name)?;
    match side {
        SumSide::Fermionic => eval_fermionic(&p.fermionic, order),
        SumSide::Bosonic => eval_bosonic(&p.bosonic, order),
    }
}

fn rc_info(text: &str, shapes: &str, n: usize) -> Result<Outcome> {
    let (l, _) = MultiplicityArray::parse_shapes(shapes, n)?;
    let rc: RiggedConfiguration = text.parse()?;
    if rc.n() != n {
        return Err(Error::SizeMismatch(format!("{} levels given, n = {n} needs {}", rc.levels().len(), n - 1)));
    }
    let mut levels = render::rigged(&rc, &l);
    for (a, lv) in levels.as_array_mut().into_iter().flatten().enumerate() {
        let bounds = (0..rc.levels()[a].len())
            .map(|row| lower_bound(&rc, a + 1, row))
            .collect::<Result<Vec<i64>>>()?;
        lv["lower_bounds"] = json!(bounds);
    }
    let (valid, problem, weight) = match validate(&rc, &l) {
        Ok(w) => (true, Value::Null, Value::String(w.to_string())),
        Err(e) => (false, Value::String(e.to_string()), Value::Null),
    };
    ok(json!({
        "text": rc.to_string(),
        "shapes": l.to_string(),
        "levels": levels,
        "cocharge": cocharge(&rc),
        "valid": valid,
        "weight": weight,
        "problem": problem,
    }))
}

fn bijection_check(i: &Instance) -> Result<Outcome> {
    let (inst, order) = instance(i)?;
    let shapes = rows(&order)?;
    let n = inst.n();
    let target = inst.weight.padded(n);
    let paths = enumerate_paths(&shapes, n, &inst.weight)?;
    let rcs = enumerate_rc(&inst.l, &inst.weight);
    let mut roundtrip = None;
    let mut statistic = None;
    for p in &paths {
        let rc = path_to_rc(p);
        let back = rc_to_path_ordered(&rc, &inst.l, &shapes)?;
        if roundtrip.is_none() && (back != *p || rc.weight(&inst.l).and_then(|w| w.padded(n)) != target) {
            roundtrip = Some(format!("path {p} maps to {rc}, which maps back to {back}"));
        }
        let s = check_statistic(p);
        if statistic.is_none() && !s.consistent {
            statistic = Some(format!("path {p}: energy {} against cocharge {}", s.energy, s.cocharge));
        }
    }
    for rc in &rcs {
        let p = rc_to_path_ordered(rc, &inst.l, &shapes)?;
        let again = path_to_rc(&p);
        if roundtrip.is_none() && again != *rc {
            roundtrip = Some(format!("{rc} maps to path {p}, which maps back to {again}"));
        }
    }
    if roundtrip.is_none() && rcs.len() != paths.len() {
        roundtrip = Some(format!("{} paths against {} rigged configurations", paths.len(), rcs.len()));
    }
    let word = |f: &Option<String>| if f.is_none() { "ok" } else { "failed" };
    let summary = format!("roundtrip: {}, statistic: {}", word(&roundtrip), word(&statistic));
    let holds = roundtrip.is_none() && statistic.is_none();
    verdict(
        json!({
            "instance": render::instance(&inst),
            "paths": paths.len(),
            "rigged_configurations": rcs.len(),
            "roundtrip": word(&roundtrip),
            "statistic": word(&statistic),
            "first_failure": roundtrip.or(statistic),
            "summary": summary,
        }),
        holds,
    )
}

fn seed(kind: Seed, k: Rational64, max_index: usize, order: i64) -> Result<BaileyPair> {
    match kind {
        Seed::Unit => BaileyPair::unit(k, max_index, order),
        Seed::ConjugateUnit => BaileyPair::conjugate_unit(k, max_index, order),
    }
}

/// The seed after `steps` lemma steps, all exact through `order`. The seed
/// order is raised until no step reports missing input precision.
fn chain(
    kind: Seed,
    k: Rational64,
    max_index: usize,
    order: i64,
    rho: BaileyParam,
    sigma: BaileyParam,
    steps: usize,
) -> Result<BaileyPair> {
    let mut start = order;
    'retry: for _ in 0..16 {
        let mut p = seed(kind, k, max_index, start)?;
        for _ in 0..steps {
            match bailey_step(&p, rho, sigma, order) {
                Ok(next) => p = next,
                Err(Error::InsufficientOrder { required, available }) => {
                    start += (required - available).ceil().to_integer().max(1);
                    continue 'retry;
                }
                Err(e) => return Err(e),
            }
        }
        return Ok(p);
    }
    Err(Error::Invalid(format!("Bailey chain did not reach order {order}")))
}

fn bailey_report(r: &BaileyReport) -> Value {
    let failure = r.first_failure.as_ref().map_or(Value::Null, |f| {
        json!({
            "n": f.n,
            "exponent": render::rational(f.exponent),
            "expected": render::int(&f.expected),
            "actual": render::int(&f.actual),
        })
    });
    json!({
        "holds": r.holds,
        "order_checked": render::rational(r.order_checked),
        "indices_checked": r.indices_checked,
        "first_failure": failure,
    })
}
