//! JSON forms of library values and the text rendering of a JSON payload.

use num_bigint::BigInt;
use num_rational::Rational64;
use serde_json::{json, Map, Value};

use fermionic::kostka::{KostkaInstance, Normalization};
use fermionic::qalg::{IntPolynomial, SeriesComparison, TruncatedSeries};
use fermionic::rc::{MultiplicityArray, RiggedConfiguration};

pub fn int(c: &BigInt) -> Value {
    Value::String(c.to_string())
}

pub fn rational(r: Rational64) -> Value {
    Value::String(r.to_string())
}

/// `{"text", "terms", "at_one"}`; terms are `[exponent, "coefficient"]` pairs.
pub fn poly(p: &IntPolynomial) -> Value {
    let terms: Vec<Value> = p.to_pairs().into_iter().map(|(e, c)| json!([e, c])).collect();
    json!({ "text": p.to_string(), "terms": terms, "at_one": int(&p.eval_one()) })
}

pub fn series(s: &TruncatedSeries) -> Value {
    let step = Rational64::new(1, s.denom() as i64);
    let coefficients: Vec<Value> = s.coeffs().iter().map(int).collect();
    json!({
        "offset": rational(s.offset()),
        "step": rational(step),
        "known_through": rational(s.known_through()),
        "coefficients": coefficients,
    })
}

pub fn comparison(c: &SeriesComparison) -> Value {
    let first = c.first_discrepancy.as_ref().map_or(Value::Null, |d| {
        json!({ "exponent": rational(d.exponent), "left": int(&d.left), "right": int(&d.right) })
    });
    json!({
        "equal": c.equal,
        "checked_through": rational(c.checked_through),
        "first_discrepancy": first,
    })
}

pub fn normalization(n: &Normalization) -> Value {
    json!({ "sign": n.sign, "shift": n.shift })
}

pub fn instance(i: &KostkaInstance) -> Value {
    json!({ "shapes": i.l.to_string(), "n": i.n(), "weight": i.weight.to_string() })
}

/// Per level: partition, riggings and recomputed vacancy numbers.
pub fn rigged(rc: &RiggedConfiguration, l: &MultiplicityArray) -> Value {
    let levels: Vec<Value> = rc
        .levels()
        .iter()
        .enumerate()
        .map(|(a, rows)| {
            let partition: Vec<usize> = rows.iter().map(|r| r.0).collect();
            let riggings: Vec<i64> = rows.iter().map(|r| r.1).collect();
            let vacancies: Vec<i64> = rows.iter().map(|r| rc.vacancy(l, a + 1, r.0)).collect();
            json!({ "partition": partition, "riggings": riggings, "vacancies": vacancies })
        })
        .collect();
    Value::Array(levels)
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(xs) if xs.iter().all(|x| !x.is_object()) => {
            let parts: Vec<String> = xs.iter().map(|x| scalar(x).unwrap_or_default()).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        _ => None,
    }
}

fn block(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match v {
        Value::Object(m) => fields(out, m, depth + 1),
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                block(out, &format!("- {i}"), x, depth + 1);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

fn fields(out: &mut String, m: &Map<String, Value>, depth: usize) {
    for (k, v) in m {
        block(out, k, v, depth);
    }
}

/// Indented `key: value` lines carrying every field of the payload.
pub fn text(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(m) => fields(&mut out, m, 0),
        other => block(&mut out, "result", other, 0),
    }
    out
}
