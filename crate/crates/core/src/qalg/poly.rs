//! Sparse Laurent polynomials in `q` with big-integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ParseError;

/// A Laurent polynomial `Σ c_e q^e`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    terms: BTreeMap<i64, BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    /// `c q^e`; the zero polynomial when `c` is zero.
    pub fn monomial(c: BigInt, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    pub fn q_power(e: i64) -> Self {
        Self::monomial(BigInt::one(), e)
    }

    /// Builds `Σ coeffs[i] q^i`.
    pub fn from_coeffs<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (i, c) in coeffs.into_iter().enumerate() {
            p.add_term(i as i64, c.into());
        }
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(pairs: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in pairs {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value at `q = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitutes `q -> q^-1`.
    pub fn invert_variable(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Coefficients `c_0..=c_deg` for a polynomial without negative exponents.
    pub fn dense(&self) -> Vec<BigInt> {
        let Some(max) = self.max_exponent() else {
            return Vec::new();
        };
        let mut out = vec![BigInt::zero(); (max.max(0) + 1) as usize];
        for (e, c) in &self.terms {
            assert!(*e >= 0, "dense view of a polynomial with negative exponents");
            out[*e as usize] = c.clone();
        }
        out
    }

    /// `[exponent, coefficient]` pairs with decimal-string coefficients.
    pub fn to_pairs(&self) -> Vec<(i64, String)> {
        self.terms.iter().map(|(e, c)| (*e, c.to_string())).collect()
    }
}

pub fn poly_add(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let mut out = a.clone();
    for (e, c) in &b.terms {
        out.add_term(*e, c.clone());
    }
    out
}

pub fn poly_mul(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let mut out = IntPolynomial::zero();
    for (ea, ca) in &a.terms {
        for (eb, cb) in &b.terms {
            out.add_term(ea + eb, ca * cb);
        }
    }
    out
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        poly_add(self, rhs)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        poly_add(self, &-rhs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        poly_mul(self, rhs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (e, true) => write!(f, "q^{e}")?,
                (e, false) => write!(f, "{mag}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for IntPolynomial {
    type Err = ParseError;

    /// Accepts the canonical rendering, e.g. `q^-1 + 1 - 3*q^2`.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let err = |msg: &str| ParseError::new(format!("polynomial `{s}`: {msg}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        let mut pieces: Vec<String> = Vec::new();
        let mut cur = String::new();
        let chars: Vec<char> = compact.chars().collect();
        for (i, &ch) in chars.iter().enumerate() {
            let after_caret = i > 0 && matches!(chars[i - 1], '^' | '(');
            if (ch == '+' || ch == '-') && i > 0 && !after_caret {
                pieces.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        pieces.push(cur);

        let mut p = IntPolynomial::zero();
        for piece in pieces {
            let (sign, body) = match piece.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, piece.strip_prefix('+').unwrap_or(&piece)),
            };
            if body.is_empty() {
                return Err(err("dangling sign"));
            }
            let (coef, exp) = match body.find('q') {
                None => (body, None),
                Some(pos) => {
                    let coef = body[..pos].strip_suffix('*').unwrap_or(&body[..pos]);
                    let rest = &body[pos + 1..];
                    let exp = if rest.is_empty() {
                        1
                    } else {
                        let e = rest
                            .strip_prefix('^')
                            .ok_or_else(|| err("expected `^` after q"))?;
                        let e = e.trim_start_matches('(').trim_end_matches(')');
                        e.parse::<i64>().map_err(|_| err("bad exponent"))?
                    };
                    (coef, Some(exp))
                }
            };
            let c: BigInt = if coef.is_empty() {
                if exp.is_none() {
                    return Err(err("empty term"));
                }
                BigInt::one()
            } else {
                coef.parse().map_err(|_| err("bad coefficient"))?
            };
            p.add_term(exp.unwrap_or(0), c * sign);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn addition_examples() {
        let x = p("1 + 2*q - q^3");
        assert_eq!(poly_add(&IntPolynomial::zero(), &x), x);
        assert_eq!(poly_add(&p("1+q"), &p("q+q^2")), p("1+2*q+q^2"));
        assert!(poly_add(&p("q^-1"), &p("-q^-1")).is_zero());
    }

    #[test]
    fn multiplication_examples() {
        let x = p("3 - q^2 + q^-4");
        assert_eq!(poly_mul(&IntPolynomial::one(), &x), x);
        assert_eq!(poly_mul(&p("1+q"), &p("1-q")), p("1-q^2"));
        assert_eq!(poly_mul(&p("1+q+q^2"), &p("1+q^2")), p("1+q+2*q^2+q^3+q^4"));
    }

    #[test]
    fn rendering_round_trips() {
        for s in ["0", "1 + 2*q^2 - q^3", "q^-1 + 1", "-q", "-5*q^-2 + 7*q"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("2q^3+q^(-1)").to_string(), "q^-1 + 2*q^3");
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "1 +", "q^", "x", "2**q"] {
            assert!(s.parse::<IntPolynomial>().is_err(), "{s}");
        }
    }
}
