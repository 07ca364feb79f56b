//! Gaussian binomial coefficients via the q-Pascal recurrence.

use super::poly::IntPolynomial;

/// `[m choose k]_q`, zero when `k < 0` or `k > m`.
///
/// Built row by row from `[m,k] = [m-1,k-1] + q^k [m-1,k]`, so only
/// polynomial additions and shifts are involved.
pub fn q_binomial(m: u64, k: i64) -> IntPolynomial {
    if k < 0 || k as u64 > m {
        return IntPolynomial::zero();
    }
    let k = k.min(m as i64 - k) as usize;
    let mut row = vec![IntPolynomial::one()];
    for mm in 1..=m as usize {
        let width = mm.min(k) + 1;
        let mut next = Vec::with_capacity(width);
        for j in 0..width {
            let left = if j == 0 { IntPolynomial::zero() } else { row[j - 1].clone() };
            let right = row.get(j).map(|p| p.shift(j as i64)).unwrap_or_default();
            next.push(&left + &right);
        }
        row = next;
    }
    row.swap_remove(k)
}

/// Memo table of q-binomials for repeated use within one computation.
#[derive(Default)]
pub struct QBinomialTable {
    cache: std::collections::HashMap<(u64, i64), IntPolynomial>,
}

impl QBinomialTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, m: u64, k: i64) -> &IntPolynomial {
        self.cache.entry((m, k)).or_insert_with(|| q_binomial(m, k))
    }
}
