//! Partitions, compositions, semistandard tableaux and the charge statistic.
//!
//! Charge is normalized so that `charge(12) = 1` and `charge(21) = 0`;
//! tableaux are read row by row, bottom row first, each row left to right.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::qalg::{IntPolynomial, ParseError};

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Validates the parts; trailing zeros are dropped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::Invalid(format!("{parts:?} is not a partition")));
        }
        Ok(Self(parts))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn n_statistic(&self) -> usize {
        self.0.iter().enumerate().map(|(i, p)| i * p).sum()
    }
}

/// A finite weight vector; trailing zeros carry no meaning.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        Self(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Entry `i` (0-based), zero past the end.
    pub fn get(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Parts padded or trimmed to length `n` (trimmed parts must be zero).
    pub fn padded(&self, n: usize) -> Option<Vec<usize>> {
        if self.0.iter().skip(n).any(|&x| x != 0) {
            return None;
        }
        Some((0..n).map(|i| self.get(i)).collect())
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }
}

impl From<&Partition> for Composition {
    fn from(p: &Partition) -> Self {
        Self(p.0.clone())
    }
}

fn parse_list(s: &str, what: &str) -> std::result::Result<Vec<usize>, ParseError> {
    let t = s.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| ParseError::new(format!("bad {what} `{s}`")))
        })
        .collect()
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_list(s, "partition")?)
    }
}

impl FromStr for Composition {
    type Err = ParseError;
    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        parse_list(s, "composition").map(Composition)
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0))
    }
}

/// Rows of positive entries; rows weakly increase, columns strictly increase.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    pub rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    /// Rows bottom to top, each left to right.
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().rev().flatten().copied().collect()
    }

    pub fn is_semistandard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        let shape_ok = self.shape().windows(2).all(|w| w[0] >= w[1]);
        let cols_ok = self.rows.windows(2).all(|w| {
            w[1].iter().enumerate().all(|(j, x)| w[0].get(j).is_some_and(|y| y < x))
        });
        rows_ok && shape_ok && cols_ok
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<String>())
            .collect();
        f.write_str(&rows.join("/"))
    }
}

/// Schensted row insertion of `x` into `p`.
pub fn row_insert(p: &mut Vec<Vec<usize>>, mut x: usize) {
    for row in p.iter_mut() {
        match row.iter().position(|&y| y > x) {
            Some(k) => x = std::mem::replace(&mut row[k], x),
            None => {
                row.push(x);
                return;
            }
        }
    }
    p.push(vec![x]);
}

/// Insertion tableau of a word.
pub fn insertion_tableau(word: &[usize]) -> Vec<Vec<usize>> {
    let mut p = Vec::new();
    for &x in word {
        row_insert(&mut p, x);
    }
    p
}

/// All partitions of `n`, in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All compositions of `n` into exactly `k` nonnegative parts, lexicographic.
pub fn compositions(n: usize, k: usize) -> Vec<Composition> {
    fn go(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if k == 0 {
            if n == 0 {
                out.push(Composition(cur.clone()));
            }
            return;
        }
        let lo = if k == 1 { n } else { 0 };
        for x in lo..=n {
            cur.push(x);
            go(n - x, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, &mut Vec::new(), &mut out);
    out
}

/// All semistandard tableaux of `shape` with the given entry multiplicities,
/// sorted by reading word.
///
/// Letters are placed one value at a time as horizontal strips, pruned by the
/// shape, so each filling is produced exactly once.
pub fn enumerate_ssyt(shape: &Partition, content: &Composition) -> Result<Vec<Tableau>> {
    if shape.size() != content.size() {
        return Err(Error::SizeMismatch(format!(
            "shape {shape} has {} boxes, content {content} has {}",
            shape.size(),
            content.size()
        )));
    }
    let target = shape.parts().to_vec();
    let mut out = Vec::new();
    let mut rows = vec![Vec::new(); target.len()];
    strips(&target, content.parts(), 0, &mut rows, &mut out);
    out.sort_by(|a: &Tableau, b: &Tableau| a.reading_word().cmp(&b.reading_word()));
    Ok(out)
}

fn strips(
    target: &[usize],
    content: &[usize],
    letter: usize,
    rows: &mut Vec<Vec<usize>>,
    out: &mut Vec<Tableau>,
) {
    if letter == content.len() {
        if rows.iter().map(Vec::len).eq(target.iter().copied()) {
            out.push(Tableau { rows: rows.clone() });
        }
        return;
    }
    let before: Vec<usize> = rows.iter().map(Vec::len).collect();
    place(target, content, letter, &before, 0, content[letter], rows, out);
}

#[allow(clippy::too_many_arguments)]
fn place(
    target: &[usize],
    content: &[usize],
    letter: usize,
    before: &[usize],
    row: usize,
    left: usize,
    rows: &mut Vec<Vec<usize>>,
    out: &mut Vec<Tableau>,
) {
    if row == target.len() {
        if left == 0 {
            strips(target, content, letter + 1, rows, out);
        }
        return;
    }
    // A horizontal strip may not reach past the previous row's old length.
    let mut room = target[row] - before[row];
    if row > 0 {
        room = room.min(before[row - 1] - before[row]);
    }
    for t in 0..=room.min(left) {
        rows[row].extend(std::iter::repeat(letter + 1).take(t));
        place(target, content, letter, before, row + 1, left - t, rows, out);
        let len = rows[row].len();
        rows[row].truncate(len - t);
    }
}

/// Letter multiplicities of a word, indexed from letter 1.
fn word_content(word: &[usize]) -> Vec<usize> {
    let max = word.iter().copied().max().unwrap_or(0);
    let mut c = vec![0; max];
    for &x in word {
        c[x - 1] += 1;
    }
    c
}

/// Lascoux–Schützenberger charge of a word with partition content.
pub fn charge(word: &[usize]) -> Result<usize> {
    if word.contains(&0) {
        return Err(Error::Invalid("letters must be positive".into()));
    }
    let content = word_content(word);
    if content.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NonDominant(content));
    }
    let n = word.len();
    let mut used = vec![false; n];
    let mut remaining = n;
    let mut total = 0;
    while remaining > 0 {
        // Extract a standard subword: find 1 scanning leftwards from the right
        // end, then 2 scanning leftwards cyclically from there, and so on.
        let mut picked = Vec::new();
        let mut pos = n;
        let mut letter = 1;
        loop {
            let found = (1..=n)
                .map(|step| (pos + n - step) % n)
                .find(|&j| !used[j] && word[j] == letter);
            match found {
                Some(j) => {
                    picked.push(j);
                    pos = j;
                    letter += 1;
                }
                None => break,
            }
        }
        // Index rises by one whenever the next letter lies to the right.
        let mut index = 0;
        for w in picked.windows(2) {
            if w[1] > w[0] {
                index += 1;
            }
            total += index;
        }
        for &j in &picked {
            used[j] = true;
        }
        remaining -= picked.len();
    }
    Ok(total)
}

/// `K_{λμ}(q) = Σ_T q^{charge(T)}` over semistandard tableaux of shape λ, content μ.
pub fn kostka_foulkes(lambda: &Partition, mu: &Partition) -> Result<IntPolynomial> {
    let mut out = IntPolynomial::zero();
    for t in enumerate_ssyt(lambda, &Composition::from(mu))? {
        out.add_term(charge(&t.reading_word())? as i64, BigInt::one());
    }
    Ok(out)
}

/// Number of semistandard tableaux of shape λ and content μ.
pub fn kostka_number(lambda: &Partition, mu: &Composition) -> Result<usize> {
    Ok(enumerate_ssyt(lambda, mu)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn comp(s: &str) -> Composition {
        s.parse().unwrap()
    }

    #[test]
    fn ssyt_examples() {
        assert_eq!(enumerate_ssyt(&part("2,1"), &comp("1,1,1")).unwrap().len(), 2);
        let forced = enumerate_ssyt(&part("3,1"), &comp("3,1")).unwrap();
        assert_eq!(forced.len(), 1);
        assert_eq!(forced[0].to_string(), "111/2");
        assert!(enumerate_ssyt(&part("1,1"), &comp("2,0")).unwrap().is_empty());
        assert!(enumerate_ssyt(&part("2"), &comp("1")).is_err());
    }

    #[test]
    fn charge_examples() {
        assert_eq!(charge(&[1]).unwrap(), 0);
        assert_eq!(charge(&[2, 1]).unwrap(), 0);
        assert_eq!(charge(&[1, 2]).unwrap(), 1);
        let mut charges: Vec<usize> = enumerate_ssyt(&part("2,1"), &comp("1,1,1"))
            .unwrap()
            .iter()
            .map(|t| charge(&t.reading_word()).unwrap())
            .collect();
        charges.sort();
        assert_eq!(charges, vec![1, 2]);
        assert!(matches!(charge(&[2, 2, 1]), Err(Error::NonDominant(_))));
    }

    #[test]
    fn kostka_foulkes_examples() {
        let kf = |l: &str, m: &str| kostka_foulkes(&part(l), &part(m)).unwrap();
        assert_eq!(kf("3,1", "3,1"), IntPolynomial::one());
        assert_eq!(kf("2", "1,1"), IntPolynomial::q_power(1));
        assert_eq!(kf("2,1", "1,1,1").to_string(), "q + q^2");
        assert_eq!(kf("2,2", "2,1,1").to_string(), "q");
    }

    #[test]
    fn kostka_number_permutation_example() {
        for mu in ["1,1,1", "0,1,1,1", "1,0,1,1"] {
            assert_eq!(kostka_number(&part("2,1"), &comp(mu)).unwrap(), 2);
        }
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
        assert_eq!(compositions(3, 2).len(), 4);
    }

    #[test]
    fn rejects_non_partitions() {
        assert!("1,2".parse::<Partition>().is_err());
        assert_eq!("3,1,0".parse::<Partition>().unwrap(), part("3,1"));
        assert!("1,,2".parse::<Composition>().is_err());
    }
}
