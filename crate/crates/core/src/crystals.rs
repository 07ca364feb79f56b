//! Type A paths in tensor products of single-row crystals.
//!
//! A path `b_1 ⊗ b_2 ⊗ … ⊗ b_K` is written `12(x)1`, leftmost factor first.
//! Crystal operators use the signature rule on the word obtained by reading
//! the factors from right to left, each row left to right; a letter `i+1`
//! followed later by `i` cancels. With this reading `1⊗2` is highest weight
//! and `2⊗1` is not.
//!
//! Local energy of `u ⊗ v` is the length of the second row of the insertion
//! tableau of `v u`. The intrinsic energy sums local energies of every pair
//! `b_j ⊗ b_i` (`j < i`) after moving `b_j` next to `b_i` with the
//! combinatorial R-matrix.

use std::fmt;

use crate::combinat::{insertion_tableau, Composition};
use crate::error::{Error, Result};

/// A weakly increasing row of letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowFactor(Vec<usize>);

impl RowFactor {
    pub fn new(mut letters: Vec<usize>) -> Self {
        letters.sort_unstable();
        Self(letters)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for RowFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.iter().any(|&x| x > 9) { "," } else { "" };
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        f.write_str(&s.join(sep))
    }
}

/// An element of `B^{s_1} ⊗ … ⊗ B^{s_K}` over the alphabet `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    n: usize,
    factors: Vec<RowFactor>,
}

impl Path {
    pub fn new(n: usize, factors: Vec<RowFactor>) -> Result<Self> {
        for f in &factors {
            if f.0.iter().any(|&x| x == 0 || x > n) {
                return Err(Error::Invalid(format!("letter out of range 1..={n} in `{f}`")));
            }
        }
        Ok(Self { n, factors })
    }

    /// Parses `12(x)1`; letters above 9 need commas inside a factor (`1,10`).
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let mut factors = Vec::new();
        for part in s.split("(x)") {
            let part = part.trim();
            if part.is_empty() {
                return Err(Error::Invalid(format!("empty factor in path `{s}`")));
            }
            let letters: Option<Vec<usize>> = if part.contains(',') {
                part.split(',').map(|x| x.trim().parse::<usize>().ok()).collect()
            } else {
                part.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
            };
            let letters = letters.ok_or_else(|| Error::Invalid(format!("bad factor `{part}`")))?;
            if letters.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::Invalid(format!("factor `{part}` is not weakly increasing")));
            }
            factors.push(RowFactor(letters));
        }
        Path::new(n, factors)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn factors(&self) -> &[RowFactor] {
        &self.factors
    }

    pub fn shapes(&self) -> Vec<usize> {
        self.factors.iter().map(RowFactor::len).collect()
    }

    /// Letter multiplicities, length `n`.
    pub fn content(&self) -> Vec<usize> {
        let mut c = vec![0; self.n];
        for f in &self.factors {
            for &x in &f.0 {
                c[x - 1] += 1;
            }
        }
        c
    }

    /// Signature reading: factors right to left, each row left to right,
    /// paired with the (factor, position) of every letter.
    fn reading(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for k in (0..self.factors.len()).rev() {
            for j in 0..self.factors[k].len() {
                out.push((k, j));
            }
        }
        out
    }

    fn letter(&self, at: (usize, usize)) -> usize {
        self.factors[at.0].0[at.1]
    }

    /// Unpaired `i` and `i+1` positions in reading order.
    fn unpaired(&self, i: usize) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
        let mut open: Vec<(usize, usize)> = Vec::new();
        let mut lone_i = Vec::new();
        for at in self.reading() {
            let x = self.letter(at);
            if x == i + 1 {
                open.push(at);
            } else if x == i {
                if open.pop().is_none() {
                    lone_i.push(at);
                }
            }
        }
        (lone_i, open)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.n {
            return Err(Error::IndexOutOfRange(format!("crystal index {i} for n = {}", self.n)));
        }
        Ok(())
    }

    fn replaced(&self, at: (usize, usize), x: usize) -> Path {
        let mut p = self.clone();
        p.factors[at.0].0[at.1] = x;
        p
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.factors.iter().map(|r| r.to_string()).collect();
        f.write_str(&s.join("(x)"))
    }
}

/// Lowering operator `f_i`; `None` when it annihilates the path.
pub fn f_op(p: &Path, i: usize) -> Result<Option<Path>> {
    p.check_index(i)?;
    let (lone_i, _) = p.unpaired(i);
    Ok(lone_i.last().map(|&at| p.replaced(at, i + 1)))
}

/// Raising operator `e_i`; `None` when it annihilates the path.
pub fn e_op(p: &Path, i: usize) -> Result<Option<Path>> {
    p.check_index(i)?;
    let (_, open) = p.unpaired(i);
    Ok(open.first().map(|&at| p.replaced(at, i)))
}

pub fn is_highest_weight(p: &Path) -> bool {
    (1..p.n).all(|i| p.unpaired(i).1.is_empty())
}

/// Every path with the given row lengths and content, in lexicographic order.
pub fn enumerate_paths(shapes: &[usize], n: usize, weight: &Composition) -> Result<Vec<Path>> {
    let w = weight
        .padded(n)
        .ok_or_else(|| Error::SizeMismatch(format!("weight {weight} longer than n = {n}")))?;
    let boxes: usize = shapes.iter().sum();
    if boxes != weight.size() {
        return Err(Error::SizeMismatch(format!(
            "shapes hold {boxes} boxes, weight {weight} has {}",
            weight.size()
        )));
    }
    let mut out = Vec::new();
    let mut remaining = w;
    let mut cur = Vec::new();
    fill(shapes, n, &mut remaining, &mut cur, &mut out);
    Ok(out)
}

fn fill(
    shapes: &[usize],
    n: usize,
    remaining: &mut Vec<usize>,
    cur: &mut Vec<RowFactor>,
    out: &mut Vec<Path>,
) {
    if cur.len() == shapes.len() {
        out.push(Path { n, factors: cur.clone() });
        return;
    }
    let mut row = Vec::new();
    rows_from(shapes[cur.len()], 1, n, remaining, &mut row, &mut |row, remaining| {
        cur.push(RowFactor(row.to_vec()));
        fill(shapes, n, remaining, cur, out);
        cur.pop();
    });
}

/// Calls `k` with every weakly increasing row of length `s` drawn from `remaining`.
fn rows_from(
    s: usize,
    min: usize,
    n: usize,
    remaining: &mut Vec<usize>,
    row: &mut Vec<usize>,
    k: &mut dyn FnMut(&[usize], &mut Vec<usize>),
) {
    if row.len() == s {
        k(row, remaining);
        return;
    }
    for x in min..=n {
        if remaining[x - 1] == 0 {
            continue;
        }
        remaining[x - 1] -= 1;
        row.push(x);
        rows_from(s, x, n, remaining, row, k);
        row.pop();
        remaining[x - 1] += 1;
    }
}

/// Local energy `H(u ⊗ v)`: second-row length of `P(v u)`.
pub fn local_energy(u: &RowFactor, v: &RowFactor) -> usize {
    let word: Vec<usize> = v.0.iter().chain(&u.0).copied().collect();
    insertion_tableau(&word).get(1).map_or(0, Vec::len)
}

/// Combinatorial R-matrix `u ⊗ v ↦ v' ⊗ u'` with `|u'| = |u|`, `|v'| = |v|`
/// and `P(u' v') = P(v u)`.
pub fn r_matrix(u: &RowFactor, v: &RowFactor) -> (RowFactor, RowFactor) {
    let word: Vec<usize> = v.0.iter().chain(&u.0).copied().collect();
    let mut p = insertion_tableau(&word);
    let mut popped = Vec::new();
    while p[0].len() > u.len() {
        popped.push(p[0].pop().unwrap());
    }
    while p.len() > 1 {
        let mut x = p[1].pop().unwrap();
        if p[1].is_empty() {
            p.pop();
        }
        // Reverse bump: displace the rightmost entry smaller than x.
        let k = p[0].iter().rposition(|&y| y < x).expect("reverse bump target");
        std::mem::swap(&mut p[0][k], &mut x);
        popped.push(x);
    }
    popped.reverse();
    let u2 = RowFactor(p.swap_remove(0));
    let v2 = RowFactor(popped);
    debug_assert_eq!(
        insertion_tableau(&u2.0.iter().chain(&v2.0).copied().collect::<Vec<_>>()),
        insertion_tableau(&word)
    );
    (v2, u2)
}

/// Intrinsic energy `D(b) = Σ_{j<i} H(b_j^{(i-1)} ⊗ b_i)` where `b_j^{(i-1)}`
/// is `b_j` carried rightwards to position `i-1`.
pub fn intrinsic_energy(p: &Path) -> usize {
    let f = &p.factors;
    let mut d = 0;
    for j in 0..f.len() {
        let mut cur = f[j].clone();
        for bi in &f[j + 1..] {
            d += local_energy(&cur, bi);
            cur = r_matrix(&cur, bi).1;
        }
    }
    d
}
