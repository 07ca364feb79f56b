//! The bijection between unrestricted paths and unrestricted rigged
//! configurations, together with its inverse.
//!
//! [`path_to_rc`] reads factors from left to right and adds the letters of
//! each row in decreasing order. Every letter `b` adds one box to `L` and
//! runs the box-adding map: for `a = b-1, …, 1` choose the longest singular
//! row of `ν^{(a)}` no longer than the previous choice (a fresh empty row if
//! there is none), lengthen each chosen row, and make it singular for the new
//! multiplicities. After the first letter of a row, the single box is merged
//! into the row under construction.
//!
//! [`rc_to_path`] undoes this from the rightmost factor: split one box off the
//! row, then for `a = 1, 2, …` choose the shortest singular row at least as
//! long as the previous choice. The first level without such a row is the
//! removed letter (`n` if every level has one).

use std::collections::BTreeMap;

use crate::crystals::{intrinsic_energy, Path, RowFactor};
use crate::error::{Error, Result};
use crate::kostka::{Normalization, GLOBAL_NORMALIZATION};
use crate::rc::{cocharge, validate, MultiplicityArray, RiggedConfiguration};

type Levels = Vec<Vec<(usize, i64)>>;
type Rows = BTreeMap<usize, i64>;

fn q(levels: &Levels, b: usize, i: usize) -> i64 {
    if b == 0 {
        return 0;
    }
    levels.get(b - 1).map_or(0, |lv| lv.iter().map(|r| r.0.min(i) as i64).sum())
}

fn vac(levels: &Levels, rows: &Rows, a: usize, i: usize) -> i64 {
    let l_term: i64 = if a == 1 {
        rows.iter().map(|(&j, &m)| m * j.min(i) as i64).sum()
    } else {
        0
    };
    l_term - 2 * q(levels, a, i) + q(levels, a - 1, i) + q(levels, a + 1, i)
}

fn bump(rows: &mut Rows, len: usize, by: i64) {
    let e = rows.entry(len).or_insert(0);
    *e += by;
    if *e == 0 {
        rows.remove(&len);
    }
}

fn sort_levels(levels: &mut Levels) {
    for lv in levels.iter_mut() {
        lv.retain(|r| r.0 > 0);
        lv.sort_unstable_by(|x, y| y.cmp(x));
    }
}

/// Adds a single box carrying letter `b`.
fn add_box(levels: &mut Levels, rows: &mut Rows, b: usize) {
    let mut limit = usize::MAX;
    let mut chosen = Vec::new();
    for a in (1..b).rev() {
        let pick = levels[a - 1]
            .iter()
            .position(|&(len, j)| len <= limit && j == vac(levels, rows, a, len));
        let k = match pick {
            Some(k) => k,
            None => {
                levels[a - 1].push((0, 0));
                levels[a - 1].len() - 1
            }
        };
        limit = levels[a - 1][k].0;
        chosen.push((a, k));
    }
    for &(a, k) in &chosen {
        levels[a - 1][k].0 += 1;
    }
    bump(rows, 1, 1);
    for &(a, k) in &chosen {
        let len = levels[a - 1][k].0;
        levels[a - 1][k].1 = vac(levels, rows, a, len);
    }
    sort_levels(levels);
}

/// Splits a box off a row of length `s` and removes it; returns its letter.
fn remove_box(levels: &mut Levels, rows: &mut Rows, n: usize, s: usize) -> usize {
    bump(rows, s, -1);
    if s > 1 {
        bump(rows, s - 1, 1);
    }
    let mut with_box = rows.clone();
    bump(&mut with_box, 1, 1);
    let mut least = 1;
    let mut chosen = Vec::new();
    let mut letter = n;
    for a in 1..n {
        let pick = levels[a - 1]
            .iter()
            .rposition(|&(len, j)| len >= least && j == vac(levels, &with_box, a, len));
        match pick {
            Some(k) => {
                least = levels[a - 1][k].0;
                chosen.push((a, k));
            }
            None => {
                letter = a;
                break;
            }
        }
    }
    for &(a, k) in &chosen {
        levels[a - 1][k].0 -= 1;
    }
    for &(a, k) in &chosen {
        let len = levels[a - 1][k].0;
        if len > 0 {
            levels[a - 1][k].1 = vac(levels, rows, a, len);
        }
    }
    sort_levels(levels);
    letter
}

/// The rigged configuration of a path; its multiplicities are the path's rows.
pub fn path_to_rc(p: &Path) -> RiggedConfiguration {
    let n = p.n();
    let mut levels: Levels = vec![Vec::new(); n.saturating_sub(1)];
    let mut rows = Rows::new();
    for f in p.factors() {
        for (t, &x) in f.letters().iter().rev().enumerate() {
            add_box(&mut levels, &mut rows, x);
            if t > 0 {
                bump(&mut rows, 1, -1);
                bump(&mut rows, t, -1);
                bump(&mut rows, t + 1, 1);
            }
        }
    }
    RiggedConfiguration::from_rows(levels)
}

/// The path of a rigged configuration, with factors in canonical order
/// (weakly decreasing row lengths).
pub fn rc_to_path(rc: &RiggedConfiguration, l: &MultiplicityArray) -> Result<Path> {
    let order = l.row_lengths()?;
    rc_to_path_ordered(rc, l, &order)
}

/// As [`rc_to_path`], with the factor row lengths in the given order.
pub fn rc_to_path_ordered(
    rc: &RiggedConfiguration,
    l: &MultiplicityArray,
    order: &[usize],
) -> Result<Path> {
    let mut canonical = l.row_lengths()?;
    let mut given = order.to_vec();
    canonical.sort_unstable();
    given.sort_unstable();
    if canonical != given {
        return Err(Error::SizeMismatch(format!("factor order {order:?} does not match {l}")));
    }
    validate(rc, l)?;
    let n = l.n();
    let mut levels: Levels = rc.levels().to_vec();
    let mut rows = Rows::new();
    for ((_, i), m) in l.entries() {
        bump(&mut rows, i, m as i64);
    }
    let mut factors = Vec::with_capacity(order.len());
    for &s in order.iter().rev() {
        let letters: Vec<usize> =
            (1..=s).rev().map(|t| remove_box(&mut levels, &mut rows, n, t)).collect();
        factors.push(RowFactor::new(letters));
    }
    factors.reverse();
    Path::new(n, factors)
}

/// Energy and cocharge of a path with the relation observed between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatisticCheck {
    pub energy: i64,
    pub cocharge: i64,
    /// `energy = sign·cocharge + shift` with `sign = 1`.
    pub relation: Normalization,
    /// Whether the relation equals the global normalization.
    pub consistent: bool,
}

pub fn check_statistic(p: &Path) -> StatisticCheck {
    let energy = intrinsic_energy(p) as i64;
    let cc = cocharge(&path_to_rc(p));
    let relation = Normalization { sign: 1, shift: energy - cc };
    StatisticCheck { energy, cocharge: cc, relation, consistent: relation == GLOBAL_NORMALIZATION }
}
