//! Unrestricted rigged configurations of type `A_{n-1}`.
//!
//! Vacancy numbers follow the usual shape
//! `p_i^{(a)} = Σ_j L_j^{(a)} min(i,j) - Σ_b C_{ab} Q_i(ν^{(b)})`.
//! Riggings of a row of length `i` in `ν^{(a)}` live in the window
//! `M_i^{(a)} ≤ J ≤ p_i^{(a)}`, where the lower bound is computed from the
//! top partition downwards:
//!
//! * `M_i^{(n-1)} = -i`;
//! * `M_i^{(a)} = -i + max(0, max_{(ℓ,J) ∈ ν^{(a+1)}} (min(i,ℓ) - (J - M_ℓ^{(a+1)})))`.
//!
//! So the bound of a row depends on the riggings one level up, not only on
//! the shape. Cocharge is `½ Σ_{a,b} C_{ab} Σ min(x,y) + Σ J`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::combinat::{partitions, Composition, Partition};
use crate::error::{Error, Result};
use crate::qalg::ParseError;

/// Tensor factor multiplicities `L_i^{(a)}` (rectangles with `a` rows and `i` columns).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiplicityArray {
    n: usize,
    counts: BTreeMap<(usize, usize), usize>,
}

impl MultiplicityArray {
    pub fn new(n: usize) -> Self {
        Self { n, counts: BTreeMap::new() }
    }

    /// Single rows of the given lengths.
    pub fn from_rows(n: usize, rows: &[usize]) -> Self {
        let mut l = Self::new(n);
        for &s in rows {
            l.add(1, s, 1).expect("row factor");
        }
        l
    }

    /// Adds `count` rectangles with `a` rows and `i` columns.
    pub fn add(&mut self, a: usize, i: usize, count: usize) -> Result<()> {
        if a == 0 || i == 0 || (self.n > 1 && a >= self.n) || (self.n <= 1 && a != 1) {
            return Err(Error::IndexOutOfRange(format!(
                "rectangle {a}x{i} for n = {}",
                self.n
            )));
        }
        if count > 0 {
            *self.counts.entry((a, i)).or_insert(0) += count;
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, i: usize) -> usize {
        self.counts.get(&(a, i)).copied().unwrap_or(0)
    }

    /// Nonzero entries as `((a, i), count)`.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.counts.iter().map(|(k, v)| (*k, *v))
    }

    pub fn total_boxes(&self) -> usize {
        self.counts.iter().map(|((a, i), m)| a * i * m).sum()
    }

    /// First non-row rectangle, if any.
    pub fn non_row(&self) -> Option<(usize, usize)> {
        self.counts.keys().find(|(a, _)| *a != 1).copied()
    }

    /// Row lengths in canonical factor order (weakly decreasing).
    pub fn row_lengths(&self) -> Result<Vec<usize>> {
        if let Some((a, i)) = self.non_row() {
            return Err(Error::UnsupportedShape { rows: a, cols: i });
        }
        let mut out = Vec::new();
        for (&(_, i), &m) in self.counts.iter().rev() {
            out.extend(std::iter::repeat(i).take(m));
        }
        Ok(out)
    }

    fn l_term(&self, a: usize, i: usize) -> i64 {
        self.counts
            .range((a, 0)..(a + 1, 0))
            .map(|(&(_, j), &m)| (m * i.min(j)) as i64)
            .sum()
    }

    /// `Σ_{b,j} j·min(a,b)·L_j^{(b)}`.
    fn content_total(&self, a: usize) -> usize {
        self.counts.iter().map(|(&(b, j), &m)| j * a.min(b) * m).sum()
    }

    /// Sizes `|ν^{(a)}|` forced by `weight`, or `None` if some would be negative.
    pub fn config_sizes(&self, weight: &Composition) -> Option<Vec<usize>> {
        let w = weight.padded(self.n)?;
        if w.iter().sum::<usize>() != self.total_boxes() {
            return None;
        }
        (1..self.n)
            .map(|a| {
                let partial: usize = w[..a].iter().sum();
                self.content_total(a).checked_sub(partial)
            })
            .collect()
    }

    /// Inverse of [`Self::config_sizes`]: the weight of a configuration.
    pub fn weight_of(&self, sizes: &[usize]) -> Option<Composition> {
        let mut prev = 0i64;
        let mut out = Vec::with_capacity(self.n);
        for a in 1..=self.n {
            let nu = sizes.get(a - 1).copied().unwrap_or(0) as i64;
            let partial = self.content_total(a) as i64 - nu;
            let w = usize::try_from(partial - prev).ok()?;
            out.push(w);
            prev = partial;
        }
        Some(Composition::new(out))
    }
}

impl MultiplicityArray {
    /// Parses a list of rectangles `RxC` (`R` rows, `C` columns) such as
    /// `1x2,1x1`; also returns the shapes in the order given.
    pub fn parse_shapes(s: &str, n: usize) -> Result<(Self, Vec<(usize, usize)>)> {
        let mut l = Self::new(n);
        let mut order = Vec::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let bad = || ParseError::new(format!("bad shape `{item}`: expected RxC"));
            let (r, c) = item.split_once(['x', 'X']).ok_or_else(bad)?;
            let r: usize = r.trim().parse().map_err(|_| bad())?;
            let c: usize = c.trim().parse().map_err(|_| bad())?;
            l.add(r, c, 1)?;
            order.push((r, c));
        }
        Ok((l, order))
    }
}

impl fmt::Display for MultiplicityArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (&(a, i), &m) in self.counts.iter().rev() {
            for _ in 0..m {
                parts.push(format!("{a}x{i}"));
            }
        }
        f.write_str(&parts.join(","))
    }
}

/// Levels in brackets, rows as `length:rigging`: `[2:0,1:-1][1:0]`.
impl fmt::Display for RiggedConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for lv in &self.levels {
            let rows: Vec<String> = lv.iter().map(|(i, j)| format!("{i}:{j}")).collect();
            write!(f, "[{}]", rows.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for RiggedConfiguration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse(ParseError::new(format!("bad rigged configuration `{s}`: {m}")));
        let mut levels = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('[').ok_or_else(|| bad("expected `[`"))?;
            let end = body.find(']').ok_or_else(|| bad("missing `]`"))?;
            let mut rows = Vec::new();
            for row in body[..end].split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let (i, j) = row.split_once(':').ok_or_else(|| bad("rows are length:rigging"))?;
                let i: usize = i.trim().parse().map_err(|_| bad("bad row length"))?;
                let j: i64 = j.trim().parse().map_err(|_| bad("bad rigging"))?;
                if i == 0 {
                    return Err(bad("row lengths must be positive"));
                }
                rows.push((i, j));
            }
            levels.push(rows);
            rest = body[end + 1..].trim_start();
        }
        Ok(Self::from_rows(levels))
    }
}

/// `Q_i(μ) = Σ_j min(i, μ_j)`.
pub fn q_function(i: usize, parts: impl IntoIterator<Item = usize>) -> i64 {
    parts.into_iter().map(|x| x.min(i) as i64).sum()
}

/// Vacancy number `p_i^{(a)}`; may be negative.
pub fn vacancy(config: &[Partition], l: &MultiplicityArray, a: usize, i: usize) -> Result<i64> {
    if a == 0 || a > config.len() || i == 0 {
        return Err(Error::IndexOutOfRange(format!("vacancy index a = {a}, i = {i}")));
    }
    Ok(vacancy_raw(|b| config.get(b.wrapping_sub(1)).map(|p| p.parts().to_vec()), l, a, i))
}

fn vacancy_raw(
    part: impl Fn(usize) -> Option<Vec<usize>>,
    l: &MultiplicityArray,
    a: usize,
    i: usize,
) -> i64 {
    let q = |b: usize| if b == 0 { 0 } else { part(b).map_or(0, |p| q_function(i, p)) };
    l.l_term(a, i) - 2 * q(a) + q(a - 1) + q(a + 1)
}

/// A configuration `(ν^{(1)}, …, ν^{(n-1)})` whose rows carry riggings.
///
/// Rows of each level are stored sorted by length, then rigging, both
/// decreasing; this is the canonical representative.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RiggedConfiguration {
    levels: Vec<Vec<(usize, i64)>>,
}

impl RiggedConfiguration {
    /// The rigged configuration with `n - 1` empty partitions.
    pub fn empty(n: usize) -> Self {
        Self { levels: vec![Vec::new(); n.saturating_sub(1)] }
    }

    /// Builds from `(length, rigging)` rows per level; zero-length rows are dropped.
    pub fn from_rows(levels: Vec<Vec<(usize, i64)>>) -> Self {
        let mut rc = Self { levels };
        rc.canonicalize();
        rc
    }

    pub(crate) fn canonicalize(&mut self) {
        for lv in &mut self.levels {
            lv.retain(|r| r.0 > 0);
            lv.sort_unstable_by(|x, y| y.cmp(x));
        }
    }

    pub fn levels(&self) -> &[Vec<(usize, i64)>] {
        &self.levels
    }

    /// Rank `n` (one more than the number of partitions).
    pub fn n(&self) -> usize {
        self.levels.len() + 1
    }

    pub fn config(&self) -> Vec<Partition> {
        self.levels
            .iter()
            .map(|lv| Partition::new(lv.iter().map(|r| r.0).collect()).expect("sorted rows"))
            .collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|lv| lv.iter().map(|r| r.0).sum()).collect()
    }

    /// Vacancy number of rows of length `i` in level `a` (1-based).
    pub fn vacancy(&self, l: &MultiplicityArray, a: usize, i: usize) -> i64 {
        vacancy_raw(
            |b| self.levels.get(b.wrapping_sub(1)).map(|lv| lv.iter().map(|r| r.0).collect()),
            l,
            a,
            i,
        )
    }

    /// Lower bounds for every row, level by level (same layout as `levels`).
    pub fn lower_bounds(&self) -> Vec<Vec<i64>> {
        let k = self.levels.len();
        let mut out = vec![Vec::new(); k];
        for a in (0..k).rev() {
            let above: Vec<(usize, i64)> = if a + 1 < k {
                self.levels[a + 1]
                    .iter()
                    .zip(&out[a + 1])
                    .map(|(&(ell, j), &m)| (ell, j - m))
                    .collect()
            } else {
                Vec::new()
            };
            out[a] = self.levels[a].iter().map(|&(i, _)| lower_bound_from(i, &above)).collect();
        }
        out
    }

    /// Sum of riggings.
    pub fn rigging_sum(&self) -> i64 {
        self.levels.iter().flatten().map(|r| r.1).sum()
    }

    /// Weight determined by the configuration sizes.
    pub fn weight(&self, l: &MultiplicityArray) -> Option<Composition> {
        l.weight_of(&self.sizes())
    }
}

/// `M_i = -i + max(0, max (min(i,ℓ) - x))` over `(ℓ, x)` = (length, excess) one level up.
fn lower_bound_from(i: usize, above: &[(usize, i64)]) -> i64 {
    let best = above
        .iter()
        .map(|&(ell, x)| i.min(ell) as i64 - x)
        .max()
        .unwrap_or(0)
        .max(0);
    best - i as i64
}

/// Lower bound for the rigging of row `row` (0-based, canonical order) of `ν^{(a)}`.
///
/// The bound depends on the riggings of `ν^{(a+1)}`, so the whole rigged
/// configuration is taken rather than the bare configuration.
pub fn lower_bound(rc: &RiggedConfiguration, a: usize, row: usize) -> Result<i64> {
    let lv = rc
        .levels
        .get(a.wrapping_sub(1))
        .ok_or_else(|| Error::IndexOutOfRange(format!("level {a}")))?;
    if row >= lv.len() {
        return Err(Error::IndexOutOfRange(format!("row {row} of level {a}")));
    }
    Ok(rc.lower_bounds()[a - 1][row])
}

/// Cocharge `½ Σ_{a,b} C_{ab} Σ_{x∈ν^a, y∈ν^b} min(x,y) + Σ J`.
pub fn cocharge(rc: &RiggedConfiguration) -> i64 {
    quadratic_form(&rc.config()) + rc.rigging_sum()
}

/// The configuration part of cocharge.
pub fn quadratic_form(config: &[Partition]) -> i64 {
    let pair = |x: &Partition, y: &Partition| -> i64 {
        x.parts()
            .iter()
            .map(|&u| y.parts().iter().map(|&v| u.min(v) as i64).sum::<i64>())
            .sum()
    };
    let mut total = 0;
    for a in 0..config.len() {
        total += pair(&config[a], &config[a]);
        if a + 1 < config.len() {
            total -= pair(&config[a], &config[a + 1]);
        }
    }
    total
}

/// Rechecks sizes and every rigging window of an externally supplied object.
pub fn validate(rc: &RiggedConfiguration, l: &MultiplicityArray) -> Result<Composition> {
    let bad = |m: String| Err(Error::InvalidRiggedConfiguration(m));
    if rc.n() != l.n().max(1) {
        return bad(format!("{} partitions for n = {}", rc.levels.len(), l.n()));
    }
    let Some(weight) = rc.weight(l) else {
        return bad("configuration sizes give a negative weight entry".into());
    };
    let bounds = rc.lower_bounds();
    for (a, lv) in rc.levels.iter().enumerate() {
        for (r, &(i, j)) in lv.iter().enumerate() {
            let p = rc.vacancy(l, a + 1, i);
            let m = bounds[a][r];
            if j > p || j < m {
                return bad(format!(
                    "rigging {j} of a length-{i} row in level {} outside [{m}, {p}]",
                    a + 1
                ));
            }
        }
    }
    Ok(weight)
}

/// Blocks `(length, multiplicity)` of a partition, longest first.
pub(crate) fn blocks(p: &Partition) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &x in p.parts() {
        match out.last_mut() {
            Some((len, m)) if *len == x => *m += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

/// Every configuration (tuple of partitions) meeting the size constraint.
pub fn configurations(l: &MultiplicityArray, weight: &Composition) -> Vec<Vec<Partition>> {
    let Some(sizes) = l.config_sizes(weight) else {
        return Vec::new();
    };
    let mut out = vec![Vec::new()];
    for s in sizes {
        let choices = partitions(s);
        out = out
            .into_iter()
            .flat_map(|pre: Vec<Partition>| {
                choices.iter().map(move |c| {
                    let mut v = pre.clone();
                    v.push(c.clone());
                    v
                })
            })
            .collect();
    }
    out
}

/// All unrestricted rigged configurations for `(L, weight)`, sorted.
pub fn enumerate_rc(l: &MultiplicityArray, weight: &Composition) -> Vec<RiggedConfiguration> {
    let mut out = Vec::new();
    for config in configurations(l, weight) {
        let k = config.len();
        let vac: Vec<Vec<(usize, usize, i64)>> = (0..k)
            .map(|a| {
                blocks(&config[a])
                    .into_iter()
                    .map(|(i, m)| (i, m, vacancy(&config, l, a + 1, i).unwrap()))
                    .collect()
            })
            .collect();
        let mut levels = vec![Vec::new(); k];
        rig_level(k, &vac, &[], &mut levels, &mut out);
    }
    out.sort();
    out
}

/// Fills level `a` (1-based, descending) given `(length, excess)` rows of level `a+1`.
fn rig_level(
    a: usize,
    vac: &[Vec<(usize, usize, i64)>],
    above: &[(usize, i64)],
    levels: &mut Vec<Vec<(usize, i64)>>,
    out: &mut Vec<RiggedConfiguration>,
) {
    if a == 0 {
        out.push(RiggedConfiguration::from_rows(levels.clone()));
        return;
    }
    let blocks = &vac[a - 1];
    let mut rows = Vec::new();
    rig_blocks(blocks, 0, above, &mut rows, &mut |rows| {
        let excess: Vec<(usize, i64)> = rows.iter().map(|&(i, j, m)| (i, j - m)).collect();
        levels[a - 1] = rows.iter().map(|&(i, j, _)| (i, j)).collect();
        rig_level(a - 1, vac, &excess, levels, out);
    });
}

fn rig_blocks(
    blocks: &[(usize, usize, i64)],
    b: usize,
    above: &[(usize, i64)],
    rows: &mut Vec<(usize, i64, i64)>,
    k: &mut dyn FnMut(&[(usize, i64, i64)]),
) {
    if b == blocks.len() {
        k(rows);
        return;
    }
    let (i, m, p) = blocks[b];
    let lo = lower_bound_from(i, above);
    if lo > p {
        return;
    }
    // Weakly decreasing riggings within the block.
    let mut chosen = Vec::with_capacity(m);
    multisets(lo, p, m, &mut chosen, &mut |js| {
        for &j in js {
            rows.push((i, j, lo));
        }
        rig_blocks(blocks, b + 1, above, rows, k);
        rows.truncate(rows.len() - js.len());
    });
}

fn multisets(lo: i64, hi: i64, m: usize, cur: &mut Vec<i64>, k: &mut dyn FnMut(&[i64])) {
    if cur.len() == m {
        k(cur);
        return;
    }
    let top = cur.last().copied().unwrap_or(hi);
    for j in (lo..=top).rev() {
        cur.push(j);
        multisets(lo, hi, m, cur, k);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    #[test]
    fn text_forms_round_trip() {
        let rc: RiggedConfiguration = "[2:0,1:-1][][1:0]".parse().unwrap();
        assert_eq!(rc.n(), 4);
        assert_eq!(rc.to_string(), "[2:0,1:-1][][1:0]");
        assert_eq!(RiggedConfiguration::empty(2).to_string(), "[]");
        assert!("[1:0".parse::<RiggedConfiguration>().is_err());
        assert!("[0:0]".parse::<RiggedConfiguration>().is_err());
        let (l, order) = MultiplicityArray::parse_shapes("1x1, 1x2", 2).unwrap();
        assert_eq!(order, vec![(1, 1), (1, 2)]);
        assert_eq!(l.to_string(), "1x2,1x1");
        assert!(MultiplicityArray::parse_shapes("1y2", 2).is_err());
        assert!(MultiplicityArray::parse_shapes("2x1", 2).is_err());
    }

    use super::*;

    fn w(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn vacancy_examples() {
        let l = MultiplicityArray::from_rows(2, &[1, 1]);
        assert_eq!(vacancy(&[Partition::empty()], &l, 1, 3).unwrap(), 2);
        assert_eq!(vacancy(&[p("1")], &l, 1, 1).unwrap(), 0);
        let l = MultiplicityArray::from_rows(2, &[2]);
        assert_eq!(vacancy(&[p("1")], &l, 1, 1).unwrap(), -1);
        assert!(vacancy(&[p("1")], &l, 2, 1).is_err());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_rc(&MultiplicityArray::new(2), &w("0,0")).len(), 1);
        let two = enumerate_rc(&MultiplicityArray::from_rows(2, &[1, 1]), &w("1,1"));
        assert_eq!(two.len(), 2);
        let riggings: Vec<i64> = two.iter().map(|rc| rc.levels()[0][0].1).collect();
        assert_eq!(riggings, vec![-1, 0]);
        assert_eq!(lower_bound(&two[0], 1, 0).unwrap(), -1);
        assert_eq!(enumerate_rc(&MultiplicityArray::from_rows(2, &[2]), &w("1,1")).len(), 1);
    }

    #[test]
    fn cocharge_examples() {
        assert_eq!(cocharge(&RiggedConfiguration::empty(3)), 0);
        let two = enumerate_rc(&MultiplicityArray::from_rows(2, &[1, 1]), &w("1,1"));
        let mut cc: Vec<i64> = two.iter().map(cocharge).collect();
        cc.sort();
        assert_eq!(cc[1], cc[0] + 1);
        let bumped = RiggedConfiguration::from_rows(vec![vec![(1, 0)]]);
        let base = RiggedConfiguration::from_rows(vec![vec![(1, -1)]]);
        assert_eq!(cocharge(&bumped), cocharge(&base) + 1);
    }

    #[test]
    fn validation_catches_window_violations() {
        let l = MultiplicityArray::from_rows(2, &[1, 1]);
        let ok = RiggedConfiguration::from_rows(vec![vec![(1, 0)]]);
        assert_eq!(validate(&ok, &l).unwrap(), w("1,1"));
        let high = RiggedConfiguration::from_rows(vec![vec![(1, 1)]]);
        assert!(validate(&high, &l).is_err());
        let low = RiggedConfiguration::from_rows(vec![vec![(1, -2)]]);
        assert!(validate(&low, &l).is_err());
    }

    #[test]
    fn weight_round_trip() {
        let l = MultiplicityArray::from_rows(3, &[2, 1, 1]);
        for comp in [w("2,1,1"), w("0,2,2"), w("4,0,0"), w("1,3,0")] {
            let sizes = l.config_sizes(&comp).unwrap();
            assert_eq!(l.weight_of(&sizes).unwrap(), comp);
        }
    }
}
