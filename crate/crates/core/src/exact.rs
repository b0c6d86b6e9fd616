//! Exact arithmetic over `Q` and `Z`: dense Gaussian elimination, Smith
//! normal form, a sparse fraction-free rank accumulator and a phase-one
//! simplex for feasibility of `Ax = b, x >= 0`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `p/q` text; integers print without a denominator.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// A point written `(x1,x2,...)`; brackets are optional.
pub fn parse_point(text: &str) -> Result<Vec<Rational>> {
    let inner = text.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(parse_rational).collect()
}

/// Accepts `p`, `p/q` and finite decimals such as `-1.25`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole: BigInt = match whole.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            w => w.parse().map_err(|_| bad())?,
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let value = Rational::new(whole * &scale + frac, scale);
        return Ok(if negative { -value } else { value });
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

/// Reduces `rows` in place to reduced row echelon form; returns pivot columns.
pub fn rref(rows: &mut [Vec<Rational>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for k in 0..rows.len() {
            if k != r && !rows[k][c].is_zero() {
                let f = rows[k][c].clone();
                let (pivot_row, other) = if k < r {
                    let (lo, hi) = rows.split_at_mut(r);
                    (&hi[0], &mut lo[k])
                } else {
                    let (lo, hi) = rows.split_at_mut(k);
                    (&lo[r], &mut hi[0])
                };
                for (x, y) in other.iter_mut().zip(pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : rows · x = 0}`.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Solves `Σ c_j columns[j] = target`; `None` when inconsistent. Columns are
/// assumed linearly independent, so a solution is unique.
pub fn solve_columns(columns: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let k = columns.len();
    let d = target.len();
    let mut m: Vec<Vec<Rational>> = (0..d)
        .map(|row| {
            let mut v: Vec<Rational> = columns.iter().map(|c| c[row].clone()).collect();
            v.push(target[row].clone());
            v
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&k) {
        return None;
    }
    let mut c = vec![Rational::zero(); k];
    for (row, &p) in m.iter().zip(&pivots) {
        c[p] = row[k].clone();
    }
    Some(c)
}

/// Precomputed solver for a fixed set of independent columns: `coefficients`
/// recovers the coordinates of a vector in their span, `complement` holds
/// normals of the span.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    coefficients: Vec<Vec<Rational>>,
    complement: Vec<Vec<Rational>>,
}

impl SpanSolver {
    pub fn new(columns: &[Vec<Rational>], dim: usize) -> Self {
        let k = columns.len();
        // [A^T | I] reduced gives a left inverse on the pivot block
        let mut m: Vec<Vec<Rational>> = (0..dim)
            .map(|row| {
                let mut v: Vec<Rational> = columns.iter().map(|c| c[row].clone()).collect();
                v.extend((0..dim).map(|j| if j == row { Rational::one() } else { Rational::zero() }));
                v
            })
            .collect();
        let pivots = rref(&mut m);
        let split = pivots.iter().take_while(|&&p| p < k).count();
        debug_assert_eq!(split, k, "columns must be independent");
        let coefficients = m[..split].iter().map(|row| row[k..].to_vec()).collect();
        let complement = m[split..].iter().map(|row| row[k..].to_vec()).collect();
        Self {
            coefficients,
            complement,
        }
    }

    /// Coefficients of `v` in the column basis, or `None` if `v` is outside
    /// their span.
    pub fn solve(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let dot = |row: &Vec<Rational>| -> Rational {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .map(|(a, b)| a * b)
                .sum()
        };
        if self.complement.iter().any(|row| !dot(row).is_zero()) {
            return None;
        }
        Some(self.coefficients.iter().map(dot).collect())
    }

    pub fn coefficient_rows(&self) -> &[Vec<Rational>] {
        &self.coefficients
    }

    pub fn complement_rows(&self) -> &[Vec<Rational>] {
        &self.complement
    }
}

/// Nonzero elementary divisors of an integer matrix.
pub fn elementary_divisors(matrix: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                let (head, tail) = m.split_at_mut(i);
                for (x, p) in tail[0][t..].iter_mut().zip(&head[t][t..]) {
                    *x -= &q * p;
                }
                if !m[i][t].is_zero() {
                    m.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for row in m.iter_mut().skip(t) {
                    let s = &q * &row[t];
                    row[j] -= s;
                }
                if !m[t][j].is_zero() {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility: pivot must divide the whole trailing block
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !m[i][j].is_multiple_of(&m[t][t]));
            match bad {
                Some((i, _)) => {
                    let (head, tail) = m.split_at_mut(i);
                    for (x, y) in head[t][t..].iter_mut().zip(&tail[0][t..]) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        out.push(m[t][t].abs());
        t += 1;
    }
    out
}

/// Incremental rank over `Q` for sparse integer rows, using fraction-free
/// reduction and content normalisation to keep entries small.
#[derive(Default, Debug)]
pub struct SparseRank {
    pivots: BTreeMap<usize, Vec<(usize, BigInt)>>,
}

impl SparseRank {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds a row; returns whether the rank increased.
    pub fn insert(&mut self, row: Vec<(usize, BigInt)>) -> bool {
        let mut row = self.reduce_leading(row);
        if row.is_empty() {
            return false;
        }
        normalise(&mut row);
        self.pivots.insert(row[0].0, row);
        true
    }

    /// Whether `row` lies in the span of the inserted rows.
    pub fn in_span(&self, row: Vec<(usize, BigInt)>) -> bool {
        self.reduce_leading(row).is_empty()
    }

    /// Row entries must be sorted by column with no zeros.
    fn reduce_leading(&self, mut row: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
        while let Some(&(lead, _)) = row.first() {
            let Some(pivot) = self.pivots.get(&lead) else { break };
            let a = pivot[0].1.clone();
            let b = row[0].1.clone();
            let g = a.gcd(&b);
            let (fa, fb) = (&b / &g, &a / &g);
            row = combine(&row, &fb, pivot, &fa);
            normalise(&mut row);
        }
        row
    }
}

/// `x * s - y * t`, dropping zeros.
fn combine(x: &[(usize, BigInt)], s: &BigInt, y: &[(usize, BigInt)], t: &BigInt) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (col, v) = match (x.get(i), y.get(j)) {
            (Some((cx, vx)), Some((cy, vy))) if cx == cy => {
                i += 1;
                j += 1;
                (*cx, vx * s - vy * t)
            }
            (Some((cx, vx)), Some((cy, _))) if cx < cy => {
                i += 1;
                (*cx, vx * s)
            }
            (Some((cx, vx)), None) => {
                i += 1;
                (*cx, vx * s)
            }
            (_, Some((cy, vy))) => {
                j += 1;
                (*cy, -(vy * t))
            }
            (None, None) => unreachable!(),
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    out
}

fn normalise(row: &mut [(usize, BigInt)]) {
    let g = row.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, v) in row.iter_mut() {
        *v /= &g;
    }
}

/// Whether `A x = b` has a solution with `x >= 0`, by phase-one simplex with
/// Bland's rule. `a` is given row-major.
pub fn feasible_nonnegative(a: &[Vec<Rational>], b: &[Rational]) -> bool {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    // tableau columns: x (n), artificials (m), rhs
    let mut t: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let flip = b[i].is_negative();
            let mut row: Vec<Rational> = a[i].iter().map(|v| if flip { -v.clone() } else { v.clone() }).collect();
            row.extend((0..m).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row.push(if flip { -b[i].clone() } else { b[i].clone() });
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    let width = n + m;
    loop {
        // reduced cost of column j for objective min Σ artificials
        let reduced = |t: &Vec<Vec<Rational>>, j: usize| -> Rational {
            let base = if j >= n { Rational::one() } else { Rational::zero() };
            let mut c = base;
            for (i, row) in t.iter().enumerate() {
                if basis[i] >= n {
                    c -= &row[j];
                }
            }
            c
        };
        let Some(enter) = (0..width).find(|&j| !basis.contains(&j) && reduced(&t, j).is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[width] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else { break };
        let inv = t[pr][enter].recip();
        for x in t[pr].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = t[pr].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != pr && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        basis[pr] = enter;
    }
    t.iter()
        .enumerate()
        .all(|(i, row)| basis[i] < n || row[width].is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    fn qv(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-2").unwrap(), rat(-2));
        assert_eq!(parse_rational("-1.25").unwrap(), ratio(-5, 4));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&ratio(-3, 6)), "-1/2");
        assert_eq!(format_rational(&rat(4)), "4");
    }

    #[test]
    fn smith_form_small() {
        assert_eq!(
            elementary_divisors(&int_matrix(&[&[2, 0], &[0, 1]])),
            vec![BigInt::from(1), BigInt::from(2)]
        );
        assert_eq!(
            elementary_divisors(&int_matrix(&[&[-1, 0], &[-1, -1]])),
            vec![BigInt::from(1), BigInt::from(1)]
        );
        assert_eq!(
            elementary_divisors(&int_matrix(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])),
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
        assert_eq!(elementary_divisors(&int_matrix(&[&[0, 0]])), Vec::<BigInt>::new());
    }

    #[test]
    fn solve_and_nullspace() {
        let cols = vec![qv(&[0, 1, 0, 0]), qv(&[0, 1, 0, 1])];
        let c = solve_columns(&cols, &qv(&[0, 3, 0, 1])).unwrap();
        assert_eq!(c, qv(&[2, 1]));
        assert!(solve_columns(&cols, &qv(&[1, 0, 0, 0])).is_none());
        let ns = nullspace(&[qv(&[1, 1, 0])], 3);
        assert_eq!(ns.len(), 2);
        let solver = SpanSolver::new(&cols, 4);
        assert_eq!(solver.solve(&qv(&[0, 3, 0, 1])).unwrap(), qv(&[2, 1]));
        assert!(solver.solve(&qv(&[1, 0, 0, 0])).is_none());
    }

    #[test]
    fn sparse_rank_matches_dense() {
        let rows = vec![
            qv(&[1, 2, 0, 3]),
            qv(&[2, 4, 0, 6]),
            qv(&[0, 1, 1, 0]),
            qv(&[1, 3, 1, 3]),
        ];
        let mut sr = SparseRank::new();
        for r in &rows {
            let sparse = r
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.to_integer()))
                .collect();
            sr.insert(sparse);
        }
        assert_eq!(sr.rank(), rank(&rows));
        assert_eq!(sr.rank(), 2);
        assert!(sr.in_span(vec![(1, BigInt::from(1)), (2, BigInt::from(1))]));
        assert!(!sr.in_span(vec![(3, BigInt::from(1))]));
    }

    #[test]
    fn simplex_feasibility() {
        // x + y = 1, x - y = 3 has x = 2, y = -1: infeasible with y >= 0
        let a = vec![qv(&[1, 1]), qv(&[1, -1])];
        assert!(!feasible_nonnegative(&a, &qv(&[1, 3])));
        assert!(feasible_nonnegative(&a, &qv(&[3, 1])));
        // convex combination test: (1,1) in conv{(0,0),(2,0),(0,2)}
        let a = vec![qv(&[0, 2, 0]), qv(&[0, 0, 2]), qv(&[1, 1, 1])];
        assert!(feasible_nonnegative(&a, &qv(&[1, 1, 1])));
        assert!(!feasible_nonnegative(&a, &qv(&[2, 2, 1])));
    }
}
