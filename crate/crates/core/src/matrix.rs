//! Determinants of polynomial matrices and exact linear algebra over Q.

use num_traits::{One, Zero};

use crate::error::{usage, Error, Result};
use crate::poly::MPoly;
use crate::rational::Rational;

/// Determinant by fraction-free (Bareiss) elimination.
///
/// Every division performed is exact; a failed exact division is reported as
/// a consistency error because it can only mean corrupted input arithmetic.
pub fn det_bareiss(m: &[Vec<MPoly>]) -> Result<MPoly> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return usage("determinant of a non-square matrix");
    }
    if n == 0 {
        return usage("determinant of an empty matrix");
    }
    let vars = m[0][0].vars().clone();
    for row in m {
        for e in row {
            if e.vars() != &vars {
                return usage("matrix entries over different variable sets");
            }
        }
    }
    let mut a: Vec<Vec<MPoly>> = m.to_vec();
    let mut sign = false;
    let mut prev = MPoly::one(&vars);
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return Ok(MPoly::zero(&vars)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev)?.ok_or_else(|| {
                    Error::Consistency("Bareiss step produced an inexact division".into())
                })?;
            }
            a[i][k] = MPoly::zero(&vars);
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if sign { -&det } else { det })
}

/// Row echelon data of a rational matrix.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rank: usize,
    /// Pivot column of each nonzero row, in row order.
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<Rational>>,
}

/// Reduced row echelon form by exact Gaussian elimination.
pub fn rref(m: &[Vec<Rational>]) -> Echelon {
    let mut rows: Vec<Vec<Rational>> = m.to_vec();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][col];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for j in 0..ncols {
                    let sub = &f * &rows[r][j];
                    rows[i][j] -= sub;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    Echelon { rank: r, pivots, rows }
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    rref(m).rank
}

/// Exact inverse, or `None` for a singular matrix.
pub fn inverse(m: &[Vec<Rational>]) -> Result<Option<Vec<Vec<Rational>>>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return usage("inverse of a non-square matrix");
    }
    let aug: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let e = rref(&aug);
    if e.pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) || e.rank < n {
        return Ok(None);
    }
    Ok(Some(e.rows.into_iter().map(|r| r[n..].to_vec()).collect()))
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Rational::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Whether `v` lies in the row space of `m`.
pub fn in_row_space(m: &[Vec<Rational>], v: &[Rational]) -> bool {
    if v.iter().all(|x| x.is_zero()) {
        return true;
    }
    let r0 = rank(m);
    let mut ext = m.to_vec();
    ext.push(v.to_vec());
    rank(&ext) == r0
}
