//! Exact determinant signs and small linear solves.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::geometry::Point;
use crate::scalar::{lcm_of_denominators, Scalar};

/// Sign of an integer determinant by fraction-free (Bareiss) elimination.
pub fn det_sign_int(mut m: Vec<Vec<BigInt>>) -> i8 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i8;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let last = &m[n - 1][n - 1];
    if last.is_zero() {
        0
    } else if last.is_negative() {
        -sign
    } else {
        sign
    }
}

/// Sign of the determinant of a square rational matrix.
pub fn det_sign(rows: &[Vec<Scalar>]) -> i8 {
    let int_rows = rows
        .iter()
        .map(|row| {
            let l = lcm_of_denominators(row.iter());
            row.iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect()
        })
        .collect();
    det_sign_int(int_rows)
}

/// Orientation of `d + 1` points in `R^d`: the sign of `det[p_i - p_0]`.
pub fn orientation(points: &[&Point]) -> i8 {
    let d = points[0].dim();
    debug_assert_eq!(points.len(), d + 1);
    let rows: Vec<Vec<Scalar>> = points[1..]
        .iter()
        .map(|p| (0..d).map(|i| &p[i] - &points[0][i]).collect())
        .collect();
    det_sign(&rows)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Scalar>),
    Inconsistent,
    /// Columns are linearly dependent.
    Degenerate,
}

/// Solves `sum_j x_j * cols[j] = rhs` exactly.
pub fn solve_columns(cols: &[Vec<Scalar>], rhs: &[Scalar]) -> Solution {
    let n = cols.len();
    let rows = rhs.len();
    let mut a: Vec<Vec<Scalar>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Scalar> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..n {
        let Some(p) = (pivot_row..rows).find(|&r| !a[r][col].is_zero()) else {
            return Solution::Degenerate;
        };
        a.swap(pivot_row, p);
        let inv = a[pivot_row][col].recip();
        for j in col..=n {
            a[pivot_row][j] *= &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in col..=n {
                    let t = &f * &a[pivot_row][j];
                    a[r][j] -= t;
                }
            }
        }
        pivot_row += 1;
    }
    if a[n..].iter().any(|row| !row[n].is_zero()) {
        return Solution::Inconsistent;
    }
    Solution::Unique(a[..n].iter().map(|row| row[n].clone()).collect())
}
