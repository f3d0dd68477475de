//! Exact integer and rational matrix routines: Bareiss determinant, Hermite
//! and Smith normal forms with transforms, rational inversion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rational;

pub type IntMatrix = Vec<Vec<BigInt>>;
pub type RatMatrix = Vec<Vec<Rational>>;

pub fn from_i64(m: &[Vec<i64>]) -> IntMatrix {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn to_i64(m: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    m.iter()
        .map(|r| r.iter().map(|x| x.to_i64().ok_or(Error::Overflow("matrix entry"))).collect())
        .collect()
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn rat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Rational::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn to_rational(m: &IntMatrix) -> RatMatrix {
    m.iter().map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect()
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn det(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Row Hermite normal form of the Z-span of `rows` (all of width `n`).
/// Returns the nonzero rows: pivots positive, entries above each pivot
/// reduced into `[0, pivot)`.
pub fn hnf_rows(rows: &[Vec<BigInt>], n: usize) -> IntMatrix {
    let mut a: IntMatrix = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut pivot_row = 0;
    for col in 0..n {
        if pivot_row >= a.len() {
            break;
        }
        loop {
            // smallest nonzero |entry| in this column at or below pivot_row
            let best = (pivot_row..a.len())
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()));
            let Some(best) = best else { break };
            a.swap(pivot_row, best);
            let mut done = true;
            for i in pivot_row + 1..a.len() {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[pivot_row][col]);
                let prow = a[pivot_row].clone();
                for (x, p) in a[i].iter_mut().zip(&prow) {
                    *x -= &q * p;
                }
                if !a[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pivot_row < a.len() && !a[pivot_row][col].is_zero() {
            if a[pivot_row][col].is_negative() {
                for x in a[pivot_row].iter_mut() {
                    *x = -&*x;
                }
            }
            let prow = a[pivot_row].clone();
            for i in 0..pivot_row {
                let q = a[i][col].div_floor(&prow[col]);
                if !q.is_zero() {
                    for (x, p) in a[i].iter_mut().zip(&prow) {
                        *x -= &q * p;
                    }
                }
            }
            pivot_row += 1;
        }
    }
    a.truncate(pivot_row);
    a.retain(|r| r.iter().any(|x| !x.is_zero()));
    a
}

/// Smith normal form `u * a * v = diag(d)` with `u`, `v` unimodular.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Diagonal entries, nonnegative, each dividing the next; length `min(rows, cols)`.
    pub diag: Vec<BigInt>,
}

pub fn smith(a: &IntMatrix) -> Smith {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut d = a.clone();
    let mut u = identity(m);
    let mut v = identity(n);

    fn row_axpy(mat: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
        let src_row = mat[src].clone();
        for (x, s) in mat[dst].iter_mut().zip(&src_row) {
            *x -= q * s;
        }
    }
    fn col_axpy(mat: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
        for row in mat.iter_mut() {
            let s = row[src].clone();
            row[dst] -= q * s;
        }
    }
    fn col_swap(mat: &mut IntMatrix, i: usize, j: usize) {
        for row in mat.iter_mut() {
            row.swap(i, j);
        }
    }

    for t in 0..m.min(n) {
        // pick the smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !d[i][j].is_zero() && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        d.swap(t, bi);
        u.swap(t, bi);
        col_swap(&mut d, t, bj);
        col_swap(&mut v, t, bj);

        loop {
            let mut changed = false;
            for i in t + 1..m {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = d[i][t].div_floor(&d[t][t]);
                row_axpy(&mut d, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !d[i][t].is_zero() {
                    d.swap(t, i);
                    u.swap(t, i);
                    changed = true;
                }
            }
            for j in t + 1..n {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = d[t][j].div_floor(&d[t][t]);
                col_axpy(&mut d, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !d[t][j].is_zero() {
                    col_swap(&mut d, t, j);
                    col_swap(&mut v, t, j);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[i][j].is_multiple_of(&d[t][t])));
            match bad {
                Some(i) => {
                    let one = BigInt::from(-1);
                    row_axpy(&mut d, t, i, &one);
                    row_axpy(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    let diag = (0..m.min(n)).map(|i| d[i][i].clone()).collect();
    Smith { u, v, diag }
}

/// Inverse of a square rational matrix, or `None` when singular.
pub fn rat_inverse(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.len();
    let mut a: RatMatrix = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        let prow = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, pv) in row.iter_mut().zip(&prow) {
                    *x -= &f * pv;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Rank over ℚ.
pub fn rank(m: &IntMatrix) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a = to_rational(m);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let prow = a[r].clone();
        for row in a.iter_mut().skip(r + 1) {
            if !row[c].is_zero() {
                let f = &row[c] / &prow[c];
                for (x, pv) in row.iter_mut().zip(&prow) {
                    *x -= &f * pv;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

pub fn lcm_of_denominators<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn bareiss_matches_cofactor() {
        assert_eq!(det(&m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]])), BigInt::from(4));
        assert_eq!(det(&m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(det(&m(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn smith_reconstructs() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith(&a);
        let d = mat_mul(&mat_mul(&s.u, &a), &s.v);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i == j {
                    assert_eq!(x, &s.diag[i]);
                } else {
                    assert!(x.is_zero());
                }
            }
        }
        assert_eq!(s.diag, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        assert!(det(&s.u).abs().is_one() && det(&s.v).abs().is_one());
    }

    #[test]
    fn hnf_of_redundant_generators() {
        let h = hnf_rows(&m(&[&[2, 0], &[0, 2], &[1, 1]]), 2);
        assert_eq!(h, m(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn rational_inverse_round_trip() {
        let a = to_rational(&m(&[&[2, 1], &[1, 1]]));
        let inv = rat_inverse(&a).unwrap();
        assert_eq!(rat_mul(&a, &inv), to_rational(&identity(2)));
        assert!(rat_inverse(&to_rational(&m(&[&[1, 2], &[2, 4]]))).is_none());
    }
}
