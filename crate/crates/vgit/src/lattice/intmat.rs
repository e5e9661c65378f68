//! Exact integer and rational matrix routines: determinants, Smith and Hermite forms,
//! integer kernels, basis completion and rational solving.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type QBig = Ratio<i128>;
pub type Mat = Vec<Vec<i128>>;

pub fn to_wide(m: &[Vec<i64>]) -> Mat {
    m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()
}

pub fn to_narrow(m: &Mat) -> Option<Vec<Vec<i64>>> {
    m.iter()
        .map(|r| r.iter().map(|&x| i64::try_from(x).ok()).collect())
        .collect()
}

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

pub fn transpose<T: Copy>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).map(|(x, br)| x * br[j]).sum())
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &Mat) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.clone();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// `U * M * V = diag(d)` with `U`, `V` unimodular and `d_1 | d_2 | ...`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: Mat,
    pub v: Mat,
    pub diag: Vec<i128>,
}

pub fn smith(m: &Mat) -> Smith {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let steps = rows.min(cols);
    for k in 0..steps {
        loop {
            // Smallest non-zero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(a, u, v, steps);
            };
            a.swap(k, pi);
            u.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            for row in v.iter_mut() {
                row.swap(k, pj);
            }
            let mut clean = true;
            for i in k + 1..rows {
                let f = Integer::div_floor(&a[i][k], &a[k][k]);
                if f != 0 {
                    row_sub(&mut a, i, k, f);
                    row_sub(&mut u, i, k, f);
                }
                clean &= a[i][k] == 0;
            }
            for j in k + 1..cols {
                let f = Integer::div_floor(&a[k][j], &a[k][k]);
                if f != 0 {
                    col_sub(&mut a, j, k, f);
                    col_sub(&mut v, j, k, f);
                }
                clean &= a[k][j] == 0;
            }
            if !clean {
                continue;
            }
            let p = a[k][k];
            let bad = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    row_sub(&mut a, k, i, -1);
                    row_sub(&mut u, k, i, -1);
                }
                None => break,
            }
        }
    }
    finish(a, u, v, steps)
}

fn finish(mut a: Mat, mut u: Mat, v: Mat, steps: usize) -> Smith {
    for k in 0..steps {
        if a[k][k] < 0 {
            for x in a[k].iter_mut() {
                *x = -*x;
            }
            for x in u[k].iter_mut() {
                *x = -*x;
            }
        }
    }
    let diag = (0..steps).map(|k| a[k][k]).collect();
    Smith { u, v, diag }
}

/// `row_i -= f * row_k`.
fn row_sub(a: &mut Mat, i: usize, k: usize, f: i128) {
    let (src, dst) = if i < k {
        let (lo, hi) = a.split_at_mut(k);
        (&hi[0], &mut lo[i])
    } else {
        let (lo, hi) = a.split_at_mut(i);
        (&lo[k], &mut hi[0])
    };
    for (d, s) in dst.iter_mut().zip(src.iter()) {
        *d -= f * s;
    }
}

/// `col_j -= f * col_k`.
fn col_sub(a: &mut Mat, j: usize, k: usize, f: i128) {
    for row in a.iter_mut() {
        row[j] -= f * row[k];
    }
}

/// Row-style Hermite normal form of the row span; zero rows are dropped.
pub fn hnf_rows(m: &Mat) -> Mat {
    let mut a: Mat = m.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        // Euclid on column c among rows r.. until one non-zero entry remains.
        loop {
            let mut piv: Option<usize> = None;
            for i in r..a.len() {
                if a[i][c] != 0 && piv.is_none_or(|p| a[i][c].abs() < a[p][c].abs()) {
                    piv = Some(i);
                }
            }
            let Some(p) = piv else { break };
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][c] != 0 {
                    let f = Integer::div_floor(&a[i][c], &a[r][c]);
                    row_sub(&mut a, i, r, f);
                    done &= a[i][c] == 0;
                }
            }
            if done {
                break;
            }
        }
        if a[r][c] == 0 {
            continue;
        }
        if a[r][c] < 0 {
            for x in a[r].iter_mut() {
                *x = -*x;
            }
        }
        for i in 0..r {
            let f = Integer::div_floor(&a[i][c], &a[r][c]);
            if f != 0 {
                row_sub(&mut a, i, r, f);
            }
        }
        r += 1;
    }
    a.truncate(r);
    a.retain(|row| row.iter().any(|&x| x != 0));
    a
}

/// Basis of the integer right kernel `{x : M x = 0}`; the result is saturated.
pub fn kernel(m: &Mat, n: usize) -> Mat {
    // Row-reduce [Mᵀ | I]; rows whose left part vanishes span the kernel.
    let mt = transpose(m);
    let rows = n;
    let left = m.len();
    let mut aug: Mat = (0..rows)
        .map(|i| {
            let mut r: Vec<i128> = if left == 0 { Vec::new() } else { mt[i].clone() };
            r.extend((0..n).map(|j| i128::from(i == j)));
            r
        })
        .collect();
    let mut r = 0;
    for c in 0..left {
        loop {
            let mut piv: Option<usize> = None;
            for i in r..rows {
                if aug[i][c] != 0 && piv.is_none_or(|p| aug[i][c].abs() < aug[p][c].abs()) {
                    piv = Some(i);
                }
            }
            let Some(p) = piv else { break };
            aug.swap(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if aug[i][c] != 0 {
                    let f = Integer::div_floor(&aug[i][c], &aug[r][c]);
                    row_sub(&mut aug, i, r, f);
                    done &= aug[i][c] == 0;
                }
            }
            if done {
                r += 1;
                break;
            }
        }
    }
    aug[r..].iter().map(|row| row[left..].to_vec()).collect()
}

/// A unimodular matrix whose first row is the primitive vector `v`.
pub fn complete_to_basis(v: &[i128]) -> Option<Mat> {
    let n = v.len();
    let s = smith(&vec![v.to_vec()]);
    if s.diag.first() != Some(&1) {
        return None;
    }
    // u * v * V = e_1 with u = ±1, so v = ±e_1 V⁻¹ and V⁻¹ has first row ±v.
    let vinv = inverse_unimodular(&s.v)?;
    let sign = s.u[0][0];
    let mut out = vinv;
    for x in out[0].iter_mut() {
        *x *= sign;
    }
    debug_assert_eq!(out[0], v.to_vec());
    let _ = n;
    Some(out)
}

/// Inverse of an integer matrix with determinant ±1.
pub fn inverse_unimodular(m: &Mat) -> Option<Mat> {
    let inv = inverse_rational(m)?;
    inv.iter()
        .map(|r| r.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect())
        .collect()
}

pub fn inverse_rational(m: &Mat) -> Option<Vec<Vec<QBig>>> {
    let n = m.len();
    let mut a: Vec<Vec<QBig>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<QBig> = r.iter().map(|&x| QBig::from_integer(x)).collect();
            row.extend((0..n).map(|j| if i == j { QBig::one() } else { QBig::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let pv = a[c][c];
        for x in a[c].iter_mut() {
            *x /= pv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c];
                let src = a[c].clone();
                for (x, s) in a[i].iter_mut().zip(src) {
                    *x -= f * s;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `x B = target` for row vector `x`, where the rows of `B` are independent.
pub fn solve_left(b: &[Vec<QBig>], target: &[QBig]) -> Option<Vec<QBig>> {
    // Normal equations would lose exactness guarantees for nothing; do elimination on Bᵀ.
    let k = b.len();
    let n = target.len();
    let mut a: Vec<Vec<QBig>> = (0..n)
        .map(|j| {
            let mut row: Vec<QBig> = (0..k).map(|i| b[i][j]).collect();
            row.push(target[j]);
            row
        })
        .collect();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pv = a[r][c];
        for x in a[r].iter_mut() {
            *x /= pv;
        }
        for i in 0..n {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c];
                let src = a[r].clone();
                for (x, s) in a[i].iter_mut().zip(src) {
                    *x -= f * s;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[k].is_zero()) || pivots.len() < k {
        return None;
    }
    let mut x = vec![QBig::zero(); k];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][k];
    }
    Some(x)
}

pub fn gcd_all(v: &[i128]) -> i128 {
    v.iter().fold(0i128, |g, &x| g.gcd(&x))
}

pub fn lcm_denominators(v: &[QBig]) -> i128 {
    v.iter().fold(1i128, |l, x| l.lcm(x.denom()))
}

pub fn abs_sum(v: &[i128]) -> i128 {
    v.iter().map(|x| x.abs()).sum()
}

/// Numbers of positive, negative and zero eigenvalues of a symmetric matrix, by
/// symmetric rational elimination.
pub fn inertia(m: &Mat) -> (usize, usize, usize) {
    let n = m.len();
    let mut a: Vec<Vec<QBig>> = m
        .iter()
        .map(|r| r.iter().map(|&x| QBig::from_integer(x)).collect())
        .collect();
    let (mut pos, mut neg) = (0, 0);
    let mut k = 0;
    let mut active: Vec<usize> = (0..n).collect();
    while k < active.len() {
        let idx = &active[k..];
        let diag = idx.iter().position(|&i| !a[i][i].is_zero());
        let p = match diag {
            Some(off) => active[k + off],
            None => {
                // All remaining diagonals vanish: use an off-diagonal pair.
                let pair = idx
                    .iter()
                    .flat_map(|&i| idx.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero());
                let Some((i, j)) = pair else { break };
                // Replace basis vector i by i + j: a_ii becomes 2 a_ij.
                for t in 0..n {
                    let v = a[j][t];
                    a[i][t] += v;
                }
                for t in 0..n {
                    let v = a[t][j];
                    a[t][i] += v;
                }
                i
            }
        };
        let pos_in = active.iter().position(|&x| x == p).unwrap();
        active.swap(k, pos_in);
        let pv = a[p][p];
        if pv.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        let rest: Vec<usize> = active[k + 1..].to_vec();
        let row_p = a[p].clone();
        for &i in &rest {
            let f = a[i][p] / pv;
            if f.is_zero() {
                continue;
            }
            for &j in &rest {
                a[i][j] -= f * row_p[j];
            }
            a[i][p] = QBig::zero();
            a[p][i] = QBig::zero();
        }
        k += 1;
    }
    (pos, neg, n - pos - neg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_of_small_matrix() {
        let m: Mat = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith(&m);
        assert_eq!(s.diag, vec![2, 6, 12]);
        let prod = mul(&mul(&s.u, &m), &s.v);
        for (i, row) in prod.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(*x, if i == j { s.diag[i] } else { 0 });
            }
        }
    }

    #[test]
    fn kernel_and_completion() {
        let m: Mat = vec![vec![2, 4, 6]];
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(2 * v[0] + 4 * v[1] + 6 * v[2], 0);
        }
        let b = complete_to_basis(&[3, 5, 7]).unwrap();
        assert_eq!(det(&b).abs(), 1);
        assert!(complete_to_basis(&[2, 4]).is_none());
    }

    #[test]
    fn inertia_of_hyperbolic_plane() {
        assert_eq!(inertia(&vec![vec![0, 1], vec![1, 0]]), (1, 1, 0));
        assert_eq!(inertia(&vec![vec![0, 0], vec![0, 0]]), (0, 0, 2));
        assert_eq!(inertia(&vec![vec![-2, 1], vec![1, -2]]), (0, 2, 0));
    }

    #[test]
    fn hnf_spans() {
        let h = hnf_rows(&vec![vec![2, 0], vec![0, 2], vec![1, 1]]);
        assert_eq!(h.len(), 2);
        assert_eq!(det(&h).abs(), 2);
    }
}
