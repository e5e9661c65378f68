//! LLL reduction of positive definite Gram matrices and Fincke–Pohst enumeration of
//! lattice points in an ellipsoid, both in exact rational arithmetic.

use num_integer::Roots;
use num_traits::{One, Signed, Zero};

use super::intmat::{self, Mat, QBig};
use super::LatticeError;

fn qb(x: i128) -> QBig {
    QBig::from_integer(x)
}

/// Gram–Schmidt data `(mu, b*)` of a Gram matrix.
fn gso(b: &Mat) -> (Vec<Vec<QBig>>, Vec<QBig>) {
    let n = b.len();
    let mut mu = vec![vec![QBig::zero(); n]; n];
    let mut bstar = vec![QBig::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut s = qb(b[i][j]);
            for l in 0..j {
                s -= mu[j][l] * mu[i][l] * bstar[l];
            }
            mu[i][j] = s / bstar[j];
        }
        let mut s = qb(b[i][i]);
        for l in 0..i {
            s -= mu[i][l] * mu[i][l] * bstar[l];
        }
        bstar[i] = s;
    }
    (mu, bstar)
}

fn round(x: QBig) -> i128 {
    (x + QBig::new(1, 2)).floor().to_integer()
}

/// LLL with `δ = 3/4` on a positive definite Gram matrix. Returns the unimodular
/// transform `T` (rows are the reduced vectors in the input basis) and `T G Tᵀ`.
pub fn lll(gram: &Mat) -> (Mat, Mat) {
    let n = gram.len();
    let mut t = intmat::identity(n);
    let mut b = gram.clone();
    if n < 2 {
        return (t, b);
    }
    let delta = QBig::new(3, 4);
    let mut k = 1;
    let mut guard = 0usize;
    while k < n {
        guard += 1;
        assert!(guard < 1_000_000, "LLL failed to converge");
        for j in (0..k).rev() {
            let (mu, _) = gso(&b);
            let r = round(mu[k][j]);
            if r != 0 {
                sub_multiple(&mut t, &mut b, k, j, r);
            }
        }
        let (mu, bstar) = gso(&b);
        if bstar[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1] {
            k += 1;
        } else {
            t.swap(k, k - 1);
            b.swap(k, k - 1);
            for row in b.iter_mut() {
                row.swap(k, k - 1);
            }
            k = (k - 1).max(1);
        }
    }
    (t, b)
}

/// `b_k -= r b_j` on both the transform and the Gram matrix.
fn sub_multiple(t: &mut Mat, b: &mut Mat, k: usize, j: usize, r: i128) {
    let n = b.len();
    for c in 0..t[k].len() {
        t[k][c] -= r * t[j][c];
    }
    let bkk = b[k][k] - 2 * r * b[k][j] + r * r * b[j][j];
    for i in 0..n {
        if i != k {
            b[k][i] -= r * b[j][i];
            b[i][k] = b[k][i];
        }
    }
    b[k][k] = bkk;
}

/// Enumerates integer points of a positive definite form near a rational centre.
#[derive(Debug, Clone)]
pub struct Enumerator {
    n: usize,
    /// Rows are the reduced basis in input coordinates.
    transform: Mat,
    inverse: Vec<Vec<QBig>>,
    /// Cholesky-style coefficients: `Q(y) = Σ q_ii (y_i + Σ_{j>i} q_ij y_j)²`.
    q: Vec<Vec<QBig>>,
}

impl Enumerator {
    pub fn new(gram: &[Vec<i64>]) -> Result<Self, LatticeError> {
        let g = intmat::to_wide(gram);
        let n = g.len();
        let (pos, _, _) = intmat::inertia(&g);
        if pos != n {
            return Err(LatticeError::NotNegativeDefinite);
        }
        let (transform, reduced) = lll(&g);
        let inverse = intmat::inverse_rational(&transform).ok_or(LatticeError::Degenerate)?;
        let mut q: Vec<Vec<QBig>> = reduced
            .iter()
            .map(|r| r.iter().map(|&x| qb(x)).collect())
            .collect();
        for i in 0..n {
            for j in i + 1..n {
                q[j][i] = q[i][j];
                q[i][j] = q[i][j] / q[i][i];
            }
            for k in i + 1..n {
                for l in k..n {
                    let v = q[k][i] * q[i][l];
                    q[k][l] -= v;
                }
            }
        }
        Ok(Enumerator {
            n,
            transform,
            inverse,
            q,
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// All `x` with `(x - c)ᵀ G (x - c) ≤ bound`.
    pub fn within(&self, center: &[QBig], bound: QBig) -> Vec<Vec<i64>> {
        self.run(center, bound, false)
    }

    /// All `x` with `(x - c)ᵀ G (x - c) = value`.
    pub fn exactly(&self, center: &[QBig], value: QBig) -> Vec<Vec<i64>> {
        self.run(center, value, true)
    }

    fn run(&self, center: &[QBig], bound: QBig, exact: bool) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        if bound.is_negative() || self.n == 0 {
            if self.n == 0 && (bound.is_zero() || (!exact && !bound.is_negative())) {
                out.push(Vec::new());
            }
            return out;
        }
        // Centre in reduced coordinates: c' = c T⁻¹.
        let c: Vec<QBig> = (0..self.n)
            .map(|j| (0..self.n).map(|i| center[i] * self.inverse[i][j]).sum())
            .collect();
        let mut x = vec![0i128; self.n];
        self.descend(self.n, &c, bound, exact, &mut x, &mut out);
        out.sort();
        out
    }

    fn descend(
        &self,
        level: usize,
        c: &[QBig],
        remaining: QBig,
        exact: bool,
        x: &mut Vec<i128>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if level == 0 {
            if !exact || remaining.is_zero() {
                let v: Vec<i64> = (0..self.n)
                    .map(|j| {
                        let s: i128 = (0..self.n).map(|i| x[i] * self.transform[i][j]).sum();
                        s as i64
                    })
                    .collect();
                out.push(v);
            }
            return;
        }
        let i = level - 1;
        let mut shift = QBig::zero();
        for j in i + 1..self.n {
            shift += self.q[i][j] * (qb(x[j]) - c[j]);
        }
        // Need q_ii (x_i - s)² ≤ remaining with s = c_i - shift.
        let s = c[i] - shift;
        let r = remaining / self.q[i][i];
        let m = r.floor().to_integer().max(0).sqrt();
        let lo = s.floor().to_integer() - m - 1;
        let hi = s.ceil().to_integer() + m + 1;
        for xi in lo..=hi {
            let z = qb(xi) - s;
            let used = self.q[i][i] * z * z;
            if used > remaining {
                continue;
            }
            x[i] = xi;
            self.descend(level - 1, c, remaining - used, exact, x, out);
        }
        x[i] = 0;
    }
}

/// Non-zero vectors of norm at most `bound` in a positive definite lattice.
pub fn short_vectors(gram: &[Vec<i64>], bound: i64) -> Result<Vec<Vec<i64>>, LatticeError> {
    let e = Enumerator::new(gram)?;
    let zero = vec![QBig::zero(); gram.len()];
    Ok(e
        .within(&zero, qb(bound as i128))
        .into_iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect())
}

/// Rounds `x` coordinatewise, used for choosing nearby integer points.
pub fn is_integral(v: &[QBig]) -> bool {
    v.iter().all(|x| x.is_integer())
}

pub fn one() -> QBig {
    QBig::one()
}
