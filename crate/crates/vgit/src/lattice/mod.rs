//! Even integral lattices given by Gram matrices.
//!
//! Root lattices are negative definite throughout, so roots have norm `-2`.

pub mod discriminant;
pub mod embedding;
pub mod intmat;
pub mod overlattice;
pub mod reduce;
pub mod roots;
mod spec;

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use intmat::{Mat, QBig};

pub use discriminant::{discriminant_form, form_isometries, DiscriminantGroup, FiniteQuadraticForm};
pub use embedding::{embeds_primitively_k3, in_genus, EmbeddingVerdict};
pub use overlattice::{overlattices, Overlattice, OverlatticeSearch};
pub use roots::{roots, AdeType, Family, RootSystemReport};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("Gram matrix is not square and symmetric")]
    NotSymmetric,
    #[error("diagonal entry {0} is odd; only even lattices are supported")]
    Odd(usize),
    #[error("lattice is degenerate")]
    Degenerate,
    #[error("cannot parse lattice spec `{text}` at byte {pos}: {msg}")]
    Spec { text: String, pos: usize, msg: String },
    #[error("lattice is not negative definite")]
    NotNegativeDefinite,
    #[error("lattice is not hyperbolic")]
    NotHyperbolic,
    #[error("vector has wrong length {got}, expected {want}")]
    Length { got: usize, want: usize },
    #[error("the zero vector has no divisibility")]
    ZeroVector,
    #[error("vectors are linearly dependent")]
    Dependent,
    #[error("search budget exceeded: {0}")]
    Budget(String),
    #[error("subgroup is not isotropic")]
    NotIsotropic,
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

/// A named orthogonal summand occupying consecutive basis vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub name: String,
    pub offset: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero == 0 {
            write!(f, "({},{})", self.positive, self.negative)
        } else {
            write!(f, "({},{},{})", self.positive, self.negative, self.zero)
        }
    }
}

/// An even lattice `Z^n` with integer symmetric Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GramLattice {
    gram: Vec<Vec<i64>>,
    signature: Signature,
    blocks: Vec<Block>,
}

impl GramLattice {
    /// Accepts degenerate forms; callers needing a non-degenerate lattice check
    /// [`GramLattice::is_degenerate`].
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(LatticeError::NotSymmetric);
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric);
                }
            }
            if gram[i][i] % 2 != 0 {
                return Err(LatticeError::Odd(i));
            }
        }
        let (positive, negative, zero) = intmat::inertia(&intmat::to_wide(&gram));
        let blocks = vec![Block {
            name: "L".into(),
            offset: 0,
            rank: n,
        }];
        Ok(GramLattice {
            gram,
            signature: Signature {
                positive,
                negative,
                zero,
            },
            blocks,
        })
    }

    pub(crate) fn named(mut self, name: &str) -> Self {
        self.blocks = vec![Block {
            name: name.to_string(),
            offset: 0,
            rank: self.rank(),
        }];
        self
    }

    pub fn with_name(self, name: &str) -> Self {
        self.named(name)
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.gram[i][j]
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Block names joined with `+`.
    pub fn name(&self) -> String {
        self.blocks
            .iter()
            .map(|b| b.name.as_str())
            .collect::<Vec<_>>()
            .join("+")
    }

    pub fn det(&self) -> i128 {
        intmat::det(&intmat::to_wide(&self.gram))
    }

    pub fn is_degenerate(&self) -> bool {
        self.signature.zero > 0
    }

    pub fn is_negative_definite(&self) -> bool {
        self.signature.negative == self.rank()
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.signature.positive == 1 && self.signature.zero == 0
    }

    fn check_len(&self, x: &[i64]) -> Result<(), LatticeError> {
        if x.len() != self.rank() {
            return Err(LatticeError::Length {
                got: x.len(),
                want: self.rank(),
            });
        }
        Ok(())
    }

    /// `x · y` for integer coordinate vectors.
    pub fn dot(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s: i128 = 0;
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            let row = &self.gram[i];
            let mut t: i128 = 0;
            for (j, yj) in y.iter().enumerate() {
                t += row[j] as i128 * *yj as i128;
            }
            s += *xi as i128 * t;
        }
        s as i64
    }

    pub fn norm(&self, x: &[i64]) -> i64 {
        self.dot(x, x)
    }

    /// `G x`, the pairings of `x` with the basis.
    pub fn pairings(&self, x: &[i64]) -> Vec<i64> {
        self.gram
            .iter()
            .map(|row| row.iter().zip(x).map(|(g, v)| g * v).sum())
            .collect()
    }

    pub fn dot_q(&self, x: &[QBig], y: &[QBig]) -> QBig {
        let mut s = QBig::from_integer(0);
        for (i, xi) in x.iter().enumerate() {
            if *xi.numer() == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if self.gram[i][j] != 0 {
                    s += xi * yj * QBig::from_integer(self.gram[i][j] as i128);
                }
            }
        }
        s
    }

    /// Orthogonal direct sum; block metadata is concatenated.
    pub fn direct_sum(&self, other: &GramLattice) -> GramLattice {
        let (n, m) = (self.rank(), other.rank());
        let mut gram = vec![vec![0i64; n + m]; n + m];
        for i in 0..n {
            gram[i][..n].copy_from_slice(&self.gram[i]);
        }
        for i in 0..m {
            gram[n + i][n..].copy_from_slice(&other.gram[i]);
        }
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().map(|b| Block {
            name: b.name.clone(),
            offset: b.offset + n,
            rank: b.rank,
        }));
        GramLattice {
            gram,
            signature: Signature {
                positive: self.signature.positive + other.signature.positive,
                negative: self.signature.negative + other.signature.negative,
                zero: self.signature.zero + other.signature.zero,
            },
            blocks,
        }
    }

    pub fn sum_of(parts: &[GramLattice]) -> GramLattice {
        let mut it = parts.iter();
        let first = it.next().cloned().unwrap_or_else(|| GramLattice::new(vec![]).unwrap());
        it.fold(first, |acc, p| acc.direct_sum(p))
    }

    /// `L(n)`: the form multiplied by `n`.
    pub fn rescale(&self, n: i64) -> GramLattice {
        let gram = self
            .gram
            .iter()
            .map(|r| r.iter().map(|x| x * n).collect())
            .collect();
        let mut out = GramLattice::new(gram).expect("rescaling keeps symmetry and evenness");
        out.blocks = self
            .blocks
            .iter()
            .map(|b| Block {
                name: format!("{}({})", b.name, n),
                offset: b.offset,
                rank: b.rank,
            })
            .collect();
        out
    }

    /// The lattice spanned by the given integer vectors (rows), which must be independent.
    pub fn sublattice(&self, basis: &[Vec<i64>]) -> Result<GramLattice, LatticeError> {
        for b in basis {
            self.check_len(b)?;
        }
        let gram: Vec<Vec<i64>> = basis
            .iter()
            .map(|x| basis.iter().map(|y| self.dot(x, y)).collect())
            .collect();
        let rows = intmat::to_wide(basis);
        if intmat::hnf_rows(&rows).len() < basis.len() {
            return Err(LatticeError::Dependent);
        }
        GramLattice::new(gram)
    }

    /// Same, for rational vectors whose Gram matrix is integral.
    pub fn sublattice_q(&self, basis: &[Vec<QBig>]) -> Result<GramLattice, LatticeError> {
        let mut gram = vec![vec![0i64; basis.len()]; basis.len()];
        for i in 0..basis.len() {
            for j in 0..=i {
                let v = self.dot_q(&basis[i], &basis[j]);
                if !v.is_integer() {
                    return Err(LatticeError::NotSymmetric);
                }
                let v = i64::try_from(v.to_integer()).map_err(|_| LatticeError::Overflow("gram"))?;
                gram[i][j] = v;
                gram[j][i] = v;
            }
        }
        GramLattice::new(gram)
    }

    /// Saturated basis of `{x ∈ L : x · v = 0 for all v}`.
    pub fn orthogonal_complement(&self, vectors: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let rows: Mat = vectors
            .iter()
            .map(|v| self.pairings(v).into_iter().map(|x| x as i128).collect())
            .collect();
        let k = intmat::kernel(&rows, self.rank());
        intmat::to_narrow(&k).expect("kernel entries fit")
    }

    /// `Div(x)`: the positive generator of `x · L`.
    pub fn divisibility(&self, x: &[i64]) -> Result<i64, LatticeError> {
        self.check_len(x)?;
        if x.iter().all(|&v| v == 0) {
            return Err(LatticeError::ZeroVector);
        }
        let g = self.pairings(x).iter().fold(0i64, |g, v| g.gcd(v));
        // x ≠ 0 in a non-degenerate lattice pairs non-trivially with something.
        Ok(if g == 0 { 0 } else { g })
    }

    // Constructors.

    pub fn a(n: usize) -> GramLattice {
        let mut g = vec![vec![0i64; n]; n];
        for i in 0..n {
            g[i][i] = -2;
            if i + 1 < n {
                g[i][i + 1] = 1;
                g[i + 1][i] = 1;
            }
        }
        GramLattice::new(g).unwrap().named(&format!("A{n}"))
    }

    /// `D_n`, `n ≥ 2`: a chain of `n - 1` nodes plus one node attached to the node
    /// before the last.
    pub fn d(n: usize) -> GramLattice {
        assert!(n >= 2);
        let mut g = vec![vec![0i64; n]; n];
        for i in 0..n {
            g[i][i] = -2;
        }
        for i in 0..n.saturating_sub(2) {
            g[i][i + 1] = 1;
            g[i + 1][i] = 1;
        }
        if n >= 3 {
            g[n - 1][n - 3] = 1;
            g[n - 3][n - 1] = 1;
        }
        GramLattice::new(g).unwrap().named(&format!("D{n}"))
    }

    /// `E_6`, `E_7`, `E_8` as `T_{2,3,n-3}`.
    pub fn e(n: usize) -> GramLattice {
        assert!((6..=8).contains(&n));
        GramLattice::t_pqr(2, 3, n - 3).named(&format!("E{n}"))
    }

    pub fn u() -> GramLattice {
        GramLattice::new(vec![vec![0, 1], vec![1, 0]]).unwrap().named("U")
    }

    pub fn u_scaled(n: i64) -> GramLattice {
        GramLattice::new(vec![vec![0, n], vec![n, 0]])
            .unwrap()
            .named(&format!("U({n})"))
    }

    /// `⟨k⟩` for even `k`.
    pub fn rank_one(k: i64) -> Result<GramLattice, LatticeError> {
        Ok(GramLattice::new(vec![vec![k]])?.named(&format!("<{k}>")))
    }

    /// Three arms of lengths `p-1`, `q-1`, `r-1` attached to a centre, all nodes of norm -2.
    pub fn t_pqr(p: usize, q: usize, r: usize) -> GramLattice {
        assert!(p >= 1 && q >= 1 && r >= 1);
        let n = p + q + r - 2;
        let mut g = vec![vec![0i64; n]; n];
        for i in 0..n {
            g[i][i] = -2;
        }
        let mut link = |a: usize, b: usize| {
            g[a][b] = 1;
            g[b][a] = 1;
        };
        let mut next = 1;
        for arm in [p, q, r] {
            let mut prev = 0;
            for _ in 1..arm {
                link(prev, next);
                prev = next;
                next += 1;
            }
        }
        GramLattice::new(g).unwrap().named(&format!("T({p},{q},{r})"))
    }

    /// The rank-6 lattice with basis `l', e_1, ..., e_5`: all of norm -2, `l'·e_i = 1`,
    /// `e_i·e_j = 0`.
    pub fn m() -> GramLattice {
        let mut g = vec![vec![0i64; 6]; 6];
        for i in 0..6 {
            g[i][i] = -2;
        }
        for i in 1..6 {
            g[0][i] = 1;
            g[i][0] = 1;
        }
        GramLattice::new(g).unwrap().named("M")
    }

    /// Parses `E8+D4+U(2)`, `T(2,3,8)`, `M`, `A12`, `10A1`, `<-4>`, or a JSON Gram matrix.
    pub fn parse(text: &str) -> Result<GramLattice, LatticeError> {
        spec::parse(text)
    }
}

impl fmt::Display for GramLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} rank {} signature {}", self.name(), self.rank(), self.signature)
    }
}

/// Polarization class `h = 2l' + e_1 + ... + e_5` in the basis of [`GramLattice::m`].
pub const M_POLARIZATION: [i64; 6] = [2, 1, 1, 1, 1, 1];

/// `f_i = h - e_i` in the basis of [`GramLattice::m`], `i = 1..=5`.
pub fn m_f(i: usize) -> [i64; 6] {
    let mut v = M_POLARIZATION;
    v[i] -= 1;
    v
}

/// True iff the lattice spanned by `basis` (integer coordinates in the ambient basis) is
/// saturated, i.e. all invariant factors of the coordinate matrix are 1.
pub fn is_primitive_sublattice(basis: &[Vec<i64>]) -> Result<bool, LatticeError> {
    if basis.is_empty() {
        return Ok(true);
    }
    let m = intmat::to_wide(basis);
    let s = intmat::smith(&m);
    if s.diag.len() < basis.len() || s.diag.contains(&0) {
        return Err(LatticeError::Dependent);
    }
    Ok(s.diag.iter().all(|&d| d == 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors() {
        assert_eq!(GramLattice::u().det(), -1);
        assert_eq!(GramLattice::e(8).det(), 1);
        assert_eq!(GramLattice::a(12).det(), 13);
        assert_eq!(GramLattice::d(4).det(), 4);
        assert_eq!(GramLattice::e(7).det(), -2);
        assert_eq!(GramLattice::m().det().abs(), 16);
        let m = GramLattice::m();
        assert_eq!(m.signature(), Signature { positive: 1, negative: 5, zero: 0 });
        assert_eq!(m.norm(&M_POLARIZATION), 2);
        assert_eq!(m.dot(&M_POLARIZATION, &[1, 0, 0, 0, 0, 0]), 1);
        assert_eq!(GramLattice::t_pqr(2, 3, 8).signature().positive, 1);
    }

    #[test]
    fn divisibility_values() {
        let m = GramLattice::m();
        for i in 1..=5 {
            assert_eq!(m.divisibility(&m_f(i)).unwrap(), 2);
        }
        assert_eq!(m.divisibility(&M_POLARIZATION).unwrap(), 1);
        assert_eq!(GramLattice::u().divisibility(&[1, 0]).unwrap(), 1);
        assert!(m.divisibility(&[0; 6]).is_err());
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive_sublattice(&[vec![1, 0, 0], vec![0, 1, 0]]).unwrap());
        assert!(!is_primitive_sublattice(&[vec![2, 0, 0]]).unwrap());
        assert!(is_primitive_sublattice(&[vec![1, 1], vec![2, 2]]).is_err());
    }
}
