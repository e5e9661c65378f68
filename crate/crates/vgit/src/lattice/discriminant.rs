//! Finite quadratic forms and discriminant groups.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::intmat::{self, QBig};
use super::{GramLattice, LatticeError};
use crate::rational::{q, Q};

/// A quadratic form `q: A → Q/2Z` on `A = Π Z/n_i` with bilinear form `b: A × A → Q/Z`.
///
/// Values are stored as integers scaled by `scale`, a common denominator of all
/// `b(g_i, g_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteQuadraticForm {
    orders: Vec<u64>,
    #[serde(with = "crate::rational::serde_q_vec")]
    q_gens: Vec<Q>,
    #[serde(skip)]
    scale: i64,
    #[serde(skip)]
    qn: Vec<i64>,
    #[serde(skip)]
    bn: Vec<Vec<i64>>,
}

pub type Element = Vec<u64>;

fn mod_pos(x: i64, m: i64) -> i64 {
    x.mod_floor(&m)
}

impl FiniteQuadraticForm {
    /// `q_gens[i] = q(g_i)` modulo 2 and `b[i][j] = b(g_i, g_j)` modulo 1.
    pub fn new(orders: Vec<u64>, q_gens: Vec<Q>, b: Vec<Vec<Q>>) -> Self {
        let k = orders.len();
        let mut scale: i64 = 1;
        for x in q_gens.iter().chain(b.iter().flatten()) {
            scale = scale.lcm(x.denom());
        }
        let qn = q_gens
            .iter()
            .map(|x| mod_pos((x * scale).to_integer(), 2 * scale))
            .collect();
        let bn = (0..k)
            .map(|i| (0..k).map(|j| mod_pos((b[i][j] * scale).to_integer(), scale)).collect())
            .collect();
        let q_gens = q_gens
            .iter()
            .map(|x| Q::new(mod_pos((x * scale).to_integer(), 2 * scale), scale))
            .collect();
        FiniteQuadraticForm {
            orders,
            q_gens,
            scale,
            qn,
            bn,
        }
    }

    pub fn trivial() -> Self {
        FiniteQuadraticForm::new(vec![], vec![], vec![])
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn generator_count(&self) -> usize {
        self.orders.len()
    }

    /// Group order `|A|`.
    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn zero(&self) -> Element {
        vec![0; self.orders.len()]
    }

    pub fn generator(&self, i: usize) -> Element {
        let mut e = self.zero();
        e[i] = 1 % self.orders[i];
        e
    }

    /// Mixed-radix decoding of `0..order()`.
    pub fn element(&self, mut index: u64) -> Element {
        self.orders
            .iter()
            .map(|&n| {
                let c = index % n;
                index /= n;
                c
            })
            .collect()
    }

    pub fn index(&self, x: &[u64]) -> u64 {
        let mut idx = 0;
        for (c, n) in x.iter().zip(&self.orders).rev() {
            idx = idx * n + c;
        }
        idx
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Element {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((a, b), n)| (a + b) % n)
            .collect()
    }

    pub fn scale_by(&self, x: &[u64], k: u64) -> Element {
        x.iter().zip(&self.orders).map(|(a, n)| (a * (k % n)) % n).collect()
    }

    pub fn neg(&self, x: &[u64]) -> Element {
        x.iter().zip(&self.orders).map(|(a, n)| (n - a) % n).collect()
    }

    pub fn is_zero(&self, x: &[u64]) -> bool {
        x.iter().all(|&c| c == 0)
    }

    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter()
            .zip(&self.orders)
            .map(|(&c, &n)| n / c.gcd(&n))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// `q(x)·scale` in `[0, 2·scale)`.
    pub fn q_scaled(&self, x: &[u64]) -> i64 {
        let s = self.scale as i128;
        let mut total: i128 = 0;
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            let ci = x[i] as i128;
            total += ci * ci * self.qn[i] as i128;
            for j in i + 1..x.len() {
                if x[j] != 0 {
                    total += 2 * ci * x[j] as i128 * self.bn[i][j] as i128;
                }
            }
        }
        total.rem_euclid(2 * s) as i64
    }

    /// `b(x, y)·scale` in `[0, scale)`.
    pub fn b_scaled(&self, x: &[u64], y: &[u64]) -> i64 {
        let s = self.scale as i128;
        let mut total: i128 = 0;
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            for j in 0..y.len() {
                if y[j] != 0 {
                    total += x[i] as i128 * y[j] as i128 * self.bn[i][j] as i128;
                }
            }
        }
        total.rem_euclid(s) as i64
    }

    pub fn q_value(&self, x: &[u64]) -> Q {
        q(self.q_scaled(x), self.scale)
    }

    pub fn b_value(&self, x: &[u64], y: &[u64]) -> Q {
        q(self.b_scaled(x, y), self.scale)
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn is_isotropic(&self, x: &[u64]) -> bool {
        self.q_scaled(x) == 0
    }

    /// Non-zero elements with `q = 0`, in index order.
    pub fn isotropic_elements(&self) -> Vec<Element> {
        self.elements()
            .filter(|x| !self.is_zero(x) && self.is_isotropic(x))
            .collect()
    }

    /// The form `-q`.
    pub fn negated(&self) -> FiniteQuadraticForm {
        let k = self.orders.len();
        let q_gens = self.q_gens.iter().map(|x| -x).collect();
        let b = (0..k)
            .map(|i| (0..k).map(|j| q(-self.bn[i][j], self.scale)).collect())
            .collect();
        FiniteQuadraticForm::new(self.orders.clone(), q_gens, b)
    }

    pub fn direct_sum(&self, other: &FiniteQuadraticForm) -> FiniteQuadraticForm {
        let (k, l) = (self.orders.len(), other.orders.len());
        let mut orders = self.orders.clone();
        orders.extend(&other.orders);
        let mut qg = self.q_gens.clone();
        qg.extend(&other.q_gens);
        let mut b = vec![vec![Q::zero(); k + l]; k + l];
        for i in 0..k {
            for j in 0..k {
                b[i][j] = q(self.bn[i][j], self.scale);
            }
        }
        for i in 0..l {
            for j in 0..l {
                b[k + i][k + j] = q(other.bn[i][j], other.scale);
            }
        }
        FiniteQuadraticForm::new(orders, qg, b)
    }

    /// Invariant factors `d_1 | d_2 | ...` (all `> 1`) of the underlying group.
    pub fn invariant_factors(&self) -> Vec<u64> {
        invariant_factors(&self.orders)
    }

    /// `l(A)`: the minimal number of generators.
    pub fn length(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Image of `x` under the homomorphism sending generator `i` to `images[i]`.
    pub fn apply(&self, target: &FiniteQuadraticForm, images: &[Element], x: &[u64]) -> Element {
        let mut acc = target.zero();
        for (c, img) in x.iter().zip(images) {
            if *c != 0 {
                acc = target.add(&acc, &target.scale_by(img, *c));
            }
        }
        acc
    }

    /// The subgroup generated by `gens`, as a sorted list of element indices.
    pub fn span(&self, gens: &[Element]) -> Vec<u64> {
        let mut seen: BTreeSet<u64> = BTreeSet::new();
        seen.insert(0);
        let mut frontier = vec![self.zero()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.add(&x, g);
                if seen.insert(self.index(&y)) {
                    frontier.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }
}

/// Invariant factors of `Π Z/n_i`.
pub fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    let mut primes: BTreeSet<u64> = BTreeSet::new();
    for &n in orders {
        let mut m = n;
        let mut p = 2;
        while p * p <= m {
            while m % p == 0 {
                primes.insert(p);
                m /= p;
            }
            p += 1;
        }
        if m > 1 {
            primes.insert(m);
        }
    }
    // Per prime, the sorted prime-power parts; then combine from the top.
    let mut columns: Vec<Vec<u64>> = Vec::new();
    for p in primes {
        let mut parts: Vec<u64> = orders
            .iter()
            .map(|&n| {
                let mut m = n;
                let mut pp = 1;
                while m % p == 0 {
                    m /= p;
                    pp *= p;
                }
                pp
            })
            .filter(|&pp| pp > 1)
            .collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        columns.push(parts);
    }
    let len = columns.iter().map(|c| c.len()).max().unwrap_or(0);
    let mut out: Vec<u64> = (0..len)
        .map(|i| columns.iter().map(|c| c.get(i).copied().unwrap_or(1)).product())
        .collect();
    out.reverse();
    out
}

/// Enumerates isometries `q → q'`, each given by the images of the generators of `q`.
/// Stops after `limit` maps when a limit is given.
pub fn form_isometries(
    source: &FiniteQuadraticForm,
    target: &FiniteQuadraticForm,
    limit: Option<usize>,
) -> Result<Vec<Vec<Element>>, LatticeError> {
    const BUDGET: u64 = 1 << 20;
    if source.order() != target.order() || source.invariant_factors() != target.invariant_factors() {
        return Ok(Vec::new());
    }
    if target.order() > BUDGET {
        return Err(LatticeError::Budget(format!(
            "discriminant group of order {} is too large for brute force",
            target.order()
        )));
    }
    let k = source.generator_count();
    if k == 0 {
        return Ok(vec![Vec::new()]);
    }
    let all: Vec<Element> = target.elements().collect();
    let candidates: Vec<Vec<Element>> = (0..k)
        .map(|i| {
            let g = source.generator(i);
            let order = source.orders()[i];
            let qv = source.q_value(&g);
            all.iter()
                .filter(|y| target.element_order(y) == order && target.q_value(y) == qv)
                .cloned()
                .collect()
        })
        .collect();
    let bvals: Vec<Vec<Q>> = (0..k)
        .map(|i| (0..k).map(|j| source.b_value(&source.generator(i), &source.generator(j))).collect())
        .collect();
    let search = |first: &Element| -> Vec<Vec<Element>> {
        let mut out = Vec::new();
        let mut chosen = vec![first.clone()];
        extend(target, &candidates, &bvals, &mut chosen, &mut out, limit);
        out
    };
    let mut maps: Vec<Vec<Element>> = if limit.is_some() {
        let mut acc = Vec::new();
        for first in &candidates[0] {
            acc.extend(search(first));
            if limit.is_some_and(|l| acc.len() >= l) {
                break;
            }
        }
        acc
    } else {
        candidates[0].par_iter().flat_map(search).collect()
    };
    if let Some(l) = limit {
        maps.truncate(l);
    }
    Ok(maps)
}

fn extend(
    target: &FiniteQuadraticForm,
    candidates: &[Vec<Element>],
    bvals: &[Vec<Q>],
    chosen: &mut Vec<Element>,
    out: &mut Vec<Vec<Element>>,
    limit: Option<usize>,
) {
    if limit.is_some_and(|l| out.len() >= l) {
        return;
    }
    let i = chosen.len();
    if i == candidates.len() {
        if target.span(chosen).len() as u64 == target.order() {
            out.push(chosen.clone());
        }
        return;
    }
    for y in &candidates[i] {
        if (0..i).all(|j| target.b_value(y, &chosen[j]) == bvals[i][j]) {
            chosen.push(y.clone());
            extend(target, candidates, bvals, chosen, out, limit);
            chosen.pop();
        }
    }
}

pub fn is_isometric(a: &FiniteQuadraticForm, b: &FiniteQuadraticForm) -> Result<bool, LatticeError> {
    Ok(!form_isometries(a, b, Some(1))?.is_empty())
}

/// The discriminant group of a lattice together with lifts of its generators to `L*`.
#[derive(Debug, Clone, Serialize)]
pub struct DiscriminantGroup {
    pub form: FiniteQuadraticForm,
    /// Generator lifts in the coordinates of `L ⊗ Q`.
    #[serde(skip)]
    pub lifts: Vec<Vec<QBig>>,
    /// Per generator, the functional on `G x` reading off its coordinate.
    #[serde(skip)]
    functionals: Vec<Vec<i128>>,
    #[serde(skip)]
    rank: usize,
}

impl DiscriminantGroup {
    pub fn lift(&self, x: &[u64]) -> Vec<QBig> {
        let mut v = vec![QBig::zero(); self.rank];
        for (c, l) in x.iter().zip(&self.lifts) {
            if *c != 0 {
                for (vi, li) in v.iter_mut().zip(l) {
                    *vi += li * QBig::from_integer(*c as i128);
                }
            }
        }
        v
    }

    /// Class in `L*/L` of a dual vector given in `L ⊗ Q` coordinates.
    pub fn class_of(&self, lattice: &GramLattice, x: &[QBig]) -> Option<Element> {
        let gx: Vec<QBig> = lattice
            .gram()
            .iter()
            .map(|row| row.iter().zip(x).map(|(g, v)| v * QBig::from_integer(*g as i128)).sum())
            .collect();
        if !gx.iter().all(|v| v.is_integer()) {
            return None;
        }
        let z: Vec<i128> = gx.iter().map(|v| v.to_integer()).collect();
        Some(
            self.functionals
                .iter()
                .zip(self.form.orders())
                .map(|(f, &n)| {
                    let s: i128 = f.iter().zip(&z).map(|(a, b)| a * b).sum();
                    s.rem_euclid(n as i128) as u64
                })
                .collect(),
        )
    }
}

fn is_block_diagonal(l: &GramLattice) -> bool {
    let blocks = l.blocks();
    let owner = |i: usize| blocks.iter().position(|b| i >= b.offset && i < b.offset + b.rank);
    let n = l.rank();
    if blocks.iter().map(|b| b.rank).sum::<usize>() != n {
        return false;
    }
    (0..n).all(|i| (0..n).all(|j| l.entry(i, j) == 0 || owner(i) == owner(j)))
}

/// `A_L = L*/L` with its quadratic form, computed blockwise by Smith normal form.
pub fn discriminant_form(l: &GramLattice) -> Result<DiscriminantGroup, LatticeError> {
    if l.is_degenerate() {
        return Err(LatticeError::Degenerate);
    }
    let n = l.rank();
    let ranges: Vec<(usize, usize)> = if is_block_diagonal(l) {
        l.blocks().iter().map(|b| (b.offset, b.rank)).collect()
    } else {
        vec![(0, n)]
    };
    let mut orders = Vec::new();
    let mut lifts: Vec<Vec<QBig>> = Vec::new();
    let mut functionals = Vec::new();
    for (off, r) in ranges {
        let sub: Vec<Vec<i128>> = (off..off + r)
            .map(|i| (off..off + r).map(|j| l.entry(i, j) as i128).collect())
            .collect();
        let s = intmat::smith(&sub);
        for (k, &d) in s.diag.iter().enumerate() {
            if d == 1 {
                continue;
            }
            if d == 0 {
                return Err(LatticeError::Degenerate);
            }
            orders.push(d as u64);
            let mut lift = vec![QBig::zero(); n];
            for i in 0..r {
                lift[off + i] = QBig::new(s.v[i][k], d);
            }
            lifts.push(lift);
            let mut f = vec![0i128; n];
            f[off..off + r].copy_from_slice(&s.u[k]);
            functionals.push(f);
        }
    }
    let k = orders.len();
    let to_q = |x: QBig| Q::new(*x.numer() as i64, *x.denom() as i64);
    let q_gens = (0..k).map(|i| to_q(l.dot_q(&lifts[i], &lifts[i]))).collect();
    let b = (0..k)
        .map(|i| (0..k).map(|j| to_q(l.dot_q(&lifts[i], &lifts[j]))).collect())
        .collect();
    Ok(DiscriminantGroup {
        form: FiniteQuadraticForm::new(orders, q_gens, b),
        lifts,
        functionals,
        rank: n,
    })
}

/// Orbits of `O(q)` on a set of elements, each orbit sorted by index.
pub fn orbits(form: &FiniteQuadraticForm, autos: &[Vec<Element>], elements: &[Element]) -> Vec<Vec<Element>> {
    let mut seen: BTreeSet<u64> = BTreeSet::new();
    let mut out = Vec::new();
    let mut sorted: Vec<Element> = elements.to_vec();
    sorted.sort_by_key(|x| form.index(x));
    for x in sorted {
        if seen.contains(&form.index(&x)) {
            continue;
        }
        let mut orbit: BTreeSet<u64> = BTreeSet::new();
        for a in autos {
            orbit.insert(form.index(&form.apply(form, a, &x)));
        }
        orbit.insert(form.index(&x));
        seen.extend(orbit.iter().copied());
        out.push(orbit.into_iter().map(|i| form.element(i)).collect());
    }
    out
}
