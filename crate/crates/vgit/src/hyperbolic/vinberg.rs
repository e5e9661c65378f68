//! Vinberg's algorithm for the reflection group of a hyperbolic lattice.

use num_integer::Integer;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use super::diagram::{stop_condition, CoxeterDiagram, MAX_NODES};
use super::HyperbolicError;
use crate::lattice::intmat::{self, QBig};
use crate::lattice::reduce::Enumerator;
use crate::lattice::GramLattice;

/// Root norms tried, as positive integers `k` meaning `δ² = -k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormMenu(pub Vec<i64>);

impl Default for NormMenu {
    /// `-2` roots and `-4` roots of divisibility 2.
    fn default() -> Self {
        NormMenu(vec![2, 4])
    }
}

impl NormMenu {
    pub fn minus_two() -> Self {
        NormMenu(vec![2])
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct VinbergBudget {
    pub max_roots: usize,
    /// Largest `|δ·h|` examined.
    pub max_height: i64,
}

impl Default for VinbergBudget {
    fn default() -> Self {
        VinbergBudget {
            max_roots: 64,
            max_height: 64,
        }
    }
}

/// State of a run: the accepted roots and how far the search has gone.
#[derive(Debug, Clone, Serialize)]
pub struct VinbergState {
    pub h: Vec<i64>,
    pub menu: NormMenu,
    pub roots: Vec<Vec<i64>>,
    /// Largest distance key `(δ·h)² / |δ²|` fully examined, as `(numerator, denominator)`.
    pub radius: (i64, i64),
    pub shells: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VinbergRun {
    pub state: VinbergState,
    pub diagram: CoxeterDiagram,
    /// True iff the stop condition was reached; false means the budget ran out.
    pub stopped: bool,
}

/// Integer `w` with `w · h = Div(h)`.
fn unit_partner(l: &GramLattice, h: &[i64]) -> (Vec<i64>, i64) {
    let p = l.pairings(h);
    let mut w = vec![0i64; p.len()];
    let mut g = 0i64;
    for (i, &pi) in p.iter().enumerate() {
        if pi == 0 {
            continue;
        }
        // g' = a g + b p_i.
        let e = g.extended_gcd(&pi);
        for x in w.iter_mut() {
            *x *= e.x;
        }
        w[i] += e.y;
        g = e.gcd;
    }
    if g < 0 {
        g = -g;
        for x in w.iter_mut() {
            *x = -*x;
        }
    }
    (w, g)
}

fn is_reflective(l: &GramLattice, delta: &[i64], k: i64) -> bool {
    if intmat::gcd_all(&delta.iter().map(|&x| i128::from(x)).collect::<Vec<_>>()) != 1 {
        return false;
    }
    match l.divisibility(delta) {
        Ok(div) => div % (k / 2) == 0,
        Err(_) => false,
    }
}

struct Search<'a> {
    l: &'a GramLattice,
    h: Vec<i64>,
    h2: i64,
    complement: Vec<Vec<i64>>,
    complement_q: Vec<Vec<QBig>>,
    enumerator: Option<Enumerator>,
    partner: Vec<i64>,
}

impl Search<'_> {
    fn combine(&self, y: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.l.rank()];
        for (c, b) in y.iter().zip(&self.complement) {
            if *c != 0 {
                for (o, x) in out.iter_mut().zip(b) {
                    *o += c * x;
                }
            }
        }
        out
    }

    /// Reflective roots with `δ·h = -height` and `δ² = -k`.
    fn shell(&self, height: i64, k: i64, div_h: i64) -> Vec<Vec<i64>> {
        let Some(en) = &self.enumerator else {
            return Vec::new();
        };
        let scale = height / div_h;
        let x0: Vec<i64> = self.partner.iter().map(|&x| -x * scale).collect();
        // Component of x0 orthogonal to h, in coordinates of the complement.
        let t = QBig::new(i128::from(-height), i128::from(self.h2));
        let perp: Vec<QBig> = x0
            .iter()
            .zip(&self.h)
            .map(|(&x, &hv)| QBig::from_integer(i128::from(x)) - t * QBig::from_integer(i128::from(hv)))
            .collect();
        let c = intmat::solve_left(&self.complement_q, &perp).expect("x0 - t h lies in h-perp");
        let centre: Vec<QBig> = c.iter().map(|v| -v).collect();
        let value = QBig::from_integer(i128::from(k)) + t * t * QBig::from_integer(i128::from(self.h2));
        if value.is_negative() {
            return Vec::new();
        }
        en.exactly(&centre, value)
            .into_iter()
            .map(|y| {
                let kappa = self.combine(&y);
                x0.iter().zip(&kappa).map(|(a, b)| a + b).collect::<Vec<i64>>()
            })
            .filter(|d| is_reflective(self.l, d, k))
            .collect()
    }
}

/// Runs the algorithm from the base vector `h`.
pub fn vinberg(l: &GramLattice, h: &[i64], menu: &NormMenu, budget: &VinbergBudget) -> Result<VinbergRun, HyperbolicError> {
    if !l.is_hyperbolic() {
        return Err(HyperbolicError::NotHyperbolic);
    }
    if h.len() != l.rank() {
        return Err(HyperbolicError::Lattice(crate::lattice::LatticeError::Length {
            got: h.len(),
            want: l.rank(),
        }));
    }
    let h2 = l.norm(h);
    if h2 <= 0 {
        return Err(HyperbolicError::BaseNotPositive(h2));
    }
    let n = l.rank();
    let target_rank = n - 2;
    let mut state = VinbergState {
        h: h.to_vec(),
        menu: menu.clone(),
        roots: Vec::new(),
        radius: (0, 1),
        shells: 0,
    };
    let finish = |state: VinbergState, stopped: bool| {
        let diagram = CoxeterDiagram::from_roots(l, &state.roots);
        Ok(VinbergRun { state, diagram, stopped })
    };
    let norms: Vec<i64> = menu.0.iter().copied().filter(|&k| k > 0 && k % 2 == 0).collect();
    if norms.is_empty() {
        return finish(state, false);
    }

    let complement = l.orthogonal_complement(&[h.to_vec()]);
    let sub = l.sublattice(&complement)?;
    let neg: Vec<Vec<i64>> = sub.gram().iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    let enumerator = if neg.is_empty() { None } else { Some(Enumerator::new(&neg)?) };
    let (partner, div_h) = unit_partner(l, h);
    let search = Search {
        l,
        h: h.to_vec(),
        h2,
        complement_q: complement
            .iter()
            .map(|r| r.iter().map(|&x| QBig::from_integer(i128::from(x))).collect())
            .collect(),
        complement,
        enumerator,
        partner,
    };

    // Roots orthogonal to h: simple roots of a finite root system, found greedily in
    // increasing order of a generic functional.
    let mut zero: Vec<Vec<i64>> = norms.par_iter().flat_map(|&k| search.shell(0, k, div_h)).collect();
    let functional = generic_functional(&zero, n);
    zero.retain(|d| dot_plain(&functional, d) > 0);
    zero.sort_by(|a, b| dot_plain(&functional, a).cmp(&dot_plain(&functional, b)).then(a.cmp(b)));
    for d in zero {
        accept(l, &mut state.roots, d);
    }
    state.shells = 1;

    // Remaining shells by distance key height² / k.
    let mut keys: Vec<(i64, i64)> = Vec::new();
    let mut height = div_h;
    while height <= budget.max_height {
        for &k in &norms {
            keys.push((height, k));
        }
        height += div_h;
    }
    keys.sort_by(|a, b| {
        let lhs = i128::from(a.0 * a.0) * i128::from(b.1);
        let rhs = i128::from(b.0 * b.0) * i128::from(a.1);
        lhs.cmp(&rhs).then(a.1.cmp(&b.1))
    });
    let mut i = 0;
    while i < keys.len() {
        let mut j = i;
        while j < keys.len() && i128::from(keys[j].0 * keys[j].0) * i128::from(keys[i].1) == i128::from(keys[i].0 * keys[i].0) * i128::from(keys[j].1) {
            j += 1;
        }
        let mut batch: Vec<Vec<i64>> = keys[i..j]
            .par_iter()
            .flat_map(|&(height, k)| search.shell(height, k, div_h))
            .collect();
        batch.sort();
        let before = state.roots.len();
        for d in batch {
            accept(l, &mut state.roots, d);
            if state.roots.len() > budget.max_roots.min(MAX_NODES) {
                state.roots.pop();
                return finish(state, false);
            }
        }
        state.shells += 1;
        let g = keys[i].0.gcd(&keys[i].1);
        state.radius = (keys[i].0 * keys[i].0 / g, keys[i].1 / g);
        if state.roots.len() > before && stop_condition(&CoxeterDiagram::from_roots(l, &state.roots), target_rank) {
            return finish(state, true);
        }
        i = j;
    }
    finish(state, false)
}

fn accept(l: &GramLattice, roots: &mut Vec<Vec<i64>>, d: Vec<i64>) {
    if roots.iter().all(|r| l.dot(r, &d) >= 0) {
        roots.push(d);
    }
}

fn dot_plain(f: &[i64], x: &[i64]) -> i128 {
    f.iter().zip(x).map(|(a, b)| i128::from(*a) * i128::from(*b)).sum()
}

fn generic_functional(vectors: &[Vec<i64>], n: usize) -> Vec<i64> {
    let mut seed: i64 = 1;
    loop {
        let f: Vec<i64> = (0..n as i64).map(|i| 1 + seed * (i + 1) + (i * i * 7919 + seed) % 104_729).collect();
        if vectors.iter().all(|v| dot_plain(&f, v) != 0) {
            return f;
        }
        seed += 1;
    }
}

/// Moves `v` into the chamber `{x : x·δ ≤ 0}` of the accepted roots by reflections,
/// which must not increase `v·h`. Returns `None` if more than `limit` steps are needed.
pub fn reduce_to_chamber(l: &GramLattice, roots: &[Vec<i64>], v: &[i64], limit: usize) -> Option<Vec<i64>> {
    let mut v = v.to_vec();
    for _ in 0..limit {
        let Some(d) = roots.iter().find(|d| l.dot(&v, d) > 0) else {
            return Some(v);
        };
        // v - 2 (v·δ)/δ² δ, integral for reflective roots.
        let num = 2 * l.dot(&v, d);
        let den = -l.norm(d);
        debug_assert!(num % den == 0);
        let c = num / den;
        for (x, y) in v.iter_mut().zip(d) {
            *x += c * y;
        }
    }
    None
}

/// `true` iff every pair of roots pairs non-negatively.
pub fn pairwise_nonnegative(l: &GramLattice, roots: &[Vec<i64>]) -> bool {
    roots
        .iter()
        .enumerate()
        .all(|(i, a)| roots[i + 1..].iter().all(|b| l.dot(a, b) >= 0))
}

/// The polarization class `h` of `M` placed in a lattice with a summand `M`, or with
/// summands `D4` and `U(2)` identified with `M` through the basis
/// `e_1, l', e_2, e_3, h - e_4, h - e_5`.
pub fn default_base_vector(l: &GramLattice) -> Option<Vec<i64>> {
    let mut h = vec![0i64; l.rank()];
    let blocks = l.blocks();
    if let Some(m) = blocks.iter().find(|b| b.name == "M") {
        h[m.offset..m.offset + 6].copy_from_slice(&crate::lattice::M_POLARIZATION);
        return Some(h);
    }
    let d4 = blocks.iter().find(|b| b.name == "D4")?;
    let u2 = blocks.iter().find(|b| b.name == "U(2)")?;
    h[d4.offset..d4.offset + 4].copy_from_slice(&[-1, -2, -1, -1]);
    h[u2.offset..u2.offset + 2].copy_from_slice(&[1, 1]);
    Some(h)
}
