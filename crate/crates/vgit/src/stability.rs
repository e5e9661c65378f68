//! The Hilbert–Mumford function `μᵗ(Ξ, r)` of a configuration, the stability interval
//! it cuts out in slope space, stability thresholds of singular points, and the
//! weighted-order formulas for quasihomogeneous germs.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::monoform::{Configuration, LineVar, MonoError, Monomial, PERMUTATIONS};
use crate::rational::{q, qi, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StabilityError {
    #[error("slope t = {0} is negative")]
    NegativeSlope(Q),
    #[error("normalized weight {0} outside [-1/2, 1]")]
    WeightOutOfRange(Q),
    #[error("weights ({0}, {1}) must be coprime and positive")]
    BadWeights(u64, u64),
    #[error("empty monomial list")]
    Empty,
    #[error("d + t must be non-zero")]
    ZeroDenominator,
    #[error("multiplicity {k} out of range for degree {d}")]
    BadMultiplicity { k: u32, d: u32 },
    #[error(transparent)]
    Mono(#[from] MonoError),
}

/// `r ↦ slope * r + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePiece {
    pub slope: i64,
    pub intercept: i64,
}

impl AffinePiece {
    pub fn of(m: &Monomial) -> Self {
        AffinePiece {
            slope: m.slope(),
            intercept: m.intercept(),
        }
    }

    pub fn value(&self, r: Q) -> Q {
        qi(self.intercept) + qi(self.slope) * r
    }

    /// The `r` where two pieces cross, if they are not parallel.
    pub fn crossing(&self, other: &AffinePiece) -> Option<Q> {
        (self.slope != other.slope)
            .then(|| q(other.intercept - self.intercept, self.slope - other.slope))
    }
}

/// Curve part as affine pieces of its support, line part as its support variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuFunction {
    curve: Vec<AffinePiece>,
    line: LineVar,
}

impl MuFunction {
    pub fn new(cfg: &Configuration) -> Self {
        let mut curve: Vec<AffinePiece> = cfg
            .curve_support()
            .monomials()
            .iter()
            .map(AffinePiece::of)
            .collect();
        curve.sort();
        curve.dedup();
        MuFunction {
            curve,
            line: cfg.line_support(),
        }
    }

    pub fn pieces(&self) -> &[AffinePiece] {
        &self.curve
    }

    pub fn line(&self) -> LineVar {
        self.line
    }

    pub fn curve_value(&self, r: Q) -> Q {
        max_of(&self.curve, r)
    }

    pub fn line_value(&self, r: Q) -> Q {
        self.line.value(r)
    }

    pub fn value(&self, r: Q, t: Q) -> Q {
        self.curve_value(r) + t * self.line_value(r)
    }
}

fn max_of(pieces: &[AffinePiece], r: Q) -> Q {
    pieces
        .iter()
        .map(|p| p.value(r))
        .max()
        .expect("non-empty curve part")
}

fn check_range(r: Q) -> Result<(), StabilityError> {
    if r < q(-1, 2) || r > qi(1) {
        return Err(StabilityError::WeightOutOfRange(r));
    }
    Ok(())
}

fn check_slope(t: Q) -> Result<(), StabilityError> {
    if t < qi(0) {
        return Err(StabilityError::NegativeSlope(t));
    }
    Ok(())
}

/// `μᵗ(Ξ, r)`: curve maximum plus `t` times the line value.
pub fn mu(cfg: &Configuration, r: Q, t: Q) -> Result<Q, StabilityError> {
    check_range(r)?;
    check_slope(t)?;
    Ok(MuFunction::new(cfg).value(r, t))
}

/// Endpoints of `[-1/2, 1]` plus pairwise crossings of curve pieces inside it, sorted.
pub fn critical_r_values(cfg: &Configuration) -> Vec<Q> {
    critical_points(MuFunction::new(cfg).pieces())
}

fn critical_points(pieces: &[AffinePiece]) -> Vec<Q> {
    let lo = q(-1, 2);
    let hi = qi(1);
    let mut rs: BTreeSet<Q> = [lo, hi].into_iter().collect();
    for (i, p) in pieces.iter().enumerate() {
        for o in &pieces[i + 1..] {
            if let Some(r) = p.crossing(o) {
                if r > lo && r < hi {
                    rs.insert(r);
                }
            }
        }
    }
    rs.into_iter().collect()
}

/// Exact minimum of `μᵗ(Ξ, ·)` over `[-1/2, 1]`.
pub fn min_mu_over_r(cfg: &Configuration, t: Q) -> Result<Q, StabilityError> {
    check_slope(t)?;
    let f = MuFunction::new(cfg);
    Ok(critical_points(f.pieces())
        .into_iter()
        .map(|r| f.value(r, t))
        .min()
        .expect("at least two critical values"))
}

/// Upper end of a stability interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UpperBound {
    Finite(Q),
    Unbounded,
}

impl UpperBound {
    fn min(self, other: UpperBound) -> UpperBound {
        match (self, other) {
            (UpperBound::Finite(a), UpperBound::Finite(b)) => UpperBound::Finite(a.min(b)),
            (UpperBound::Finite(a), UpperBound::Unbounded)
            | (UpperBound::Unbounded, UpperBound::Finite(a)) => UpperBound::Finite(a),
            _ => UpperBound::Unbounded,
        }
    }

    pub fn finite(&self) -> Option<Q> {
        match self {
            UpperBound::Finite(x) => Some(*x),
            UpperBound::Unbounded => None,
        }
    }
}

/// The set of slopes `t ≥ 0` at which something is semistable: empty or `[lower, upper]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StabilityInterval {
    Empty,
    Closed { lower: Q, upper: UpperBound },
}

impl StabilityInterval {
    pub fn full() -> Self {
        StabilityInterval::Closed {
            lower: qi(0),
            upper: UpperBound::Unbounded,
        }
    }

    pub fn closed(lower: Q, upper: Q) -> Self {
        if lower > upper {
            StabilityInterval::Empty
        } else {
            StabilityInterval::Closed {
                lower,
                upper: UpperBound::Finite(upper),
            }
        }
    }

    pub fn point(t: Q) -> Self {
        Self::closed(t, t)
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, StabilityInterval::Empty)
    }

    pub fn lower(&self) -> Option<Q> {
        match self {
            StabilityInterval::Closed { lower, .. } => Some(*lower),
            StabilityInterval::Empty => None,
        }
    }

    /// Finite upper endpoint, if any.
    pub fn upper(&self) -> Option<Q> {
        match self {
            StabilityInterval::Closed { upper, .. } => upper.finite(),
            StabilityInterval::Empty => None,
        }
    }

    pub fn contains(&self, t: Q) -> bool {
        match self {
            StabilityInterval::Empty => false,
            StabilityInterval::Closed { lower, upper } => {
                t >= *lower && upper.finite().is_none_or(|u| t <= u)
            }
        }
    }

    pub fn intersect(&self, other: &StabilityInterval) -> StabilityInterval {
        match (self, other) {
            (
                StabilityInterval::Closed { lower: a, upper: b },
                StabilityInterval::Closed { lower: c, upper: d },
            ) => {
                let lower = (*a).max(*c);
                let upper = b.min(*d);
                match upper {
                    UpperBound::Finite(u) if u < lower => StabilityInterval::Empty,
                    _ => StabilityInterval::Closed { lower, upper },
                }
            }
            _ => StabilityInterval::Empty,
        }
    }

    /// `true` when `self ⊆ other`.
    pub fn is_subset_of(&self, other: &StabilityInterval) -> bool {
        self.intersect(other) == *self
    }
}

impl fmt::Display for StabilityInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StabilityInterval::Empty => f.write_str("empty"),
            StabilityInterval::Closed { lower, upper } => match upper {
                UpperBound::Finite(u) => write!(f, "[{lower}, {u}]"),
                UpperBound::Unbounded => write!(f, "[{lower}, inf)"),
            },
        }
    }
}

impl Serialize for StabilityInterval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw {
            empty: bool,
            lower: Option<String>,
            upper: Option<String>,
        }
        let raw = match self {
            StabilityInterval::Empty => Raw {
                empty: true,
                lower: None,
                upper: None,
            },
            StabilityInterval::Closed { lower, upper } => Raw {
                empty: false,
                lower: Some(lower.to_string()),
                upper: upper.finite().map(|u| u.to_string()),
            },
        };
        raw.serialize(s)
    }
}

/// One half-line constraint `A + t B ≥ 0` coming from a critical `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlopeConstraint {
    pub r: Q,
    pub curve: Q,
    pub line: Q,
}

impl SlopeConstraint {
    /// The slope where the constraint becomes tight, when the line value is non-zero.
    pub fn threshold(&self) -> Option<Q> {
        (self.line != qi(0)).then(|| -self.curve / self.line)
    }
}

/// The constraints `μ_d(r) + t μ_1(r) ≥ 0` at every critical `r`.
pub fn slope_constraints(cfg: &Configuration) -> Vec<SlopeConstraint> {
    let f = MuFunction::new(cfg);
    critical_points(f.pieces())
        .into_iter()
        .map(|r| SlopeConstraint {
            r,
            curve: f.curve_value(r),
            line: f.line_value(r),
        })
        .collect()
}

fn interval_from(constraints: &[SlopeConstraint]) -> StabilityInterval {
    let mut acc = StabilityInterval::full();
    for c in constraints {
        let half = if c.line > qi(0) {
            StabilityInterval::Closed {
                lower: (-c.curve / c.line).max(qi(0)),
                upper: UpperBound::Unbounded,
            }
        } else if c.line < qi(0) {
            let u = c.curve / -c.line;
            if u < qi(0) {
                StabilityInterval::Empty
            } else {
                StabilityInterval::closed(qi(0), u)
            }
        } else if c.curve >= qi(0) {
            StabilityInterval::full()
        } else {
            StabilityInterval::Empty
        };
        acc = acc.intersect(&half);
        if acc.is_empty() {
            break;
        }
    }
    acc
}

/// `{t ≥ 0 : min_r μᵗ(Ξ, r) ≥ 0}`.
pub fn interval_for_configuration(cfg: &Configuration) -> StabilityInterval {
    interval_from(&slope_constraints(cfg))
}

/// A curve monomial set together with a coordinate line.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pair {
    pub degree: u32,
    pub curve: BTreeSet<Monomial>,
    pub line: LineVar,
}

impl Pair {
    pub fn new<C: IntoIterator<Item = Monomial>>(curve: C, line: LineVar) -> Result<Self, StabilityError> {
        let curve: BTreeSet<Monomial> = curve.into_iter().collect();
        let degree = curve.iter().next().ok_or(StabilityError::Empty)?.degree();
        Configuration::new(degree, curve.iter().copied(), [line])?;
        Ok(Pair {
            degree,
            curve,
            line,
        })
    }

    pub fn configuration(&self) -> Configuration {
        Configuration::new(self.degree, self.curve.iter().copied(), [self.line])
            .expect("validated on construction")
    }
}

/// Intersection over the six coordinate permutations of the permuted configuration's
/// interval. This is the interval seen by one-parameter subgroups that are diagonal in
/// the given coordinates, so it contains the pair's true interval.
pub fn diagonal_interval(pair: &Pair) -> StabilityInterval {
    let base = pair.configuration();
    PERMUTATIONS
        .iter()
        .map(|p| interval_for_configuration(&base.permuted(*p)))
        .fold(StabilityInterval::full(), |acc, i| acc.intersect(&i))
}

/// `t_p = -min_r μ(Ξ_d, r)` for a curve written in coordinates adapted to `p`.
pub fn stability_threshold(curve: &[Monomial]) -> Result<Q, StabilityError> {
    let s = crate::monoform::support(curve)?;
    let pieces: Vec<AffinePiece> = s.monomials().iter().map(AffinePiece::of).collect();
    let min = critical_points(&pieces)
        .into_iter()
        .map(|r| max_of(&pieces, r))
        .min()
        .expect("non-empty");
    Ok(-min)
}

/// Weights `(w1, w2)` and the exponents `(i, j)` of `x^i y^j` in an affine germ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedOrderInput {
    w1: u64,
    w2: u64,
    monomials: Vec<(u32, u32)>,
}

impl WeightedOrderInput {
    pub fn new(w1: u64, w2: u64, monomials: Vec<(u32, u32)>) -> Result<Self, StabilityError> {
        if w1 == 0 || w2 == 0 || w1.gcd(&w2) != 1 {
            return Err(StabilityError::BadWeights(w1, w2));
        }
        if monomials.is_empty() {
            return Err(StabilityError::Empty);
        }
        Ok(WeightedOrderInput { w1, w2, monomials })
    }

    pub fn weights(&self) -> (u64, u64) {
        (self.w1, self.w2)
    }

    /// `w(f) = min i w1 + j w2`.
    pub fn weighted_order(&self) -> u64 {
        self.monomials
            .iter()
            .map(|&(i, j)| i as u64 * self.w1 + j as u64 * self.w2)
            .min()
            .expect("non-empty")
    }
}

/// `(w1 + w2) / w(f)`.
pub fn lct_quasihomogeneous(input: &WeightedOrderInput) -> Q {
    q((input.w1 + input.w2) as i64, input.weighted_order() as i64)
}

/// `w1 + w2 - 1 - 3 wf / (d + t)`, the discrepancy of the weighted blow-up divisor.
pub fn discrepancy(w1: u64, w2: u64, d: Q, t: Q, wf: Q) -> Result<Q, StabilityError> {
    let denom = d + t;
    if denom == qi(0) {
        return Err(StabilityError::ZeroDenominator);
    }
    Ok(qi((w1 + w2) as i64) - qi(1) - qi(3) * wf / denom)
}

/// Bounds `3k/2 - d ≤ t_p ≤ 3k - d` for a point of multiplicity `k`.
pub fn multiplicity_bounds(k: u32, d: u32) -> Result<(Q, Q), StabilityError> {
    if k < 1 || k > d {
        return Err(StabilityError::BadMultiplicity { k, d });
    }
    let (k, d) = (k as i64, d as i64);
    Ok((q(3 * k, 2) - qi(d), qi(3 * k - d)))
}

/// Upper end of the stability interval in terms of the worst intersection point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BetaBound {
    AtMost(#[serde(with = "crate::rational::serde_q")] Q),
    Exactly(#[serde(with = "crate::rational::serde_q")] Q),
    Between(
        #[serde(with = "crate::rational::serde_q")] Q,
        #[serde(with = "crate::rational::serde_q")] Q,
    ),
}

impl BetaBound {
    pub fn admits(&self, beta: Q) -> bool {
        match *self {
            BetaBound::AtMost(u) => beta <= u,
            BetaBound::Exactly(v) => beta == v,
            BetaBound::Between(l, u) => l <= beta && beta <= u,
        }
    }
}

/// Bound on `β` from the highest intersection multiplicity `k` of `C ∩ L`.
pub fn beta_bounds(k: u32, d: u32, line_component: bool) -> Result<BetaBound, StabilityError> {
    if k > d {
        return Err(StabilityError::BadMultiplicity { k, d });
    }
    let (ki, di) = (k as i64, d as i64);
    if line_component {
        return Ok(BetaBound::AtMost(q(di - 3, 2)));
    }
    if 2 * ki <= di {
        return Ok(BetaBound::Exactly(q(di, 2)));
    }
    let excess = 2 * ki - di;
    Ok(BetaBound::Between(
        q(di, 2) - q(3 * excess, 2),
        q(di, 2) - q(3 * excess, 2 * (2 * ki - 1)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoform::all_monomials;

    fn ms(list: &[&str]) -> Vec<Monomial> {
        list.iter().map(|s| s.parse().unwrap()).collect()
    }

    fn cfg(list: &[&str], line: LineVar) -> Configuration {
        let m = ms(list);
        Configuration::new(m[0].degree(), m, [line]).unwrap()
    }

    #[test]
    fn mu_examples() {
        let c = cfg(&["x0^5"], LineVar::X0);
        assert_eq!(mu(&c, q(1, 3), q(2, 7)).unwrap(), qi(5) + q(2, 7));
        let e8 = cfg(&["x0^2*x2^3", "x1^5"], LineVar::X0);
        assert_eq!(mu(&e8, q(-1, 8), q(5, 8)).unwrap(), qi(0));
        let all = Configuration::new(5, all_monomials(5), [LineVar::X2]).unwrap();
        assert_eq!(mu(&all, qi(1), q(3, 2)).unwrap(), qi(5) - qi(3));
        assert!(mu(&all, qi(2), qi(0)).is_err());
        assert!(mu(&all, qi(0), qi(-1)).is_err());
    }

    #[test]
    fn critical_examples() {
        assert_eq!(critical_r_values(&cfg(&["x0^5"], LineVar::X0)), vec![q(-1, 2), qi(1)]);
        assert_eq!(
            critical_r_values(&cfg(&["x0^2*x2^3", "x1^5"], LineVar::X0)),
            vec![q(-1, 2), q(-1, 8), qi(1)]
        );
        assert_eq!(
            critical_r_values(&cfg(&["x0^4*x2", "x0^2*x1^3"], LineVar::X0)),
            vec![q(-1, 2), q(1, 4), qi(1)]
        );
    }

    #[test]
    fn interval_examples() {
        let all = Configuration::new(5, all_monomials(5), [LineVar::X2]).unwrap();
        assert_eq!(interval_for_configuration(&all), StabilityInterval::closed(qi(0), q(5, 2)));
        let k3 = cfg(&["x0^4*x2", "x0^2*x1^3"], LineVar::X2);
        assert_eq!(interval_for_configuration(&k3), StabilityInterval::closed(qi(0), q(11, 5)));
        let d8 = cfg(&["x0^3*x1*x2", "x0*x1^4"], LineVar::X2);
        assert_eq!(interval_for_configuration(&d8), StabilityInterval::closed(qi(0), q(8, 5)));
    }

    #[test]
    fn diagonal_examples() {
        let e8 = Pair::new(ms(&["x0^2*x2^3", "x1^5"]), LineVar::X0).unwrap();
        assert_eq!(diagonal_interval(&e8), StabilityInterval::point(q(5, 8)));
        let generic = Pair::new(all_monomials(5), LineVar::X2).unwrap();
        assert_eq!(diagonal_interval(&generic), StabilityInterval::closed(qi(0), q(5, 2)));
    }

    #[test]
    fn thresholds() {
        assert_eq!(stability_threshold(&ms(&["x0^2*x2^2", "x1^3*x2"])).unwrap(), q(1, 2));
        assert_eq!(
            stability_threshold(&ms(&["x0^2*x2^2", "x0*x1^2*x2", "x1^4", "x1^2*x2^2"])).unwrap(),
            qi(0)
        );
        assert_eq!(stability_threshold(&ms(&["x0^2*x2^3", "x1^5"])).unwrap(), q(5, 8));
        assert_eq!(stability_threshold(&ms(&["x0*x2^4", "x1^5"])).unwrap(), q(5, 3));
        assert_eq!(stability_threshold(&ms(&["x0*x1*x2^3", "x1^5"])).unwrap(), q(10, 7));
    }

    #[test]
    fn weighted_formulas() {
        let cusp = WeightedOrderInput::new(2, 3, vec![(0, 2), (3, 0)]).unwrap();
        assert_eq!(lct_quasihomogeneous(&cusp), q(5, 6));
        let e8 = WeightedOrderInput::new(3, 5, vec![(0, 3), (5, 0)]).unwrap();
        assert_eq!(lct_quasihomogeneous(&e8), q(8, 15));
        assert_eq!(qi(3) / lct_quasihomogeneous(&e8) - qi(5), q(5, 8));
        let smooth = WeightedOrderInput::new(1, 1, vec![(1, 0)]).unwrap();
        assert_eq!(lct_quasihomogeneous(&smooth), qi(2));
        assert!(WeightedOrderInput::new(2, 4, vec![(1, 0)]).is_err());
        assert!(WeightedOrderInput::new(2, 3, vec![]).is_err());
    }

    #[test]
    fn discrepancy_values() {
        // Node on a cubic at t = 0 sits exactly at -1.
        assert_eq!(discrepancy(1, 1, qi(3), qi(0), qi(2)).unwrap(), qi(-1));
        // Cusp: the value crosses -1 exactly at t = 3/5.
        assert_eq!(discrepancy(2, 3, qi(3), q(3, 5), qi(6)).unwrap(), qi(-1));
        assert!(discrepancy(2, 3, qi(3), q(1, 2), qi(6)).unwrap() < qi(-1));
        assert!(discrepancy(2, 3, qi(3), q(7, 10), qi(6)).unwrap() > qi(-1));
        assert_eq!(discrepancy(4, 7, qi(5), qi(1), qi(0)).unwrap(), qi(10));
        assert!(discrepancy(1, 1, qi(-2), qi(2), qi(1)).is_err());
    }

    #[test]
    fn bounds() {
        assert_eq!(multiplicity_bounds(4, 5).unwrap(), (qi(1), qi(7)));
        assert_eq!(multiplicity_bounds(5, 5).unwrap(), (q(5, 2), qi(10)));
        assert_eq!(multiplicity_bounds(2, 5).unwrap(), (qi(-2), qi(1)));
        assert!(multiplicity_bounds(0, 5).is_err());
        assert_eq!(beta_bounds(3, 5, true).unwrap(), BetaBound::AtMost(qi(1)));
        assert_eq!(beta_bounds(2, 5, false).unwrap(), BetaBound::Exactly(q(5, 2)));
        assert_eq!(beta_bounds(5, 5, false).unwrap(), BetaBound::Between(qi(-5), q(5, 3)));
    }

    #[test]
    fn interval_algebra() {
        let a = StabilityInterval::closed(qi(0), qi(2));
        let b = StabilityInterval::closed(qi(1), qi(3));
        assert_eq!(a.intersect(&b), StabilityInterval::closed(qi(1), qi(2)));
        assert!(StabilityInterval::closed(qi(3), qi(4)).intersect(&a).is_empty());
        assert!(StabilityInterval::closed(qi(2), qi(1)).is_empty());
        assert!(StabilityInterval::closed(qi(1), qi(2)).is_subset_of(&a));
        assert!(!a.is_subset_of(&b));
        assert!(StabilityInterval::Empty.is_subset_of(&a));
    }
}
