//! Walls in slope space for degree-`d` pairs, and the built-in degree-5 verification
//! tables.
//!
//! The outcome of the numerical criterion only depends on supports, so it is enough
//! to walk the antichains of the dominance poset (times the three possible line
//! supports). For each of them the stability interval is a finite intersection of
//! half-lines; their endpoints are the candidate walls.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::monoform::{all_monomials, dominates, parse_monomials, support, Configuration, LineVar, Monomial};
use crate::rational::{q, qi, Q};
use crate::stability::{
    critical_r_values, diagonal_interval, interval_for_configuration, slope_constraints,
    stability_threshold, MuFunction, Pair, StabilityInterval,
};

/// Largest degree the antichain walk accepts (masks are 128 bits wide).
pub const MAX_DEGREE: u32 = 14;

/// All non-empty antichains of the degree-`d` dominance poset, in a fixed order.
///
/// Monomials are visited in a linear extension of the order (by `⟨m,1⟩`, then by
/// `⟨m,-1/2⟩`); a monomial may join the current antichain when it is incomparable with
/// everything already chosen.
pub fn curve_antichains(d: u32) -> Vec<Vec<Monomial>> {
    assert!((1..=MAX_DEGREE).contains(&d), "degree {d} out of range");
    let mut mons = all_monomials(d);
    mons.sort_by_key(|m| (std::cmp::Reverse(m.at_one()), std::cmp::Reverse(m.twice_at_minus_half())));
    let n = mons.len();
    let comparable: Vec<u128> = (0..n)
        .map(|i| {
            (0..n).fold(0u128, |acc, j| {
                let c = dominates(&mons[i], &mons[j]).unwrap() || dominates(&mons[j], &mons[i]).unwrap();
                if c {
                    acc | (1 << j)
                } else {
                    acc
                }
            })
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    walk(0, 0, &mons, &comparable, &mut chosen, &mut out);
    out
}

fn walk(
    i: usize,
    blocked: u128,
    mons: &[Monomial],
    comparable: &[u128],
    chosen: &mut Vec<Monomial>,
    out: &mut Vec<Vec<Monomial>>,
) {
    if i == mons.len() {
        if !chosen.is_empty() {
            let mut a = chosen.clone();
            a.sort();
            out.push(a);
        }
        return;
    }
    if blocked & (1 << i) == 0 {
        chosen.push(mons[i]);
        walk(i + 1, blocked | comparable[i], mons, comparable, chosen, out);
        chosen.pop();
    }
    walk(i + 1, blocked, mons, comparable, chosen, out);
}

/// Every curve antichain paired with every line support.
pub fn enumerate_supports(d: u32) -> Vec<Configuration> {
    let curves = curve_antichains(d);
    LineVar::ALL
        .iter()
        .flat_map(|l| {
            curves
                .iter()
                .map(move |c| Configuration::new(d, c.iter().copied(), [*l]).expect("valid support"))
        })
        .collect()
}

/// Which side of a wall the witness becomes unstable on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Below,
    Above,
    /// `t = 0` is the start of the slope range; no constraint needs to be tight there.
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub curve: Vec<String>,
    pub line: LineVar,
    pub side: Side,
    #[serde(skip)]
    pub configuration: Option<Configuration>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Wall {
    #[serde(with = "crate::rational::serde_q")]
    pub t: Q,
    pub witness: Witness,
    #[serde(with = "crate::rational::serde_q")]
    pub r: Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurplusSlope {
    #[serde(with = "crate::rational::serde_q")]
    pub t: Q,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WallStats {
    pub curve_antichains: usize,
    pub supports: usize,
    pub non_empty_intervals: usize,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WallReport {
    pub d: u32,
    #[serde(with = "crate::rational::serde_q_vec")]
    pub raw: Vec<Q>,
    pub realized: Vec<Wall>,
    pub surplus: Vec<SurplusSlope>,
    pub stats: WallStats,
}

impl WallReport {
    pub fn realized_slopes(&self) -> Vec<Q> {
        self.realized.iter().map(|w| w.t).collect()
    }
}

struct Finding {
    raw: BTreeSet<Q>,
    realized: Vec<(Q, Q, Side)>,
    non_empty: bool,
}

fn examine(cfg: &Configuration, cap: Q) -> Finding {
    let constraints = slope_constraints(cfg);
    let in_range = |t: &Q| *t >= qi(0) && *t <= cap;
    let raw = constraints
        .iter()
        .filter_map(|c| c.threshold())
        .filter(in_range)
        .collect();
    let interval = interval_for_configuration(cfg);
    let mut realized = Vec::new();
    if let StabilityInterval::Closed { lower, upper } = interval {
        let binding = |t: Q, positive: bool| {
            constraints.iter().find(|c| {
                c.threshold() == Some(t) && if positive { c.line > qi(0) } else { c.line < qi(0) }
            })
        };
        if let Some(c) = binding(lower, true) {
            if in_range(&lower) {
                realized.push((lower, c.r, Side::Below));
            }
        } else if lower == qi(0) {
            let f = MuFunction::new(cfg);
            let r = critical_r_values(cfg)
                .into_iter()
                .min_by_key(|r| f.value(*r, qi(0)))
                .unwrap_or(qi(1));
            realized.push((lower, r, Side::Boundary));
        }
        if let Some(u) = upper.finite() {
            if let Some(c) = binding(u, false) {
                if in_range(&u) {
                    realized.push((u, c.r, Side::Above));
                }
            }
        }
    }
    Finding {
        raw,
        realized,
        non_empty: !interval.is_empty(),
    }
}

/// Candidate and realized walls for degree `d`.
///
/// `raw` holds every slope in `[0, d/2]` at which `μᵗ(Ξ, r_i)` vanishes for some support
/// and critical `r_i`. A slope is realized when it is an endpoint of a non-empty
/// interval and a critical `r` is tight there, so that the configuration is unstable
/// just across it.
pub fn candidate_walls(d: u32) -> WallReport {
    let start = Instant::now();
    let cap = q(d as i64, 2);
    let supports = enumerate_supports(d);
    let findings: Vec<Finding> = supports.par_iter().map(|c| examine(c, cap)).collect();

    let mut raw = BTreeSet::new();
    let mut first: BTreeMap<Q, (usize, Q, Side)> = BTreeMap::new();
    let mut non_empty = 0;
    for (idx, f) in findings.into_iter().enumerate() {
        raw.extend(f.raw.iter().copied());
        non_empty += f.non_empty as usize;
        for (t, r, side) in f.realized {
            raw.insert(t);
            let slot = first.entry(t).or_insert((idx, r, side));
            if slot.2 == Side::Boundary && side != Side::Boundary {
                *slot = (idx, r, side);
            }
        }
    }
    let realized: Vec<Wall> = first
        .iter()
        .map(|(t, (idx, r, side))| {
            let cfg = &supports[*idx];
            Wall {
                t: *t,
                r: *r,
                witness: Witness {
                    curve: cfg.curve().iter().map(|m| m.to_string()).collect(),
                    line: cfg.line_support(),
                    side: *side,
                    configuration: Some(cfg.clone()),
                },
            }
        })
        .collect();
    let surplus = raw
        .iter()
        .filter(|t| !first.contains_key(t))
        .map(|t| SurplusSlope {
            t: *t,
            note: "μᵗ vanishes at a critical r for some support, but t is never a tight \
                   endpoint of a non-empty stability interval"
                .to_string(),
        })
        .collect();
    WallReport {
        d,
        raw: raw.into_iter().collect(),
        realized,
        surplus,
        stats: WallStats {
            curve_antichains: supports.len() / 3,
            supports: supports.len(),
            non_empty_intervals: non_empty,
            elapsed_ms: start.elapsed().as_millis(),
        },
    }
}

/// A row of the table of closed orbits with `C*`-stabilizer at the degree-5 walls.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalOrbitRow {
    #[serde(with = "crate::rational::serde_q")]
    pub t: Q,
    pub equation: String,
    pub singularity: String,
    /// Set when the printed equation is known not to belong to this row.
    pub replaced_equation: Option<String>,
}

/// The degree-5 minimal orbits, as printed, except for the `13/7` row whose printed
/// equation duplicates the `8/5` row; that row carries the `W13` normal form whose
/// stabilizer balances at `13/7`.
pub fn minimal_orbit_rows() -> Vec<MinimalOrbitRow> {
    let rows: [(i64, i64, &str, &str, Option<&str>); 11] = [
        (1, 7, "x0^2*x2^3 + x0*x1^4", "E6", None),
        (1, 4, "x0^2*x1*x2^2 + x1^4*x2", "D8'", None),
        (2, 5, "x0*x1^3*x2 + x0^2*x2^3", "E7", None),
        (5, 8, "x0^2*x2^3 + x1^5", "E8", None),
        (10, 7, "x0*x1*x2^3 + x1^5", "Z11", None),
        (8, 5, "x0*x1*x2^3 + x1^4*x2", "Z12", None),
        (5, 3, "x0*x2^4 + x1^5", "W12", None),
        (7, 4, "x0^2*x2^3 + x1^3*x2^2", "double line", None),
        (13, 7, "x0*x2^4 + x1^4*x2", "W13", Some("x0*x1*x2^3 + x1^4*x2")),
        (2, 1, "x0*x1*x2^3 + x1^3*x2^2", "double line", None),
        (11, 5, "x0*x2^4 + x1^3*x2^2", "double line", None),
    ];
    rows.iter()
        .map(|&(n, dn, eq, sing, printed)| MinimalOrbitRow {
            t: q(n, dn),
            equation: eq.to_string(),
            singularity: sing.to_string(),
            replaced_equation: printed.map(str::to_string),
        })
        .collect()
}

/// Integer weights `(r0, r1, r2)`, summing to zero, under which all curve monomials
/// have the same weight. `None` unless the solution space is a single line.
pub fn stabilizer_weights(curve: &[Monomial]) -> Option<([i64; 3], i64)> {
    let first = curve.first()?;
    let f = first.exponents();
    let mut rows: Vec<[i64; 3]> = curve
        .iter()
        .skip(1)
        .map(|m| {
            let e = m.exponents();
            [e[0] as i64 - f[0] as i64, e[1] as i64 - f[1] as i64, e[2] as i64 - f[2] as i64]
        })
        .collect();
    rows.push([1, 1, 1]);
    // Every cross product of two independent rows spans the kernel when it is 1-dimensional.
    let mut kernel: Option<[i64; 3]> = None;
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let (a, b) = (rows[i], rows[j]);
            let c = [
                a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0],
            ];
            if c != [0, 0, 0] {
                kernel = Some(c);
                break;
            }
        }
        if kernel.is_some() {
            break;
        }
    }
    let mut w = kernel?;
    if rows.iter().any(|r| r[0] * w[0] + r[1] * w[1] + r[2] * w[2] != 0) {
        return None;
    }
    let g = w.iter().fold(0i64, |g, x| num_integer::gcd(g, *x));
    for x in w.iter_mut() {
        *x /= g;
    }
    let weight = f[0] as i64 * w[0] + f[1] as i64 * w[1] + f[2] as i64 * w[2];
    Some((w, weight))
}

/// The coordinate line `x_i` whose stabilizer weight balances the curve at slope `t`,
/// i.e. `w_C + t r_i = 0` for one of the two signs of the stabilizer.
pub fn eigenline(curve: &[Monomial], t: Q) -> Option<LineVar> {
    let (w, wc) = stabilizer_weights(curve)?;
    LineVar::ALL
        .iter()
        .copied()
        .find(|l| qi(wc) + t * qi(w[l.index()]) == qi(0))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalOrbitCheck {
    #[serde(with = "crate::rational::serde_q")]
    pub t: Q,
    pub equation: String,
    pub singularity: String,
    pub line: Option<LineVar>,
    pub interval: StabilityInterval,
    pub passed: bool,
    pub note: Option<String>,
}

/// Checks that each minimal-orbit row is semistable for exactly one slope, its own.
pub fn verify_minimal_orbits() -> Vec<MinimalOrbitCheck> {
    let mut out = Vec::new();
    for row in minimal_orbit_rows() {
        let curve = parse_monomials(&row.equation).expect("built-in equation");
        let line = eigenline(&curve, row.t);
        let interval = match line {
            Some(l) => diagonal_interval(&Pair::new(curve.iter().copied(), l).expect("pair")),
            None => StabilityInterval::Empty,
        };
        let note = row.replaced_equation.as_ref().map(|printed| {
            let pc = parse_monomials(printed).expect("printed equation");
            let balances: Vec<String> = stabilizer_weights(&pc)
                .map(|(w, wc)| {
                    w.iter()
                        .enumerate()
                        .filter(|(_, r)| **r != 0 && qi(-wc) / qi(**r) > qi(0))
                        .map(|(i, r)| format!("t = {} with line x{i}", qi(-wc) / qi(*r)))
                        .collect()
                })
                .unwrap_or_default();
            format!(
                "printed equation {printed} duplicates another row; its stabilizer balances only at {}; \
                 checked with the W13 normal form instead",
                balances.join(", ")
            )
        });
        out.push(MinimalOrbitCheck {
            t: row.t,
            passed: interval == StabilityInterval::point(row.t),
            equation: row.equation,
            singularity: row.singularity,
            line,
            interval,
            note,
        });
    }
    out
}

/// Which end of the interval a table row records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Endpoint {
    Alpha,
    Beta,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRowCheck {
    pub table: String,
    pub row: String,
    pub endpoint: Endpoint,
    #[serde(with = "crate::rational::serde_q")]
    pub expected: Q,
    pub computed: Option<String>,
    pub curve: Vec<String>,
    pub line: LineVar,
    pub derivation: String,
    pub passed: bool,
}

/// Degree-5 monomials surviving a list of vanishing conditions, i.e. the configuration of
/// a general curve subject to those conditions.
fn generic_quintic(vanish: impl Fn(u32, u32, u32) -> bool) -> Vec<Monomial> {
    all_monomials(5)
        .into_iter()
        .filter(|m| {
            let [a, b, c] = m.exponents();
            !vanish(a, b, c)
        })
        .collect()
}

/// Multiplies a monomial set by `x2^k` (a multiple line component `x2 = 0`).
fn times_x2(ms: Vec<Monomial>, k: u32) -> Vec<Monomial> {
    ms.into_iter()
        .map(|m| {
            let [a, b, c] = m.exponents();
            Monomial::new(a, b, c + k)
        })
        .collect()
}

fn generic_of_degree(d: u32, vanish: impl Fn(u32, u32, u32) -> bool) -> Vec<Monomial> {
    all_monomials(d)
        .into_iter()
        .filter(|m| {
            let [a, b, c] = m.exponents();
            !vanish(a, b, c)
        })
        .collect()
}

struct Representative {
    table: &'static str,
    row: &'static str,
    endpoint: Endpoint,
    expected: Q,
    curve: Vec<Monomial>,
    line: LineVar,
    derivation: &'static str,
}

/// Order of vanishing at `p = (1:0:0)` of `x0^a x1^b x2^c`.
fn ord(a: u32, d: u32) -> u32 {
    d - a
}

#[allow(clippy::vec_init_then_push)]
fn representatives() -> Vec<Representative> {
    let mut v = Vec::new();
    // Non-reduced quintics 2D + R; α is the threshold at the worst point, read with line x0.
    v.push(Representative {
        table: "non-reduced quintics",
        row: "D smooth conic, R secant",
        endpoint: Endpoint::Alpha,
        expected: qi(0),
        curve: parse_monomials("x0^2*x1*x2^2 - 2*x0*x1^3*x2 + x1^5").unwrap(),
        line: LineVar::X0,
        derivation: "C = x1 (x0 x2 - x1^2)^2 expanded; p = (1:0:0) lies on the conic and the secant x1 = 0",
    });
    v.push(Representative {
        table: "non-reduced quintics",
        row: "D smooth conic, R tangent",
        endpoint: Endpoint::Alpha,
        expected: qi(1),
        curve: parse_monomials("x0^2*x2^3 + x0*x1^2*x2^2 + x1^4*x2").unwrap(),
        line: LineVar::X0,
        derivation: "C = x2 (x0 x2 - x1^2)^2, the tangent line x2 = 0 at p = (1:0:0)",
    });
    // D = (x2 = 0), C = x2^2 R with R a cubic.
    v.push(Representative {
        table: "non-reduced quintics",
        row: "D line, |D ∩ R| ≥ 2",
        endpoint: Endpoint::Alpha,
        expected: qi(1),
        curve: times_x2(generic_of_degree(3, |a, _, _| a == 3), 2),
        line: LineVar::X0,
        derivation: "R general cubic through p = (1:0:0), transversal to D",
    });
    v.push(Representative {
        table: "non-reduced quintics",
        row: "D line, D ∩ R = {p}, p smooth on R",
        endpoint: Endpoint::Alpha,
        expected: q(7, 4),
        curve: times_x2(generic_of_degree(3, |a, b, c| c == 0 && b < 3 || (a == 3)), 2),
        line: LineVar::X0,
        derivation: "R|_D = x1^3 (only x0^3, x0^2 x1, x0 x1^2 vanish), R smooth at p",
    });
    v.push(Representative {
        table: "non-reduced quintics",
        row: "D line, D ∩ R = {p}, p of type A1 on R",
        endpoint: Endpoint::Alpha,
        expected: qi(2),
        curve: times_x2(generic_of_degree(3, |a, b, c| (c == 0 && b < 3) || ord(a, 3) < 2), 2),
        line: LineVar::X0,
        derivation: "R singular at p (order ≥ 2) with R|_D = x1^3; the quadratic part x1 x2, x2^2 is a node",
    });
    v.push(Representative {
        table: "non-reduced quintics",
        row: "D line, D ∩ R = {p}, p of type A2 on R",
        endpoint: Endpoint::Alpha,
        expected: q(11, 5),
        curve: times_x2(
            generic_of_degree(3, |a, b, c| (c == 0 && b < 3) || ord(a, 3) < 2 || (a == 1 && b == 1 && c == 1)),
            2,
        ),
        line: LineVar::X0,
        derivation: "R a cusp at p with tangent cone x2^2 (the x1 x2 term removed) and R|_D = x1^3",
    });
    v.push(Representative {
        table: "non-reduced quintics",
        row: "D line, D ∩ R = {p}, triple point of R",
        endpoint: Endpoint::Alpha,
        expected: q(5, 2),
        curve: times_x2(generic_of_degree(3, |a, _, _| a > 0), 2),
        line: LineVar::X0,
        derivation: "R a cone over p: only monomials in x1, x2",
    });
    // Tangency tables: p = (1:0:0), L = (x2 = 0), β read off the single flag (p, L).
    let smooth = [(1u32, q(5, 2)), (2, q(5, 2)), (3, q(11, 5)), (4, q(13, 7)), (5, q(5, 3))];
    let smooth_rows = [
        "mult 1, smooth, A1",
        "mult 2, smooth, A3",
        "mult 3, smooth, A5",
        "mult 4, smooth, A7",
        "mult 5, smooth, A9",
    ];
    for ((k, beta), row) in smooth.into_iter().zip(smooth_rows) {
        v.push(Representative {
            table: "simple singularities of C + L",
            row,
            endpoint: Endpoint::Beta,
            expected: beta,
            curve: generic_quintic(move |_, b, c| c == 0 && b < k),
            line: LineVar::X2,
            derivation: "C|_L has order k at p, C smooth at p (the x0^4 x2 term survives)",
        });
    }
    let nodal = [(2u32, q(5, 2)), (3, qi(2)), (4, q(8, 5)), (5, q(10, 7))];
    let nodal_rows = ["mult 2, A1, D4", "mult 3, A1, D6", "mult 4, A1, D8", "mult 5, A1, D10"];
    for ((k, beta), row) in nodal.into_iter().zip(nodal_rows) {
        v.push(Representative {
            table: "simple singularities of C + L",
            row,
            endpoint: Endpoint::Beta,
            expected: beta,
            curve: generic_quintic(move |a, b, c| (c == 0 && b < k) || ord(a, 5) < 2),
            line: LineVar::X2,
            derivation: "C has a node at p (order 2, the x1 x2 term survives), C|_L of order k",
        });
    }
    v.push(Representative {
        table: "simple singularities of C + L",
        row: "mult 3, A2, E7",
        endpoint: Endpoint::Beta,
        expected: q(7, 4),
        curve: generic_quintic(|a, b, c| (c == 0 && b < 3) || ord(a, 5) < 2 || (a == 3 && b == 1)),
        line: LineVar::X2,
        derivation: "cusp at p with tangent cone x2^2 = L^2, so C|_L = x1^3",
    });
    v.push(Representative {
        table: "simple singularities of C + L",
        row: "mult 2, A2, D5",
        endpoint: Endpoint::Beta,
        expected: q(5, 2),
        curve: generic_quintic(|a, b, _| ord(a, 5) < 2 || (a == 3 && b < 2)),
        line: LineVar::X2,
        derivation: "cusp at p with tangent cone x1^2, transversal to L",
    });
    // Intersections destabilizing before t = 1.
    v.push(Representative {
        table: "destabilizing intersections",
        row: "A7, L 4-fold tangent to the residual quartic",
        endpoint: Endpoint::Beta,
        expected: q(1, 7),
        curve: times_x2(generic_of_degree(4, |_, b, c| c == 0 && b < 4), 1),
        line: LineVar::X2,
        derivation: "C = L R with R|_L = x1^4 and R smooth at p",
    });
    v.push(Representative {
        table: "destabilizing intersections",
        row: "D5, L a special tangent",
        endpoint: Endpoint::Beta,
        expected: q(1, 4),
        curve: generic_quintic(|a, b, c| (c == 0 && b < 4) || ord(a, 5) < 3 || (a == 2 && b == 2)),
        line: LineVar::X2,
        derivation: "order 3 at p with cubic part x1 x2^2 + x2^3 (double tangent L), C|_L = x1^4",
    });
    v.push(Representative {
        table: "destabilizing intersections",
        row: "A5, L 3-fold tangent to the residual quartic",
        endpoint: Endpoint::Beta,
        expected: q(2, 5),
        curve: times_x2(generic_of_degree(4, |_, b, c| c == 0 && b < 3), 1),
        line: LineVar::X2,
        derivation: "C = L R with R|_L = x1^3 and R smooth at p",
    });
    v.push(Representative {
        table: "destabilizing intersections",
        row: "A4, L 5-fold tangent",
        endpoint: Endpoint::Beta,
        expected: q(5, 8),
        curve: generic_quintic(|a, b, c| {
            (c == 0 && b < 5) || ord(a, 5) < 2 || (a == 3 && b >= 1) || (a == 2 && b == 2 && c == 1)
        }),
        line: LineVar::X2,
        derivation: "tangent cone x2^2, no x1^2 x2 term (that would give A3), C|_L = x1^5",
    });
    v
}

/// Runs every built-in representative of the degree-5 tables, plus the thick-wall pair.
pub fn verify_degree5_tables() -> Vec<TableRowCheck> {
    let mut out: Vec<TableRowCheck> = representatives()
        .into_iter()
        .map(|rep| {
            let cfg = Configuration::new(5, rep.curve.iter().copied(), [rep.line]).expect("rep");
            let interval = interval_for_configuration(&cfg);
            let computed = match rep.endpoint {
                Endpoint::Alpha => interval.lower(),
                Endpoint::Beta => interval.upper(),
            };
            TableRowCheck {
                table: rep.table.to_string(),
                row: rep.row.to_string(),
                endpoint: rep.endpoint,
                expected: rep.expected,
                passed: computed == Some(rep.expected),
                computed: computed.map(|c| c.to_string()),
                curve: support(&rep.curve).unwrap().monomials().iter().map(|m| m.to_string()).collect(),
                line: rep.line,
                derivation: rep.derivation.to_string(),
            }
        })
        .collect();
    let thick = parse_monomials("x0^2*x1*x2^2 - 2*x0*x1^3*x2 + x1^5").expect("thick wall");
    let interval = diagonal_interval(&Pair::new(thick.iter().copied(), LineVar::X1).expect("pair"));
    out.push(TableRowCheck {
        table: "strictly semistable".to_string(),
        row: "C = x1 (x0 x2 - x1^2)^2, L = x1".to_string(),
        endpoint: Endpoint::Beta,
        expected: qi(1),
        computed: Some(interval.to_string()),
        curve: thick.iter().map(|m| m.to_string()).collect(),
        line: LineVar::X1,
        derivation: "diagonal interval over all six coordinate orderings".to_string(),
        passed: interval == StabilityInterval::closed(qi(0), qi(1)),
    });
    out
}

/// The quintic normal forms in adapted coordinates and their stability thresholds.
pub fn threshold_normal_forms() -> Vec<(&'static str, &'static str, u32, Q)> {
    vec![
        ("E6", "x0^2*x2^3 + x0*x1^4", 3, q(1, 7)),
        ("D8'", "x0^2*x1*x2^2 + x1^4*x2 + x0^2*x2^3 + x1^3*x2^2", 3, q(1, 4)),
        ("E7", "x0^2*x2^3 + x0*x1^3*x2", 3, q(2, 5)),
        ("E8", "x0^2*x2^3 + x1^5", 3, q(5, 8)),
        ("X9 (E~7)", "x0*x1^4 + x0*x2^4 + x0*x1^2*x2^2", 4, qi(1)),
        ("Z11", "x0*x1*x2^3 + x1^5", 4, q(10, 7)),
        ("Z12", "x0*x1*x2^3 + x1^4*x2", 4, q(8, 5)),
        ("W12", "x0*x2^4 + x1^5", 4, q(5, 3)),
        ("W13", "x0*x2^4 + x1^4*x2", 4, q(13, 7)),
        ("N16", "x1^5 + x2^5 + x1^2*x2^3", 5, q(5, 2)),
    ]
}

/// `t_p` of each normal form compared with its expected value.
pub fn verify_thresholds() -> Vec<(&'static str, Q, Q)> {
    threshold_normal_forms()
        .into_iter()
        .map(|(name, eq, _, expected)| {
            let ms = parse_monomials(eq).expect("normal form");
            (name, expected, stability_threshold(&ms).expect("threshold"))
        })
        .collect()
}
