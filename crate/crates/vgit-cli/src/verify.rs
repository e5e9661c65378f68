//! Built-in checks bundled by `vgit verify`.

use serde::Serialize;
use vgit::hyperbolic::boundary::e7_a1_overlattice;
use vgit::hyperbolic::{baily_borel_boundary, default_base_vector, NormMenu, VinbergBudget};
use vgit::lattice::{discriminant_form, form_isometries, in_genus, m_f, roots, GramLattice};
use vgit::moduli::{strata as stratum_rows, verify_stratum};
use vgit::monoform::{parse_affine, parse_monomials, LineVar};
use vgit::rational::{q, qi};
use vgit::stability::{lct_quasihomogeneous, stability_threshold, StabilityInterval, WeightedOrderInput};
use vgit::walls::{candidate_walls, verify_degree5_tables, verify_minimal_orbits, verify_thresholds};
use vgit::Q;

use crate::{CliError, Suite};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub passed: bool,
}

impl Check {
    fn new(suite: &str, name: impl Into<String>, expected: impl ToString, computed: impl ToString) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        Check {
            suite: suite.to_string(),
            name: name.into(),
            passed: expected == computed,
            expected,
            computed,
        }
    }
}

fn list(xs: &[Q]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// Realized walls in degrees 3 and 5.
pub fn expected_walls(d: u32) -> Option<Vec<Q>> {
    match d {
        3 => Some(vec![qi(0), q(3, 5), qi(1), q(3, 2)]),
        5 => Some(vec![
            qi(0),
            q(1, 7),
            q(1, 4),
            q(2, 5),
            q(5, 8),
            qi(1),
            q(10, 7),
            q(8, 5),
            q(5, 3),
            q(7, 4),
            q(13, 7),
            qi(2),
            q(11, 5),
            q(5, 2),
        ]),
        _ => None,
    }
}

pub fn tables() -> Result<Vec<Check>, CliError> {
    const S: &str = "tables";
    let mut out = Vec::new();
    for d in [3, 5] {
        let want = expected_walls(d).expect("recorded degree");
        out.push(Check::new(S, format!("walls d={d}"), list(&want), list(&candidate_walls(d).realized_slopes())));
    }
    for (name, expected, computed) in verify_thresholds() {
        out.push(Check::new(S, format!("threshold {name}"), expected, computed));
    }
    let quartic = |text: &str| -> Result<Q, CliError> {
        Ok(stability_threshold(&parse_affine(text, LineVar::X2, LineVar::X1, 4)?)?)
    };
    out.push(Check::new(S, "threshold quartic C1", q(1, 2), quartic("x^2 + x*y^3")?));
    out.push(Check::new(S, "threshold quartic C2", qi(0), quartic("x^2 - 2*x*y^2 + y^4 - x^2*y^2")?));
    let e8 = WeightedOrderInput::new(3, 5, vec![(0, 3), (5, 0)])?;
    let lct = lct_quasihomogeneous(&e8);
    out.push(Check::new(S, "lct E8", q(8, 15), lct));
    let tp = stability_threshold(&parse_monomials("x0^2*x2^3 + x1^5")?)?;
    out.push(Check::new(S, "3/lct - d for E8", tp, qi(3) / lct - qi(5)));
    for row in verify_degree5_tables() {
        let computed = row.computed.clone().unwrap_or_else(|| "empty".into());
        let expected = if row.table == "strictly semistable" {
            StabilityInterval::closed(qi(0), qi(1)).to_string()
        } else {
            row.expected.to_string()
        };
        let mut c = Check::new(S, format!("{} {} ({:?})", row.table, row.row, row.endpoint), expected, computed);
        c.passed = row.passed;
        out.push(c);
    }
    Ok(out)
}

pub fn orbits() -> Vec<Check> {
    verify_minimal_orbits()
        .into_iter()
        .map(|row| {
            let mut c = Check::new(
                "orbits",
                format!("t={} {}", row.t, row.singularity),
                StabilityInterval::point(row.t),
                row.interval,
            );
            c.passed = row.passed;
            c
        })
        .collect()
}

pub fn strata() -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for row in stratum_rows() {
        let report = verify_stratum(&row)?;
        let mut c = Check::new(
            "strata",
            format!("row {} ({}, {})", row.label, row.singularity, row.lattice),
            format!("codimension {}", row.codimension),
            format!("codimension {}", report.rank.saturating_sub(6)),
        );
        if let Some(perp) = &report.perp_roots {
            c.computed.push_str(&format!(", perp roots {perp}"));
            c.expected.push_str(", perp roots D10");
        }
        c.passed = report.passed();
        out.push(c);
    }
    Ok(out)
}

pub fn lattice() -> Result<Vec<Check>, CliError> {
    const S: &str = "lattice";
    let mut out = Vec::new();
    let m = GramLattice::m();
    let form = discriminant_form(&m)?.form;
    out.push(Check::new(S, "A_M invariant factors", "[2, 2, 2, 2]", format!("{:?}", form.invariant_factors())));
    out.push(Check::new(S, "A_M non-zero isotropic elements", 5, form.isotropic_elements().len()));
    out.push(Check::new(S, "|O(q_M)|", 120, form_isometries(&form, &form, None)?.len()));
    let e = |i: usize| (0..6).map(|j| i64::from(i == j)).collect::<Vec<i64>>();
    let basis = vec![e(1), e(0), e(2), e(3), m_f(4).to_vec(), m_f(5).to_vec()];
    let sub = m.sublattice(&basis)?;
    let target = GramLattice::parse("D4+U(2)")?;
    out.push(Check::new(
        S,
        "M = D4+U(2) after the basis change",
        format!("{:?}", target.gram()),
        format!("{:?}", sub.gram()),
    ));
    for i in 1..=5 {
        out.push(Check::new(S, format!("Div(h - e_{i})"), 2, m.divisibility(&m_f(i))?));
    }
    let d4e8 = GramLattice::parse("D4+E8")?;
    let d12 = GramLattice::parse("D12")?;
    out.push(Check::new(S, "D4+E8 and D12 in one genus", true, in_genus(&d4e8, &d12)?));
    let (ra, rb) = (roots(&d4e8)?, roots(&d12)?);
    out.push(Check::new(S, "roots of D4+E8", "264 D4+E8", format!("{} {}", ra.count(), ra.type_string())));
    out.push(Check::new(S, "roots of D12", "264 D12", format!("{} {}", rb.count(), rb.type_string())));
    let over = e7_a1_overlattice()?;
    out.push(Check::new(
        S,
        "E7+A1^5 overlattice in the genus of D4+D8",
        true,
        in_genus(&over, &GramLattice::parse("D4+D8")?)?,
    ));
    Ok(out)
}

pub const BOUNDARY_SPEC: &str = "E8+D4+U(2)";

pub fn boundary() -> Result<Vec<Check>, CliError> {
    const S: &str = "boundary";
    let n = GramLattice::parse(BOUNDARY_SPEC)?;
    let h = default_base_vector(&n).expect("D4 and U(2) summands");
    let report = baily_borel_boundary(&n, &h, &NormMenu::minus_two(), &VinbergBudget::default())?;
    let mut out = vec![Check::new(S, "Vinberg stop condition", true, report.stopped)];
    let mut rank1: Vec<&str> = report.rank1.iter().map(|c| c.label.as_str()).collect();
    rank1.sort();
    out.push(Check::new(S, "rank-1 classes", "D8+D4+U, E8+D4+U", rank1.join(", ")));
    let mut rank2: Vec<String> = report
        .rank2
        .iter()
        .map(|c| {
            let mut under: Vec<&str> = c.contains.iter().map(|&i| report.rank1[i].label.as_str()).collect();
            under.sort();
            format!("{} > {}", c.label, under.join(" & "))
        })
        .collect();
    rank2.sort();
    out.push(Check::new(
        S,
        "rank-2 classes and incidence",
        "D12 > D8+D4+U & E8+D4+U; D8+D4 > D8+D4+U; E7+A1^5 > D8+D4+U; E8+D4 > D8+D4+U & E8+D4+U",
        rank2.join("; "),
    ));
    out.push(Check::new(S, "maximal-rank parabolic classes", 4, report.parabolic.len()));
    Ok(out)
}

pub fn run(suite: Suite) -> Result<Vec<Check>, CliError> {
    Ok(match suite {
        Suite::Tables => tables()?,
        Suite::Orbits => orbits(),
        Suite::Strata => strata()?,
        Suite::Lattice => lattice()?,
        Suite::Boundary => boundary()?,
        Suite::All => {
            let mut all = tables()?;
            all.extend(orbits());
            all.extend(strata()?);
            all.extend(lattice()?);
            all.extend(boundary()?);
            all
        }
    })
}
