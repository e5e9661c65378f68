//! Isotropic sublattices of rank 1 and 2 up to isometry: the cusps of the Baily–Borel
//! compactification.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;

use super::diagram::{null_coefficients, parabolic_subdiagrams, ParabolicClass};
use super::vinberg::{vinberg, NormMenu, VinbergBudget, VinbergRun};
use super::HyperbolicError;
use crate::lattice::discriminant::{discriminant_form, form_isometries, is_isometric, orbits, Element};
use crate::lattice::intmat::{self, QBig};
use crate::lattice::{in_genus, roots, GramLattice, OverlatticeSearch};

#[derive(Debug, Clone, Serialize)]
pub struct IsotropicClass {
    pub rank: usize,
    /// Basis of `E` in the coordinates of `T`.
    pub basis: Vec<Vec<i64>>,
    /// `H_E = (E ⊗ Q ∩ T*) / E`, sorted by index.
    pub h_e: Vec<Element>,
    /// Elements of `A_T` equivalent to a generator of `H_E`; rank 1 only.
    pub orbit: Vec<Element>,
    pub label: String,
    /// `E⊥ / E`.
    pub quotient: GramLattice,
    /// Root system of the quotient when it is negative definite.
    pub root_type: Option<String>,
    /// Indices of the rank-1 classes of sublattices of `E`; rank 2 only.
    pub contains: Vec<usize>,
    /// Parabolic types giving this class; rank 2 only.
    pub parabolic: Vec<String>,
}

/// `E⊥ / E` for a primitive isotropic sublattice `E`.
pub fn isotropic_quotient(t: &GramLattice, e: &[Vec<i64>]) -> Result<GramLattice, HyperbolicError> {
    for a in e {
        for b in e {
            if t.dot(a, b) != 0 {
                return Err(HyperbolicError::Check("sublattice is not isotropic".into()));
            }
        }
    }
    let perp = t.orthogonal_complement(e);
    let perp_q: Vec<Vec<QBig>> = perp.iter().map(|r| to_q(r)).collect();
    let coords: Vec<Vec<i128>> = e
        .iter()
        .map(|v| {
            let c = intmat::solve_left(&perp_q, &to_q(v)).expect("E ⊆ E⊥");
            c.iter().map(|x| x.to_integer()).collect()
        })
        .collect();
    let s = intmat::smith(&coords);
    if s.diag.iter().any(|&d| d.abs() != 1) || s.diag.len() != e.len() {
        return Err(HyperbolicError::Check("sublattice is not primitive".into()));
    }
    let w = intmat::inverse_unimodular(&s.v).expect("unimodular");
    let basis: Vec<Vec<i64>> = w[e.len()..]
        .iter()
        .map(|row| {
            let mut out = vec![0i64; t.rank()];
            for (c, p) in row.iter().zip(&perp) {
                for (o, x) in out.iter_mut().zip(p) {
                    *o += *c as i64 * x;
                }
            }
            out
        })
        .collect();
    Ok(t.sublattice(&basis)?)
}

fn to_q(v: &[i64]) -> Vec<QBig> {
    v.iter().map(|&x| QBig::from_integer(i128::from(x))).collect()
}

/// `(E ⊗ Q ∩ T*) / E` as a sorted list of elements of `A_T`.
fn isotropic_subgroup(t: &GramLattice, e: &[Vec<i64>]) -> Result<Vec<Element>, HyperbolicError> {
    let disc = discriminant_form(t)?;
    let exponent = disc.form.invariant_factors().last().copied().unwrap_or(1) as i128;
    let mut found: BTreeSet<u64> = BTreeSet::new();
    let k = e.len();
    let total = (exponent as usize).pow(k as u32);
    for idx in 0..total {
        let mut rest = idx;
        let mut x = vec![QBig::from_integer(0); t.rank()];
        for b in e {
            let a = (rest % exponent as usize) as i128;
            rest /= exponent as usize;
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += QBig::new(a * i128::from(*bi), exponent);
            }
        }
        if let Some(c) = disc.class_of(t, &x) {
            found.insert(disc.form.index(&c));
        }
    }
    Ok(found.into_iter().map(|i| disc.form.element(i)).collect())
}

/// Checks that the form of `E⊥/E` is `H⊥/H`, the form of the overlattice of `T` by `H`.
fn predicted_form_matches(t: &GramLattice, h: &[Element], quotient: &GramLattice) -> Result<bool, HyperbolicError> {
    let search = OverlatticeSearch::new(t)?;
    let over = search.from_generators(h)?;
    let a = discriminant_form(&over.lattice)?.form;
    let b = discriminant_form(quotient)?.form;
    Ok(is_isometric(&a, &b)?)
}

fn references_rank1() -> Vec<(String, GramLattice)> {
    vec![
        ("D8+D4+U".into(), GramLattice::parse("D8+D4+U").expect("valid")),
        ("E8+D4+U".into(), GramLattice::parse("E8+D4+U").expect("valid")),
    ]
}

/// The index-2 overlattice of `E7 ⊕ A1^5` glued along the sum of all six generators.
pub fn e7_a1_overlattice() -> Result<GramLattice, HyperbolicError> {
    let l = GramLattice::parse("E7+5A1")?;
    let search = OverlatticeSearch::new(&l)?;
    let glue = vec![1u64; search.discriminant().form.generator_count()];
    Ok(search.from_generators(&[glue])?.lattice.with_name("(E7+A1^5)+"))
}

fn references_rank2() -> Result<Vec<(String, GramLattice)>, HyperbolicError> {
    Ok(vec![
        ("E8+D4".into(), GramLattice::parse("E8+D4")?),
        ("D12".into(), GramLattice::parse("D12")?),
        ("D8+D4".into(), GramLattice::parse("D8+D4")?),
        ("E7+A1^5".into(), e7_a1_overlattice()?),
    ])
}

/// Names `q` after the first reference in its genus with the same root system, or by
/// rank and determinant otherwise.
fn label(q: &GramLattice, refs: &[(String, GramLattice)]) -> Result<(String, Option<String>), HyperbolicError> {
    let root_type = if q.is_negative_definite() {
        Some(roots(q)?.type_string())
    } else {
        None
    };
    for (name, r) in refs {
        if r.rank() != q.rank() || !in_genus(q, r)? {
            continue;
        }
        if let Some(t) = &root_type {
            if roots(r)?.type_string() != *t {
                continue;
            }
        }
        return Ok((name.clone(), root_type));
    }
    Ok((format!("rank {} det {}", q.rank(), q.det()), root_type))
}

/// Classes of primitive isotropic vectors of `T`, one per orbit of isotropic elements of
/// `A_T` under `O(q_T)`. Relies on `O(T) → O(q_T)` being onto, which holds when `T`
/// contains two hyperbolic planes; this is assumed, not checked.
pub fn isotropic_rank1_classes(t: &GramLattice) -> Result<Vec<IsotropicClass>, HyperbolicError> {
    let u = t
        .blocks()
        .iter()
        .find(|b| b.name == "U")
        .ok_or(HyperbolicError::NoHyperbolicPlane)?;
    let (eu, fu) = (u.offset, u.offset + 1);
    let disc = discriminant_form(t)?;
    let form = &disc.form;
    let mut iso = form.isotropic_elements();
    iso.push(form.zero());
    let autos = form_isometries(form, form, None)?;
    let refs = references_rank1();
    let mut out = Vec::new();
    for orbit in orbits(form, &autos, &iso) {
        let x = &orbit[0];
        let d = form.element_order(x) as i128;
        let z = disc.lift(x);
        let z2 = t.dot_q(&z, &z);
        // w = d z + d e_U - (d z²/2) f_U is isotropic with w/d ∈ T* of class x.
        let c = -QBig::from_integer(d) * z2 / QBig::from_integer(2);
        let mut w: Vec<QBig> = z.iter().map(|v| v * QBig::from_integer(d)).collect();
        w[eu] += QBig::from_integer(d);
        w[fu] += c;
        if !w.iter().all(|v| v.is_integer()) {
            return Err(HyperbolicError::Check("isotropic representative is not integral".into()));
        }
        let mut w: Vec<i64> = w.iter().map(|v| v.to_integer() as i64).collect();
        let g = w.iter().fold(0i64, |g, v| g.gcd(v));
        for v in w.iter_mut() {
            *v /= g;
        }
        let div = t.divisibility(&w)?;
        let scaled: Vec<QBig> = w.iter().map(|&v| QBig::new(i128::from(v), i128::from(div))).collect();
        let class = disc.class_of(t, &scaled).expect("w / Div(w) is dual");
        if !orbit.contains(&class) {
            return Err(HyperbolicError::Check(format!("representative has class {class:?}, not {x:?}")));
        }
        let basis = vec![w];
        let quotient = isotropic_quotient(t, &basis)?;
        let h_e = isotropic_subgroup(t, &basis)?;
        check_quotient(t, &h_e, &quotient, 1)?;
        let (name, root_type) = label(&quotient, &refs)?;
        out.push(IsotropicClass {
            rank: 1,
            basis,
            h_e,
            orbit: orbit.clone(),
            label: name,
            quotient,
            root_type,
            contains: Vec::new(),
            parabolic: Vec::new(),
        });
    }
    Ok(out)
}

fn check_quotient(t: &GramLattice, h: &[Element], quotient: &GramLattice, rank: usize) -> Result<(), HyperbolicError> {
    if quotient.rank() != t.rank() - 2 * rank {
        return Err(HyperbolicError::Check("E⊥/E has the wrong rank".into()));
    }
    let order = discriminant_form(t)?.form.order() as i128;
    let h_order = h.len() as i128;
    if quotient.det().abs() * h_order * h_order != order {
        return Err(HyperbolicError::Check("|A_{E⊥/E}| ≠ |A_T| / |H_E|²".into()));
    }
    let nonzero: Vec<Element> = h.iter().filter(|x| x.iter().any(|&c| c != 0)).cloned().collect();
    if !predicted_form_matches(t, &nonzero, quotient)? {
        return Err(HyperbolicError::Check("form of E⊥/E differs from H⊥/H".into()));
    }
    Ok(())
}

/// Rank-2 isotropic sublattices of `T = N ⊕ U`, from the isotropic lines of `N` found by
/// a completed Vinberg run. `rank1` must be the rank-1 classes of the same `T`.
pub fn isotropic_rank2_classes(
    n: &GramLattice,
    run: &VinbergRun,
    rank1: &[IsotropicClass],
) -> Result<Vec<IsotropicClass>, HyperbolicError> {
    if !run.stopped {
        return Err(HyperbolicError::Budget);
    }
    let t = n.direct_sum(&GramLattice::u());
    let disc = discriminant_form(&t)?;
    let refs = references_rank2()?;
    let diagram = &run.diagram;
    let mut out: Vec<IsotropicClass> = Vec::new();
    for class in parabolic_subdiagrams(diagram, n.rank() - 2) {
        let rep = &class.members[0];
        let mut null: Option<Vec<i64>> = None;
        for comp in &rep.components {
            let c = null_coefficients(diagram, comp);
            let mut v = vec![0i64; n.rank()];
            for (&i, &ci) in comp.nodes.iter().zip(&c) {
                for (o, x) in v.iter_mut().zip(&diagram.nodes[i].root) {
                    *o += ci * x;
                }
            }
            let g = v.iter().fold(0i64, |g, x| g.gcd(x));
            for x in v.iter_mut() {
                *x /= g;
            }
            if n.norm(&v) != 0 {
                return Err(HyperbolicError::Check(format!("null vector of {} is not isotropic", class.types)));
            }
            match &null {
                None => null = Some(v),
                Some(first) => {
                    if *first != v && first.iter().zip(&v).any(|(a, b)| *a != -b) {
                        return Err(HyperbolicError::Check("components have different null lines".into()));
                    }
                }
            }
        }
        let v = null.expect("parabolic subdiagrams are non-empty");
        let mut b1 = v.clone();
        b1.extend([0, 0]);
        let mut b2 = vec![0i64; n.rank()];
        b2.extend([1, 0]);
        let basis = vec![b1.clone(), b2.clone()];
        let quotient = isotropic_quotient(&t, &basis)?;
        let h_e = isotropic_subgroup(&t, &basis)?;
        check_quotient(&t, &h_e, &quotient, 2)?;
        if !quotient.is_negative_definite() {
            return Err(HyperbolicError::Check("E⊥/E is not negative definite".into()));
        }
        let (name, root_type) = label(&quotient, &refs)?;
        let contains = incidence(&t, &disc, &b1, &b2, rank1)?;
        if let Some(existing) = out.iter_mut().find(|c| c.label == name && same_orbits(&c.h_e, &h_e, rank1)) {
            existing.parabolic.push(class.types.clone());
            continue;
        }
        out.push(IsotropicClass {
            rank: 2,
            basis,
            h_e,
            orbit: Vec::new(),
            label: name,
            quotient,
            root_type,
            contains,
            parabolic: vec![class.types.clone()],
        });
    }
    Ok(out)
}

fn orbit_of(x: &Element, rank1: &[IsotropicClass]) -> Option<usize> {
    rank1.iter().position(|c| c.orbit.contains(x))
}

fn same_orbits(a: &[Element], b: &[Element], rank1: &[IsotropicClass]) -> bool {
    let key = |h: &[Element]| -> Vec<Option<usize>> {
        let mut v: Vec<Option<usize>> = h.iter().map(|x| orbit_of(x, rank1)).collect();
        v.sort();
        v
    };
    key(a) == key(b)
}

/// Rank-1 classes met by the primitive vectors `a b1 + b b2`. The class depends only on
/// `(a, b)` modulo the exponent of `A_T`, so a small box suffices.
fn incidence(
    t: &GramLattice,
    disc: &crate::lattice::DiscriminantGroup,
    b1: &[i64],
    b2: &[i64],
    rank1: &[IsotropicClass],
) -> Result<Vec<usize>, HyperbolicError> {
    let exponent = disc.form.invariant_factors().last().copied().unwrap_or(1) as i64;
    let mut found = BTreeSet::new();
    for a in 0..=2 * exponent {
        for b in 0..=2 * exponent {
            if a.gcd(&b) != 1 {
                continue;
            }
            let w: Vec<i64> = b1.iter().zip(b2).map(|(x, y)| a * x + b * y).collect();
            let div = t.divisibility(&w)?;
            let scaled: Vec<QBig> = w.iter().map(|&v| QBig::new(i128::from(v), i128::from(div))).collect();
            let class = disc.class_of(t, &scaled).expect("w / Div(w) is dual");
            let idx = orbit_of(&class, rank1)
                .ok_or_else(|| HyperbolicError::Check(format!("class {class:?} is in no rank-1 orbit")))?;
            found.insert(idx);
        }
    }
    Ok(found.into_iter().collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundaryReport {
    pub rank1: Vec<IsotropicClass>,
    pub rank2: Vec<IsotropicClass>,
    pub parabolic: Vec<ParabolicSummary>,
    pub vinberg_roots: usize,
    pub stopped: bool,
    pub assumptions: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ParabolicSummary {
    pub types: String,
    pub count: usize,
}

impl From<&ParabolicClass> for ParabolicSummary {
    fn from(c: &ParabolicClass) -> Self {
        ParabolicSummary {
            types: c.types.clone(),
            count: c.members.len(),
        }
    }
}

/// Both kinds of cusp for `T = N ⊕ U`, with `h ∈ N` the base vector for Vinberg's algorithm.
pub fn baily_borel_boundary(
    n: &GramLattice,
    h: &[i64],
    menu: &NormMenu,
    budget: &VinbergBudget,
) -> Result<BoundaryReport, HyperbolicError> {
    let t = n.direct_sum(&GramLattice::u());
    let rank1 = isotropic_rank1_classes(&t)?;
    let run = vinberg(n, h, menu, budget)?;
    let parabolic: Vec<ParabolicSummary> = parabolic_subdiagrams(&run.diagram, n.rank() - 2)
        .iter()
        .map(ParabolicSummary::from)
        .collect();
    let rank2 = isotropic_rank2_classes(n, &run, &rank1)?;
    Ok(BoundaryReport {
        rank1,
        rank2,
        parabolic,
        vinberg_roots: run.diagram.len(),
        stopped: run.stopped,
        assumptions: vec!["O(T) → O(q_T) is surjective, so rank-1 classes match O(q_T)-orbits".into()],
    })
}
