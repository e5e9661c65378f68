use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_integer::Integer;
use proptest::prelude::*;
use vgit::hyperbolic::diagram::{null_coefficients, parabolic_of_rank};
use vgit::hyperbolic::vinberg::{pairwise_nonnegative, reduce_to_chamber};
use vgit::hyperbolic::{
    baily_borel_boundary, default_base_vector, isotropic_rank1_classes, parabolic_subdiagrams, vinberg,
    BoundaryReport, CoxeterDiagram, HyperbolicError, NormMenu, VinbergBudget, VinbergRun,
};
use vgit::lattice::{roots, GramLattice};

fn n_lattice() -> GramLattice {
    GramLattice::parse("E8+D4+U(2)").unwrap()
}

fn n_run() -> &'static (GramLattice, VinbergRun) {
    static RUN: OnceLock<(GramLattice, VinbergRun)> = OnceLock::new();
    RUN.get_or_init(|| {
        let n = n_lattice();
        let h = default_base_vector(&n).unwrap();
        let run = vinberg(&n, &h, &NormMenu::minus_two(), &VinbergBudget::default()).unwrap();
        (n, run)
    })
}

fn boundary() -> &'static BoundaryReport {
    static REPORT: OnceLock<BoundaryReport> = OnceLock::new();
    REPORT.get_or_init(|| {
        let n = GramLattice::parse("M+E8").unwrap();
        let h = default_base_vector(&n).unwrap();
        baily_borel_boundary(&n, &h, &NormMenu::minus_two(), &VinbergBudget::default()).unwrap()
    })
}

fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, x| g.gcd(x));
    let mut w: Vec<i64> = v.iter().map(|x| x / g).collect();
    if w.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        w.iter_mut().for_each(|x| *x = -*x);
    }
    w
}

/// Primitive null vectors of all parabolic subdiagrams of the given rank.
fn cusps(l: &GramLattice, diagram: &CoxeterDiagram, rank: usize) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    for p in parabolic_of_rank(diagram, rank) {
        let comp = &p.components[0];
        let c = null_coefficients(diagram, comp);
        let mut v = vec![0i64; l.rank()];
        for (&i, &ci) in comp.nodes.iter().zip(&c) {
            for (o, x) in v.iter_mut().zip(&diagram.nodes[i].root) {
                *o += ci * x;
            }
        }
        assert_eq!(l.norm(&v), 0);
        out.insert(primitive(&v));
    }
    out
}

#[test]
fn n_reaches_stop_condition_with_four_classes() {
    let (n, run) = n_run();
    assert!(run.stopped);
    assert!(pairwise_nonnegative(n, &run.state.roots));
    let types: BTreeSet<String> = parabolic_subdiagrams(&run.diagram, 12).into_iter().map(|c| c.types).collect();
    let want: BTreeSet<String> = ["A~1^5+E~7", "D~12", "D~4+D~8", "D~4+E~8"].iter().map(|s| s.to_string()).collect();
    assert_eq!(types, want);
}

#[test]
fn n_diagram_is_twenty_norm_minus_two_roots() {
    let (n, run) = n_run();
    assert_eq!(run.diagram.len(), 20);
    let h = default_base_vector(n).unwrap();
    for r in &run.state.roots {
        assert_eq!(n.norm(r), -2);
        assert!(n.dot(r, &h) <= 0);
    }
    assert!(run.diagram.to_dot().starts_with("graph"));
}

#[test]
fn m_plus_e8_gives_the_same_diagram_size() {
    let n = GramLattice::parse("M+E8").unwrap();
    let h = default_base_vector(&n).unwrap();
    let run = vinberg(&n, &h, &NormMenu::minus_two(), &VinbergBudget::default()).unwrap();
    assert!(run.stopped);
    assert_eq!(run.diagram.len(), n_run().1.diagram.len());
}

#[test]
fn generalized_roots_also_stop() {
    let (n, _) = n_run();
    let h = default_base_vector(n).unwrap();
    let run = vinberg(n, &h, &NormMenu::default(), &VinbergBudget::default()).unwrap();
    assert!(run.stopped);
    assert!(pairwise_nonnegative(n, &run.state.roots));
    for r in &run.state.roots {
        let k = -n.norm(r);
        assert!(k == 2 || (k == 4 && n.divisibility(r).unwrap() % 2 == 0));
    }
    // The cusps are the same isotropic lines, whatever the shape of the diagram.
    assert_eq!(parabolic_subdiagrams(&run.diagram, 12).len(), 4);
}

#[test]
fn larger_budget_keeps_earlier_roots() {
    let (n, full) = n_run();
    let h = default_base_vector(n).unwrap();
    let small = VinbergBudget {
        max_roots: 14,
        max_height: 64,
    };
    let run = vinberg(n, &h, &NormMenu::minus_two(), &small).unwrap();
    assert!(!run.stopped);
    assert_eq!(run.state.roots[..], full.state.roots[..run.state.roots.len()]);
}

#[test]
fn empty_menu_stops_immediately() {
    let (n, _) = n_run();
    let h = default_base_vector(n).unwrap();
    let run = vinberg(n, &h, &NormMenu(vec![]), &VinbergBudget::default()).unwrap();
    assert!(!run.stopped);
    assert!(run.diagram.is_empty());
}

#[test]
fn rejects_bad_input() {
    let e8 = GramLattice::e(8);
    assert!(matches!(
        vinberg(&e8, &[0; 8], &NormMenu::default(), &VinbergBudget::default()),
        Err(HyperbolicError::NotHyperbolic)
    ));
    let l = GramLattice::parse("U+<-2>").unwrap();
    assert!(matches!(
        vinberg(&l, &[1, 0, 0], &NormMenu::default(), &VinbergBudget::default()),
        Err(HyperbolicError::BaseNotPositive(0))
    ));
}

#[test]
fn u_plus_minus_two_cusps_match_brute_force() {
    let l = GramLattice::parse("U+<-2>").unwrap();
    let h = vec![2, 3, 1];
    let run = vinberg(&l, &h, &NormMenu::minus_two(), &VinbergBudget::default()).unwrap();
    assert!(run.stopped);
    let cusps = cusps(&l, &run.diagram, 1);
    assert!(!cusps.is_empty());
    let mut seen = 0;
    for a in -8i64..=8 {
        for b in -8i64..=8 {
            for c in -8i64..=8 {
                let v = vec![a, b, c];
                if l.norm(&v) != 0 || v.iter().fold(0i64, |g, x| g.gcd(x)) != 1 {
                    continue;
                }
                // Put v in the cone containing h.
                let v: Vec<i64> = if l.dot(&v, &h) < 0 { v.iter().map(|x| -x).collect() } else { v };
                let w = reduce_to_chamber(&l, &run.state.roots, &v, 10_000).expect("reduction terminates");
                assert!(cusps.contains(&primitive(&w)), "{v:?} reduces to {w:?}, not a cusp");
                seen += 1;
            }
        }
    }
    assert!(seen > 10);
}

/// Isotropic vectors of N obtained by reflecting a cusp in a word of basis roots.
fn reflected(n: &GramLattice, start: &[i64], word: &[usize]) -> Vec<i64> {
    let mut v = start.to_vec();
    for &i in word {
        let c = n.pairings(&v)[i];
        // The first twelve basis vectors of N are roots: v ↦ v + (v·e_i) e_i.
        v[i] += c;
    }
    v
}

#[test]
fn rank1_classes_of_t() {
    let t = GramLattice::parse("D4+E8+U+U(2)").unwrap();
    let classes = isotropic_rank1_classes(&t).unwrap();
    let mut summary: Vec<(usize, String)> = classes.iter().map(|c| (c.orbit.len(), c.label.clone())).collect();
    summary.sort();
    assert_eq!(summary, vec![(1, "D8+D4+U".to_string()), (5, "E8+D4+U".to_string())]);
    for c in &classes {
        assert_eq!(t.norm(&c.basis[0]), 0);
        assert_eq!(c.quotient.rank(), 14);
    }
}

#[test]
fn unimodular_t_has_one_rank1_class() {
    let t = GramLattice::parse("E8+U+U").unwrap();
    assert_eq!(isotropic_rank1_classes(&t).unwrap().len(), 1);
}

#[test]
fn rank2_classes_labels_and_incidence() {
    let r = boundary();
    assert!(r.stopped);
    assert_eq!(r.rank1.len(), 2);
    let nontrivial = r.rank1.iter().position(|c| c.h_e.len() == 2).unwrap();
    let trivial = 1 - nontrivial;
    assert_eq!(r.rank1[trivial].label, "D8+D4+U");
    assert_eq!(r.rank1[nontrivial].label, "E8+D4+U");
    let mut seen: Vec<(String, Vec<usize>)> = r.rank2.iter().map(|c| (c.label.clone(), c.contains.clone())).collect();
    seen.sort();
    let both = {
        let mut v = vec![trivial, nontrivial];
        v.sort();
        v
    };
    assert_eq!(
        seen,
        vec![
            ("D12".to_string(), both.clone()),
            ("D8+D4".to_string(), vec![trivial]),
            ("E7+A1^5".to_string(), vec![trivial]),
            ("E8+D4".to_string(), both),
        ]
    );
    for c in &r.rank2 {
        assert_eq!(c.quotient.rank(), 12);
        assert!(c.quotient.is_negative_definite());
    }
}

#[test]
fn d12_cusp_has_264_roots_in_one_component() {
    let c = boundary().rank2.iter().find(|c| c.label == "D12").unwrap();
    let r = roots(&c.quotient).unwrap();
    assert_eq!(r.count(), 264);
    assert_eq!(r.components.len(), 1);
}

#[test]
fn e7_a1_cusp_has_136_roots() {
    let c = boundary().rank2.iter().find(|c| c.label == "E7+A1^5").unwrap();
    assert_eq!(roots(&c.quotient).unwrap().count(), 136);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn vinberg_roots_pair_nonnegatively(
        summand in 0usize..8,
        scale in 1i64..=2,
        a in 1i64..=3,
        b in 1i64..=3,
        tail in proptest::collection::vec(-1i64..=1, 4),
        two_only in any::<bool>(),
    ) {
        let parts = ["<-2>", "A2", "2A1", "<-4>", "A3", "A1+<-4>", "<-6>", "D4"];
        let plane = if scale == 1 { "U".to_string() } else { format!("U({scale})") };
        let l = GramLattice::parse(&format!("{plane}+{}", parts[summand])).unwrap();
        let mut h = vec![a, b];
        h.extend(tail.iter().take(l.rank() - 2));
        prop_assume!(l.norm(&h) > 0);
        let menu = if two_only { NormMenu::minus_two() } else { NormMenu::default() };
        let budget = VinbergBudget { max_roots: 12, max_height: 6 };
        let run = vinberg(&l, &h, &menu, &budget).unwrap();
        prop_assert!(pairwise_nonnegative(&l, &run.state.roots));
        for r in &run.state.roots {
            prop_assert!(l.dot(r, &h) <= 0);
            let k = -l.norm(r);
            prop_assert!(menu.0.contains(&k));
            prop_assert_eq!(l.divisibility(r).unwrap() % (k / 2), 0);
        }
    }

    #[test]
    fn isotropic_vectors_of_n_reduce_to_cusps(word in proptest::collection::vec(0usize..12, 0..40), pick in 0usize..64) {
        static CUSPS: OnceLock<Vec<Vec<i64>>> = OnceLock::new();
        let (n, run) = n_run();
        let cusps = CUSPS.get_or_init(|| cusps(n, &run.diagram, 12).into_iter().collect());
        let h = default_base_vector(n).unwrap();
        let start = &cusps[pick % cusps.len()];
        let mut v = reflected(n, start, &word);
        if n.dot(&v, &h) < 0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        prop_assert_eq!(n.norm(&v), 0);
        let w = reduce_to_chamber(n, &run.state.roots, &v, 100_000).expect("reduction terminates");
        prop_assert!(cusps.contains(&primitive(&w)));
    }
}
