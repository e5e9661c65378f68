//! K3-side applications: which ADE configurations occur on `M`-polarized K3 surfaces,
//! the stratification lattices, and the classification of roots orthogonal to `h`.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::lattice::discriminant::{discriminant_form, form_isometries, Element, FiniteQuadraticForm};
use crate::lattice::embedding::{embeds_primitively_k3, EmbeddingVerdict};
use crate::lattice::intmat::{self, QBig};
use crate::lattice::overlattice::{equivalent_under_cells, Overlattice, OverlatticeSearch};
use crate::lattice::reduce::Enumerator;
use crate::lattice::roots::{component_type, format_types, roots_orthogonal_to, AdeType};
use crate::lattice::{is_primitive_sublattice, GramLattice, LatticeError, M_POLARIZATION};
use crate::rational::{q, Q};

/// Largest total Milnor number accepted.
pub const MILNOR_CAP: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModuliError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("cannot parse configuration `{text}`: {msg}")]
    Config { text: String, msg: String },
    #[error("configuration of total rank {0} exceeds the cap {MILNOR_CAP}")]
    RankCap(usize),
    #[error("vector is not orthogonal to the polarization (pairing {0})")]
    NotOrthogonal(i64),
    #[error("vector has norm {0}, not -2")]
    NotRoot(i64),
    #[error("`{sub}` is not a subdiagram of `{whole}`")]
    NotSubdiagram { sub: String, whole: String },
    #[error("degree {0} is below 2")]
    Degree(u32),
}

/// A multiset of ADE singularities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularityConfig {
    /// Sorted.
    types: Vec<AdeType>,
}

impl SingularityConfig {
    pub fn new(mut types: Vec<AdeType>) -> Result<Self, ModuliError> {
        types.sort();
        let rank: usize = types.iter().map(|t| t.rank).sum();
        if rank > MILNOR_CAP {
            return Err(ModuliError::RankCap(rank));
        }
        Ok(SingularityConfig { types })
    }

    /// `A12`, `10A1`, `E7+2A1+D4`, `A1^3`.
    pub fn parse(text: &str) -> Result<Self, ModuliError> {
        let err = |msg: &str| ModuliError::Config {
            text: text.to_string(),
            msg: msg.to_string(),
        };
        let mut types = Vec::new();
        if text.trim().is_empty() {
            return Err(err("empty configuration"));
        }
        for part in text.split(['+', '⊕']) {
            let part = part.trim();
            let digits = part.chars().take_while(char::is_ascii_digit).count();
            let mut count: usize = if digits > 0 {
                part[..digits].parse().map_err(|_| err("bad multiplicity"))?
            } else {
                1
            };
            let mut rest = &part[digits..];
            if let Some((atom, exp)) = rest.split_once('^') {
                count *= exp.trim().parse::<usize>().map_err(|_| err("bad exponent"))?;
                rest = atom;
            }
            let t = AdeType::parse(rest).ok_or_else(|| err(&format!("unknown singularity `{rest}`")))?;
            if count == 0 {
                return Err(err("zero multiplicity"));
            }
            types.extend(std::iter::repeat_n(t, count));
        }
        SingularityConfig::new(types)
    }

    pub fn types(&self) -> &[AdeType] {
        &self.types
    }

    pub fn rank(&self) -> usize {
        self.types.iter().map(|t| t.rank).sum()
    }

    /// The root lattice `R`, one named block per singularity.
    pub fn lattice(&self) -> GramLattice {
        GramLattice::sum_of(&self.types.iter().map(AdeType::lattice).collect::<Vec<_>>())
    }

    /// The expected root type of `⟨h⟩⊥` in an overlattice of `M ⊕ R`: `R + A1^5`.
    pub fn expected_perp_types(&self) -> Vec<AdeType> {
        let mut t = self.types.clone();
        t.extend(std::iter::repeat_n(AdeType::a(1), 5));
        t.sort();
        t
    }
}

impl fmt::Display for SingularityConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_types(&self.types))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootKind {
    /// Pairs non-trivially with some `e_i`.
    Infinity,
    /// Orthogonal to all of `M`.
    Finite,
}

/// Classifies a root `delta` of `ambient` orthogonal to `h`, where `m_basis` holds the
/// images of `l', e_1, ..., e_5`.
pub fn classify_root(ambient: &GramLattice, m_basis: &[Vec<i64>], delta: &[i64]) -> Result<RootKind, ModuliError> {
    if m_basis.len() != 6 {
        return Err(LatticeError::Length {
            got: m_basis.len(),
            want: 6,
        }
        .into());
    }
    let norm = ambient.norm(delta);
    if norm != -2 {
        return Err(ModuliError::NotRoot(norm));
    }
    let h = combine(m_basis, &M_POLARIZATION);
    let dh = ambient.dot(delta, &h);
    if dh != 0 {
        return Err(ModuliError::NotOrthogonal(dh));
    }
    if m_basis[1..].iter().any(|e| ambient.dot(delta, e) != 0) {
        Ok(RootKind::Infinity)
    } else {
        Ok(RootKind::Finite)
    }
}

fn combine(basis: &[Vec<i64>], coeffs: &[i64]) -> Vec<i64> {
    let n = basis.first().map_or(0, |b| b.len());
    let mut out = vec![0i64; n];
    for (c, b) in coeffs.iter().zip(basis) {
        for (o, x) in out.iter_mut().zip(b) {
            *o += c * x;
        }
    }
    out
}

/// Why a candidate overlattice was accepted or rejected.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CandidateStatus {
    Passed,
    NotPrimitive,
    RootMismatch { found: String },
    EmbeddingNo { reason: String },
    EmbeddingUndetermined { reason: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct CandidateOutcome {
    /// `|H|`.
    pub order: usize,
    pub generators: Vec<Element>,
    #[serde(flatten)]
    pub status: CandidateStatus,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub order: usize,
    pub generators: Vec<Element>,
    pub overlattice: GramLattice,
    pub perp_roots: String,
    pub embedding: EmbeddingVerdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Yes,
    No,
    Undetermined,
}

#[derive(Debug, Clone, Serialize)]
pub struct OccurrenceReport {
    pub config: String,
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
    /// Passing subgroups up to `O(q_M)` and permutations of equal singularities.
    pub passing_classes: usize,
    pub candidates: usize,
    pub trace: Vec<CandidateOutcome>,
}

impl OccurrenceReport {
    pub fn occurs(&self) -> bool {
        self.verdict == Verdict::Yes
    }
}

/// Norms in `[-2, 0]` of the vectors `p + y`, `y ∈ Z^r`, for a negative definite `gram`.
fn short_norms(gram: &[Vec<i64>], p: &[QBig]) -> Result<BTreeSet<QBig>, LatticeError> {
    if gram.is_empty() {
        return Ok([QBig::zero()].into());
    }
    let neg: Vec<Vec<i64>> = gram.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    let e = Enumerator::new(&neg)?;
    let centre: Vec<QBig> = p.iter().map(|x| -x).collect();
    let l = GramLattice::new(gram.to_vec())?;
    Ok(e
        .within(&centre, QBig::from_integer(2))
        .into_iter()
        .map(|y| {
            let v: Vec<QBig> = y.iter().zip(p).map(|(a, b)| QBig::from_integer(*a as i128) + b).collect();
            l.dot_q(&v, &v)
        })
        .collect())
}

/// Occurrence data for one configuration: the search over `M ⊕ R` and per-block caches.
struct OccurrenceSearch {
    lattice: GramLattice,
    h: Vec<i64>,
    /// Generator index ranges per block of `M ⊕ R`; block 0 is `M`.
    block_gens: Vec<Vec<usize>>,
}

impl OccurrenceSearch {
    fn new(config: &SingularityConfig) -> Self {
        let lattice = GramLattice::m().direct_sum(&config.lattice());
        let mut h = M_POLARIZATION.to_vec();
        h.resize(lattice.rank(), 0);
        OccurrenceSearch {
            lattice,
            h,
            block_gens: Vec::new(),
        }
    }

    /// Whether the coset of `x` contains a vector of norm -2 orthogonal to `h`.
    fn has_root(&self, search: &OverlatticeSearch, cache: &mut HashMap<(usize, Vec<u64>), BTreeSet<QBig>>, x: &[u64]) -> Result<bool, LatticeError> {
        let disc = search.discriminant();
        let mut sums: BTreeSet<QBig> = [QBig::zero()].into();
        let two = QBig::from_integer(2);
        for (b, gens) in self.block_gens.iter().enumerate() {
            let key: Vec<u64> = gens.iter().map(|&g| x[g]).collect();
            let norms = match cache.entry((b, key)) {
                Entry::Occupied(e) => e.into_mut(),
                Entry::Vacant(e) => {
                    let norms = self.block_norms(disc, b, gens, e.key().1.as_slice())?;
                    e.insert(norms)
                }
            };
            let mut next = BTreeSet::new();
            for s in &sums {
                for n in norms.iter() {
                    let t = s + n;
                    if t >= -two {
                        next.insert(t);
                    }
                }
            }
            sums = next;
            if sums.is_empty() {
                return Ok(false);
            }
        }
        Ok(sums.contains(&-two))
    }

    fn block_norms(
        &self,
        disc: &crate::lattice::DiscriminantGroup,
        b: usize,
        gens: &[usize],
        key: &[u64],
    ) -> Result<BTreeSet<QBig>, LatticeError> {
        let blk = &self.lattice.blocks()[b];
        let mut lift = vec![QBig::zero(); blk.rank];
        for (&g, &c) in gens.iter().zip(key) {
            for i in 0..blk.rank {
                lift[i] += disc.lifts[g][blk.offset + i] * QBig::from_integer(c as i128);
            }
        }
        let gram: Vec<Vec<i64>> = (blk.offset..blk.offset + blk.rank)
            .map(|i| (blk.offset..blk.offset + blk.rank).map(|j| self.lattice.entry(i, j)).collect())
            .collect();
        if b != 0 {
            return short_norms(&gram, &lift);
        }
        // M block: shift into h⊥ using l' (h·l' = 1), then write in a basis of h⊥_M.
        let m = GramLattice::m();
        let lift_h: QBig = m.dot_q(&lift, &M_POLARIZATION.map(|x| QBig::from_integer(x as i128)));
        let mut p = lift;
        p[0] -= lift_h;
        let k = m.orthogonal_complement(&[M_POLARIZATION.to_vec()]);
        let kq: Vec<Vec<QBig>> = k.iter().map(|r| r.iter().map(|&x| QBig::from_integer(x as i128)).collect()).collect();
        let coords = intmat::solve_left(&kq, &p).expect("p lies in h⊥");
        let kgram = m.sublattice(&k)?.gram().to_vec();
        short_norms(&kgram, &coords)
    }
}

/// Decides whether the ADE configuration occurs: finds the even overlattices `N` of
/// `M ⊕ R` in which `M` is primitive, the roots of `⟨h⟩⊥_N` are exactly `R + A1^5`, and
/// `N` embeds primitively into the K3 lattice.
pub fn config_occurs(config: &SingularityConfig) -> Result<OccurrenceReport, ModuliError> {
    let mut occ = OccurrenceSearch::new(config);
    let search = OverlatticeSearch::new(&occ.lattice)?;
    let disc = search.discriminant().clone();
    let form = disc.form.clone();
    let blocks = occ.lattice.blocks().to_vec();
    let mut block_gens = vec![Vec::new(); blocks.len()];
    for g in 0..form.generator_count() {
        let pos = disc.lifts[g].iter().position(|x| !x.is_zero()).unwrap_or(0);
        let b = blocks.iter().position(|b| pos >= b.offset && pos < b.offset + b.rank).unwrap_or(0);
        block_gens[b].push(g);
    }
    occ.block_gens = block_gens;
    let m_gens = occ.block_gens[0].clone();

    // Pre-compute the filter on every isotropic element.
    let mut cache = HashMap::new();
    let mut good: BTreeSet<u64> = BTreeSet::new();
    for x in form.isotropic_elements() {
        let r_part_zero = (0..form.generator_count()).all(|g| m_gens.contains(&g) || x[g] == 0);
        if !r_part_zero && !occ.has_root(&search, &mut cache, &x)? {
            good.insert(form.index(&x));
        }
    }
    let cells = search.block_cells();
    let search = search
        .symmetric_slices(cells.clone())
        .hereditary_filter(move |f: &FiniteQuadraticForm, x: &Element| good.contains(&f.index(x)));
    let candidates = search.run()?;

    let expected = format_types(&config.expected_perp_types());
    let h = occ.h.clone();
    let lattice = occ.lattice.clone();
    let outcomes: Vec<(CandidateOutcome, Option<Certificate>)> = candidates
        .par_iter()
        .map(|cand| check_candidate(&lattice, &h, cand, &expected))
        .collect::<Result<_, ModuliError>>()?;

    let passing: Vec<&(CandidateOutcome, Option<Certificate>)> =
        outcomes.iter().filter(|(o, _)| o.status == CandidateStatus::Passed).collect();
    let undetermined = outcomes
        .iter()
        .any(|(o, _)| matches!(o.status, CandidateStatus::EmbeddingUndetermined { .. }));
    let verdict = if !passing.is_empty() {
        Verdict::Yes
    } else if undetermined {
        Verdict::Undetermined
    } else {
        Verdict::No
    };
    let certificate = passing.first().and_then(|(_, c)| c.clone());

    // Group passing subgroups up to O(q_M) and permutations of equal blocks.
    let m_form = discriminant_form(&GramLattice::m())?.form;
    let m_autos = form_isometries(&m_form, &m_form, None)?;
    let mut reps: Vec<&Overlattice> = Vec::new();
    for (cand, (o, _)) in candidates.iter().zip(&outcomes) {
        if o.status != CandidateStatus::Passed {
            continue;
        }
        if !reps
            .iter()
            .any(|r| equivalent(&form, &m_form, &m_autos, &m_gens, &cells, &r.generators, cand))
        {
            reps.push(cand);
        }
    }

    Ok(OccurrenceReport {
        config: config.to_string(),
        verdict,
        certificate,
        passing_classes: reps.len(),
        candidates: candidates.len(),
        trace: outcomes.into_iter().map(|(o, _)| o).collect(),
    })
}

fn check_candidate(
    lattice: &GramLattice,
    h: &[i64],
    cand: &Overlattice,
    expected: &str,
) -> Result<(CandidateOutcome, Option<Certificate>), ModuliError> {
    let outcome = |status| CandidateOutcome {
        order: cand.order(),
        generators: cand.generators.clone(),
        status,
    };
    let n = &cand.lattice;
    let m_in_n: Vec<Vec<i64>> = (0..6)
        .map(|i| {
            let mut e = vec![0i64; lattice.rank()];
            e[i] = 1;
            cand.coordinates(&e)
        })
        .collect();
    if !is_primitive_sublattice(&m_in_n)? {
        return Ok((outcome(CandidateStatus::NotPrimitive), None));
    }
    // Cheap part of the embedding test first.
    let length = discriminant_form(n)?.form.length();
    if length + n.rank() > 22 {
        let v = embeds_primitively_k3(n)?;
        return Ok((
            outcome(CandidateStatus::EmbeddingNo {
                reason: v.reason().to_string(),
            }),
            None,
        ));
    }
    let h_n = cand.coordinates(h);
    let roots = roots_orthogonal_to(n, &[h_n])?;
    let found = roots.type_string();
    if found != expected {
        return Ok((outcome(CandidateStatus::RootMismatch { found }), None));
    }
    let verdict = embeds_primitively_k3(n)?;
    let status = match &verdict {
        EmbeddingVerdict::Yes { .. } => CandidateStatus::Passed,
        EmbeddingVerdict::No { reason } => CandidateStatus::EmbeddingNo { reason: reason.clone() },
        EmbeddingVerdict::Undetermined { reason } => CandidateStatus::EmbeddingUndetermined { reason: reason.clone() },
    };
    let cert = (status == CandidateStatus::Passed).then(|| Certificate {
        order: cand.order(),
        generators: cand.generators.clone(),
        overlattice: n.clone(),
        perp_roots: found,
        embedding: verdict,
    });
    Ok((outcome(status), cert))
}

/// Whether some `σ ∈ O(q_M)` and some permutation of equal blocks carry the subgroup
/// generated by `gens` onto `other`.
fn equivalent(
    form: &FiniteQuadraticForm,
    m_form: &FiniteQuadraticForm,
    m_autos: &[Vec<Element>],
    m_gens: &[usize],
    cells: &[Vec<Vec<usize>>],
    gens: &[Element],
    other: &Overlattice,
) -> bool {
    m_autos.iter().any(|sigma| {
        let moved: Vec<Element> = gens
            .iter()
            .map(|g| {
                let mp: Vec<u64> = m_gens.iter().map(|&i| g[i]).collect();
                let img = m_form.apply(m_form, sigma, &mp);
                let mut out = g.clone();
                for (k, &i) in m_gens.iter().enumerate() {
                    out[i] = img[k];
                }
                out
            })
            .collect();
        equivalent_under_cells(form, cells, &moved, &other.subgroup)
    })
}

/// Whether `sub` is the type of an induced subdiagram of the Dynkin diagram of `whole`.
pub fn is_subdiagram(sub: &SingularityConfig, whole: &SingularityConfig) -> bool {
    let l = whole.lattice();
    let n = l.rank();
    let k = sub.rank();
    if k > n {
        return false;
    }
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && l.entry(i, j) != 0).collect())
        .collect();
    let target = sub.types().to_vec();
    itertools::Itertools::combinations(0..n, k).any(|nodes| {
        let set: BTreeSet<usize> = nodes.iter().copied().collect();
        let sub_adj: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                if set.contains(&i) {
                    adj[i].iter().copied().filter(|j| set.contains(j)).collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        let mut seen = BTreeSet::new();
        let mut types = Vec::new();
        for &s in &nodes {
            if seen.contains(&s) {
                continue;
            }
            let mut comp = vec![s];
            seen.insert(s);
            let mut at = 0;
            while at < comp.len() {
                for &j in &sub_adj[comp[at]] {
                    if seen.insert(j) {
                        comp.push(j);
                    }
                }
                at += 1;
            }
            match component_type(&sub_adj, &comp) {
                Ok(t) => types.push(t),
                Err(_) => return false,
            }
        }
        types.sort();
        types == target
    })
}

/// Checks on an instance that occurrence of `whole` implies occurrence of its
/// deformation `sub`.
pub fn deformation_monotonicity(whole: &SingularityConfig, sub: &SingularityConfig) -> Result<bool, ModuliError> {
    if !is_subdiagram(sub, whole) {
        return Err(ModuliError::NotSubdiagram {
            sub: sub.to_string(),
            whole: whole.to_string(),
        });
    }
    if whole == sub {
        return Ok(true);
    }
    let a = config_occurs(whole)?;
    if !a.occurs() {
        return Ok(true);
    }
    Ok(config_occurs(sub)?.occurs())
}

/// Bidegree `(2(d-1), d(d-1))` of the discriminant divisor.
pub fn discriminant_bidegree(d: u32) -> Result<(u32, u32), ModuliError> {
    if d < 2 {
        return Err(ModuliError::Degree(d));
    }
    Ok((2 * (d - 1), d * (d - 1)))
}

/// One row of the stratification of the divisor at infinity.
#[derive(Debug, Clone, Serialize)]
pub struct StratumRecord {
    pub label: usize,
    #[serde(with = "crate::rational::serde_q")]
    pub t: Q,
    pub singularity: &'static str,
    pub lattice: &'static str,
    pub codimension: usize,
    pub specializes_to: &'static [usize],
}

/// The seven strata.
pub fn strata() -> Vec<StratumRecord> {
    let row = |label, t: Q, singularity, lattice, codimension, specializes_to| StratumRecord {
        label,
        t,
        singularity,
        lattice,
        codimension,
        specializes_to,
    };
    vec![
        row(1, q(10, 7), "D10", "T(2,3,8)", 5, &[2, 3]),
        row(2, q(8, 5), "D8+A1", "T(2,4,6)", 4, &[5, 6]),
        row(3, q(5, 3), "A9", "T(2,5,5)", 4, &[5]),
        row(4, q(7, 4), "E7+2A1", "E8+U", 4, &[6]),
        row(5, q(13, 7), "A7+A1", "T(3,4,4)", 3, &[7]),
        row(6, q(2, 1), "D6+2A1", "E7+U", 3, &[7]),
        row(7, q(11, 5), "A5+2A1", "E6+U", 2, &[]),
    ]
}

/// The lattice `T(2,3,8)` on the basis `l', e_1, ..., e_10`: the chain
/// `l' - e9 - e8 - ... - e1` with `e10` attached to `e8`.
pub fn t238_labelled() -> GramLattice {
    let mut g = vec![vec![0i64; 11]; 11];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = -2;
    }
    let mut link = |a: usize, b: usize| {
        g[a][b] = 1;
        g[b][a] = 1;
    };
    link(0, 9);
    for i in 1..9 {
        link(i, i + 1);
    }
    link(8, 10);
    GramLattice::new(g).unwrap().with_name("T(2,3,8)")
}

/// Images of `l', e_1, ..., e_5` in [`t238_labelled`].
pub fn t238_embedding() -> Vec<Vec<i64>> {
    let v = |terms: &[(usize, i64)]| {
        let mut x = vec![0i64; 11];
        for &(i, c) in terms {
            x[i] += c;
        }
        x
    };
    let twos = |from: usize| (from..=8).map(|i| (i, 2)).collect::<Vec<_>>();
    let with = |lead: usize, from: usize| {
        let mut t = vec![(lead, 1), (9, 1), (10, 1)];
        t.extend(twos(from));
        v(&t)
    };
    vec![
        v(&[(0, 1)]),
        with(1, 2),
        with(3, 4),
        with(5, 6),
        with(7, 8),
        v(&[(9, 1)]),
    ]
}

#[derive(Debug, Clone, Serialize)]
pub struct StratumReport {
    pub label: usize,
    pub rank: usize,
    pub codimension_ok: bool,
    pub signature_ok: bool,
    /// Rank of the singularity lattice equals `rank(M_t) - 1`.
    pub singularity_rank_ok: bool,
    pub specialization_ok: bool,
    /// Only for the stratum with explicit formulas.
    pub gram_preserved: Option<bool>,
    pub primitive: Option<bool>,
    pub perp_roots: Option<String>,
}

impl StratumReport {
    pub fn passed(&self) -> bool {
        self.codimension_ok
            && self.signature_ok
            && self.singularity_rank_ok
            && self.specialization_ok
            && self.gram_preserved != Some(false)
            && self.primitive != Some(false)
            && self.perp_roots.as_ref().is_none_or(|r| r == "D10")
    }
}

pub fn verify_stratum(record: &StratumRecord) -> Result<StratumReport, ModuliError> {
    let lat = GramLattice::parse(record.lattice)?;
    let rank = lat.rank();
    let sing = SingularityConfig::parse(record.singularity)?;
    let all = strata();
    let specialization_ok = record.specializes_to.iter().all(|&t| {
        all.iter()
            .find(|r| r.label == t)
            .and_then(|r| GramLattice::parse(r.lattice).ok())
            .is_some_and(|l| l.rank() < rank)
    });
    let mut report = StratumReport {
        label: record.label,
        rank,
        codimension_ok: rank >= 6 && rank - 6 == record.codimension,
        signature_ok: lat.is_hyperbolic(),
        singularity_rank_ok: sing.rank() + 1 == rank,
        specialization_ok,
        gram_preserved: None,
        primitive: None,
        perp_roots: None,
    };
    if record.lattice == "T(2,3,8)" {
        let t = t238_labelled();
        let images = t238_embedding();
        let m = GramLattice::m();
        let preserved = (0..6).all(|i| (i..6).all(|j| t.dot(&images[i], &images[j]) == m.entry(i, j)));
        report.gram_preserved = Some(preserved);
        report.primitive = Some(is_primitive_sublattice(&images)?);
        let jh = combine(&images, &M_POLARIZATION);
        report.perp_roots = Some(roots_orthogonal_to(&t, &[jh])?.type_string());
    }
    Ok(report)
}

/// Counts of candidates per status, for summaries.
pub fn trace_summary(trace: &[CandidateOutcome]) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for c in trace {
        let key = match &c.status {
            CandidateStatus::Passed => "passed".to_string(),
            CandidateStatus::NotPrimitive => "not primitive".to_string(),
            CandidateStatus::RootMismatch { .. } => "root mismatch".to_string(),
            CandidateStatus::EmbeddingNo { reason } => reason.split(':').next().unwrap_or("").to_string(),
            CandidateStatus::EmbeddingUndetermined { .. } => "undetermined".to_string(),
        };
        *out.entry(key).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_configs() {
        assert_eq!(SingularityConfig::parse("10A1").unwrap().rank(), 10);
        assert_eq!(SingularityConfig::parse("E7+2A1+D4").unwrap().to_string(), "A1^2+D4+E7");
        assert!(SingularityConfig::parse("A17").is_err());
        assert!(SingularityConfig::parse("X2").is_err());
    }

    #[test]
    fn bidegree() {
        assert_eq!(discriminant_bidegree(5).unwrap(), (8, 20));
        assert_eq!(discriminant_bidegree(2).unwrap(), (2, 2));
        assert!(discriminant_bidegree(1).is_err());
    }

    #[test]
    fn roots_in_m() {
        let m = GramLattice::m();
        let basis: Vec<Vec<i64>> = (0..6).map(|i| (0..6).map(|j| i64::from(i == j)).collect()).collect();
        assert_eq!(classify_root(&m, &basis, &[0, 1, 0, 0, 0, 0]).unwrap(), RootKind::Infinity);
        assert!(classify_root(&m, &basis, &[1, 0, 0, 0, 0, 0]).is_err());
    }

    #[test]
    fn subdiagrams() {
        let p = |s| SingularityConfig::parse(s).unwrap();
        assert!(is_subdiagram(&p("A11"), &p("A12")));
        assert!(is_subdiagram(&p("9A1"), &p("10A1")));
        assert!(is_subdiagram(&p("A1+A2"), &p("A4")));
        assert!(!is_subdiagram(&p("A1+A3"), &p("A4")));
        assert!(is_subdiagram(&p("3A1"), &p("D4")));
        assert!(!is_subdiagram(&p("4A1"), &p("D4")));
    }

    #[test]
    fn strata_rows() {
        for r in strata() {
            let rep = verify_stratum(&r).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
    }
}
