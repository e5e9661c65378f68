//! Primitive embeddings into the K3 lattice `U³ ⊕ E8²` and genus comparison.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::discriminant::{discriminant_form, is_isometric, FiniteQuadraticForm};
use super::{GramLattice, LatticeError, Signature};
use crate::rational::Q;

const K3_RANK: usize = 22;
const K3_POSITIVE: usize = 3;
const K3_NEGATIVE: usize = 19;

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum EmbeddingVerdict {
    Yes {
        reason: String,
        /// An orthogonal complement with discriminant form `-q_N`, when one was found.
        complement: Option<GramLattice>,
    },
    No {
        reason: String,
    },
    Undetermined {
        reason: String,
    },
}

impl EmbeddingVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, EmbeddingVerdict::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, EmbeddingVerdict::No { .. })
    }

    pub fn reason(&self) -> &str {
        match self {
            EmbeddingVerdict::Yes { reason, .. }
            | EmbeddingVerdict::No { reason }
            | EmbeddingVerdict::Undetermined { reason } => reason,
        }
    }
}

/// Building blocks tried as orthogonal complements.
#[derive(Debug, Clone)]
pub struct ComplementCatalog {
    atoms: Vec<GramLattice>,
    /// Upper bound on candidate sums examined.
    pub budget: usize,
}

impl Default for ComplementCatalog {
    fn default() -> Self {
        let mut atoms = vec![GramLattice::u()];
        for n in 2..=6 {
            atoms.push(GramLattice::u_scaled(n));
        }
        for k in 1..=13 {
            atoms.push(GramLattice::rank_one(2 * k).unwrap());
            atoms.push(GramLattice::rank_one(-2 * k).unwrap());
        }
        for n in 1..=8 {
            atoms.push(GramLattice::a(n));
        }
        for n in 4..=8 {
            atoms.push(GramLattice::d(n));
        }
        for n in 6..=8 {
            atoms.push(GramLattice::e(n));
        }
        // Binary even forms with small entries, positive, negative and indefinite.
        for a in -6i64..=6 {
            for c in a..=6 {
                for b in 0..=6i64 {
                    if a == 0 && c == 0 {
                        continue;
                    }
                    let g = vec![vec![2 * a, b], vec![b, 2 * c]];
                    if 4 * a * c - b * b == 0 {
                        continue;
                    }
                    let l = GramLattice::new(g).unwrap();
                    let name = format!("[{},{};{},{}]", 2 * a, b, b, 2 * c);
                    atoms.push(l.with_name(&name));
                }
            }
        }
        ComplementCatalog { atoms, budget: 20_000 }
    }
}

impl ComplementCatalog {
    pub fn with_atom(mut self, atom: GramLattice) -> Self {
        self.atoms.push(atom);
        self
    }

    pub fn atoms(&self) -> &[GramLattice] {
        &self.atoms
    }

    /// First sum of atoms with the given signature and discriminant form `target`.
    ///
    /// Atoms are merged when they share signature and discriminant form, since only the
    /// genus of the sum matters. The search prunes on the prime-power decomposition of
    /// the group and compares value histograms before trying an isometry.
    pub fn find(&self, signature: (usize, usize), target: &FiniteQuadraticForm) -> Result<Option<GramLattice>, LatticeError> {
        let order = target.order() as i128;
        let want = prime_powers(target);
        let mut usable: Vec<Atom> = Vec::new();
        for a in &self.atoms {
            let s = a.signature();
            if s.zero != 0 || s.positive > signature.0 || s.negative > signature.1 || order % a.det().abs() != 0 {
                continue;
            }
            let form = discriminant_form(a)?.form;
            let powers = prime_powers(&form);
            if !fits(&powers, &want) {
                continue;
            }
            let mut duplicate = false;
            for u in &usable {
                if u.lattice.signature() == s && u.powers == powers && is_isometric(&u.form, &form)? {
                    duplicate = true;
                    break;
                }
            }
            if !duplicate {
                usable.push(Atom {
                    lattice: a.clone(),
                    histogram: histogram(&form),
                    form,
                    powers,
                });
            }
        }
        let goal = histogram(target);
        let mut state = SearchState {
            atoms: &usable,
            target,
            goal: &goal,
            tried: 0,
            budget: self.budget,
            chosen: Vec::new(),
        };
        state.search(0, signature, &want, &[(Q::zero(), 1u64)].into_iter().collect())
    }
}

struct Atom {
    lattice: GramLattice,
    form: FiniteQuadraticForm,
    powers: BTreeMap<u64, usize>,
    histogram: BTreeMap<Q, u64>,
}

struct SearchState<'a> {
    atoms: &'a [Atom],
    target: &'a FiniteQuadraticForm,
    goal: &'a BTreeMap<Q, u64>,
    tried: usize,
    budget: usize,
    chosen: Vec<usize>,
}

impl SearchState<'_> {
    fn search(
        &mut self,
        from: usize,
        left: (usize, usize),
        powers_left: &BTreeMap<u64, usize>,
        hist: &BTreeMap<Q, u64>,
    ) -> Result<Option<GramLattice>, LatticeError> {
        if left == (0, 0) {
            if !powers_left.is_empty() || hist != self.goal {
                return Ok(None);
            }
            self.tried += 1;
            if self.tried > self.budget {
                return Err(LatticeError::Budget("complement catalog".into()));
            }
            let form = self
                .chosen
                .iter()
                .fold(FiniteQuadraticForm::trivial(), |acc, &i| acc.direct_sum(&self.atoms[i].form));
            if is_isometric(&form, self.target)? {
                let parts: Vec<GramLattice> = self.chosen.iter().map(|&i| self.atoms[i].lattice.clone()).collect();
                return Ok(Some(GramLattice::sum_of(&parts)));
            }
            return Ok(None);
        }
        for i in from..self.atoms.len() {
            let atom = &self.atoms[i];
            let s = atom.lattice.signature();
            if s.positive > left.0 || s.negative > left.1 || !fits(&atom.powers, powers_left) {
                continue;
            }
            let mut rest = powers_left.clone();
            for (p, c) in &atom.powers {
                let e = rest.get_mut(p).expect("fits");
                *e -= c;
                if *e == 0 {
                    rest.remove(p);
                }
            }
            let next_hist = convolve(hist, &atom.histogram);
            self.chosen.push(i);
            let found = self.search(i, (left.0 - s.positive, left.1 - s.negative), &rest, &next_hist)?;
            self.chosen.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

/// Cyclic prime-power factors of the group with multiplicities.
fn prime_powers(form: &FiniteQuadraticForm) -> BTreeMap<u64, usize> {
    let mut out = BTreeMap::new();
    for d in form.invariant_factors() {
        let mut m = d;
        let mut p = 2;
        while m > 1 {
            if m % p == 0 {
                let mut pp = 1;
                while m % p == 0 {
                    m /= p;
                    pp *= p;
                }
                *out.entry(pp).or_insert(0) += 1;
            }
            p += 1;
        }
    }
    out
}

fn fits(part: &BTreeMap<u64, usize>, whole: &BTreeMap<u64, usize>) -> bool {
    part.iter().all(|(p, c)| whole.get(p).is_some_and(|w| w >= c))
}

/// Number of elements with each value of `q`.
fn histogram(form: &FiniteQuadraticForm) -> BTreeMap<Q, u64> {
    let mut out = BTreeMap::new();
    for x in form.elements() {
        *out.entry(form.q_value(&x)).or_insert(0) += 1;
    }
    out
}

fn convolve(a: &BTreeMap<Q, u64>, b: &BTreeMap<Q, u64>) -> BTreeMap<Q, u64> {
    let two = Q::from_integer(2);
    let mut out = BTreeMap::new();
    for (x, m) in a {
        for (y, n) in b {
            let mut v = x + y;
            if v >= two {
                v -= two;
            }
            *out.entry(v).or_insert(0) += m * n;
        }
    }
    out
}

/// Decides whether `n` embeds primitively into the even unimodular lattice of signature
/// `(3, 19)`, with the default complement catalog.
pub fn embeds_primitively_k3(n: &GramLattice) -> Result<EmbeddingVerdict, LatticeError> {
    embeds_primitively_k3_with(n, &ComplementCatalog::default())
}

pub fn embeds_primitively_k3_with(n: &GramLattice, catalog: &ComplementCatalog) -> Result<EmbeddingVerdict, LatticeError> {
    let sig = n.signature();
    if sig.zero > 0 {
        return Err(LatticeError::Degenerate);
    }
    if sig.positive > K3_POSITIVE || sig.negative > K3_NEGATIVE {
        return Ok(EmbeddingVerdict::No {
            reason: format!("signature {sig} does not fit in (3,19)"),
        });
    }
    let disc = discriminant_form(n)?;
    let length = disc.form.length();
    let rank = n.rank();
    if length > K3_RANK - rank {
        return Ok(EmbeddingVerdict::No {
            reason: format!("length obstruction: l(A_N) = {length} > {} = 22 - rank", K3_RANK - rank),
        });
    }
    if rank + length + 2 <= K3_RANK && sig.positive < K3_POSITIVE && sig.negative < K3_NEGATIVE {
        return Ok(EmbeddingVerdict::Yes {
            reason: format!("rank {rank} + l(A_N) {length} + 2 <= 22"),
            complement: None,
        });
    }
    let want = (K3_POSITIVE - sig.positive, K3_NEGATIVE - sig.negative);
    let target = disc.form.negated();
    if want == (0, 0) {
        return Ok(if target.order() == 1 {
            EmbeddingVerdict::Yes {
                reason: "unimodular of full rank".into(),
                complement: None,
            }
        } else {
            EmbeddingVerdict::No {
                reason: "full rank but not unimodular".into(),
            }
        });
    }
    let found = match catalog.find(want, &target) {
        Err(LatticeError::Budget(_)) => {
            return Ok(EmbeddingVerdict::Undetermined {
                reason: "complement catalog budget exhausted".into(),
            })
        }
        other => other?,
    };
    match found {
        Some(k) => Ok(EmbeddingVerdict::Yes {
            reason: format!("complement {} of signature {} has discriminant form -q_N", k.name(), k.signature()),
            complement: Some(k),
        }),
        None => Ok(EmbeddingVerdict::Undetermined {
            reason: format!(
                "no complement of signature ({},{}) with form -q_N in the catalog",
                want.0, want.1
            ),
        }),
    }
}

/// Same signature and isometric discriminant forms.
pub fn in_genus(a: &GramLattice, b: &GramLattice) -> Result<bool, LatticeError> {
    let (sa, sb): (Signature, Signature) = (a.signature(), b.signature());
    if sa != sb {
        return Ok(false);
    }
    if a.det() != b.det() {
        return Ok(false);
    }
    let fa = discriminant_form(a)?.form;
    let fb = discriminant_form(b)?.form;
    is_isometric(&fa, &fb)
}
