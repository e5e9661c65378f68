//! Root systems of negative definite even lattices.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::reduce::short_vectors;
use super::{GramLattice, LatticeError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

/// An irreducible simply laced root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AdeType {
    pub family: Family,
    pub rank: usize,
}

impl AdeType {
    pub fn new(family: Family, rank: usize) -> Self {
        AdeType { family, rank }
    }

    pub fn a(n: usize) -> Self {
        AdeType::new(Family::A, n)
    }

    pub fn d(n: usize) -> Self {
        AdeType::new(Family::D, n)
    }

    pub fn e(n: usize) -> Self {
        AdeType::new(Family::E, n)
    }

    /// Number of roots.
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1),
            Family::D => 2 * n * (n - 1),
            Family::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
        }
    }

    /// The root lattice with the standard basis.
    pub fn lattice(&self) -> GramLattice {
        match self.family {
            Family::A => GramLattice::a(self.rank),
            Family::D => GramLattice::d(self.rank),
            Family::E => GramLattice::e(self.rank),
        }
    }

    /// Parses `A3`, `D10`, `E7`.
    pub fn parse(text: &str) -> Option<Self> {
        let text = text.trim();
        let family = match text.chars().next()? {
            'A' => Family::A,
            'D' => Family::D,
            'E' => Family::E,
            _ => return None,
        };
        let rank: usize = text[1..].parse().ok()?;
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        ok.then_some(AdeType { family, rank })
    }
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

/// Formats a sorted multiset of types as `A1^5+E7`.
pub fn format_types(types: &[AdeType]) -> String {
    if types.is_empty() {
        return "0".into();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < types.len() {
        let mut j = i;
        while j < types.len() && types[j] == types[i] {
            j += 1;
        }
        if j - i > 1 {
            parts.push(format!("{}^{}", types[i], j - i));
        } else {
            parts.push(types[i].to_string());
        }
        i = j;
    }
    parts.join("+")
}

/// Roots, a simple system and the ADE decomposition.
#[derive(Debug, Clone, Serialize)]
pub struct RootSystemReport {
    pub roots: Vec<Vec<i64>>,
    pub simple_roots: Vec<Vec<i64>>,
    /// Sorted.
    pub components: Vec<AdeType>,
}

impl RootSystemReport {
    pub fn count(&self) -> usize {
        self.roots.len()
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    pub fn type_string(&self) -> String {
        format_types(&self.components)
    }

    /// Classifies a root set given by vectors in `l`. The set must be closed under
    /// negation and under the reflections it generates.
    pub fn from_roots(l: &GramLattice, mut roots: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        roots.sort();
        let simple_roots = simple_system(l, &roots);
        let components = classify(l, &simple_roots)?;
        let expected: usize = components.iter().map(AdeType::root_count).sum();
        if expected != roots.len() {
            return Err(LatticeError::Budget(format!(
                "root count {} does not match type {}",
                roots.len(),
                format_types(&components)
            )));
        }
        Ok(RootSystemReport {
            roots,
            simple_roots,
            components,
        })
    }
}

/// All vectors of norm `-2` of a negative definite lattice, classified.
pub fn roots(l: &GramLattice) -> Result<RootSystemReport, LatticeError> {
    if !l.is_negative_definite() {
        return Err(LatticeError::NotNegativeDefinite);
    }
    let neg: Vec<Vec<i64>> = l.gram().iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    let vs = short_vectors(&neg, 2)?;
    // Even lattice: the only non-zero norms at most 2 are exactly 2.
    RootSystemReport::from_roots(l, vs)
}

/// Roots of the sublattice of `l` orthogonal to `vectors`, in the coordinates of `l`.
pub fn roots_orthogonal_to(l: &GramLattice, vectors: &[Vec<i64>]) -> Result<RootSystemReport, LatticeError> {
    let basis = l.orthogonal_complement(vectors);
    let sub = l.sublattice(&basis)?;
    let inner = roots(&sub)?;
    let lift = |v: &Vec<i64>| -> Vec<i64> {
        let mut out = vec![0i64; l.rank()];
        for (c, b) in v.iter().zip(&basis) {
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        out
    };
    let mut roots: Vec<Vec<i64>> = inner.roots.iter().map(lift).collect();
    roots.sort();
    let mut simple_roots: Vec<Vec<i64>> = inner.simple_roots.iter().map(lift).collect();
    simple_roots.sort();
    Ok(RootSystemReport {
        roots,
        simple_roots,
        components: inner.components,
    })
}

fn simple_system(l: &GramLattice, roots: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if roots.is_empty() {
        return Vec::new();
    }
    let n = l.rank();
    // A functional that vanishes on no root.
    let mut seed: i64 = 1;
    let functional = loop {
        let f: Vec<i64> = (0..n as i64).map(|i| 1 + seed * (i + 1) + (i * i * 7919 + seed) % 104_729).collect();
        if roots.iter().all(|r| dot(&f, r) != 0) {
            break f;
        }
        seed += 1;
    };
    let positive: Vec<&Vec<i64>> = roots.iter().filter(|r| dot(&functional, r) > 0).collect();
    let set: HashSet<&Vec<i64>> = positive.iter().copied().collect();
    let mut simple: Vec<Vec<i64>> = positive
        .iter()
        .filter(|r| {
            !positive.iter().any(|a| {
                let diff: Vec<i64> = r.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
                set.contains(&diff)
            })
        })
        .map(|r| (*r).clone())
        .collect();
    simple.sort();
    simple
}

fn dot(f: &[i64], x: &[i64]) -> i128 {
    f.iter().zip(x).map(|(a, b)| *a as i128 * *b as i128).sum()
}

/// ADE type of each connected component of the Dynkin graph of `simple`.
fn classify(l: &GramLattice, simple: &[Vec<i64>]) -> Result<Vec<AdeType>, LatticeError> {
    let k = simple.len();
    let mut adj = vec![Vec::new(); k];
    for i in 0..k {
        for j in i + 1..k {
            match l.dot(&simple[i], &simple[j]) {
                0 => {}
                1 => {
                    adj[i].push(j);
                    adj[j].push(i);
                }
                v => {
                    return Err(LatticeError::Budget(format!("simple roots pair to {v}, not a simply laced system")));
                }
            }
        }
    }
    let mut seen = vec![false; k];
    let mut out = Vec::new();
    for start in 0..k {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut at = 0;
        while at < comp.len() {
            for &j in &adj[comp[at]] {
                if !seen[j] {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            at += 1;
        }
        out.push(component_type(&adj, &comp)?);
    }
    out.sort();
    Ok(out)
}

pub(crate) fn component_type(adj: &[Vec<usize>], comp: &[usize]) -> Result<AdeType, LatticeError> {
    let n = comp.len();
    let edges: usize = comp.iter().map(|&i| adj[i].len()).sum::<usize>() / 2;
    let bad = || LatticeError::Budget("Dynkin graph is not of type ADE".into());
    if edges != n - 1 {
        return Err(bad());
    }
    let branch: Vec<usize> = comp.iter().copied().filter(|&i| adj[i].len() >= 3).collect();
    match branch.as_slice() {
        [] => Ok(AdeType::a(n)),
        [centre] if adj[*centre].len() == 3 => {
            let mut arms: Vec<usize> = adj[*centre]
                .iter()
                .map(|&first| {
                    let (mut prev, mut cur, mut len) = (*centre, first, 1);
                    while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Ok(AdeType::d(n)),
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => Ok(AdeType::e(n)),
                _ => Err(bad()),
            }
        }
        _ => Err(bad()),
    }
}
