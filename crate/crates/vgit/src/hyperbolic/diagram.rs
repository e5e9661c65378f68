//! Coxeter diagrams of root sets and their parabolic subdiagrams.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::lattice::intmat;
use crate::lattice::GramLattice;

/// Bitset over diagram nodes.
pub type NodeSet = u128;

/// Diagrams are limited to this many nodes.
pub const MAX_NODES: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    /// Dihedral angle π/3.
    Simple,
    /// π/4.
    Double,
    /// π/6.
    Triple,
    /// Parallel walls: the rank-2 sublattice is degenerate.
    Infinite,
    /// Ultraparallel walls: the rank-2 sublattice is indefinite.
    Dotted,
    /// Any other positive pairing.
    Other,
}

impl EdgeKind {
    /// Classifies by `cos² = p² / (|a²| |b²|)` for pairing `p`.
    pub fn from_pairing(pairing: i64, norm_a: i64, norm_b: i64) -> Option<EdgeKind> {
        if pairing == 0 {
            return None;
        }
        let p2 = i128::from(pairing) * i128::from(pairing);
        let nn = i128::from(norm_a.abs()) * i128::from(norm_b.abs());
        Some(if 4 * p2 == nn {
            EdgeKind::Simple
        } else if 2 * p2 == nn {
            EdgeKind::Double
        } else if 4 * p2 == 3 * nn {
            EdgeKind::Triple
        } else if p2 == nn {
            EdgeKind::Infinite
        } else if p2 > nn {
            EdgeKind::Dotted
        } else {
            EdgeKind::Other
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Node {
    pub root: Vec<i64>,
    pub norm: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub pairing: i64,
    pub kind: EdgeKind,
}

/// The labelled graph on a set of roots.
#[derive(Debug, Clone, Serialize)]
pub struct CoxeterDiagram {
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    #[serde(skip)]
    gram: Vec<Vec<i64>>,
    #[serde(skip)]
    neighbours: Vec<NodeSet>,
}

impl CoxeterDiagram {
    /// # Panics
    /// If there are more than [`MAX_NODES`] roots.
    pub fn from_roots(lattice: &GramLattice, roots: &[Vec<i64>]) -> Self {
        let gram: Vec<Vec<i64>> = roots
            .iter()
            .map(|a| roots.iter().map(|b| lattice.dot(a, b)).collect())
            .collect();
        let mut d = CoxeterDiagram::from_gram(gram);
        for (node, r) in d.nodes.iter_mut().zip(roots) {
            node.root = r.clone();
        }
        d
    }

    /// A diagram given only by the Gram matrix of its roots.
    pub fn from_gram(gram: Vec<Vec<i64>>) -> Self {
        let n = gram.len();
        assert!(n <= MAX_NODES, "diagram has {n} nodes, more than {MAX_NODES}");
        let nodes = (0..n)
            .map(|i| Node {
                root: Vec::new(),
                norm: gram[i][i],
            })
            .collect();
        let mut edges = Vec::new();
        let mut neighbours = vec![0 as NodeSet; n];
        for i in 0..n {
            for j in i + 1..n {
                if let Some(kind) = EdgeKind::from_pairing(gram[i][j], gram[i][i], gram[j][j]) {
                    edges.push(Edge {
                        a: i,
                        b: j,
                        pairing: gram[i][j],
                        kind,
                    });
                    neighbours[i] |= 1 << j;
                    neighbours[j] |= 1 << i;
                }
            }
        }
        CoxeterDiagram {
            nodes,
            edges,
            gram,
            neighbours,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn neighbours(&self, i: usize) -> NodeSet {
        self.neighbours[i]
    }

    pub fn edge(&self, i: usize, j: usize) -> Option<EdgeKind> {
        EdgeKind::from_pairing(self.gram[i][j], self.gram[i][i], self.gram[j][j])
    }

    fn sub_gram(&self, set: NodeSet) -> Vec<Vec<i128>> {
        let idx = members(set);
        idx.iter()
            .map(|&i| idx.iter().map(|&j| i128::from(self.gram[i][j])).collect())
            .collect()
    }

    /// Graphviz rendering; norms other than -2 are shown in the node labels.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph coxeter {\n  node [shape=circle];\n");
        for (i, n) in self.nodes.iter().enumerate() {
            if n.norm == -2 {
                out.push_str(&format!("  {i};\n"));
            } else {
                out.push_str(&format!("  {i} [label=\"{i}\\n{}\"];\n", n.norm));
            }
        }
        for e in &self.edges {
            let attr = match e.kind {
                EdgeKind::Simple => String::new(),
                EdgeKind::Double => " [label=\"4\"]".into(),
                EdgeKind::Triple => " [label=\"6\"]".into(),
                EdgeKind::Infinite => " [label=\"∞\", penwidth=3]".into(),
                EdgeKind::Dotted => " [style=dotted]".into(),
                EdgeKind::Other => format!(" [label=\"{}\"]", e.pairing),
            };
            out.push_str(&format!("  {} -- {}{attr};\n", e.a, e.b));
        }
        out.push_str("}\n");
        out
    }
}

pub fn members(set: NodeSet) -> Vec<usize> {
    (0..MAX_NODES).filter(|&i| set >> i & 1 == 1).collect()
}

fn bit(i: usize) -> NodeSet {
    1 << i
}

/// Type of a connected affine diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum AffineType {
    A(usize),
    D(usize),
    E(usize),
    /// Not simply laced; identified only by its node count.
    Other(usize),
}

impl AffineType {
    /// Rank of the underlying finite root system.
    pub fn rank(&self) -> usize {
        match *self {
            AffineType::A(n) | AffineType::D(n) | AffineType::E(n) => n,
            AffineType::Other(nodes) => nodes - 1,
        }
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineType::A(n) => write!(f, "A~{n}"),
            AffineType::D(n) => write!(f, "D~{n}"),
            AffineType::E(n) => write!(f, "E~{n}"),
            AffineType::Other(n) => write!(f, "X~{}", n - 1),
        }
    }
}

/// `A~1^5+E~7` style description of a multiset of affine types.
pub fn format_affine(types: &[AffineType]) -> String {
    let mut sorted = types.to_vec();
    sorted.sort();
    let mut parts = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        if j - i > 1 {
            parts.push(format!("{}^{}", sorted[i], j - i));
        } else {
            parts.push(sorted[i].to_string());
        }
        i = j;
    }
    parts.join("+")
}

#[derive(Debug, Clone, Serialize)]
pub struct AffineComponent {
    pub nodes: Vec<usize>,
    pub kind: AffineType,
    #[serde(skip)]
    pub set: NodeSet,
}

/// Names a connected parabolic subdiagram by its shape.
fn affine_type(diag: &CoxeterDiagram, set: NodeSet) -> AffineType {
    let idx = members(set);
    let n = idx.len();
    let simply_laced = idx.iter().all(|&i| diag.nodes[i].norm == -2)
        && idx.iter().all(|&i| {
            idx.iter()
                .all(|&j| i == j || matches!(diag.gram[i][j], 0 | 1) || (n == 2 && diag.gram[i][j] == 2))
        });
    if !simply_laced {
        return AffineType::Other(n);
    }
    if n == 2 {
        return AffineType::A(1);
    }
    let degree: Vec<usize> = idx.iter().map(|&i| (diag.neighbours[i] & set).count_ones() as usize).collect();
    let edges: usize = degree.iter().sum::<usize>() / 2;
    if edges == n {
        return AffineType::A(n - 1);
    }
    let branch: Vec<usize> = (0..n).filter(|&k| degree[k] >= 3).collect();
    if branch.len() == 2 || degree.contains(&4) {
        return AffineType::D(n - 1);
    }
    // One trivalent node: arm lengths decide.
    let centre = idx[branch[0]];
    let mut arms: Vec<usize> = Vec::new();
    for start in members(diag.neighbours[centre] & set) {
        let (mut prev, mut at, mut len) = (centre, start, 1);
        loop {
            let next = members(diag.neighbours[at] & set & !bit(prev));
            match next.as_slice() {
                [m] => {
                    prev = at;
                    at = *m;
                    len += 1;
                }
                _ => break,
            }
        }
        arms.push(len);
    }
    arms.sort();
    match arms.as_slice() {
        [1, 1, _] => AffineType::D(n - 1),
        [2, 2, 2] => AffineType::E(6),
        [1, 3, 3] => AffineType::E(7),
        [1, 2, 5] => AffineType::E(8),
        _ => AffineType::Other(n),
    }
}

/// Connected node sets whose Gram matrix is negative definite.
fn connected_elliptic(diag: &CoxeterDiagram) -> Vec<NodeSet> {
    let mut found: Vec<NodeSet> = Vec::new();
    let mut seen: std::collections::HashSet<NodeSet> = std::collections::HashSet::new();
    let mut frontier: Vec<NodeSet> = Vec::new();
    for i in 0..diag.len() {
        if diag.nodes[i].norm < 0 {
            frontier.push(bit(i));
            seen.insert(bit(i));
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for set in frontier {
            found.push(set);
            let boundary = members(set).iter().fold(0, |acc, &i| acc | diag.neighbours[i]) & !set;
            for j in members(boundary) {
                let grown = set | bit(j);
                if seen.insert(grown) && is_negative_definite(&diag.sub_gram(grown)) {
                    next.push(grown);
                }
            }
        }
        frontier = next;
    }
    found
}

fn is_negative_definite(g: &[Vec<i128>]) -> bool {
    let (_, neg, _) = intmat::inertia(&g.to_vec());
    neg == g.len()
}

/// Connected parabolic subdiagrams, each an elliptic connected set plus one neighbour.
pub fn connected_parabolic(diag: &CoxeterDiagram) -> Vec<AffineComponent> {
    let mut out: BTreeMap<NodeSet, ()> = BTreeMap::new();
    for set in connected_elliptic(diag) {
        let boundary = members(set).iter().fold(0, |acc, &i| acc | diag.neighbours[i]) & !set;
        for j in members(boundary) {
            let grown = set | bit(j);
            if out.contains_key(&grown) {
                continue;
            }
            let (pos, _, zero) = intmat::inertia(&diag.sub_gram(grown));
            if pos == 0 && zero == 1 {
                out.insert(grown, ());
            }
        }
    }
    out.into_keys()
        .map(|set| AffineComponent {
            nodes: members(set),
            kind: affine_type(diag, set),
            set,
        })
        .collect()
}

/// A parabolic subdiagram: pairwise disconnected connected parabolic components.
#[derive(Debug, Clone, Serialize)]
pub struct ParabolicSubdiagram {
    pub components: Vec<AffineComponent>,
}

impl ParabolicSubdiagram {
    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.nodes.len() - 1).sum()
    }

    pub fn type_string(&self) -> String {
        format_affine(&self.components.iter().map(|c| c.kind).collect::<Vec<_>>())
    }

    pub fn nodes(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.components.iter().flat_map(|c| c.nodes.iter().copied()).collect();
        v.sort();
        v
    }
}

/// Parabolic subdiagrams of one type, up to the choice of nodes.
#[derive(Debug, Clone, Serialize)]
pub struct ParabolicClass {
    pub types: String,
    pub rank: usize,
    pub members: Vec<ParabolicSubdiagram>,
}

/// All parabolic subdiagrams of the given rank.
pub fn parabolic_of_rank(diag: &CoxeterDiagram, rank: usize) -> Vec<ParabolicSubdiagram> {
    let comps = connected_parabolic(diag);
    let nbr: Vec<NodeSet> = comps
        .iter()
        .map(|c| c.nodes.iter().fold(0, |acc, &i| acc | diag.neighbours[i]))
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    combine(&comps, &nbr, 0, 0, 0, rank, &mut chosen, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn combine(
    comps: &[AffineComponent],
    nbr: &[NodeSet],
    from: usize,
    used: NodeSet,
    have: usize,
    want: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<ParabolicSubdiagram>,
) {
    if have == want {
        if !chosen.is_empty() {
            out.push(ParabolicSubdiagram {
                components: chosen.iter().map(|&i| comps[i].clone()).collect(),
            });
        }
        return;
    }
    for i in from..comps.len() {
        let r = comps[i].nodes.len() - 1;
        if have + r > want || comps[i].set & used != 0 || nbr[i] & used != 0 {
            continue;
        }
        chosen.push(i);
        combine(comps, nbr, i + 1, used | comps[i].set, have + r, want, chosen, out);
        chosen.pop();
    }
}

/// Parabolic subdiagrams of the given rank, grouped by type multiset.
pub fn parabolic_subdiagrams(diag: &CoxeterDiagram, rank: usize) -> Vec<ParabolicClass> {
    let mut classes: BTreeMap<String, Vec<ParabolicSubdiagram>> = BTreeMap::new();
    for p in parabolic_of_rank(diag, rank) {
        classes.entry(p.type_string()).or_default().push(p);
    }
    classes
        .into_iter()
        .map(|(types, members)| ParabolicClass { types, rank, members })
        .collect()
}

/// Every connected parabolic subdiagram is a component of a parabolic subdiagram of
/// rank `rank`, and at least one such subdiagram exists.
pub fn stop_condition(diag: &CoxeterDiagram, rank: usize) -> bool {
    let comps = connected_parabolic(diag);
    if comps.is_empty() {
        return false;
    }
    let full = parabolic_of_rank(diag, rank);
    let covered: std::collections::HashSet<NodeSet> =
        full.iter().flat_map(|p| p.components.iter().map(|c| c.set)).collect();
    comps.iter().all(|c| covered.contains(&c.set))
}

/// Primitive positive null vector of a connected parabolic component, as coefficients on
/// its nodes.
pub fn null_coefficients(diag: &CoxeterDiagram, comp: &AffineComponent) -> Vec<i64> {
    let g = diag.sub_gram(comp.set);
    let k = intmat::kernel(&g, g.len());
    assert_eq!(k.len(), 1, "connected parabolic component has a one-dimensional kernel");
    let mut c = k[0].clone();
    let gcd = intmat::gcd_all(&c);
    for x in c.iter_mut() {
        *x /= gcd;
    }
    if c.iter().any(|&x| x < 0) {
        for x in c.iter_mut() {
            *x = -*x;
        }
    }
    c.into_iter().map(|x| x as i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diagram(l: &GramLattice) -> CoxeterDiagram {
        CoxeterDiagram::from_gram(l.gram().to_vec())
    }

    /// Gram matrix of the extended diagram of a root lattice: simple roots plus minus the
    /// highest root, in a degenerate ambient form.
    fn extended(l: &GramLattice, highest: &[i64]) -> CoxeterDiagram {
        let n = l.rank();
        let mut roots: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        roots.push(highest.iter().map(|x| -x).collect());
        let gram = roots.iter().map(|a| roots.iter().map(|b| l.dot(a, b)).collect()).collect();
        CoxeterDiagram::from_gram(gram)
    }

    #[test]
    fn e8_is_elliptic() {
        let d = diagram(&GramLattice::e(8));
        assert!(connected_parabolic(&d).is_empty());
    }

    #[test]
    fn affine_e8() {
        // Highest root of E8 in the T(2,3,5) basis: centre 0, arms [1], [2,3], [4..7].
        let l = GramLattice::e(8);
        let roots = crate::lattice::roots(&l).unwrap();
        let highest = roots
            .roots
            .iter()
            .filter(|r| r.iter().all(|&x| x >= 0))
            .max_by_key(|r| r.iter().sum::<i64>())
            .unwrap()
            .clone();
        let d = extended(&l, &highest);
        let classes = parabolic_subdiagrams(&d, 8);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].types, "E~8");
        assert!(stop_condition(&d, 8));
        let comp = &classes[0].members[0].components[0];
        let c = null_coefficients(&d, comp);
        assert_eq!(c.iter().sum::<i64>(), 30);
    }

    #[test]
    fn infinite_pair() {
        let d = CoxeterDiagram::from_gram(vec![vec![-2, 2], vec![2, -2]]);
        assert_eq!(d.edges[0].kind, EdgeKind::Infinite);
        let classes = parabolic_subdiagrams(&d, 1);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].types, "A~1");
        assert!(d.to_dot().contains("∞"));
    }

    #[test]
    fn edge_kinds() {
        assert_eq!(EdgeKind::from_pairing(1, -2, -2), Some(EdgeKind::Simple));
        assert_eq!(EdgeKind::from_pairing(2, -2, -4), Some(EdgeKind::Double));
        assert_eq!(EdgeKind::from_pairing(3, -2, -6), Some(EdgeKind::Triple));
        assert_eq!(EdgeKind::from_pairing(4, -4, -4), Some(EdgeKind::Infinite));
        assert_eq!(EdgeKind::from_pairing(3, -2, -2), Some(EdgeKind::Dotted));
        assert_eq!(EdgeKind::from_pairing(0, -2, -2), None);
    }
}
