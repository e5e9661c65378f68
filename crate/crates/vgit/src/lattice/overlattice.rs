//! Even overlattices via isotropic subgroups of the discriminant group.

use std::collections::{HashMap, HashSet};

use num_traits::Zero;
use serde::Serialize;

use super::discriminant::{discriminant_form, DiscriminantGroup, Element, FiniteQuadraticForm};
use super::intmat::{self, QBig};
use super::{GramLattice, LatticeError};

/// An even overlattice `L ⊆ N ⊆ L*` with `N/L = H`.
#[derive(Debug, Clone, Serialize)]
pub struct Overlattice {
    /// Sorted elements of `H`, including zero.
    pub subgroup: Vec<Element>,
    /// Generators of `H` in the order they were added.
    pub generators: Vec<Element>,
    /// Basis of `N` as rows in the rational coordinates of `L`.
    #[serde(skip)]
    pub basis: Vec<Vec<QBig>>,
    pub lattice: GramLattice,
}

impl Overlattice {
    pub fn order(&self) -> usize {
        self.subgroup.len()
    }

    /// Coordinates in the basis of `N` of an integer vector of `L`.
    pub fn coordinates(&self, x: &[i64]) -> Vec<i64> {
        let target: Vec<QBig> = x.iter().map(|&v| QBig::from_integer(v as i128)).collect();
        let y = intmat::solve_left(&self.basis, &target).expect("basis of N is invertible");
        y.iter()
            .map(|v| {
                assert!(v.is_integer(), "L ⊆ N");
                v.to_integer() as i64
            })
            .collect()
    }
}

type Filter<'a> = Box<dyn Fn(&FiniteQuadraticForm, &Element) -> bool + Sync + 'a>;

/// Configurable search over isotropic subgroups.
pub struct OverlatticeSearch<'a> {
    lattice: &'a GramLattice,
    disc: DiscriminantGroup,
    filter: Option<Filter<'a>>,
    cells: Vec<Vec<Vec<usize>>>,
    budget: usize,
}

impl<'a> OverlatticeSearch<'a> {
    pub fn new(lattice: &'a GramLattice) -> Result<Self, LatticeError> {
        let disc = discriminant_form(lattice)?;
        Ok(OverlatticeSearch {
            lattice,
            disc,
            filter: None,
            cells: Vec::new(),
            budget: 1_000_000,
        })
    }

    pub fn discriminant(&self) -> &DiscriminantGroup {
        &self.disc
    }

    /// Only subgroups all of whose non-zero elements satisfy `keep` are visited.
    /// Since the condition passes to subgroups, pruning is exact.
    pub fn hereditary_filter(mut self, keep: impl Fn(&FiniteQuadraticForm, &Element) -> bool + Sync + 'a) -> Self {
        self.filter = Some(Box::new(keep));
        self
    }

    /// Declares interchangeable groups of generators. Each cell is a list of slices
    /// (lists of generator indices of equal length) that an automorphism of the problem
    /// may permute. Results are then complete only up to these permutations.
    pub fn symmetric_slices(mut self, cells: Vec<Vec<Vec<usize>>>) -> Self {
        self.cells = cells;
        self
    }

    /// Cells of identical named blocks of the lattice, used for [`Self::symmetric_slices`].
    pub fn block_cells(&self) -> Vec<Vec<Vec<usize>>> {
        let form = &self.disc.form;
        let lifts = &self.disc.lifts;
        let owner = |g: usize| {
            let pos = lifts[g].iter().position(|x| !x.is_zero()).unwrap_or(0);
            self.lattice
                .blocks()
                .iter()
                .position(|b| pos >= b.offset && pos < b.offset + b.rank)
                .unwrap_or(0)
        };
        let blocks = self.lattice.blocks();
        let mut per_block: Vec<Vec<usize>> = vec![Vec::new(); blocks.len()];
        for g in 0..form.generator_count() {
            per_block[owner(g)].push(g);
        }
        let mut cells: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut used = vec![false; blocks.len()];
        for i in 0..blocks.len() {
            if used[i] || per_block[i].is_empty() {
                continue;
            }
            let mut cell = vec![per_block[i].clone()];
            used[i] = true;
            for j in i + 1..blocks.len() {
                if !used[j]
                    && blocks[j].name == blocks[i].name
                    && self.lattice_block_gram(j) == self.lattice_block_gram(i)
                {
                    used[j] = true;
                    cell.push(per_block[j].clone());
                }
            }
            if cell.len() > 1 {
                cells.push(cell);
            }
        }
        cells
    }

    fn lattice_block_gram(&self, b: usize) -> Vec<Vec<i64>> {
        let blk = &self.lattice.blocks()[b];
        (blk.offset..blk.offset + blk.rank)
            .map(|i| (blk.offset..blk.offset + blk.rank).map(|j| self.lattice.entry(i, j)).collect())
            .collect()
    }

    pub fn budget(mut self, nodes: usize) -> Self {
        self.budget = nodes;
        self
    }

    /// All isotropic subgroups (up to the declared symmetries), with their overlattices,
    /// sorted by order then elements. The trivial subgroup comes first.
    pub fn run(&self) -> Result<Vec<Overlattice>, LatticeError> {
        let form = &self.disc.form;
        let candidates: Vec<Element> = form
            .isotropic_elements()
            .into_iter()
            .filter(|x| self.filter.as_ref().is_none_or(|f| f(form, x)))
            .collect();
        let mut results: Vec<(Vec<u64>, Vec<Element>)> = Vec::new();
        let mut nodes = 0usize;
        let start = vec![0u64];
        results.push((start.clone(), Vec::new()));
        if self.cells.is_empty() {
            self.greedy(&candidates, &start, &mut Vec::new(), &mut results, &mut nodes)?;
        } else {
            self.orbits(&candidates, &mut results, &mut nodes)?;
        }
        let mut out: Vec<Overlattice> = results
            .into_iter()
            .map(|(idx, gens)| self.build(&idx, gens))
            .collect::<Result<_, _>>()?;
        out.sort_by(|a, b| {
            (a.order(), &a.subgroup).cmp(&(b.order(), &b.subgroup))
        });
        Ok(out)
    }

    /// One representative per orbit of subgroups under the cell permutations, grown one
    /// generator at a time. Every subgroup is reached: if `H' = ⟨H, x⟩` and `H = g R`
    /// for a stored `R`, then `g⁻¹ H' = ⟨R, g⁻¹ x⟩` is generated from `R`.
    fn orbits(
        &self,
        candidates: &[Element],
        results: &mut Vec<(Vec<u64>, Vec<Element>)>,
        nodes: &mut usize,
    ) -> Result<(), LatticeError> {
        let form = &self.disc.form;
        let in_cell: HashSet<usize> = self.cells.iter().flatten().flatten().copied().collect();
        let fixed: Vec<usize> = (0..form.generator_count()).filter(|g| !in_cell.contains(g)).collect();
        let mut index: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
        index.insert(invariant(form, &self.cells, &fixed, &results[0].0), vec![0]);
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for r in frontier {
                let (span, gens) = results[r].clone();
                let mut local: HashSet<Vec<u64>> = HashSet::new();
                for x in candidates {
                    if span.binary_search(&form.index(x)).is_ok() || !gens.iter().all(|g| form.b_scaled(g, x) == 0) {
                        continue;
                    }
                    let mut new_gens = gens.clone();
                    new_gens.push(x.clone());
                    let new_span = form.span(&new_gens);
                    if !local.insert(new_span.clone()) {
                        continue;
                    }
                    let ok = new_span.iter().all(|&i| {
                        let y = form.element(i);
                        i == 0 || (form.is_isotropic(&y) && self.filter.as_ref().is_none_or(|f| f(form, &y)))
                    });
                    if !ok {
                        continue;
                    }
                    *nodes += 1;
                    if *nodes > self.budget {
                        return Err(LatticeError::Budget(format!("more than {} subgroup nodes", self.budget)));
                    }
                    let inv = invariant(form, &self.cells, &fixed, &new_span);
                    let elems: Vec<Element> = new_span.iter().map(|&i| form.element(i)).collect();
                    let bucket = index.entry(inv).or_default();
                    if bucket
                        .iter()
                        .any(|&j| equivalent_under_cells(form, &self.cells, &results[j].1, &elems))
                    {
                        continue;
                    }
                    bucket.push(results.len());
                    next.push(results.len());
                    results.push((new_span, new_gens));
                }
            }
            frontier = next;
        }
        Ok(())
    }

    /// Visits each subgroup once through its greedy generator sequence: every new
    /// generator is the least element of the enlarged group outside the old one.
    fn greedy(
        &self,
        candidates: &[Element],
        current: &[u64],
        gens: &mut Vec<Element>,
        results: &mut Vec<(Vec<u64>, Vec<Element>)>,
        nodes: &mut usize,
    ) -> Result<(), LatticeError> {
        let form = &self.disc.form;
        let last = gens.last().map(|g| form.index(g));
        for x in candidates {
            let xi = form.index(x);
            if last.is_some_and(|l| xi <= l) || current.binary_search(&xi).is_ok() {
                continue;
            }
            if !gens.iter().all(|g| form.b_scaled(g, x) == 0) {
                continue;
            }
            *nodes += 1;
            if *nodes > self.budget {
                return Err(LatticeError::Budget(format!("more than {} subgroup nodes", self.budget)));
            }
            gens.push(x.clone());
            let span = form.span(gens);
            let fresh_min = span.iter().filter(|i| current.binary_search(i).is_err()).min();
            let ok = fresh_min == Some(&xi)
                && span.iter().all(|&i| {
                    let y = form.element(i);
                    i == 0 || (form.is_isotropic(&y) && self.filter.as_ref().is_none_or(|f| f(form, &y)))
                });
            if ok {
                results.push((span.clone(), gens.clone()));
                self.greedy(candidates, &span, gens, results, nodes)?;
            }
            gens.pop();
        }
        Ok(())
    }

    /// The overlattice for the subgroup spanned by `generators`, which must be isotropic.
    pub fn from_generators(&self, generators: &[Element]) -> Result<Overlattice, LatticeError> {
        let form = &self.disc.form;
        let span = form.span(generators);
        if !span.iter().all(|&i| form.is_isotropic(&form.element(i))) {
            return Err(LatticeError::NotIsotropic);
        }
        self.build(&span, generators.to_vec())
    }

    fn build(&self, subgroup: &[u64], generators: Vec<Element>) -> Result<Overlattice, LatticeError> {
        let form = &self.disc.form;
        let n = self.lattice.rank();
        let elements: Vec<Element> = subgroup.iter().map(|&i| form.element(i)).collect();
        let lifts: Vec<Vec<QBig>> = generators.iter().map(|g| self.disc.lift(g)).collect();
        let den = lifts.iter().map(|l| intmat::lcm_denominators(l)).fold(1i128, num_integer::lcm);
        let mut rows: Vec<Vec<i128>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { den } else { 0 }).collect())
            .collect();
        for l in &lifts {
            rows.push(l.iter().map(|x| (x * QBig::from_integer(den)).to_integer()).collect());
        }
        let h = intmat::hnf_rows(&rows);
        let basis: Vec<Vec<QBig>> = h
            .iter()
            .map(|r| r.iter().map(|&x| QBig::new(x, den)).collect())
            .collect();
        let mut lattice = self.lattice.sublattice_q(&basis)?;
        if generators.is_empty() {
            lattice = self.lattice.clone();
        }
        Ok(Overlattice {
            subgroup: elements,
            generators,
            basis,
            lattice,
        })
    }
}

/// Data invariant under permutations within cells: the profile of each element and the
/// profile of each slice.
fn invariant(form: &FiniteQuadraticForm, cells: &[Vec<Vec<usize>>], fixed: &[usize], span: &[u64]) -> Vec<u64> {
    let elems: Vec<Element> = span.iter().map(|&i| form.element(i)).collect();
    let profiles: Vec<Vec<u64>> = elems.iter().map(|x| profile(x, cells, fixed)).collect();
    let mut rows = profiles.clone();
    rows.sort();
    let mut out: Vec<u64> = rows.concat();
    for cell in cells {
        let mut cols: Vec<Vec<(Vec<u64>, Vec<u64>)>> = cell
            .iter()
            .map(|sl| {
                let mut c: Vec<(Vec<u64>, Vec<u64>)> = elems
                    .iter()
                    .zip(&profiles)
                    .map(|(x, p)| (p.clone(), sl.iter().map(|&g| x[g]).collect()))
                    .collect();
                c.sort();
                c
            })
            .collect();
        cols.sort();
        for c in cols {
            for (p, v) in c {
                out.extend(p);
                out.extend(v);
            }
        }
    }
    out
}

/// Coordinates outside the cells, then the sorted slices of each cell.
fn profile(x: &[u64], cells: &[Vec<Vec<usize>>], fixed: &[usize]) -> Vec<u64> {
    let mut out: Vec<u64> = fixed.iter().map(|&g| x[g]).collect();
    for cell in cells {
        let mut sl: Vec<Vec<u64>> = cell.iter().map(|s| s.iter().map(|&g| x[g]).collect()).collect();
        sl.sort();
        out.extend(sl.concat());
    }
    out
}

/// Whether a permutation of slices within cells carries the group generated by `gens`
/// onto the group with elements `other`. Coordinates outside the cells must agree.
pub fn equivalent_under_cells(
    form: &FiniteQuadraticForm,
    cells: &[Vec<Vec<usize>>],
    gens: &[Element],
    other: &[Element],
) -> bool {
    if form.span(gens).len() != other.len() {
        return false;
    }
    let in_cell: HashSet<usize> = cells.iter().flatten().flatten().copied().collect();
    let fixed: Vec<usize> = (0..form.generator_count()).filter(|g| !in_cell.contains(g)).collect();
    let options: Vec<Vec<&Element>> = gens
        .iter()
        .map(|g| {
            let pg = profile(g, cells, &fixed);
            other
                .iter()
                .filter(|y| form.element_order(y) == form.element_order(g) && profile(y, cells, &fixed) == pg)
                .collect()
        })
        .collect();
    match_columns(gens, &options, cells, &mut Vec::new())
}

fn match_columns(gens: &[Element], options: &[Vec<&Element>], cells: &[Vec<Vec<usize>>], chosen: &mut Vec<Element>) -> bool {
    let columns = |set: &[Element], cell: &[Vec<usize>], upto: usize| -> Vec<Vec<Vec<u64>>> {
        let mut c: Vec<Vec<Vec<u64>>> = cell
            .iter()
            .map(|sl| set[..upto].iter().map(|x| sl.iter().map(|&g| x[g]).collect()).collect())
            .collect();
        c.sort();
        c
    };
    let i = chosen.len();
    // Partial column multisets must already agree.
    if !cells.iter().all(|cell| columns(gens, cell, i) == columns(chosen, cell, i)) {
        return false;
    }
    if i == gens.len() {
        return true;
    }
    for y in &options[i] {
        chosen.push((*y).clone());
        if match_columns(gens, options, cells, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// All even overlattices of `l`, one per isotropic subgroup of `A_L`.
pub fn overlattices(l: &GramLattice) -> Result<Vec<Overlattice>, LatticeError> {
    OverlatticeSearch::new(l)?.run()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m_overlattices() {
        let all = overlattices(&GramLattice::m()).unwrap();
        assert_eq!(all.len(), 6);
        for o in &all[1..] {
            assert_eq!(o.order(), 2);
            assert_eq!(o.lattice.det().abs(), 4);
        }
    }

    #[test]
    fn unimodular_has_only_itself() {
        let all = overlattices(&GramLattice::e(8)).unwrap();
        assert_eq!(all.len(), 1);
    }

    #[test]
    fn symmetry_breaking_reduces() {
        let l = GramLattice::parse("8A1").unwrap();
        let full = overlattices(&l).unwrap();
        let s = OverlatticeSearch::new(&l).unwrap();
        let cells = s.block_cells();
        let reduced = s.symmetric_slices(cells).run().unwrap();
        assert!(reduced.len() < full.len());
        // 8A1 has the E8-type code; its isotropic subgroups up to S8: 0, weight-4 vector,
        // two weight-4 vectors, and the [8,3] code (up to equivalence).
        assert!(reduced.iter().any(|o| o.order() == 8));
        assert!(full.iter().all(|o| o.lattice.det().abs() * (o.order() * o.order()) as i128 == 256));
    }
}
