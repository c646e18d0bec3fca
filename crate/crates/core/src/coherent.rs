//! Coherent configuration of a multigraph by pairwise (2-dimensional
//! Weisfeiler-Leman) refinement, and predistances synthesized from its
//! basis.
//!
//! Ordered pairs start coloured by `(i == j, mu(i, j))`. Each round recolours
//! `(i, j)` by its old colour together with the sorted sequence of
//! `(colour(i, k), colour(k, j))` over all `k`, until the number of colours
//! stops growing. The colour classes are the 0/1 basis matrices.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{adjacency_matrix, Multigraph, SymMatrix};
use crate::predistance::{Predistance, PredistanceKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherentBasis {
    n: usize,
    /// Class index of each ordered pair, row-major.
    color_of: Vec<usize>,
    num_classes: usize,
    /// Classes `0..diagonal_count` lie on the diagonal.
    diagonal_count: usize,
    /// Index of the transposed class.
    transpose: Vec<usize>,
    /// Multiplicity carried by each class.
    multiplicity: Vec<u32>,
}

/// Summary printed by the `wl` command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasisSummary {
    pub classes: usize,
    pub diagonal_classes: usize,
    pub class_sizes: Vec<usize>,
    pub symmetric: Vec<bool>,
    pub multiplicity: Vec<u32>,
}

impl CoherentBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn diagonal_count(&self) -> usize {
        self.diagonal_count
    }

    pub fn color(&self, i: usize, j: usize) -> usize {
        self.color_of[i * self.n + j]
    }

    pub fn transpose_of(&self, class: usize) -> usize {
        self.transpose[class]
    }

    pub fn is_symmetric(&self, class: usize) -> bool {
        self.transpose[class] == class
    }

    /// The constant multiplicity of `class`.
    pub fn multiplicity(&self, class: usize) -> u32 {
        self.multiplicity[class]
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_classes];
        for &c in &self.color_of {
            sizes[c] += 1;
        }
        sizes
    }

    /// Basis matrix of `class`.
    pub fn matrix(&self, class: usize) -> Vec<Vec<u8>> {
        (0..self.n).map(|i| (0..self.n).map(|j| u8::from(self.color(i, j) == class)).collect()).collect()
    }

    pub fn matrices(&self) -> Vec<Vec<Vec<u8>>> {
        (0..self.num_classes).map(|c| self.matrix(c)).collect()
    }

    /// Off-diagonal classes, one per transpose pair, in class order.
    pub fn off_diagonal_pairs(&self) -> Vec<usize> {
        (self.diagonal_count..self.num_classes).filter(|&c| self.transpose[c] >= c).collect()
    }

    pub fn summary(&self) -> BasisSummary {
        BasisSummary {
            classes: self.num_classes,
            diagonal_classes: self.diagonal_count,
            class_sizes: self.class_sizes(),
            symmetric: (0..self.num_classes).map(|c| self.is_symmetric(c)).collect(),
            multiplicity: self.multiplicity.clone(),
        }
    }

    /// Checks the three basis conditions: classes partition `J`, the first
    /// `diagonal_count` partition `I`, and transposition permutes classes.
    /// Exact, since the classes are 0/1.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        let sizes = self.class_sizes();
        if sizes.contains(&0) || sizes.iter().sum::<usize>() != n * n {
            return Err(Error::Invalid("classes do not partition J".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let c = self.color(i, j);
                if (i == j) != (c < self.diagonal_count) {
                    return Err(Error::Invalid("diagonal classes do not sum to I".into()));
                }
                if self.color(j, i) != self.transpose[c] {
                    return Err(Error::Invalid(format!("class {c} has no transposed class")));
                }
                if self.multiplicity[c] != 0 && i == j {
                    return Err(Error::Invalid("diagonal class with multiplicity".into()));
                }
            }
        }
        Ok(())
    }

    /// Runs one further refinement round and reports whether any class
    /// splits.
    pub fn is_stable(&self) -> bool {
        refine_round(self.n, &self.color_of).1 == self.num_classes
    }
}

/// One refinement round. Returns the new colouring (numbered by sorted key)
/// and the number of colours.
fn refine_round(n: usize, colors: &[usize]) -> (Vec<usize>, usize) {
    let mut keys: Vec<(usize, Vec<(usize, usize)>)> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut walk: Vec<(usize, usize)> = (0..n).map(|k| (colors[i * n + k], colors[k * n + j])).collect();
            walk.sort_unstable();
            keys.push((colors[i * n + j], walk));
        }
    }
    renumber(&keys)
}

fn renumber<K: Ord>(keys: &[K]) -> (Vec<usize>, usize) {
    let mut index: BTreeMap<&K, usize> = keys.iter().map(|k| (k, 0)).collect();
    for (i, v) in index.values_mut().enumerate() {
        *v = i;
    }
    (keys.iter().map(|k| index[k]).collect(), index.len())
}

/// Coarsest coherent configuration refining the multiplicity table.
pub fn coherent_basis(g: &Multigraph) -> Result<CoherentBasis> {
    let n = g.n();
    let initial: Vec<(bool, u32)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| (i != j, g.mu(i, j))).collect();
    let (mut colors, mut count) = renumber(&initial);
    loop {
        let (next, next_count) = refine_round(n, &colors);
        colors = next;
        if next_count == count {
            break;
        }
        count = next_count;
    }

    // Diagonal classes first, then by first appearance in row-major order.
    let mut first_seen: HashMap<usize, (bool, usize)> = HashMap::new();
    for (idx, &c) in colors.iter().enumerate() {
        let (i, j) = (idx / n, idx % n);
        first_seen.entry(c).or_insert((i != j, idx));
    }
    let mut ordered: Vec<usize> = first_seen.keys().copied().collect();
    ordered.sort_by_key(|c| first_seen[c]);
    let relabel: HashMap<usize, usize> = ordered.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let color_of: Vec<usize> = colors.iter().map(|c| relabel[c]).collect();
    let num_classes = ordered.len();
    let diagonal_count = ordered.iter().filter(|c| !first_seen[c].0).count();

    let mut transpose = vec![usize::MAX; num_classes];
    let mut multiplicity: Vec<Option<u32>> = vec![None; num_classes];
    for i in 0..n {
        for j in 0..n {
            let c = color_of[i * n + j];
            transpose[c] = color_of[j * n + i];
            if *multiplicity[c].get_or_insert(g.mu(i, j)) != g.mu(i, j) {
                return Err(Error::Invalid(format!("class {c} mixes multiplicities")));
            }
        }
    }
    let multiplicity = multiplicity.into_iter().map(|m| m.unwrap_or(0)).collect();
    let basis = CoherentBasis { n, color_of, num_classes, diagonal_count, transpose, multiplicity };
    basis.validate()?;
    Ok(basis)
}

/// `sum lambda_c (B_c + B_c^T)` over the given off-diagonal classes. A
/// coefficient on either member of a transpose pair applies to the pair; if
/// both members are given the values must agree.
pub fn predistance_from_basis(basis: &CoherentBasis, coefficients: &BTreeMap<usize, f64>) -> Result<Predistance> {
    let mut pair_coeff: BTreeMap<usize, f64> = BTreeMap::new();
    for (&c, &v) in coefficients {
        if c >= basis.num_classes() {
            return Err(Error::Invalid(format!("no class {c}")));
        }
        if c < basis.diagonal_count() {
            return Err(Error::DiagonalCoefficient(c));
        }
        let key = c.min(basis.transpose_of(c));
        if let Some(&prev) = pair_coeff.get(&key) {
            if prev != v {
                return Err(Error::Invalid(format!(
                    "classes {c} and {} carry different coefficients",
                    basis.transpose_of(c)
                )));
            }
        }
        pair_coeff.insert(key, v);
    }
    let n = basis.n();
    let matrix = SymMatrix::from_fn(n, |i, j| {
        if i == j {
            return 0.0;
        }
        let c = basis.color(i, j);
        let key = c.min(basis.transpose_of(c));
        let v = pair_coeff.get(&key).copied().unwrap_or(0.0);
        if basis.is_symmetric(c) {
            2.0 * v
        } else {
            v
        }
    });
    Ok(Predistance { matrix, kind: PredistanceKind::Custom })
}

/// Distinct values `1, 2, 3, ...` on the off-diagonal transpose pairs, in
/// class order. Every class carries a single multiplicity, so distinct
/// values make the result reconstructing.
pub fn make_reconstructing(basis: &CoherentBasis, g: &Multigraph) -> Result<Predistance> {
    if basis.n() != g.n() {
        return Err(Error::Invalid(format!("basis of order {} for a graph of order {}", basis.n(), g.n())));
    }
    let coefficients: BTreeMap<usize, f64> = basis
        .off_diagonal_pairs()
        .into_iter()
        .enumerate()
        .map(|(k, c)| {
            let value = (k + 1) as f64;
            (c, if basis.is_symmetric(c) { value / 2.0 } else { value })
        })
        .collect();
    predistance_from_basis(basis, &coefficients)
}

/// `P + eps * A`. With `eps = None` a value is chosen that avoids every
/// collision `P[a] + eps mu[a] = P[b] + eps mu[b]` between pairs of different
/// multiplicity, which makes the result reconstructing.
pub fn perturb_with_adjacency(p: &Predistance, g: &Multigraph, eps: Option<f64>) -> Result<Predistance> {
    let n = p.n();
    if n != g.n() {
        return Err(Error::Invalid(format!("predistance of order {n} for a graph of order {}", g.n())));
    }
    let eps = match eps {
        Some(e) => e,
        None => {
            let mut entries: Vec<(f64, u32)> = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    entries.push((p.matrix.get(i, j), g.mu(i, j)));
                }
            }
            entries.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            entries.dedup();
            let mut smallest_bad = f64::INFINITY;
            for (a, &(pa, ma)) in entries.iter().enumerate() {
                for &(pb, mb) in &entries[a + 1..] {
                    if ma != mb {
                        let bad = ((pa - pb) / (mb as f64 - ma as f64)).abs();
                        if bad > 0.0 {
                            smallest_bad = smallest_bad.min(bad);
                        }
                    }
                }
            }
            smallest_bad.min(1.0) / 2.0
        }
    };
    let a = adjacency_matrix(g);
    Ok(Predistance { matrix: p.matrix.combine(1.0, &a, eps), kind: PredistanceKind::Custom })
}
