//! Automorphism groups by backtracking over colour-refined candidate sets,
//! and the commuting test between a matrix and a permutation group.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Multigraph, SymMatrix};
use crate::perm::{PermGroup, Permutation};

/// Size limits for exhaustive group enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupLimits {
    pub max_n: usize,
    pub max_order: usize,
}

impl Default for GroupLimits {
    fn default() -> Self {
        GroupLimits { max_n: 12, max_order: 1_000_000 }
    }
}

/// Stable vertex colouring: start from `initial`, then repeatedly split
/// classes by the multiset of (neighbour colour, multiplicity) pairs.
///
/// Colours are renumbered canonically (by sorted signature) every round, so
/// automorphisms preserving `initial` preserve the result.
pub fn refine_colors(g: &Multigraph, initial: &[usize]) -> Vec<usize> {
    let n = g.n();
    let degrees = g.degrees();
    let mut colors = canonical_renumber((0..n).map(|v| (initial[v], degrees[v])).collect());
    loop {
        let keys: Vec<(usize, Vec<(usize, u32)>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(usize, u32)> = g.neighbors(v).map(|u| (colors[u], g.mu(v, u))).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let next = canonical_renumber(keys);
        let before = colors.iter().max().map_or(0, |m| m + 1);
        let after = next.iter().max().map_or(0, |m| m + 1);
        colors = next;
        if after == before {
            return colors;
        }
    }
}

fn canonical_renumber<K: Ord + Clone>(keys: Vec<K>) -> Vec<usize> {
    let mut index: BTreeMap<K, usize> = keys.iter().cloned().map(|k| (k, 0)).collect();
    for (i, v) in index.values_mut().enumerate() {
        *v = i;
    }
    keys.iter().map(|k| index[k]).collect()
}

/// All permutations preserving the multiplicity table.
pub fn automorphisms(g: &Multigraph, limits: &GroupLimits) -> Result<PermGroup> {
    automorphisms_colored(g, &vec![0; g.n()], limits)
}

/// Automorphisms that also preserve a vertex colouring.
pub fn automorphisms_colored(g: &Multigraph, colors: &[usize], limits: &GroupLimits) -> Result<PermGroup> {
    let n = g.n();
    if n > limits.max_n {
        return Err(Error::TooLarge { what: "automorphism enumeration", n, max: limits.max_n });
    }
    if colors.len() != n {
        return Err(Error::Invalid(format!("{} colours for {n} vertices", colors.len())));
    }
    let colors = refine_colors(g, colors);

    // Place vertices from the smallest colour classes first; fewer branches
    // near the root.
    let mut class_size = vec![0usize; n];
    for &c in &colors {
        class_size[c] += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (class_size[colors[v]], colors[v], v));

    let mut search = Search {
        n,
        order: &order,
        colors: &colors,
        image: vec![usize::MAX; n],
        used: vec![false; n],
        found: Vec::new(),
        cap: limits.max_order,
        consistent: |x: usize, y: usize, px: usize, py: usize| g.mu(x, y) == g.mu(px, py),
    };
    search.run(0)?;
    let found = search.found;
    PermGroup::from_elements(n, found)
}

/// Shared backtracking over vertex images. `consistent(x, y, x', y')` decides
/// whether placing `x -> x'` is compatible with an earlier `y -> y'`.
pub(crate) struct Search<'a, F> {
    pub n: usize,
    pub order: &'a [usize],
    pub colors: &'a [usize],
    pub image: Vec<usize>,
    pub used: Vec<bool>,
    pub found: Vec<Permutation>,
    pub cap: usize,
    pub consistent: F,
}

impl<F: Fn(usize, usize, usize, usize) -> bool> Search<'_, F> {
    pub fn run(&mut self, depth: usize) -> Result<()> {
        if depth == self.n {
            if self.found.len() == self.cap {
                return Err(Error::GroupTooLarge { cap: self.cap });
            }
            self.found.push(Permutation::from_vec_unchecked(self.image.clone()));
            return Ok(());
        }
        let x = self.order[depth];
        for cand in 0..self.n {
            if self.used[cand] || self.colors[cand] != self.colors[x] {
                continue;
            }
            if !(self.consistent)(x, x, cand, cand) {
                continue;
            }
            let ok = self.order[..depth].iter().all(|&y| (self.consistent)(x, y, cand, self.image[y]));
            if !ok {
                continue;
            }
            self.image[x] = cand;
            self.used[cand] = true;
            self.run(depth + 1)?;
            self.used[cand] = false;
            self.image[x] = usize::MAX;
        }
        Ok(())
    }
}

/// Outcome of a commuting check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum CommuteCheck {
    Commutes,
    /// `M[perm(i)][perm(j)] != M[i][j]`; `i`, `j` are 1-based.
    Witness {
        perm: Permutation,
        i: usize,
        j: usize,
    },
}

impl CommuteCheck {
    pub fn holds(&self) -> bool {
        matches!(self, CommuteCheck::Commutes)
    }
}

/// Tests `M[p(i)][p(j)] = M[i][j]` for every element `p` of the group.
///
/// Entries are compared to within `1e-9 * max|M|`; integer matrices are
/// therefore compared exactly.
pub fn commutes_with_group(m: &SymMatrix, group: &PermGroup) -> Result<CommuteCheck> {
    commutes_with_perms(m, group.degree(), group.elements())
}

pub fn commutes_with_perms(m: &SymMatrix, degree: usize, perms: &[Permutation]) -> Result<CommuteCheck> {
    let n = m.n();
    if n != degree {
        return Err(Error::Invalid(format!("matrix of order {n} against a group of degree {degree}")));
    }
    let tol = 1e-9 * m.max_abs();
    for p in perms {
        for i in 0..n {
            for j in i..n {
                if (m.get(p.apply(i), p.apply(j)) - m.get(i, j)).abs() > tol {
                    return Ok(CommuteCheck::Witness { perm: p.clone(), i: i + 1, j: j + 1 });
                }
            }
        }
    }
    Ok(CommuteCheck::Commutes)
}
