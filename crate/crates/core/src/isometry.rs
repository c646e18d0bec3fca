//! Regularity certificates: compare the permutations of an embedded point set
//! that preserve all pairwise distances with the automorphism group of the
//! graph.

use serde::{Deserialize, Serialize};

use crate::autgroup::{automorphisms, CommuteCheck, GroupLimits, Search};
use crate::error::{Error, Result};
use crate::graph::{Multigraph, SymMatrix};
use crate::linalg::sym_eigen;
use crate::perm::{PermGroup, Permutation};
use crate::predistance::{check_commuting, check_reconstructing, Predistance, ReconstructCheck};
use crate::spectral::{squared_distances, Embedding};
use crate::twins::find_twins;

/// Tolerances used when certifying an embedding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    /// Relative tolerance on squared distances, scaled by the largest one.
    pub distance_tol: f64,
    pub limits: GroupLimits,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { distance_tol: 1e-6, limits: GroupLimits::default() }
    }
}

/// Absolute tolerance for comparing entries of `d`.
fn absolute_tol(d: &SymMatrix, rel: f64) -> f64 {
    rel * d.max_abs().max(f64::MIN_POSITIVE)
}

/// Permutations `pi` with `‖p_pi(i) - p_pi(j)‖² = ‖p_i - p_j‖²` for all `i, j`,
/// within `rel_tol` times the largest squared distance.
pub fn distance_preserving_permutations(points: &[Vec<f64>], rel_tol: f64, limits: &GroupLimits) -> Result<PermGroup> {
    let n = points.len();
    if n > limits.max_n {
        return Err(Error::TooLarge { what: "isometry enumeration", n, max: limits.max_n });
    }
    let d = squared_distances(points);
    let tol = absolute_tol(&d, rel_tol);

    // Points may only map to points with a matching sorted distance profile.
    let signatures: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row = d.row(i).to_vec();
            row.sort_by(f64::total_cmp);
            row
        })
        .collect();
    let matches = |a: usize, b: usize| signatures[a].iter().zip(&signatures[b]).all(|(x, y)| (x - y).abs() <= tol);
    let mut colors = vec![usize::MAX; n];
    let mut next = 0;
    for i in 0..n {
        if colors[i] == usize::MAX {
            for j in i..n {
                if colors[j] == usize::MAX && matches(i, j) {
                    colors[j] = next;
                }
            }
            next += 1;
        }
    }
    let mut class_size = vec![0usize; next];
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
        consistent: |x: usize, y: usize, px: usize, py: usize| (d.get(x, y) - d.get(px, py)).abs() <= tol,
    };
    search.run(0)?;
    let found = search.found;
    PermGroup::from_elements(n, found)
}

/// Counterexamples gathered while certifying.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Witnesses {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coincident: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub commuting: Option<CommuteCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reconstructing: Option<ReconstructCheck>,
    /// An automorphism that moves some distance.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub automorphism_not_isometry: Option<Permutation>,
    /// A distance-preserving permutation that is not an automorphism.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isometry_not_automorphism: Option<Permutation>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegularityCertificate {
    pub n: usize,
    pub dimension: usize,
    pub aut_order: usize,
    pub isometry_perm_order: usize,
    pub groups_equal: bool,
    /// Every automorphism preserves all distances.
    pub aut_in_isometries: bool,
    pub spans: bool,
    pub injective: bool,
    pub commuting: bool,
    pub reconstructing: bool,
    pub witnesses: Witnesses,
}

impl RegularityCertificate {
    pub fn hypotheses_hold(&self) -> bool {
        self.commuting && self.reconstructing && self.spans && self.injective
    }
}

/// Rank of the centred point cloud, by eigenvalues of its `k x k` scatter
/// matrix.
pub fn centered_rank(points: &[Vec<f64>], k: usize) -> Result<usize> {
    let n = points.len();
    if n == 0 || k == 0 {
        return Ok(0);
    }
    let mean: Vec<f64> = (0..k).map(|c| points.iter().map(|p| p[c]).sum::<f64>() / n as f64).collect();
    let scatter = SymMatrix::from_fn(k, |a, b| points.iter().map(|p| (p[a] - mean[a]) * (p[b] - mean[b])).sum());
    let eig = sym_eigen(&scatter)?;
    let top = eig.values.first().copied().unwrap_or(0.0).max(0.0);
    let tol = 1e-9 * top.max(f64::MIN_POSITIVE);
    Ok(eig.values.iter().filter(|&&v| v > tol).count())
}

/// Checks that `emb` realizes exactly the automorphism group of `g`: as
/// permutation sets, the distance-preserving permutations of the points must
/// equal `Aut(g)`. Also records injectivity, spanning and the commuting and
/// reconstructing properties of `p`.
///
/// Reducible graphs are rejected; reduce them to their twin quotient first.
pub fn verify_regular(
    g: &Multigraph,
    p: &Predistance,
    emb: &Embedding,
    opts: &VerifyOptions,
) -> Result<RegularityCertificate> {
    let n = g.n();
    if p.n() != n || emb.n() != n {
        return Err(Error::Invalid(format!(
            "graph, predistance and embedding sizes differ ({n}, {}, {})",
            p.n(),
            emb.n()
        )));
    }
    if let Some((x, y)) = find_twins(g) {
        return Err(Error::Reducible { x: x + 1, y: y + 1 });
    }

    let mut witnesses = Witnesses::default();
    let d = squared_distances(&emb.points);
    let tol = absolute_tol(&d, opts.distance_tol);
    let coincident = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| d.get(i, j) <= tol);
    witnesses.coincident = coincident.map(|(i, j)| (i + 1, j + 1));
    let injective = coincident.is_none();

    let spans = centered_rank(&emb.points, emb.dimension())? == emb.dimension();

    let commute = check_commuting(p, g, &opts.limits)?;
    let commuting = commute.holds();
    if !commuting {
        witnesses.commuting = Some(commute);
    }
    let recon = check_reconstructing(p, g)?;
    let reconstructing = recon.holds();
    if !reconstructing {
        witnesses.reconstructing = Some(recon);
    }

    let aut = automorphisms(g, &opts.limits)?;
    let iso = distance_preserving_permutations(&emb.points, opts.distance_tol, &opts.limits)?;
    witnesses.automorphism_not_isometry = aut.difference(&iso).next().cloned();
    witnesses.isometry_not_automorphism = iso.difference(&aut).next().cloned();
    let groups_equal = aut == iso;

    Ok(RegularityCertificate {
        n,
        dimension: emb.dimension(),
        aut_order: aut.order(),
        isometry_perm_order: iso.order(),
        groups_equal,
        aut_in_isometries: witnesses.automorphism_not_isometry.is_none(),
        spans,
        injective,
        commuting,
        reconstructing,
        witnesses,
    })
}
