//! Predistance matrices: symmetric, zero diagonal, entries read as candidate
//! squared distances. Built-in constructions plus the commuting and
//! reconstructing tests.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::autgroup::{automorphisms, commutes_with_group, CommuteCheck, GroupLimits};
use crate::error::{Error, Result};
use crate::graph::{adjacency_matrix, graph_metrics, Multigraph, SymMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PredistanceKind {
    /// `P[i][j] = mu(i, j)`.
    Adjacency,
    /// 0 on the diagonal and on edges, 1 elsewhere.
    ComplementIndicator,
    GraphDistance,
    CzekanovskiDice,
    QDistance,
    Custom,
}

impl PredistanceKind {
    pub const BUILT_IN: [PredistanceKind; 5] = [
        PredistanceKind::Adjacency,
        PredistanceKind::ComplementIndicator,
        PredistanceKind::GraphDistance,
        PredistanceKind::CzekanovskiDice,
        PredistanceKind::QDistance,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PredistanceKind::Adjacency => "adjacency",
            PredistanceKind::ComplementIndicator => "complement_indicator",
            PredistanceKind::GraphDistance => "graph_distance",
            PredistanceKind::CzekanovskiDice => "czekanovski_dice",
            PredistanceKind::QDistance => "q_distance",
            PredistanceKind::Custom => "custom",
        }
    }
}

impl fmt::Display for PredistanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PredistanceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PredistanceKind::BUILT_IN
            .into_iter()
            .chain([PredistanceKind::Custom])
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown predistance kind {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Predistance {
    pub matrix: SymMatrix,
    pub kind: PredistanceKind,
}

impl Predistance {
    /// Wraps a user matrix; the diagonal must be exactly zero.
    pub fn custom(matrix: SymMatrix) -> Result<Self> {
        if !matrix.has_zero_diagonal() {
            return Err(Error::Invalid("predistance diagonal must be zero".into()));
        }
        Ok(Predistance { matrix, kind: PredistanceKind::Custom })
    }

    /// Reads an `n x n` JSON array of numbers.
    pub fn from_json(text: &str) -> Result<Self> {
        let rows: Vec<Vec<f64>> =
            serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
        Predistance::custom(SymMatrix::from_rows(&rows)?)
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }
}

pub fn build_predistance(g: &Multigraph, kind: PredistanceKind) -> Result<Predistance> {
    use PredistanceKind::*;
    let n = g.n();
    let needs_simple = |what| if g.is_simple() { Ok(()) } else { Err(Error::NotSimple(what)) };
    let needs_order_3 = |what| if n >= 3 { Ok(()) } else { Err(Error::TooSmall { what, n, min: 3 }) };
    let metrics = graph_metrics(g);
    let needs_connected = |what| if metrics.connected { Ok(()) } else { Err(Error::Disconnected(what)) };

    let matrix = match kind {
        Adjacency => adjacency_matrix(g),
        ComplementIndicator => {
            needs_simple("complement_indicator")?;
            SymMatrix::from_fn(n, |i, j| if i == j || g.mu(i, j) > 0 { 0.0 } else { 1.0 })
        }
        GraphDistance => {
            needs_connected("graph_distance")?;
            SymMatrix::from_fn(n, |i, j| metrics.dist[i][j].expect("connected") as f64)
        }
        CzekanovskiDice => {
            needs_connected("czekanovski_dice")?;
            needs_simple("czekanovski_dice")?;
            needs_order_3("czekanovski_dice")?;
            let d = &metrics.degrees;
            SymMatrix::from_fn(n, |i, j| match (i == j, g.mu(i, j) > 0) {
                (true, _) => 0.0,
                (false, true) => 1.0 - 2.0 / (d[i] + d[j]) as f64,
                (false, false) => 1.0,
            })
        }
        QDistance => {
            needs_connected("q_distance")?;
            needs_simple("q_distance")?;
            needs_order_3("q_distance")?;
            let d = &metrics.degrees;
            SymMatrix::from_fn(n, |i, j| match (i == j, g.mu(i, j) > 0) {
                (true, _) => 0.0,
                (false, true) => 1.0 - 1.0 / ((d[i] * d[j]) as f64).sqrt(),
                (false, false) => 1.0,
            })
        }
        Custom => return Err(Error::Invalid("custom predistances are read from a file".into())),
    };
    Ok(Predistance { matrix, kind })
}

/// Values within `1e-9 * max(1, max|P|)` of each other count as equal.
pub fn value_tolerance(m: &SymMatrix) -> f64 {
    1e-9 * m.max_abs().max(1.0)
}

/// Outcome of a reconstructing check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum ReconstructCheck {
    /// The map from (grouped) predistance values to multiplicities, sorted by
    /// value.
    Reconstructing { map: Vec<(f64, u32)> },
    /// Two 1-based pairs with equal values but different multiplicities.
    Witness { first: (usize, usize), second: (usize, usize) },
}

impl ReconstructCheck {
    pub fn holds(&self) -> bool {
        matches!(self, ReconstructCheck::Reconstructing { .. })
    }
}

/// Equal off-diagonal values must carry equal multiplicities.
///
/// Off-diagonal entries are sorted and chained into value groups when
/// consecutive gaps are within [`value_tolerance`].
pub fn check_reconstructing(p: &Predistance, g: &Multigraph) -> Result<ReconstructCheck> {
    let n = p.n();
    if n != g.n() {
        return Err(Error::Invalid(format!("predistance of order {n} for a graph of order {}", g.n())));
    }
    let tol = value_tolerance(&p.matrix);
    let mut entries: Vec<(f64, usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| (p.matrix.get(i, j), i, j)).collect();
    entries.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut map = Vec::new();
    let mut start = 0;
    while start < entries.len() {
        let mut end = start + 1;
        while end < entries.len() && entries[end].0 - entries[end - 1].0 <= tol {
            end += 1;
        }
        let (v0, i0, j0) = entries[start];
        let m0 = g.mu(i0, j0);
        if let Some(&(_, i1, j1)) = entries[start..end].iter().find(|&&(_, i, j)| g.mu(i, j) != m0) {
            return Ok(ReconstructCheck::Witness { first: (i0 + 1, j0 + 1), second: (i1 + 1, j1 + 1) });
        }
        map.push((v0, m0));
        start = end;
    }
    Ok(ReconstructCheck::Reconstructing { map })
}

/// Invariance of `P` under every automorphism of `g`.
pub fn check_commuting(p: &Predistance, g: &Multigraph, limits: &GroupLimits) -> Result<CommuteCheck> {
    if p.n() != g.n() {
        return Err(Error::Invalid(format!("predistance of order {} for a graph of order {}", p.n(), g.n())));
    }
    commutes_with_group(&p.matrix, &automorphisms(g, limits)?)
}
