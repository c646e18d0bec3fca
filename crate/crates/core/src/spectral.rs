//! Double-centred bilinear forms, their spectra on the complement of the
//! all-ones vector, the eigenvalue shift that makes them positive
//! semi-definite, and the resulting point coordinates.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SymMatrix;
use crate::linalg::{ones_complement_basis, project, sym_eigen};
use crate::predistance::{Predistance, PredistanceKind};

/// Which extreme eigenvalue group the shift eliminates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ShiftMode {
    /// `P* = P - 2 lambda_min (J - I)`; drops the smallest group.
    #[default]
    Low,
    /// `P* = 2 lambda_max (J - I) - P`; drops the largest group.
    High,
}

impl ShiftMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ShiftMode::Low => "low",
            ShiftMode::High => "high",
        }
    }
}

/// An eigenvalue with its multiplicity; `[value, multiplicity]` on the wire.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "(f64, usize)", into = "(f64, usize)")]
pub struct EigenGroup {
    pub value: f64,
    pub multiplicity: usize,
}

impl From<(f64, usize)> for EigenGroup {
    fn from((value, multiplicity): (f64, usize)) -> Self {
        EigenGroup { value, multiplicity }
    }
}

impl From<EigenGroup> for (f64, usize) {
    fn from(g: EigenGroup) -> Self {
        (g.value, g.multiplicity)
    }
}

/// Grouped spectrum on the orthogonal complement of `1`, descending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralProfile {
    pub groups: Vec<EigenGroup>,
    /// Rayleigh quotient of `1`; zero for any double-centred form.
    pub ones_eigenvalue: f64,
}

impl SpectralProfile {
    pub fn smallest(&self) -> Option<EigenGroup> {
        self.groups.last().copied()
    }

    pub fn largest(&self) -> Option<EigenGroup> {
        self.groups.first().copied()
    }
}

/// Eigenpairs of a form restricted to the complement of `1`.
#[derive(Debug, Clone)]
pub struct Eigenspaces {
    pub profile: SpectralProfile,
    /// Descending; one entry per vector.
    pub values: Vec<f64>,
    /// Unit vectors in `R^n`, orthogonal to `1`.
    pub vectors: Vec<Vec<f64>>,
    /// Index range into `values`/`vectors` for each profile group.
    pub ranges: Vec<Range<usize>>,
    pub tol: f64,
}

/// `-1/2 (I - J/n) P (I - J/n)`, computed by double centring.
pub fn bilinear_form(p: &SymMatrix) -> SymMatrix {
    let n = p.n();
    if n == 0 {
        return SymMatrix::zeros(0);
    }
    let nf = n as f64;
    let means: Vec<f64> = (0..n).map(|i| p.row(i).iter().sum::<f64>() / nf).collect();
    let grand = means.iter().sum::<f64>() / nf;
    SymMatrix::from_fn(n, |i, j| -0.5 * (p.get(i, j) - means[i] - means[j] + grand))
}

/// Default grouping tolerance: `1e-7 * max(1, spectral radius)`.
pub fn default_group_tol(radius: f64) -> f64 {
    1e-7 * radius.max(1.0)
}

/// Splits descending `values` into runs whose consecutive gaps are within
/// `tol`. A run wider than `tol` end to end is rejected as ambiguous.
pub fn group_values(values: &[f64], tol: f64) -> Result<Vec<(EigenGroup, Range<usize>)>> {
    let mut out = Vec::new();
    let mut start = 0;
    while start < values.len() {
        let mut end = start + 1;
        while end < values.len() && values[end - 1] - values[end] <= tol {
            end += 1;
        }
        if values[start] - values[end - 1] > tol {
            return Err(Error::AmbiguousGrouping { value: values[start] });
        }
        let mean = values[start..end].iter().sum::<f64>() / (end - start) as f64;
        out.push((EigenGroup { value: mean, multiplicity: end - start }, start..end));
        start = end;
    }
    Ok(out)
}

/// Eigendecomposition of `l` on the complement of `1`.
///
/// The complement is handled explicitly: `l` is compressed onto an
/// orthonormal basis of `1^perp`, so a zero eigenvalue of higher
/// multiplicity is never confused with the `1` direction.
pub fn eigenspaces(l: &SymMatrix, tol: Option<f64>) -> Result<Eigenspaces> {
    let n = l.n();
    let ones = vec![1.0; n];
    let l1 = l.mul_vec(&ones);
    let residual = l1.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if residual > 1e-8 * (l.max_abs() * n as f64).max(1.0) {
        return Err(Error::OnesNotInKernel { residual });
    }
    let ones_eigenvalue = if n == 0 { 0.0 } else { l1.iter().sum::<f64>() / n as f64 };

    let basis = ones_complement_basis(n);
    let reduced = project(l, &basis);
    let eig = sym_eigen(&reduced)?;
    let vectors: Vec<Vec<f64>> = eig
        .vectors
        .iter()
        .map(|u| (0..n).map(|r| basis.iter().zip(u).map(|(q, c)| q[r] * c).sum()).collect())
        .collect();

    let radius = eig.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let tol = tol.unwrap_or_else(|| default_group_tol(radius));
    let grouped = group_values(&eig.values, tol)?;
    let (groups, ranges) = grouped.into_iter().unzip();
    Ok(Eigenspaces { profile: SpectralProfile { groups, ones_eigenvalue }, values: eig.values, vectors, ranges, tol })
}

pub fn spectral_profile(l: &SymMatrix, tol: Option<f64>) -> Result<SpectralProfile> {
    Ok(eigenspaces(l, tol)?.profile)
}

/// Result of shifting a predistance so its bilinear form becomes PSD.
#[derive(Debug, Clone, PartialEq)]
pub struct Reduced {
    pub matrix: SymMatrix,
    /// The eigenvalue of `Lambda(P)` that was eliminated (0 when there is
    /// none, i.e. `n <= 1`).
    pub shift_value: f64,
    /// Set when the profile has at most one group: every point coincides.
    pub degenerate: bool,
}

pub fn reduce_with_profile(p: &SymMatrix, profile: &SpectralProfile, mode: ShiftMode) -> Reduced {
    let n = p.n();
    let jmi = SymMatrix::off_diagonal_ones(n);
    let (matrix, shift_value) = match mode {
        ShiftMode::Low => {
            let lr = profile.smallest().map_or(0.0, |g| g.value);
            (p.combine(1.0, &jmi, -2.0 * lr), lr)
        }
        ShiftMode::High => {
            let l1 = profile.largest().map_or(0.0, |g| g.value);
            (p.combine(-1.0, &jmi, 2.0 * l1), l1)
        }
    };
    Reduced { matrix, shift_value, degenerate: profile.groups.len() <= 1 }
}

/// `P*` for the given mode.
pub fn reduce_predistance(p: &SymMatrix, mode: ShiftMode, tol: Option<f64>) -> Result<Reduced> {
    let profile = spectral_profile(&bilinear_form(p), tol)?;
    Ok(reduce_with_profile(p, &profile, mode))
}

/// Embedding dimension read off the full spectrum of `Lambda(P)` (the `1`
/// direction included), by cases on its smallest eigenvalue:
///
/// * negative with multiplicity `m`: `n - m - 1`;
/// * zero with multiplicity `m > 1`: `n - m`;
/// * zero and simple: `n - m - 1`, `m` the multiplicity of the next one.
///
/// All three agree with `n - m_r - 1` for the smallest profile group; a
/// disagreement is reported as an error.
pub fn zeta_from_profile(n: usize, profile: &SpectralProfile, tol: f64) -> Result<usize> {
    let Some(bottom) = profile.smallest() else {
        return Ok(0);
    };
    let by_cases = if bottom.value < -tol {
        n - bottom.multiplicity - 1
    } else if bottom.value.abs() <= tol {
        // the 1 direction joins the zero group
        n - (bottom.multiplicity + 1)
    } else {
        // smallest is the simple zero from 1; the next group is `bottom`
        n - bottom.multiplicity - 1
    };
    let direct = n - bottom.multiplicity - 1;
    if by_cases != direct {
        return Err(Error::ZetaMismatch { rank: direct, zeta: by_cases });
    }
    Ok(by_cases)
}

pub fn zeta(p: &SymMatrix, tol: Option<f64>) -> Result<usize> {
    let spaces = eigenspaces(&bilinear_form(p), tol)?;
    zeta_from_profile(p.n(), &spaces.profile, spaces.tol)
}

/// Points whose squared distances reproduce the reduced predistance.
#[derive(Debug, Clone)]
pub struct Embedding {
    /// One row per vertex.
    pub points: Vec<Vec<f64>>,
    pub zeta: usize,
    pub shift_mode: ShiftMode,
    pub shift_value: f64,
    pub source: PredistanceKind,
    /// Profile of `Lambda(P)` before shifting.
    pub profile: SpectralProfile,
    /// Column range of each retained eigenvalue group.
    pub slices: Vec<Range<usize>>,
    /// Retained groups of `Lambda(P*)`, aligned with `slices`.
    pub retained: Vec<EigenGroup>,
    pub degenerate: bool,
    /// `P*`.
    pub reduced: SymMatrix,
}

/// Wire form of an embedding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingDocument {
    pub points: Vec<Vec<f64>>,
    pub zeta: usize,
    pub shift_mode: ShiftMode,
    pub shift_value: f64,
    pub source: PredistanceKind,
    pub profile: Vec<EigenGroup>,
    pub slices: Vec<[usize; 2]>,
    pub degenerate: bool,
}

impl Embedding {
    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn dimension(&self) -> usize {
        self.zeta
    }

    pub fn document(&self) -> EmbeddingDocument {
        EmbeddingDocument {
            points: self.points.clone(),
            zeta: self.zeta,
            shift_mode: self.shift_mode,
            shift_value: self.shift_value,
            source: self.source,
            profile: self.profile.groups.clone(),
            slices: self.slices.iter().map(|r| [r.start, r.end]).collect(),
            degenerate: self.degenerate,
        }
    }

    /// One point per line, comma separated, full precision.
    pub fn to_csv(&self) -> String {
        self.points
            .iter()
            .map(|row| row.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(","))
            .map(|line| line + "\n")
            .collect()
    }

    /// Largest `|‖p_i - p_j‖² - P*[i][j]|`.
    pub fn reproduction_error(&self) -> f64 {
        let d = squared_distances(&self.points);
        let n = self.n();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .fold(0.0, |m, (i, j)| m.max((d.get(i, j) - self.reduced.get(i, j)).abs()))
    }
}

pub fn squared_distances(points: &[Vec<f64>]) -> SymMatrix {
    SymMatrix::from_fn(points.len(), |i, j| points[i].iter().zip(&points[j]).map(|(a, b)| (a - b) * (a - b)).sum())
}

/// Classical scaling of `P*`: eigenvectors of `Lambda(P*)` scaled by the
/// square roots of their eigenvalues, one column per non-zero eigenvalue.
///
/// `tol` is the eigenvalue grouping tolerance (default
/// [`default_group_tol`]). In low mode the dimension is checked against
/// [`zeta`].
pub fn embed(p: &Predistance, mode: ShiftMode, tol: Option<f64>) -> Result<Embedding> {
    let n = p.n();
    let spaces = eigenspaces(&bilinear_form(&p.matrix), tol)?;
    let reduced = reduce_with_profile(&p.matrix, &spaces.profile, mode);
    let b = eigenspaces(&bilinear_form(&reduced.matrix), tol)?;

    let mut columns: Vec<Vec<f64>> = Vec::new();
    let mut slices = Vec::new();
    let mut retained = Vec::new();
    for (group, range) in b.profile.groups.iter().zip(&b.ranges) {
        if group.value < -b.tol {
            return Err(Error::NotPositiveSemidefinite(group.value));
        }
        if group.value <= b.tol {
            continue;
        }
        let start = columns.len();
        for c in range.clone() {
            let s = b.values[c].max(0.0).sqrt();
            columns.push(b.vectors[c].iter().map(|x| x * s).collect());
        }
        slices.push(start..columns.len());
        retained.push(*group);
    }
    let k = columns.len();
    if mode == ShiftMode::Low {
        let z = zeta_from_profile(n, &spaces.profile, spaces.tol)?;
        if z != k {
            return Err(Error::ZetaMismatch { rank: k, zeta: z });
        }
    }
    let points = (0..n).map(|i| columns.iter().map(|col| col[i]).collect()).collect();
    Ok(Embedding {
        points,
        zeta: k,
        shift_mode: mode,
        shift_value: reduced.shift_value,
        source: p.kind,
        profile: spaces.profile,
        slices,
        retained,
        degenerate: reduced.degenerate,
        reduced: reduced.matrix,
    })
}
