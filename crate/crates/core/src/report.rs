//! End-to-end run reports in JSON or plain text.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::autgroup::GroupLimits;
use crate::error::Result;
use crate::graph::{adjacency_matrix, graph_metrics, Multigraph};
use crate::isometry::{verify_regular, RegularityCertificate, VerifyOptions};
use crate::linalg::sym_eigen;
use crate::predistance::{check_commuting, check_reconstructing, Predistance, PredistanceKind};
use crate::spectral::{default_group_tol, embed, group_values, EigenGroup, ShiftMode, SpectralProfile};
use crate::twins::{factorize_aut_order, quotient, twin_decomposition, AutFactorization};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ReportFormat {
    Json,
    Text,
}

/// Settings shared by every pipeline stage.
#[derive(Debug, Clone)]
pub struct RunOptions {
    pub shift: ShiftMode,
    pub group_tol: Option<f64>,
    pub verify: VerifyOptions,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { shift: ShiftMode::Low, group_tol: None, verify: VerifyOptions::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputSummary {
    pub n: usize,
    pub edge_pairs: usize,
    pub total_multiplicity: u64,
    pub simple: bool,
    pub connected: bool,
    pub degrees: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwinSection {
    /// 1-based vertex classes.
    pub classes: Vec<Vec<usize>>,
    pub inner_multiplicity: Vec<u32>,
    pub irreducible: bool,
    pub quotient_n: usize,
    pub quotient_edges: Vec<(usize, usize, u32)>,
    pub factorization: AutFactorization,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredistanceSection {
    pub kind: PredistanceKind,
    pub commuting: bool,
    pub reconstructing: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingSection {
    pub dimension: usize,
    pub shift_mode: ShiftMode,
    pub shift_value: f64,
    pub slices: Vec<[usize; 2]>,
    pub retained: Vec<EigenGroup>,
    pub degenerate: bool,
    pub reproduction_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub input: InputSummary,
    pub twins: TwinSection,
    /// Grouped eigenvalues of the adjacency matrix, all of them.
    pub adjacency_spectrum: Vec<EigenGroup>,
    pub predistance: PredistanceSection,
    /// Profile of the bilinear form of the predistance.
    pub profile: SpectralProfile,
    pub zeta: usize,
    pub embedding: EmbeddingSection,
    pub certificate: Option<RegularityCertificate>,
    pub notes: Vec<String>,
}

/// Grouped spectrum of a symmetric matrix, descending.
pub fn grouped_spectrum(m: &crate::graph::SymMatrix, tol: Option<f64>) -> Result<Vec<EigenGroup>> {
    let eig = sym_eigen(m)?;
    let radius = eig.values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let tol = tol.unwrap_or_else(|| default_group_tol(radius));
    Ok(group_values(&eig.values, tol)?.into_iter().map(|(g, _)| g).collect())
}

/// Runs parse-independent stages on `g` with predistance `p`.
pub fn build_report(g: &Multigraph, p: &Predistance, opts: &RunOptions) -> Result<RunReport> {
    let limits: &GroupLimits = &opts.verify.limits;
    let metrics = graph_metrics(g);
    let input = InputSummary {
        n: g.n(),
        edge_pairs: g.edges().len(),
        total_multiplicity: g.edges().iter().map(|e| e.2 as u64).sum(),
        simple: g.is_simple(),
        connected: metrics.connected,
        degrees: metrics.degrees,
    };

    let partition = twin_decomposition(g);
    let q = quotient(g, &partition)?;
    let irreducible = partition.is_discrete();
    let twins = TwinSection {
        classes: partition.classes.iter().map(|c| c.iter().map(|v| v + 1).collect()).collect(),
        inner_multiplicity: partition.inner_multiplicity.clone(),
        irreducible,
        quotient_n: q.n(),
        quotient_edges: q.edges().into_iter().map(|(i, j, m)| (i + 1, j + 1, m)).collect(),
        factorization: factorize_aut_order(g, limits)?,
    };

    let adjacency_spectrum = grouped_spectrum(&adjacency_matrix(g), opts.group_tol)?;
    let predistance = PredistanceSection {
        kind: p.kind,
        commuting: check_commuting(p, g, limits)?.holds(),
        reconstructing: check_reconstructing(p, g)?.holds(),
    };

    let emb = embed(p, opts.shift, opts.group_tol)?;
    let zeta = crate::spectral::zeta_from_profile(g.n(), &emb.profile, {
        let radius = emb.profile.groups.iter().fold(0.0f64, |a, e| a.max(e.value.abs()));
        opts.group_tol.unwrap_or_else(|| default_group_tol(radius))
    })?;
    let embedding = EmbeddingSection {
        dimension: emb.dimension(),
        shift_mode: emb.shift_mode,
        shift_value: emb.shift_value,
        slices: emb.slices.iter().map(|r| [r.start, r.end]).collect(),
        retained: emb.retained.clone(),
        degenerate: emb.degenerate,
        reproduction_error: emb.reproduction_error(),
    };

    let mut notes = Vec::new();
    if emb.degenerate {
        notes.push("spectral profile has at most one group; all points coincide".to_string());
    }
    let certificate = if irreducible {
        Some(verify_regular(g, p, &emb, &opts.verify)?)
    } else {
        notes.push(format!(
            "graph is reducible ({} of {} vertices are distinct up to twins); certificate skipped, \
             run on the quotient instead",
            partition.classes.len(),
            g.n()
        ));
        None
    };

    Ok(RunReport {
        input,
        twins,
        adjacency_spectrum,
        predistance,
        profile: emb.profile.clone(),
        zeta,
        embedding,
        certificate,
        notes,
    })
}

/// `x` rounded to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn round_value(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Number(num) if num.is_f64() => {
            let x = round12(num.as_f64().expect("f64 number"));
            if let Some(r) = serde_json::Number::from_f64(x) {
                *num = r;
            }
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(round_value),
        serde_json::Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Serializes `value` with every float rounded to 12 significant digits.
pub fn to_rounded_json<T: Serialize>(value: &T) -> serde_json::Value {
    let mut v = serde_json::to_value(value).expect("report serializes");
    round_value(&mut v);
    v
}

fn fmt_float(x: f64) -> String {
    format!("{}", round12(x))
}

fn fmt_groups(groups: &[EigenGroup]) -> String {
    if groups.is_empty() {
        return "none".to_string();
    }
    groups
        .iter()
        .map(|g| {
            if g.multiplicity == 1 {
                fmt_float(g.value)
            } else {
                format!("{} (×{})", fmt_float(g.value), g.multiplicity)
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn render_report(run: &RunReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&to_rounded_json(run)).expect("json value prints");
            s.push('\n');
            s
        }
        ReportFormat::Text => render_text(run),
    }
}

fn render_text(run: &RunReport) -> String {
    let mut s = String::new();
    let i = &run.input;
    let _ = writeln!(s, "graph");
    let _ = writeln!(s, "  vertices            {}", i.n);
    let _ = writeln!(s, "  adjacent pairs      {}", i.edge_pairs);
    let _ = writeln!(s, "  edges (with mult.)  {}", i.total_multiplicity);
    let _ = writeln!(s, "  simple              {}", yes_no(i.simple));
    let _ = writeln!(s, "  connected           {}", yes_no(i.connected));

    let t = &run.twins;
    let _ = writeln!(s, "twin decomposition");
    let classes: Vec<String> = t
        .classes
        .iter()
        .map(|c| format!("{{{}}}", c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    let _ = writeln!(s, "  classes             {}", classes.join(" "));
    let _ = writeln!(s, "  irreducible         {}", yes_no(t.irreducible));
    let _ = writeln!(s, "  quotient order      {}", t.quotient_n);
    let factorials: Vec<String> =
        t.factorization.class_sizes.iter().filter(|&&k| k > 1).map(|k| format!("{k}!")).collect();
    if factorials.is_empty() {
        let _ = writeln!(s, "  |Aut|               {}", t.factorization.total);
    } else {
        let _ = writeln!(
            s,
            "  |Aut|               {} = {} x {}",
            t.factorization.total,
            factorials.join(" x "),
            t.factorization.quotient_aut_order
        );
    }

    let _ = writeln!(s, "adjacency eigenvalues");
    for g in &run.adjacency_spectrum {
        let _ = writeln!(s, "  {:>16}  ×{}", fmt_float(g.value), g.multiplicity);
    }

    let p = &run.predistance;
    let _ = writeln!(s, "predistance          {}", p.kind);
    let _ = writeln!(s, "  commuting           {}", yes_no(p.commuting));
    let _ = writeln!(s, "  reconstructing      {}", yes_no(p.reconstructing));
    let _ = writeln!(s, "  bilinear form       {}", fmt_groups(&run.profile.groups));
    let _ = writeln!(s, "  zeta                {}", run.zeta);

    let e = &run.embedding;
    let _ = writeln!(s, "embedding");
    let _ = writeln!(s, "  shift               {} ({})", e.shift_mode.as_str(), fmt_float(e.shift_value));
    let _ = writeln!(s, "  dimension           {}", e.dimension);
    let _ = writeln!(s, "  retained groups     {}", fmt_groups(&e.retained));
    let _ = writeln!(s, "  reproduction error  {:e}", e.reproduction_error);

    match &run.certificate {
        Some(c) => {
            let _ = writeln!(s, "certificate");
            let _ = writeln!(s, "  |Aut(G)|            {}", c.aut_order);
            let _ = writeln!(s, "  isometry perms      {}", c.isometry_perm_order);
            let _ = writeln!(s, "  groups equal        {}", yes_no(c.groups_equal));
            let _ = writeln!(s, "  spans               {}", yes_no(c.spans));
            let _ = writeln!(s, "  injective           {}", yes_no(c.injective));
        }
        None => {
            let _ = writeln!(s, "certificate          none");
        }
    }
    for note in &run.notes {
        let _ = writeln!(s, "note: {note}");
    }
    s
}
