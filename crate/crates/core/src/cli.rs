//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failed, 2 bad input or usage,
//! 3 size cap exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::autgroup::GroupLimits;
use crate::coherent::{coherent_basis, perturb_with_adjacency};
use crate::error::{Error, Result};
use crate::graph::{parse_multigraph, Multigraph};
use crate::isometry::{verify_regular, VerifyOptions};
use crate::predistance::{build_predistance, Predistance, PredistanceKind};
use crate::report::{build_report, render_report, to_rounded_json, ReportFormat, RunOptions};
use crate::spectral::{bilinear_form, eigenspaces, embed, zeta_from_profile, ShiftMode};
use crate::twins::{factorize_aut_order, quotient, twin_decomposition};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_SIZE: i32 = 3;

const DEFAULT_GROUP_MAX_N: usize = 12;
const DEFAULT_SPECTRAL_MAX_N: usize = 500;
const DEFAULT_WL_MAX_N: usize = 100;

#[derive(Debug, Parser)]
#[command(name = "regemb", version, about = "Regular Euclidean embeddings of multigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Twin decomposition, quotient and automorphism group order.
    Reduce(CommonArgs),
    /// Grouped spectrum of the predistance bilinear form.
    Spectrum(CommonArgs),
    /// Point coordinates.
    Embed(CommonArgs),
    /// Regularity certificate; exit 1 unless the groups agree.
    Verify(CommonArgs),
    /// Coherent configuration summary.
    Wl(WlArgs),
    /// Everything above in one document.
    Report(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Graph file (edge list or JSON).
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_parser = parse_kind, default_value = "adjacency")]
    predistance: PredistanceKind,
    /// JSON n x n matrix; implies `--predistance custom`.
    #[arg(long)]
    custom_predistance: Option<PathBuf>,
    /// Add eps * A to the custom predistance (eps chosen automatically unless
    /// `--epsilon` is given).
    #[arg(long)]
    perturb: bool,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long, value_enum, default_value_t = ShiftMode::Low)]
    shift: ShiftMode,
    /// Relative tolerance on squared distances when matching isometries.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Eigenvalue grouping tolerance (default scales with the spectral radius).
    #[arg(long)]
    group_tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Raise or lower the vertex-count cap for this command.
    #[arg(long)]
    max_n: Option<usize>,
}

#[derive(Debug, Args)]
struct WlArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Include every basis matrix in the output.
    #[arg(long)]
    matrices: bool,
}

fn parse_kind(s: &str) -> std::result::Result<PredistanceKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_size_limit() {
                EXIT_SIZE
            } else {
                EXIT_INVALID
            }
        }
    }
}

struct Loaded {
    graph: Multigraph,
    predistance: Option<Predistance>,
}

fn cap(args: &CommonArgs, default: usize, err: &mut dyn Write) -> usize {
    match args.max_n {
        Some(m) => {
            if m > default {
                let _ = writeln!(err, "note: vertex cap raised from {default} to {m} by --max-n");
            }
            m
        }
        None => default,
    }
}

fn load(args: &CommonArgs, max_n: usize, need_predistance: bool) -> Result<Loaded> {
    let text = std::fs::read_to_string(&args.input).map_err(|e| Error::Io(format!("{}: {e}", args.input.display())))?;
    let graph = parse_multigraph(&text)?;
    if graph.n() > max_n {
        return Err(Error::TooLarge { what: "input graph", n: graph.n(), max: max_n });
    }
    if graph.n() == 0 {
        return Err(Error::Invalid("graph has no vertices".into()));
    }
    if !need_predistance {
        return Ok(Loaded { graph, predistance: None });
    }
    let mut p = match (&args.custom_predistance, args.predistance) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let p = Predistance::from_json(&text)?;
            if p.n() != graph.n() {
                return Err(Error::Invalid(format!("custom predistance has order {}, graph has {}", p.n(), graph.n())));
            }
            p
        }
        (None, PredistanceKind::Custom) => {
            return Err(Error::Invalid("--predistance custom needs --custom-predistance PATH".into()))
        }
        (None, kind) => build_predistance(&graph, kind)?,
    };
    if args.perturb {
        p = perturb_with_adjacency(&p, &graph, args.epsilon)?;
    }
    Ok(Loaded { graph, predistance: Some(p) })
}

fn emit(args: &CommonArgs, body: &str, out: &mut dyn Write) -> Result<()> {
    match &args.out {
        Some(path) => std::fs::write(path, body).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => out.write_all(body.as_bytes()).map_err(Error::from),
    }
}

fn json_body(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value prints");
    s.push('\n');
    s
}

fn report_format(args: &CommonArgs) -> Result<ReportFormat> {
    match args.format {
        None | Some(Format::Json) => Ok(ReportFormat::Json),
        Some(Format::Text) => Ok(ReportFormat::Text),
        Some(Format::Csv) => Err(Error::Invalid("csv output is only available for embed".into())),
    }
}

fn group_limits(max_n: usize) -> GroupLimits {
    GroupLimits { max_n, ..GroupLimits::default() }
}

fn verify_options(args: &CommonArgs, max_n: usize) -> VerifyOptions {
    VerifyOptions { distance_tol: args.tol, limits: group_limits(max_n) }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Reduce(args) => {
            let format = report_format(&args)?;
            let max_n = cap(&args, DEFAULT_GROUP_MAX_N, err);
            let loaded = load(&args, DEFAULT_SPECTRAL_MAX_N.max(max_n), false)?;
            let g = &loaded.graph;
            let p = twin_decomposition(g);
            let q = quotient(g, &p)?;
            let f = factorize_aut_order(g, &group_limits(max_n))?;
            let doc = json!({
                "n": g.n(),
                "classes": p.classes.iter().map(|c| c.iter().map(|v| v + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "class_sizes": p.class_sizes(),
                "inner_multiplicity": p.inner_multiplicity,
                "irreducible": p.is_discrete(),
                "quotient": serde_json::from_str::<serde_json::Value>(&q.to_json()).expect("graph json"),
                "factorization": f,
            });
            let body = match format {
                ReportFormat::Json => json_body(&doc),
                ReportFormat::Text => format!(
                    "classes {:?}\nquotient order {}\n|Aut| = {} (quotient part {})\n",
                    p.class_sizes(),
                    q.n(),
                    f.total,
                    f.quotient_aut_order
                ),
            };
            emit(&args, &body, out)?;
            Ok(EXIT_OK)
        }
        Command::Spectrum(args) => {
            let format = report_format(&args)?;
            let max_n = cap(&args, DEFAULT_SPECTRAL_MAX_N, err);
            let loaded = load(&args, max_n, true)?;
            let p = loaded.predistance.expect("requested");
            let spaces = eigenspaces(&bilinear_form(&p.matrix), args.group_tol)?;
            let zeta = zeta_from_profile(p.n(), &spaces.profile, spaces.tol)?;
            let doc = json!({
                "kind": p.kind,
                "n": p.n(),
                "groups": spaces.profile.groups,
                "ones_eigenvalue": spaces.profile.ones_eigenvalue,
                "group_tol": spaces.tol,
                "zeta": zeta,
            });
            let body = match format {
                ReportFormat::Json => json_body(&to_rounded_json(&doc)),
                ReportFormat::Text => {
                    let mut s = String::new();
                    for g in &spaces.profile.groups {
                        s.push_str(&format!("{:>20}  ×{}\n", crate::report::round12(g.value), g.multiplicity));
                    }
                    s.push_str(&format!("zeta {zeta}\n"));
                    s
                }
            };
            emit(&args, &body, out)?;
            Ok(EXIT_OK)
        }
        Command::Embed(args) => {
            let max_n = cap(&args, DEFAULT_SPECTRAL_MAX_N, err);
            let loaded = load(&args, max_n, true)?;
            let p = loaded.predistance.expect("requested");
            let e = embed(&p, args.shift, args.group_tol)?;
            let body = match args.format {
                None | Some(Format::Json) => json_body(&serde_json::to_value(e.document()).expect("embedding")),
                Some(Format::Csv) => e.to_csv(),
                Some(Format::Text) => return Err(Error::Invalid("embed writes json or csv".into())),
            };
            emit(&args, &body, out)?;
            Ok(EXIT_OK)
        }
        Command::Verify(args) => {
            let format = report_format(&args)?;
            let max_n = cap(&args, DEFAULT_GROUP_MAX_N, err);
            let loaded = load(&args, max_n, true)?;
            let p = loaded.predistance.expect("requested");
            let e = embed(&p, args.shift, args.group_tol)?;
            let cert = verify_regular(&loaded.graph, &p, &e, &verify_options(&args, max_n))?;
            let body = match format {
                ReportFormat::Json => json_body(&serde_json::to_value(&cert).expect("certificate")),
                ReportFormat::Text => format!(
                    "dimension {}\n|Aut(G)| {}\nisometry permutations {}\ngroups equal {}\n",
                    cert.dimension, cert.aut_order, cert.isometry_perm_order, cert.groups_equal
                ),
            };
            emit(&args, &body, out)?;
            Ok(if cert.groups_equal { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Command::Wl(wl) => {
            let args = &wl.common;
            let format = report_format(args)?;
            let max_n = cap(args, DEFAULT_WL_MAX_N, err);
            let loaded = load(args, max_n, false)?;
            let basis = coherent_basis(&loaded.graph)?;
            let summary = basis.summary();
            let body = match format {
                ReportFormat::Json => {
                    let mut doc = serde_json::to_value(&summary).expect("summary");
                    if wl.matrices {
                        doc["matrices"] = serde_json::to_value(basis.matrices()).expect("matrices");
                    }
                    json_body(&doc)
                }
                ReportFormat::Text => format!(
                    "classes {} ({} diagonal)\nsizes {:?}\n",
                    summary.classes, summary.diagonal_classes, summary.class_sizes
                ),
            };
            emit(args, &body, out)?;
            Ok(EXIT_OK)
        }
        Command::Report(args) => {
            let format = report_format(&args)?;
            let max_n = cap(&args, DEFAULT_GROUP_MAX_N, err);
            let loaded = load(&args, max_n, true)?;
            let p = loaded.predistance.expect("requested");
            let opts =
                RunOptions { shift: args.shift, group_tol: args.group_tol, verify: verify_options(&args, max_n) };
            let run = build_report(&loaded.graph, &p, &opts)?;
            emit(&args, &render_report(&run, format), out)?;
            Ok(EXIT_OK)
        }
    }
}
