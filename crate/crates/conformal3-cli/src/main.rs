//! Command-line interface for the conformal3 toolkit.
//!
//! Subcommands: `catalog`, `classify`, `cohomogeneity`, `orbit`,
//! `verify-tables`, `reduce`. Exit codes: 0 ok, 1 I/O or parse failure,
//! 2 not a subalgebra, 3 dimension too small, 4 internal inconsistency
//! (including table-verification failure), 5 unknown label.

mod doc;
mod verify;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nalgebra::{Vector3, Vector4, Vector5};

use conformal3::catalog::{self, CatalogError, Filter};
use conformal3::classifier::{classify, ClassifyError};
use conformal3::lorentz::SpherePoint;
use conformal3::orbit::{
    cohomogeneity, orbit_cloud, orbit_dim_at, OrbitPoint, ScanConfig, Stratum,
};
use conformal3::reduction::reduction_scan;
use conformal3::subalgebra::{Model, ModelSubalgebra, SubalgebraError};
use conformal3::Tolerances;

use doc::SubalgebraDocument;

const EXIT_PARSE: u8 = 1;
const EXIT_NOT_SUBALGEBRA: u8 = 2;
const EXIT_DIMENSION: u8 = 3;
const EXIT_INCONSISTENT: u8 = 4;
const EXIT_UNKNOWN_LABEL: u8 = 5;

#[derive(Parser)]
#[command(
    name = "conformal3",
    about = "Similarity groups of E^3, the conformal 3-sphere, and their subgroup catalog",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct TolArgs {
    /// Tolerance for algebraic identities.
    #[arg(long, default_value_t = conformal3::tol::DEFAULT_EPS)]
    eps: f64,
    /// Relative tolerance for rank and subspace decisions.
    #[arg(long = "rank-tol", default_value_t = conformal3::tol::DEFAULT_RANK_TOL)]
    rank_tol: f64,
}

impl TolArgs {
    fn tol(&self) -> Tolerances {
        Tolerances::new(self.eps, self.rank_tol)
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the catalog of named groups with their claimed invariants.
    Catalog {
        /// Restrict to one model (`euclid` or `lorentz`).
        #[arg(long)]
        model: Option<String>,
        /// Restrict to entries with this claimed cohomogeneity.
        #[arg(long)]
        cohomogeneity: Option<usize>,
    },
    /// Decide the conjugacy class of a subalgebra document.
    Classify {
        /// Path to a subalgebra document (JSON).
        path: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Compute the cohomogeneity of a named group or a document.
    Cohomogeneity {
        /// Catalog label or path to a subalgebra document.
        target: String,
        /// Screw parameter for the `Na` family.
        #[arg(long)]
        a: Option<f64>,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long, default_value_t = 24221)]
        seed: u64,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Export an orbit point cloud through a given base point.
    Orbit {
        /// Catalog label.
        label: String,
        /// Base point: `x,y,z` for the Euclidean model, 4 (spatial) or
        /// 5 (null vector) comma-separated numbers for the sphere model.
        #[arg(long)]
        point: String,
        /// Screw parameter for the `Na` family.
        #[arg(long)]
        a: Option<f64>,
        #[arg(long, default_value_t = 200)]
        steps: usize,
        #[arg(long = "t-max", default_value_t = 1.0)]
        t_max: f64,
        #[arg(long, default_value_t = 24221)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// `csv` or `json`.
        #[arg(long, default_value = "csv")]
        format: String,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Re-verify every table claim and write a pass/fail report.
    VerifyTables {
        #[arg(long, default_value_t = 24221)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Scan a sphere-side group or document for invariant subspaces.
    Reduce {
        /// Catalog label or path to a subalgebra document.
        target: String,
        #[command(flatten)]
        tol: TolArgs,
    },
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        CliError::new(EXIT_UNKNOWN_LABEL, e.to_string())
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        let code = match e {
            ClassifyError::NotASubalgebra { .. } => EXIT_NOT_SUBALGEBRA,
            ClassifyError::DimensionTooSmall { .. } => EXIT_DIMENSION,
            _ => EXIT_INCONSISTENT,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<SubalgebraError> for CliError {
    fn from(e: SubalgebraError) -> Self {
        let code = match e {
            SubalgebraError::NotASubalgebra { .. } => EXIT_NOT_SUBALGEBRA,
            SubalgebraError::ModelMismatch { .. } => EXIT_PARSE,
            SubalgebraError::InternalInconsistency => EXIT_INCONSISTENT,
        };
        CliError::new(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not errors
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_PARSE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Catalog {
            model,
            cohomogeneity,
        } => cmd_catalog(model, cohomogeneity),
        Command::Classify { path, tol } => cmd_classify(&path, tol.tol()),
        Command::Cohomogeneity {
            target,
            a,
            samples,
            seed,
            tol,
        } => cmd_cohomogeneity(&target, a, samples, seed, tol.tol()),
        Command::Orbit {
            label,
            point,
            a,
            steps,
            t_max,
            seed,
            out,
            format,
            tol,
        } => cmd_orbit(&label, &point, a, steps, t_max, seed, out, &format, tol.tol()),
        Command::VerifyTables {
            seed,
            samples,
            out,
            tol,
        } => cmd_verify_tables(seed, samples, out, tol.tol()),
        Command::Reduce { target, tol } => cmd_reduce(&target, tol.tol()),
    }
}

fn parse_model(s: &str) -> Result<Model, CliError> {
    match s.to_ascii_lowercase().as_str() {
        "euclid" => Ok(Model::Euclid),
        "lorentz" => Ok(Model::Lorentz),
        other => Err(CliError::new(
            EXIT_PARSE,
            format!("unknown model `{other}` (expected `euclid` or `lorentz`)"),
        )),
    }
}

fn cmd_catalog(model: Option<String>, coh: Option<usize>) -> Result<(), CliError> {
    let filter = Filter {
        model: model.as_deref().map(parse_model).transpose()?,
        cohomogeneity: coh,
    };
    let entries = catalog::list(filter);
    let header = ["label", "model", "dim", "cohom", "compact", "source", "orbits"];
    println!(
        "{:<16} {:<8} {:>3} {:>6} {:>8}  {:<14} {}",
        header[0], header[1], header[2], header[3], header[4], header[5], header[6]
    );
    for e in &entries {
        println!(
            "{:<16} {:<8} {:>3} {:>6} {:>8}  {:<14} {}",
            e.label.canonical(),
            e.model.to_string(),
            e.dim,
            e.claimed_cohomogeneity,
            e.compact,
            e.source,
            e.orbit_description
        );
        for (name, about) in e.sub_entries {
            println!("{:<16}   - {name}: {about}", "");
        }
    }
    println!("{} entries", entries.len());
    Ok(())
}

fn read_document(path: &std::path::Path, eps: f64) -> Result<ModelSubalgebra, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    let doc: SubalgebraDocument = serde_json::from_str(&text)
        .map_err(|e| CliError::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    doc.to_subalgebra(eps)
        .map_err(|e| CliError::new(EXIT_PARSE, e.to_string()))
}

fn format_conjugator(g: &conformal3::euclid::ConfElement) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "  alpha = {:.12}", g.alpha);
    for i in 0..3 {
        let _ = writeln!(
            s,
            "  A[{i}] = [{:.12}, {:.12}, {:.12}]",
            g.rotation[(i, 0)],
            g.rotation[(i, 1)],
            g.rotation[(i, 2)]
        );
    }
    let _ = write!(
        s,
        "  v = [{:.12}, {:.12}, {:.12}]",
        g.translation[0], g.translation[1], g.translation[2]
    );
    s
}

fn cmd_classify(path: &std::path::Path, tol: Tolerances) -> Result<(), CliError> {
    let alg = read_document(path, tol.eps)?;
    let euclid = alg.as_euclid().map_err(|_| {
        CliError::new(
            EXIT_PARSE,
            "classification applies to the euclid model only",
        )
    })?;
    let result = classify(euclid, tol.rank_tol)?;
    println!("class: {}", result.label.canonical());
    if let Some(a) = result.parameter {
        println!("parameter |a|: {a:.12}");
    }
    println!("residual: {:.3e}", result.residual);
    println!("conjugator:\n{}", format_conjugator(&result.conjugator));
    Ok(())
}

/// Looks up the target either as a catalog label or as a document path.
fn resolve_target(
    target: &str,
    a: Option<f64>,
    eps: f64,
) -> Result<(String, ModelSubalgebra), CliError> {
    if catalog::parse_label(target).is_some() {
        let entry = catalog::get(target, a)?;
        Ok((entry.label.canonical().to_string(), entry.generators))
    } else if std::path::Path::new(target).exists() {
        Ok((target.to_string(), read_document(std::path::Path::new(target), eps)?))
    } else {
        Err(CliError::new(
            EXIT_UNKNOWN_LABEL,
            format!("`{target}` is neither a catalog label nor an existing file"),
        ))
    }
}

fn format_witness(p: &OrbitPoint) -> String {
    match p {
        OrbitPoint::Euclid(v) => format!("({:.4}, {:.4}, {:.4})", v[0], v[1], v[2]),
        OrbitPoint::Lorentz(s) => {
            let n = s.coords();
            format!(
                "({:.4}, {:.4}, {:.4}, {:.4}, {:.4})",
                n[0], n[1], n[2], n[3], n[4]
            )
        }
    }
}

fn print_strata(strata: &[Stratum]) {
    for s in strata {
        println!(
            "  dim {}: {} samples, witness {}",
            s.dim,
            s.count,
            format_witness(&s.witness)
        );
    }
}

fn cmd_cohomogeneity(
    target: &str,
    a: Option<f64>,
    samples: usize,
    seed: u64,
    tol: Tolerances,
) -> Result<(), CliError> {
    let (name, alg) = resolve_target(target, a, tol.eps)?;
    alg.closure_check(tol.rank_tol)
        .passes(tol.rank_tol)
        .then_some(())
        .ok_or_else(|| {
            CliError::new(EXIT_NOT_SUBALGEBRA, "generators do not close under the bracket")
        })?;
    let cfg = ScanConfig {
        samples,
        seed,
        include_probes: true,
    };
    let report = cohomogeneity(&alg, &cfg, tol.rank_tol)
        .map_err(|e| CliError::new(EXIT_INCONSISTENT, e.to_string()))?;
    println!("group: {name}");
    println!("model: {}", alg.model());
    println!("max orbit dim: {}", report.max_dim);
    println!("cohomogeneity: {}", report.cohomogeneity);
    println!("strata (seed {}):", report.seed);
    print_strata(&report.strata);
    Ok(())
}

fn parse_point(spec: &str, model: Model) -> Result<OrbitPoint, CliError> {
    let nums: Result<Vec<f64>, _> = spec.split(',').map(|t| t.trim().parse::<f64>()).collect();
    let nums = nums.map_err(|e| CliError::new(EXIT_PARSE, format!("bad point `{spec}`: {e}")))?;
    match (model, nums.len()) {
        (Model::Euclid, 3) => Ok(OrbitPoint::Euclid(Vector3::new(nums[0], nums[1], nums[2]))),
        (Model::Lorentz, 4) => Ok(OrbitPoint::Lorentz(SpherePoint::from_spatial(
            &Vector4::new(nums[0], nums[1], nums[2], nums[3]),
        ))),
        (Model::Lorentz, 5) => {
            let v = Vector5::from_column_slice(&nums);
            let s = SpherePoint::from_null_vector(&v, 1e-9)
                .map_err(|e| CliError::new(EXIT_PARSE, e.to_string()))?;
            Ok(OrbitPoint::Lorentz(s))
        }
        (m, n) => Err(CliError::new(
            EXIT_PARSE,
            format!("point for the {m} model cannot have {n} coordinates"),
        )),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_orbit(
    label: &str,
    point: &str,
    a: Option<f64>,
    steps: usize,
    t_max: f64,
    seed: u64,
    out: Option<PathBuf>,
    format: &str,
    tol: Tolerances,
) -> Result<(), CliError> {
    let entry = catalog::get(label, a)?;
    let base = parse_point(point, entry.model)?;
    let cloud = orbit_cloud(
        &entry.generators,
        entry.label.canonical(),
        &base,
        steps,
        t_max,
        seed,
        tol.rank_tol,
    )
    .map_err(|e| CliError::new(EXIT_INCONSISTENT, e.to_string()))?;

    let rendered = match format {
        "csv" => doc::cloud_to_csv(&cloud),
        "json" => doc::cloud_to_json(&cloud),
        other => {
            return Err(CliError::new(
                EXIT_PARSE,
                format!("unknown format `{other}` (expected csv or json)"),
            ))
        }
    };
    match out {
        Some(path) => std::fs::write(&path, rendered)
            .map_err(|e| CliError::new(EXIT_PARSE, format!("{}: {e}", path.display())))?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn cmd_verify_tables(
    seed: u64,
    samples: usize,
    out: Option<PathBuf>,
    tol: Tolerances,
) -> Result<(), CliError> {
    let cfg = verify::VerifyConfig {
        seed,
        samples,
        tol,
        conjugations: 100,
    };
    let outcome = verify::run(&cfg);
    print!("{}", outcome.report);
    if let Some(path) = out {
        std::fs::write(&path, &outcome.report)
            .map_err(|e| CliError::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    }
    if outcome.passed {
        Ok(())
    } else {
        Err(CliError::new(
            EXIT_INCONSISTENT,
            format!(
                "{} of {} checks failed (first failing section [{}])",
                outcome.failures,
                outcome.checks,
                outcome.first_failing_section.unwrap_or("?")
            ),
        ))
    }
}

fn cmd_reduce(target: &str, tol: Tolerances) -> Result<(), CliError> {
    let (name, alg) = resolve_target(target, None, tol.eps)?;
    let lorentz = alg.as_lorentz().map_err(|_| {
        CliError::new(EXIT_PARSE, "reduction scan applies to the lorentz model only")
    })?;
    let report = reduction_scan(lorentz, tol.rank_tol)?;
    println!("group: {name}");
    println!("common kernel dimension: {}", report.kernel_dim);
    println!("invariant lines:");
    for l in &report.lines {
        let v = l.basis[0];
        println!(
            "  span({:.4}, {:.4}, {:.4}, {:.4}, {:.4})  signature (-,0,+) = {:?}",
            v[0], v[1], v[2], v[3], v[4], l.signature
        );
    }
    println!("invariant 2-planes:");
    for p in &report.planes {
        println!("  signature (-,0,+) = {:?}", p.signature);
    }
    println!("branches:");
    for b in &report.branches {
        println!("  - {b}");
    }
    // a sanity probe so the orbit machinery agrees with the scan
    let probe = OrbitPoint::Lorentz(SpherePoint::from_spatial(&Vector4::new(
        0.5, -0.5, 0.5, 0.5,
    )));
    if let Ok(dim) = orbit_dim_at(&alg, &probe, tol.rank_tol) {
        println!("orbit dimension at a generic probe: {dim}");
    }
    Ok(())
}
