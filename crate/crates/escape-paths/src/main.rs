//! Command-line surface: path I/O, verification, optimization, shortening,
//! bounds tables, and SVG figure rendering. Angles are radians everywhere,
//! matching the JSON path format.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use escape_paths::bounds;
use escape_paths::candidates;
use escape_paths::coverage::{
    verify_by_hull, verify_by_sampling, verify_certified, CoverageError, CoverageReport,
    VerifyConfig,
};
use escape_paths::doc;
use escape_paths::geom::{Angle, PiecewisePath};
use escape_paths::optimize::{
    anneal_search, golden_minimize, result_polyline, SearchConfig, SearchMode,
};
use escape_paths::shortening::greedy_shorten;
use escape_paths::svg::{render_svg, RenderOptions, TangentOverlay};

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_UNCOVERED: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "escape-paths",
    about = "Search paths meeting every tangent of the unit circle",
    long_about = "Constructs, verifies, shortens, and optimizes search paths that meet \
every tangent line of the unit circle. All angles are in radians and all \
lengths in circle radii, both on the command line and in the JSON path format."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Certified,
    Sampling,
    Hull,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Theorem1,
    Theorem2,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a path meets every tangent of the unit circle.
    Verify(VerifyArgs),
    /// Print the total length of a path at 12 decimals.
    Length { path: PathBuf },
    /// Write a canonical candidate construction to a JSON file.
    Candidates(CandidatesArgs),
    /// Minimize the closed-form family length over its parameter.
    Optimize(OptimizeArgs),
    /// Simulated-annealing search over free polylines.
    Search(SearchArgs),
    /// Apply length-reducing moves until none saves further length.
    Shorten(ShortenArgs),
    /// Print the table of closed-form lengths, constants, and bounds.
    Bounds(BoundsArgs),
    /// Render a path (and optionally tangent lines) to SVG.
    Plot(PlotArgs),
}

#[derive(Args)]
struct VerifyArgs {
    path: PathBuf,
    #[arg(long, value_enum, default_value = "certified")]
    method: MethodArg,
    /// Coverage tolerance: covered means deficit >= -tol.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Initial theta-grid size for the certified method.
    #[arg(long, default_value_t = 4096)]
    grid: usize,
    /// Bisection depth budget for the certified method.
    #[arg(long, default_value_t = 40)]
    refine: usize,
}

#[derive(Args)]
struct CandidatesArgs {
    /// One of: naive, figure1, figure2:<alpha>, theorem1, theorem2.
    #[arg(long)]
    name: String,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct OptimizeArgs {
    /// Family name (only "figure2" is available).
    #[arg(long, default_value = "figure2")]
    family: String,
    #[arg(long, default_value_t = 1e-10)]
    xtol: f64,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_enum)]
    mode: ModeArg,
    #[arg(long, default_value_t = 12)]
    vertices: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20000)]
    iterations: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ShortenArgs {
    path: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct BoundsArgs {
    /// Dimension for the generic bounds row (requires both constants).
    #[arg(long)]
    dim: Option<u32>,
    /// Caller-supplied constant for the lower bound const + 2n.
    #[arg(long)]
    c_lower: Option<f64>,
    /// Caller-supplied constant for the upper bound const * n^(3/2).
    #[arg(long)]
    c_upper: Option<f64>,
}

#[derive(Args)]
struct PlotArgs {
    path: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    /// "witness" (tangent at the verifier's witness angle) or "grid:N".
    #[arg(long)]
    tangents: Option<String>,
}

fn fail(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_INPUT)
}

fn load_path(file: &PathBuf) -> Result<PiecewisePath, String> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
    doc::parse(&text).map_err(|e| format!("{}: {e}", file.display()))
}

fn write_file(file: &PathBuf, contents: &str) -> Result<(), String> {
    std::fs::write(file, contents).map_err(|e| format!("cannot write {}: {e}", file.display()))
}

fn print_report(report: &CoverageReport) {
    let verdict = if report.covered { "covered" } else { "uncovered" };
    println!(
        "{verdict} deficit={:.9} witness_theta={:.6}",
        report.deficit,
        report.witness_theta.radians()
    );
}

fn cmd_verify(args: &VerifyArgs) -> ExitCode {
    let path = match load_path(&args.path) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    let cfg = VerifyConfig {
        tol: args.tol,
        initial_grid: args.grid,
        max_refinements: args.refine,
        ..VerifyConfig::default()
    };
    let report = match args.method {
        MethodArg::Certified => verify_certified(&path, &cfg),
        MethodArg::Sampling => Ok(verify_by_sampling(&path, &cfg)),
        MethodArg::Hull => verify_by_hull(&path, &cfg),
    };
    match report {
        Ok(report) => {
            print_report(&report);
            if report.covered {
                ExitCode::from(EXIT_OK)
            } else {
                ExitCode::from(EXIT_UNCOVERED)
            }
        }
        Err(CoverageError::Inconclusive { theta, value }) => {
            println!("inconclusive theta={theta:.6} value={value:.9}");
            ExitCode::from(EXIT_INCONCLUSIVE)
        }
        Err(CoverageError::DegenerateHull) => {
            println!("uncovered deficit=-inf witness_theta=0.000000 (degenerate hull)");
            ExitCode::from(EXIT_UNCOVERED)
        }
    }
}

fn cmd_candidates(args: &CandidatesArgs) -> ExitCode {
    let path = if let Some(alpha) = args.name.strip_prefix("figure2:") {
        let alpha: f64 = match alpha.parse() {
            Ok(a) => a,
            Err(_) => return fail(format!("bad alpha in '{}'", args.name)),
        };
        match candidates::figure2_path(Angle(alpha)) {
            Ok(p) => p,
            Err(e) => return fail(e),
        }
    } else {
        match args.name.as_str() {
            "naive" => candidates::naive_path(),
            "figure1" => candidates::figure1_path(),
            "theorem1" => candidates::theorem1_path(),
            "theorem2" => candidates::theorem2_path(),
            other => {
                return fail(format!(
                    "unknown candidate '{other}' (expected naive, figure1, figure2:<alpha>, theorem1, theorem2)"
                ))
            }
        }
    };
    if let Err(e) = write_file(&args.output, &doc::serialize(&path)) {
        return fail(e);
    }
    println!(
        "wrote {} ({} pieces, length {:.12})",
        args.output.display(),
        path.pieces().len(),
        path.length()
    );
    ExitCode::from(EXIT_OK)
}

fn cmd_optimize(args: &OptimizeArgs) -> ExitCode {
    if args.family != "figure2" {
        return fail(format!("unknown family '{}'", args.family));
    }
    let f = escape_paths::optimize::family_length_function();
    match golden_minimize(f, 0.01, 1.4, args.xtol) {
        Ok((alpha, value)) => {
            println!("alpha_star={alpha:.12} length={value:.12}");
            ExitCode::from(EXIT_OK)
        }
        Err(e) => fail(e),
    }
}

fn cmd_search(args: &SearchArgs) -> ExitCode {
    let mode = match args.mode {
        ModeArg::Theorem1 => SearchMode::Theorem1,
        ModeArg::Theorem2 => SearchMode::Theorem2,
    };
    let mut scfg = SearchConfig::new(mode, args.vertices, args.seed);
    scfg.iterations = args.iterations;
    let vcfg = VerifyConfig::default();
    let result = anneal_search(&scfg, &vcfg);
    println!(
        "value={:.12} deficit={:.3e} converged={}",
        result.value, result.deficit, result.converged
    );
    if let Some(out) = &args.output {
        let path = result_polyline(&result);
        if let Err(e) = write_file(out, &doc::serialize(&path)) {
            return fail(e);
        }
    }
    ExitCode::from(EXIT_OK)
}

fn cmd_shorten(args: &ShortenArgs) -> ExitCode {
    let path = match load_path(&args.path) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    let cfg = VerifyConfig::default();
    match greedy_shorten(&path, &cfg) {
        Ok((result, log)) => {
            for outcome in &log {
                println!("{}: saved {:.9}", outcome.move_name, outcome.length_saved);
            }
            println!(
                "total saved {:.9} (length {:.12} -> {:.12})",
                path.length() - result.length(),
                path.length(),
                result.length()
            );
            if let Err(e) = write_file(&args.output, &doc::serialize(&result)) {
                return fail(e);
            }
            ExitCode::from(EXIT_OK)
        }
        Err(e) => fail(e),
    }
}

fn cmd_bounds(args: &BoundsArgs) -> ExitCode {
    let (t1, t2) = bounds::theorem_lengths();
    println!("center_start_optimum   exact        {t1:.10}  7*pi/6 + 1 + sqrt(3)");
    println!("free_endpoint_optimum  exact        {t2:.10}  pi + 2");
    for report in bounds::eq3_constants() {
        println!(
            "{:<22} {:<12} {:.10}  {}",
            report.name,
            kind_name(report.kind),
            report.value,
            report.formula_text
        );
    }
    let (lower, upper) = bounds::l3_bounds();
    for report in [lower, upper] {
        println!(
            "{:<22} {:<12} {:.10}  {}",
            report.name,
            kind_name(report.kind),
            report.value,
            report.formula_text
        );
    }
    if let Some(n) = args.dim {
        let (Some(c_lower), Some(c_upper)) = (args.c_lower, args.c_upper) else {
            return fail("--dim requires both --c-lower and --c-upper (the constants are not defaulted)");
        };
        match bounds::ln_bounds(n, c_lower, c_upper) {
            Ok((lower, upper)) => {
                for report in [lower, upper] {
                    println!(
                        "{:<22} {:<12} {:.10}  {}",
                        report.name,
                        kind_name(report.kind),
                        report.value,
                        report.formula_text
                    );
                }
            }
            Err(e) => return fail(e),
        }
    }
    ExitCode::from(EXIT_OK)
}

fn kind_name(kind: bounds::BoundKind) -> &'static str {
    match kind {
        bounds::BoundKind::Exact => "exact",
        bounds::BoundKind::LowerBound => "lower_bound",
        bounds::BoundKind::UpperBound => "upper_bound",
    }
}

fn cmd_plot(args: &PlotArgs) -> ExitCode {
    let path = match load_path(&args.path) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    let tangents = match args.tangents.as_deref() {
        None => TangentOverlay::None,
        Some("witness") => {
            let cfg = VerifyConfig::default();
            match verify_certified(&path, &cfg) {
                Ok(report) => TangentOverlay::Witness(report.witness_theta.radians()),
                Err(e) => return fail(format!("cannot compute witness: {e}")),
            }
        }
        Some(spec) => match spec.strip_prefix("grid:").and_then(|n| n.parse().ok()) {
            Some(n) => TangentOverlay::Grid(n),
            None => return fail(format!("bad --tangents '{spec}' (expected witness or grid:N)")),
        },
    };
    let svg = render_svg(&path, &RenderOptions { tangents });
    if let Err(e) = write_file(&args.output, &svg) {
        return fail(e);
    }
    println!("wrote {}", args.output.display());
    ExitCode::from(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::from(EXIT_OK);
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    match &cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Length { path } => match load_path(path) {
            Ok(p) => {
                println!("{:.12}", p.length());
                ExitCode::from(EXIT_OK)
            }
            Err(e) => fail(e),
        },
        Command::Candidates(args) => cmd_candidates(args),
        Command::Optimize(args) => cmd_optimize(args),
        Command::Search(args) => cmd_search(args),
        Command::Shorten(args) => cmd_shorten(args),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Plot(args) => cmd_plot(args),
    }
}
