//! `robin`: first Robin eigenvalues with negative boundary parameter on
//! balls, shells and convex polygons, and batch comparison against the disc
//! of equal perimeter.

use clap::{Args, Parser, Subcommand, ValueEnum};
use robin_core::corpus::{Shape, ShapeSpec};
use robin_core::dearrange::ChainConfig;
use robin_core::geometry::parallel_profile;
use robin_core::harness::{self, Replay, SuiteConfig};
use robin_core::radial::{annulus_eigenvalue, ball_eigenvalue, AnnulusSpec, BallSpec};
use robin_core::report::{self, ReportRow};
use robin_core::Error;
use std::f64::consts::PI;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;

const AFTER_HELP: &str = "\
Exit codes:
  0  every check holds
  1  an inequality is violated, or a computation broke down
  2  invalid input or usage

CSV columns of `verify` and `sweep`:
  shape_id, m_or_file, alpha, perimeter, area, inradius, R_star, lambda_star,
  rayleigh_w, lambda_fem, fem_error, margin_star, margin_fw, perimetri_ok,
  energie_ok, normeL2_ok, boundary_ok, chain_ok
followed by one `summary` row holding the row count, the smallest
margin_star and margin_fw, and the conjunction of every flag column.
JSON output uses the same field names plus the full diagnostics.

Shape specifications:
  regular:M[,M...]   regular polygons with M sides and perimeter --perimeter
  rectangle:AxB      A by B rectangle
  random:N           --count hulls of N points uniform in the unit disc,
                     seeds --seed, --seed + 1, ... (xorshift128, seeded by
                     `seed_from_u64`)
  file:PATH          JSON array of [x, y] pairs in counterclockwise order";

#[derive(Parser)]
#[command(name = "robin", version, about, after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalue of the ball of radius --radius in dimension --dim.
    Ball(BallArgs),
    /// Eigenvalue of the shell --inner-radius < |x| < --radius, with the
    /// equal-volume and equal-perimeter balls for comparison.
    Annulus(AnnulusArgs),
    /// Checks one shape specification at a single alpha.
    Verify(VerifyArgs),
    /// Checks a shape corpus at a list of alphas.
    Sweep(SweepArgs),
    /// Perimeter and area of the inner parallel sets as functions of depth.
    Profile(ProfileArgs),
    /// Runs the property catalog, or replays a recorded counterexample.
    Suite(SuiteArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Output {
    fn open(&self) -> Result<Box<dyn Write>, Failure> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(
                File::create(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?,
            )),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

#[derive(Args)]
struct BallArgs {
    /// Space dimension.
    #[arg(long, default_value_t = 2)]
    dim: u32,
    /// Ball radius.
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Robin parameter, negative.
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct AnnulusArgs {
    /// Space dimension.
    #[arg(long, default_value_t = 2)]
    dim: u32,
    /// Outer radius.
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Inner radius, between 0 and --radius.
    #[arg(long)]
    inner_radius: f64,
    /// Robin parameter, negative.
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ShapeArgs {
    /// Shape specification, see `robin --help`.
    #[arg(long)]
    shape: String,
    /// Perimeter of regular polygons.
    #[arg(long, default_value_t = 2.0 * PI)]
    perimeter: f64,
    /// Number of random polygons.
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Seed of the first random polygon.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Replace invalid vertex files by the convex hull of their points.
    #[arg(long)]
    hull_repair: bool,
}

impl ShapeArgs {
    fn shapes(&self) -> Result<Vec<Shape>, Failure> {
        let spec = ShapeSpec::parse(&self.shape, self.perimeter, self.seed, self.count)?;
        Ok(spec.build(self.hull_repair)?)
    }
}

#[derive(Args)]
struct ChainArgs {
    /// Finest finite element refinement level (at least 2).
    #[arg(long, default_value_t = 4)]
    levels: u32,
    /// Root finding and eigenvalue bisection tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Absolute tolerance per quadrature term.
    #[arg(long, default_value_t = 1e-10)]
    quad_tol: f64,
}

impl ChainArgs {
    fn config(&self) -> Result<ChainConfig, Failure> {
        if self.levels < 2 {
            return Err(Failure::usage("--levels must be at least 2"));
        }
        for (name, v) in [("--tol", self.tol), ("--quad-tol", self.quad_tol)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Failure::usage(format!("{name} must be positive")));
            }
        }
        Ok(ChainConfig {
            tol: self.tol,
            quad_tol: self.quad_tol,
            fem_levels: self.levels,
            ..ChainConfig::default()
        })
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    /// Robin parameter, negative.
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    #[command(flatten)]
    chain: ChainArgs,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    /// Comma separated list of negative alphas.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-0.5,-1,-5")]
    alpha: Vec<f64>,
    #[command(flatten)]
    chain: ChainArgs,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ProfileArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SuiteArgs {
    /// Run only cases whose name contains this text.
    #[arg(long)]
    filter: Option<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Number of random polygons in the corpus.
    #[arg(long, default_value_t = 12)]
    count: usize,
    /// Finest finite element refinement level.
    #[arg(long, default_value_t = 4)]
    levels: u32,
    /// Negate alpha in the named case, to check that the suite notices.
    #[arg(long)]
    inject_fault: Option<String>,
    /// Re-run a counterexample file written by a failing suite run.
    #[arg(long, conflicts_with_all = ["filter", "inject_fault"])]
    replay: Option<PathBuf>,
    /// Where to write the counterexample of the first failing case.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Error carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) | Error::InvalidPolygon(_) | Error::Input(_) => EXIT_USAGE,
            _ => EXIT_VIOLATION,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self {
            code: EXIT_VIOLATION,
            message: format!("write failed: {e}"),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Self::usage(format!("JSON: {e}"))
    }
}

type Outcome = Result<bool, Failure>;

fn write_json(out: &mut dyn Write, value: &serde_json::Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    out.flush()
}

fn write_table(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        writeln!(out, "{}", row.join(","))?;
    }
    out.flush()
}

fn cmd_ball(args: &BallArgs) -> Outcome {
    let spec = BallSpec::new(args.dim, args.radius)?;
    let eig = ball_eigenvalue(spec, args.alpha, args.tol)?;
    let bound = eig.constant_bound();
    let ok = eig.lambda < bound;
    let mut out = args.output.open()?;
    match args.output.format {
        Format::Json => write_json(
            &mut out,
            &serde_json::json!({
                "dim": args.dim, "radius": args.radius, "alpha": args.alpha,
                "k": eig.k, "lambda": eig.lambda, "root_residual": eig.root_residual,
                "bound": bound, "bound_ok": ok,
            }),
        )?,
        Format::Csv => write_table(
            &mut out,
            &["dim", "radius", "alpha", "k", "lambda", "root_residual", "bound", "bound_ok"],
            &[vec![
                args.dim.to_string(),
                args.radius.to_string(),
                args.alpha.to_string(),
                eig.k.to_string(),
                eig.lambda.to_string(),
                eig.root_residual.to_string(),
                bound.to_string(),
                ok.to_string(),
            ]],
        )?,
    }
    Ok(ok)
}

fn cmd_annulus(args: &AnnulusArgs) -> Outcome {
    let spec = AnnulusSpec::new(args.dim, args.radius, args.inner_radius)?;
    let eig = annulus_eigenvalue(spec, args.alpha, args.tol)?;
    let n = args.dim as f64;
    let equal_volume = (args.radius.powf(n) - args.inner_radius.powf(n)).powf(1.0 / n);
    let equal_perimeter = (args.radius.powf(n - 1.0) + args.inner_radius.powf(n - 1.0)).powf(1.0 / (n - 1.0));
    let ball_volume = ball_eigenvalue(BallSpec::new(args.dim, equal_volume)?, args.alpha, args.tol)?;
    let ball_perimeter = ball_eigenvalue(BallSpec::new(args.dim, equal_perimeter)?, args.alpha, args.tol)?;
    let bound = args.alpha * spec.perimeter() / spec.volume();
    let ok = eig.lambda < bound && eig.lambda <= ball_perimeter.lambda;
    let mut out = args.output.open()?;
    let fields: [(&str, String); 13] = [
        ("dim", args.dim.to_string()),
        ("outer_radius", args.radius.to_string()),
        ("inner_radius", args.inner_radius.to_string()),
        ("alpha", args.alpha.to_string()),
        ("k", eig.k.to_string()),
        ("lambda", eig.lambda.to_string()),
        ("root_residual", eig.root_residual.to_string()),
        ("bound", bound.to_string()),
        ("equal_volume_radius", equal_volume.to_string()),
        ("lambda_equal_volume", ball_volume.lambda.to_string()),
        ("equal_perimeter_radius", equal_perimeter.to_string()),
        ("lambda_equal_perimeter", ball_perimeter.lambda.to_string()),
        ("ok", ok.to_string()),
    ];
    match args.output.format {
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> = fields
                .iter()
                .map(|(k, v)| {
                    let value = serde_json::from_str(v).unwrap_or_else(|_| v.clone().into());
                    (k.to_string(), value)
                })
                .collect();
            write_json(&mut out, &serde_json::Value::Object(map))?
        }
        Format::Csv => write_table(
            &mut out,
            &fields.iter().map(|f| f.0).collect::<Vec<_>>(),
            &[fields.iter().map(|f| f.1.clone()).collect()],
        )?,
    }
    Ok(ok)
}

fn emit_reports(rows: &[ReportRow], output: &Output) -> Outcome {
    let mut out = output.open()?;
    match output.format {
        Format::Csv => report::write_csv(rows, &mut out)?,
        Format::Json => write_json(&mut out, &report::to_json(rows))?,
    }
    let mut ok = true;
    for row in rows.iter().filter(|r| !r.report.passed()) {
        ok = false;
        eprintln!(
            "violation: {} alpha={}\n{}",
            row.shape_id,
            row.report.alpha,
            serde_json::to_string_pretty(&row.report)?
        );
    }
    Ok(ok)
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let config = args.chain.config()?;
    let rows = report::sweep(&args.shape.shapes()?, &[args.alpha], &config)?;
    emit_reports(&rows, &args.output)
}

fn cmd_sweep(args: &SweepArgs) -> Outcome {
    let config = args.chain.config()?;
    let rows = report::sweep(&args.shape.shapes()?, &args.alpha, &config)?;
    emit_reports(&rows, &args.output)
}

/// Subintervals written per profile interval.
const PROFILE_STEPS: usize = 8;

fn cmd_profile(args: &ProfileArgs) -> Outcome {
    let shapes = args.shape.shapes()?;
    let mut ok = true;
    let mut rows = Vec::new();
    let mut docs = Vec::new();
    for shape in &shapes {
        let profile = parallel_profile(&shape.polygon);
        for iv in &profile.intervals {
            if iv.slope > -2.0 * PI {
                ok = false;
                eprintln!(
                    "violation: {} slope {} > -2 pi on [{}, {}]",
                    shape.id, iv.slope, iv.start, iv.end
                );
            }
            for j in 0..PROFILE_STEPS {
                let s = iv.start + (iv.end - iv.start) * j as f64 / PROFILE_STEPS as f64;
                rows.push(vec![
                    shape.id.clone(),
                    s.to_string(),
                    iv.perimeter_at(s).to_string(),
                    iv.area_at(s).to_string(),
                    iv.slope.to_string(),
                    (j == 0).to_string(),
                ]);
            }
        }
        if let Some(last) = profile.intervals.last() {
            let s = profile.inradius;
            rows.push(vec![
                shape.id.clone(),
                s.to_string(),
                last.perimeter_at(s).max(0.0).to_string(),
                last.area_at(s).max(0.0).to_string(),
                last.slope.to_string(),
                true.to_string(),
            ]);
        }
        docs.push(serde_json::json!({ "shape_id": shape.id, "profile": profile }));
    }
    let mut out = args.output.open()?;
    match args.output.format {
        Format::Csv => write_table(
            &mut out,
            &["shape_id", "s", "perimeter", "area", "slope", "breakpoint"],
            &rows,
        )?,
        Format::Json => write_json(&mut out, &serde_json::Value::Array(docs))?,
    }
    Ok(ok)
}

fn cmd_suite(args: &SuiteArgs) -> Outcome {
    if let Some(path) = &args.replay {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        let witness: Replay = serde_json::from_str(&text)?;
        let outcome = harness::replay(&witness)?;
        print_outcome(&outcome);
        return Ok(outcome.passed);
    }
    if args.levels < 2 {
        return Err(Failure::usage("--levels must be at least 2"));
    }
    let config = SuiteConfig {
        seed: args.seed,
        corpus_size: args.count,
        chain: ChainConfig {
            fem_levels: args.levels,
            ..ChainConfig::default()
        },
        inject_fault: args.inject_fault.clone(),
        ..SuiteConfig::default()
    };
    let report = harness::run_suite(args.filter.as_deref(), &config)?;
    if report.outcomes.is_empty() {
        return Err(Failure::usage(format!(
            "no case matches the filter; cases are: {}",
            harness::case_names().join(", ")
        )));
    }
    for outcome in &report.outcomes {
        print_outcome(outcome);
    }
    if let Some(failure) = report.failures().next() {
        if let Some(witness) = &failure.counterexample {
            let text = serde_json::to_string_pretty(witness)?;
            eprintln!("counterexample for {}:\n{text}", failure.name);
            if let Some(path) = &args.out {
                std::fs::write(path, text + "\n")?;
            }
        }
    }
    Ok(report.passed())
}

fn print_outcome(outcome: &harness::CaseOutcome) {
    let status = if outcome.passed { "PASS" } else { "FAIL" };
    let worst = outcome
        .worst
        .as_ref()
        .map_or(String::from("-"), |c| format!("{:e} (tol {:e}) [{}]", c.margin, c.tolerance, c.detail));
    println!("{status} {:<18} checks={:<4} worst_margin={worst}", outcome.name, outcome.checks);
    if let Some(e) = &outcome.error {
        println!("     {e}");
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Ball(a) => cmd_ball(a),
        Command::Annulus(a) => cmd_annulus(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Profile(a) => cmd_profile(a),
        Command::Suite(a) => cmd_suite(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VIOLATION),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
