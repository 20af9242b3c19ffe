//! The `colorlab` command line.
//!
//! Exit codes: 0 on success, 2 for usage and input validation errors, 1 for
//! internal failures such as an unwritable output file.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{categorize, ingest_sessions, mean_times, replay_published, IntuitivenessTable};
use crate::bench::{bench_image, bench_scalar, BenchConfig, BenchReport, BenchTarget, ScalarMode};
use crate::color::{ColorCoord, ColorModelId};
use crate::fuzzy::{classify, validate_partition, FuzzyColorSpace};
use crate::gamut::sample_gamut;
use crate::io::ppm::PpmImage;
use crate::io::write_coords_csv;
use crate::metrics::{delta_e_2000, delta_e_76, delta_e_94_with, Cie94Constants, DeltaEParams, Lab, LabPair};
use crate::service::{self, AppState};
use crate::transforms::{ConversionContext, YcbcrParams};

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or invalid input; exit code 2.
    Usage(String),
    /// Anything else; exit code 1.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 1,
        }
    }

    fn usage(e: impl ToString) -> Self {
        CliError::Usage(e.to_string())
    }

    fn internal(e: impl ToString) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Internal(m) => f.write_str(m),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "colorlab", version, about = "Color model conversions, color differences and study tooling")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Convert a binary PPM image to per-pixel coordinates as CSV.
    Convert(ConvertArgs),
    /// Sample the RGB cube in another model as CSV for 3-D plotting.
    Gamut(GamutArgs),
    /// Color difference between two CIELAB colors.
    DeltaE(DeltaEArgs),
    /// Time conversions and classify models by relative speed.
    Bench(BenchArgs),
    /// Mean completion times and intuitiveness categories.
    Analyze(AnalyzeArgs),
    /// Fuzzy color classification and partition checks.
    Fuzzy(FuzzyArgs),
    /// Serve the color-picker study endpoints on 127.0.0.1.
    Serve(ServeArgs),
}

#[derive(Args, Debug)]
pub struct ConvertArgs {
    /// Source model; only rgb images are read.
    #[arg(long, default_value = "rgb")]
    pub from: String,
    #[arg(long)]
    pub to: String,
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Output CSV; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    pub precision: usize,
    /// Studio-range BT.601 YCbCr (Y in [16, 235]).
    #[arg(long)]
    pub bt601_studio: bool,
}

#[derive(Args, Debug)]
pub struct GamutArgs {
    #[arg(long)]
    pub model: String,
    #[arg(long, default_value_t = 16)]
    pub stride: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    pub precision: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    #[value(name = "76")]
    Cie76,
    #[value(name = "94")]
    Cie94,
    #[value(name = "2000")]
    Ciede2000,
}

#[derive(Args, Debug)]
pub struct DeltaEArgs {
    #[arg(long, value_enum)]
    pub metric: Metric,
    /// First color as L,a,b.
    #[arg(long, allow_hyphen_values = true)]
    pub lab1: String,
    /// Second color as L,a,b.
    #[arg(long, allow_hyphen_values = true)]
    pub lab2: String,
    #[arg(long, default_value_t = 1.0)]
    pub kl: f64,
    #[arg(long, default_value_t = 1.0)]
    pub kc: f64,
    #[arg(long, default_value_t = 1.0)]
    pub kh: f64,
    /// CIE94 textiles constants instead of graphic arts.
    #[arg(long)]
    pub textiles: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchMode {
    Scalar,
    Image,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScalarModeArg {
    Joint,
    Forward,
    Inverse,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value = "scalar")]
    pub mode: BenchMode,
    /// Comma-separated models; `identity` adds the null conversion.
    #[arg(long, value_delimiter = ',')]
    pub models: Option<Vec<String>>,
    #[arg(long)]
    pub runs: Option<usize>,
    /// Conversions (scalar) or images (image) per run.
    #[arg(long)]
    pub iters: Option<usize>,
    #[arg(long)]
    pub warmup: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value = "joint")]
    pub scalar_mode: ScalarModeArg,
    /// CSV report; a JSON copy is written next to it.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "source")]
pub struct AnalyzeSource {
    #[arg(long)]
    pub sessions: Option<PathBuf>,
    /// Use the published per-model means instead of a session log.
    #[arg(long)]
    pub replay_paper: bool,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub source: AnalyzeSource,
    /// CSV table; a JSON copy is written next to it.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FuzzyArgs {
    /// Space definition (TOML); the bundled hue partition when omitted.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub action: FuzzyAction,
}

#[derive(Subcommand, Debug)]
pub enum FuzzyAction {
    /// Memberships of one coordinate, strongest first.
    Classify {
        /// Coordinate in the space's model, e.g. 15,0.8,0.4.
        #[arg(long, allow_hyphen_values = true)]
        coord: String,
    },
    /// Largest deviation of summed memberships from 1.
    Validate {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Print the space definition.
    Show,
}

#[derive(Args, Debug)]
pub struct ServeArgs {
    #[arg(long, default_value_t = 8765)]
    pub port: u16,
    /// Overrides COLORLAB_SESSION_DIR.
    #[arg(long)]
    pub session_dir: Option<PathBuf>,
    #[arg(long, default_value_t = service::DEFAULT_SEED)]
    pub seed: u64,
}

fn parse_model(s: &str) -> Result<ColorModelId, CliError> {
    s.parse().map_err(CliError::usage)
}

fn parse_floats(s: &str, n: usize, what: &str) -> Result<Vec<f64>, CliError> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("{what}: cannot parse '{s}' as {n} comma-separated numbers")))?;
    if v.len() != n || v.iter().any(|x| !x.is_finite()) {
        return Err(CliError::Usage(format!("{what}: expected {n} finite numbers, got '{s}'")));
    }
    Ok(v)
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display())))
}

/// Runs `f` against the file at `path`, or against `stdout` when absent.
fn with_output(
    path: Option<&Path>,
    stdout: &mut dyn Write,
    f: impl FnOnce(&mut dyn Write) -> Result<(), CliError>,
) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let mut w = create(p)?;
            f(&mut w)?;
            w.flush().map_err(CliError::internal)
        }
        None => f(stdout),
    }
}

fn cmd_convert(a: &ConvertArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    if !a.from.eq_ignore_ascii_case("rgb") {
        return Err(CliError::Usage(format!("--from must be rgb, got '{}'", a.from)));
    }
    let model = parse_model(&a.to)?;
    let image = PpmImage::open(&a.input).map_err(|e| CliError::Usage(format!("{}: {e}", a.input.display())))?;
    let ycbcr = if a.bt601_studio {
        YcbcrParams::BT601_STUDIO
    } else {
        YcbcrParams::FULL_RANGE
    };
    let ctx = ConversionContext {
        ycbcr,
        ..ConversionContext::default()
    };
    let coords = ctx.convert_image(image.buffer(), model);
    with_output(a.out.as_deref(), stdout, |w| {
        write_coords_csv(w, model, &coords, a.precision).map_err(CliError::internal)
    })
}

fn cmd_gamut(a: &GamutArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let model = parse_model(&a.model)?;
    let cloud = sample_gamut(&ConversionContext::default(), model, a.stride).map_err(CliError::usage)?;
    with_output(a.out.as_deref(), stdout, |w| {
        cloud.write_csv(w, a.precision).map_err(CliError::internal)
    })
}

fn cmd_delta_e(a: &DeltaEArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let p = parse_floats(&a.lab1, 3, "--lab1")?;
    let q = parse_floats(&a.lab2, 3, "--lab2")?;
    let pair = LabPair::new(Lab::new(p[0], p[1], p[2]), Lab::new(q[0], q[1], q[2]));
    let params = DeltaEParams::new(a.kl, a.kc, a.kh).map_err(CliError::usage)?;
    let consts = if a.textiles {
        Cie94Constants::TEXTILES
    } else {
        Cie94Constants::GRAPHIC_ARTS
    };
    let d = match a.metric {
        Metric::Cie76 => delta_e_76(&pair),
        Metric::Cie94 => delta_e_94_with(&pair, &params, &consts),
        Metric::Ciede2000 => delta_e_2000(&pair, &params),
    };
    writeln!(stdout, "{d:.4}").map_err(CliError::internal)
}

fn json_sibling(path: &Path) -> PathBuf {
    path.with_extension("json")
}

fn write_report_files<T>(
    out: &Path,
    value: &T,
    csv: impl FnOnce(&mut dyn Write) -> csv::Result<()>,
    json: impl FnOnce(&T) -> String,
) -> Result<(), CliError> {
    let mut w = create(out)?;
    csv(&mut w).map_err(CliError::internal)?;
    w.flush().map_err(CliError::internal)?;
    let json_path = json_sibling(out);
    std::fs::write(&json_path, json(value) + "\n")
        .map_err(|e| CliError::Internal(format!("cannot write {}: {e}", json_path.display())))
}

fn cmd_bench(a: &BenchArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let mut cfg = match a.mode {
        BenchMode::Scalar => BenchConfig::default(),
        BenchMode::Image => BenchConfig::image(),
    };
    cfg.runs = a.runs.unwrap_or(cfg.runs);
    cfg.iterations = a.iters.unwrap_or(cfg.iterations);
    cfg.warmup = a.warmup.unwrap_or(cfg.warmup);
    cfg.seed = a.seed.unwrap_or(cfg.seed);
    cfg.scalar_mode = match a.scalar_mode {
        ScalarModeArg::Joint => ScalarMode::Joint,
        ScalarModeArg::Forward => ScalarMode::Forward,
        ScalarModeArg::Inverse => ScalarMode::Inverse,
    };
    cfg.validate().map_err(CliError::usage)?;
    let targets = match &a.models {
        Some(names) => names
            .iter()
            .map(|n| n.parse::<BenchTarget>().map_err(CliError::usage))
            .collect::<Result<Vec<_>, _>>()?,
        None => BenchTarget::all_models(),
    };
    let report: BenchReport = match a.mode {
        BenchMode::Scalar => bench_scalar(&cfg, &targets),
        BenchMode::Image => bench_image(&cfg, &targets),
    }
    .map_err(CliError::usage)?;
    write!(stdout, "{}", report.to_table()).map_err(CliError::internal)?;
    if let Some(out) = &a.out {
        write_report_files(out, &report, |w| report.write_csv(w), BenchReport::to_json)?;
    }
    Ok(())
}

fn print_table(t: &IntuitivenessTable, stdout: &mut dyn Write) -> io::Result<()> {
    writeln!(stdout, "{:<8} {:>10} {:>8}  intuitiveness", "model", "mean (s)", "cluster")?;
    for r in &t.rows {
        writeln!(stdout, "{:<8} {:>10.2} {:>8}  {}", r.model.name(), r.mean_s, r.cluster, r.category)?;
    }
    let centroids: Vec<String> = t.centroids.iter().map(|c| format!("{c:.2}")).collect();
    writeln!(stdout, "centroids: {}", centroids.join(", "))
}

fn cmd_analyze(a: &AnalyzeArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let table = match &a.source.sessions {
        Some(path) => {
            let file = File::open(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            let ingest = ingest_sessions(file).map_err(CliError::usage)?;
            for r in &ingest.rejected {
                eprintln!("warning: line {}: {}", r.line, r.reason);
            }
            let means: Vec<_> = mean_times(&ingest.records).into_iter().collect();
            categorize(&means).map_err(CliError::usage)?
        }
        None => replay_published(),
    };
    print_table(&table, stdout).map_err(CliError::internal)?;
    if let Some(out) = &a.out {
        write_report_files(out, &table, |w| table.write_csv(w), IntuitivenessTable::to_json)?;
    }
    Ok(())
}

fn cmd_fuzzy(a: &FuzzyArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let space = match &a.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            FuzzyColorSpace::from_config_str(&text).map_err(CliError::usage)?
        }
        None => FuzzyColorSpace::bundled(),
    };
    match &a.action {
        FuzzyAction::Classify { coord } => {
            let v = parse_floats(coord, 3, "--coord")?;
            let c = ColorCoord::new(space.model(), &v).map_err(CliError::usage)?;
            for (label, mu) in classify(&space, &c).map_err(CliError::usage)? {
                writeln!(stdout, "{label}\t{mu:.4}").map_err(CliError::internal)?;
            }
        }
        FuzzyAction::Validate { samples } => {
            let r = validate_partition(&space, *samples);
            let (h, s, x) = r.worst;
            writeln!(
                stdout,
                "max |sum - 1| = {:.3e} at h={h:.3}, s={s:.2}, x={x:.2} over {} points",
                r.max_deviation, r.points
            )
            .map_err(CliError::internal)?;
        }
        FuzzyAction::Show => write!(stdout, "{}", space.to_config_string()).map_err(CliError::internal)?,
    }
    Ok(())
}

fn cmd_serve(a: &ServeArgs) -> Result<(), CliError> {
    let dir = a.session_dir.clone().unwrap_or_else(service::session_dir_from_env);
    let state = AppState::new(&dir, a.seed).map_err(|e| CliError::Usage(format!("{}: {e}", dir.display())))?;
    eprintln!("session log: {}", state.session_path().display());
    let rt = tokio::runtime::Runtime::new().map_err(CliError::internal)?;
    rt.block_on(service::serve(Arc::new(state), a.port))
        .map_err(|e| CliError::Usage(format!("cannot serve on port {}: {e}", a.port)))
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            write!(stdout, "{e}").map_err(CliError::internal)?;
            return Ok(());
        }
        Err(e) => return Err(CliError::Usage(e.render().to_string())),
    };
    match &cli.command {
        Command::Convert(a) => cmd_convert(a, stdout),
        Command::Gamut(a) => cmd_gamut(a, stdout),
        Command::DeltaE(a) => cmd_delta_e(a, stdout),
        Command::Bench(a) => cmd_bench(a, stdout),
        Command::Analyze(a) => cmd_analyze(a, stdout),
        Command::Fuzzy(a) => cmd_fuzzy(a, stdout),
        Command::Serve(a) => cmd_serve(a),
    }
}

/// Entry point for the binary: runs and returns the process exit code.
pub fn main_with_args() -> i32 {
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match run(std::env::args_os(), &mut lock) {
        Ok(()) => 0,
        Err(e) => {
            let msg = e.to_string();
            if msg.ends_with('\n') {
                eprint!("{msg}");
            } else {
                eprintln!("error: {msg}");
            }
            e.exit_code()
        }
    }
}
