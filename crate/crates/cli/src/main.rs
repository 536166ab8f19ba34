mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use report::{render_csv, render_json, write_atomic, CliError, RunManifest};

#[derive(Parser)]
#[command(name = "rigidity-lab", version, about = "Spectral graph rigidity toolkit")]
struct Cli {
    /// Output format for the report.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Stiffness spectrum (with an embedding) or Laplacian spectrum.
    Spectrum(SpectrumArgs),
    /// Generic d-rigidity test by randomized rank.
    Rigidity(RigidityArgs),
    /// Lower bounds and closed forms.
    #[command(subcommand)]
    Bound(BoundCommand),
    /// Build a k-regular d-rigidity expander and certify it.
    Construct(ConstructArgs),
    /// Certify a range of expander sizes.
    Sweep(SweepArgs),
    /// Ascend the stiffness gap over embeddings.
    Optimize(OptimizeArgs),
    /// Print a named graph family as an edge list.
    Generate(GenerateArgs),
}

#[derive(Args, Serialize)]
pub struct SpectrumArgs {
    pub graph: PathBuf,
    /// Embedding file; gives the stiffness spectrum.
    #[arg(long, conflicts_with = "random_d")]
    pub embedding: Option<PathBuf>,
    /// Use a random embedding in this dimension.
    #[arg(long)]
    pub random_d: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Serialize)]
pub struct RigidityArgs {
    pub graph: PathBuf,
    #[arg(short, long)]
    pub d: usize,
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand)]
enum BoundCommand {
    /// Minimum of induced and crossing algebraic connectivities.
    Partition(PartitionArgs),
    /// Limit-matrix bound with a certificate embedding.
    Limit(LimitArgs),
    /// ½⌊n/d⌋ for the complete graph.
    Kn(FamilyArgs),
    /// Bracket for the generalized path.
    Path(FamilyArgs),
    /// Stiffness spectrum of the generalized star at its optimal embedding.
    Star(FamilyArgs),
    /// Connectivity bound after subdividing every edge.
    Subdivision(SubdivisionArgs),
}

#[derive(Args, Serialize)]
pub struct PartitionArgs {
    pub graph: PathBuf,
    #[arg(short, long)]
    pub d: usize,
    /// Partition file; defaults to residue classes mod d.
    #[arg(long)]
    pub partition: Option<PathBuf>,
    /// Halve the crossing gap also for d = 2.
    #[arg(long)]
    pub halved: bool,
}

#[derive(Args, Serialize)]
pub struct LimitArgs {
    pub graph: PathBuf,
    #[arg(short, long)]
    pub d: usize,
    #[arg(long)]
    pub partition: Option<PathBuf>,
    /// Separation c of the certificate embedding.
    #[arg(long, default_value_t = rigidity_core::bounds::DEFAULT_CERTIFICATE_SCALE)]
    pub scale: f64,
    /// Write the certificate embedding to this file.
    #[arg(long)]
    pub emit_embedding: Option<PathBuf>,
}

#[derive(Args, Serialize)]
pub struct FamilyArgs {
    #[arg(short, long)]
    pub n: usize,
    #[arg(short, long)]
    pub d: usize,
}

#[derive(Args, Serialize)]
pub struct SubdivisionArgs {
    pub graph: PathBuf,
    /// Subdivide every edge by this many vertices.
    #[arg(short, long, conflicts_with = "k", required_unless_present = "k")]
    pub m: Option<usize>,
    /// Apply this many rounds of splitting every edge in two.
    #[arg(short, long)]
    pub k: Option<u32>,
}

#[derive(Args, Serialize)]
pub struct ConstructArgs {
    #[arg(short, long)]
    pub d: usize,
    #[arg(short, long)]
    pub k: usize,
    #[arg(short, long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output prefix for `.edges`, `.partition` and `.blueprint.json`.
    #[arg(short = 'o', long)]
    pub prefix: PathBuf,
}

#[derive(Args, Serialize)]
pub struct SweepArgs {
    #[arg(short, long)]
    pub d: usize,
    #[arg(short, long)]
    pub k: usize,
    #[arg(long)]
    pub n_min: usize,
    #[arg(long)]
    pub n_max: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Serialize)]
pub struct OptimizeArgs {
    pub graph: PathBuf,
    #[arg(short, long)]
    pub d: usize,
    #[arg(long, default_value_t = 500)]
    pub steps: usize,
    #[arg(long, default_value_t = 4)]
    pub restarts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.1)]
    pub step_size: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = rigidity_core::optimizer::DEFAULT_MULTIPLICITY_TOL)]
    pub multiplicity_tol: f64,
    /// Include per-iteration values.
    #[arg(long)]
    pub trace: bool,
    /// Write the best embedding to this file.
    #[arg(long)]
    pub emit_embedding: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Complete,
    Star,
    Path,
    Cycle,
    /// Residue-class partition file rather than a graph.
    BalancedPartition,
}

#[derive(Args, Serialize)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub family: Family,
    #[arg(short, long)]
    pub n: usize,
    #[arg(short, long, default_value_t = 1)]
    pub d: usize,
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("RIGIDITY_LAB_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("RIGIDITY_LAB_THREADS must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Failure(e.to_string()))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    use commands as c;
    let (manifest, output) = match &cli.command {
        Command::Spectrum(a) => (RunManifest::new("spectrum", a, Some(a.seed)), c::spectrum(a)?),
        Command::Rigidity(a) => (RunManifest::new("rigidity", a, Some(a.seed)), c::rigidity(a)?),
        Command::Bound(b) => match b {
            BoundCommand::Partition(a) => (RunManifest::new("bound partition", a, None), c::bound_partition(a)?),
            BoundCommand::Limit(a) => (RunManifest::new("bound limit", a, None), c::bound_limit(a)?),
            BoundCommand::Kn(a) => (RunManifest::new("bound kn", a, None), c::bound_kn(a)?),
            BoundCommand::Path(a) => (RunManifest::new("bound path", a, None), c::bound_path(a)?),
            BoundCommand::Star(a) => (RunManifest::new("bound star", a, None), c::bound_star(a)?),
            BoundCommand::Subdivision(a) => {
                (RunManifest::new("bound subdivision", a, None), c::bound_subdivision(a)?)
            }
        },
        Command::Construct(a) => (RunManifest::new("construct", a, Some(a.seed)), c::construct(a)?),
        Command::Sweep(a) => (RunManifest::new("sweep", a, Some(a.seed)), c::sweep(a)?),
        Command::Optimize(a) => (RunManifest::new("optimize", a, Some(a.seed)), c::optimize(a)?),
        Command::Generate(a) => {
            let text = c::generate(a)?;
            return emit(cli.output.as_deref(), &text);
        }
    };
    let mut manifest = manifest;
    manifest.arguments.insert(
        "format".into(),
        serde_json::to_value(cli.format).expect("format serializes"),
    );
    let text = match cli.format {
        Format::Json => render_json(&manifest, &output),
        Format::Csv => render_csv(&manifest, &output)?,
    };
    emit(cli.output.as_deref(), &text)
}

fn emit(path: Option<&std::path::Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Failure(format!("stdout: {e}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rigidity-lab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
