use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use lackwalk::analytics::{angles, asymptotic_prediction, classify_regime, eigen_system, predict, LoopBranch};
use lackwalk::ctqw::predict_ctqw;
use lackwalk::experiment::{
    run_compare, run_trace, write_figure, write_trace_csv, Engine, ExperimentConfig, GammaSpec, InstanceConfig,
    OutputFormat, Trace, Walk, FIGURES,
};
use lackwalk::{CoinKind, Error, RawInstance};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAPACITY: u8 = 3;

#[derive(Parser)]
#[command(name = "lackwalk", version, about = "Quantum-walk search on the complete graph with self-loops")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve one instance and write its success-probability trace.
    Evolve(EvolveArgs),
    /// Closed-form runtime, peak probability and regime as JSON.
    Predict(PredictArgs),
    /// Compare predictions with simulation for every instance in a config.
    Compare(CompareArgs),
    /// Write the data files for one figure.
    Figure(FigureArgs),
    /// Eigenvalues and eigenvectors of the reduced operator as JSON.
    Eigen(InstanceArgs),
}

#[derive(Args, Clone)]
struct InstanceArgs {
    /// Vertex count N.
    #[arg(long)]
    n: usize,
    /// Self-loops per vertex.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    loops: i64,
    /// Number of marked vertices.
    #[arg(long, default_value_t = 1)]
    marked: usize,
    #[arg(long, value_enum, default_value_t = CoinArg::Flip)]
    coin: CoinArg,
}

impl InstanceArgs {
    fn raw(&self) -> RawInstance {
        RawInstance::new(self.n, self.loops, self.marked, self.coin.into())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CoinArg {
    Flip,
    Skw,
}

impl From<CoinArg> for CoinKind {
    fn from(c: CoinArg) -> Self {
        match c {
            CoinArg::Flip => CoinKind::Flip,
            CoinArg::Skw => CoinKind::Skw,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum WalkArg {
    Discrete,
    Ctqw,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Subspace,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    Sublinear,
    Proportional,
    Superlinear,
}

#[derive(Args)]
struct EvolveArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, value_enum, default_value_t = WalkArg::Discrete)]
    walk: WalkArg,
    #[arg(long, value_enum, default_value_t = EngineArg::Subspace)]
    engine: EngineArg,
    /// Steps for the discrete walk (default ⌈4 × predicted runtime⌉).
    #[arg(long)]
    steps: Option<usize>,
    /// End time for the continuous walk (default 2 × predicted runtime).
    #[arg(long)]
    tmax: Option<f64>,
    /// Number of evenly spaced times, both ends included.
    #[arg(long)]
    samples: Option<usize>,
    /// Jumping rate: "critical" (1/N) or a positive number.
    #[arg(long)]
    gamma: Option<GammaSpec>,
    /// Output file (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Args)]
struct PredictArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, value_enum, default_value_t = WalkArg::Discrete)]
    walk: WalkArg,
    #[arg(long)]
    gamma: Option<GammaSpec>,
    /// Treat l as c·N when classifying the regime.
    #[arg(long)]
    c_hint: Option<f64>,
    /// Also report the large-N expressions for this branch.
    #[arg(long, value_enum)]
    branch: Option<BranchArg>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    /// JSON experiment config.
    config: PathBuf,
    /// Report file (overrides the config's output_path; stdout if neither).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Args)]
struct FigureArgs {
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(FIGURES))]
    name: String,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

enum Failure {
    Usage(String),
    Capacity(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapacityExceeded { .. } => Failure::Capacity(e.to_string()),
            Error::Domain(_) | Error::InvalidArgument(_) => Failure::Usage(e.to_string()),
            Error::DimensionMismatch { .. } => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::Runtime(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json(path: Option<&Path>, value: &impl serde::Serialize) -> Result<(), Failure> {
    let mut w = output(path)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| Failure::Runtime(e.to_string()))?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn walk_of(w: WalkArg) -> Walk {
    match w {
        WalkArg::Discrete => Walk::Discrete,
        WalkArg::Ctqw => Walk::Ctqw,
    }
}

fn cmd_evolve(args: EvolveArgs) -> Result<(), Failure> {
    let walk = walk_of(args.walk);
    match walk {
        Walk::Discrete if args.tmax.is_some() || args.samples.is_some() || args.gamma.is_some() => {
            return Err(Failure::Usage("--tmax, --samples and --gamma apply only to --walk ctqw".into()))
        }
        Walk::Ctqw if args.steps.is_some() => return Err(Failure::Usage("--steps applies only to --walk discrete".into())),
        _ => {}
    }
    let mut cfg = InstanceConfig::discrete(args.instance.raw());
    cfg.walk = walk;
    cfg.engine = match args.engine {
        EngineArg::Subspace => Engine::Subspace,
        EngineArg::Full => Engine::Full,
    };
    cfg.max_steps = args.steps;
    cfg.tmax = args.tmax;
    cfg.samples = args.samples;
    cfg.gamma = args.gamma;
    let run = cfg.resolve(0, Default::default()).map_err(|e| Failure::Usage(e.to_string().replacen("instance 0: ", "", 1)))?;
    let trace = run_trace(&run)?;
    match args.format {
        FormatArg::Csv => {
            let mut w = output(args.out.as_deref())?;
            write_trace_csv(&mut w, &trace)?;
            w.flush()?;
            Ok(())
        }
        FormatArg::Json => match &trace {
            Trace::Discrete(t) => write_json(args.out.as_deref(), t),
            Trace::Continuous(t) => write_json(args.out.as_deref(), t),
        },
    }
}

fn cmd_predict(args: PredictArgs) -> Result<(), Failure> {
    let inst = lackwalk::validate(args.instance.raw()).map_err(Error::from)?;
    let body = match walk_of(args.walk) {
        Walk::Discrete => {
            if args.gamma.is_some() {
                return Err(Failure::Usage("--gamma applies only to --walk ctqw".into()));
            }
            let mut p = predict(&inst);
            p.regime = classify_regime(&inst, args.c_hint);
            let mut body = json!({
                "instance": inst,
                "walk": "discrete",
                "runtime": p.runtime,
                "peak_probability": p.peak_probability,
                "closed_form_peak": p.closed_form_peak,
                "phase_gap": p.phase_gap,
                "initial_loop_probability": p.initial_loop_probability,
                "regime": p.regime,
                "angles": angles(&inst),
            });
            if let Some(b) = args.branch {
                let branch = match b {
                    BranchArg::Sublinear => LoopBranch::SublinearLoops,
                    BranchArg::Superlinear => LoopBranch::SuperlinearLoops,
                    BranchArg::Proportional => {
                        let c = args.c_hint.unwrap_or(inst.loops() as f64 / inst.n() as f64);
                        LoopBranch::ProportionalLoops { c }
                    }
                };
                body["asymptotic"] = serde_json::to_value(asymptotic_prediction(&inst, branch)).expect("serializable");
            }
            body
        }
        Walk::Ctqw => {
            let gamma = args.gamma.unwrap_or_default().resolve(&inst);
            let mut p = predict_ctqw(&inst, gamma)?;
            p.regime = classify_regime(&inst, args.c_hint);
            json!({
                "instance": inst,
                "walk": "ctqw",
                "gamma": gamma,
                "runtime": p.runtime,
                "peak_probability": p.peak_probability,
                "phase_gap": p.phase_gap,
                "regime": p.regime,
            })
        }
    };
    write_json(args.out.as_deref(), &body)
}

fn cmd_compare(args: CompareArgs) -> Result<bool, Failure> {
    let cfg = ExperimentConfig::load(&args.config).map_err(|e| Failure::Usage(e.to_string()))?;
    let runs = cfg.resolve().map_err(|e| Failure::Usage(e.to_string()))?;
    let report = run_compare(&runs)?;
    let out = args.out.or_else(|| cfg.output_path.as_ref().map(PathBuf::from));
    let formats = match args.format {
        Some(FormatArg::Csv) => vec![OutputFormat::Csv],
        Some(FormatArg::Json) => vec![OutputFormat::Json],
        None => cfg.formats.clone(),
    };
    for format in formats {
        match (format, &out) {
            (OutputFormat::Json, path) => write_json(path.as_deref(), &report)?,
            (OutputFormat::Csv, path) => {
                let path = path.as_ref().map(|p| p.with_extension("csv"));
                let mut w = output(path.as_deref())?;
                w.write_all(report.to_csv().as_bytes())?;
                w.flush()?;
            }
        }
    }
    for e in report.entries.iter().filter(|e| !e.pass) {
        eprintln!(
            "FAIL {}: runtime deviation {:.4} (tol {}), peak deviation {:.5} (tol {})",
            e.label, e.runtime_deviation, e.tolerance.runtime, e.peak_deviation, e.tolerance.peak
        );
    }
    Ok(report.all_pass)
}

fn cmd_figure(args: FigureArgs) -> Result<(), Failure> {
    for path in write_figure(&args.name, &args.out)? {
        println!("{}", path.display());
    }
    Ok(())
}

fn cmd_eigen(args: InstanceArgs) -> Result<(), Failure> {
    let inst = lackwalk::validate(args.raw()).map_err(Error::from)?;
    let op = lackwalk::build_operator(&inst);
    let eig = eigen_system(&inst);
    let body = json!({
        "instance": inst,
        "basis": op.basis().labels(),
        "closed_form": eig.closed_form,
        "max_residual": eig.max_residual(&op),
        "pairs": eig.pairs,
    });
    write_json(None, &body)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Evolve(a) => cmd_evolve(a).map(|_| true),
        Command::Predict(a) => cmd_predict(a).map(|_| true),
        Command::Compare(a) => cmd_compare(a),
        Command::Figure(a) => cmd_figure(a).map(|_| true),
        Command::Eigen(a) => cmd_eigen(a).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Capacity(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_CAPACITY)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}
