//! Experiment configs, prediction-vs-simulation reports, CSV traces and
//! figure data.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analytics::predict;
use crate::ctqw::{build_hamiltonian, critical_gamma, ctqw_evolve, ctqw_full_evolve, predict_ctqw, time_grid, CtqwTrace};
use crate::error::{DomainError, Error};
use crate::fullspace::full_evolve;
use crate::instance::{validate, CoinKind, RawInstance, SearchInstance, WalkKind};
use crate::subspace::{default_max_steps, evolve, EvolutionTrace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Walk {
    #[default]
    Discrete,
    Ctqw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    #[default]
    Subspace,
    Full,
}

pub fn walk_kind(walk: Walk, engine: Engine) -> WalkKind {
    match (walk, engine) {
        (Walk::Discrete, Engine::Subspace) => WalkKind::DiscreteSubspace,
        (Walk::Discrete, Engine::Full) => WalkKind::DiscreteFull,
        (Walk::Ctqw, Engine::Subspace) => WalkKind::ContinuousSubspace,
        (Walk::Ctqw, Engine::Full) => WalkKind::ContinuousFull,
    }
}

/// Jumping rate: the keyword `"critical"` (1/N) or a number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GammaSpec {
    Keyword(GammaKeyword),
    Value(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GammaKeyword {
    Critical,
}

impl Default for GammaSpec {
    fn default() -> Self {
        GammaSpec::Keyword(GammaKeyword::Critical)
    }
}

impl GammaSpec {
    pub fn resolve(self, inst: &SearchInstance) -> f64 {
        match self {
            GammaSpec::Keyword(GammaKeyword::Critical) => critical_gamma(inst),
            GammaSpec::Value(g) => g,
        }
    }
}

impl std::str::FromStr for GammaSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("critical") {
            return Ok(GammaSpec::Keyword(GammaKeyword::Critical));
        }
        match s.parse::<f64>() {
            Ok(g) if g > 0.0 && g.is_finite() => Ok(GammaSpec::Value(g)),
            _ => Err(format!("gamma must be 'critical' or a positive number, got '{s}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Allowed |predicted − simulated| runtime, in steps or time units.
    #[serde(default = "default_runtime_tol")]
    pub runtime: f64,
    #[serde(default = "default_peak_tol")]
    pub peak: f64,
}

fn default_runtime_tol() -> f64 {
    1.0
}

fn default_peak_tol() -> f64 {
    5e-3
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { runtime: default_runtime_tol(), peak: default_peak_tol() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceConfig {
    #[serde(flatten)]
    pub params: RawInstance,
    #[serde(default)]
    pub walk: Walk,
    #[serde(default)]
    pub engine: Engine,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<GammaSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub times: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tmax: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<Tolerance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl InstanceConfig {
    pub fn discrete(params: RawInstance) -> Self {
        InstanceConfig {
            params,
            walk: Walk::Discrete,
            engine: Engine::Subspace,
            gamma: None,
            max_steps: None,
            times: None,
            tmax: None,
            samples: None,
            tolerance: None,
            label: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub instances: Vec<InstanceConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<String>,
    #[serde(default = "default_formats")]
    pub formats: Vec<OutputFormat>,
    /// Applies to instances without their own tolerance.
    #[serde(default)]
    pub tolerance: Tolerance,
}

fn default_formats() -> Vec<OutputFormat> {
    vec![OutputFormat::Json]
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config: {0}")]
    Io(#[from] io::Error),
    #[error("cannot parse config: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("config has no instances")]
    Empty,
    #[error("instance {index}: {source}")]
    Instance { index: usize, source: DomainError },
    #[error("instance {index}: {message}")]
    Invalid { index: usize, message: String },
}

/// How a run is sampled.
#[derive(Debug, Clone, PartialEq)]
pub enum Schedule {
    Steps(usize),
    Times(Vec<f64>),
}

/// A validated, fully resolved run.
#[derive(Debug, Clone, PartialEq)]
pub struct Run {
    pub label: String,
    pub instance: SearchInstance,
    pub walk: Walk,
    pub engine: Engine,
    pub gamma: Option<f64>,
    pub schedule: Schedule,
    pub tolerance: Tolerance,
}

impl Run {
    pub fn kind(&self) -> WalkKind {
        walk_kind(self.walk, self.engine)
    }
}

fn default_label(inst: &SearchInstance, walk: Walk) -> String {
    match walk {
        Walk::Discrete => format!("N{}_l{}_k{}_{}", inst.n(), inst.loops(), inst.marked(), inst.coin()),
        Walk::Ctqw => format!("N{}_l{}_k{}_ctqw", inst.n(), inst.loops(), inst.marked()),
    }
}

/// Default CTQW grid: 2001 samples over [0, 2 × predicted runtime].
pub const DEFAULT_CTQW_SAMPLES: usize = 2001;

impl InstanceConfig {
    pub fn resolve(&self, index: usize, fallback: Tolerance) -> Result<Run, ConfigError> {
        let instance = validate(self.params).map_err(|source| ConfigError::Instance { index, source })?;
        let invalid = |message: String| ConfigError::Invalid { index, message };
        let gamma = match self.walk {
            Walk::Discrete => None,
            Walk::Ctqw => {
                let g = self.gamma.unwrap_or_default().resolve(&instance);
                if !(g > 0.0 && g.is_finite()) {
                    return Err(invalid(format!("gamma must be positive, got {g}")));
                }
                Some(g)
            }
        };
        let schedule = match (self.walk, gamma) {
            (Walk::Ctqw, Some(g)) => {
                if let Some(times) = &self.times {
                    if times.is_empty() {
                        return Err(invalid("time grid is empty".into()));
                    }
                    if times.iter().any(|t| !(t.is_finite() && *t >= 0.0)) || times.windows(2).any(|w| w[1] < w[0]) {
                        return Err(invalid("time grid must be sorted and nonnegative".into()));
                    }
                    Schedule::Times(times.clone())
                } else {
                    let tmax = match self.tmax {
                        Some(t) if t > 0.0 && t.is_finite() => t,
                        Some(t) => return Err(invalid(format!("tmax must be positive, got {t}"))),
                        None => {
                            let p = predict_ctqw(&instance, g).map_err(|e| invalid(e.to_string()))?;
                            2.0 * p.runtime
                        }
                    };
                    let samples = self.samples.unwrap_or(DEFAULT_CTQW_SAMPLES);
                    if samples < 2 {
                        return Err(invalid("samples must be at least 2".into()));
                    }
                    Schedule::Times(time_grid(tmax, samples))
                }
            }
            _ => match self.max_steps {
                Some(0) => return Err(invalid("max_steps must be at least 1".into())),
                Some(s) => Schedule::Steps(s),
                None => Schedule::Steps(default_max_steps(&instance)),
            },
        };
        Ok(Run {
            label: self.label.clone().unwrap_or_else(|| default_label(&instance, self.walk)),
            instance,
            walk: self.walk,
            engine: self.engine,
            gamma,
            schedule,
            tolerance: self.tolerance.unwrap_or(fallback),
        })
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn resolve(&self) -> Result<Vec<Run>, ConfigError> {
        if self.instances.is_empty() {
            return Err(ConfigError::Empty);
        }
        self.instances.iter().enumerate().map(|(i, c)| c.resolve(i, self.tolerance)).collect()
    }
}

/// A trace from either walk.
#[derive(Debug, Clone, PartialEq)]
pub enum Trace {
    Discrete(EvolutionTrace),
    Continuous(CtqwTrace),
}

impl Trace {
    /// (abscissa, probability) rows.
    pub fn rows(&self) -> Vec<(f64, f64)> {
        match self {
            Trace::Discrete(t) => t.samples.iter().map(|s| (s.step as f64, s.success_probability)).collect(),
            Trace::Continuous(t) => t.samples.iter().map(|s| (s.time, s.success_probability)).collect(),
        }
    }
}

pub fn run_trace(run: &Run) -> Result<Trace, Error> {
    match (&run.schedule, run.walk) {
        (Schedule::Steps(steps), Walk::Discrete) => Ok(Trace::Discrete(match run.engine {
            Engine::Subspace => evolve(&run.instance, *steps)?,
            Engine::Full => full_evolve(&run.instance, *steps)?,
        })),
        (Schedule::Times(times), Walk::Ctqw) => {
            let gamma = run.gamma.unwrap_or_else(|| critical_gamma(&run.instance));
            Ok(Trace::Continuous(match run.engine {
                Engine::Subspace => ctqw_evolve(&build_hamiltonian(&run.instance, gamma)?, times)?,
                Engine::Full => ctqw_full_evolve(&run.instance, gamma, times)?,
            }))
        }
        _ => Err(Error::InvalidArgument("schedule does not match walk".into())),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonEntry {
    pub label: String,
    pub instance: SearchInstance,
    pub walk: WalkKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    pub predicted_runtime: f64,
    pub predicted_peak: f64,
    /// Envelope peak for discrete walks, sampled peak for CTQW.
    pub simulated_peak_at: f64,
    pub simulated_peak_probability: f64,
    /// Peak of the raw discrete trace (equal to the above for CTQW).
    pub raw_peak_at: f64,
    pub raw_peak_probability: f64,
    pub runtime_deviation: f64,
    pub peak_deviation: f64,
    pub tolerance: Tolerance,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub entries: Vec<ComparisonEntry>,
    pub all_pass: bool,
}

pub fn compare_run(run: &Run) -> Result<ComparisonEntry, Error> {
    let prediction = match run.walk {
        Walk::Discrete => predict(&run.instance),
        Walk::Ctqw => predict_ctqw(&run.instance, run.gamma.unwrap_or_else(|| critical_gamma(&run.instance)))?,
    };
    let (sim_at, sim_p, raw_at, raw_p) = match run_trace(run)? {
        Trace::Discrete(t) => (
            t.envelope_peak_step as f64,
            t.envelope_peak_probability,
            t.peak_step as f64,
            t.peak_probability,
        ),
        Trace::Continuous(t) => (t.peak_time, t.peak_probability, t.peak_time, t.peak_probability),
    };
    let runtime_deviation = (prediction.runtime - sim_at).abs();
    let peak_deviation = (prediction.peak_probability - sim_p).abs();
    Ok(ComparisonEntry {
        label: run.label.clone(),
        instance: run.instance,
        walk: run.kind(),
        gamma: run.gamma,
        predicted_runtime: prediction.runtime,
        predicted_peak: prediction.peak_probability,
        simulated_peak_at: sim_at,
        simulated_peak_probability: sim_p,
        raw_peak_at: raw_at,
        raw_peak_probability: raw_p,
        runtime_deviation,
        peak_deviation,
        tolerance: run.tolerance,
        pass: runtime_deviation <= run.tolerance.runtime && peak_deviation <= run.tolerance.peak,
    })
}

/// Runs every instance (concurrently); entries keep config order.
pub fn run_compare(runs: &[Run]) -> Result<ComparisonReport, Error> {
    let entries = runs.par_iter().map(compare_run).collect::<Result<Vec<_>, _>>()?;
    let all_pass = entries.iter().all(|e| e.pass);
    Ok(ComparisonReport { entries, all_pass })
}

impl ComparisonReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "label,walk,n,loops,marked,coin,predicted_runtime,predicted_peak,simulated_peak_at,simulated_peak_probability,runtime_deviation,peak_deviation,pass\n",
        );
        for e in &self.entries {
            let i = &e.instance;
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                e.label,
                serde_json::to_value(e.walk).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
                i.n(),
                i.loops(),
                i.marked(),
                i.coin(),
                fmt_sig17(e.predicted_runtime),
                fmt_sig17(e.predicted_peak),
                fmt_sig17(e.simulated_peak_at),
                fmt_sig17(e.simulated_peak_probability),
                fmt_sig17(e.runtime_deviation),
                fmt_sig17(e.peak_deviation),
                e.pass
            );
        }
        out
    }
}

/// Positional decimal with 17 significant digits (trailing zeros kept).
pub fn fmt_sig17(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let body = if exp >= 16 {
        format!("{digits}{}", "0".repeat((exp - 16) as usize))
    } else if exp >= 0 {
        let (int, frac) = digits.split_at(exp as usize + 1);
        format!("{int}.{frac}")
    } else {
        format!("0.{}{digits}", "0".repeat((-exp - 1) as usize))
    };
    format!("{sign}{body}")
}

/// Two-column trace CSV: `step,success_probability` or
/// `time,success_probability`.
pub fn write_trace_csv<W: Write>(mut w: W, trace: &Trace) -> io::Result<()> {
    match trace {
        Trace::Discrete(t) => {
            writeln!(w, "step,success_probability")?;
            for s in &t.samples {
                writeln!(w, "{},{}", s.step, fmt_sig17(s.success_probability))?;
            }
        }
        Trace::Continuous(t) => {
            writeln!(w, "time,success_probability")?;
            for s in &t.samples {
                writeln!(w, "{},{}", fmt_sig17(s.time), fmt_sig17(s.success_probability))?;
            }
        }
    }
    Ok(())
}

pub const FIGURES: [&str; 6] = ["fig2", "fig3", "fig4", "fig5", "fig6", "fig7"];

#[derive(Debug, Clone, PartialEq)]
pub struct FigureCurve {
    pub file_stem: String,
    pub run: Run,
}

const FIG7_NOTE: &str = "\
fig7: multiple marked vertices with loops, N = 1024, k = 16.

The caption of this figure names the flip coin with l = 1 and 32, which
repeats the parameters of fig6. The accompanying discussion uses the SKW
matrices and quotes a reach-1/2 time of about 15 steps, which corresponds
to l = 2N = 2048 rather than l = 32 (the exact runtime there is about 9).

Files emitted:
  fig7_N1024_l{1,32}_k16_flip.csv   caption parameters as written
  fig7_N1024_l{1,32}_k16_skw.csv    caption loop counts with the SKW coin
  fig7_N1024_l2048_k16_skw.csv      loop count implied by the quoted time
";

fn discrete_curve(fig: &str, n: usize, l: usize, k: usize, coin: CoinKind, steps: usize) -> FigureCurve {
    let instance = SearchInstance::new(n, l, k, coin).expect("figure parameters are valid");
    let label = default_label(&instance, Walk::Discrete);
    FigureCurve {
        file_stem: format!("{fig}_{label}"),
        run: Run {
            label,
            instance,
            walk: Walk::Discrete,
            engine: Engine::Subspace,
            gamma: None,
            schedule: Schedule::Steps(steps),
            tolerance: Tolerance::default(),
        },
    }
}

/// Curves of a named figure, or `None` for an unknown name.
pub fn figure_curves(name: &str) -> Option<Vec<FigureCurve>> {
    use CoinKind::*;
    let curves = match name {
        "fig2" => vec![discrete_curve(name, 1024, 0, 1, Flip, 100), discrete_curve(name, 2048, 0, 1, Flip, 100)],
        "fig3" => [1024usize, 2048]
            .into_iter()
            .map(|n| {
                let instance = SearchInstance::new(n, 0, 1, Flip).expect("valid");
                let label = default_label(&instance, Walk::Ctqw);
                FigureCurve {
                    file_stem: format!("{name}_{label}"),
                    run: Run {
                        label,
                        instance,
                        walk: Walk::Ctqw,
                        engine: Engine::Subspace,
                        gamma: Some(critical_gamma(&instance)),
                        schedule: Schedule::Times(time_grid(150.0, 1501)),
                        tolerance: Tolerance::default(),
                    },
                }
            })
            .collect(),
        "fig4" => vec![
            discrete_curve(name, 1024, 1, 1, Flip, 150),
            discrete_curve(name, 1024, 2, 1, Flip, 150),
            discrete_curve(name, 1024, 3, 1, Flip, 150),
            discrete_curve(name, 2048, 2, 1, Flip, 150),
        ],
        "fig5" => [0usize, 32, 2048, 32768].into_iter().map(|l| discrete_curve(name, 1024, l, 1, Skw, 400)).collect(),
        "fig6" => [1usize, 32].into_iter().map(|l| discrete_curve(name, 1024, l, 16, Flip, 40)).collect(),
        "fig7" => vec![
            discrete_curve(name, 1024, 1, 16, Flip, 40),
            discrete_curve(name, 1024, 32, 16, Flip, 40),
            discrete_curve(name, 1024, 1, 16, Skw, 40),
            discrete_curve(name, 1024, 32, 16, Skw, 40),
            discrete_curve(name, 1024, 2048, 16, Skw, 40),
        ],
        _ => return None,
    };
    Some(curves)
}

/// Writes one CSV per curve into `dir` and returns the paths written.
pub fn write_figure(name: &str, dir: &Path) -> Result<Vec<PathBuf>, Error> {
    let curves = figure_curves(name).ok_or_else(|| Error::InvalidArgument(format!("unknown figure '{name}'")))?;
    std::fs::create_dir_all(dir).map_err(|e| Error::InvalidArgument(format!("{}: {e}", dir.display())))?;
    let traces = curves.par_iter().map(|c| run_trace(&c.run)).collect::<Result<Vec<_>, _>>()?;
    let mut written = Vec::new();
    for (curve, trace) in curves.iter().zip(&traces) {
        let path = dir.join(format!("{}.csv", curve.file_stem));
        let mut buf = Vec::new();
        write_trace_csv(&mut buf, trace).expect("writing to memory");
        std::fs::write(&path, buf).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
        written.push(path);
    }
    if name == "fig7" {
        let path = dir.join("fig7_README.txt");
        std::fs::write(&path, FIG7_NOTE).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig17_formatting() {
        assert_eq!(fmt_sig17(0.5), "0.50000000000000000");
        assert_eq!(fmt_sig17(36.0), "36.000000000000000");
        assert_eq!(fmt_sig17(1.0 / 1024.0), "0.00097656250000000000");
        assert_eq!(fmt_sig17(-2.5), "-2.5000000000000000");
        assert_eq!(fmt_sig17(0.0), "0");
        assert_eq!(fmt_sig17(1e20), "100000000000000000000");
        for x in [0.1, 1.0 / 3.0, 50.265, 1e-7, 123456.789] {
            assert_eq!(fmt_sig17(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn empty_config_is_rejected() {
        let cfg = ExperimentConfig::from_json(r#"{"instances": []}"#).unwrap();
        assert!(matches!(cfg.resolve(), Err(ConfigError::Empty)));
    }

    #[test]
    fn config_defaults() {
        let cfg = ExperimentConfig::from_json(r#"{"instances": [{"n": 64}, {"n": 64, "walk": "ctqw", "gamma": "critical"}]}"#).unwrap();
        let runs = cfg.resolve().unwrap();
        assert_eq!(runs[0].instance, SearchInstance::new(64, 0, 1, CoinKind::Flip).unwrap());
        assert!(matches!(runs[0].schedule, Schedule::Steps(s) if s > 0));
        assert_eq!(runs[1].gamma, Some(1.0 / 64.0));
        assert!(matches!(&runs[1].schedule, Schedule::Times(t) if t.len() == DEFAULT_CTQW_SAMPLES));
        assert_eq!(cfg.formats, vec![OutputFormat::Json]);
    }

    #[test]
    fn config_errors_name_the_instance() {
        let cfg = ExperimentConfig::from_json(r#"{"instances": [{"n": 64}, {"n": 2}]}"#).unwrap();
        let err = cfg.resolve().unwrap_err();
        assert!(err.to_string().starts_with("instance 1: N < 3"), "{err}");
        let cfg = ExperimentConfig::from_json(r#"{"instances": [{"n": 64, "walk": "ctqw", "times": [2.0, 1.0]}]}"#).unwrap();
        assert!(matches!(cfg.resolve(), Err(ConfigError::Invalid { index: 0, .. })));
    }

    #[test]
    fn gamma_parsing() {
        assert_eq!("critical".parse::<GammaSpec>().unwrap(), GammaSpec::Keyword(GammaKeyword::Critical));
        assert_eq!("0.5".parse::<GammaSpec>().unwrap(), GammaSpec::Value(0.5));
        assert!("-1".parse::<GammaSpec>().is_err());
        let g: GammaSpec = serde_json::from_str("0.25").unwrap();
        assert_eq!(g, GammaSpec::Value(0.25));
    }

    #[test]
    fn compare_passes_and_zero_tolerance_fails() {
        let mut cfg = ExperimentConfig::from_json(r#"{"instances": [{"n": 1024, "loops": 2}]}"#).unwrap();
        let report = run_compare(&cfg.resolve().unwrap()).unwrap();
        assert!(report.all_pass, "{report:?}");
        cfg.tolerance = Tolerance { runtime: 0.0, peak: 0.0 };
        let report = run_compare(&cfg.resolve().unwrap()).unwrap();
        assert!(!report.all_pass);
        assert_eq!(report.to_csv().lines().count(), 2);
    }

    #[test]
    fn report_keeps_config_order() {
        let cfg = ExperimentConfig::from_json(
            r#"{"instances": [{"n": 2048, "label": "a"}, {"n": 16, "label": "b"}, {"n": 512, "walk": "ctqw", "label": "c"}]}"#,
        )
        .unwrap();
        let report = run_compare(&cfg.resolve().unwrap()).unwrap();
        let labels: Vec<_> = report.entries.iter().map(|e| e.label.as_str()).collect();
        assert_eq!(labels, ["a", "b", "c"]);
    }

    #[test]
    fn figure_names() {
        for name in FIGURES {
            assert!(figure_curves(name).is_some());
        }
        assert!(figure_curves("fig8").is_none());
        assert_eq!(figure_curves("fig5").unwrap().len(), 4);
        assert_eq!(figure_curves("fig6").unwrap()[1].file_stem, "fig6_N1024_l32_k16_flip");
    }
}
