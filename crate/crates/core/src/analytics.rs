//! Closed-form predictors: angles, eigensystems, runtimes, peak
//! probabilities and loop-scaling regimes.
//!
//! [`predict`] always evaluates finite-N expressions. The large-N branch
//! tables live in [`asymptotic_prediction`], which requires the caller to
//! name the scaling branch.

use std::f64::consts::PI;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::instance::{CoinKind, SearchInstance};
use crate::linalg::{to_complex, unitary_eigen};
use crate::subspace::{build_operator, initial_state, Reduction, SubspaceOperator};

/// Angles parameterizing a reduced search operator.
///
/// `theta` always exists. For the 4D flip-coin operator `phi` is the angle of
/// the |ba⟩/|bb⟩ block and `alpha` the eigenphase of the search operator. For
/// the 3D operator and the SKW coin there is no `alpha`. `phi` is then the
/// eigenphase, with cos φ = (1 + cos θ)/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleSet {
    pub cos_theta: f64,
    pub sin_theta: f64,
    pub cos_phi: Option<f64>,
    pub sin_phi: Option<f64>,
    pub cos_alpha: Option<f64>,
    pub sin_alpha: Option<f64>,
}

impl AngleSet {
    pub fn theta(&self) -> f64 {
        self.sin_theta.atan2(self.cos_theta)
    }

    pub fn phi(&self) -> Option<f64> {
        Some(self.sin_phi?.atan2(self.cos_phi?))
    }

    pub fn alpha(&self) -> Option<f64> {
        Some(self.sin_alpha?.atan2(self.cos_alpha?))
    }

    /// Largest |cos² + sin² − 1| over the defined pairs.
    pub fn pythagorean_defect(&self) -> f64 {
        let pair = |c: Option<f64>, s: Option<f64>| match (c, s) {
            (Some(c), Some(s)) => (c * c + s * s - 1.0).abs(),
            _ => 0.0,
        };
        pair(Some(self.cos_theta), Some(self.sin_theta))
            .max(pair(self.cos_phi, self.sin_phi))
            .max(pair(self.cos_alpha, self.sin_alpha))
    }
}

pub fn angles(inst: &SearchInstance) -> AngleSet {
    let n = inst.n() as f64;
    let l = inst.loops() as f64;
    let k = inst.marked() as f64;
    let d = n + l - 1.0;
    match Reduction::of(inst) {
        // The loopless 3D operator is the SKW one with k = 1, l = 0.
        Reduction::Loopless3D | Reduction::Skw4D => {
            let cos_theta = (n - 2.0 * k + l - 1.0) / d;
            let sin_theta = 2.0 * (k * (n - k + l - 1.0)).sqrt() / d;
            AngleSet {
                cos_theta,
                sin_theta,
                cos_phi: Some((d - k) / d),
                sin_phi: Some((k * (2.0 * d - k)).sqrt() / d),
                cos_alpha: None,
                sin_alpha: None,
            }
        }
        Reduction::Flip4D => AngleSet {
            cos_theta: (n - 2.0 * k - l + 1.0) / d,
            sin_theta: 2.0 * ((n - k) * (k + l - 1.0)).sqrt() / d,
            cos_phi: Some((n - 2.0 * k + l - 1.0) / d),
            sin_phi: Some(2.0 * (k * (n - k + l - 1.0)).sqrt() / d),
            cos_alpha: Some((n - 2.0 * k) / d),
            sin_alpha: Some(((2.0 * n - 2.0 * k + l - 1.0) * (2.0 * k + l - 1.0)).sqrt() / d),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    pub value: Complex64,
    pub vector: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenSystem {
    pub pairs: Vec<EigenPair>,
    /// True when the pairs come from closed-form expressions rather than a
    /// numerical eigensolver.
    pub closed_form: bool,
}

impl EigenSystem {
    /// Largest ‖U·v − λ·v‖ over the pairs.
    pub fn max_residual(&self, op: &SubspaceOperator) -> f64 {
        let u = to_complex(op.entries());
        self.pairs
            .iter()
            .map(|p| {
                let v = DVector::from_column_slice(&p.vector);
                (&u * &v - &v * p.value).norm()
            })
            .fold(0.0, f64::max)
    }

    /// Largest ||λ| − 1|.
    pub fn max_modulus_defect(&self) -> f64 {
        self.pairs.iter().map(|p| (p.value.norm() - 1.0).abs()).fold(0.0, f64::max)
    }
}

fn normalized(v: Vec<Complex64>) -> Vec<Complex64> {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Eigenpairs of the reduced search operator.
///
/// The 3D loopless operator and the 4D flip-coin operator use their closed
/// forms; the SKW operator is diagonalized numerically.
pub fn eigen_system(inst: &SearchInstance) -> EigenSystem {
    let a = angles(inst);
    match Reduction::of(inst) {
        Reduction::Loopless3D => {
            let c = a.cos_theta;
            let phi = a.phi().expect("3D angles define phi");
            let top = 1.0 / (2.0 * (1.0 + c).sqrt());
            let x = (1.0 - c).sqrt();
            let y = (3.0 + c).sqrt();
            let plus = vec![Complex64::new(top * x, -top * y), Complex64::new(top * x, top * y), re(1.0)];
            let minus = vec![Complex64::new(top * x, top * y), Complex64::new(top * x, -top * y), re(1.0)];
            let r = ((1.0 + c) / (1.0 - c)).sqrt();
            let reflect = vec![re(-r), re(-r), re(1.0)];
            EigenSystem {
                pairs: vec![
                    EigenPair { value: Complex64::from_polar(1.0, phi), vector: normalized(plus) },
                    EigenPair { value: Complex64::from_polar(1.0, -phi), vector: normalized(minus) },
                    EigenPair { value: re(-1.0), vector: normalized(reflect) },
                ],
                closed_form: true,
            }
        }
        Reduction::Flip4D => {
            let (ct, st) = (a.cos_theta, a.sin_theta);
            let (cp, sp) = (a.cos_phi.unwrap(), a.sin_phi.unwrap());
            let sa = a.sin_alpha.unwrap();
            let alpha = a.alpha().unwrap();
            let g = (1.0 + cp) / sp;
            let h = (ct - cp) / (2.0 * sp);
            let w = sa / sp;
            let reflect = vec![re(-st / (1.0 + ct) * g), re(-g), re(-g), re(1.0)];
            let fixed = vec![re(-(1.0 + ct) / st / g), re(1.0 / g), re(1.0 / g), re(1.0)];
            let neg = vec![re(st / sp), Complex64::new(h, w), Complex64::new(h, -w), re(1.0)];
            let pos = vec![re(st / sp), Complex64::new(h, -w), Complex64::new(h, w), re(1.0)];
            EigenSystem {
                pairs: vec![
                    EigenPair { value: re(-1.0), vector: normalized(reflect) },
                    EigenPair { value: re(1.0), vector: normalized(fixed) },
                    EigenPair { value: Complex64::from_polar(1.0, -alpha), vector: normalized(neg) },
                    EigenPair { value: Complex64::from_polar(1.0, alpha), vector: normalized(pos) },
                ],
                closed_form: true,
            }
        }
        Reduction::Skw4D => {
            let op = build_operator(inst);
            let pairs = unitary_eigen(&to_complex(op.entries()))
                .into_iter()
                .map(|(value, v)| EigenPair { value, vector: v.iter().copied().collect() })
                .collect();
            EigenSystem { pairs, closed_form: false }
        }
    }
}

/// Scaling branch of the loop count relative to N.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum LoopBranch {
    /// l = o(N)
    SublinearLoops,
    /// l = cN
    ProportionalLoops { c: f64 },
    /// l = ω(N)
    SuperlinearLoops,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Speedup {
    /// Θ(√(N/k)) overall, matching Grover.
    Grover,
    /// Slower than Grover but still faster than classical Θ(N/k).
    SubClassicalSpeedup,
    NoSpeedup,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeClassification {
    #[serde(flatten)]
    pub branch: LoopBranch,
    pub speedup: Speedup,
    /// True when the branch was inferred from a single (N, l) pair by the
    /// finite-N rule rather than supplied by the caller.
    pub heuristic: bool,
}

/// Classifies the loop-scaling regime.
///
/// Asymptotic classes are properties of families, not of one instance, so
/// without a `c_hint` a heuristic is used: l < N/log₂N is sublinear,
/// l > N·log₂N superlinear, anything between proportional with c = l/N.
/// "Constant" loop counts are those with l ≤ log₂N, and SKW keeps a speedup
/// over classical while l < N²/log₂N.
pub fn classify_regime(inst: &SearchInstance, c_hint: Option<f64>) -> RegimeClassification {
    let n = inst.n() as f64;
    let l = inst.loops() as f64;
    let log_n = n.log2();
    let (branch, heuristic) = match c_hint {
        Some(c) => (LoopBranch::ProportionalLoops { c }, false),
        None if l < n / log_n => (LoopBranch::SublinearLoops, true),
        None if l > n * log_n => (LoopBranch::SuperlinearLoops, true),
        None => (LoopBranch::ProportionalLoops { c: l / n }, true),
    };
    let speedup = match inst.coin() {
        CoinKind::Flip => match branch {
            LoopBranch::SublinearLoops if l <= log_n => Speedup::Grover,
            LoopBranch::SublinearLoops => Speedup::SubClassicalSpeedup,
            _ => Speedup::NoSpeedup,
        },
        CoinKind::Skw => match branch {
            LoopBranch::SublinearLoops | LoopBranch::ProportionalLoops { .. } => Speedup::Grover,
            LoopBranch::SuperlinearLoops if l < n * n / log_n => Speedup::SubClassicalSpeedup,
            LoopBranch::SuperlinearLoops => Speedup::NoSpeedup,
        },
    };
    RegimeClassification { branch, speedup, heuristic }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    /// Steps (discrete) or time (continuous) to the first peak.
    pub runtime: f64,
    pub peak_probability: f64,
    /// The algebraic leading-order peak formula (flip coin), 1/2 for the
    /// reach-one-half walks, the exact value for CTQW.
    pub closed_form_peak: f64,
    /// Eigenphase separation driving the search: α, φ or ΔE.
    pub phase_gap: f64,
    /// Probability initially on the marked→marked directions (|aa⟩). Under
    /// the SKW coin it never leaves |aa⟩.
    pub initial_loop_probability: f64,
    pub regime: RegimeClassification,
}

fn initial_loop_probability(inst: &SearchInstance) -> f64 {
    let n = inst.n() as f64;
    let k = inst.marked() as f64;
    k * inst.marked_to_marked() as f64 / (n * (inst.coin_dim() as f64))
}

/// Leading-order peak for the 4D flip coin:
/// k[16N(k+l−1) + 9(l−1)² − 4k(l−1) − 12k²] / [4(2k+l−1)²(N−k+l−1)].
pub fn flip_closed_form_peak(inst: &SearchInstance) -> f64 {
    let n = inst.n() as f64;
    let l = inst.loops() as f64;
    let k = inst.marked() as f64;
    let num = k * (16.0 * n * (k + l - 1.0) + 9.0 * (l - 1.0).powi(2) - 4.0 * k * (l - 1.0) - 12.0 * k * k);
    let den = 4.0 * (2.0 * k + l - 1.0).powi(2) * (n - k + l - 1.0);
    num / den
}

/// Success probability at (real) step `t` of the initial state with its
/// eigenvalue −1 component removed, evaluated through the eigensystem.
pub fn envelope_probability_at(inst: &SearchInstance, t: f64) -> f64 {
    let eig = eigen_system(inst);
    let psi0 = initial_state(inst);
    let dim = psi0.amplitudes.len();
    let mut state = vec![Complex64::new(0.0, 0.0); dim];
    for pair in eig.pairs.iter().filter(|p| (p.value + 1.0).norm() > 1e-9) {
        let coeff: Complex64 = pair.vector.iter().zip(psi0.amplitudes.iter()).map(|(v, x)| v.conj() * x).sum();
        let phase = Complex64::from_polar(1.0, pair.value.arg() * t);
        for (s, v) in state.iter_mut().zip(&pair.vector) {
            *s += coeff * phase * v;
        }
    }
    let marked = if dim == 3 { 1 } else { 2 };
    state.iter().take(marked).map(|z| z.norm_sqr()).sum()
}

/// Finite-N prediction for the discrete-time walk.
///
/// Runtime is π/α for the flip coin with loops or extra marked vertices,
/// and π/(2φ) for the reach-one-half walks (SKW coin, or no |aa⟩ at all).
/// The flip-coin peak is the eigen-expansion of |ψ0⟩ evaluated at π/α; the
/// algebraic formula is reported alongside as `closed_form_peak`.
pub fn predict(inst: &SearchInstance) -> Prediction {
    let a = angles(inst);
    let regime = classify_regime(inst, None);
    let initial_loop_probability = initial_loop_probability(inst);
    match Reduction::of(inst) {
        Reduction::Loopless3D | Reduction::Skw4D => {
            let phi = a.sin_phi.unwrap().asin();
            Prediction {
                runtime: PI / (2.0 * phi),
                peak_probability: 0.5,
                closed_form_peak: 0.5,
                phase_gap: phi,
                initial_loop_probability,
                regime,
            }
        }
        Reduction::Flip4D => {
            let alpha = a.alpha().unwrap();
            let runtime = PI / alpha;
            Prediction {
                runtime,
                peak_probability: envelope_probability_at(inst, runtime).clamp(0.0, 1.0),
                closed_form_peak: flip_closed_form_peak(inst),
                phase_gap: alpha,
                initial_loop_probability,
                regime,
            }
        }
    }
}

/// Large-N branch expressions for the named loop-scaling branch.
pub fn asymptotic_prediction(inst: &SearchInstance, branch: LoopBranch) -> Prediction {
    let n = inst.n() as f64;
    let l = inst.loops() as f64;
    let k = inst.marked() as f64;
    let speedup = classify_regime(inst, match branch {
        LoopBranch::ProportionalLoops { c } => Some(c),
        _ => None,
    })
    .speedup;
    let regime = RegimeClassification { branch, speedup, heuristic: false };
    let initial_loop_probability = initial_loop_probability(inst);
    match Reduction::of(inst) {
        Reduction::Flip4D => {
            let (runtime, peak) = match branch {
                LoopBranch::SublinearLoops => (
                    PI * n.sqrt() / (2.0 * (2.0 * k + l - 1.0)).sqrt(),
                    4.0 * k * (k + l - 1.0) / (2.0 * k + l - 1.0).powi(2),
                ),
                LoopBranch::ProportionalLoops { c } => (
                    PI / ((c * (c + 2.0)).sqrt() / (c + 1.0)).asin(),
                    (16.0 + 9.0 * c) / (4.0 * c * (c + 1.0)) * k / n,
                ),
                LoopBranch::SuperlinearLoops => (2.0, 9.0 * k / (4.0 * l)),
            };
            let peak = peak.clamp(0.0, 1.0);
            Prediction {
                runtime,
                peak_probability: peak,
                closed_form_peak: peak,
                phase_gap: PI / runtime,
                initial_loop_probability,
                regime,
            }
        }
        Reduction::Loopless3D | Reduction::Skw4D => {
            let scale = PI / (2.0 * (2.0 * k).sqrt());
            let runtime = match branch {
                LoopBranch::SublinearLoops => scale * n.sqrt(),
                LoopBranch::ProportionalLoops { c } => scale * (c + 1.0).sqrt() * n.sqrt(),
                LoopBranch::SuperlinearLoops => scale * l.sqrt(),
            };
            Prediction {
                runtime,
                peak_probability: 0.5,
                closed_form_peak: 0.5,
                phase_gap: PI / (2.0 * runtime),
                initial_loop_probability,
                regime,
            }
        }
    }
}
