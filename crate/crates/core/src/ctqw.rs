//! Continuous-time search with H = −γA − Σ_w |w⟩⟨w|.
//!
//! Each self-loop adds 1 to the adjacency diagonal (A_ii = l) unless the
//! doubled convention is selected. In the {|a⟩, |b⟩} basis of uniform
//! marked/unmarked superpositions the Hamiltonian is 2×2 and diagonalized
//! in closed form.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytics::{classify_regime, Prediction};
use crate::error::{Error, Result};
use crate::instance::SearchInstance;
use crate::trace::first_peak;

/// Largest N for the dense full-space Hamiltonian.
pub const CTQW_FULL_MAX_N: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagonalConvention {
    /// A_ii = l
    #[default]
    PerLoop,
    /// A_ii = 2l
    DoubledLoop,
}

impl DiagonalConvention {
    fn diagonal(self, loops: usize) -> f64 {
        match self {
            DiagonalConvention::PerLoop => loops as f64,
            DiagonalConvention::DoubledLoop => 2.0 * loops as f64,
        }
    }
}

/// The critical jumping rate 1/N.
pub fn critical_gamma(inst: &SearchInstance) -> f64 {
    1.0 / inst.n() as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CtqwModel {
    pub instance: SearchInstance,
    pub gamma: f64,
    pub convention: DiagonalConvention,
    /// Row-major 2×2 Hamiltonian in the {|a⟩, |b⟩} basis.
    pub hamiltonian2d: [[f64; 2]; 2],
    pub e_plus: f64,
    pub e_minus: f64,
    /// Rotation angle whose (cos, sin) is the E₊ eigenvector.
    mixing: f64,
}

impl CtqwModel {
    pub fn gap(&self) -> f64 {
        self.e_plus - self.e_minus
    }

    /// Eigenvectors for (E₊, E₋) as (a, b) components.
    pub fn eigenvectors(&self) -> [[f64; 2]; 2] {
        let (s, c) = self.mixing.sin_cos();
        [[c, s], [-s, c]]
    }

    pub fn initial_state(&self) -> [f64; 2] {
        let n = self.instance.n() as f64;
        let k = self.instance.marked() as f64;
        [(k / n).sqrt(), ((n - k) / n).sqrt()]
    }

    /// Components of |a⟩ along the E₊ and E₋ modes of the initial state.
    fn mode_weights(&self) -> (f64, f64) {
        let psi = self.initial_state();
        let [vp, vm] = self.eigenvectors();
        let cp = vp[0] * psi[0] + vp[1] * psi[1];
        let cm = vm[0] * psi[0] + vm[1] * psi[1];
        (vp[0] * cp, vm[0] * cm)
    }
}

pub fn build_hamiltonian(inst: &SearchInstance, gamma: f64) -> Result<CtqwModel> {
    build_hamiltonian_with(inst, gamma, DiagonalConvention::PerLoop)
}

pub fn build_hamiltonian_with(inst: &SearchInstance, gamma: f64, convention: DiagonalConvention) -> Result<CtqwModel> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidArgument(format!("gamma must be positive and finite, got {gamma}")));
    }
    let n = inst.n() as f64;
    let k = inst.marked() as f64;
    let l = convention.diagonal(inst.loops());
    let a = -gamma * (1.0 / gamma + k + l - 1.0);
    let b = -gamma * (k * (n - k)).sqrt();
    let d = -gamma * (n - k + l - 1.0);
    let m = (a + d) / 2.0;
    let half = (a - d) / 2.0;
    let r = half.hypot(b);
    Ok(CtqwModel {
        instance: *inst,
        gamma,
        convention,
        hamiltonian2d: [[a, b], [b, d]],
        e_plus: m + r,
        e_minus: m - r,
        mixing: 0.5 * b.atan2(half),
    })
}

/// State e^{−iHt}|ψ(0)⟩ as (a, b) amplitudes.
pub fn ctqw_state(model: &CtqwModel, t: f64) -> [Complex64; 2] {
    let psi = model.initial_state();
    let mut out = [Complex64::new(0.0, 0.0); 2];
    for (v, e) in model.eigenvectors().iter().zip([model.e_plus, model.e_minus]) {
        let c = v[0] * psi[0] + v[1] * psi[1];
        let phase = Complex64::from_polar(c, -e * t);
        out[0] += phase * v[0];
        out[1] += phase * v[1];
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CtqwSample {
    pub time: f64,
    pub success_probability: f64,
}

/// Success probability sampled at real times; the peak is the first local
/// maximum of the samples (global maximum if none).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CtqwTrace {
    pub samples: Vec<CtqwSample>,
    pub peak_index: usize,
    pub peak_time: f64,
    pub peak_probability: f64,
}

impl CtqwTrace {
    fn new(times: &[f64], probs: Vec<f64>) -> Self {
        let peak_index = if probs.is_empty() { 0 } else { first_peak(&probs) };
        CtqwTrace {
            peak_time: times.get(peak_index).copied().unwrap_or(0.0),
            peak_probability: probs.get(peak_index).copied().unwrap_or(0.0),
            peak_index,
            samples: times
                .iter()
                .zip(probs)
                .map(|(&time, success_probability)| CtqwSample { time, success_probability })
                .collect(),
        }
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.success_probability).collect()
    }
}

fn check_times(times: &[f64]) -> Result<()> {
    if times.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
        return Err(Error::InvalidArgument("times must be finite and nonnegative".into()));
    }
    if times.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidArgument("times must be sorted".into()));
    }
    Ok(())
}

/// `samples` evenly spaced times over [0, tmax], both ends included.
pub fn time_grid(tmax: f64, samples: usize) -> Vec<f64> {
    match samples {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..samples).map(|i| tmax * i as f64 / (samples - 1) as f64).collect(),
    }
}

pub fn ctqw_evolve(model: &CtqwModel, times: &[f64]) -> Result<CtqwTrace> {
    check_times(times)?;
    let probs = times.iter().map(|&t| ctqw_state(model, t)[0].norm_sqr()).collect();
    Ok(CtqwTrace::new(times, probs))
}

/// Runtime π/ΔE and the exact |a⟩ probability there.
pub fn predict_ctqw(inst: &SearchInstance, gamma: f64) -> Result<Prediction> {
    let model = build_hamiltonian(inst, gamma)?;
    let gap = model.gap();
    let (ap, am) = model.mode_weights();
    // At ΔE·t = π the two modes have opposite relative sign.
    let peak = ((ap - am) * (ap - am)).clamp(0.0, 1.0);
    Ok(Prediction {
        runtime: PI / gap,
        peak_probability: peak,
        closed_form_peak: peak,
        phase_gap: gap,
        initial_loop_probability: 0.0,
        regime: classify_regime(inst, None),
    })
}

/// max_t |p_l(t) − p₀(t)| against the loopless instance.
pub fn loop_invariance_check(inst: &SearchInstance, gamma: f64, times: &[f64]) -> Result<f64> {
    let with = ctqw_evolve(&build_hamiltonian(inst, gamma)?, times)?;
    let without = ctqw_evolve(&build_hamiltonian(&inst.with_loops(0), gamma)?, times)?;
    Ok(max_deviation(&with.probabilities(), &without.probabilities()))
}

/// max_t |p(t)| difference between the A_ii = l and A_ii = 2l conventions.
pub fn convention_deviation(inst: &SearchInstance, gamma: f64, times: &[f64]) -> Result<f64> {
    let single = ctqw_evolve(&build_hamiltonian_with(inst, gamma, DiagonalConvention::PerLoop)?, times)?;
    let double = ctqw_evolve(&build_hamiltonian_with(inst, gamma, DiagonalConvention::DoubledLoop)?, times)?;
    Ok(max_deviation(&single.probabilities(), &double.probabilities()))
}

fn max_deviation(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// The N×N Hamiltonian; marked vertices are 0..k.
pub fn full_hamiltonian(inst: &SearchInstance, gamma: f64, convention: DiagonalConvention) -> Result<DMatrix<f64>> {
    let n = inst.n();
    if n > CTQW_FULL_MAX_N {
        return Err(Error::CapacityExceeded { required: n, limit: CTQW_FULL_MAX_N });
    }
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidArgument(format!("gamma must be positive and finite, got {gamma}")));
    }
    let diag = convention.diagonal(inst.loops());
    Ok(DMatrix::from_fn(n, n, |i, j| {
        let adjacency = if i == j { diag } else { 1.0 };
        let oracle = if i == j && i < inst.marked() { 1.0 } else { 0.0 };
        -gamma * adjacency - oracle
    }))
}

/// Dense eigendecomposition of the full Hamiltonian, evaluated at `times`.
pub fn ctqw_full_evolve(inst: &SearchInstance, gamma: f64, times: &[f64]) -> Result<CtqwTrace> {
    ctqw_full_evolve_with(inst, gamma, times, DiagonalConvention::PerLoop)
}

pub fn ctqw_full_evolve_with(
    inst: &SearchInstance,
    gamma: f64,
    times: &[f64],
    convention: DiagonalConvention,
) -> Result<CtqwTrace> {
    check_times(times)?;
    let h = full_hamiltonian(inst, gamma, convention)?;
    let n = inst.n();
    let eig = SymmetricEigen::new(h);
    let s = 1.0 / (n as f64).sqrt();
    let coeffs: Vec<f64> = (0..n).map(|j| eig.eigenvectors.column(j).sum() * s).collect();
    let probs = times
        .iter()
        .map(|&t| {
            let phases: Vec<Complex64> =
                (0..n).map(|j| Complex64::from_polar(coeffs[j], -eig.eigenvalues[j] * t)).collect();
            (0..inst.marked())
                .map(|v| {
                    let row = eig.eigenvectors.row(v);
                    phases.iter().zip(row.iter()).map(|(p, x)| p * x).sum::<Complex64>().norm_sqr()
                })
                .sum()
        })
        .collect();
    Ok(CtqwTrace::new(times, probs))
}
