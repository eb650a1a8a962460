//! Exact evolution in the reduced invariant subspace.
//!
//! Basis vectors are uniform superpositions over one class of directed
//! coin states: |aa⟩ (marked → marked, loops included), |ab⟩ (marked →
//! unmarked), |ba⟩ and |bb⟩. The |aa⟩ class is empty when k + l = 1, and
//! the walk is then three-dimensional.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytics::{angles, predict, AngleSet};
use crate::error::{Error, Result};
use crate::instance::{CoinKind, SearchInstance};
use crate::linalg::{negative_one_projector, orthogonality_defect};
use crate::trace::{first_peak, hump_max};

/// Which reduced operator an instance uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reduction {
    /// k = 1, l = 0: basis {|ab⟩, |ba⟩, |bb⟩}, same matrix for either coin.
    Loopless3D,
    Flip4D,
    Skw4D,
}

impl Reduction {
    pub fn of(inst: &SearchInstance) -> Self {
        if inst.marked_to_marked() == 0 {
            Reduction::Loopless3D
        } else {
            match inst.coin() {
                CoinKind::Flip => Reduction::Flip4D,
                CoinKind::Skw => Reduction::Skw4D,
            }
        }
    }

    pub fn dim(self) -> usize {
        match self {
            Reduction::Loopless3D => 3,
            _ => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisLabel {
    #[serde(rename = "aa")]
    Aa,
    #[serde(rename = "ab")]
    Ab,
    #[serde(rename = "ba")]
    Ba,
    #[serde(rename = "bb")]
    Bb,
}

impl BasisLabel {
    /// True for classes whose tail vertex is marked.
    pub fn at_marked(self) -> bool {
        matches!(self, BasisLabel::Aa | BasisLabel::Ab)
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BasisLabel::Aa => "|aa⟩",
            BasisLabel::Ab => "|ab⟩",
            BasisLabel::Ba => "|ba⟩",
            BasisLabel::Bb => "|bb⟩",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceBasis {
    labels: Vec<BasisLabel>,
}

impl SubspaceBasis {
    pub fn for_instance(inst: &SearchInstance) -> Self {
        use BasisLabel::*;
        let labels = match Reduction::of(inst) {
            Reduction::Loopless3D => vec![Ab, Ba, Bb],
            _ => vec![Aa, Ab, Ba, Bb],
        };
        SubspaceBasis { labels }
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, label: BasisLabel) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }
}

/// The reduced search operator with its basis and angles.
#[derive(Debug, Clone)]
pub struct SubspaceOperator {
    instance: SearchInstance,
    basis: SubspaceBasis,
    entries: DMatrix<f64>,
    angles: AngleSet,
    projector: DMatrix<f64>,
}

impl SubspaceOperator {
    pub fn instance(&self) -> &SearchInstance {
        &self.instance
    }

    pub fn basis(&self) -> &SubspaceBasis {
        &self.basis
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn angles(&self) -> &AngleSet {
        &self.angles
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// ‖UᵀU − I‖_max; the operator is real so this is the unitarity defect.
    pub fn unitarity_defect(&self) -> f64 {
        orthogonality_defect(&self.entries)
    }

    /// Orthogonal projector onto the eigenvalue −1 eigenspace, computed
    /// numerically from the matrix.
    pub fn negative_one_projector(&self) -> &DMatrix<f64> {
        &self.projector
    }

    pub fn apply(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        let n = self.dim();
        DVector::from_iterator(
            n,
            (0..n).map(|i| (0..n).map(|j| v[j] * self.entries[(i, j)]).sum::<Complex64>()),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceState {
    pub amplitudes: DVector<Complex64>,
    pub step: usize,
}

impl SubspaceState {
    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }
}

pub fn initial_state(inst: &SearchInstance) -> SubspaceState {
    let n = inst.n() as f64;
    let k = inst.marked() as f64;
    let l = inst.loops() as f64;
    let values: Vec<f64> = match Reduction::of(inst) {
        Reduction::Loopless3D => vec![1.0, 1.0, (n - 2.0).sqrt()].into_iter().map(|x| x / n.sqrt()).collect(),
        _ => {
            let norm = (n * (n + l - 1.0)).sqrt();
            vec![
                (k * (k + l - 1.0)).sqrt(),
                (k * (n - k)).sqrt(),
                (k * (n - k)).sqrt(),
                ((n - k) * (n - k + l - 1.0)).sqrt(),
            ]
            .into_iter()
            .map(|x| x / norm)
            .collect()
        }
    };
    SubspaceState {
        amplitudes: DVector::from_iterator(values.len(), values.into_iter().map(|x| Complex64::new(x, 0.0))),
        step: 0,
    }
}

pub fn build_operator(inst: &SearchInstance) -> SubspaceOperator {
    let a = angles(inst);
    let (ct, st) = (a.cos_theta, a.sin_theta);
    let entries = match Reduction::of(inst) {
        Reduction::Loopless3D => DMatrix::from_row_slice(3, 3, &[0.0, -ct, st, -1.0, 0.0, 0.0, 0.0, st, ct]),
        Reduction::Flip4D => {
            let (cp, sp) = (a.cos_phi.unwrap(), a.sin_phi.unwrap());
            #[rustfmt::skip]
            let m = DMatrix::from_row_slice(4, 4, &[
                ct, -st, 0.0, 0.0,
                0.0, 0.0, -cp, sp,
                -st, -ct, 0.0, 0.0,
                0.0, 0.0, sp, cp,
            ]);
            m
        }
        Reduction::Skw4D => {
            #[rustfmt::skip]
            let m = DMatrix::from_row_slice(4, 4, &[
                -1.0, 0.0, 0.0, 0.0,
                0.0, 0.0, -ct, st,
                0.0, -1.0, 0.0, 0.0,
                0.0, 0.0, st, ct,
            ]);
            m
        }
    };
    let projector = negative_one_projector(&entries);
    SubspaceOperator { instance: *inst, basis: SubspaceBasis::for_instance(inst), entries, angles: a, projector }
}

pub fn step(state: &SubspaceState, op: &SubspaceOperator) -> Result<SubspaceState> {
    if state.amplitudes.len() != op.dim() {
        return Err(Error::DimensionMismatch { expected: op.dim(), found: state.amplitudes.len() });
    }
    Ok(SubspaceState { amplitudes: op.apply(&state.amplitudes), step: state.step + 1 })
}

/// Probability at marked vertices: the |ab⟩ weight in 3D, |aa⟩ + |ab⟩ in 4D.
pub fn success_probability(state: &SubspaceState) -> f64 {
    let marked = if state.amplitudes.len() == 3 { 1 } else { 2 };
    state.amplitudes.iter().take(marked).map(|z| z.norm_sqr()).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceSample {
    pub step: usize,
    pub success_probability: f64,
}

/// Success-probability time series of a discrete walk.
///
/// The raw trace carries a period-2 ripple from the eigenvalue −1
/// component of the initial state. `envelope` is the same trace with that
/// component projected out. Peaks refer to the first hump: the envelope
/// peak is its first local maximum, and the raw peak is the largest raw
/// value up to ⌈1.5 × envelope peak⌉. Ties resolve to the smallest step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolutionTrace {
    pub samples: Vec<TraceSample>,
    pub envelope: Vec<f64>,
    pub peak_step: usize,
    pub peak_probability: f64,
    pub envelope_peak_step: usize,
    pub envelope_peak_probability: f64,
    /// First step whose raw probability is at least 1/2 − 1e−3.
    pub first_reach_half: Option<usize>,
}

impl EvolutionTrace {
    pub fn from_series(raw: Vec<f64>, envelope: Vec<f64>) -> Self {
        let envelope_peak_step = first_peak(&envelope);
        let peak_step = hump_max(&raw, envelope_peak_step);
        EvolutionTrace {
            peak_probability: raw[peak_step],
            envelope_peak_probability: envelope[envelope_peak_step],
            first_reach_half: raw.iter().position(|&p| p >= 0.5 - 1e-3),
            samples: raw
                .into_iter()
                .enumerate()
                .map(|(step, success_probability)| TraceSample { step, success_probability })
                .collect(),
            envelope,
            peak_step,
            envelope_peak_step,
        }
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.success_probability).collect()
    }
}

/// ⌈4 × predicted runtime⌉, enough to contain the first peak.
pub fn default_max_steps(inst: &SearchInstance) -> usize {
    (4.0 * predict(inst).runtime).ceil() as usize
}

/// Evolves from the initial state through steps 0..=max_steps.
pub fn evolve(inst: &SearchInstance, max_steps: usize) -> Result<EvolutionTrace> {
    if max_steps < 1 {
        return Err(Error::InvalidArgument("max_steps must be at least 1".into()));
    }
    let op = build_operator(inst);
    let keep = DMatrix::<f64>::identity(op.dim(), op.dim()) - op.negative_one_projector();
    let mut state = initial_state(inst);
    let mut raw = Vec::with_capacity(max_steps + 1);
    let mut envelope = Vec::with_capacity(max_steps + 1);
    for _ in 0..=max_steps {
        raw.push(success_probability(&state));
        let smooth = SubspaceState { amplitudes: keep.map(|x| Complex64::new(x, 0.0)) * &state.amplitudes, step: state.step };
        envelope.push(success_probability(&smooth));
        state = step(&state, &op)?;
    }
    Ok(EvolutionTrace::from_series(raw, envelope))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytics::eigen_system;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn inst(n: usize, l: usize, k: usize, coin: CoinKind) -> SearchInstance {
        SearchInstance::new(n, l, k, coin).unwrap()
    }

    #[test]
    fn loopless_initial_state() {
        let s = initial_state(&inst(1024, 0, 1, CoinKind::Flip));
        let expected = [1.0 / 32.0, 1.0 / 32.0, 1022f64.sqrt() / 32.0];
        for (a, e) in s.amplitudes.iter().zip(expected) {
            assert_abs_diff_eq!(a.re, e, epsilon = 1e-16);
        }
    }

    #[test]
    fn small_loop_initial_state() {
        let s = initial_state(&inst(4, 2, 1, CoinKind::Flip));
        let expected = [2f64.sqrt(), 3f64.sqrt(), 3f64.sqrt(), 12f64.sqrt()].map(|x| x / 20f64.sqrt());
        for (a, e) in s.amplitudes.iter().zip(expected) {
            assert_abs_diff_eq!(a.re, e, epsilon = 1e-15);
        }
    }

    #[test]
    fn loopless_operator_entries() {
        let op = build_operator(&inst(1024, 0, 1, CoinKind::Skw));
        let c = 1021.0 / 1023.0;
        assert_abs_diff_eq!(op.entries()[(0, 1)], -c, epsilon = 1e-15);
        assert_abs_diff_eq!(op.entries()[(2, 2)], c, epsilon = 1e-15);
        assert_eq!(op.entries()[(1, 0)], -1.0);
    }

    #[test]
    fn coins_coincide_without_loops_for_one_marked() {
        for n in [3usize, 4, 17, 1024, 2048] {
            let flip = build_operator(&inst(n, 0, 1, CoinKind::Flip));
            let skw = build_operator(&inst(n, 0, 1, CoinKind::Skw));
            assert_eq!(flip.entries(), skw.entries());
        }
    }

    #[test]
    fn coins_differ_without_loops_for_several_marked() {
        let flip = build_operator(&inst(64, 0, 4, CoinKind::Flip));
        let skw = build_operator(&inst(64, 0, 4, CoinKind::Skw));
        assert_eq!(flip.dim(), 4);
        assert_ne!(flip.entries(), skw.entries());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let op = build_operator(&inst(16, 1, 1, CoinKind::Flip));
        let s = initial_state(&inst(16, 0, 1, CoinKind::Flip));
        assert_eq!(step(&s, &op), Err(Error::DimensionMismatch { expected: 4, found: 3 }));
    }

    #[test]
    fn fixed_point_of_plus_one_eigenvector() {
        let i = inst(64, 2, 1, CoinKind::Flip);
        let op = build_operator(&i);
        let eig = eigen_system(&i);
        let v = DVector::from_column_slice(&eig.pairs[1].vector);
        let out = step(&SubspaceState { amplitudes: v.clone(), step: 0 }, &op).unwrap();
        assert!((out.amplitudes - v).norm() < 1e-12);
    }

    #[test]
    fn success_probability_of_bb_is_zero() {
        let mut v = DVector::from_element(4, Complex64::new(0.0, 0.0));
        v[3] = Complex64::new(1.0, 0.0);
        assert_eq!(success_probability(&SubspaceState { amplitudes: v, step: 0 }), 0.0);
    }

    #[test]
    fn loopless_reaches_half() {
        for (n, t) in [(1024, 36), (2048, 50)] {
            let tr = evolve(&inst(n, 0, 1, CoinKind::Flip), 100).unwrap();
            assert!((tr.envelope_peak_step as i64 - t).abs() <= 1);
            assert!((tr.envelope_peak_probability - 0.5).abs() < 0.01);
            assert!((tr.samples[t as usize].success_probability - 0.5).abs() < 0.03);
        }
    }

    #[test]
    fn one_loop_reaches_one() {
        let tr = evolve(&inst(1024, 1, 1, CoinKind::Flip), 200).unwrap();
        assert!(tr.samples[50].success_probability > 0.999);
    }

    #[test]
    fn loop_peaks() {
        let tr = evolve(&inst(1024, 2, 1, CoinKind::Flip), 200).unwrap();
        assert!((tr.peak_step as i64 - 41).abs() <= 1);
        assert!((tr.peak_probability - 0.889).abs() < 5e-3);
        let tr = evolve(&inst(1024, 3, 1, CoinKind::Flip), 200).unwrap();
        assert!((tr.peak_step as i64 - 36).abs() <= 1);
        assert!((tr.peak_probability - 0.75).abs() < 5e-3);
    }

    #[test]
    fn skw_aa_is_negative_one_eigenvector() {
        let op = build_operator(&inst(1024, 32, 1, CoinKind::Skw));
        assert_eq!(op.entries().column(0).iter().copied().collect::<Vec<_>>(), vec![-1.0, 0.0, 0.0, 0.0]);
        assert_eq!(op.entries().row(0).iter().copied().collect::<Vec<_>>(), vec![-1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn norm_holds_over_ten_thousand_steps() {
        for i in [inst(1024, 3, 1, CoinKind::Flip), inst(1024, 32, 16, CoinKind::Skw), inst(1024, 0, 1, CoinKind::Flip)] {
            let op = build_operator(&i);
            let mut s = initial_state(&i);
            for _ in 0..10_000 {
                s = step(&s, &op).unwrap();
            }
            assert!((s.norm() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn zero_steps_rejected() {
        assert!(evolve(&inst(16, 0, 1, CoinKind::Flip), 0).is_err());
    }

    fn instances() -> impl Strategy<Value = SearchInstance> {
        (3usize..5000, 0usize..70_000, 1usize..64, prop::bool::ANY).prop_filter_map("k < N", |(n, l, k, skw)| {
            let coin = if skw { CoinKind::Skw } else { CoinKind::Flip };
            SearchInstance::new(n, l, k, coin).ok()
        })
    }

    proptest! {
        #[test]
        fn operator_is_unitary(i in instances()) {
            prop_assert!(build_operator(&i).unitarity_defect() <= 1e-12);
        }

        #[test]
        fn initial_state_is_normalized_and_uniform(i in instances()) {
            let s = initial_state(&i);
            prop_assert!((s.norm() - 1.0).abs() < 1e-12);
            let p = success_probability(&s);
            prop_assert!((p - i.marked() as f64 / i.n() as f64).abs() < 1e-14);
        }

        #[test]
        fn angles_are_consistent(i in instances()) {
            let a = angles(&i);
            prop_assert!(a.pythagorean_defect() <= 1e-12);
            prop_assert!(a.sin_theta >= 0.0);
            if let (Some(ca), Some(cp)) = (a.cos_alpha, a.cos_phi) {
                prop_assert!((ca - (a.cos_theta + cp) / 2.0).abs() <= 1e-12);
            }
        }

        #[test]
        fn projector_is_idempotent(i in instances()) {
            let op = build_operator(&i);
            let p = op.negative_one_projector();
            prop_assert!((p * p - p).amax() < 1e-9);
        }
    }
}
