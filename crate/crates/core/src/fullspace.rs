//! The discrete-time walk in the full vertex⊗coin space.
//!
//! Amplitude (v, j) lives at index v·d + j with d = N − 1 + l and vertices
//! 0-based. Directions j < N − 1 are edges: vertex v's edge j points to
//! u = j if j < v, else j + 1. Directions j ≥ N − 1 are the l self-loops.
//! Vertices 0..k are marked.
//!
//! The operator is never materialized. A step applies the coin to each
//! vertex block (a rank-one update, O(d)) and then the flip-flop shift,
//! each stage writing into a fresh buffer. The per-vertex coin sum runs over
//! j in increasing order, so results do not depend on thread scheduling.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::{CoinKind, SearchInstance};
use crate::subspace::{build_operator, success_probability, BasisLabel, EvolutionTrace, SubspaceBasis, SubspaceState};

pub const DEFAULT_MAX_AMPLITUDES: usize = 1 << 24;
pub const MAX_AMPLITUDES_ENV: &str = "LACKWALK_MAX_AMPLITUDES";
/// Largest N for the Grover-iterate comparison.
pub const GROVER_CHECK_MAX_N: usize = 512;

const PARALLEL_THRESHOLD: usize = 1 << 15;

/// Memory cap in amplitudes: `LACKWALK_MAX_AMPLITUDES` if set and valid,
/// else 2²⁴.
pub fn max_amplitudes() -> usize {
    std::env::var(MAX_AMPLITUDES_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_AMPLITUDES)
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Direction index at `v` of the edge v → u (u ≠ v).
pub fn direction(v: usize, u: usize) -> usize {
    if u < v {
        u
    } else {
        u - 1
    }
}

/// Endpoint of direction `j` at `v`, or `None` for a loop.
pub fn target(n: usize, v: usize, j: usize) -> Option<usize> {
    if j >= n - 1 {
        None
    } else if j < v {
        Some(j)
    } else {
        Some(j + 1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FullState {
    instance: SearchInstance,
    amplitudes: Vec<Complex64>,
    step: usize,
}

impl FullState {
    /// Wraps an amplitude vector laid out for `inst`.
    pub fn from_amplitudes(inst: &SearchInstance, amplitudes: Vec<Complex64>) -> Result<Self> {
        let expected = checked_dim(inst, usize::MAX)?;
        if amplitudes.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: amplitudes.len() });
        }
        Ok(FullState { instance: *inst, amplitudes, step: 0 })
    }

    pub fn instance(&self) -> &SearchInstance {
        &self.instance
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn amplitude(&self, v: usize, j: usize) -> Complex64 {
        self.amplitudes[v * self.instance.coin_dim() + j]
    }
}

fn checked_dim(inst: &SearchInstance, limit: usize) -> Result<usize> {
    match inst.full_dim() {
        Some(dim) if dim <= limit => Ok(dim),
        Some(dim) => Err(Error::CapacityExceeded { required: dim, limit }),
        None => Err(Error::CapacityExceeded { required: usize::MAX, limit }),
    }
}

pub fn full_initial_state(inst: &SearchInstance) -> Result<FullState> {
    full_initial_state_with_cap(inst, max_amplitudes())
}

pub fn full_initial_state_with_cap(inst: &SearchInstance, cap: usize) -> Result<FullState> {
    let dim = checked_dim(inst, cap)?;
    let a = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
    Ok(FullState { instance: *inst, amplitudes: vec![a; dim], step: 0 })
}

/// Coin and shift stages of U (or of the unmarked walk U₀).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FullSpaceOperator {
    instance: SearchInstance,
    /// Coin at marked vertices; `None` applies C₀ everywhere.
    marked_coin: Option<CoinKind>,
}

impl FullSpaceOperator {
    pub fn search(inst: &SearchInstance) -> Self {
        FullSpaceOperator { instance: *inst, marked_coin: Some(inst.coin()) }
    }

    pub fn unmarked(inst: &SearchInstance) -> Self {
        FullSpaceOperator { instance: *inst, marked_coin: None }
    }

    fn check(&self, amps: &[Complex64]) -> Result<usize> {
        let d = self.instance.coin_dim();
        let expected = self.instance.n() * d;
        if amps.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: amps.len() });
        }
        Ok(d)
    }

    pub fn apply_coin(&self, amps: &[Complex64]) -> Result<Vec<Complex64>> {
        let d = self.check(amps)?;
        let k = self.instance.marked();
        let marked_coin = self.marked_coin;
        let mut out = vec![zero(); amps.len()];
        let coin_block = |(v, (dst, src)): (usize, (&mut [Complex64], &[Complex64]))| {
            let coin = if v < k { marked_coin } else { None };
            if coin == Some(CoinKind::Skw) {
                for (o, x) in dst.iter_mut().zip(src) {
                    *o = -x;
                }
                return;
            }
            let mean = src.iter().fold(zero(), |acc, x| acc + x) / d as f64;
            let sign = if coin == Some(CoinKind::Flip) { -1.0 } else { 1.0 };
            for (o, x) in dst.iter_mut().zip(src) {
                *o = (mean * 2.0 - x) * sign;
            }
        };
        if amps.len() >= PARALLEL_THRESHOLD {
            out.par_chunks_mut(d).zip(amps.par_chunks(d)).enumerate().for_each(coin_block);
        } else {
            out.chunks_mut(d).zip(amps.chunks(d)).enumerate().for_each(coin_block);
        }
        Ok(out)
    }

    /// Flip-flop shift: (v, →u) ↔ (u, →v); loops are fixed.
    pub fn apply_shift(&self, amps: &[Complex64]) -> Result<Vec<Complex64>> {
        let d = self.check(amps)?;
        let n = self.instance.n();
        let mut out = vec![zero(); amps.len()];
        let shift_block = |(v, dst): (usize, &mut [Complex64])| {
            for (j, o) in dst.iter_mut().enumerate() {
                *o = match target(n, v, j) {
                    Some(u) => amps[u * d + direction(u, v)],
                    None => amps[v * d + j],
                };
            }
        };
        if amps.len() >= PARALLEL_THRESHOLD {
            out.par_chunks_mut(d).enumerate().for_each(shift_block);
        } else {
            out.chunks_mut(d).enumerate().for_each(shift_block);
        }
        Ok(out)
    }

    pub fn apply(&self, amps: &[Complex64]) -> Result<Vec<Complex64>> {
        self.apply_shift(&self.apply_coin(amps)?)
    }
}

pub fn full_step(state: &FullState, inst: &SearchInstance) -> Result<FullState> {
    if state.instance != *inst {
        let expected = inst.full_dim().unwrap_or(usize::MAX);
        if state.amplitudes.len() != expected || state.instance.marked() != inst.marked() {
            return Err(Error::DimensionMismatch { expected, found: state.amplitudes.len() });
        }
    }
    let amplitudes = FullSpaceOperator::search(inst).apply(&state.amplitudes)?;
    Ok(FullState { instance: *inst, amplitudes, step: state.step + 1 })
}

/// Σ over marked v and all j of |amp(v, j)|².
pub fn full_success_probability(state: &FullState) -> f64 {
    let d = state.instance.coin_dim();
    state.amplitudes[..state.instance.marked() * d].iter().map(|z| z.norm_sqr()).sum()
}

/// Subspace class of the directed coin state (v, j).
pub fn class_of(inst: &SearchInstance, v: usize, j: usize) -> BasisLabel {
    let k = inst.marked();
    let head_marked = match target(inst.n(), v, j) {
        Some(u) => u < k,
        None => v < k,
    };
    match (v < k, head_marked) {
        (true, true) => BasisLabel::Aa,
        (true, false) => BasisLabel::Ab,
        (false, true) => BasisLabel::Ba,
        (false, false) => BasisLabel::Bb,
    }
}

fn class_sizes(inst: &SearchInstance) -> [usize; 4] {
    let (n, k, l) = (inst.n(), inst.marked(), inst.loops());
    [k * (k - 1 + l), k * (n - k), (n - k) * k, (n - k) * (n - k - 1 + l)]
}

fn label_index(label: BasisLabel) -> usize {
    match label {
        BasisLabel::Aa => 0,
        BasisLabel::Ab => 1,
        BasisLabel::Ba => 2,
        BasisLabel::Bb => 3,
    }
}

/// The subspace basis vectors written out in full space.
pub fn subspace_basis_vectors(inst: &SearchInstance) -> Result<Vec<(BasisLabel, Vec<f64>)>> {
    let dim = checked_dim(inst, max_amplitudes())?;
    let d = inst.coin_dim();
    let sizes = class_sizes(inst);
    let basis = SubspaceBasis::for_instance(inst);
    Ok(basis
        .labels()
        .iter()
        .map(|&label| {
            let w = 1.0 / (sizes[label_index(label)] as f64).sqrt();
            let mut vec = vec![0.0; dim];
            for (idx, x) in vec.iter_mut().enumerate() {
                if class_of(inst, idx / d, idx % d) == label {
                    *x = w;
                }
            }
            (label, vec)
        })
        .collect())
}

/// Coordinates of a full state in the subspace basis, and the norm of the
/// component outside the subspace.
pub fn subspace_coordinates(state: &FullState) -> (DVector<Complex64>, f64) {
    let inst = state.instance;
    let d = inst.coin_dim();
    let mut sums = [zero(); 4];
    for (idx, z) in state.amplitudes.iter().enumerate() {
        sums[label_index(class_of(&inst, idx / d, idx % d))] += z;
    }
    let sizes = class_sizes(&inst);
    let basis = SubspaceBasis::for_instance(&inst);
    let coords = DVector::from_iterator(
        basis.dim(),
        basis.labels().iter().map(|&label| {
            let i = label_index(label);
            sums[i] / (sizes[i] as f64).sqrt()
        }),
    );
    let means: Vec<Complex64> = (0..4).map(|i| if sizes[i] == 0 { zero() } else { sums[i] / sizes[i] as f64 }).collect();
    let outside = state
        .amplitudes
        .iter()
        .enumerate()
        .map(|(idx, z)| (z - means[label_index(class_of(&inst, idx / d, idx % d))]).norm_sqr())
        .sum::<f64>()
        .sqrt();
    (coords, outside)
}

/// Evolves in full space through steps 0..=max_steps. The envelope is
/// computed from subspace coordinates of each full state, with the
/// eigenvalue −1 component removed as in the reduced engine.
pub fn full_evolve(inst: &SearchInstance, max_steps: usize) -> Result<EvolutionTrace> {
    if max_steps < 1 {
        return Err(Error::InvalidArgument("max_steps must be at least 1".into()));
    }
    let op = build_operator(inst);
    let keep = (DMatrix::<f64>::identity(op.dim(), op.dim()) - op.negative_one_projector()).map(|x| Complex64::new(x, 0.0));
    let mut state = full_initial_state(inst)?;
    let mut raw = Vec::with_capacity(max_steps + 1);
    let mut envelope = Vec::with_capacity(max_steps + 1);
    for t in 0..=max_steps {
        raw.push(full_success_probability(&state));
        let (coords, _) = subspace_coordinates(&state);
        envelope.push(success_probability(&SubspaceState { amplitudes: &keep * coords, step: t }));
        if t < max_steps {
            state = full_step(&state, inst)?;
        }
    }
    Ok(EvolutionTrace::from_series(raw, envelope))
}

/// Relabels vertices by `perm` (vertex v moves to perm[v]).
pub fn permute_vertices(state: &FullState, perm: &[usize]) -> Result<FullState> {
    let inst = state.instance;
    let n = inst.n();
    let d = inst.coin_dim();
    if perm.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: perm.len() });
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidArgument("not a permutation".into()));
        }
    }
    let mut out = vec![zero(); state.amplitudes.len()];
    for v in 0..n {
        for j in 0..d {
            let pj = match target(n, v, j) {
                Some(u) => direction(perm[v], perm[u]),
                None => j,
            };
            out[perm[v] * d + pj] = state.amplitudes[v * d + j];
        }
    }
    Ok(FullState { instance: inst, amplitudes: out, step: state.step })
}

/// Per-t deviation between U^{2t}|ψ₀⟩ and (R_{s⊥}R_w)^t|s⟩ ⊗ (R_w R_{s⊥})^t|s⟩
/// for the one-loop, one-marked flip-coin walk, t = 0..=⌈π√N/2⌉.
///
/// Coin direction v → u is identified with |u⟩ and the loop at v with |v⟩,
/// so the coin space is a copy of the vertex space.
pub fn grover_equivalence_deviations(n: usize) -> Result<Vec<f64>> {
    if n > GROVER_CHECK_MAX_N {
        return Err(Error::CapacityExceeded { required: n, limit: GROVER_CHECK_MAX_N });
    }
    let inst = SearchInstance::new(n, 1, 1, CoinKind::Flip)?;
    let steps = (std::f64::consts::PI * (n as f64).sqrt() / 2.0).ceil() as usize;
    let s = 1.0 / (n as f64).sqrt();
    let reflect_s = |x: &mut Vec<f64>| {
        let mean = x.iter().sum::<f64>() / n as f64;
        x.iter_mut().for_each(|y| *y = 2.0 * mean - *y);
    };
    let reflect_w = |x: &mut Vec<f64>| x[0] = -x[0];
    let mut left = vec![s; n];
    let mut right = vec![s; n];
    let mut state = full_initial_state(&inst)?;
    let op = FullSpaceOperator::search(&inst);
    let d = inst.coin_dim();
    let mut out = Vec::with_capacity(steps + 1);
    for t in 0..=steps {
        let mut dev: f64 = 0.0;
        for (v, lv) in left.iter().enumerate() {
            for (u, ru) in right.iter().enumerate() {
                let j = if u == v { n - 1 } else { direction(v, u) };
                dev = dev.max((state.amplitudes[v * d + j] - lv * ru).norm());
            }
        }
        out.push(dev);
        if t < steps {
            state.amplitudes = op.apply(&op.apply(&state.amplitudes)?)?;
            reflect_w(&mut left);
            reflect_s(&mut left);
            reflect_s(&mut right);
            reflect_w(&mut right);
        }
    }
    Ok(out)
}

pub fn grover_equivalence_check(n: usize) -> Result<f64> {
    Ok(grover_equivalence_deviations(n)?.into_iter().fold(0.0, f64::max))
}
