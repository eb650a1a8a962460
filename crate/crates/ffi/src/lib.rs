//! C ABI over `lackwalk`.
//!
//! Every function returns an [`LwStatus`] (or a plain value for queries
//! that cannot fail) and never unwinds across the boundary. Objects are
//! opaque handles created by `*_new`/`*_evolve` and released with the
//! matching `*_free`. After a non-OK status, [`lw_last_error_message`]
//! describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lackwalk::analytics::{predict, LoopBranch, Prediction, Speedup};
use lackwalk::ctqw::{build_hamiltonian, critical_gamma, ctqw_evolve, loop_invariance_check, predict_ctqw};
use lackwalk::fullspace::{full_evolve, full_initial_state, full_step, full_success_probability, grover_equivalence_check, FullState};
use lackwalk::{evolve, CoinKind, Error, RawInstance, SearchInstance};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// Parameters out of bounds (N < 3, k < 1, k ≥ N, l < 0).
    Domain = 3,
    DimensionMismatch = 4,
    CapacityExceeded = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LwCoin {
    Flip = 0,
    Skw = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LwBranch {
    SublinearLoops = 0,
    ProportionalLoops = 1,
    SuperlinearLoops = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LwSpeedup {
    Grover = 0,
    SubClassical = 1,
    None = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LwPrediction {
    pub runtime: f64,
    pub peak_probability: f64,
    pub closed_form_peak: f64,
    pub phase_gap: f64,
    pub initial_loop_probability: f64,
    pub branch: LwBranch,
    /// l/N ratio for the proportional branch, 0 otherwise.
    pub c: f64,
    pub speedup: LwSpeedup,
    pub heuristic: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LwPeak {
    pub index: usize,
    /// Step or time.
    pub at: f64,
    pub probability: f64,
}

/// A validated search instance.
pub struct LwInstance(SearchInstance);

/// A sampled success-probability trace.
pub struct LwTrace {
    abscissa: Vec<f64>,
    probabilities: Vec<f64>,
    peak: LwPeak,
    envelope_peak: Option<LwPeak>,
}

/// A full vertex⊗coin state.
pub struct LwFullState(FullState);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: LwStatus, msg: impl Into<String>) -> LwStatus {
    set_error(msg.into());
    status
}

fn status_of(err: Error) -> LwStatus {
    let status = match err {
        Error::Domain(_) => LwStatus::Domain,
        Error::DimensionMismatch { .. } => LwStatus::DimensionMismatch,
        Error::CapacityExceeded { .. } => LwStatus::CapacityExceeded,
        Error::InvalidArgument(_) => LwStatus::InvalidArgument,
    };
    fail(status, err.to_string())
}

fn guard(f: impl FnOnce() -> LwStatus) -> LwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(LwStatus::Panic, "internal panic"),
    }
}

unsafe fn instance<'a>(p: *const LwInstance) -> Result<&'a SearchInstance, LwStatus> {
    p.as_ref().map(|i| &i.0).ok_or_else(|| fail(LwStatus::NullPointer, "instance is null"))
}

unsafe fn times<'a>(p: *const f64, len: usize) -> Result<&'a [f64], LwStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(fail(LwStatus::NullPointer, "times is null"));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

macro_rules! out_ptr {
    ($p:expr) => {
        if $p.is_null() {
            return fail(LwStatus::NullPointer, concat!(stringify!($p), " is null"));
        }
    };
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn lw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failure on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn lw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Validates and creates an instance. `coin` is an `LwCoin` value, taken
/// as an integer so out-of-range values are reported, not undefined.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn lw_instance_new(n: usize, loops: i64, marked: usize, coin: i32, out: *mut *mut LwInstance) -> LwStatus {
    guard(|| {
        out_ptr!(out);
        let coin = match coin {
            c if c == LwCoin::Flip as i32 => CoinKind::Flip,
            c if c == LwCoin::Skw as i32 => CoinKind::Skw,
            other => return fail(LwStatus::InvalidArgument, format!("unknown coin {other}")),
        };
        match lackwalk::validate(RawInstance::new(n, loops, marked, coin)) {
            Ok(inst) => {
                *out = Box::into_raw(Box::new(LwInstance(inst)));
                LwStatus::Ok
            }
            Err(e) => status_of(e.into()),
        }
    })
}

/// # Safety
/// `inst` must be NULL or a handle from `lw_instance_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lw_instance_free(inst: *mut LwInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

fn to_c(p: Prediction) -> LwPrediction {
    let (branch, c) = match p.regime.branch {
        LoopBranch::SublinearLoops => (LwBranch::SublinearLoops, 0.0),
        LoopBranch::ProportionalLoops { c } => (LwBranch::ProportionalLoops, c),
        LoopBranch::SuperlinearLoops => (LwBranch::SuperlinearLoops, 0.0),
    };
    LwPrediction {
        runtime: p.runtime,
        peak_probability: p.peak_probability,
        closed_form_peak: p.closed_form_peak,
        phase_gap: p.phase_gap,
        initial_loop_probability: p.initial_loop_probability,
        branch,
        c,
        speedup: match p.regime.speedup {
            Speedup::Grover => LwSpeedup::Grover,
            Speedup::SubClassicalSpeedup => LwSpeedup::SubClassical,
            Speedup::NoSpeedup => LwSpeedup::None,
        },
        heuristic: p.regime.heuristic,
    }
}

/// Discrete-time prediction.
///
/// # Safety
/// `inst` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lw_predict(inst: *const LwInstance, out: *mut LwPrediction) -> LwStatus {
    guard(|| {
        let inst = tri!(instance(inst));
        out_ptr!(out);
        *out = to_c(predict(inst));
        LwStatus::Ok
    })
}

/// The critical jumping rate 1/N.
///
/// # Safety
/// `inst` must be a live handle or NULL (returns NaN).
#[no_mangle]
pub unsafe extern "C" fn lw_critical_gamma(inst: *const LwInstance) -> f64 {
    inst.as_ref().map_or(f64::NAN, |i| critical_gamma(&i.0))
}

/// Continuous-time prediction at jumping rate `gamma` (> 0).
///
/// # Safety
/// `inst` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lw_predict_ctqw(inst: *const LwInstance, gamma: f64, out: *mut LwPrediction) -> LwStatus {
    guard(|| {
        let inst = tri!(instance(inst));
        out_ptr!(out);
        match predict_ctqw(inst, gamma) {
            Ok(p) => {
                *out = to_c(p);
                LwStatus::Ok
            }
            Err(e) => status_of(e),
        }
    })
}

fn discrete_trace(t: lackwalk::EvolutionTrace) -> LwTrace {
    LwTrace {
        abscissa: t.samples.iter().map(|s| s.step as f64).collect(),
        probabilities: t.probabilities(),
        peak: LwPeak { index: t.peak_step, at: t.peak_step as f64, probability: t.peak_probability },
        envelope_peak: Some(LwPeak {
            index: t.envelope_peak_step,
            at: t.envelope_peak_step as f64,
            probability: t.envelope_peak_probability,
        }),
    }
}

unsafe fn emit_trace(result: lackwalk::Result<LwTrace>, out: *mut *mut LwTrace) -> LwStatus {
    match result {
        Ok(t) => {
            *out = Box::into_raw(Box::new(t));
            LwStatus::Ok
        }
        Err(e) => status_of(e),
    }
}

/// Reduced-subspace evolution through steps 0..=max_steps.
///
/// # Safety
/// `inst` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lw_subspace_evolve(inst: *const LwInstance, max_steps: usize, out: *mut *mut LwTrace) -> LwStatus {
    guard(|| {
        let inst = tri!(instance(inst));
        out_ptr!(out);
        emit_trace(evolve(inst, max_steps).map(discrete_trace), out)
    })
}

/// Full-space evolution through steps 0..=max_steps.
///
/// # Safety
/// `inst` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lw_full_evolve(inst: *const LwInstance, max_steps: usize, out: *mut *mut LwTrace) -> LwStatus {
    guard(|| {
        let inst = tri!(instance(inst));
        out_ptr!(out);
        emit_trace(full_evolve(inst, max_steps).map(discrete_trace), out)
    })
}

/// Continuous-time evolution sampled at `len` sorted nonnegative times.
///
/// # Safety
/// `times` must point to `len` readable doubles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lw_ctqw_evolve(
    inst: *const LwInstance,
    gamma: f64,
    times_ptr: *const f64,
    len: usize,
    out: *mut *mut LwTrace,
) -> LwStatus {
    guard(|| {
        let inst = tri!(instance(inst));
        let ts = tri!(times(times_ptr, len));
        out_ptr!(out);
        let result = build_hamiltonian(inst, gamma).and_then(|m| ctqw_evolve(&m, ts)).map(|t| LwTrace {
            abscissa: ts.to_vec(),
            probabilities: t.probabilities(),
            peak: LwPeak { index: t.peak_index, at: t.peak_time, probability: t.peak_probability },
            envelope_peak: None,
        });
        emit_trace(result, out)
    })
}

/// Number of samples, or 0 for NULL.
///
/// # Safety
/// `trace` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lw_trace_len(trace: *const LwTrace) -> usize {
    trace.as_ref().map_or(0, |t| t.probabilities.len())
}

/// Copies steps/times into `abscissa` and probabilities into
/// `probabilities`; either may be NULL to skip it. Each buffer must hold
/// `lw_trace_len` doubles.
///
/// # Safety
/// Non-NULL buffers must be writable for `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn lw_trace_copy(
    trace: *const LwTrace,
    abscissa: *mut f64,
    probabilities: *mut f64,
    capacity: usize,
) -> LwStatus {
    guard(|| {
        let Some(t) = trace.as_ref() else { return fail(LwStatus::NullPointer, "trace is null") };
        let n = t.probabilities.len();
        if capacity < n {
            return fail(LwStatus::BufferTooSmall, format!("need {n} doubles, got {capacity}"));
        }
        if !abscissa.is_null() {
            ptr::copy_nonoverlapping(t.abscissa.as_ptr(), abscissa, n);
        }
        if !probabilities.is_null() {
            ptr::copy_nonoverlapping(t.probabilities.as_ptr(), probabilities, n);
        }
        LwStatus::Ok
    })
}

/// Raw first-hump peak.
///
/// # Safety
/// `trace` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lw_trace_peak(trace: *const LwTrace, out: *mut LwPeak) -> LwStatus {
    guard(|| {
        let Some(t) = trace.as_ref() else { return fail(LwStatus::NullPointer, "trace is null") };
        out_ptr!(out);
        *out = t.peak;
        LwStatus::Ok
    })
}

/// Envelope peak of a discrete trace (INVALID_ARGUMENT for CTQW traces).
///
/// # Safety
/// `trace` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lw_trace_envelope_peak(trace: *const LwTrace, out: *mut LwPeak) -> LwStatus {
    guard(|| {
        let Some(t) = trace.as_ref() else { return fail(LwStatus::NullPointer, "trace is null") };
        out_ptr!(out);
        match t.envelope_peak {
            Some(p) => {
                *out = p;
                LwStatus::Ok
            }
            None => fail(LwStatus::InvalidArgument, "continuous traces have no envelope"),
        }
    })
}

/// # Safety
/// `trace` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lw_trace_free(trace: *mut LwTrace) {
    if !trace.is_null() {
        drop(Box::from_raw(trace));
    }
}

/// Uniform initial state in full space (capacity-limited).
///
/// # Safety
/// `inst` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lw_full_state_new(inst: *const LwInstance, out: *mut *mut LwFullState) -> LwStatus {
    guard(|| {
        let inst = tri!(instance(inst));
        out_ptr!(out);
        match full_initial_state(inst) {
            Ok(s) => {
                *out = Box::into_raw(Box::new(LwFullState(s)));
                LwStatus::Ok
            }
            Err(e) => status_of(e),
        }
    })
}

/// Applies the search operator `steps` times in place.
///
/// # Safety
/// `state` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lw_full_state_step(state: *mut LwFullState, steps: usize) -> LwStatus {
    guard(|| {
        let Some(s) = state.as_mut() else { return fail(LwStatus::NullPointer, "state is null") };
        let inst = *s.0.instance();
        for _ in 0..steps {
            s.0 = match full_step(&s.0, &inst) {
                Ok(next) => next,
                Err(e) => return status_of(e),
            };
        }
        LwStatus::Ok
    })
}

/// Probability at marked vertices, or NaN for NULL.
///
/// # Safety
/// `state` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lw_full_state_success_probability(state: *const LwFullState) -> f64 {
    state.as_ref().map_or(f64::NAN, |s| full_success_probability(&s.0))
}

/// Number of amplitudes, or 0 for NULL.
///
/// # Safety
/// `state` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lw_full_state_len(state: *const LwFullState) -> usize {
    state.as_ref().map_or(0, |s| s.0.amplitudes().len())
}

/// # Safety
/// `state` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lw_full_state_free(state: *mut LwFullState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Max deviation between two steps of the one-loop walk and Grover's
/// iterate, for N ≤ 512.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lw_grover_equivalence_check(n: usize, out: *mut f64) -> LwStatus {
    guard(|| {
        out_ptr!(out);
        match grover_equivalence_check(n) {
            Ok(d) => {
                *out = d;
                LwStatus::Ok
            }
            Err(e) => status_of(e),
        }
    })
}

/// Max |p_l(t) − p_0(t)| of the continuous walk over the given times.
///
/// # Safety
/// `times` must point to `len` readable doubles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lw_loop_invariance_check(
    inst: *const LwInstance,
    gamma: f64,
    times_ptr: *const f64,
    len: usize,
    out: *mut f64,
) -> LwStatus {
    guard(|| {
        let inst = tri!(instance(inst));
        let ts = tri!(times(times_ptr, len));
        out_ptr!(out);
        match loop_invariance_check(inst, gamma, ts) {
            Ok(d) => {
                *out = d;
                LwStatus::Ok
            }
            Err(e) => status_of(e),
        }
    })
}
