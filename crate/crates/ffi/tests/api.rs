use std::ffi::CStr;
use std::ptr;

use lackwalk_ffi::*;

unsafe fn new_instance(n: usize, loops: i64, marked: usize, coin: LwCoin) -> *mut LwInstance {
    let mut inst = ptr::null_mut();
    assert_eq!(lw_instance_new(n, loops, marked, coin as i32, &mut inst), LwStatus::Ok);
    inst
}

unsafe fn last_error() -> String {
    CStr::from_ptr(lw_last_error_message()).to_string_lossy().into_owned()
}

#[test]
fn version_is_set() {
    let v = unsafe { CStr::from_ptr(lw_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn instance_errors() {
    unsafe {
        let mut inst = ptr::null_mut();
        assert_eq!(lw_instance_new(2, 0, 1, 0, &mut inst), LwStatus::Domain);
        assert!(last_error().contains("N < 3"));
        assert_eq!(lw_instance_new(10, -1, 1, 0, &mut inst), LwStatus::Domain);
        assert_eq!(lw_instance_new(10, 0, 10, 1, &mut inst), LwStatus::Domain);
        assert_eq!(lw_instance_new(10, 0, 1, 7, &mut inst), LwStatus::InvalidArgument);
        assert!(inst.is_null());
        assert_eq!(lw_instance_new(10, 0, 1, 0, ptr::null_mut()), LwStatus::NullPointer);
        let mut pred = std::mem::zeroed::<LwPrediction>();
        assert_eq!(lw_predict(ptr::null(), &mut pred), LwStatus::NullPointer);
        lw_instance_free(ptr::null_mut());
    }
}

#[test]
fn predictions() {
    unsafe {
        let inst = new_instance(1024, 2, 1, LwCoin::Flip);
        let mut p = std::mem::zeroed::<LwPrediction>();
        assert_eq!(lw_predict(inst, &mut p), LwStatus::Ok);
        assert!((p.runtime - 41.05).abs() < 0.01);
        assert!((p.peak_probability - 0.889).abs() < 1e-3);
        assert_eq!(p.speedup, LwSpeedup::Grover);
        assert!(p.heuristic);

        let g = lw_critical_gamma(inst);
        assert_eq!(g, 1.0 / 1024.0);
        assert_eq!(lw_predict_ctqw(inst, g, &mut p), LwStatus::Ok);
        assert!((p.runtime - 50.265).abs() < 1e-3);
        assert_eq!(lw_predict_ctqw(inst, -1.0, &mut p), LwStatus::InvalidArgument);
        lw_instance_free(inst);
    }
}

#[test]
fn traces() {
    unsafe {
        let inst = new_instance(1024, 3, 1, LwCoin::Flip);
        let mut trace = ptr::null_mut();
        assert_eq!(lw_subspace_evolve(inst, 200, &mut trace), LwStatus::Ok);
        let len = lw_trace_len(trace);
        assert_eq!(len, 201);
        let mut steps = vec![0.0; len];
        let mut probs = vec![0.0; len];
        assert_eq!(lw_trace_copy(trace, steps.as_mut_ptr(), probs.as_mut_ptr(), len - 1), LwStatus::BufferTooSmall);
        assert_eq!(lw_trace_copy(trace, steps.as_mut_ptr(), probs.as_mut_ptr(), len), LwStatus::Ok);
        assert_eq!(steps[7], 7.0);
        let mut peak = std::mem::zeroed::<LwPeak>();
        assert_eq!(lw_trace_peak(trace, &mut peak), LwStatus::Ok);
        assert_eq!(peak.index, 35);
        assert!((peak.probability - 0.75).abs() < 5e-3);
        assert_eq!(probs[peak.index], peak.probability);
        assert_eq!(lw_trace_envelope_peak(trace, &mut peak), LwStatus::Ok);
        lw_trace_free(trace);

        let small = new_instance(32, 1, 1, LwCoin::Skw);
        let mut full = ptr::null_mut();
        assert_eq!(lw_full_evolve(small, 50, &mut full), LwStatus::Ok);
        assert_eq!(lw_trace_len(full), 51);
        lw_trace_free(full);
        lw_instance_free(small);
        assert_eq!(lw_subspace_evolve(inst, 0, &mut trace), LwStatus::InvalidArgument);

        let times: Vec<f64> = (0..=100).map(|i| i as f64).collect();
        assert_eq!(lw_ctqw_evolve(inst, 1.0 / 1024.0, times.as_ptr(), times.len(), &mut trace), LwStatus::Ok);
        assert_eq!(lw_trace_peak(trace, &mut peak), LwStatus::Ok);
        assert_eq!(peak.at, 50.0);
        assert_eq!(lw_trace_envelope_peak(trace, &mut peak), LwStatus::InvalidArgument);
        lw_trace_free(trace);
        let unsorted = [2.0, 1.0];
        assert_eq!(lw_ctqw_evolve(inst, 0.1, unsorted.as_ptr(), 2, &mut trace), LwStatus::InvalidArgument);
        lw_instance_free(inst);
    }
}

#[test]
fn full_state_handles() {
    unsafe {
        let inst = new_instance(64, 1, 1, LwCoin::Flip);
        let mut s = ptr::null_mut();
        assert_eq!(lw_full_state_new(inst, &mut s), LwStatus::Ok);
        assert_eq!(lw_full_state_len(s), 64 * 64);
        assert!((lw_full_state_success_probability(s) - 1.0 / 64.0).abs() < 1e-14);
        assert_eq!(lw_full_state_step(s, 13), LwStatus::Ok);
        assert!(lw_full_state_success_probability(s) >= 0.99);
        assert!(lw_full_state_success_probability(ptr::null()).is_nan());
        lw_full_state_free(s);
        lw_instance_free(inst);
    }
}

#[test]
fn checks() {
    unsafe {
        let mut dev = -1.0;
        assert_eq!(lw_grover_equivalence_check(16, &mut dev), LwStatus::Ok);
        assert!(dev <= 1e-12);
        assert_eq!(lw_grover_equivalence_check(1000, &mut dev), LwStatus::CapacityExceeded);
        assert!(last_error().contains("capacity"));

        let inst = new_instance(1024, 7, 1, LwCoin::Flip);
        let times: Vec<f64> = (0..1000).map(|i| i as f64 * 0.1).collect();
        assert_eq!(lw_loop_invariance_check(inst, 1.0 / 1024.0, times.as_ptr(), times.len(), &mut dev), LwStatus::Ok);
        assert!(dev <= 1e-10);
        assert_eq!(lw_loop_invariance_check(inst, 0.1, ptr::null(), 3, &mut dev), LwStatus::NullPointer);
        lw_instance_free(inst);
    }
}
