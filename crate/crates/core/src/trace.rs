//! Sampled success-probability traces and first-peak detection.
//!
//! Search traces are quasi-periodic: the success probability rises to a
//! first peak, falls back, and revives later, sometimes a little higher. The
//! peak of interest is the first one, so detection looks for the first local
//! maximum instead of a global one.

use serde::{Deserialize, Serialize};

/// A located peak: sample index, abscissa (step or time) and value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Peak {
    pub index: usize,
    pub at: f64,
    pub probability: f64,
}

/// Index of the first strict local maximum (plateaus resolve to their first
/// sample). Sample 0 is never a local maximum. `None` if the sequence has no
/// interior maximum.
pub fn first_local_max(values: &[f64]) -> Option<usize> {
    let mut i = 1;
    while i + 1 < values.len() {
        if values[i] >= values[i - 1] && values[i] > values[i + 1] {
            let mut j = i;
            while j > 1 && values[j - 1] == values[i] {
                j -= 1;
            }
            return Some(j);
        }
        i += 1;
    }
    None
}

/// Smallest index attaining the maximum of `values[..=end]`.
pub fn argmax_prefix(values: &[f64], end: usize) -> usize {
    let end = end.min(values.len().saturating_sub(1));
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().take(end + 1) {
        if v > values[best] {
            best = i;
        }
    }
    best
}

/// First local maximum, or the global maximum when the trace ends before
/// one appears.
pub fn first_peak(values: &[f64]) -> usize {
    first_local_max(values).unwrap_or_else(|| argmax_prefix(values, values.len()))
}

/// Maximum of the raw trace over the first hump, where the hump is located
/// from a smooth companion trace peaking at `smooth_peak`. The search window
/// runs to ⌈1.5 × smooth_peak⌉, which ends before the probability has
/// returned for a second hump.
pub fn hump_max(raw: &[f64], smooth_peak: usize) -> usize {
    let end = (3 * smooth_peak).div_ceil(2).max(1);
    argmax_prefix(raw, end)
}
