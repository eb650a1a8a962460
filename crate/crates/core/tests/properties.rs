use proptest::prelude::*;

use lackwalk::analytics::{angles, eigen_system, predict};
use lackwalk::ctqw::{build_hamiltonian, critical_gamma, ctqw_evolve, time_grid};
use lackwalk::fullspace::{full_evolve, full_initial_state, full_step, subspace_coordinates};
use lackwalk::{build_operator, evolve, initial_state, step, CoinKind, SearchInstance};

fn small_instances() -> impl Strategy<Value = SearchInstance> {
    (3usize..24, 0usize..7, 1usize..6, any::<bool>()).prop_filter_map("k < N", |(n, l, k, skw)| {
        SearchInstance::new(n, l, k, if skw { CoinKind::Skw } else { CoinKind::Flip }).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn engines_agree(i in small_instances()) {
        let full = full_evolve(&i, 80).unwrap();
        let reduced = evolve(&i, 80).unwrap();
        for (a, b) in full.samples.iter().zip(&reduced.samples) {
            prop_assert!((a.success_probability - b.success_probability).abs() < 1e-10);
        }
    }

    #[test]
    fn full_state_stays_in_subspace(i in small_instances()) {
        let mut s = full_initial_state(&i).unwrap();
        for _ in 0..40 {
            s = full_step(&s, &i).unwrap();
            prop_assert!(subspace_coordinates(&s).1 <= 1e-10);
        }
    }

    #[test]
    fn trace_peaks_are_well_formed(i in small_instances(), steps in 1usize..200) {
        let tr = evolve(&i, steps).unwrap();
        prop_assert_eq!(tr.samples.len(), steps + 1);
        prop_assert!(tr.samples.iter().all(|s| (0.0..=1.0 + 1e-12).contains(&s.success_probability)));
        prop_assert_eq!(tr.peak_probability, tr.samples[tr.peak_step].success_probability);
        prop_assert_eq!(tr.envelope_peak_probability, tr.envelope[tr.envelope_peak_step]);
        let k_over_n = i.marked() as f64 / i.n() as f64;
        prop_assert!((tr.samples[0].success_probability - k_over_n).abs() < 1e-14);
    }

    #[test]
    fn eigenpairs_have_small_residuals(n in 3usize..4096, l in 0usize..5000, k in 1usize..32, skw in any::<bool>()) {
        prop_assume!(k < n);
        let i = SearchInstance::new(n, l, k, if skw { CoinKind::Skw } else { CoinKind::Flip }).unwrap();
        let eig = eigen_system(&i);
        prop_assert!(eig.max_residual(&build_operator(&i)) <= 1e-10);
        prop_assert!(eig.max_modulus_defect() <= 1e-12);
    }

    #[test]
    fn predictions_are_in_range(n in 3usize..100_000, l in 0usize..1_000_000, k in 1usize..64, skw in any::<bool>()) {
        prop_assume!(k < n);
        let i = SearchInstance::new(n, l, k, if skw { CoinKind::Skw } else { CoinKind::Flip }).unwrap();
        let p = predict(&i);
        prop_assert!(p.runtime > 0.0 && p.runtime.is_finite());
        prop_assert!((0.0..=1.0).contains(&p.peak_probability));
        prop_assert!(angles(&i).sin_theta >= 0.0);
    }

    #[test]
    fn norm_is_conserved(i in small_instances()) {
        let op = build_operator(&i);
        let mut s = initial_state(&i);
        for _ in 0..2000 {
            s = step(&s, &op).unwrap();
        }
        prop_assert!((s.norm() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn ctqw_norm_and_start(n in 3usize..5000, l in 0usize..50, k in 1usize..16) {
        prop_assume!(k < n);
        let i = SearchInstance::new(n, l, k, CoinKind::Flip).unwrap();
        let tr = ctqw_evolve(&build_hamiltonian(&i, critical_gamma(&i)).unwrap(), &time_grid(10.0, 11)).unwrap();
        prop_assert!((tr.samples[0].success_probability - k as f64 / n as f64).abs() < 1e-14);
    }
}

/// Envelope peak vs prediction over N ∈ {256, 1024, 2048}, l ∈ 0..=5,
/// k ∈ {1, 4, 16}, both coins. At N = 256 with many marked vertices the
/// runtime is 6–10 steps and integer sampling of the hump moves the peak
/// value by up to ~1.5e−2; those cases are listed and held to that bound.
#[test]
fn peak_consistency_grid() {
    let loose = [(256usize, 0usize, 16usize), (256, 1, 16), (256, 2, 16), (256, 5, 16), (256, 5, 4)];
    for n in [256usize, 1024, 2048] {
        for l in 0..=5usize {
            for k in [1usize, 4, 16] {
                for coin in [CoinKind::Flip, CoinKind::Skw] {
                    let i = SearchInstance::new(n, l, k, coin).unwrap();
                    let pred = predict(&i);
                    let tr = evolve(&i, (4.0 * pred.runtime).ceil() as usize).unwrap();
                    let dt = (tr.envelope_peak_step as f64 - pred.runtime).abs();
                    let dp = (tr.envelope_peak_probability - pred.peak_probability).abs();
                    assert!(dt <= 1.0, "{i}: step {} vs {}", tr.envelope_peak_step, pred.runtime);
                    let tol = if coin == CoinKind::Flip && loose.contains(&(n, l, k)) { 1.5e-2 } else { 5e-3 };
                    assert!(dp <= tol, "{i}: peak {} vs {}", tr.envelope_peak_probability, pred.peak_probability);
                }
            }
        }
    }
}
