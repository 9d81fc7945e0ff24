//! Property tests for the structural invariants.

use corrlimit_core::special::{laguerre, oscillator_wavefunction, scaled_laguerre};
use corrlimit_core::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// psi_n(-xi) = (-1)^n psi_n(xi) exactly (IEEE sign symmetry).
    #[test]
    fn wavefunction_parity_is_bit_exact(n in 0u32..150, xi in -20.0f64..20.0) {
        let plus = oscillator_wavefunction(n, xi);
        let minus = oscillator_wavefunction(n, -xi);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert_eq!(minus, sign * plus);
    }

    /// Fourier coefficients of a probability density stay within [-1, 1].
    #[test]
    fn quantum_coefficient_bounded_by_one(n in 0u32..300, p in 0.0f64..30.0) {
        let params = OscillatorParams::natural();
        let f = quantum_fourier_coeff(&params, QuantumLevel(n), p);
        prop_assert!(f.abs() <= 1.0 + 1e-12, "f = {}", f);
    }

    /// The three-term Laguerre recurrence has a small residual at the
    /// computed values.
    #[test]
    fn laguerre_recurrence_residual_is_small(n in 1u32..100, x in 0.0f64..50.0) {
        let lm1 = laguerre(n - 1, x).unwrap();
        let l = laguerre(n, x).unwrap();
        let lp1 = laguerre(n + 1, x).unwrap();
        let kf = n as f64;
        let residual = (kf + 1.0) * lp1 - ((2.0 * kf + 1.0 - x) * l - kf * lm1);
        let scale = lp1.abs().max(l.abs()).max(lm1.abs()).max(1e-30);
        prop_assert!((residual / scale).abs() < 1e-10, "residual = {}", residual);
    }

    /// Scaled and unscaled Laguerre paths agree where both are representable.
    #[test]
    fn scaled_laguerre_consistency(n in 0u32..80, x in 0.0f64..300.0) {
        let scaled = scaled_laguerre(n, x).unwrap();
        let product = (-0.5 * x).exp() * laguerre(n, x).unwrap();
        if product.is_finite() && product.abs() > 1e-250 {
            prop_assert!(((scaled - product) / product).abs() < 1e-11);
        }
    }

    /// Coarse-graining never destroys probability mass for densities that
    /// vanish at the grid edges.
    #[test]
    fn coarse_grain_mass_is_preserved(n in 0u32..30, window_cells in 2usize..60) {
        let params = OscillatorParams::natural();
        let level = QuantumLevel(n);
        let m = energy_match(&params, level);
        let grid = wide_grid(&params, &m, Space::Position, 4097);
        let profile = quantum_profile(&params, level, Space::Position, grid).unwrap();
        let h = profile.spacing();
        let spec = CoarseGrainSpec::new(window_cells as f64 * h);
        let smoothed = coarse_grain(&profile, &spec).unwrap();
        let before = moment(&profile, 0).unwrap().value;
        let after = moment(&smoothed, 0).unwrap().value;
        prop_assert!((before - after).abs() < 1e-10, "{} vs {}", before, after);
    }

    /// Odd moments of every density in scope vanish.
    #[test]
    fn odd_moments_vanish(n in 0u32..40) {
        let params = OscillatorParams::natural();
        let level = QuantumLevel(n);
        let m = energy_match(&params, level);
        let grid = wide_grid(&params, &m, Space::Position, 8193);
        let q = quantum_profile(&params, level, Space::Position, grid).unwrap();
        prop_assert!(moment(&q, 1).unwrap().value.abs() < 1e-10);
    }
}
