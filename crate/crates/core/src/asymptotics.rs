//! Bessel asymptotics of the scaled Laguerre function, the oscillatory
//! correction integral, and the corrected classical densities.
//!
//! The scaled Laguerre function `F(u^2) = exp(-u^2/2) L_n(u^2)` satisfies the
//! Volterra relation
//!
//! ```text
//! F(u^2) = J0(2 sqrt(N) u)
//!        - (pi/2) * Int_0^u t^3 F(t^2) [J0(2 sqrt(N) u) Y0(2 sqrt(N) t)
//!                                      - J0(2 sqrt(N) t) Y0(2 sqrt(N) u)] dt
//! ```
//!
//! with `N = n + 1/2`; iterating it from the `J0` leading term yields the
//! large-n asymptotics. Inverting the leading term gives the classical
//! arcsine density, and the first iterate gives a dimensionless correction
//! integral `i1` whose outer integrand oscillates with an algebraically
//! growing envelope: its value is defined by half-period panel summation
//! with a mode-annihilating filter (an Euler-type weighted average).

use crate::densities::{cpd_momentum, cpd_position};
use crate::error::Error;
use crate::oscillator::{EnergyMatch, OscillatorParams, QuantumLevel};
use crate::quad::{accelerate_panel_sums, adaptive_simpson, gauss_legendre, QuadSpec};
use crate::special::{bessel_j0, scaled_laguerre, y0_unchecked};
use crate::Result;
use rayon::prelude::*;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Mutex;

/// Dimensionless arguments of the Szego asymptotics: `u = p / sqrt(2 m omega hbar)`
/// paired with the level supplying `N = n + 1/2`. Under energy matching
/// `2 sqrt(N) u = p x0 / hbar` holds identically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SzegoArgs {
    level: QuantumLevel,
    u: f64,
}

impl SzegoArgs {
    pub fn new(level: QuantumLevel, u: f64) -> Result<Self> {
        if !(u >= 0.0) || !u.is_finite() {
            return Err(Error::domain(
                "SzegoArgs::new",
                format!("u must be finite and non-negative, got {u}"),
            ));
        }
        Ok(SzegoArgs { level, u })
    }

    /// Build from a physical momentum.
    pub fn from_momentum(params: &OscillatorParams, level: QuantumLevel, p: f64) -> Result<Self> {
        let u = p.abs() / (2.0 * params.mass() * params.omega() * params.hbar()).sqrt();
        SzegoArgs::new(level, u)
    }

    pub fn level(&self) -> QuantumLevel {
        self.level
    }

    pub fn big_n(&self) -> f64 {
        self.level.big_n()
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    /// `2 sqrt(N) u`, the Bessel argument.
    pub fn bessel_arg(&self) -> f64 {
        2.0 * self.big_n().sqrt() * self.u
    }
}

/// Validity bound of the iterated expansion; beyond this the caller gets an
/// error instead of a silent extrapolation.
pub const SZEGO_U_MAX: f64 = 3.0;

/// Leading Szego term `J0(2 sqrt(N) u)`.
pub fn szego_leading(args: &SzegoArgs) -> f64 {
    bessel_j0(args.bessel_arg())
}

/// One iteration of the Volterra relation with the exact scaled Laguerre
/// function inside the kernel.
pub fn szego_iterate(args: &SzegoArgs, quad: &QuadSpec) -> Result<f64> {
    quad.validate()?;
    if args.u() > SZEGO_U_MAX {
        return Err(Error::OutsideValidatedDomain {
            op: "szego_iterate",
            constraint: "u <= 3",
            value: args.u(),
        });
    }
    let u = args.u();
    let leading = szego_leading(args);
    if u == 0.0 {
        return Ok(leading);
    }
    let n = args.level().n();
    let two_sqrt_n = 2.0 * args.big_n().sqrt();
    let j0_outer = leading;
    let y0_outer = y0_unchecked(two_sqrt_n * u);
    let integrand = move |t: f64| -> f64 {
        if t <= 0.0 {
            return 0.0; // t^3 Y0(c t) -> 0
        }
        let f = scaled_laguerre(n, t * t).expect("t^2 >= 0");
        let beta = two_sqrt_n * t;
        t * t * t * f * (j0_outer * y0_unchecked(beta) - bessel_j0(beta) * y0_outer)
    };
    let integral = adaptive_simpson(&integrand, 0.0, u, quad.inner_tol, "szego_iterate")?;
    Ok(leading - 0.5 * PI * integral)
}

/// Value of the correction integral together with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct I1Value {
    pub value: f64,
    pub error_estimate: f64,
}

/// `beta^3 Y0(beta)`, switching to the ascending-series product below 1e-3
/// where the direct product would mix a huge logarithm with a tiny cube.
fn beta3_y0(beta: f64) -> f64 {
    const EULER_GAMMA: f64 = 0.5772156649015329;
    if beta < 1e-3 {
        let z = beta * beta;
        let j0 = 1.0 - 0.25 * z;
        let series = (2.0 / PI) * (((0.5 * beta).ln() + EULER_GAMMA) * j0 + 0.25 * z);
        beta * beta * beta * series
    } else {
        beta * beta * beta * y0_unchecked(beta)
    }
}

/// Running values of `A(a) = Int_0^a b^3 J0 Y0 db` and
/// `B(a) = Int_0^a b^3 J0^2 db`, advanced by Gauss panels between
/// consecutive (ascending) evaluation points. The inner bracket of the
/// correction integral is then `g(a) = J0(a) A(a) - Y0(a) B(a)`.
struct InnerCumulative {
    alpha: f64,
    a: f64,
    b: f64,
    order: usize,
}

impl InnerCumulative {
    fn new() -> Self {
        InnerCumulative {
            alpha: 0.0,
            a: 0.0,
            b: 0.0,
            order: 7,
        }
    }

    fn advance_to(&mut self, alpha: f64) {
        debug_assert!(alpha >= self.alpha);
        if alpha == self.alpha {
            return;
        }
        let (nodes, weights) = gauss_legendre(self.order);
        let half = 0.5 * (alpha - self.alpha);
        let mid = 0.5 * (alpha + self.alpha);
        let (mut da, mut db) = (0.0, 0.0);
        for (&x, &w) in nodes.iter().zip(weights) {
            let beta = mid + half * x;
            let j0 = bessel_j0(beta);
            da += w * j0 * beta3_y0(beta);
            db += w * j0 * j0 * beta * beta * beta;
        }
        self.a += half * da;
        self.b += half * db;
        self.alpha = alpha;
    }

    fn g(&self) -> f64 {
        bessel_j0(self.alpha) * self.a
            - if self.alpha > 0.0 {
                y0_unchecked(self.alpha) * self.b
            } else {
                0.0
            }
    }
}

/// The dimensionless correction integral
/// `i1(r) = 2 Int_0^inf cos(alpha r) g(alpha) d alpha` in its even (cosine)
/// form, where `g` is the inner Bessel bracket. The outer integrand's
/// envelope grows like `alpha^{5/2}`, so the tail is summed over half-period
/// panels and filtered; results are memoized because the integral does not
/// depend on the quantum number.
pub fn correction_integral_i1(x_ratio: f64, quad: &QuadSpec) -> Result<I1Value> {
    quad.validate()?;
    if !(x_ratio.abs() < 1.0) {
        return Err(Error::domain(
            "correction_integral_i1",
            format!("|x/x0| must be below 1, got {x_ratio}"),
        ));
    }
    let r = x_ratio.abs(); // cosine form is even in the ratio

    type I1Cache = HashMap<(u64, [u64; 6]), I1Value>;
    static CACHE: Mutex<Option<I1Cache>> = Mutex::new(None);
    let key = (r.to_bits(), quad.cache_key());
    if let Some(hit) = CACHE
        .lock()
        .expect("i1 cache lock")
        .get_or_insert_with(HashMap::new)
        .get(&key)
    {
        return Ok(*hit);
    }

    let value = i1_uncached(r, quad)?;
    CACHE
        .lock()
        .expect("i1 cache lock")
        .get_or_insert_with(HashMap::new)
        .insert(key, value);
    Ok(value)
}

fn i1_uncached(r: f64, quad: &QuadSpec) -> Result<I1Value> {
    let h = quad.panel_width;
    let panels = (quad.alpha_max / h).floor() as usize;
    let (nodes, weights) = gauss_legendre(20);
    let mut inner = InnerCumulative::new();
    let mut panel_integrals = Vec::with_capacity(panels);
    for m in 0..panels {
        let lo = m as f64 * h;
        let half = 0.5 * h;
        let mid = lo + half;
        let mut acc = 0.0;
        for (&x, &w) in nodes.iter().zip(weights) {
            let alpha = mid + half * x;
            inner.advance_to(alpha);
            acc += w * (alpha * r).cos() * inner.g();
        }
        panel_integrals.push(2.0 * half * acc);
    }

    // Panel sums carry the frequencies (1 +- r) and (3 +- r); sampled at the
    // panel width they alias onto a single conjugate pair of modes.
    let cosines = mode_cosines(r, h);
    let acc = accelerate_panel_sums(
        &panel_integrals,
        &cosines,
        quad.filter_passes,
        "correction_integral_i1",
        quad.abs_tol,
        quad.rel_tol,
    )?;
    // The filter cannot see the truncation bias of the finite alpha_max;
    // re-filtering a 3/4-length prefix of the same panels measures it.
    let shorter = accelerate_panel_sums(
        &panel_integrals[..panels * 3 / 4],
        &cosines,
        quad.filter_passes,
        "correction_integral_i1",
        quad.abs_tol,
        quad.rel_tol,
    );
    let truncation = match shorter {
        Ok(s) => (acc.value - s.value).abs(),
        Err(_) => acc.error_estimate,
    };
    Ok(I1Value {
        value: acc.value,
        error_estimate: acc.error_estimate.max(truncation),
    })
}

fn mode_cosines(r: f64, h: f64) -> Vec<f64> {
    [1.0 - r, 1.0 + r, 3.0 - r, 3.0 + r]
        .iter()
        .map(|w| (w * h).cos())
        .collect()
}

/// Prefactor of the k-th correction term, `(-pi/32)^k (hbar/S)^{2k}`.
pub fn correction_prefactor(energy_match: &EnergyMatch, k: usize) -> f64 {
    (-PI / 32.0 * energy_match.hbar_over_action().powi(2)).powi(k as i32)
}

/// Corrected position density
/// `cpd(x) + (1/(2 pi x0)) (-pi/32) (hbar/S)^2 i1(x/x0)` for `k_max = 1`,
/// or the plain classical density for `k_max = 0`.
pub fn corrected_density(
    energy_match: &EnergyMatch,
    x: f64,
    k_max: usize,
    quad: &QuadSpec,
) -> Result<f64> {
    corrected_impl(energy_match, energy_match.x0(), cpd_position(energy_match, x)?, x, k_max, quad)
}

/// Momentum-space mirror of [`corrected_density`] with `p0` and the same
/// action and dimensionless integral.
pub fn corrected_density_momentum(
    energy_match: &EnergyMatch,
    p: f64,
    k_max: usize,
    quad: &QuadSpec,
) -> Result<f64> {
    corrected_impl(energy_match, energy_match.p0(), cpd_momentum(energy_match, p)?, p, k_max, quad)
}

fn corrected_impl(
    energy_match: &EnergyMatch,
    bound: f64,
    classical: f64,
    arg: f64,
    k_max: usize,
    quad: &QuadSpec,
) -> Result<f64> {
    if k_max == 0 {
        return Ok(classical);
    }
    if k_max > 1 {
        return Err(Error::CorrectionOrderUnsupported { k_max });
    }
    if arg.abs() >= bound {
        return Err(Error::OutsideValidatedDomain {
            op: "corrected_density",
            constraint: "|x| < x0 (classical region)",
            value: arg,
        });
    }
    let i1 = correction_integral_i1(arg / bound, quad)?;
    Ok(classical + correction_prefactor(energy_match, 1) / (2.0 * PI * bound) * i1.value)
}

/// Sample the corrected density (classical plus the k <= k_max correction
/// terms) on a grid inside the classical region. Values are reported as
/// computed: near the turning points the corrected density may dip below
/// zero, and no clipping is applied.
pub fn corrected_profile(
    params: &OscillatorParams,
    energy_match: &EnergyMatch,
    space: crate::densities::Space,
    grid: Vec<f64>,
    k_max: usize,
    quad: &QuadSpec,
) -> Result<crate::densities::DensityProfile> {
    crate::densities::DensityProfile::check_grid(&grid)?;
    let eval = match space {
        crate::densities::Space::Position => corrected_density,
        crate::densities::Space::Momentum => corrected_density_momentum,
    };
    let values: Result<Vec<f64>> = grid
        .par_iter()
        .map(|&g| eval(energy_match, g, k_max, quad))
        .collect();
    Ok(crate::densities::DensityProfile {
        space,
        kind: crate::densities::DensityKind::AsymptoticCorrected,
        grid,
        values: values?,
        params: *params,
        level: Some(QuantumLevel(energy_match.n())),
        energy_match: Some(*energy_match),
    })
}

/// Precomputed correction terms sampled on a ratio grid, reusable across
/// levels because the `i_k` are n-independent.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrectionSeries {
    pub energy_match: EnergyMatch,
    pub k_max: usize,
    pub ratios: Vec<f64>,
    /// `terms[k-1][j] = i_k(ratios[j])` for k = 1..=k_max.
    pub terms: Vec<Vec<f64>>,
    /// `prefactors[k] = (-pi/32)^k (hbar/S)^{2k}` for k = 0..=k_max.
    pub prefactors: Vec<f64>,
}

impl CorrectionSeries {
    pub fn build(
        energy_match: EnergyMatch,
        k_max: usize,
        ratios: Vec<f64>,
        quad: &QuadSpec,
    ) -> Result<Self> {
        if k_max > 1 {
            return Err(Error::CorrectionOrderUnsupported { k_max });
        }
        let mut terms = Vec::new();
        if k_max >= 1 {
            let i1: Result<Vec<f64>> = ratios
                .par_iter()
                .map(|&r| correction_integral_i1(r, quad).map(|v| v.value))
                .collect();
            terms.push(i1?);
        }
        let prefactors = (0..=k_max)
            .map(|k| correction_prefactor(&energy_match, k))
            .collect();
        Ok(CorrectionSeries {
            energy_match,
            k_max,
            ratios,
            terms,
            prefactors,
        })
    }

    /// Corrected position-space density at `ratios[j] * x0`.
    pub fn density_at(&self, j: usize) -> Result<f64> {
        let x = self.ratios[j] * self.energy_match.x0();
        let mut rho = cpd_position(&self.energy_match, x)?;
        for (k, term) in self.terms.iter().enumerate() {
            rho += self.prefactors[k + 1] / (2.0 * PI * self.energy_match.x0()) * term[j];
        }
        Ok(rho)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscillator::{energy_match, OscillatorParams};
    use approx::assert_relative_eq;

    #[test]
    fn szego_args_map_to_bessel_argument() {
        // n = 12, natural units, p = 1: 2 sqrt(N) u = p x0 / hbar = 5
        let params = OscillatorParams::natural();
        let level = QuantumLevel(12);
        let args = SzegoArgs::from_momentum(&params, level, 1.0).unwrap();
        let m = energy_match(&params, level);
        assert_relative_eq!(args.bessel_arg(), 1.0 * m.x0() / params.hbar(), max_relative = 1e-14);
        assert_relative_eq!(szego_leading(&args), bessel_j0(5.0), max_relative = 1e-15);
    }

    #[test]
    fn szego_leading_at_zero_is_one() {
        let args = SzegoArgs::new(QuantumLevel(77), 0.0).unwrap();
        assert_eq!(szego_leading(&args), 1.0);
        assert_eq!(
            szego_iterate(&args, &QuadSpec::default()).unwrap(),
            1.0
        );
    }

    #[test]
    fn szego_iteration_tightens_toward_exact_laguerre() {
        let quad = QuadSpec::default();
        for (n, u) in [(50u32, 0.5f64), (10, 1.0)] {
            let args = SzegoArgs::new(QuantumLevel(n), u).unwrap();
            let exact = scaled_laguerre(n, u * u).unwrap();
            let leading_err = (szego_leading(&args) - exact).abs();
            let iterate_err = (szego_iterate(&args, &quad).unwrap() - exact).abs();
            assert!(
                iterate_err * 2.0 <= leading_err,
                "n = {n}, u = {u}: {iterate_err} vs {leading_err}"
            );
        }
    }

    #[test]
    fn szego_leading_hits_first_bessel_zero() {
        // n = 100: pick u so that 2 sqrt(N) u lands on the first J0 zero
        let z = 2.404825557695773;
        let level = QuantumLevel(100);
        let u = z / (2.0 * level.big_n().sqrt());
        let args = SzegoArgs::new(level, u).unwrap();
        assert!(szego_leading(&args).abs() < 1e-9);
    }

    #[test]
    fn szego_residuals_shrink_monotonically_in_n() {
        let quad = QuadSpec::default();
        let mut last_leading = f64::INFINITY;
        for &n in &[10u32, 25, 50, 100, 200] {
            let mut max_leading: f64 = 0.0;
            let mut max_iterated: f64 = 0.0;
            for i in 0..=40 {
                let u = i as f64 / 40.0;
                let args = SzegoArgs::new(QuantumLevel(n), u).unwrap();
                let exact = scaled_laguerre(n, u * u).unwrap();
                max_leading = max_leading.max((szego_leading(&args) - exact).abs());
                max_iterated =
                    max_iterated.max((szego_iterate(&args, &quad).unwrap() - exact).abs());
            }
            assert!(max_leading < last_leading, "n = {n}");
            assert!(2.0 * max_iterated <= max_leading, "n = {n}");
            last_leading = max_leading;
        }
    }

    #[test]
    fn momentum_correction_scales_by_x0_over_p0() {
        // same dimensionless ratio, generic units: the momentum-space value
        // is the position-space value times x0/p0
        let params = OscillatorParams::new(2.0, 0.7, 1.3).unwrap();
        let m = energy_match(&params, QuantumLevel(100));
        let quad = QuadSpec::default();
        let rho_x = corrected_density(&m, 0.3 * m.x0(), 1, &quad).unwrap();
        let rho_p = corrected_density_momentum(&m, 0.3 * m.p0(), 1, &quad).unwrap();
        assert_relative_eq!(rho_p, rho_x * m.x0() / m.p0(), max_relative = 1e-13);
    }

    #[test]
    fn szego_iterate_refuses_unvalidated_region() {
        let args = SzegoArgs::new(QuantumLevel(5), 3.5).unwrap();
        assert!(matches!(
            szego_iterate(&args, &QuadSpec::default()),
            Err(Error::OutsideValidatedDomain { .. })
        ));
    }

    #[test]
    fn i1_is_even_in_the_ratio() {
        let quad = QuadSpec::default();
        let plus = correction_integral_i1(0.4, &quad).unwrap();
        let minus = correction_integral_i1(-0.4, &quad).unwrap();
        assert_eq!(plus.value, minus.value);
    }

    #[test]
    fn i1_rejects_ratios_outside_the_classical_region() {
        let quad = QuadSpec::default();
        assert!(correction_integral_i1(1.0, &quad).is_err());
        assert!(correction_integral_i1(-1.3, &quad).is_err());
    }

    #[test]
    fn i1_is_stable_under_doubling_alpha_max() {
        let quad = QuadSpec::default();
        let mut wide = quad;
        wide.alpha_max *= 2.0;
        for &r in &[0.0, 0.3, 0.5] {
            let base = correction_integral_i1(r, &quad).unwrap();
            let doubled = correction_integral_i1(r, &wide).unwrap();
            let tol = base.error_estimate.max(doubled.error_estimate).max(1e-12);
            assert!(
                (base.value - doubled.value).abs() <= 10.0 * tol,
                "r = {r}: {} vs {} (tol {tol:.2e})",
                base.value,
                doubled.value
            );
        }
    }

    #[test]
    fn corrected_density_reduces_to_classical_at_k0() {
        let params = OscillatorParams::natural();
        let m = energy_match(&params, QuantumLevel(12));
        let quad = QuadSpec::default();
        let x = 0.5 * m.x0();
        assert_eq!(
            corrected_density(&m, x, 0, &quad).unwrap(),
            cpd_position(&m, x).unwrap()
        );
    }

    #[test]
    fn correction_prefactor_matches_arithmetic() {
        // n = 12: |pref| = (pi/32) (1/(25 pi))^2
        let params = OscillatorParams::natural();
        let m = energy_match(&params, QuantumLevel(12));
        let expected = (PI / 32.0) * (1.0 / (25.0 * PI)).powi(2);
        assert_relative_eq!(correction_prefactor(&m, 1).abs(), expected, max_relative = 1e-13);
        assert!(correction_prefactor(&m, 1) < 0.0);
        assert_eq!(correction_prefactor(&m, 0), 1.0);
    }

    #[test]
    fn successive_prefactor_ratio_is_exact() {
        let params = OscillatorParams::natural();
        let m = energy_match(&params, QuantumLevel(30));
        let quad = QuadSpec::default();
        let series =
            CorrectionSeries::build(m, 1, vec![0.0, 0.3, 0.6], &quad).unwrap();
        let ratio = series.prefactors[1].abs() / series.prefactors[0].abs();
        assert_relative_eq!(
            ratio,
            (PI / 32.0) * m.hbar_over_action().powi(2),
            max_relative = 1e-14
        );
    }

    #[test]
    fn correction_magnitude_scales_as_inverse_action_squared() {
        // fixed x/x0 = 0.3: term ratio between n = 100 and n = 200 approx (201/401)^2
        let params = OscillatorParams::natural();
        let quad = QuadSpec::default();
        let term = |n: u32| -> f64 {
            let m = energy_match(&params, QuantumLevel(n));
            let x = 0.3 * m.x0();
            let corrected = corrected_density(&m, x, 1, &quad).unwrap();
            let classical = cpd_position(&m, x).unwrap();
            // dimensionless relative correction; x0 cancels
            ((corrected - classical) / classical).abs()
        };
        let ratio = term(200) / term(100);
        let expected = (201.0f64 / 401.0).powi(2);
        assert!(
            (ratio / expected - 1.0).abs() < 0.10,
            "ratio {ratio} vs {expected}"
        );
    }

    #[test]
    fn corrected_profile_matches_pointwise_evaluation() {
        let params = OscillatorParams::natural();
        let m = energy_match(&params, QuantumLevel(25));
        let quad = QuadSpec::default();
        let grid: Vec<f64> = (-8..=8).map(|i| 0.1 * i as f64 * m.x0()).collect();
        let profile = corrected_profile(
            &params,
            &m,
            crate::densities::Space::Position,
            grid.clone(),
            1,
            &quad,
        )
        .unwrap();
        assert_eq!(profile.kind, crate::densities::DensityKind::AsymptoticCorrected);
        for (i, &x) in grid.iter().enumerate() {
            assert_eq!(
                profile.values[i],
                corrected_density(&m, x, 1, &quad).unwrap()
            );
        }
    }

    #[test]
    fn rejects_unimplemented_orders() {
        let params = OscillatorParams::natural();
        let m = energy_match(&params, QuantumLevel(3));
        let quad = QuadSpec::default();
        assert!(matches!(
            corrected_density(&m, 0.1, 2, &quad),
            Err(Error::CorrectionOrderUnsupported { k_max: 2 })
        ));
    }
}
