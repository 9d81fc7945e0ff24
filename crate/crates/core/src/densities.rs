//! Quantum and classical probability densities in position and momentum
//! space.
//!
//! The quantum density is spread over the whole axis while the classical
//! arcsine density lives on (-x0, x0) and diverges integrably at the turning
//! points. Profile builders therefore nudge grid points that fall exactly on
//! a turning point, and integration of the classical density elsewhere in the
//! crate goes through the `x = x0 sin(theta)` substitution.

use crate::error::Error;
use crate::oscillator::{EnergyMatch, OscillatorParams, QuantumLevel};
use crate::special::oscillator_wavefunction;
use crate::Result;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Which canonical variable the grid samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    Position,
    Momentum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityKind {
    Quantum,
    Classical,
    /// Classical density plus the k = 1 oscillatory correction; may dip
    /// below zero near the turning points and is reported as computed.
    AsymptoticCorrected,
}

/// A sampled probability density with its domain metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile {
    pub space: Space,
    pub kind: DensityKind,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub params: OscillatorParams,
    pub level: Option<QuantumLevel>,
    pub energy_match: Option<EnergyMatch>,
}

impl DensityProfile {
    /// Uniform grid spacing; profiles built by this crate are uniform.
    pub fn spacing(&self) -> f64 {
        if self.grid.len() < 2 {
            return 0.0;
        }
        (self.grid[self.grid.len() - 1] - self.grid[0]) / (self.grid.len() - 1) as f64
    }

    pub(crate) fn check_grid(grid: &[f64]) -> Result<()> {
        if grid.len() < 2 {
            return Err(Error::GridMismatch {
                msg: format!("grid needs at least 2 points, got {}", grid.len()),
            });
        }
        if !grid.windows(2).all(|w| w[1] > w[0]) {
            return Err(Error::GridMismatch {
                msg: "grid must be strictly increasing".into(),
            });
        }
        Ok(())
    }
}

/// Quantum probability density in position space,
/// `rho(x) = sqrt(alpha) psi_n(sqrt(alpha) x)^2`.
pub fn qpd_position(params: &OscillatorParams, level: QuantumLevel, x: f64) -> f64 {
    scaled_density(level, params.length_scale(), x)
}

/// Quantum probability density in momentum space; the oscillator symmetry
/// maps `x <-> p/(m omega)` so this is the position form with the momentum
/// scale `sqrt(m omega hbar)`.
pub fn qpd_momentum(params: &OscillatorParams, level: QuantumLevel, p: f64) -> f64 {
    scaled_density(level, params.momentum_scale(), p)
}

fn scaled_density(level: QuantumLevel, scale: f64, arg: f64) -> f64 {
    let psi = oscillator_wavefunction(level.n(), arg / scale);
    psi * psi / scale
}

/// Classical (arcsine) density in position space:
/// `1/(pi sqrt(x0^2 - x^2))` inside the turning points, zero outside.
pub fn cpd_position(energy_match: &EnergyMatch, x: f64) -> Result<f64> {
    arcsine_density(energy_match.x0(), x)
}

/// Classical density in momentum space with support (-p0, p0).
pub fn cpd_momentum(energy_match: &EnergyMatch, p: f64) -> Result<f64> {
    arcsine_density(energy_match.p0(), p)
}

fn arcsine_density(bound: f64, arg: f64) -> Result<f64> {
    let a = arg.abs();
    if a == bound {
        return Err(Error::SingularAtTurningPoint {
            turning_point: bound,
        });
    }
    if a > bound {
        return Ok(0.0);
    }
    Ok(1.0 / (PI * ((bound - a) * (bound + a)).sqrt()))
}

/// Uniform grid of `points` samples over `[-1.2 b, 1.2 b]` where `b` is the
/// relevant classical bound; wide enough to show the quantum tail spillover.
pub fn default_grid(energy_match: &EnergyMatch, space: Space, points: usize) -> Vec<f64> {
    let bound = match space {
        Space::Position => energy_match.x0(),
        Space::Momentum => energy_match.p0(),
    };
    uniform_grid(-1.2 * bound, 1.2 * bound, points)
}

/// Uniform grid over `[min, max]` inclusive.
pub fn uniform_grid(min: f64, max: f64, points: usize) -> Vec<f64> {
    assert!(points >= 2, "a grid needs at least two points");
    let h = (max - min) / (points - 1) as f64;
    (0..points)
        .map(|i| {
            if i == points - 1 {
                max
            } else {
                min + i as f64 * h
            }
        })
        .collect()
}

/// Grid wide enough that the quantum tail mass outside it is negligible
/// (below ~1e-14 relative): the classical bound plus a WKB-picked pad.
pub fn wide_grid(
    params: &OscillatorParams,
    energy_match: &EnergyMatch,
    space: Space,
    points: usize,
) -> Vec<f64> {
    let (bound, scale) = match space {
        Space::Position => (energy_match.x0(), params.length_scale()),
        Space::Momentum => (energy_match.p0(), params.momentum_scale()),
    };
    // tunnelling exponent 2 * (2/3) sqrt(2 b) d^{3/2} >= 40 in scaled units
    let b_scaled = bound / scale;
    let pad_scaled = (30.0 / (2.0 * b_scaled).sqrt()).powf(2.0 / 3.0).max(6.0);
    let half = bound + pad_scaled * scale;
    uniform_grid(-half, half, points)
}

/// Sample the quantum density of `level` on `grid`.
pub fn quantum_profile(
    params: &OscillatorParams,
    level: QuantumLevel,
    space: Space,
    grid: Vec<f64>,
) -> Result<DensityProfile> {
    DensityProfile::check_grid(&grid)?;
    let eval = match space {
        Space::Position => qpd_position,
        Space::Momentum => qpd_momentum,
    };
    let values: Vec<f64> = grid
        .par_iter()
        .map(|&g| eval(params, level, g))
        .collect();
    Ok(DensityProfile {
        space,
        kind: DensityKind::Quantum,
        grid,
        values,
        params: *params,
        level: Some(level),
        energy_match: None,
    })
}

/// Sample the classical density on `grid`; points that land exactly on a
/// turning point are evaluated a half-ulp inward instead of erroring.
pub fn classical_profile(
    params: &OscillatorParams,
    energy_match: &EnergyMatch,
    space: Space,
    grid: Vec<f64>,
) -> Result<DensityProfile> {
    DensityProfile::check_grid(&grid)?;
    let bound = match space {
        Space::Position => energy_match.x0(),
        Space::Momentum => energy_match.p0(),
    };
    let values: Vec<f64> = grid
        .par_iter()
        .map(|&g| {
            let g = if g.abs() == bound {
                // clamp exactly-singular samples just inside the support
                g * (1.0 - f64::EPSILON)
            } else {
                g
            };
            arcsine_density(bound, g).expect("nudged point cannot be singular")
        })
        .collect();
    Ok(DensityProfile {
        space,
        kind: DensityKind::Classical,
        grid,
        values,
        params: *params,
        level: Some(QuantumLevel(energy_match.n())),
        energy_match: Some(*energy_match),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscillator::energy_match;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn natural() -> OscillatorParams {
        OscillatorParams::natural()
    }

    #[test]
    fn ground_state_density_at_origin() {
        // sqrt(1/pi)
        assert_abs_diff_eq!(
            qpd_position(&natural(), QuantumLevel(0), 0.0),
            0.5641895835477563,
            epsilon = 1e-15
        );
    }

    #[test]
    fn first_excited_vanishes_at_origin() {
        assert_eq!(qpd_position(&natural(), QuantumLevel(1), 0.0), 0.0);
    }

    #[test]
    fn momentum_density_gaussian_normalization() {
        // n = 0, m = 2: rho(0) = 1/sqrt(2 pi hbar m omega) ... = sqrt(1/(2 pi))
        let params = OscillatorParams::new(2.0, 1.0, 1.0).unwrap();
        assert_abs_diff_eq!(
            qpd_momentum(&params, QuantumLevel(0), 0.0),
            (1.0 / (2.0 * PI)).sqrt(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn momentum_equals_position_in_natural_units() {
        let params = natural();
        for n in [0u32, 1, 5, 42] {
            for &v in &[0.0, 0.35, 1.9, 6.0] {
                assert_eq!(
                    qpd_momentum(&params, QuantumLevel(n), v),
                    qpd_position(&params, QuantumLevel(n), v)
                );
            }
        }
    }

    #[test]
    fn classical_density_values() {
        let m = energy_match(&natural(), QuantumLevel(0)); // x0 = 1
        assert_abs_diff_eq!(cpd_position(&m, 0.0).unwrap(), 1.0 / PI, epsilon = 1e-15);
        assert_eq!(cpd_position(&m, 1.5).unwrap(), 0.0);
        assert!(matches!(
            cpd_position(&m, 1.0),
            Err(Error::SingularAtTurningPoint { .. })
        ));

        let m12 = energy_match(&natural(), QuantumLevel(12)); // p0 = 5
        assert_abs_diff_eq!(
            cpd_momentum(&m12, 3.0).unwrap(),
            1.0 / (4.0 * PI),
            epsilon = 1e-15
        );
        assert_eq!(cpd_momentum(&m12, 5.1).unwrap(), 0.0);
    }

    #[test]
    fn quantum_density_even_and_has_n_interior_zeros() {
        let params = natural();
        for n in [4u32, 9, 25, 50] {
            let level = QuantumLevel(n);
            let m = energy_match(&params, level);
            let grid = uniform_grid(-1.2 * m.x0(), 1.2 * m.x0(), 8001);
            let psi: Vec<f64> = grid
                .iter()
                .map(|&x| oscillator_wavefunction(n, x))
                .collect();
            // count strict sign flips, looking through grid points that land
            // exactly on a node (x = 0 does for odd n)
            let mut sign_changes = 0u32;
            let mut last_sign = 0i8;
            for &v in &psi {
                let s = if v > 0.0 {
                    1i8
                } else if v < 0.0 {
                    -1i8
                } else {
                    continue;
                };
                if last_sign != 0 && s != last_sign {
                    sign_changes += 1;
                }
                last_sign = s;
            }
            assert_eq!(sign_changes, n, "n = {n}");
            for &x in &[0.17, 1.3, 4.0] {
                assert_eq!(
                    qpd_position(&params, level, -x),
                    qpd_position(&params, level, x)
                );
            }
        }
    }

    #[test]
    fn large_n_density_is_finite() {
        let v = qpd_position(&natural(), QuantumLevel(1_000_000), 0.0);
        assert!(v.is_finite());
        assert!(v > 0.0);
    }

    #[test]
    fn classical_profile_handles_exact_turning_point() {
        let params = natural();
        let m = energy_match(&params, QuantumLevel(0));
        let grid = vec![-1.0, -0.5, 0.0, 0.5, 1.0];
        let profile = classical_profile(&params, &m, Space::Position, grid).unwrap();
        assert!(profile.values.iter().all(|v| v.is_finite()));
        assert_relative_eq!(profile.values[2], 1.0 / PI, epsilon = 1e-15);
    }
}
