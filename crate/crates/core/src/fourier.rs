//! Fourier coefficients (characteristic functions) of the densities.
//!
//! Convention: forward transform `f(p) = Int rho(x) exp(-i p x / hbar) dx`,
//! inverse `rho(x) = 1/(2 pi hbar) Int f(p) exp(i p x / hbar) dp`, so that
//! `f(0) = 1` for every normalized density. All densities in scope are even,
//! hence the real cosine form is used throughout.
//!
//! The quantum coefficients have the closed form
//! `exp(-p^2/(4 m omega hbar)) L_n(p^2/(2 m omega hbar))`, i.e. exactly the
//! scaled Laguerre function; the classical coefficients are
//! `J0(p x0 / hbar)`. `numeric_fourier_oracle` inverts the density by direct
//! quadrature and is the independent cross-check of both paths.

use crate::asymptotics::{szego_iterate, SzegoArgs};
use crate::densities::{DensityKind, DensityProfile, Space};
use crate::error::Error;
use crate::oscillator::{EnergyMatch, OscillatorParams, QuantumLevel};
use crate::quad::{gauss_panel, simpson_uniform, QuadSpec};
use crate::special::{bessel_j0, scaled_laguerre};
use crate::Result;
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI};

/// Which density the coefficients belong to; the grid variable is the
/// conjugate of that density's variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FourierSpace {
    PositionConjugate,
    MomentumConjugate,
}

impl From<Space> for FourierSpace {
    fn from(space: Space) -> Self {
        match space {
            Space::Position => FourierSpace::PositionConjugate,
            Space::Momentum => FourierSpace::MomentumConjugate,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FourierKind {
    QuantumAnalytic,
    Classical,
    SzegoAsymptotic,
    NumericOracle,
}

/// Sampled Fourier coefficients over a conjugate-variable grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierProfile {
    pub space: FourierSpace,
    pub kind: FourierKind,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub params: OscillatorParams,
    pub level: Option<QuantumLevel>,
}

/// Closed-form quantum coefficient for the position-space density:
/// `exp(-p^2/(4 m omega hbar)) L_n(p^2/(2 m omega hbar))`, evaluated through
/// the scaled Laguerre recurrence so large `n` and `p` cannot overflow.
pub fn quantum_fourier_coeff(params: &OscillatorParams, level: QuantumLevel, p: f64) -> f64 {
    quantum_fourier_coeff_in(params, level, Space::Position, p)
}

/// Quantum coefficient for the density in the given space. The oscillator
/// symmetry swaps the momentum scale for the length scale.
pub fn quantum_fourier_coeff_in(
    params: &OscillatorParams,
    level: QuantumLevel,
    density_space: Space,
    conj_var: f64,
) -> f64 {
    let scale = match density_space {
        Space::Position => params.momentum_scale(),
        Space::Momentum => params.length_scale(),
    };
    let x = conj_var * conj_var / (2.0 * scale * scale);
    scaled_laguerre(level.n(), x).expect("argument is a square")
}

/// Classical coefficient `J0(p x0 / hbar)` (leading asymptotic form).
pub fn classical_fourier_coeff(
    energy_match: &EnergyMatch,
    params: &OscillatorParams,
    p: f64,
) -> f64 {
    classical_fourier_coeff_in(energy_match, params, Space::Position, p)
}

/// Classical coefficient for either space: `J0(v b / hbar)` with `b` the
/// classical bound conjugate to `v`.
pub fn classical_fourier_coeff_in(
    energy_match: &EnergyMatch,
    params: &OscillatorParams,
    density_space: Space,
    conj_var: f64,
) -> f64 {
    let bound = match density_space {
        Space::Position => energy_match.x0(),
        Space::Momentum => energy_match.p0(),
    };
    bessel_j0(conj_var * bound / params.hbar())
}

/// Sample the closed-form quantum coefficients on `grid`.
pub fn quantum_fourier_profile(
    params: &OscillatorParams,
    level: QuantumLevel,
    density_space: Space,
    grid: Vec<f64>,
) -> FourierProfile {
    let values = grid
        .par_iter()
        .map(|&p| quantum_fourier_coeff_in(params, level, density_space, p))
        .collect();
    FourierProfile {
        space: density_space.into(),
        kind: FourierKind::QuantumAnalytic,
        grid,
        values,
        params: *params,
        level: Some(level),
    }
}

/// Sample the classical coefficients on `grid`.
pub fn classical_fourier_profile(
    energy_match: &EnergyMatch,
    params: &OscillatorParams,
    density_space: Space,
    grid: Vec<f64>,
) -> FourierProfile {
    let values = grid
        .par_iter()
        .map(|&p| classical_fourier_coeff_in(energy_match, params, density_space, p))
        .collect();
    FourierProfile {
        space: density_space.into(),
        kind: FourierKind::Classical,
        grid,
        values,
        params: *params,
        level: Some(QuantumLevel(energy_match.n())),
    }
}

/// Sample the one-iteration Szego asymptotic of the quantum coefficients.
/// Fails if any grid point maps to `u > 3`, outside the validated region.
pub fn szego_fourier_profile(
    params: &OscillatorParams,
    level: QuantumLevel,
    density_space: Space,
    grid: Vec<f64>,
    quad: &QuadSpec,
) -> Result<FourierProfile> {
    let scale = match density_space {
        Space::Position => params.momentum_scale(),
        Space::Momentum => params.length_scale(),
    };
    let values: Result<Vec<f64>> = grid
        .par_iter()
        .map(|&p| {
            let u = p.abs() / (std::f64::consts::SQRT_2 * scale);
            let args = SzegoArgs::new(level, u)?;
            szego_iterate(&args, quad)
        })
        .collect();
    Ok(FourierProfile {
        space: density_space.into(),
        kind: FourierKind::SzegoAsymptotic,
        grid,
        values: values?,
        params: *params,
        level: Some(level),
    })
}

/// Estimated probability mass outside the profile grid, from an exponential
/// model of the tail fitted to the outermost two samples on each side.
pub fn density_tail_mass(profile: &DensityProfile) -> f64 {
    let n = profile.grid.len();
    if n < 3 {
        return f64::INFINITY;
    }
    let h = profile.spacing();
    let side = |outer: f64, inner: f64| -> f64 {
        if outer <= 0.0 {
            return 0.0;
        }
        if inner <= outer {
            // tail not yet decaying; do not pretend it is negligible
            return outer * h * n as f64;
        }
        // rho ~ rho_edge exp(-x/l) with l = h / ln(inner/outer)
        outer * h / (inner / outer).ln()
    };
    side(profile.values[n - 1], profile.values[n - 2])
        + side(profile.values[0], profile.values[1])
}

/// Tail-mass bound the oracle assumes; callers (and the CLI) should warn
/// when [`density_tail_mass`] exceeds it.
pub const ORACLE_TAIL_BOUND: f64 = 1e-12;

/// Direct numerical Fourier transform of a sampled density:
/// `f(p) = Int rho(x) cos(p x / hbar) dx`.
///
/// Quantum (and corrected) profiles are integrated with composite Simpson on
/// the stored grid; classical profiles use the arcsine substitution
/// `x = x0 sin(theta)`, which removes the integrable turning-point
/// singularity exactly.
pub fn numeric_fourier_oracle(profile: &DensityProfile, p_grid: &[f64]) -> Result<FourierProfile> {
    DensityProfile::check_grid(&profile.grid)?;
    if profile.grid.len() != profile.values.len() {
        return Err(Error::GridMismatch {
            msg: format!(
                "profile has {} grid points but {} values",
                profile.grid.len(),
                profile.values.len()
            ),
        });
    }
    let hbar = profile.params.hbar();
    let values: Vec<f64> = match profile.kind {
        DensityKind::Classical => {
            let bound = match (profile.energy_match.as_ref(), profile.space) {
                (Some(m), Space::Position) => m.x0(),
                (Some(m), Space::Momentum) => m.p0(),
                (None, _) => {
                    return Err(Error::domain(
                        "numeric_fourier_oracle",
                        "classical profile lacks its energy match",
                    ))
                }
            };
            p_grid
                .par_iter()
                .map(|&p| arcsine_cosine_transform(bound, p / hbar))
                .collect()
        }
        _ => {
            let h = profile.spacing();
            p_grid
                .par_iter()
                .map(|&p| {
                    let integrand: Vec<f64> = profile
                        .grid
                        .iter()
                        .zip(&profile.values)
                        .map(|(&x, &rho)| rho * (p * x / hbar).cos())
                        .collect();
                    simpson_uniform(&integrand, h)
                })
                .collect()
        }
    };
    Ok(FourierProfile {
        space: profile.space.into(),
        kind: FourierKind::NumericOracle,
        grid: p_grid.to_vec(),
        values,
        params: profile.params,
        level: profile.level,
    })
}

/// `(1/pi) Int_{-pi/2}^{pi/2} cos(s sin(theta)) d theta`, the cosine
/// transform of the arcsine density with `s = p b / hbar`; equals `J0(s)`
/// analytically, evaluated here by quadrature precisely so the identity can
/// be tested.
fn arcsine_cosine_transform(bound: f64, freq: f64) -> f64 {
    let s = bound * freq;
    // one Gauss panel per ~2 radians of phase keeps the rule spectral
    let panels = (s.abs() / 2.0).ceil().max(2.0) as usize;
    let width = PI / panels as f64;
    let mut acc = 0.0;
    for k in 0..panels {
        let lo = -FRAC_PI_2 + k as f64 * width;
        acc += gauss_panel(&|theta: f64| (s * theta.sin()).cos(), lo, lo + width, 20);
    }
    acc / PI
}
