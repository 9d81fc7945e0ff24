//! Physical parameters and the energy-matching map from quantum number to
//! classical amplitude, momentum and action.
//!
//! Internals work in dimensionless variables (`xi = sqrt(alpha) x`,
//! `u = p / sqrt(2 m omega hbar)`); public constructors take physical units
//! and convert at the boundary.

use crate::error::Error;
use crate::Result;
use std::f64::consts::PI;

/// Mass, angular frequency and Planck constant of the oscillator.
///
/// `alpha = m omega / hbar` is always recomputed from the three inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams {
    mass: f64,
    omega: f64,
    hbar: f64,
}

impl OscillatorParams {
    pub fn new(mass: f64, omega: f64, hbar: f64) -> Result<Self> {
        for (name, v) in [("mass", mass), ("omega", omega), ("hbar", hbar)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::domain(
                    "OscillatorParams::new",
                    format!("{name} must be a positive finite number, got {v}"),
                ));
            }
        }
        Ok(OscillatorParams { mass, omega, hbar })
    }

    /// Natural units m = omega = hbar = 1.
    pub fn natural() -> Self {
        OscillatorParams {
            mass: 1.0,
            omega: 1.0,
            hbar: 1.0,
        }
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Inverse squared length scale `m omega / hbar`.
    pub fn alpha(&self) -> f64 {
        self.mass * self.omega / self.hbar
    }

    /// Ground-state length scale `sqrt(hbar / (m omega))`.
    pub fn length_scale(&self) -> f64 {
        (self.hbar / (self.mass * self.omega)).sqrt()
    }

    /// Momentum scale `sqrt(m omega hbar)`.
    pub fn momentum_scale(&self) -> f64 {
        (self.mass * self.omega * self.hbar).sqrt()
    }
}

/// Principal quantum number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct QuantumLevel(pub u32);

impl QuantumLevel {
    pub fn n(&self) -> u32 {
        self.0
    }

    /// `N = n + 1/2`, the argument of the Bessel asymptotics.
    pub fn big_n(&self) -> f64 {
        self.0 as f64 + 0.5
    }
}

/// Classical quantities matched to level `n` by equating energies:
/// `E = hbar omega (n + 1/2) = m omega^2 x0^2 / 2 = p0^2 / (2m)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyMatch {
    n: u32,
    big_n: f64,
    x0: f64,
    p0: f64,
    action_x: f64,
    action_p: f64,
    energy: f64,
    hbar: f64,
}

impl EnergyMatch {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn big_n(&self) -> f64 {
        self.big_n
    }

    /// Classical turning point.
    pub fn x0(&self) -> f64 {
        self.x0
    }

    /// Maximum classical momentum.
    pub fn p0(&self) -> f64 {
        self.p0
    }

    /// Action `pi m omega x0^2`, equal to `(2n+1) pi hbar`.
    pub fn action_x(&self) -> f64 {
        self.action_x
    }

    /// Action written as `pi p0^2 / (m omega)`; same value as [`action_x`](Self::action_x).
    pub fn action_p(&self) -> f64 {
        self.action_p
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// The small parameter of the correction series, `hbar / S`.
    pub fn hbar_over_action(&self) -> f64 {
        self.hbar / self.action_x
    }
}

/// Match classical amplitude, momentum and action to quantum level `n`:
/// `x0 = sqrt((2n+1) hbar / (m omega))`, `p0 = m omega x0`.
pub fn energy_match(params: &OscillatorParams, level: QuantumLevel) -> EnergyMatch {
    let two_n_plus_1 = 2.0 * level.n() as f64 + 1.0;
    let x0 = (two_n_plus_1 * params.hbar() / (params.mass() * params.omega())).sqrt();
    let p0 = params.mass() * params.omega() * x0;
    let action_x = PI * params.mass() * params.omega() * x0 * x0;
    let action_p = PI * p0 * p0 / (params.mass() * params.omega());
    let energy = params.hbar() * params.omega() * level.big_n();
    EnergyMatch {
        n: level.n(),
        big_n: level.big_n(),
        x0,
        p0,
        action_x,
        action_p,
        energy,
        hbar: params.hbar(),
    }
}
