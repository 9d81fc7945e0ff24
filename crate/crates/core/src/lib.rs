// Coefficient tables keep their full printed precision, and domain guards
// use `!(x > 0.0)` so NaN fails them.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

//! Core numerics for the classical limit of the quantum harmonic oscillator.
//!
//! The crate evaluates stationary-state probability densities at large
//! quantum number, their Fourier coefficients (characteristic functions),
//! the Bessel-function asymptotics of the scaled Laguerre form of those
//! coefficients, and the resulting classical arcsine density plus its
//! leading oscillatory correction. The `analysis` module quantifies the
//! convergence with coarse-graining, L1 distances, moments and power-law
//! fits; everything is deterministic and parallelism-safe.

pub mod analysis;
pub mod asymptotics;
pub mod densities;
pub mod error;
pub mod fourier;
pub mod oscillator;
pub mod quad;
pub mod special;

pub use analysis::{
    coarse_grain, convergence_sweep, energy_expectation, l1_distance, moment, power_law_fit,
    CoarseGrainSpec, ConvergenceReport, MomentResult, PowerLawFit, SweepFits, SweepSpec,
};
pub use asymptotics::{
    corrected_density, corrected_density_momentum, corrected_profile, correction_integral_i1,
    correction_prefactor, szego_iterate, szego_leading, CorrectionSeries, I1Value, SzegoArgs,
    SZEGO_U_MAX,
};
pub use densities::{
    classical_profile, cpd_momentum, cpd_position, default_grid, qpd_momentum, qpd_position,
    quantum_profile, uniform_grid, wide_grid, DensityKind, DensityProfile, Space,
};
pub use error::Error;
pub use fourier::{
    classical_fourier_coeff, classical_fourier_coeff_in, classical_fourier_profile,
    density_tail_mass, numeric_fourier_oracle, quantum_fourier_coeff, quantum_fourier_coeff_in,
    quantum_fourier_profile, szego_fourier_profile, FourierKind, FourierProfile, FourierSpace,
    ORACLE_TAIL_BOUND,
};
pub use oscillator::{energy_match, EnergyMatch, OscillatorParams, QuantumLevel};
pub use quad::QuadSpec;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
