//! Special functions: normalized oscillator wavefunctions, Hermite and
//! Laguerre polynomials, and Bessel J0/Y0/J1.
//!
//! The wavefunction path never forms `H_n^2 / (2^n n!)` explicitly — those
//! factors overflow near n = 150 — but runs the normalized three-term
//! recurrence on a mantissa/log-exponent pair so that densities stay finite
//! up to n = 1e6 and |xi| = 1e3.

mod bessel;

pub use bessel::{bessel_j0, bessel_j1, bessel_y0};
pub(crate) use bessel::y0_unchecked;

use crate::error::Error;
use crate::Result;
use std::f64::consts::PI;

/// How a [`SpecialFnResult`] relates to the quantity it reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleStatus {
    /// `value` is the quantity itself; `log_scale_exponent` is zero.
    Exact,
    /// The quantity is `value * exp(log_scale_exponent)`.
    Scaled,
    /// The quantity is below the smallest positive double and reported as zero.
    UnderflowFlushed,
}

/// A function value carried as mantissa times `exp(log_scale_exponent)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialFnResult {
    pub value: f64,
    pub log_scale_exponent: f64,
    pub status: ScaleStatus,
}

// Split of ln(2) used when folding a large log-scale back into a double:
// exp(r + k*ln2) = exp(r - k*LN2_LO) * 2^k with r reduced to [-ln2/2, ln2/2].
const LN2_HI: f64 = 6.93147180369123816490e-1;
const LN2_LO: f64 = 1.90821492927058770002e-10;

impl SpecialFnResult {
    fn exact(value: f64) -> Self {
        SpecialFnResult {
            value,
            log_scale_exponent: 0.0,
            status: ScaleStatus::Exact,
        }
    }

    /// Collapse to a plain double, flushing to (signed) zero on underflow.
    pub fn resolve(&self) -> f64 {
        match self.status {
            ScaleStatus::Exact => self.value,
            ScaleStatus::UnderflowFlushed => 0.0,
            ScaleStatus::Scaled => {
                let e = self.log_scale_exponent;
                let k = (e / std::f64::consts::LN_2).round();
                let r = (e - k * LN2_HI) - k * LN2_LO;
                // 2^k applied via exp2 keeps the reduction exact for |k| < 1023;
                // larger |k| saturates to 0/inf which is the honest answer.
                self.value * r.exp() * (k).exp2()
            }
        }
    }
}

/// Normalized harmonic-oscillator wavefunction `psi_n` at dimensionless `xi`,
/// with `psi_n = (sqrt(pi) 2^n n!)^(-1/2) H_n(xi) exp(-xi^2/2)` evaluated by
/// the stable recurrence
/// `psi_k = sqrt(2/k) xi psi_{k-1} - sqrt((k-1)/k) psi_{k-2}`.
pub fn oscillator_wavefunction(n: u32, xi: f64) -> f64 {
    oscillator_wavefunction_scaled(n, xi).resolve()
}

/// Scaled form of [`oscillator_wavefunction`] for callers that need the value
/// outside the plain double range.
pub fn oscillator_wavefunction_scaled(n: u32, xi: f64) -> SpecialFnResult {
    // psi_0 = pi^(-1/4) exp(-xi^2/2); keep the Gaussian in the log scale so
    // the recurrence mantissas stay O(1)..O(huge) without underflow at large xi.
    let log_scale = -0.5 * xi * xi - 0.25 * PI.ln();
    let mut prev = 1.0; // mantissa of psi_0
    if n == 0 {
        return finish_scaled(prev, log_scale);
    }
    let mut cur = std::f64::consts::SQRT_2 * xi; // mantissa of psi_1
    let mut log_extra = 0.0f64;
    const RESCALE_ABOVE: f64 = 1e150;
    const RESCALE_FACTOR: f64 = 1e-150;
    const RESCALE_LOG: f64 = 345.3877639491068; // ln(1e150)
    for k in 2..=n as u64 {
        let kf = k as f64;
        let next = (2.0 / kf).sqrt() * xi * cur - ((kf - 1.0) / kf).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_ABOVE || prev.abs() > RESCALE_ABOVE {
            cur *= RESCALE_FACTOR;
            prev *= RESCALE_FACTOR;
            log_extra += RESCALE_LOG;
        }
    }
    finish_scaled(cur, log_scale + log_extra)
}

fn finish_scaled(mantissa: f64, log_scale: f64) -> SpecialFnResult {
    if mantissa == 0.0 {
        return SpecialFnResult::exact(0.0);
    }
    let total = log_scale + mantissa.abs().ln();
    if total < -745.0 {
        return SpecialFnResult {
            value: mantissa,
            log_scale_exponent: log_scale,
            status: ScaleStatus::UnderflowFlushed,
        };
    }
    if log_scale == 0.0 {
        return SpecialFnResult::exact(mantissa);
    }
    SpecialFnResult {
        value: mantissa,
        log_scale_exponent: log_scale,
        status: ScaleStatus::Scaled,
    }
}

/// Physicists' Hermite polynomial `H_n(x)` via `H_{n+1} = 2x H_n - 2n H_{n-1}`.
///
/// Intended as a small-n reference path (n <= 30 or so); large-n work goes
/// through [`oscillator_wavefunction`]. Overflow is reported, not saturated.
pub fn hermite_phys(n: u32, x: f64) -> Result<f64> {
    let mut prev = 1.0f64;
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = 2.0 * x;
    for k in 1..n as u64 {
        let next = 2.0 * x * cur - 2.0 * (k as f64) * prev;
        prev = cur;
        cur = next;
    }
    if cur.is_finite() {
        Ok(cur)
    } else {
        Err(Error::Overflow {
            op: "hermite_phys",
            n,
            arg: x,
        })
    }
}

/// Laguerre polynomial `L_n(x)` for `x >= 0` via
/// `(k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}`.
pub fn laguerre(n: u32, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::domain(
            "laguerre",
            format!("argument must be non-negative, got {x}"),
        ));
    }
    Ok(laguerre_recurrence(n, x, 1.0))
}

/// Exponentially scaled Laguerre function `exp(-x/2) L_n(x)`.
///
/// The recurrence runs on the already-scaled quantity, so the result stays
/// representable where `exp(-x/2)` and `L_n(x)` separately over/underflow.
pub fn scaled_laguerre(n: u32, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::domain(
            "scaled_laguerre",
            format!("argument must be non-negative, got {x}"),
        ));
    }
    Ok(laguerre_recurrence(n, x, (-0.5 * x).exp()))
}

fn laguerre_recurrence(n: u32, x: f64, seed: f64) -> f64 {
    // seed multiplies every term of the recurrence uniformly, so seeding with
    // exp(-x/2) yields the scaled function with the identical float sequence.
    let mut prev = seed;
    if n == 0 {
        return prev;
    }
    let mut cur = (1.0 - x) * seed;
    for k in 1..n as u64 {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}
