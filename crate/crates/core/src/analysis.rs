//! Coarse-graining, distance metrics, moments and convergence sweeps — the
//! quantitative side of the classical limit.

use crate::asymptotics::{corrected_density, correction_integral_i1};
use crate::densities::{
    classical_profile, cpd_position, quantum_profile, uniform_grid, DensityKind, DensityProfile,
    Space,
};
use crate::error::Error;
use crate::fourier::density_tail_mass;
use crate::oscillator::{energy_match, EnergyMatch, OscillatorParams, QuantumLevel};
use crate::quad::{gauss_panel, simpson_uniform, QuadSpec};
use crate::special::{bessel_j0, scaled_laguerre};
use crate::Result;
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI};
use std::time::{Duration, Instant};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowShape {
    Rectangular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryRule {
    /// Truncate the window at the domain edge and renormalize its weight.
    Shrink,
}

/// Moving-average specification for [`coarse_grain`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoarseGrainSpec {
    pub window_width: f64,
    pub shape: WindowShape,
    pub boundary: BoundaryRule,
}

impl CoarseGrainSpec {
    pub fn new(window_width: f64) -> Self {
        CoarseGrainSpec {
            window_width,
            shape: WindowShape::Rectangular,
            boundary: BoundaryRule::Shrink,
        }
    }

    /// Default window `pi b / sqrt(2n+1)`: the geometric mean of the central
    /// fringe spacing `pi b/(2n+1)` and the system size `pi b`. The fringe
    /// spacing stretches by `1/sqrt(1 - (x/b)^2)` toward the turning points,
    /// so a window fixed at the central spacing leaves an n-independent
    /// fringe residual near the domain edges; the intermediate scale shrinks
    /// relative to the system while still covering every local fringe, which
    /// makes the coarse-grained density converge to the classical one.
    pub fn default_window(energy_match: &EnergyMatch, space: Space) -> Self {
        let bound = match space {
            Space::Position => energy_match.x0(),
            Space::Momentum => energy_match.p0(),
        };
        CoarseGrainSpec::new(PI * bound / (2.0 * energy_match.n() as f64 + 1.0).sqrt())
    }
}

/// Rectangular moving average of a profile; the window shrinks with
/// renormalized weight at the domain edges, so the total integral of the
/// in-scope densities (which vanish at the edges) is preserved.
pub fn coarse_grain(profile: &DensityProfile, spec: &CoarseGrainSpec) -> Result<DensityProfile> {
    let n = profile.grid.len();
    DensityProfile::check_grid(&profile.grid)?;
    let h = profile.spacing();
    // index-based window needs a uniform grid
    let uniform = profile
        .grid
        .windows(2)
        .all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h);
    if !uniform {
        return Err(Error::GridMismatch {
            msg: "coarse_grain requires a uniform grid".into(),
        });
    }
    if spec.window_width <= h {
        return Err(Error::WindowTooNarrow {
            window: spec.window_width,
            spacing: h,
        });
    }
    let half = ((0.5 * spec.window_width / h).round() as usize).max(1);
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(0.0);
    let mut acc = 0.0;
    for &v in &profile.values {
        acc += v;
        prefix.push(acc);
    }
    let values: Vec<f64> = (0..n)
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half).min(n - 1);
            (prefix[hi + 1] - prefix[lo]) / (hi + 1 - lo) as f64
        })
        .collect();
    Ok(DensityProfile {
        values,
        grid: profile.grid.clone(),
        ..profile.clone()
    })
}

/// `Int_domain |a - b|` by the trapezoid rule on the shared grid.
pub fn l1_distance(a: &DensityProfile, b: &DensityProfile, domain: (f64, f64)) -> Result<f64> {
    if a.grid.len() != b.grid.len() {
        return Err(Error::GridMismatch {
            msg: format!("lengths {} vs {}", a.grid.len(), b.grid.len()),
        });
    }
    let scale = a.grid.last().unwrap().abs().max(1.0);
    if a.grid
        .iter()
        .zip(&b.grid)
        .any(|(&ga, &gb)| (ga - gb).abs() > 1e-12 * scale)
    {
        return Err(Error::GridMismatch {
            msg: "profiles sampled on different grids".into(),
        });
    }
    let (lo, hi) = domain;
    let mut acc = 0.0;
    for i in 0..a.grid.len() - 1 {
        let (x0, x1) = (a.grid[i], a.grid[i + 1]);
        if x1 < lo || x0 > hi {
            continue;
        }
        let d0 = (a.values[i] - b.values[i]).abs();
        let d1 = (a.values[i + 1] - b.values[i + 1]).abs();
        acc += 0.5 * (d0 + d1) * (x1 - x0);
    }
    Ok(acc)
}

/// A moment value together with the estimated mass the grid truncation left
/// out; callers should warn when the latter exceeds ~1e-9.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentResult {
    pub value: f64,
    pub tail_mass: f64,
}

/// `Int v^order rho(v) dv`. Sampled (quantum/corrected) profiles integrate
/// with composite Simpson on their grid; classical profiles use the exact
/// `v = b sin(theta)` substitution. Odd orders are permitted so parity can
/// be checked; they vanish for every density in scope.
pub fn moment(profile: &DensityProfile, order: u32) -> Result<MomentResult> {
    match profile.kind {
        DensityKind::Classical => {
            let m = profile.energy_match.as_ref().ok_or_else(|| {
                Error::domain("moment", "classical profile lacks its energy match")
            })?;
            let bound = match profile.space {
                Space::Position => m.x0(),
                Space::Momentum => m.p0(),
            };
            // Int v^k rho dv = (b^k / pi) Int sin^k(theta) d theta
            let integral = gauss_panel(
                &|theta: f64| theta.sin().powi(order as i32),
                -FRAC_PI_2,
                FRAC_PI_2,
                48,
            ) / PI;
            Ok(MomentResult {
                value: bound.powi(order as i32) * integral,
                tail_mass: 0.0,
            })
        }
        _ => {
            let h = profile.spacing();
            let weighted: Vec<f64> = profile
                .grid
                .iter()
                .zip(&profile.values)
                .map(|(&x, &v)| x.powi(order as i32) * v)
                .collect();
            let value = simpson_uniform(&weighted, h);
            let edge = profile.grid.last().unwrap().abs().powi(order as i32);
            Ok(MomentResult {
                value,
                tail_mass: density_tail_mass(profile) * edge,
            })
        }
    }
}

/// `<H> = (m omega^2 <x^2> + <p^2>/m) / 2` assembled from the two
/// second moments; the densities are the only objects in play, so the
/// energy is computed at density level rather than through operators.
pub fn energy_expectation(params: &OscillatorParams, x2: f64, p2: f64) -> f64 {
    0.5 * (params.mass() * params.omega().powi(2) * x2 + p2 / params.mass())
}

/// Controls for [`convergence_sweep`].
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    /// Dimensionless probes `s = p x0 / hbar` for the Fourier residual.
    pub s_values: Vec<f64>,
    /// Ratio `x/x0` at which the correction magnitude is sampled.
    pub correction_ratio: f64,
    /// L1 domain as a fraction of the classical bound.
    pub l1_domain_fraction: f64,
    /// Minimum number of grid points per profile; scaled up with n so the
    /// fringes stay resolved.
    pub min_points: usize,
    pub quad: QuadSpec,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            s_values: vec![1.0, 2.0, 5.0],
            correction_ratio: 0.3,
            l1_domain_fraction: 0.9,
            min_points: 4097,
            quad: QuadSpec::default(),
        }
    }
}

/// Power-law fit `y = amplitude * (2n+1)^exponent` by least squares in
/// log-log coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub exponent: f64,
    pub amplitude: f64,
}

pub fn power_law_fit(two_n_plus_1: &[f64], ys: &[f64]) -> Option<PowerLawFit> {
    if two_n_plus_1.len() != ys.len() || two_n_plus_1.len() < 2 {
        return None;
    }
    if ys.iter().any(|&y| y <= 0.0) {
        return None;
    }
    let lx: Vec<f64> = two_n_plus_1.iter().map(|&x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|&y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|&x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(&x, &y)| (x - mx) * (y - my)).sum();
    let exponent = sxy / sxx;
    Some(PowerLawFit {
        exponent,
        amplitude: (my - exponent * mx).exp(),
    })
}

/// Fitted exponents of the sweep columns, when a fit is defined.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SweepFits {
    pub l1_position: Option<PowerLawFit>,
    pub l1_momentum: Option<PowerLawFit>,
    pub fourier_residual: Option<PowerLawFit>,
    pub correction_magnitude: Option<PowerLawFit>,
}

/// One row per quantum number: coarse-grained L1 distances to the classical
/// density in both spaces, the worst Fourier-coefficient residual against
/// `J0`, and the relative magnitude of the k = 1 correction term.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub n_values: Vec<u32>,
    pub l1_position: Vec<f64>,
    pub l1_momentum: Vec<f64>,
    pub fourier_residual: Vec<f64>,
    pub correction_magnitude: Vec<f64>,
    pub runtimes: Vec<Duration>,
    pub fits: SweepFits,
}

/// Run the full diagnostic for every level in `n_list` (ascending) and fit
/// power laws in `2n+1` to each column. Rows are independent and evaluated
/// in parallel; the report preserves the input order and its numeric
/// columns are reproducible bit for bit.
pub fn convergence_sweep(
    params: &OscillatorParams,
    n_list: &[u32],
    spec: &SweepSpec,
) -> Result<ConvergenceReport> {
    if n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config {
            msg: "n_list must be strictly ascending".into(),
        });
    }
    spec.quad.validate()?;
    // the correction integral is n-independent; evaluate (and memoize) it once
    correction_integral_i1(spec.correction_ratio, &spec.quad)?;

    let rows: Result<Vec<SweepRow>> = n_list
        .par_iter()
        .map(|&n| sweep_row(params, n, spec))
        .collect();
    let rows = rows?;

    let two_n_plus_1: Vec<f64> = n_list.iter().map(|&n| 2.0 * n as f64 + 1.0).collect();
    let column = |f: fn(&SweepRow) -> f64| -> Vec<f64> { rows.iter().map(f).collect() };
    let l1_position = column(|r| r.l1_position);
    let l1_momentum = column(|r| r.l1_momentum);
    let fourier_residual = column(|r| r.fourier_residual);
    let correction_magnitude = column(|r| r.correction_magnitude);
    let fits = SweepFits {
        l1_position: power_law_fit(&two_n_plus_1, &l1_position),
        l1_momentum: power_law_fit(&two_n_plus_1, &l1_momentum),
        fourier_residual: power_law_fit(&two_n_plus_1, &fourier_residual),
        correction_magnitude: power_law_fit(&two_n_plus_1, &correction_magnitude),
    };
    Ok(ConvergenceReport {
        n_values: n_list.to_vec(),
        l1_position,
        l1_momentum,
        fourier_residual,
        correction_magnitude,
        runtimes: rows.iter().map(|r| r.runtime).collect(),
        fits,
    })
}

struct SweepRow {
    l1_position: f64,
    l1_momentum: f64,
    fourier_residual: f64,
    correction_magnitude: f64,
    runtime: Duration,
}

fn sweep_row(params: &OscillatorParams, n: u32, spec: &SweepSpec) -> Result<SweepRow> {
    let start = Instant::now();
    let level = QuantumLevel(n);
    let m = energy_match(params, level);

    let l1_position = coarse_grained_l1(params, &m, level, Space::Position, spec)?;
    let l1_momentum = coarse_grained_l1(params, &m, level, Space::Momentum, spec)?;

    let big_n = level.big_n();
    let fourier_residual = spec
        .s_values
        .iter()
        .map(|&s| {
            let f = scaled_laguerre(n, s * s / (4.0 * big_n)).expect("square argument");
            (f - bessel_j0(s)).abs()
        })
        .fold(0.0f64, f64::max);

    let x = spec.correction_ratio * m.x0();
    let classical = cpd_position(&m, x)?;
    let corrected = corrected_density(&m, x, 1, &spec.quad)?;
    let correction_magnitude = ((corrected - classical) / classical).abs();

    Ok(SweepRow {
        l1_position,
        l1_momentum,
        fourier_residual,
        correction_magnitude,
        runtime: start.elapsed(),
    })
}

fn coarse_grained_l1(
    params: &OscillatorParams,
    m: &EnergyMatch,
    level: QuantumLevel,
    space: Space,
    spec: &SweepSpec,
) -> Result<f64> {
    let bound = match space {
        Space::Position => m.x0(),
        Space::Momentum => m.p0(),
    };
    // resolve the fringes: ~32 samples per oscillation period
    let points = spec.min_points.max(32 * (2 * level.n() as usize + 1) + 1);
    let grid = uniform_grid(-1.2 * bound, 1.2 * bound, points);
    let quantum = quantum_profile(params, level, space, grid.clone())?;
    let classical = classical_profile(params, m, space, grid)?;
    let window = CoarseGrainSpec::default_window(m, space);
    let smoothed = coarse_grain(&quantum, &window)?;
    let d = spec.l1_domain_fraction * bound;
    l1_distance(&smoothed, &classical, (-d, d))
}
