//! Quadrature engine: grid rules, adaptive Simpson, Gauss-Legendre panels
//! and the oscillatory-integral machinery (half-period panel sums plus an
//! Euler-type weighted-average filter that annihilates the known panel
//! modes).

use crate::error::Error;
use crate::Result;
use std::sync::OnceLock;

/// Controls for the oscillatory and adaptive quadratures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSpec {
    /// Outer truncation of the correction integral.
    pub alpha_max: f64,
    /// Width of one oscillation panel; pi matches the Bessel half-period.
    pub panel_width: f64,
    /// Relative tolerance demanded of accelerated limits.
    pub rel_tol: f64,
    /// Absolute tolerance floor.
    pub abs_tol: f64,
    /// Tolerance of inner (non-oscillatory) adaptive quadratures.
    pub inner_tol: f64,
    /// Number of filter passes applied to the panel sums.
    pub filter_passes: usize,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec {
            alpha_max: 200.0,
            panel_width: std::f64::consts::PI,
            // the filter's error estimator is conservative by an order of
            // magnitude or more; observed accuracy is far better than this
            rel_tol: 2e-4,
            abs_tol: 1e-8,
            inner_tol: 1e-11,
            filter_passes: 10,
        }
    }
}

impl QuadSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha_max > 0.0) || !(self.panel_width > 0.0) {
            return Err(Error::Config {
                msg: format!(
                    "alpha_max and panel_width must be positive (got {}, {})",
                    self.alpha_max, self.panel_width
                ),
            });
        }
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) || !(self.inner_tol > 0.0) {
            return Err(Error::Config {
                msg: "tolerances must be positive".into(),
            });
        }
        Ok(())
    }

    /// Key with a total byte order, used to memoize results per spec.
    pub(crate) fn cache_key(&self) -> [u64; 6] {
        [
            self.alpha_max.to_bits(),
            self.panel_width.to_bits(),
            self.rel_tol.to_bits(),
            self.abs_tol.to_bits(),
            self.inner_tol.to_bits(),
            self.filter_passes as u64,
        ]
    }
}

/// Composite Simpson rule over tabulated values on a uniform grid.
///
/// Odd point counts use pure Simpson; even counts close the last cell with a
/// three-point (Simpson 3/8-free) end correction.
pub fn simpson_uniform(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    if n == 2 {
        return 0.5 * h * (values[0] + values[1]);
    }
    let odd_count = if n % 2 == 1 { n } else { n - 1 };
    let mut sum4 = 0.0;
    let mut sum2 = 0.0;
    for (i, &v) in values[1..odd_count - 1].iter().enumerate() {
        if i % 2 == 0 {
            sum4 += v;
        } else {
            sum2 += v;
        }
    }
    let mut total = h / 3.0 * (values[0] + values[odd_count - 1] + 4.0 * sum4 + 2.0 * sum2);
    if n % 2 == 0 {
        // trailing cell via the three-point right-edge formula
        total += h / 12.0 * (-values[n - 3] + 8.0 * values[n - 2] + 5.0 * values[n - 1]);
    }
    total
}

/// Adaptive Simpson with the classic 15-fold error heuristic. The sum of
/// accepted per-interval error estimates is reported on failure.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    op: &'static str,
) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let mut err_sum = 0.0f64;
    let v = adaptive_step(f, a, b, fa, fm, fb, whole, tol, 44, &mut err_sum);
    if err_sum > 50.0 * tol {
        return Err(Error::NoConvergence {
            op,
            achieved: err_sum,
            required: tol,
        });
    }
    Ok(v)
}

#[allow(clippy::too_many_arguments)]
fn adaptive_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    err_sum: &mut f64,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let err = (left + right - whole) / 15.0;
    if err.abs() <= tol || depth == 0 {
        *err_sum += err.abs();
        return left + right + err;
    }
    adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, err_sum)
        + adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, err_sum)
}

type GlTable = &'static (Vec<f64>, Vec<f64>);

/// Gauss-Legendre nodes and weights on [-1, 1], computed once per order by
/// Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(order: usize) -> GlTable {
    static TABLES: OnceLock<std::sync::Mutex<std::collections::HashMap<usize, GlTable>>> =
        OnceLock::new();
    let tables = TABLES.get_or_init(|| std::sync::Mutex::new(std::collections::HashMap::new()));
    let mut guard = tables.lock().expect("gauss_legendre table lock");
    if let Some(t) = guard.get(&order) {
        return t;
    }
    let computed: &'static (Vec<f64>, Vec<f64>) = Box::leak(Box::new(compute_gauss_legendre(order)));
    guard.insert(order, computed);
    computed
}

fn compute_gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess, then Newton on P_n
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                let (p2, d2) = legendre_and_derivative(n, x);
                dp = d2;
                x -= p2 / d2;
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Fixed-order Gauss-Legendre on [a, b].
pub fn gauss_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, order: usize) -> f64 {
    let (nodes, weights) = gauss_legendre(order);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = 0.0;
    for (&x, &w) in nodes.iter().zip(weights) {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Result of an accelerated oscillatory integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Accelerated {
    pub value: f64,
    /// Estimated truncation/acceleration error.
    pub error_estimate: f64,
    pub panels: usize,
}

/// Sum half-period panel integrals of an oscillatory integrand whose panel
/// sums carry modes `exp(i theta m)` with the given `cos(theta)` values, then
/// filter those modes out with repeated second-order weighted averages.
///
/// Each pass of the filter `(S[m] - 2 cos(theta) S[m+1] + S[m+2]) / (2 - 2 cos(theta))`
/// preserves the limit, annihilates the conjugate mode pair exactly, and
/// knocks one power off polynomially modulated amplitudes; at `cos(theta) = -1`
/// it reduces to the classical iterated-average (Euler) transform.
pub fn accelerate_panel_sums(
    panel_integrals: &[f64],
    mode_cosines: &[f64],
    passes: usize,
    op: &'static str,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Accelerated> {
    let mut sums = Vec::with_capacity(panel_integrals.len());
    let mut acc = 0.0;
    for &p in panel_integrals {
        acc += p;
        sums.push(acc);
    }

    // Distinct cosines only; aliased modes share a filter.
    let mut cosines: Vec<f64> = Vec::new();
    for &c in mode_cosines {
        if !cosines.iter().any(|&d| (d - c).abs() < 1e-12) {
            cosines.push(c);
        }
    }

    let needed = 2 * cosines.len() + 3;
    if sums.len() < needed {
        return Err(Error::NoConvergence {
            op,
            achieved: f64::INFINITY,
            required: abs_tol,
        });
    }
    for &c in &cosines {
        if 2.0 - 2.0 * c < 1e-6 {
            // mode too slow for the panel width; refuse rather than amplify noise
            return Err(Error::NoConvergence {
                op,
                achieved: f64::INFINITY,
                required: abs_tol,
            });
        }
    }

    // Each round cascades one pass of every mode filter. Filtering trades
    // mode residual against amplified rounding noise, so keep the round
    // whose tail is flattest rather than always the deepest one. The tail
    // diffs alone underestimate the slowly-varying truncation bias; the jump
    // from the previous round bounds it from above.
    let mut rounds: Vec<(f64, f64)> = Vec::with_capacity(passes + 1);
    for round in 0..=passes {
        if round > 0 {
            if sums.len() < needed {
                break;
            }
            for &c in &cosines {
                let denom = 2.0 - 2.0 * c;
                sums = sums
                    .windows(3)
                    .map(|w| (w[0] - 2.0 * c * w[1] + w[2]) / denom)
                    .collect();
            }
        } else if sums.len() < 3 {
            break;
        }
        let k = sums.len();
        let value = sums[k - 1];
        let tail = (value - sums[k - 2]).abs().max((sums[k - 2] - sums[k - 3]).abs());
        rounds.push((value, tail));
    }
    let best = (0..rounds.len())
        .min_by(|&a, &b| rounds[a].1.total_cmp(&rounds[b].1))
        .expect("at least the raw sums are inspected");
    let value = rounds[best].0;
    let error_estimate = if best > 0 {
        rounds[best].1.max((value - rounds[best - 1].0).abs())
    } else {
        rounds[best].1
    };
    if error_estimate > abs_tol.max(rel_tol * value.abs()) {
        return Err(Error::NoConvergence {
            op,
            achieved: error_estimate,
            required: abs_tol.max(rel_tol * value.abs()),
        });
    }
    Ok(Accelerated {
        value,
        error_estimate,
        panels: panel_integrals.len(),
    })
}
