//! Quadrature utilities shared by all modules.
//!
//! Two workhorses: fixed-order Gauss-Legendre panels (for smooth integrands
//! whose scale is known) and a globally adaptive bisection scheme that
//! estimates panel error by comparing 15-point and 31-point Gauss rules.
//! Nodes are computed once by Newton iteration on the Legendre polynomials
//! and cached; everything downstream is a pure function.

use num_complex::Complex64;
use once_cell::sync::Lazy;

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on P_n with the usual cos-theta initial guesses.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Initial guess: Chebyshev-like angle.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            // Evaluate P_n and P_n' by the three-term recurrence.
            let (mut p0, mut p1) = (1.0f64, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (mut p0, mut p1) = (1.0f64, x);
        for k in 2..=n {
            let kf = k as f64;
            let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

static GL15: Lazy<(Vec<f64>, Vec<f64>)> = Lazy::new(|| gauss_legendre(15));
static GL31: Lazy<(Vec<f64>, Vec<f64>)> = Lazy::new(|| gauss_legendre(31));
static GL64: Lazy<(Vec<f64>, Vec<f64>)> = Lazy::new(|| gauss_legendre(64));

/// Fixed 64-point Gauss-Legendre estimate of the integral over [a, b].
pub fn gl64<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    let (xs, ws) = (&GL64.0, &GL64.1);
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    let mut s = 0.0;
    for (x, w) in xs.iter().zip(ws) {
        s += w * f(mid + half * x);
    }
    s * half
}

fn panel_pair_real<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    let coarse: f64 = GL15
        .0
        .iter()
        .zip(&GL15.1)
        .map(|(x, w)| w * f(mid + half * x))
        .sum();
    let fine: f64 = GL31
        .0
        .iter()
        .zip(&GL31.1)
        .map(|(x, w)| w * f(mid + half * x))
        .sum();
    (fine * half, (fine - coarse).abs() * half)
}

fn panel_pair_complex<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    let mut coarse = Complex64::new(0.0, 0.0);
    for (x, w) in GL15.0.iter().zip(&GL15.1) {
        coarse += w * f(mid + half * x);
    }
    let mut fine = Complex64::new(0.0, 0.0);
    for (x, w) in GL31.0.iter().zip(&GL31.1) {
        fine += w * f(mid + half * x);
    }
    (fine * half, (fine - coarse).norm() * half)
}

/// Result of an adaptive integration: value and an error estimate summed
/// from the per-panel rule differences.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T> {
    /// Integral estimate.
    pub value: T,
    /// Accumulated error estimate (coarse-vs-fine rule differences).
    pub error: f64,
}

/// Per-panel relative noise floor: once the two rules agree to this many
/// digits of the panel value, the difference measures evaluation roundoff,
/// not quadrature error, and further splitting cannot reduce it.
const PANEL_NOISE_FLOOR: f64 = 1e-13;

/// Globally adaptive integration of a real integrand over [a, b].
///
/// Panels are split until the per-panel estimate is below `tol` scaled by
/// the panel's share of the interval, or below the relative noise floor of
/// the panel value, down to a minimum width of `min_width` (spiky but
/// integrable features stop subdividing there and surface in the reported
/// error instead of looping forever).
pub fn adaptive_real<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64, min_width: f64) -> QuadResult<f64> {
    let mut stack = vec![(a, b)];
    let mut value = 0.0;
    let mut error = 0.0;
    let span = (b - a).abs().max(1e-300);
    while let Some((lo, hi)) = stack.pop() {
        let (v, e) = panel_pair_real(&f, lo, hi);
        let share = tol * ((hi - lo).abs() / span).max(1e-6);
        if e <= share || e <= PANEL_NOISE_FLOOR * v.abs() || (hi - lo).abs() <= min_width {
            value += v;
            error += e;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid));
            stack.push((mid, hi));
        }
    }
    QuadResult { value, error }
}

/// Globally adaptive integration of a complex integrand over [a, b].
pub fn adaptive_complex<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    min_width: f64,
) -> QuadResult<Complex64> {
    let mut stack = vec![(a, b)];
    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    let span = (b - a).abs().max(1e-300);
    while let Some((lo, hi)) = stack.pop() {
        let (v, e) = panel_pair_complex(&f, lo, hi);
        let share = tol * ((hi - lo).abs() / span).max(1e-6);
        if e <= share || e <= PANEL_NOISE_FLOOR * v.norm() || (hi - lo).abs() <= min_width {
            value += v;
            error += e;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid));
            stack.push((mid, hi));
        }
    }
    QuadResult { value, error }
}

/// Integral of a decaying real integrand over [a, +inf): adaptive panels of
/// geometrically growing width, stopping once a panel contributes less than
/// `tol` in absolute value twice in a row.
pub fn adaptive_to_infinity<F: Fn(f64) -> f64>(f: F, a: f64, tol: f64) -> QuadResult<f64> {
    let mut lo = a;
    let mut width = 1.0f64;
    let mut value = 0.0;
    let mut error = 0.0;
    let mut quiet = 0;
    for _ in 0..200 {
        let hi = lo + width;
        let part = adaptive_real(&f, lo, hi, tol, 1e-8);
        value += part.value;
        error += part.error;
        if part.value.abs() < tol {
            quiet += 1;
            if quiet >= 2 {
                break;
            }
        } else {
            quiet = 0;
        }
        lo = hi;
        width *= 1.6;
    }
    QuadResult { value, error }
}
