//! Maass cusp forms on the modular surface.
//!
//! A cusp form with Laplace eigenvalue 1/4 + r^2 has the Fourier expansion
//! f(x+iy) = sum_{n>=1} a(n) sqrt(y) K_{ir}(2 pi n y) trig(2 pi n x), with
//! trig = cos for even forms (f(-x+iy) = f(x+iy)) and sin for odd ones.
//! Truncating at M and imposing automorphy f(z) = f(z*) at collocation
//! points z below the fundamental domain (z* their pullbacks) yields an
//! overdetermined linear system for a(2..M) under the normalization
//! a(1) = 1. Genuine eigenvalues r are located as the parameters where the
//! coefficients solved at two different heights agree; the signed gap in
//! a(2) between the two heights crosses zero transversally there, which the
//! search exploits for bracketing and secant refinement.

use crate::error::{Error, Result};
use crate::hypgeom::{reduce_to_fundamental_domain, HPoint};
use crate::specfun::bessel_k_imag_scaled;
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;

/// Reflection symmetry class of a form: even forms use cosine, odd use sine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Even,
    Odd,
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symmetry::Even => write!(f, "even"),
            Symmetry::Odd => write!(f, "odd"),
        }
    }
}

impl FromStr for Symmetry {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Symmetry::Even),
            "odd" => Ok(Symmetry::Odd),
            other => Err(Error::Domain(format!(
                "symmetry must be 'even' or 'odd', got '{other}'"
            ))),
        }
    }
}

/// Truncated Fourier coefficients of a form, normalized to a(1) = 1.
#[derive(Debug, Clone)]
pub struct FourierCoefficients {
    pub symmetry: Symmetry,
    pub r: f64,
    /// a[n] is the n-th coefficient; a[0] = 0 by cuspidality, a[1] = 1.
    a: Vec<f64>,
}

impl FourierCoefficients {
    /// Wraps a coefficient vector indexed from 0; requires a finite vector
    /// with a[0] = 0 and a[1] = 1 (to 1e-9, then snapped exactly).
    pub fn new(symmetry: Symmetry, r: f64, mut a: Vec<f64>) -> Result<Self> {
        if a.len() < 2 {
            return Err(Error::Domain("need at least the a(1) coefficient".into()));
        }
        if a.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("coefficients must be finite".into()));
        }
        if a[0].abs() > 1e-12 {
            return Err(Error::Domain("a(0) must vanish for a cusp form".into()));
        }
        if (a[1] - 1.0).abs() > 1e-9 {
            return Err(Error::Domain(format!(
                "normalization a(1) = 1 violated: a(1) = {}",
                a[1]
            )));
        }
        a[1] = 1.0;
        Ok(Self { symmetry, r, a })
    }

    /// Truncation order M: coefficients are available for n = 1..=M.
    pub fn truncation(&self) -> usize {
        self.a.len() - 1
    }

    /// a(n), with n past the truncation reading as 0.
    pub fn coeff(&self, n: usize) -> f64 {
        self.a.get(n).copied().unwrap_or(0.0)
    }

    /// The full coefficient slice, indexed by n (entry 0 is the constant
    /// term, identically 0).
    pub fn coeffs(&self) -> &[f64] {
        &self.a
    }
}

/// A located eigenvalue with its certificates.
#[derive(Debug, Clone)]
pub struct SpectralPoint {
    pub r: f64,
    /// Laplace eigenvalue 1/4 + r^2.
    pub lambda: f64,
    pub symmetry: Symmetry,
    pub coefficients: FourierCoefficients,
    /// Windowed disagreement of coefficients solved at two heights.
    pub residual_two_height: f64,
    /// Worst multiplicativity violation over products mn <= 30.
    pub residual_hecke: f64,
}

/// Default collocation heights. Both lie below sqrt(3)/2, so every
/// collocation point leaves the fundamental domain and pulls back
/// nontrivially; their difference drives the two-height consistency test.
pub const HEIGHT_A: f64 = 0.55;
pub const HEIGHT_B: f64 = 0.50;

/// Scan-stage residual gate: grid points near an eigenvalue sit on the
/// V-shaped residual well, so a bracket whose endpoints both show a large
/// residual is background and not worth refining. The well's slope is
/// form-dependent and grows roughly linearly with r (steeper coefficient
/// sensitivity at higher truncation), so the gate scales with r; the only
/// cost of letting junk through is a wasted refinement, which the final
/// residual gate rejects.
fn scan_gate(r: f64) -> f64 {
    1.0 + 0.12 * r
}

/// A refined candidate must push the two-height residual below this.
const ACCEPT_RESIDUAL: f64 = 1e-6;

/// Hecke multiplicativity gate for accepted points.
const ACCEPT_HECKE: f64 = 1e-5;

/// Truncation rule: K_{ir}(2 pi n y) is negligible once 2 pi n y exceeds r
/// by a safe multiple of the Airy transition width.
pub fn truncation_m(r: f64, y0: f64) -> usize {
    ((r + 12.0 * (r + 4.0).sqrt()) / (2.0 * std::f64::consts::PI * y0)).ceil() as usize
}

fn trig(symmetry: Symmetry, phase: f64) -> f64 {
    match symmetry {
        Symmetry::Even => phase.cos(),
        Symmetry::Odd => phase.sin(),
    }
}

/// Evaluates the truncated expansion at z, using the unscaled Bessel factor
/// (the e^{-pi r/2} magnitude is physical at fixed r). Terms past the decay
/// point contribute below 1e-18 relative and are skipped.
pub fn expansion_eval(c: &FourierCoefficients, z: HPoint) -> Result<f64> {
    if !(z.y > 0.0) || !z.x.is_finite() || !z.y.is_finite() {
        return Err(Error::Domain(format!(
            "expansion point must lie in the upper half-plane, got ({}, {})",
            z.x, z.y
        )));
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    let sqrt_y = z.y.sqrt();
    let mut acc = 0.0f64;
    for n in 1..=c.truncation() {
        let arg = two_pi * n as f64 * z.y;
        // Past the turning point the scaled kernel dies like e^{r pi/2 - arg}.
        if arg > c.r && arg - std::f64::consts::FRAC_PI_2 * c.r > 60.0 {
            break;
        }
        let a_n = c.coeff(n);
        if a_n == 0.0 {
            continue;
        }
        acc += a_n * sqrt_y * bessel_k_imag_scaled(c.r, arg)? * trig(c.symmetry, two_pi * n as f64 * z.x);
    }
    Ok(acc * (-std::f64::consts::FRAC_PI_2 * c.r).exp())
}

/// The collocation system at one height: rows are automorphy defects
/// f(z_j) - f(z_j*) expanded in the scaled basis, with the a(1) column
/// moved to the right-hand side.
pub struct CollocationSystem {
    /// (M+8) x (M-1) matrix of basis-defect columns for a(2..M).
    pub matrix: DMatrix<f64>,
    /// Negated a(1) column.
    pub rhs: DVector<f64>,
    /// Ratio of extreme singular values of the column-equilibrated matrix.
    pub condition_estimate: f64,
    /// Set when the condition estimate exceeds 1e12.
    pub ill_conditioned: bool,
    pub r: f64,
    pub y0: f64,
    pub symmetry: Symmetry,
    pub truncation: usize,
}

fn check_system_preconditions(r: f64, y0: f64, m: usize) -> Result<()> {
    let lowest_boundary = 3.0f64.sqrt() / 2.0;
    if !(y0 > 0.0 && y0 < lowest_boundary) {
        return Err(Error::Domain(format!(
            "collocation height must satisfy 0 < y0 < sqrt(3)/2, got {y0}"
        )));
    }
    if m < 1 {
        return Err(Error::Domain("truncation must be at least 1".into()));
    }
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("spectral parameter must be >= 0, got {r}")));
    }
    // Below the Bessel turning point the truncated basis cannot represent
    // the form at all.
    if 2.0 * std::f64::consts::PI * m as f64 * y0 < r {
        return Err(Error::Domain(format!(
            "truncation M = {m} is below the turning point at r = {r}, y0 = {y0}"
        )));
    }
    Ok(())
}

/// Assembles the raw (unequilibrated) collocation columns. Returns
/// (columns for n = 1..=M, each of length Q = M+8).
fn collocation_columns(
    r: f64,
    symmetry: Symmetry,
    y0: f64,
    m: usize,
) -> Result<Vec<Vec<f64>>> {
    let two_pi = 2.0 * std::f64::consts::PI;
    let q = m + 8;
    let sqrt_y0 = y0.sqrt();
    // The z-side Bessel factors do not depend on j; hoist them.
    let mut k_at_y0 = Vec::with_capacity(m + 1);
    k_at_y0.push(0.0);
    for n in 1..=m {
        k_at_y0.push(bessel_k_imag_scaled(r, two_pi * n as f64 * y0)?);
    }
    let mut cols = vec![vec![0.0f64; q]; m + 1];
    for j in 0..q {
        let x = (2 * j + 1) as f64 / (4 * q) as f64;
        let z = HPoint::new(x, y0);
        let (zs, _) = reduce_to_fundamental_domain(z)?;
        let sqrt_ys = zs.y.sqrt();
        for n in 1..=m {
            let nf = n as f64;
            let direct = sqrt_y0 * k_at_y0[n] * trig(symmetry, two_pi * nf * x);
            let pulled =
                sqrt_ys * bessel_k_imag_scaled(r, two_pi * nf * zs.y)? * trig(symmetry, two_pi * nf * zs.x);
            cols[n][j] = direct - pulled;
        }
    }
    Ok(cols)
}

/// Solves the two-sided system; returns (coefficients indexed from 0 with
/// a(1) = 1, condition estimate of the equilibrated matrix).
fn solve_at_height(r: f64, symmetry: Symmetry, y0: f64, m: usize) -> Result<(Vec<f64>, f64)> {
    check_system_preconditions(r, y0, m)?;
    if m == 1 {
        return Ok((vec![0.0, 1.0], 1.0));
    }
    let cols = collocation_columns(r, symmetry, y0, m)?;
    let q = m + 8;
    let mut scales = vec![0.0f64; m + 1];
    let mut flat = Vec::with_capacity(q * (m - 1));
    for n in 2..=m {
        let s = cols[n].iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        if s < 1e-300 {
            return Err(Error::SingularSystem(format!(
                "collocation column n = {n} vanished at r = {r}, y0 = {y0}"
            )));
        }
        scales[n] = s;
        flat.extend(cols[n].iter().map(|v| v / s));
    }
    let a = DMatrix::from_column_slice(q, m - 1, &flat);
    let b = DVector::from_iterator(q, cols[1].iter().map(|v| -v));
    let svd = a.svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd
        .singular_values
        .iter()
        .fold(f64::INFINITY, |acc, &v| acc.min(v));
    let cond = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    let sol = svd
        .solve(&b, smax * 1e-13)
        .map_err(|e| Error::SingularSystem(format!("least-squares solve failed: {e}")))?;
    let mut a_out = vec![0.0f64; m + 1];
    a_out[1] = 1.0;
    for n in 2..=m {
        a_out[n] = sol[n - 2] / scales[n];
    }
    Ok((a_out, cond))
}

/// Builds the collocation system at one height without solving it.
pub fn build_collocation_system(
    r: f64,
    symmetry: Symmetry,
    y0: f64,
    m: usize,
) -> Result<CollocationSystem> {
    check_system_preconditions(r, y0, m)?;
    let cols = collocation_columns(r, symmetry, y0, m)?;
    let q = m + 8;
    let width = m.saturating_sub(1);
    let mut flat = Vec::with_capacity(q * width);
    let mut equilibrated = Vec::with_capacity(q * width);
    for n in 2..=m {
        let s = cols[n]
            .iter()
            .fold(0.0f64, |acc, v| acc.max(v.abs()))
            .max(1e-300);
        flat.extend(cols[n].iter().copied());
        equilibrated.extend(cols[n].iter().map(|v| v / s));
    }
    let matrix = DMatrix::from_column_slice(q, width, &flat);
    let rhs = DVector::from_iterator(q, cols[1].iter().map(|v| -v));
    let condition_estimate = if width == 0 {
        1.0
    } else {
        let svd = DMatrix::from_column_slice(q, width, &equilibrated).svd(false, false);
        let smax = svd.singular_values.max();
        let smin = svd
            .singular_values
            .iter()
            .fold(f64::INFINITY, |acc, &v| acc.min(v));
        if smin > 0.0 {
            smax / smin
        } else {
            f64::INFINITY
        }
    };
    Ok(CollocationSystem {
        matrix,
        rhs,
        condition_estimate,
        ill_conditioned: condition_estimate > 1e12,
        r,
        y0,
        symmetry,
        truncation: m,
    })
}

/// Solves for the coefficients at one height.
pub fn solve_coefficients(
    r: f64,
    symmetry: Symmetry,
    y0: f64,
    m: usize,
) -> Result<FourierCoefficients> {
    let (a, _) = solve_at_height(r, symmetry, y0, m)?;
    FourierCoefficients::new(symmetry, r, a)
}

/// Upper end of the coefficient window used to compare the two heights:
/// only coefficients whose Bessel factor at the shallower height is still
/// comfortably above its decay regime are well determined off-eigenvalue,
/// and only those make the residual a clean V-shaped detector.
fn window_top(r: f64, m: usize, y_shallow: f64) -> usize {
    let well_determined =
        ((r + 2.0 * (r + 1.0).sqrt()) / (2.0 * std::f64::consts::PI * y_shallow)).floor() as usize;
    well_determined.max(3).min(8).min(m)
}

/// Two-height solve returning the windowed max-abs coefficient disagreement
/// together with the signed per-coefficient gaps a_high[n] - a_low[n] for
/// n = 2..=top. Every gap component crosses zero at a genuine eigenvalue,
/// but how steeply varies by orders of magnitude from form to form and
/// component to component, so detection must not be tied to any single
/// coefficient.
fn residual_and_gaps(
    r: f64,
    symmetry: Symmetry,
    m: usize,
    heights: (f64, f64),
) -> Result<(f64, Vec<f64>)> {
    let (a_high, _) = solve_at_height(r, symmetry, heights.0, m)?;
    let (a_low, _) = solve_at_height(r, symmetry, heights.1, m)?;
    let top = window_top(r, m, heights.0.max(heights.1));
    if top < 2 {
        return Err(Error::Domain(format!(
            "truncation M = {m} leaves no comparison window at r = {r}"
        )));
    }
    let gaps: Vec<f64> = (2..=top).map(|n| a_high[n] - a_low[n]).collect();
    let worst = gaps.iter().fold(0.0f64, |acc, g| acc.max(g.abs()));
    Ok((worst, gaps))
}

/// Two-height consistency residual at the default heights: near zero
/// exactly at cusp-form eigenvalues, O(1) elsewhere.
pub fn consistency_residual(r: f64, symmetry: Symmetry, m: usize) -> Result<f64> {
    residual_and_gaps(r, symmetry, m, (HEIGHT_A, HEIGHT_B)).map(|(res, _)| res)
}

/// Secant/bisection refinement of a coefficient-gap sign change inside
/// [r_lo, r_hi], at fixed truncation and heights. The detection component
/// is chosen per bracket: among the coefficients whose gap changes sign,
/// the steepest crossing wins. A single component's root is displaced from
/// the eigenvalue by (solver noise)/(crossing slope), and the a(2) gap can
/// cross two orders of magnitude flatter than a(3)'s for some forms, so a
/// fixed component would park the refinement outside the acceptance
/// residual. Errors if no component's gap straddles a sign change.
pub fn refine_eigenvalue(
    r_lo: f64,
    r_hi: f64,
    symmetry: Symmetry,
    m: usize,
    heights: (f64, f64),
) -> Result<f64> {
    let (_, gaps_lo) = residual_and_gaps(r_lo, symmetry, m, heights)?;
    let (_, gaps_hi) = residual_and_gaps(r_hi, symmetry, m, heights)?;
    let mut component: Option<usize> = None;
    let mut steepest = 0.0f64;
    for k in 0..gaps_lo.len().min(gaps_hi.len()) {
        let (lo, hi) = (gaps_lo[k], gaps_hi[k]);
        if lo == 0.0 || hi == 0.0 || lo.signum() != hi.signum() {
            let steep = (hi - lo).abs();
            if steep >= steepest {
                steepest = steep;
                component = Some(k);
            }
        }
    }
    let Some(k) = component else {
        return Err(Error::Convergence(format!(
            "no sign change of any coefficient gap in [{r_lo}, {r_hi}]"
        )));
    };
    let mut g_lo = gaps_lo[k];
    let mut g_hi = gaps_hi[k];
    if g_lo == 0.0 {
        return Ok(r_lo);
    }
    if g_hi == 0.0 {
        return Ok(r_hi);
    }
    let (mut lo, mut hi) = (r_lo, r_hi);
    for _ in 0..80 {
        // Secant proposal from the bracket endpoints, clipped to the
        // interior; fall back to bisection when it degenerates.
        let mut cand = hi - g_hi * (hi - lo) / (g_hi - g_lo);
        let width = hi - lo;
        if !cand.is_finite() || cand <= lo + 1e-3 * width || cand >= hi - 1e-3 * width {
            cand = 0.5 * (lo + hi);
        }
        let (_, gaps_cand) = residual_and_gaps(cand, symmetry, m, heights)?;
        let g_cand = gaps_cand.get(k).copied().unwrap_or(f64::NAN);
        if !g_cand.is_finite() {
            return Err(Error::Convergence(format!(
                "comparison window shrank below the detection component at r = {cand}"
            )));
        }
        if g_cand == 0.0 {
            return Ok(cand);
        }
        if g_cand.signum() == g_lo.signum() {
            lo = cand;
            g_lo = g_cand;
        } else {
            hi = cand;
            g_hi = g_cand;
        }
        if hi - lo < 1e-11 {
            break;
        }
    }
    Ok(if g_lo.abs() < g_hi.abs() { lo } else { hi })
}

/// Grid scan plus refinement over [r_lo, r_hi] for one symmetry class.
/// Accepted points carry coefficients solved at a height deep enough to
/// make every a(n) with n <= 34 honest, so downstream multiplicativity and
/// L-function work inherits full accuracy.
pub fn eigenvalue_search(
    r_lo: f64,
    r_hi: f64,
    symmetry: Symmetry,
    grid_step: f64,
) -> Result<Vec<SpectralPoint>> {
    if !(r_lo > 0.0 && r_hi > r_lo) || !r_lo.is_finite() || !r_hi.is_finite() {
        return Err(Error::Domain(format!(
            "need 0 < r_lo < r_hi, got [{r_lo}, {r_hi}]"
        )));
    }
    if !(grid_step > 0.0 && grid_step <= 0.05) {
        return Err(Error::Domain(format!(
            "grid step must lie in (0, 0.05], got {grid_step}"
        )));
    }
    let steps = ((r_hi - r_lo) / grid_step).ceil() as usize;
    let grid: Vec<f64> = (0..=steps)
        .map(|i| (r_lo + i as f64 * grid_step).min(r_hi))
        .collect();
    let evals: Vec<Option<(f64, Vec<f64>)>> = grid
        .par_iter()
        .map(|&r| {
            let m = truncation_m(r, HEIGHT_B);
            residual_and_gaps(r, symmetry, m, (HEIGHT_A, HEIGHT_B)).ok()
        })
        .collect();

    let mut points: Vec<SpectralPoint> = Vec::new();
    for i in 0..grid.len().saturating_sub(1) {
        let (Some((res_l, gaps_l)), Some((res_r, gaps_r))) = (&evals[i], &evals[i + 1]) else {
            continue;
        };
        let bracketed = gaps_l
            .iter()
            .zip(gaps_r)
            .any(|(l, r)| *l == 0.0 || *r == 0.0 || l.signum() != r.signum());
        if !bracketed || res_l.min(*res_r) > scan_gate(grid[i + 1]) {
            continue;
        }
        let mid = 0.5 * (grid[i] + grid[i + 1]);
        let m = truncation_m(mid, HEIGHT_B);
        let Ok(r_star) = refine_eigenvalue(grid[i], grid[i + 1], symmetry, m, (HEIGHT_A, HEIGHT_B))
        else {
            continue;
        };
        let Ok((residual, _)) = residual_and_gaps(r_star, symmetry, m, (HEIGHT_A, HEIGHT_B)) else {
            continue;
        };
        if residual > ACCEPT_RESIDUAL {
            continue;
        }
        if points.iter().any(|p| (p.r - r_star).abs() < 1e-8) {
            continue;
        }
        // Honest coefficients: resolve at a height deep enough that the
        // Bessel factors keep n <= 34 above their decay regime.
        let y_deep = HEIGHT_B.min(r_star / (2.0 * std::f64::consts::PI * 34.0));
        let m_deep = truncation_m(r_star, y_deep);
        let Ok(coefficients) = solve_coefficients(r_star, symmetry, y_deep, m_deep) else {
            continue;
        };
        let residual_hecke = hecke_residual_max(coefficients.coeffs(), 30);
        if residual_hecke > ACCEPT_HECKE {
            continue;
        }
        points.push(SpectralPoint {
            r: r_star,
            lambda: 0.25 + r_star * r_star,
            symmetry,
            coefficients,
            residual_two_height: residual,
            residual_hecke,
        });
    }
    points.sort_by(|p, q| p.r.partial_cmp(&q.r).unwrap());
    Ok(points)
}

/// Worst |a(m)a(n) - sum_{d | (m,n)} a(mn/d^2)| over 2 <= m <= n, mn <=
/// bound. Shared with the Hecke module's public per-pair variant.
pub(crate) fn hecke_residual_max(a: &[f64], bound: usize) -> f64 {
    let coeff = |n: usize| a.get(n).copied().unwrap_or(0.0);
    let mut worst = 0.0f64;
    let mut m = 2;
    while m * m <= bound {
        let mut n = m;
        while m * n <= bound {
            let mut rhs = 0.0;
            for d in 1..=m {
                if m % d == 0 && n % d == 0 {
                    rhs += coeff(m * n / (d * d));
                }
            }
            worst = worst.max((coeff(m) * coeff(n) - rhs).abs());
            n += 1;
        }
        m += 1;
    }
    worst
}
