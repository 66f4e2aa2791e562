//! The continuous spectrum of the modular surface: Eisenstein series, the
//! scattering determinant, and the winding number.
//!
//! For the full modular group the scattering determinant is the explicit
//! ratio phi(s) = sqrt(pi) Gamma(s-1/2) zeta(2s-1) / (Gamma(s) zeta(2s)).
//! On the critical line s = 1/2 + ir it is unimodular and its logarithmic
//! derivative is real; the winding number
//! M(lambda) = -(1/4pi) int_{-lambda}^{lambda} phi'/phi(1/2+ir) dr
//! counts the continuous spectrum alongside the discrete counting function
//! N(lambda) in the Weyl law. The Eisenstein series E(z,s), summed here
//! directly over coprime pairs, ties phi to an independent lattice
//! computation through its constant term y^s + phi(s) y^{1-s}.

use crate::error::{Error, Result};
use crate::hypgeom::HPoint;
use crate::quad::adaptive_real;
use crate::specfun::{digamma, ln_gamma, z_smooth, z_smooth_deriv, zeta, zeta_log_derivative};
use num_complex::Complex64;

/// phi and its logarithmic derivative at one point.
#[derive(Debug, Clone, Copy)]
pub struct ScatteringValue {
    pub s: Complex64,
    pub phi: Complex64,
    /// phi'/phi at s.
    pub log_deriv: Complex64,
}

/// One winding-number evaluation.
#[derive(Debug, Clone, Copy)]
pub struct WindingRecord {
    pub lambda: f64,
    /// The winding number M(lambda).
    pub m: f64,
    /// Accumulated quadrature error estimate (panel rule differences).
    pub quadrature_error: f64,
}

/// Quadrature controls for the winding integral.
#[derive(Debug, Clone, Copy)]
pub struct WindingQuadSpec {
    /// Target for the accumulated panel error estimate.
    pub tol: f64,
    /// Panels stop subdividing at this width; unresolved structure is
    /// surfaced in the reported error instead.
    pub min_panel_width: f64,
}

impl Default for WindingQuadSpec {
    fn default() -> Self {
        WindingQuadSpec {
            tol: 1e-9,
            min_panel_width: 1e-4,
        }
    }
}

/// A truncated Eisenstein lattice sum and its tail estimate.
#[derive(Debug, Clone, Copy)]
pub struct EisensteinValue {
    pub value: Complex64,
    /// Bound on the dropped coprime pairs beyond the cutoff, from comparing
    /// with the integral of the quadratic form raised to -Re s.
    pub tail_estimate: f64,
}

fn near_nonpositive_integer(z: Complex64) -> bool {
    z.im.abs() < 1e-12 && z.re < 0.5 && (z.re - z.re.round()).abs() < 1e-12 && z.re.round() <= 0.0
}

/// The scattering determinant phi(s) = sqrt(pi) Gamma(s-1/2) zeta(2s-1) /
/// (Gamma(s) zeta(2s)), assembled in the log-Gamma domain.
///
/// The removable point s = 1/2 and the genuine poles (s = 1 from
/// zeta(2s-1), nonpositive half-integers from Gamma(s-1/2), zeros of
/// zeta(2s)) are reported as pole errors; use `phi_at_half` for the s = 1/2
/// limit.
pub fn phi_gamma1(s: Complex64) -> Result<Complex64> {
    let w = s - 0.5;
    if w.norm() < 1e-12 {
        return Err(Error::Pole(
            "s = 1/2 is removable; use phi_at_half()".into(),
        ));
    }
    if near_nonpositive_integer(w) {
        return Err(Error::Pole(format!("Gamma(s - 1/2) pole at s = {s}")));
    }
    if (s - 1.0).norm() < 1e-12 {
        return Err(Error::Pole("zeta(2s - 1) pole at s = 1".into()));
    }
    if near_nonpositive_integer(s) {
        // Gamma(s) pole in the denominator: phi has a zero there, but the
        // factor ratio degenerates; report rather than guess.
        return Err(Error::Pole(format!("Gamma(s) pole at s = {s}")));
    }
    let zeta_2s = zeta(2.0 * s)?;
    if zeta_2s.norm() < 1e-10 {
        return Err(Error::Pole(format!("zero of zeta(2s) at s = {s}")));
    }
    let zeta_2s1 = zeta(2.0 * s - 1.0)?;
    let ln_ratio = ln_gamma(w) - ln_gamma(s);
    Ok(std::f64::consts::PI.sqrt() * ln_ratio.exp() * zeta_2s1 / zeta_2s)
}

/// The limit of phi(s) as s -> 1/2: the Gamma(s-1/2) pole cancels the
/// zeta(2s) pole, leaving 2 sqrt(pi) Gamma(1) zeta(0) / (Gamma(1/2) Z(0))
/// with Z(u) = u zeta(1+u) the smoothed zeta. The composition evaluates to
/// -1 up to the accuracy of the constituent functions.
pub fn phi_at_half() -> f64 {
    let zeta_zero = zeta(Complex64::new(0.0, 0.0)).expect("zeta(0) is regular");
    let gamma_half = ln_gamma(Complex64::new(0.5, 0.0)).exp();
    let z0 = z_smooth(Complex64::new(0.0, 0.0));
    (2.0 * std::f64::consts::PI.sqrt() * zeta_zero / (gamma_half * z0)).re
}

/// phi'/phi(s) = psi(s-1/2) - psi(s) + 2 zeta'/zeta(2s-1) - 2 zeta'/zeta(2s)
/// away from the critical line's special point set.
pub fn phi_log_derivative(s: Complex64) -> Result<Complex64> {
    let w = s - 0.5;
    if w.norm() < 1e-10 || near_nonpositive_integer(w) || near_nonpositive_integer(s) {
        return Err(Error::Pole(format!("phi'/phi singular factor at s = {s}")));
    }
    Ok(digamma(w)? - digamma(s)? + 2.0 * zeta_log_derivative(2.0 * s - 1.0)?
        - 2.0 * zeta_log_derivative(2.0 * s)?)
}

/// phi and phi'/phi bundled at one point.
pub fn scattering_at(s: Complex64) -> Result<ScatteringValue> {
    Ok(ScatteringValue {
        s,
        phi: phi_gamma1(s)?,
        log_deriv: phi_log_derivative(s)?,
    })
}

/// phi'/phi(1/2 + ir), which is real on the critical line (phi is
/// unimodular there). Even in r.
///
/// For small r the digamma pole at ir and the zeta(1+2ir) pole cancel; that
/// branch rewrites the combination through the smoothed zeta
/// Z(u) = u zeta(1+u), which is analytic at u = 0:
/// psi(1+ir) - psi(1/2+ir) + 2 zeta'/zeta(2ir) - 2 Z'/Z(2ir).
/// The real part of the standard form is itself stable down to tiny r (the
/// 1/r blowups of psi(ir) and zeta'/zeta(1+2ir) are purely imaginary), so
/// the smoothed branch only needs to cover r < 0.05, where the Stieltjes
/// series is accurate to ~1e-12.
pub fn phi_log_derivative_line(r: f64) -> Result<f64> {
    if !r.is_finite() {
        return Err(Error::Domain(format!("spectral parameter must be finite, got {r}")));
    }
    let r = r.abs();
    let ir = Complex64::new(0.0, r);
    let value = if r < 0.05 {
        let u = 2.0 * ir;
        digamma(1.0 + ir)? - digamma(0.5 + ir)? + 2.0 * zeta_log_derivative(u)?
            - 2.0 * z_smooth_deriv(u) / z_smooth(u)
    } else {
        digamma(ir)? - digamma(0.5 + ir)? + 2.0 * zeta_log_derivative(u_line(r))?
            - 2.0 * zeta_log_derivative(1.0 + u_line(r))?
    };
    Ok(value.re)
}

fn u_line(r: f64) -> Complex64 {
    Complex64::new(0.0, 2.0 * r)
}

/// Winding number with default quadrature controls.
pub fn winding_number(lambda: f64) -> Result<WindingRecord> {
    winding_number_with(lambda, &WindingQuadSpec::default())
}

/// M(lambda) = -(1/2pi) int_0^lambda phi'/phi(1/2+ir) dr (the symmetric
/// integral folded by evenness), by adaptive panel quadrature.
pub fn winding_number_with(lambda: f64, spec: &WindingQuadSpec) -> Result<WindingRecord> {
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::Domain(format!(
            "winding number needs lambda >= 0, got {lambda}"
        )));
    }
    if lambda == 0.0 {
        return Ok(WindingRecord {
            lambda,
            m: 0.0,
            quadrature_error: 0.0,
        });
    }
    let result = adaptive_real(
        |r| phi_log_derivative_line(r).unwrap_or(f64::NAN),
        0.0,
        lambda,
        spec.tol,
        spec.min_panel_width,
    );
    if !result.value.is_finite() {
        return Err(Error::Convergence(format!(
            "winding integrand failed inside [0, {lambda}]"
        )));
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    Ok(WindingRecord {
        lambda,
        m: -result.value / two_pi,
        quadrature_error: result.error / two_pi,
    })
}

/// Direct coprime lattice sum E(z,s) = (1/2) sum_{gcd(m,n)=1} y^s/|mz+n|^{2s}
/// over max(|m|,|n|) <= cutoff, folded over the (m,n) ~ (-m,-n) symmetry:
/// the representatives are (0,1) and m >= 1 with any coprime n (including
/// (1,0)). The dropped tail is bounded through the smallest eigenvalue of
/// the quadratic form |mz+n|^2.
pub fn eisenstein_eval(z: &HPoint, s: Complex64, cutoff: usize) -> Result<EisensteinValue> {
    if !(z.y > 0.0) {
        return Err(Error::Domain(format!(
            "Eisenstein series needs Im z > 0, got {}",
            z.y
        )));
    }
    if s.re <= 1.0 {
        return Err(Error::Convergence(format!(
            "Eisenstein lattice sum diverges for Re s <= 1, got {}",
            s.re
        )));
    }
    if cutoff < 1 {
        return Err(Error::Domain("cutoff must be at least 1".into()));
    }
    let ln_y = z.y.ln();
    // (0, 1) representative: y^s / |0·z + 1|^{2s} = y^s.
    let mut value = (s * ln_y).exp();
    for m in 1..=cutoff {
        for n in -(cutoff as i64)..=(cutoff as i64) {
            if gcd(m as u64, n.unsigned_abs()) != 1 {
                continue;
            }
            let re = m as f64 * z.x + n as f64;
            let im = m as f64 * z.y;
            let norm2 = re * re + im * im;
            value += (s * ln_y - s * norm2.ln()).exp();
        }
    }
    // |mz+n|^2 = (m,n) Q (m,n)^T with Q = [[x^2+y^2, x], [x, 1]]; the tail
    // over m^2+n^2 > cutoff^2 is below the integral of lambda_min^{-sigma}
    // times the half-plane measure.
    let sigma = s.re;
    let tr = z.x * z.x + z.y * z.y + 1.0;
    let lambda_min = 0.5 * (tr - (tr * tr - 4.0 * z.y * z.y).sqrt());
    let tail_estimate = std::f64::consts::PI * z.y.powf(sigma) * lambda_min.powf(-sigma)
        * (cutoff as f64).powf(2.0 - 2.0 * sigma)
        / (2.0 * sigma - 2.0);
    Ok(EisensteinValue {
        value,
        tail_estimate,
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    // gcd(m, 0) = m, so (1, 0) is the unique coprime pair with n = 0.
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
