//! Upper half-plane model and the modular group action: Mobius maps,
//! reduction to the standard fundamental domain |Re z| <= 1/2, |z| >= 1,
//! and geodesic lengths of hyperbolic conjugacy classes.

use crate::error::{Error, Result};

/// A point x + iy of the upper half-plane (hyperbolic metric ds^2 =
/// (dx^2 + dy^2)/y^2). The y > 0 invariant is maintained by every operation
/// in this module; constructing a point with y <= 0 is caught where it
/// matters (reduction, evaluation).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HPoint {
    pub x: f64,
    pub y: f64,
}

impl HPoint {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

/// An integer matrix (a b; c d) with ad - bc = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnimodularMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl UnimodularMatrix {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a * d - b * c != 1 {
            return Err(Error::Domain(format!(
                "determinant of ({a}, {b}; {c}, {d}) is {}, need 1",
                a * d - b * c
            )));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn identity() -> Self {
        Self { a: 1, b: 0, c: 0, d: 1 }
    }

    /// Matrix product self * other (so the composed Mobius map applies
    /// `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }
}

/// The fractional linear action z -> (az+b)/(cz+d). The imaginary part maps
/// to y/|cz+d|^2, evaluated in that closed form so positivity is exact.
pub fn mobius_act(g: &UnimodularMatrix, z: HPoint) -> HPoint {
    let (a, b, c, d) = (g.a as f64, g.b as f64, g.c as f64, g.d as f64);
    let den_re = c * z.x + d;
    let den_im = c * z.y;
    let den2 = den_re * den_re + den_im * den_im;
    let num_re = a * z.x + b;
    let num_im = a * z.y;
    HPoint {
        x: (num_re * den_re + num_im * den_im) / den2,
        y: z.y / den2,
    }
}

const REDUCE_ITERATION_LIMIT: usize = 20_000;

/// Width of the boundary band around the unit circle. Points this close to
/// the circle are treated as lying on it: the loop applies at most one
/// convention inversion there and exits, rather than re-testing a strict
/// threshold that rounding noise can straddle forever (Hecke coset points
/// land on rational circle points such as (7/25, 24/25) up to ulps).
const CIRCLE_BAND: f64 = 1e-13;

/// Reduces z into the standard fundamental domain of the modular group and
/// returns the reduced point together with the group element that maps z to
/// it. Boundary convention: Re = +1/2 goes to -1/2, and points on the right
/// half of the unit circle go to their inverted (left-half) representatives,
/// so the representative is unique.
pub fn reduce_to_fundamental_domain(z: HPoint) -> Result<(HPoint, UnimodularMatrix)> {
    if !(z.y > 0.0) || !z.x.is_finite() || !z.y.is_finite() {
        return Err(Error::Domain(format!(
            "reduction needs a finite upper half-plane point, got ({}, {})",
            z.x, z.y
        )));
    }
    let mut w = z;
    let mut g = UnimodularMatrix::identity();
    let s = UnimodularMatrix { a: 0, b: -1, c: 1, d: 0 };
    for _ in 0..REDUCE_ITERATION_LIMIT {
        // Translate into the strip; floor(x + 1/2) sends x = +1/2 to -1/2
        // and leaves x = -1/2 alone, which is exactly the tie convention.
        let n = (w.x + 0.5).floor();
        if n != 0.0 {
            let t = UnimodularMatrix { a: 1, b: -(n as i64), c: 0, d: 1 };
            w.x -= n;
            g = t.compose(&g);
        }
        let norm2 = w.x * w.x + w.y * w.y;
        if norm2 < 1.0 - CIRCLE_BAND {
            // Strictly inside the circle: invert and keep reducing. Each
            // pass through this branch grows y by at least the band width
            // in relative terms, so the loop cannot cycle.
            w = mobius_act(&s, w);
            g = s.compose(&g);
            continue;
        }
        if norm2 <= 1.0 + CIRCLE_BAND && w.x > 1e-15 {
            // On the circle with positive real part: invert once to the
            // canonical left-half representative. The image is back in the
            // strip up to rounding, so no further pass is needed.
            w = mobius_act(&s, w);
            g = s.compose(&g);
        }
        // Enforce the Re = +1/2 -> -1/2 edge convention under float
        // noise: a point a few ulps below +1/2 is on the boundary.
        if w.x >= 0.5 - 1e-12 {
            let t = UnimodularMatrix { a: 1, b: -1, c: 0, d: 1 };
            w.x -= 1.0;
            g = t.compose(&g);
        }
        return Ok((w, g));
    }
    Err(Error::IterationLimit)
}

/// Length of the closed geodesic attached to a hyperbolic matrix:
/// 2 arccosh(|tr|/2). Requires |tr| > 2.
pub fn geodesic_length(g: &UnimodularMatrix) -> Result<f64> {
    let tr = (g.a + g.d).abs();
    if tr <= 2 {
        return Err(Error::NonHyperbolic((g.a + g.d) as f64));
    }
    Ok(2.0 * (tr as f64 / 2.0).acosh())
}
