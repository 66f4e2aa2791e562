//! Dirichlet characters and their L-functions.
//!
//! A character mod q is stored as its full value table on residues; the
//! constructor verifies the defining algebraic properties instead of
//! trusting the caller. L(s, chi) is assembled from Hurwitz zeta values,
//! L(s, chi) = q^-s sum_{a=1..q} chi(a) zeta(s, a/q), which inherits the
//! analytic continuation of the Hurwitz implementation.

use super::gamma::digamma;
use super::zeta::hurwitz_zeta;
use crate::error::{Error, Result};
use num_complex::Complex64;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A Dirichlet character mod q, held as the value table chi(1), ..., chi(q).
#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    q: u32,
    /// values[m] = chi(m) for m in 0..q (index n mod q).
    values: Vec<Complex64>,
}

impl DirichletCharacter {
    /// Builds a character from its values at 1, 2, ..., q and checks that
    /// they actually define one: chi(1) = 1, chi vanishes exactly on the
    /// non-units, unit values lie on the unit circle, and chi is
    /// multiplicative on units.
    pub fn from_values(q: u32, values_at_1_to_q: &[Complex64]) -> Result<Self> {
        if q == 0 {
            return Err(Error::Domain("character modulus must be positive".into()));
        }
        if values_at_1_to_q.len() != q as usize {
            return Err(Error::Domain(format!(
                "expected {q} character values, got {}",
                values_at_1_to_q.len()
            )));
        }
        let qu = q as u64;
        let mut values = vec![Complex64::new(0.0, 0.0); q as usize];
        for (k, &v) in values_at_1_to_q.iter().enumerate() {
            let n = (k + 1) as u64; // value of chi at n
            values[(n % qu) as usize] = v;
            let unit = gcd(n, qu) == 1;
            if unit && (v.norm() - 1.0).abs() > 1e-9 {
                return Err(Error::Domain(format!(
                    "chi({n}) = {v} should have modulus 1 on a unit mod {q}"
                )));
            }
            if !unit && v.norm() > 1e-12 {
                return Err(Error::Domain(format!(
                    "chi({n}) = {v} should vanish off the units mod {q}"
                )));
            }
        }
        let chi = Self { q, values };
        if (chi.eval(1) - 1.0).norm() > 1e-12 {
            return Err(Error::Domain("chi(1) must equal 1".into()));
        }
        for a in 1..=qu {
            if gcd(a, qu) != 1 {
                continue;
            }
            for b in a..=qu {
                if gcd(b, qu) != 1 {
                    continue;
                }
                let lhs = chi.eval(a) * chi.eval(b);
                let rhs = chi.eval(a * b);
                if (lhs - rhs).norm() > 1e-9 {
                    return Err(Error::Domain(format!(
                        "character table is not multiplicative at ({a}, {b}) mod {q}"
                    )));
                }
            }
        }
        Ok(chi)
    }

    /// The principal character mod q: 1 on units, 0 elsewhere.
    pub fn principal(q: u32) -> Self {
        let qu = q.max(1) as u64;
        let values = (0..qu)
            .map(|m| {
                if qu == 1 || gcd(m, qu) == 1 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        Self { q: q.max(1), values }
    }

    /// The modulus q.
    pub fn modulus(&self) -> u32 {
        self.q
    }

    /// chi(n), by reduction of n mod q.
    pub fn eval(&self, n: u64) -> Complex64 {
        self.values[(n % self.q as u64) as usize]
    }

    fn is_principal(&self) -> bool {
        let qu = self.q as u64;
        (1..=qu).all(|a| {
            let want = if gcd(a, qu) == 1 { 1.0 } else { 0.0 };
            (self.eval(a) - want).norm() < 1e-12
        })
    }
}

/// L(s, chi) via Hurwitz zeta. Errors at s = 1 for principal characters
/// (genuine pole); for non-principal characters the poles of the Hurwitz
/// terms cancel and the value at s = 1 is taken from the Laurent expansion
/// zeta(s, a) = 1/(s-1) - psi(a) + O(s-1).
pub fn dirichlet_l(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64> {
    let q = chi.modulus() as u64;
    let qf = q as f64;
    if (s - 1.0).norm() < 1e-8 {
        if chi.is_principal() {
            return Err(Error::Pole("L(s, principal chi) has a pole at s = 1".into()));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for a in 1..=q {
            let v = chi.eval(a);
            if v.norm() == 0.0 {
                continue;
            }
            acc -= v * digamma(Complex64::new(a as f64 / qf, 0.0))?;
        }
        return Ok(acc / qf);
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 1..=q {
        let v = chi.eval(a);
        if v.norm() == 0.0 {
            continue;
        }
        acc += v * hurwitz_zeta(s, a as f64 / qf)?;
    }
    Ok(acc * (-s * qf.ln()).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_non_multiplicative_table() {
        // chi(2) chi(2) must equal chi(4) mod 5; break it.
        let bad = DirichletCharacter::from_values(
            5,
            &[c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn rejects_nonzero_off_units() {
        let bad = DirichletCharacter::from_values(4, &[c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        assert!(bad.is_err());
    }

    #[test]
    fn principal_table_is_valid() {
        for q in [1u32, 2, 3, 4, 6, 12] {
            let chi = DirichletCharacter::principal(q);
            assert!(chi.is_principal(), "principal({q})");
            // Round-trips through the validating constructor.
            let table: Vec<_> = (1..=q as u64).map(|n| chi.eval(n)).collect();
            assert!(DirichletCharacter::from_values(q, &table).is_ok());
        }
    }

    #[test]
    fn complex_quartic_character_mod_5() {
        // chi(2) = i defines the order-4 character mod 5.
        let chi = DirichletCharacter::from_values(
            5,
            &[c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(-1.0, 0.0), c(0.0, 0.0)],
        )
        .unwrap();
        // L(2, chi) against a direct 200000-term partial sum (alternating-ish
        // tail below 1e-10 after pairing).
        let got = dirichlet_l(c(2.0, 0.0), &chi).unwrap();
        let mut want = Complex64::new(0.0, 0.0);
        for n in 1..=200_000u64 {
            want += chi.eval(n) / Complex64::new((n as f64) * (n as f64), 0.0);
        }
        assert!((got - want).norm() < 1e-9, "L(2, quartic chi mod 5): {got} vs {want}");
    }

    #[test]
    fn nonprincipal_value_at_one() {
        // L(1, chi_-4) = pi/4 (Leibniz).
        let chi = DirichletCharacter::from_values(
            4,
            &[c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)],
        )
        .unwrap();
        let got = dirichlet_l(c(1.0, 0.0), &chi).unwrap();
        assert!((got.re - std::f64::consts::FRAC_PI_4).abs() < 1e-10);
        assert!(got.im.abs() < 1e-12);
    }

    #[test]
    fn principal_pole_is_detected() {
        let chi = DirichletCharacter::principal(6);
        assert!(dirichlet_l(c(1.0, 0.0), &chi).is_err());
    }
}
