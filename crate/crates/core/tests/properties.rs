//! Randomized structural checks. Each test states an exact mathematical law
//! (a group identity, a functional equation, a normalization) and verifies
//! it on random inputs, with error budgets tied either to quantities the
//! library itself reports (tail estimates, panel-error estimates) or to the
//! conditioning of the arithmetic involved.

use hs_core::hecke::SatakePair;
use hs_core::hypgeom::{
    geodesic_length, mobius_act, reduce_to_fundamental_domain, HPoint, UnimodularMatrix,
};
use hs_core::quad::adaptive_real;
use hs_core::scattering::{eisenstein_eval, phi_gamma1, winding_number_with, WindingQuadSpec};
use hs_core::traceform::{
    eigenvalue_local_count, make_bump_pair, make_gaussian_pair,
};
use hs_core::Complex64;
use proptest::prelude::*;

/// Builds a group element as an alternating word in the translation and the
/// inversion. Bounded exponents and word lengths keep every matrix entry far
/// below 2^30, so the integer arithmetic is exact and the induced action on
/// the upper half-plane is well conditioned.
fn word_matrix(moves: &[i64]) -> UnimodularMatrix {
    let s = UnimodularMatrix::new(0, -1, 1, 0).unwrap();
    let mut g = UnimodularMatrix::identity();
    for &k in moves {
        let t_k = UnimodularMatrix::new(1, k, 0, 1).unwrap();
        g = t_k.compose(&g);
        g = s.compose(&g);
    }
    g
}

fn moves_strategy() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-2i64..=2, 0..4)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    /// Acting by a product equals acting twice, and the imaginary part of
    /// the image obeys Im(gz) = Im z / |cz + d|^2.
    #[test]
    fn mobius_is_a_group_action(
        m1 in moves_strategy(),
        m2 in moves_strategy(),
        x in -3.0f64..3.0,
        y in 0.5f64..3.0,
    ) {
        let g1 = word_matrix(&m1);
        let g2 = word_matrix(&m2);
        let z = HPoint::new(x, y);

        let staged = mobius_act(&g1, mobius_act(&g2, z));
        let direct = mobius_act(&g1.compose(&g2), z);
        let scale = 1.0 + direct.x.abs() + direct.y;
        prop_assert!((staged.x - direct.x).abs() <= 1e-6 * scale);
        prop_assert!((staged.y - direct.y).abs() <= 1e-6 * scale);

        let g = g1.compose(&g2);
        let (c, d) = (g.c as f64, g.d as f64);
        let denom = (c * x + d) * (c * x + d) + c * c * y * y;
        prop_assert!((direct.y - y / denom).abs() <= 1e-9 * (1.0 + direct.y));
    }

    /// Composing a matrix with its adjugate gives the identity exactly; the
    /// entries are integers, so this is a bit-level check of `compose`.
    #[test]
    fn compose_with_inverse_is_identity(m in moves_strategy()) {
        let g = word_matrix(&m);
        let inv = UnimodularMatrix::new(g.d, -g.b, -g.c, g.a).unwrap();
        let id = g.compose(&inv);
        prop_assert_eq!((id.a, id.b, id.c, id.d), (1, 0, 0, 1));
    }

    /// Geodesic length is a conjugation invariant: only the trace matters.
    #[test]
    fn geodesic_length_is_conjugation_invariant(
        a in 1i64..=6,
        b in 1i64..=6,
        m in moves_strategy(),
    ) {
        // [[1+ab, a], [b, 1]] has trace 2 + ab > 2, hence is hyperbolic.
        let g = UnimodularMatrix::new(1 + a * b, a, b, 1).unwrap();
        let h = word_matrix(&m);
        let h_inv = UnimodularMatrix::new(h.d, -h.b, -h.c, h.a).unwrap();
        let conj = h.compose(&g).compose(&h_inv);
        let l1 = geodesic_length(&g).unwrap();
        let l2 = geodesic_length(&conj).unwrap();
        prop_assert!((l1 - l2).abs() <= 1e-12 * l1);
    }

    /// Reduction lands in the fundamental domain, the recorded matrix maps
    /// the input onto the output, and reducing again changes nothing beyond
    /// boundary-band rounding.
    #[test]
    fn reduction_is_canonical(x in -8.0f64..8.0, y in 0.05f64..20.0) {
        let z = HPoint::new(x, y);
        let (w, g) = reduce_to_fundamental_domain(z).unwrap();

        prop_assert!(w.x >= -0.5 - 1e-11 && w.x < 0.5);
        prop_assert!(w.x * w.x + w.y * w.y >= 1.0 - 1e-12);

        let image = mobius_act(&g, z);
        prop_assert!((image.x - w.x).abs() <= 1e-9 * (1.0 + w.x.abs()));
        prop_assert!((image.y - w.y).abs() <= 1e-9 * w.y);

        let (w2, _) = reduce_to_fundamental_domain(w).unwrap();
        prop_assert!((w2.x - w.x).abs() <= 1e-11 * (1.0 + w.x.abs()));
        prop_assert!((w2.y - w.y).abs() <= 1e-11 * w.y);
    }

    /// The Satake parameters are the roots of x^2 - a_p x + 1: they multiply
    /// to 1, sum to a_p, and sit on the unit circle in the tempered range.
    #[test]
    fn satake_pair_solves_its_quadratic(ap in -5.0f64..5.0) {
        let pair = SatakePair::from_ap(ap);
        prop_assert!((pair.alpha * pair.beta - 1.0).norm() <= 1e-12);
        prop_assert!((pair.alpha + pair.beta - ap).norm() <= 1e-12 * (1.0 + ap.abs()));
        if ap.abs() <= 2.0 {
            prop_assert!((pair.alpha.norm() - 1.0).abs() <= 1e-12);
        }
    }

    /// Local window counting agrees with a direct scan over signed copies.
    #[test]
    fn local_count_matches_direct_scan(
        rs in prop::collection::vec(0.0f64..30.0, 0..20),
        mu in -5.0f64..35.0,
        a in 0.01f64..3.0,
    ) {
        let got = eigenvalue_local_count(&rs, mu, a).unwrap();
        let mut want = 0usize;
        for &r in &rs {
            let copies: &[f64] = if r == 0.0 { &[0.0] } else { &[r, -r] };
            for &c in copies {
                if (c - mu).abs() <= a {
                    want += 1;
                }
            }
        }
        prop_assert_eq!(got, want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    /// The scattering determinant has unit modulus on the critical line.
    #[test]
    fn phi_has_unit_modulus_on_the_line(r in 0.05f64..120.0) {
        let phi = phi_gamma1(Complex64::new(0.5, r)).unwrap();
        prop_assert!((phi.norm() - 1.0).abs() <= 1e-10);
    }

    /// phi(s) phi(1-s) = 1 off the critical line. The sample window stays
    /// below the first nontrivial zeta zero (|Im 2s| < 14.1) and away from
    /// the pole at s = 1 and the real axis, so both factors are moderate.
    #[test]
    fn phi_satisfies_the_reflection_identity(
        sigma in 0.55f64..2.2,
        t in 0.3f64..5.0,
    ) {
        let s = Complex64::new(sigma, t);
        let product = phi_gamma1(s).unwrap() * phi_gamma1(Complex64::new(1.0, 0.0) - s).unwrap();
        prop_assert!((product - 1.0).norm() <= 1e-8);
    }

    /// The bump pair's spectral kernel is an averaged cosine: even in r and
    /// bounded by its value at zero, which is the recorded normalization.
    #[test]
    fn bump_spectral_kernel_is_even_and_bounded(
        eps in 0.5f64..2.5,
        r in 0.0f64..40.0,
    ) {
        let pair = make_bump_pair(eps);
        let h_r = (pair.h)(r);
        prop_assert!((h_r - (pair.h)(-r)).abs() <= 1e-12 * (1.0 + h_r.abs()));
        prop_assert!(h_r.abs() <= pair.ghat0 + 1e-7);
        prop_assert!(((pair.h)(0.0) - pair.ghat0).abs() <= 1e-7);
    }

    /// The Gaussian pair's stored antiderivative integrates its own kernel:
    /// anti(b) - anti(a) must match adaptive quadrature of h over [a, b].
    #[test]
    fn gaussian_antiderivative_matches_quadrature(
        w in 0.3f64..3.0,
        a in -6.0f64..6.0,
        len in 0.1f64..5.0,
    ) {
        let pair = make_gaussian_pair(w);
        let anti = pair.h_antiderivative.as_ref().unwrap();
        let b = a + len;
        let direct = anti(b) - anti(a);
        let quad = adaptive_real(|r| (pair.h)(r), a, b, 1e-12, 1e-6);
        prop_assert!((direct - quad.value).abs() <= 1e-9 * (1.0 + direct.abs()) + quad.error);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 6, ..ProptestConfig::default() })]

    /// Refining the winding quadrature must not move the answer by more than
    /// the two reported error estimates.
    #[test]
    fn winding_is_stable_under_refinement(lambda in 5.0f64..40.0) {
        let coarse = winding_number_with(lambda, &WindingQuadSpec::default()).unwrap();
        let tight = WindingQuadSpec { tol: 1e-10, min_panel_width: 2e-5 };
        let fine = winding_number_with(lambda, &tight).unwrap();
        let budget = coarse.quadrature_error + fine.quadrature_error + 1e-11;
        prop_assert!((coarse.m - fine.m).abs() <= budget);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 10, ..ProptestConfig::default() })]

    /// The truncated lattice sum is invariant under the two generators of
    /// the group, up to the tail bounds both evaluations report. The
    /// translation permutes the coprime pairs across the cutoff ball and the
    /// inversion swaps them, so neither identity is built into the sum.
    #[test]
    fn eisenstein_sum_is_automorphic_within_tails(
        x in -0.45f64..0.45,
        y in 0.9f64..1.4,
        sigma in 1.8f64..2.6,
        t in -2.0f64..2.0,
    ) {
        let s = Complex64::new(sigma, t);
        let z = HPoint::new(x, y);
        let ez = eisenstein_eval(&z, s, 60).unwrap();

        let shift = HPoint::new(x + 1.0, y);
        let e_shift = eisenstein_eval(&shift, s, 60).unwrap();
        let budget_t = ez.tail_estimate + e_shift.tail_estimate + 1e-10 * ez.value.norm();
        prop_assert!((ez.value - e_shift.value).norm() <= budget_t);

        let n2 = x * x + y * y;
        let flip = HPoint::new(-x / n2, y / n2);
        let e_flip = eisenstein_eval(&flip, s, 60).unwrap();
        let budget_s = ez.tail_estimate + e_flip.tail_estimate + 1e-10 * ez.value.norm();
        prop_assert!((ez.value - e_flip.value).norm() <= budget_s);
    }
}
