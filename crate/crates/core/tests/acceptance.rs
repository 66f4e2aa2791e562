//! End-to-end acceptance gate: one test per headline capability, each
//! printing a single `ACCEPTANCE n (name): PASS|FAIL` line with the measured
//! numbers, then asserting. Tests 5 and 7 share one lazily built spectral
//! dataset (every eigenvalue with spectral parameter r <= 25, both
//! symmetries); its construction cost is charged to the counting-curve
//! budget, the only one sized for the full scan.

use hs_core::hecke::{
    euler_product, extend_multiplicatively, hecke_operator_eval, l_series, lambda_completed,
    lambda_completed_analytic, RepresentationSpec,
};
use hs_core::hypgeom::HPoint;
use hs_core::maass::{
    eigenvalue_search, expansion_eval, refine_eigenvalue, truncation_m, FourierCoefficients,
    SpectralPoint, Symmetry, HEIGHT_A, HEIGHT_B,
};
use hs_core::scattering::{eisenstein_eval, phi_at_half, phi_gamma1, winding_number};
use hs_core::specfun::{
    bessel_k_imag, digamma, dirichlet_l, gamma_complex, hurwitz_zeta, zeta, DirichletCharacter,
};
use hs_core::traceform::{
    asymptotic_2_5_check, geometric_side, heat_trace_expansion, lemma_2_4_check, make_bump_pair,
    make_gaussian_pair, modular_surface_area, phi_integral_shifted, plancherel_term,
    spectral_side, torsion_free_residual, weyl_counting_curve, LengthSpectrumEntry,
};
use hs_core::Complex64;
use once_cell::sync::Lazy;
use std::f64::consts::PI;
use std::time::Instant;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Prints the one-line verdict for a criterion, then enforces it.
fn report(n: u32, name: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("ACCEPTANCE {n} ({name}): {verdict}: {detail}");
    assert!(pass, "acceptance criterion {n} ({name}) failed: {detail}");
}

struct Spectrum {
    points: Vec<SpectralPoint>,
    build_seconds: f64,
}

/// Every discrete eigenvalue with 0 < r <= 25, both symmetries. The scan
/// starts at r = 1 (an eigenvalue below that would mean lambda < 1.25, far
/// under the smallest known value near 91.14); completeness above is
/// cross-checked by the counting-curve fit itself, where a missed point
/// would leave a unit step in the remainder.
static SPECTRUM: Lazy<Spectrum> = Lazy::new(|| {
    let start = Instant::now();
    let mut points = eigenvalue_search(1.0, 25.0, Symmetry::Even, 0.05).expect("even scan");
    points.extend(eigenvalue_search(1.0, 25.0, Symmetry::Odd, 0.05).expect("odd scan"));
    points.sort_by(|a, b| a.r.total_cmp(&b.r));
    Spectrum {
        points,
        build_seconds: start.elapsed().as_secs_f64(),
    }
});

/// Window searches used by the discovery and L-function criteria.
static ODD_WINDOW: Lazy<Vec<SpectralPoint>> =
    Lazy::new(|| eigenvalue_search(9.0, 10.0, Symmetry::Odd, 0.05).expect("odd window"));
static EVEN_WINDOW: Lazy<Vec<SpectralPoint>> =
    Lazy::new(|| eigenvalue_search(13.0, 14.5, Symmetry::Even, 0.05).expect("even window"));

#[test]
fn acceptance_1_scattering_exactness() {
    let start = Instant::now();
    let half_err = (phi_at_half() + 1.0).abs();

    let mut line_max = 0.0f64;
    for r in [1.0, 5.0, 10.0, 50.0, 100.0] {
        let phi = phi_gamma1(c64(0.5, r)).expect("phi on the critical line");
        line_max = line_max.max((phi.norm() - 1.0).abs());
    }

    // 20 points spread over the strip, avoiding the pole row and the real
    // axis; Im(2s) stays below the first zeta zero ordinate.
    let mut fe_max = 0.0f64;
    for k in 0..20 {
        let s = c64(0.1 + 0.04 * k as f64, 0.4 + 0.3 * k as f64);
        let product = phi_gamma1(s).expect("phi(s)") * phi_gamma1(c64(1.0, 0.0) - s).expect("phi(1-s)");
        fe_max = fe_max.max((product - 1.0).norm());
    }

    let elapsed = start.elapsed().as_secs_f64();
    let pass = half_err <= 1e-8 && line_max <= 1e-10 && fe_max <= 1e-8 && elapsed < 10.0;
    report(
        1,
        "scattering exactness",
        pass,
        &format!(
            "|phi(1/2)+1| = {half_err:.2e}, max ||phi|-1| on line = {line_max:.2e}, \
             max |phi(s)phi(1-s)-1| = {fe_max:.2e}, {elapsed:.1} s"
        ),
    );
}

#[test]
fn acceptance_2_eisenstein_constant_term() {
    let start = Instant::now();
    let s = c64(2.0, 0.0);
    let phi2 = phi_gamma1(s).expect("phi(2)");
    let cutoff = 260;
    let n_nodes = 32;

    let mut detail = String::new();
    let mut pass = true;
    for y in [2.0, 3.0, 5.0] {
        let mut acc = c64(0.0, 0.0);
        let mut tail = 0.0f64;
        for k in 0..n_nodes {
            let x = (k as f64 + 0.5) / n_nodes as f64 - 0.5;
            let ev = eisenstein_eval(&HPoint { x, y }, s, cutoff).expect("Eisenstein value");
            acc += ev.value;
            tail = tail.max(ev.tail_estimate);
        }
        let constant_term = acc / n_nodes as f64;
        let want = y * y + phi2.re / y;
        // The x-average is a midpoint rule on a periodic integrand: every
        // non-constant Fourier mode integrates to zero exactly, and the
        // first aliased mode carries a Bessel factor below e^{-2 pi 32 y},
        // so the quadrature part of the budget is below machine precision
        // and the lattice tail dominates.
        let budget_rel = (tail + 1e-12) / want;
        let err_rel = (constant_term.re - want).abs().max(constant_term.im.abs()) / want;
        pass &= err_rel <= budget_rel && budget_rel <= 1e-4;
        detail.push_str(&format!("y={y}: err {err_rel:.2e} budget {budget_rel:.2e}; "));
    }

    let elapsed = start.elapsed().as_secs_f64();
    pass &= elapsed < 120.0;
    detail.push_str(&format!("{elapsed:.1} s"));
    report(2, "Eisenstein constant term", pass, &detail);
}

/// Re-refines a located eigenvalue with a perturbed truncation order or
/// perturbed collocation heights and returns the shift.
fn stability_shift(point: &SpectralPoint, m: usize, heights: (f64, f64)) -> f64 {
    let r = point.r;
    let refined = refine_eigenvalue(r - 2e-3, r + 2e-3, point.symmetry, m, heights)
        .expect("stability refinement lost the eigenvalue");
    (refined - r).abs()
}

#[test]
fn acceptance_3_cusp_form_discovery() {
    let start = Instant::now();
    let odd = &*ODD_WINDOW;
    let even = &*EVEN_WINDOW;

    let mut pass = odd.len() == 1 && even.len() == 1;
    let mut detail = format!("odd in [9,10]: {}, even in [13,14.5]: {}; ", odd.len(), even.len());

    for point in odd.iter().chain(even.iter()) {
        let m = truncation_m(point.r, HEIGHT_B);
        let m_up = (1.25 * m as f64).ceil() as usize;
        let shift_m = stability_shift(point, m_up, (HEIGHT_A, HEIGHT_B));
        let shift_y = stability_shift(point, m, (0.9 * HEIGHT_A, 0.9 * HEIGHT_B));
        let ok = point.residual_two_height < 1e-6
            && point.residual_hecke < 1e-5
            && shift_m <= 1e-6
            && shift_y <= 1e-6;
        pass &= ok;
        detail.push_str(&format!(
            "r = {:.9} ({:?}): two-height {:.2e}, Hecke {:.2e}, shifts {:.2e}/{:.2e}; ",
            point.r, point.symmetry, point.residual_two_height, point.residual_hecke, shift_m,
            shift_y
        ));
    }

    let elapsed = start.elapsed().as_secs_f64();
    pass &= elapsed < 600.0;
    detail.push_str(&format!("{elapsed:.1} s"));
    report(3, "cusp-form discovery", pass, &detail);
}

fn primes_below(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut sieve = vec![true; n];
    let mut out = Vec::new();
    for p in 2..n {
        if sieve[p] {
            out.push(p as u64);
            let mut q = p * p;
            while q < n {
                sieve[q] = false;
                q += p;
            }
        }
    }
    out
}

#[test]
fn acceptance_4_l_function_consistency() {
    let point = &EVEN_WINDOW[0];
    let start = Instant::now();

    // Hecke eigenvalues a(p) read off as T_p f(z) / f(z) at an interior
    // point, then extended multiplicatively so both the series and the
    // Euler product see the same coefficient vector.
    let z = HPoint { x: 0.1, y: 1.2 };
    let f_z = expansion_eval(&point.coefficients, z).expect("f(z)");
    assert!(f_z.abs() > 1e-300, "evaluation point must avoid the nodal set");
    let pairs: Vec<(u64, f64)> = primes_below(1000)
        .into_iter()
        .map(|p| {
            let tp = hecke_operator_eval(p, &point.coefficients, z).expect("Hecke operator");
            (p, tp / f_z)
        })
        .collect();
    let extended = extend_multiplicatively(&pairs, 40_000);
    let coeffs =
        FourierCoefficients::new(Symmetry::Even, point.r, extended).expect("extended coefficients");

    let s3 = c64(3.0, 0.0);
    let series = l_series(s3, &coeffs).expect("Dirichlet series at 3");
    let euler = euler_product(s3, &coeffs, RepresentationSpec::Standard, 1000)
        .expect("Euler product at 3");
    let euler_err = (series.value - euler).norm();

    // Functional equation via the two differently normalized completions:
    // the series-anchored route at s against the analytically normalized
    // route at 1-s, so agreement ties the Gamma factors, the Dirichlet
    // series, and the integral representation together.
    let ext_point = SpectralPoint {
        r: point.r,
        lambda: point.lambda,
        symmetry: Symmetry::Even,
        coefficients: coeffs,
        residual_two_height: point.residual_two_height,
        residual_hecke: point.residual_hecke,
    };
    let mut fe_max = 0.0f64;
    let mut fe_rel_max = 0.0f64;
    for (re, im) in [(0.7, 3.0), (0.5, 5.0), (0.3, 1.0)] {
        let s = c64(re, im);
        let a = lambda_completed(s, &ext_point).expect("anchored completion");
        let b = lambda_completed_analytic(c64(1.0, 0.0) - s, &ext_point)
            .expect("analytic completion");
        fe_max = fe_max.max((a - b).norm());
        fe_rel_max = fe_rel_max.max((a - b).norm() / a.norm());
    }

    let elapsed = start.elapsed().as_secs_f64();
    let pass = euler_err <= 1e-6 && fe_max < 1e-6 && elapsed < 300.0;
    report(
        4,
        "L-function consistency",
        pass,
        &format!(
            "|Euler - series| at 3 = {euler_err:.2e}, max FE residual = {fe_max:.2e} \
             (relative {fe_rel_max:.2e}), {elapsed:.1} s"
        ),
    );
}

#[test]
fn acceptance_5_counting_curve() {
    let spectrum = &*SPECTRUM;
    let start = Instant::now();

    let area = modular_surface_area();
    let area_err = (area - PI / 3.0).abs();

    let rs: Vec<f64> = spectrum.points.iter().map(|p| p.r).collect();
    let grid: Vec<f64> = (0..=30).map(|i| 10.0 + 0.5 * i as f64).collect();
    let windings: Vec<f64> = grid
        .iter()
        .map(|&lam| winding_number(lam).expect("winding number").m)
        .collect();
    let curve =
        weyl_counting_curve(&rs, &grid, &windings, 1, area, 1).expect("counting curve");

    let elapsed = spectrum.build_seconds + start.elapsed().as_secs_f64();
    let pass = area_err <= 1e-8 && curve.fit_residual <= 2.5 && elapsed < 1800.0;
    report(
        5,
        "counting curve",
        pass,
        &format!(
            "{} eigenvalues to r = 25, |area - pi/3| = {area_err:.2e}, fit slope {:.4}, \
             max |D - c lambda| = {:.3}, {elapsed:.1} s (scan {:.1} s)",
            rs.len(),
            curve.fit_c,
            curve.fit_residual,
            spectrum.build_seconds
        ),
    );
}

#[test]
fn acceptance_6_remainder_order_ratios() {
    let start = Instant::now();
    let area = modular_surface_area();

    // (a) Growth of the smoothed-count deviation. A narrow kernel saturates
    // the deviation to a constant well before lambda = 50, parking the ratio
    // at the interval's lower edge within roundoff; width 1000 keeps both
    // test points in the pre-asymptotic regime where the deviation still
    // grows, so the ratio measures genuine at-most-linear growth.
    let wide = make_gaussian_pair(1000.0);
    let dev_50 = lemma_2_4_check(&wide, 50.0).expect("smoothed count").deviation;
    let dev_100 = lemma_2_4_check(&wide, 100.0).expect("smoothed count").deviation;
    let growth_ratio = dev_100 / dev_50;
    let growth_ok = (1.0..=2.4).contains(&growth_ratio);

    // (b) Exponential decay of the pairing remainder. The rescaled residual
    // carries a factor (t - pi w^2); width 0.4 keeps that factor
    // single-signed on [1.5, 2.5] so the ratio test sees the exponential
    // rather than a sign crossing.
    let narrow = make_gaussian_pair(0.4);
    let mut scaled = Vec::new();
    for k in 0..5 {
        let t = 1.5 + 0.25 * k as f64;
        let chk = asymptotic_2_5_check(&narrow, t, area).expect("asymptotic check");
        scaled.push(chk.residual * (2.0 * PI * t).exp());
    }
    let same_sign = scaled.iter().all(|v| *v > 0.0) || scaled.iter().all(|v| *v < 0.0);
    let abs: Vec<f64> = scaled.iter().map(|v| v.abs()).collect();
    let decay_ratio = abs.iter().cloned().fold(0.0f64, f64::max)
        / abs.iter().cloned().fold(f64::INFINITY, f64::min);
    let decay_ok = same_sign && decay_ratio < 3.0;

    // (c) Logarithmic growth of the scattering-phase pairing integral.
    let medium = make_gaussian_pair(2.0);
    let v20 = phi_integral_shifted(&medium, 20.0).expect("phase integral") / 20.0f64.ln();
    let v100 = phi_integral_shifted(&medium, 100.0).expect("phase integral") / 100.0f64.ln();
    let log_ratio = v100 / v20;
    let log_ok = log_ratio > 0.5 && log_ratio < 2.0;

    let elapsed = start.elapsed().as_secs_f64();
    let pass = growth_ok && decay_ok && log_ok && elapsed < 600.0;
    report(
        6,
        "remainder-order ratios",
        pass,
        &format!(
            "deviation ratio {growth_ratio:.4} in [1.0, 2.4]; scaled-remainder spread \
             {decay_ratio:.3} < 3 (single-signed: {same_sign}); phase-integral ratio \
             {log_ratio:.3} in (0.5, 2); {elapsed:.1} s"
        ),
    );
}

#[test]
fn acceptance_7_heat_trace_leading_term() {
    let spectrum = &*SPECTRUM;
    let start = Instant::now();
    let area = modular_surface_area();
    let rs: Vec<f64> = spectrum.points.iter().map(|p| p.r).collect();

    // The heat-kernel pairing of the digamma line term contributes
    // e^{-t/4} (gamma_E + ln t + 2 ln 2) / (4 sqrt(pi t)) at the sqrt(t)
    // scale, and the lattice ln 2 term cancels the 2 ln 2, leaving
    //   S(t) = e^{-t/4} (gamma_E + ln t) / (4 sqrt(pi t))
    // as the full sqrt(t)-scale content of the trace. Subtracting it leaves
    //   t (lhs - S) = Area/(4 pi) + c1 t + c2 t^{3/2} + O(t^2),
    // so a three-node solve against {1, t, t^{3/2}} extracts the constant.
    let nodes = [0.2, 0.1, 0.05];
    let mut rows = [[0.0f64; 3]; 3];
    let mut rhs = [0.0f64; 3];
    for (i, &t) in nodes.iter().enumerate() {
        let ht = heat_trace_expansion(t, &rs, area).expect("heat trace");
        assert!(
            !ht.spectrum_truncated,
            "the r <= 25 spectrum must cover the heat kernel at t = {t}"
        );
        let s_t = (-t / 4.0).exp() * (EULER_GAMMA + t.ln()) / (4.0 * (PI * t).sqrt());
        rows[i] = [1.0, t, t * t.sqrt()];
        rhs[i] = t * (ht.lhs - s_t);
    }
    let m = nalgebra::Matrix3::from_fn(|i, j| rows[i][j]);
    let b = nalgebra::Vector3::from_row_slice(&rhs);
    let sol = m.lu().solve(&b).expect("extrapolation solve");
    let c0 = sol[0];

    let target = area / (4.0 * PI);
    let rel = (c0 - target).abs() / target;
    let elapsed = start.elapsed().as_secs_f64();
    let pass = rel < 0.05 && elapsed < 120.0;
    report(
        7,
        "heat-trace leading term",
        pass,
        &format!(
            "extrapolated constant {c0:.6} vs Area/4pi = {target:.6} (relative error \
             {rel:.2e}), {elapsed:.1} s after the shared scan"
        ),
    );
}

#[test]
fn acceptance_8_exact_vanishing_and_closure() {
    let start = Instant::now();

    // (a) A kernel supported inside the shortest length kills every
    // hyperbolic term identically: the profile is exactly zero outside its
    // support, so the sum is 0.0 in exact float arithmetic, not merely small.
    let min_ell = 2.0 * 1.5f64.acosh();
    let entries = [
        LengthSpectrumEntry::new(min_ell, min_ell, 1).expect("length entry"),
        LengthSpectrumEntry::new(2.0 * min_ell, min_ell, 2).expect("length entry"),
        LengthSpectrumEntry::new(2.6, 2.6, 1).expect("length entry"),
    ];
    let geo_at_support = geometric_side(&make_bump_pair(min_ell), &entries);
    let geo_inside = geometric_side(&make_bump_pair(0.7 * min_ell), &entries);
    let vanishes = geo_at_support == 0.0 && geo_inside == 0.0;

    // (b) Synthetic closure: fix area, lengths, and all but one spectral
    // parameter, then place the last one where the compact-surface identity
    // demands, h(r_last) = plancherel + geometric - sum of the fixed h(r_j).
    // The residual must close to quadrature accuracy, and moving the placed
    // parameter must reopen it.
    let pair = make_gaussian_pair(1.0);
    let area = 4.0 * PI;
    let fixed = [0.8, 1.6, 2.2];
    let lengths = [LengthSpectrumEntry::new(2.0, 2.0, 1).expect("length entry")];
    let gap = plancherel_term(&pair, area) + geometric_side(&pair, &lengths)
        - spectral_side(&pair, &fixed, false);
    assert!(
        gap > 0.0 && gap < 1.0,
        "the synthetic identity gap must be attainable by one h value, got {gap}"
    );
    let r_last = (-gap.ln()).sqrt();
    let rs = [fixed[0], fixed[1], fixed[2], r_last];
    let closed = torsion_free_residual(&pair, &rs, &lengths, area).expect("closure residual");
    let perturbed = torsion_free_residual(
        &pair,
        &[fixed[0], fixed[1], fixed[2], r_last + 1e-3],
        &lengths,
        area,
    )
    .expect("perturbed residual");

    let elapsed = start.elapsed().as_secs_f64();
    let pass = vanishes && closed < 1e-8 && perturbed > 1e-4 && elapsed < 60.0;
    report(
        8,
        "exact vanishing and synthetic closure",
        pass,
        &format!(
            "geometric side at/inside support = {geo_at_support:?}/{geo_inside:?}, closure \
             residual {closed:.2e}, reopened by a 1e-3 nudge to {perturbed:.2e}, {elapsed:.1} s"
        ),
    );
}

/// Harmonic-sum route to the Euler-Mascheroni constant with high-order
/// tail corrections; exact to far below f64 resolution at these cutoffs.
fn euler_gamma_oracle(n: u64) -> f64 {
    let h: f64 = (1..=n).map(|k| 1.0 / k as f64).sum();
    let nf = n as f64;
    h - nf.ln() - 0.5 / nf + 1.0 / (12.0 * nf * nf) - 1.0 / (120.0 * nf.powi(4))
}

/// Partial sum of sum k^{-2} up to n; the dropped tail lies strictly
/// between 1/(n+1) and 1/n.
fn zeta2_partial(n: u64) -> f64 {
    (1..=n).map(|k| 1.0 / (k as f64 * k as f64)).sum()
}

/// Euler-Maclaurin continuation of zeta at real s with cutoff n, carried to
/// the s(s+1)(s+2) correction; independent of the library implementation.
fn zeta_em_oracle(s: f64, n: u64) -> f64 {
    let nf = n as f64;
    let head: f64 = (1..n).map(|k| (k as f64).powf(-s)).sum();
    head + 0.5 * nf.powf(-s) + nf.powf(1.0 - s) / (s - 1.0) + s * nf.powf(-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * nf.powf(-s - 3.0) / 720.0
}

/// Alternating series for Catalan's constant with the midpoint tail rule;
/// error is of the order of the third derivative of the terms.
fn catalan_oracle(n: u64) -> f64 {
    let mut acc = 0.0;
    for k in 0..n {
        let term = 1.0 / ((2 * k + 1) as f64).powi(2);
        acc += if k % 2 == 0 { term } else { -term };
    }
    let edge = 1.0 / ((2 * n + 1) as f64).powi(2);
    acc + if n % 2 == 0 { 0.5 * edge } else { -0.5 * edge }
}

/// Trapezoid evaluation of int_0^inf e^{-y cosh t} cos(r t) dt at r = 0;
/// the integrand is analytic with double-exponential decay, so the error
/// falls below f64 resolution already at step 0.01.
fn k0_quadrature_oracle(y: f64, step: f64) -> f64 {
    let t_max = 40.0f64;
    let n = (t_max / step).round() as u64;
    let mut acc = 0.5 * (-y).exp();
    for k in 1..=n {
        acc += (-y * (k as f64 * step).cosh()).exp();
    }
    acc * step
}

#[test]
fn acceptance_9_special_function_suite() {
    let start = Instant::now();
    let mut pass = true;
    let mut detail = String::new();

    // digamma(1) = -gamma against the harmonic-sum oracle at n and 2n.
    let g_lo = euler_gamma_oracle(400);
    let g_hi = euler_gamma_oracle(800);
    let psi1 = digamma(c64(1.0, 0.0)).expect("digamma(1)");
    let digamma_err = (psi1 + g_hi).norm();
    pass &= (g_lo - g_hi).abs() < 1e-13 && digamma_err < 1e-12;
    detail.push_str(&format!("digamma(1) {digamma_err:.1e}; "));

    // zeta(2) inside the partial-sum tail bracket at n and 2n, and at the
    // closed-form value.
    let z2 = zeta(c64(2.0, 0.0)).expect("zeta(2)").re;
    for n in [4000u64, 8000] {
        let ps = zeta2_partial(n);
        pass &= z2 > ps + 1.0 / (n as f64 + 1.0) && z2 < ps + 1.0 / n as f64;
    }
    let zeta2_err = (z2 - PI * PI / 6.0).abs();
    pass &= zeta2_err < 1e-10;
    detail.push_str(&format!("zeta(2) {zeta2_err:.1e}; "));

    // zeta(0) = -1/2 against the standalone continuation at cutoffs 32, 64.
    let z0 = zeta(c64(0.0, 0.0)).expect("zeta(0)").re;
    let em_lo = zeta_em_oracle(0.0, 32);
    let em_hi = zeta_em_oracle(0.0, 64);
    let zeta0_err = (z0 - em_hi).abs();
    pass &= (em_lo - em_hi).abs() < 1e-12 && zeta0_err < 1e-10 && (z0 + 0.5).abs() < 1e-10;
    detail.push_str(&format!("zeta(0) {zeta0_err:.1e}; "));

    // Hurwitz zeta(2, 1/2) = 3 zeta(2) through the same tail bracket, and
    // pi^2/2 in closed form.
    let hz = hurwitz_zeta(c64(2.0, 0.0), 0.5).expect("hurwitz zeta").re;
    for n in [4000u64, 8000] {
        let ps = zeta2_partial(n);
        pass &= hz > 3.0 * (ps + 1.0 / (n as f64 + 1.0)) - 1e-9
            && hz < 3.0 * (ps + 1.0 / n as f64) + 1e-9;
    }
    let hz_err = (hz - PI * PI / 2.0).abs();
    pass &= hz_err < 1e-9;
    detail.push_str(&format!("hurwitz(2,1/2) {hz_err:.1e}; "));

    // L(2, chi_{-4}) = Catalan against the alternating oracle at n and 2n.
    let chi4 = DirichletCharacter::from_values(
        4,
        &[c64(1.0, 0.0), c64(0.0, 0.0), c64(-1.0, 0.0), c64(0.0, 0.0)],
    )
    .expect("chi mod 4");
    let l2 = dirichlet_l(c64(2.0, 0.0), &chi4).expect("L(2, chi)").re;
    let cat_lo = catalan_oracle(10_000);
    let cat_hi = catalan_oracle(20_000);
    let catalan_err = (l2 - cat_hi).abs();
    pass &= (cat_lo - cat_hi).abs() < 1e-12 && catalan_err < 1e-9;
    detail.push_str(&format!("L(2,chi_-4) {catalan_err:.1e}; "));

    // K_0(1) against direct trapezoid quadrature at step 0.01 and 0.005.
    let k01 = bessel_k_imag(0.0, 1.0).expect("K_0(1)");
    let q_lo = k0_quadrature_oracle(1.0, 0.01);
    let q_hi = k0_quadrature_oracle(1.0, 0.005);
    let k01_err = (k01 - q_hi).abs();
    pass &= (q_lo - q_hi).abs() < 1e-14 && k01_err < 1e-12;
    detail.push_str(&format!("K0(1) {k01_err:.1e}; "));

    // K_0(30) against the leading asymptotic, and with the next two
    // correction terms as the refined oracle.
    let k30 = bessel_k_imag(0.0, 30.0).expect("K_0(30)");
    let leading = (PI / 60.0).sqrt() * (-30.0f64).exp();
    let ratio = k30 / leading;
    let refined = 1.0 - 1.0 / 240.0 + 9.0 / 115_200.0;
    pass &= (ratio - 1.0).abs() < 0.01 && (ratio - refined).abs() < 1e-4;
    detail.push_str(&format!("K0(30)/asymptotic = {ratio:.6}; "));

    // Zeta functional equation on a critical-strip grid.
    let mut fe_max = 0.0f64;
    for sigma in [0.1, 0.3, 0.5, 0.7, 0.9] {
        for t in [0.5, 2.0, 5.0, 10.0, 20.0, 35.0] {
            let s = c64(sigma, t);
            let chi = (s * 2.0f64.ln()).exp()
                * ((s - 1.0) * PI.ln()).exp()
                * (PI * s / 2.0).sin()
                * gamma_complex(c64(1.0, 0.0) - s).expect("gamma factor");
            let lhs = zeta(s).expect("zeta(s)");
            let rhs = chi * zeta(c64(1.0, 0.0) - s).expect("zeta(1-s)");
            fe_max = fe_max.max((lhs - rhs).norm() / (1.0 + lhs.norm()));
        }
    }
    pass &= fe_max < 1e-8;
    detail.push_str(&format!("zeta FE max {fe_max:.1e}; "));

    let elapsed = start.elapsed().as_secs_f64();
    pass &= elapsed < 60.0;
    detail.push_str(&format!("{elapsed:.1} s"));
    report(9, "special-function suite", pass, &detail);
}
