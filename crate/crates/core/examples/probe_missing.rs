use hs_core::hecke::hecke_relation_residual;
use hs_core::maass::{solve_coefficients, truncation_m, Symmetry};

fn deep_hecke(r: f64) -> (f64, f64) {
    let y_deep = 0.50f64.min(r / (2.0 * std::f64::consts::PI * 34.0));
    let m_deep = truncation_m(r, y_deep);
    let c = solve_coefficients(r, Symmetry::Odd, y_deep, m_deep).unwrap();
    let mut worst = 0.0f64;
    for m2 in 2..=15u64 {
        for n2 in m2..=15u64 {
            if m2 * n2 > 30 {
                break;
            }
            worst = worst.max(hecke_relation_residual(&c, m2, n2).unwrap());
        }
    }
    (worst, c.coeff(2))
}

fn main() {
    for dr in [-2e-5f64, -5e-6, -2e-6, 0.0, 2e-6, 5e-6, 2e-5] {
        let r = 21.4790600 + dr;
        let (h, a2) = deep_hecke(r);
        println!("r = {r:.7} (off {dr:+.1e}): deep hecke = {h:.3e}, a2 = {a2:.8}");
    }
    // Healthy forms for comparison at their located roots.
    for (label, r) in [
        ("found 22.1947", 22.194673977544433),
        ("found 20.1067", 20.1066946825522),
        ("recovered 14.3585", 14.358509519881007),
    ] {
        let (h, a2) = deep_hecke(r);
        println!("{label}: deep hecke = {h:.3e}, a2 = {a2:.8}");
    }
}
