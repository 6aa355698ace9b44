mod common;

use common::oracles::*;
use hyperscat_core::radial::*;
use hyperscat_core::{Error, SpectralParam, C64};

fn c(v: (f64, f64)) -> C64 {
    C64::new(v.0, v.1)
}

fn param(re: f64, im: f64) -> SpectralParam {
    SpectralParam::new(1, C64::new(re, im)).unwrap()
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm()
}

#[test]
fn background_modes_match_connection_oracle() {
    let w = WarpFunction::exact_hyperbolic();
    let opts = RadialOptions::default();
    for (z, table) in [((0.5, 1.0), &MODES_H2_ONE), ((0.5, 2.0), &MODES_H2_TWO)] {
        let d = scattering_matrix(&w, &param(z.0, z.1), 16, &opts).unwrap();
        for (k, &s) in table.iter().enumerate() {
            let k = k as i64;
            let e = rel(d.get(k).unwrap(), c(s));
            assert!(e < 1e-8, "ζ = {z:?}, k = {k}: {e:e}");
            assert_eq!(d.get(-k), d.get(k));
            assert!(rel(hyperbolic_mode(&param(z.0, z.1), k).unwrap(), c(s)) < 1e-12);
        }
    }
}

#[test]
fn regular_solution_matches_closed_form() {
    let p = param(0.5, 1.0);
    let radii: Vec<f64> = REGULAR_K1_ONE.iter().map(|v| v.0).collect();
    let s = regular_solution(&WarpFunction::exact_hyperbolic(), 1, &p, &radii, &RadialOptions::default()).unwrap();
    for (sample, &(r, u, du)) in s.iter().zip(REGULAR_K1_ONE) {
        assert!(rel(sample.value(), c(u)) < 1e-8, "r = {r}");
        assert!(rel(sample.derivative(), c(du)) < 1e-8, "r = {r}");
    }
}

#[test]
fn jost_germs_match_closed_form() {
    let p = param(0.5, 1.0);
    let w = WarpFunction::exact_hyperbolic();
    for &(k, um, dum, up, dup) in JOST_R12_ONE {
        let j = jost_solutions(&w, k, &p, 12.0, 4).unwrap();
        for (got, want) in [(j.minus.0, um), (j.minus.1, dum), (j.plus.0, up), (j.plus.1, dup)] {
            assert!(rel(got, c(want)) < 1e-9, "k = {k}");
        }
    }
}

#[test]
fn jost_leading_order_wronskian() {
    // m = 0 at large R: u± = x^{e±}, W = (1 − 2ζ) x, and φ ≈ 1/x
    let p = param(0.5, 1.0);
    let w = WarpFunction::exact_hyperbolic();
    for r in [25.0, 30.0] {
        let j = jost_solutions(&w, 0, &p, r, 0).unwrap();
        let x = 2.0 * (-r as f64).exp();
        let scaled = j.wronskian() / x;
        assert!((scaled - (1.0 - 2.0 * p.zeta())).norm() < 1e-12);
        assert!((j.wronskian() * w.phi(r) - (1.0 - 2.0 * p.zeta())).norm() < 1e-9);
    }
}

#[test]
fn jost_defect_decreases_with_order() {
    // at R = 10 the m = 2 defect is already at roundoff; R = 3 keeps every order visible
    let p = param(0.5, 1.0);
    let w = WarpFunction::exact_hyperbolic();
    let (a, b) = jost_defect(&w, 3, &p, 10.0, 4).unwrap();
    assert!(a.max(b) < 1e-14);
    let mut prev = f64::INFINITY;
    for m in 0..=4 {
        let (a, b) = jost_defect(&w, 3, &p, 3.0, m).unwrap();
        let d = a.max(b);
        assert!(d < prev, "m = {m}: {d:e} vs {prev:e}");
        prev = d;
    }
}

#[test]
fn resonant_parameters_are_reported() {
    let p = SpectralParam::new(1, C64::new(1.5, 0.0)).unwrap();
    assert!(matches!(
        jost_solutions(&WarpFunction::exact_hyperbolic(), 0, &p, 12.0, 4),
        Err(Error::Resonance(_))
    ));
}

#[test]
fn wronskian_constancy() {
    let p = param(0.7, 0.8);
    let w = WarpFunction::bump(0.3, 3.0, 1.0).unwrap();
    let opts = RadialOptions::default();
    let radii = [1.0, 2.5, 3.3, 5.0, 12.0];
    let u = regular_solution(&w, 2, &p, &radii, &opts).unwrap();
    let j = jost_solutions(&w, 2, &p, 12.0, 4).unwrap();
    let start = ScaledState::new(j.plus.0, j.plus.1);
    let mut rev = radii.to_vec();
    rev.reverse();
    let v = integrate_mode(&w, 2, &p, 12.0, start, &rev, &opts).unwrap();
    let wr: Vec<C64> = u
        .iter()
        .zip(v.iter().rev())
        .map(|(a, b)| w.phi(a.r) * (a.value() * b.derivative() - a.derivative() * b.value()))
        .collect();
    for x in &wr {
        assert!(rel(*x, wr[0]) < 1e-8, "{x} vs {}", wr[0]);
    }
}

#[test]
fn unperturbed_bump_is_exact_hyperbolic() {
    let p = param(0.5, 2.0);
    let opts = RadialOptions::default();
    let a = scattering_mode(&WarpFunction::bump(0.0, 3.0, 1.0).unwrap(), 5, &p, &opts).unwrap();
    let b = scattering_mode(&WarpFunction::exact_hyperbolic(), 5, &p, &opts).unwrap();
    assert_eq!(a, b);
}

#[test]
fn functional_equation_on_bump() {
    let w = WarpFunction::bump(0.1, 3.0, 1.0).unwrap();
    let opts = RadialOptions::default();
    let p = param(0.5, 1.0);
    for k in [0, 1, 7, 20] {
        let a = scattering_mode(&w, k, &p, &opts).unwrap();
        let b = scattering_mode(&w, k, &p.reflected(), &opts).unwrap();
        assert!((a * b - 1.0).norm() < 1e-8, "k = {k}");
    }
    let q = param(0.8, 0.6);
    let a = scattering_mode(&w, 3, &q, &opts).unwrap();
    let b = scattering_mode(&w, 3, &q.reflected(), &opts).unwrap();
    assert!((a * b - 1.0).norm() < 1e-8);
}

#[test]
fn unitarity_and_conjugation() {
    let w = WarpFunction::bump(0.2, 3.0, 1.0).unwrap();
    let opts = RadialOptions::default();
    let p = param(0.5, 1.5);
    let d = scattering_matrix(&w, &p, 12, &opts).unwrap();
    for v in d.entries.values() {
        assert!((v.norm() - 1.0).abs() < 1e-8);
    }
    let q = param(0.7, 0.9);
    let a = scattering_mode(&w, 4, &q, &opts).unwrap();
    let b = scattering_mode(&w, 4, &q.conj(), &opts).unwrap();
    assert!((a - b.conj()).norm() < 1e-10 * a.norm());
}

#[test]
fn matching_radius_independence() {
    let w = WarpFunction::bump(0.1, 3.0, 1.0).unwrap();
    let p = param(0.5, 1.0);
    let a = RadialOptions::default();
    let b = RadialOptions { matching_radius: 14.0, ..a };
    for k in [0, 4, 16] {
        let (sa, sb) = (scattering_mode(&w, k, &p, &a).unwrap(), scattering_mode(&w, k, &p, &b).unwrap());
        assert!(rel(sa, sb) < 1e-8, "k = {k}");
    }
}

#[test]
fn grid_refinement_order() {
    let w = WarpFunction::bump(0.1, 3.0, 1.0).unwrap();
    let p = param(0.5, 1.0);
    let exact = scattering_mode(&w, 2, &p, &RadialOptions { rtol: 1e-12, ..Default::default() }).unwrap();
    let run = |h| {
        let o = RadialOptions { fixed_step: Some(h), ..Default::default() };
        (scattering_mode(&w, 2, &p, &o).unwrap() - exact).norm()
    };
    let order = (run(0.1) / run(0.05)).log2();
    assert!(order >= 4.0, "{order}");
}

#[test]
fn expansion_fit_matches_oracle_and_mode() {
    let p = param(0.5, 1.0);
    let w = WarpFunction::exact_hyperbolic();
    let opts = RadialOptions::default();
    let fit = expansion_fit(&w, 0, &p, &FitWindows::default(), &opts).unwrap();
    let ((fr, fi), (gr, gi)) = EXPANSION_K0_ONE;
    assert!(rel(fit.f, C64::new(fr, fi)) < 1e-8);
    assert!(rel(fit.f_prime, C64::new(gr, gi)) < 1e-8);
    let s = scattering_mode(&w, 0, &p, &opts).unwrap();
    assert!(rel(fit.f_prime / fit.f, s) < 1e-6);
    assert!(fit.remainder_exponent >= 1.4, "{}", fit.remainder_exponent);
    println!("remainder exponent {}", fit.remainder_exponent);
}

#[test]
fn expansion_fit_narrow_window_rejected() {
    let p = param(0.5, 0.2);
    let windows = FitWindows { fit: (10.0, 12.0), ..Default::default() };
    assert!(matches!(
        expansion_fit(&WarpFunction::exact_hyperbolic(), 0, &p, &windows, &RadialOptions::default()),
        Err(Error::Conditioning(_))
    ));
}

#[test]
fn tabulated_scaled_hyperbolic() {
    // φ = 3 sinh r everywhere: a cone of angle 6π; modes agree with H² at k/3 in the k-dependence
    let r: Vec<f64> = (1..=5).map(f64::from).collect();
    let phi: Vec<f64> = r.iter().map(|r| 3.0 * r.sinh()).collect();
    let w = WarpFunction::tabulated(&r, &phi).unwrap();
    let p = param(0.5, 1.0);
    let s = scattering_mode(&w, 0, &p, &RadialOptions::default()).unwrap();
    let s0 = scattering_mode(&WarpFunction::exact_hyperbolic(), 0, &p, &RadialOptions::default()).unwrap();
    // x = (2/3) e^{-r} rescales x^{1-ζ} and x^ζ by 3^{ζ-1}, 3^{-ζ}
    let expected = s0 * C64::new(3.0, 0.0).powc(2.0 * p.zeta() - 1.0);
    assert!(rel(s, expected) < 1e-8);
}
