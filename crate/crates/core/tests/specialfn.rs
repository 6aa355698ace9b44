mod common;

use common::oracles::{GAMMA, HYP2F1};
use hyperscat_core::specialfn::{gamma, hyp2f1, hyp2f1_series, rgamma};
use hyperscat_core::C64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn c(p: (f64, f64)) -> C64 {
    C64::new(p.0, p.1)
}

#[test]
fn gamma_matches_arbitrary_precision_reference() {
    for &(z, g) in GAMMA {
        let v = gamma(c(z)).unwrap();
        let rel = (v - c(g)).norm() / c(g).norm();
        assert!(rel < 1e-12, "Γ({z:?}) = {v}, expected {g:?}, rel {rel:e}");
    }
}

#[test]
fn hyp2f1_matches_arbitrary_precision_reference() {
    for &(a, b, cc, u, f) in HYP2F1 {
        let v = hyp2f1(c(a), c(b), c(cc), u).unwrap();
        let rel = (v - c(f)).norm() / c(f).norm();
        assert!(rel < 1e-10, "F({a:?},{b:?};{cc:?};{u}) = {v}, expected {f:?}, rel {rel:e}");
    }
}

#[test]
fn gamma_recurrence_grid() {
    let mut worst: f64 = 0.0;
    for i in 0..40 {
        for j in 0..25 {
            let z = C64::new(-19.73 + i as f64 * 0.997, -19.9 + j as f64 * 1.63);
            if z.norm() > 20.0 {
                continue;
            }
            let g1 = gamma(z + 1.0).unwrap();
            let g0 = gamma(z).unwrap();
            worst = worst.max((g1 - z * g0).norm() / g1.norm());
        }
    }
    assert!(worst <= 1e-12, "worst recurrence error {worst:e}");
}

#[test]
fn series_error_estimate_is_monotone_in_budget() {
    let a = C64::new(0.5, 2.0);
    let mut last = f64::INFINITY;
    for budget in [2, 5, 10, 50, 100, 400, 1000, 5000] {
        let s = hyp2f1_series(a, a, 2.0 * a, 0.95, budget).unwrap();
        assert!(s.error_estimate <= last);
        last = s.error_estimate;
    }
}

proptest! {
    #[test]
    fn gamma_reflection(re in -12.0f64..12.0, im in -8.0f64..8.0) {
        let z = C64::new(re, im);
        prop_assume!((re - re.round()).abs() > 1e-3 || im.abs() > 1e-3);
        let lhs = gamma(z).unwrap() * gamma(1.0 - z).unwrap();
        let rhs = PI / (PI * z).sin();
        prop_assert!((lhs - rhs).norm() / rhs.norm() <= 1e-11);
    }

    #[test]
    fn rgamma_is_reciprocal(re in -10.0f64..10.0, im in 0.01f64..10.0) {
        let z = C64::new(re, im);
        prop_assert!((rgamma(z) * gamma(z).unwrap() - 1.0).norm() < 1e-13);
    }

    #[test]
    fn gauss_contiguous_relation(
        ar in -3.0f64..3.0, ai in -3.0f64..3.0,
        br in -3.0f64..3.0, bi in -3.0f64..3.0,
        cr in 0.5f64..5.0, ci in -3.0f64..3.0,
        u in 0.0f64..0.99,
    ) {
        let (a, b, cc) = (C64::new(ar, ai), C64::new(br, bi), C64::new(cr, ci));
        // (c−a) F(a−1) + (2a − c + (b−a)u) F(a) + a(u−1) F(a+1) = 0
        let fm = hyp2f1(a - 1.0, b, cc, u).unwrap();
        let f0 = hyp2f1(a, b, cc, u).unwrap();
        let fp = hyp2f1(a + 1.0, b, cc, u).unwrap();
        let t1 = (cc - a) * fm;
        let t2 = (2.0 * a - cc + (b - a) * u) * f0;
        let t3 = a * (u - 1.0) * fp;
        let scale = t1.norm() + t2.norm() + t3.norm();
        prop_assert!((t1 + t2 + t3).norm() <= 1e-9 * scale, "residual {}", (t1 + t2 + t3).norm() / scale);
    }
}
