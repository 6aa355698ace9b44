//! Convergent expansions of mode solutions at the center and at infinity.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

const CENTER_TERMS: usize = 60;

/// Coefficients in `w = r²` of `r coth r` and `(r / sinh r)²`.
fn center_coefficient_series(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut fact = vec![1.0f64; 2 * n + 2];
    for i in 1..fact.len() {
        fact[i] = fact[i - 1] * i as f64;
    }
    let sinhc: Vec<f64> = (0..n).map(|i| 1.0 / fact[2 * i + 1]).collect();
    let cosh: Vec<f64> = (0..n).map(|i| 1.0 / fact[2 * i]).collect();
    let divide = |num: &[f64], den: &[f64]| {
        let mut q = vec![0.0; n];
        for i in 0..n {
            let s: f64 = (1..=i).map(|j| den[j] * q[i - j]).sum();
            q[i] = (num[i] - s) / den[0];
        }
        q
    };
    let p = divide(&cosh, &sinhc);
    let mut sq = vec![0.0; n];
    for i in 0..n {
        sq[i] = (0..=i).map(|j| sinhc[j] * sinhc[i - j]).sum();
    }
    let mut one = vec![0.0; n];
    one[0] = 1.0;
    (p, divide(&one, &sq))
}

/// Frobenius coefficients `a_j` of `u = r^κ Σ a_j r^{2j}` for
/// `u'' + coth r u' + (s − κ²/sinh² r) u = 0`, with `a_0 = 1`.
pub fn center_coefficients(kappa: f64, s: C64, n: usize) -> Vec<C64> {
    let (p, t) = center_coefficient_series(n);
    let mut a = vec![C64::new(1.0, 0.0)];
    for j in 1..n {
        let mut acc = C64::new(0.0, 0.0);
        for i in 1..=j {
            let mut q = C64::new(-kappa * kappa * t[i], 0.0);
            if i == 1 {
                q += s;
            }
            acc += a[j - i] * (q + (kappa + 2.0 * (j - i) as f64) * p[i]);
        }
        a.push(-acc / (4.0 * j as f64 * (j as f64 + kappa)));
    }
    a
}

/// Seed `(Σ a_j r^{2j}, r^{-κ} u')` with `log_scale = κ ln r`.
pub fn center_seed(kappa: f64, s: C64, r: f64) -> (C64, C64, f64) {
    let a = center_coefficients(kappa, s, CENTER_TERMS);
    let w = r * r;
    let mut u = C64::new(0.0, 0.0);
    let mut du = C64::new(0.0, 0.0);
    let mut pw = 1.0;
    for (j, c) in a.iter().enumerate() {
        let tu = c * pw;
        u += tu;
        du += tu * ((kappa + 2.0 * j as f64) / r);
        if j > 4 && tu.norm() < 1e-18 * u.norm() {
            break;
        }
        pw *= w;
    }
    (u, du, if kappa > 0.0 { kappa * r.ln() } else { 0.0 })
}

/// True when `2ζ − 1` is an even integer, where the expansions at infinity degenerate.
pub fn is_resonant(zeta: C64) -> bool {
    let v = 2.0 * zeta - 1.0;
    v.im.abs() < 1e-12 && (v.re / 2.0 - (v.re / 2.0).round()).abs() < 1e-12
}

/// Coefficients `c_j` of `x^e Σ c_j x^{2j}` for the exterior equation with `φ = A sinh r`,
/// `x = (2/A) e^{−r}`.
pub fn jost_coefficients(e: C64, zeta: C64, k: i64, outer_scale: f64, m: usize) -> Result<Vec<C64>> {
    if is_resonant(zeta) {
        return Err(Error::Resonance(format!("2ζ − 1 = {} is an even integer", 2.0 * zeta - 1.0)));
    }
    let s = zeta * (1.0 - zeta);
    let q = outer_scale * outer_scale / 4.0;
    let k2 = (k * k) as f64;
    let p0 = |p: C64| p * p - p + s;
    let p1 = |p: C64| -2.0 * q * (p * p + s) - k2;
    let p2 = |p: C64| q * q * (p * p + p + s);
    let mut c = vec![C64::new(1.0, 0.0)];
    for j in 1..=m {
        let jf = j as f64;
        let mut acc = c[j - 1] * p1(e + 2.0 * jf - 2.0);
        if j >= 2 {
            acc += c[j - 2] * p2(e + 2.0 * jf - 4.0);
        }
        let d = p0(e + 2.0 * jf);
        if d.norm() < 1e-14 {
            return Err(Error::Resonance(format!("indicial denominator vanishes at order {j}")));
        }
        c.push(-acc / d);
    }
    Ok(c)
}

/// `(u, du/dr, d²u/dr²)` of the truncated series at `x`.
pub fn jost_eval(e: C64, coeffs: &[C64], x: f64) -> (C64, C64, C64) {
    let lx = x.ln();
    let mut u = C64::new(0.0, 0.0);
    let mut du = C64::new(0.0, 0.0);
    let mut d2u = C64::new(0.0, 0.0);
    for (j, c) in coeffs.iter().enumerate() {
        let p = e + 2.0 * j as f64;
        let term = c * (p * lx).exp();
        u += term;
        du -= term * p;
        d2u += term * p * p;
    }
    (u, du, d2u)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_series() {
        let (p, t) = center_coefficient_series(4);
        assert!((p[1] - 1.0 / 3.0).abs() < 1e-15);
        assert!((p[2] + 1.0 / 45.0).abs() < 1e-15);
        assert!((t[1] + 1.0 / 3.0).abs() < 1e-15);
        assert!((t[2] - 1.0 / 15.0).abs() < 1e-15);
    }

    #[test]
    fn k0_center_series_matches_legendre() {
        // k = 0, s = ζ(1−ζ): u = F(ζ, 1−ζ; 1; −sinh²(r/2))
        let z = C64::new(0.5, 1.0);
        let s = z * (1.0 - z);
        let a = center_coefficients(0.0, s, 30);
        assert!((a[1] + s / 4.0).norm() < 1e-15);
    }

    #[test]
    fn resonance_detection() {
        assert!(is_resonant(C64::new(0.5, 0.0)));
        assert!(is_resonant(C64::new(1.5, 0.0)));
        assert!(!is_resonant(C64::new(1.0, 0.0)));
        assert!(!is_resonant(C64::new(0.5, 1.0)));
        assert!(jost_coefficients(C64::new(-0.5, 0.0), C64::new(1.5, 0.0), 0, 1.0, 3).is_err());
    }
}
