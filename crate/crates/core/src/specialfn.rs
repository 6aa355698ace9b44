//! Complex special functions: Gamma, Gauss ₂F₁ on [0,1), and the Green normalization constant.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Boundary dimension `n` (the space has dimension `n + 1`) and complex spectral parameter `ζ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParam {
    n: u32,
    zeta: C64,
}

impl SpectralParam {
    pub fn new(n: u32, zeta: C64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("boundary dimension n must be >= 1".into()));
        }
        if !zeta.re.is_finite() || !zeta.im.is_finite() {
            return Err(Error::Domain(format!("non-finite spectral parameter {zeta}")));
        }
        Ok(Self { n, zeta })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn zeta(&self) -> C64 {
        self.zeta
    }

    pub fn nf(&self) -> f64 {
        self.n as f64
    }

    /// `ζ(n − ζ)`.
    pub fn spectral_value(&self) -> C64 {
        self.zeta * (self.nf() - self.zeta)
    }

    /// The reflected parameter `n − ζ`.
    pub fn reflected(&self) -> Self {
        Self { n: self.n, zeta: self.nf() - self.zeta }
    }

    pub fn conj(&self) -> Self {
        Self { n: self.n, zeta: self.zeta.conj() }
    }

    pub fn with_zeta(&self, zeta: C64) -> Self {
        Self { n: self.n, zeta }
    }

    /// True when `Re ζ = n/2` up to rounding.
    pub fn on_critical_line(&self) -> bool {
        (self.zeta.re - 0.5 * self.nf()).abs() <= 1e-14 * (1.0 + self.nf())
    }

    /// Rejects the exceptional set `ζ ∈ ½(n − ℕ₀)`, which contains `ζ = n/2`.
    pub fn ensure_regular(&self) -> Result<()> {
        let two = 2.0 * self.zeta;
        if self.zeta.im == 0.0 && two.re == two.re.round() && two.re <= self.nf() {
            return Err(Error::Pole(format!(
                "ζ = {} lies in the exceptional set ½(n − ℕ₀) for n = {}",
                self.zeta.re, self.n
            )));
        }
        Ok(())
    }
}

const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_923_517,
    -59.597_960_355_475_491_248,
    14.136_097_974_741_747_174,
    -0.491_913_816_097_620_199_78,
    0.339_946_499_848_118_886_99e-4,
    0.465_236_289_270_485_756_65e-4,
    -0.983_744_753_048_795_646_77e-4,
    0.158_088_703_224_912_488_84e-3,
    -0.210_264_441_724_104_883_19e-3,
    0.217_439_618_115_212_643_20e-3,
    -0.164_318_106_536_763_890_22e-3,
    0.844_182_239_838_527_432_93e-4,
    -0.261_908_384_015_814_086_70e-4,
    0.368_991_826_595_316_227_04e-5,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

pub(crate) fn is_nonpositive_integer(z: C64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// `sin(πz)` with the real part reduced exactly, so integers give exact zeros.
pub(crate) fn sin_pi(z: C64) -> C64 {
    let k = z.re.round();
    let (s, c) = (PI * (z.re - k)).sin_cos();
    let y = PI * z.im;
    let v = C64::new(s * y.cosh(), c * y.sinh());
    if k.rem_euclid(2.0) == 0.0 {
        v
    } else {
        -v
    }
}

pub(crate) fn cos_pi(z: C64) -> C64 {
    sin_pi(z + 0.5)
}

fn ln_gamma_right(z: C64) -> C64 {
    let z = z - 1.0;
    let mut a = C64::new(LANCZOS[0], 0.0);
    for (k, c) in LANCZOS.iter().enumerate().skip(1) {
        a += *c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + a.ln()
}

/// A logarithm of `Γ(z)`. The imaginary part is not reduced to the principal branch.
pub fn ln_gamma(z: C64) -> Result<C64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("Γ has a pole at {}", z.re)));
    }
    if z.re < 0.5 {
        Ok(C64::new(PI.ln(), 0.0) - sin_pi(z).ln() - ln_gamma_right(1.0 - z))
    } else {
        Ok(ln_gamma_right(z))
    }
}

pub fn gamma(z: C64) -> Result<C64> {
    let v = ln_gamma(z)?.exp();
    Ok(if z.im == 0.0 { C64::new(v.re, 0.0) } else { v })
}

/// `1/Γ(z)`, which is entire: zero at the poles of Γ.
pub fn rgamma(z: C64) -> C64 {
    match ln_gamma(z) {
        Ok(l) => {
            let v = (-l).exp();
            if z.im == 0.0 {
                C64::new(v.re, 0.0)
            } else {
                v
            }
        }
        Err(_) => C64::new(0.0, 0.0),
    }
}

/// `Π Γ(num_i) / Π Γ(den_j)`, evaluated in log form.
/// A pole in the numerator is an error; a pole in the denominator gives zero.
pub fn gamma_ratio(num: &[C64], den: &[C64]) -> Result<C64> {
    let mut l = C64::new(0.0, 0.0);
    for &z in num {
        l += ln_gamma(z)?;
    }
    for &z in den {
        if is_nonpositive_integer(z) {
            return Ok(C64::new(0.0, 0.0));
        }
        l -= ln_gamma(z)?;
    }
    Ok(l.exp())
}

const DIGAMMA_ASYMPTOTIC: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

pub(crate) fn digamma(z: C64) -> C64 {
    if z.re < 0.5 {
        return digamma(1.0 - z) - PI * cos_pi(z) / sin_pi(z);
    }
    let mut z = z;
    let mut acc = C64::new(0.0, 0.0);
    while z.norm() < 10.0 {
        acc -= 1.0 / z;
        z += 1.0;
    }
    let z2 = 1.0 / (z * z);
    let mut p = C64::new(0.0, 0.0);
    for c in DIGAMMA_ASYMPTOTIC.iter().rev() {
        p = (p + *c) * z2;
    }
    acc + z.ln() - 0.5 / z - p
}

/// Neumaier-compensated complex accumulator.
#[derive(Debug, Default, Clone, Copy)]
struct Compensated {
    sum: C64,
    comp: C64,
}

impl Compensated {
    fn add(&mut self, x: C64) {
        let (s_re, c_re) = two_sum(self.sum.re, x.re);
        let (s_im, c_im) = two_sum(self.sum.im, x.im);
        self.sum = C64::new(s_re, s_im);
        self.comp += C64::new(c_re, c_im);
    }

    fn value(&self) -> C64 {
        self.sum + self.comp
    }
}

fn two_sum(s: f64, x: f64) -> (f64, f64) {
    let t = s + x;
    let c = if s.abs() >= x.abs() { (s - t) + x } else { (x - t) + s };
    (t, c)
}

/// Maximum number of series terms before a summation is declared non-convergent.
pub const SERIES_BUDGET: usize = 100_000;

/// Result of a truncated hypergeometric summation.
#[derive(Debug, Clone, Copy)]
pub struct SeriesSum {
    pub value: C64,
    /// Smallest error bound observed along the summation; never increases with the budget.
    pub error_estimate: f64,
    pub terms: usize,
    pub converged: bool,
}

/// Direct summation of `Σ (a)_j (b)_j / ((c)_j j!) u^j` with at most `max_terms` terms.
pub fn hyp2f1_series(a: C64, b: C64, c: C64, u: f64, max_terms: usize) -> Result<SeriesSum> {
    if is_nonpositive_integer(c) {
        return Err(Error::Pole(format!("₂F₁ with c = {} (nonpositive integer)", c.re)));
    }
    let mut acc = Compensated::default();
    let mut term = C64::new(1.0, 0.0);
    acc.add(term);
    let mut abs_sum = 1.0;
    let mut best = f64::INFINITY;
    let mut terms = 1;
    if u == 0.0 {
        return Ok(SeriesSum { value: term, error_estimate: 0.0, terms, converged: true });
    }
    let eps = f64::EPSILON;
    while terms < max_terms {
        let j = (terms - 1) as f64;
        let num = (a + j) * (b + j);
        if num.norm() == 0.0 {
            best = best.min(2.0 * eps * abs_sum);
            return Ok(SeriesSum { value: acc.value(), error_estimate: best, terms, converged: true });
        }
        term *= num / ((c + j) * (j + 1.0)) * u;
        acc.add(term);
        abs_sum += term.norm();
        terms += 1;

        let jn = j + 1.0;
        let rho = ((a + jn) * (b + jn) / ((c + jn) * (jn + 1.0))).norm() * u;
        let rho = rho.max(u);
        let tail = if rho < 1.0 { term.norm() * rho / (1.0 - rho) } else { f64::INFINITY };
        best = best.min(tail + 2.0 * eps * abs_sum);
        let value = acc.value();
        if rho < 1.0 && tail <= 0.25 * eps * value.norm() {
            return Ok(SeriesSum { value, error_estimate: best, terms, converged: true });
        }
        if term.norm() == 0.0 {
            return Ok(SeriesSum { value, error_estimate: best, terms, converged: true });
        }
    }
    Ok(SeriesSum { value: acc.value(), error_estimate: best, terms, converged: false })
}

fn series_checked(a: C64, b: C64, c: C64, u: f64) -> Result<C64> {
    let s = hyp2f1_series(a, b, c, u, SERIES_BUDGET)?;
    if !s.converged {
        return Err(Error::NonConvergence(format!(
            "₂F₁({a}, {b}; {c}; {u}) did not converge in {SERIES_BUDGET} terms (error estimate {:.3e})",
            s.error_estimate
        )));
    }
    Ok(s.value)
}

/// Gauss hypergeometric function `F(a, b; c; u)` for `u ∈ [0, 1)`.
pub fn hyp2f1(a: C64, b: C64, c: C64, u: f64) -> Result<C64> {
    hyp2f1_complement(a, b, c, u, 1.0 - u)
}

/// Above this argument the series is replaced by a connection formula in `1 − u`.
const CONNECTION_CUTOFF: f64 = 0.7;
/// `c − a − b` within this distance of an integer is treated as exactly integral.
const INTEGER_SNAP: f64 = 1e-12;
/// Between the snap and this distance the connection formula cancels badly; sum directly.
const NEAR_INTEGER: f64 = 1e-6;
/// Largest `u` for which direct summation fits in the term budget.
const DIRECT_LIMIT: f64 = 0.9996;

/// As [`hyp2f1`], with the complement `w = 1 − u` supplied by the caller.
/// Passing an accurately computed `w` preserves precision as `u → 1`.
pub fn hyp2f1_complement(a: C64, b: C64, c: C64, u: f64, w: f64) -> Result<C64> {
    if is_nonpositive_integer(c) {
        return Err(Error::Pole(format!("₂F₁ with c = {} (nonpositive integer)", c.re)));
    }
    // u may round to 1 while the supplied complement is still positive.
    if !(0.0..=1.0).contains(&u) || !(w > 0.0) {
        return Err(Error::Domain(format!("₂F₁ argument u = {u} outside [0, 1)")));
    }
    if u == 0.0 {
        return Ok(C64::new(1.0, 0.0));
    }
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) || u <= CONNECTION_CUTOFF {
        return series_checked(a, b, c, u);
    }
    let m = c - a - b;
    let mr = m.re.round();
    let dist = C64::new(m.re - mr, m.im).norm();
    if dist <= INTEGER_SNAP * (1.0 + mr.abs()) {
        let mi = mr as i64;
        if mi >= 0 {
            degenerate(a, b, mi as u64, w)
        } else {
            // Euler: F(a,b;c;u) = w^{c−a−b} F(c−a, c−b; c; u), with c − (c−a) − (c−b) = −m > 0.
            Ok(C64::new(w, 0.0).powc(m) * hyp2f1_complement(c - a, c - b, c, u, w)?)
        }
    } else if dist < NEAR_INTEGER {
        if u > DIRECT_LIMIT {
            return Err(Error::NonConvergence(format!(
                "₂F₁ with c − a − b = {m} within {NEAR_INTEGER:e} of an integer and u = {u} > {DIRECT_LIMIT}"
            )));
        }
        series_checked(a, b, c, u)
    } else {
        let g1 = gamma_ratio(&[c, m], &[c - a, c - b])?;
        let g2 = gamma_ratio(&[c, -m], &[a, b])?;
        let mut v = C64::new(0.0, 0.0);
        if g1.norm() != 0.0 {
            v += g1 * series_checked(a, b, 1.0 - m, w)?;
        }
        if g2.norm() != 0.0 {
            v += g2 * C64::new(w, 0.0).powc(m) * series_checked(c - a, c - b, 1.0 + m, w)?;
        }
        Ok(v)
    }
}

/// `F(a, b; a + b + m; 1 − w)` for integer `m ≥ 0` (logarithmic case of the connection formula).
fn degenerate(a: C64, b: C64, m: u64, w: f64) -> Result<C64> {
    let mf = m as f64;
    let c = a + b + mf;
    let mut finite = C64::new(0.0, 0.0);
    if m > 0 {
        let mut t = C64::new(1.0, 0.0);
        let mut s = Compensated::default();
        s.add(t);
        for j in 0..(m - 1) {
            let jf = j as f64;
            t *= (a + jf) * (b + jf) / ((jf + 1.0) * (1.0 - mf + jf)) * w;
            s.add(t);
        }
        finite = gamma_ratio(&[C64::new(mf, 0.0), c], &[a + mf, b + mf])? * s.value();
    }
    let coef = gamma_ratio(&[c], &[a, b])?;
    if coef.norm() == 0.0 {
        return Ok(finite);
    }
    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
    let lnw = w.ln();
    // ψ(j+1), ψ(j+m+1), ψ(a+m+j), ψ(b+m+j) advanced by recurrence.
    let mut psi1 = -EULER_GAMMA;
    let mut psi_m = -EULER_GAMMA + (1..=m).map(|i| 1.0 / i as f64).sum::<f64>();
    let mut psi_a = digamma(a + mf);
    let mut psi_b = digamma(b + mf);
    let mut t = C64::new(1.0 / (1..=m).map(|i| i as f64).product::<f64>(), 0.0);
    let mut s = Compensated::default();
    let mut j = 0usize;
    loop {
        let bracket = lnw - psi1 - psi_m + psi_a + psi_b;
        let contrib = t * bracket;
        s.add(contrib);
        let jf = j as f64;
        let am = a + mf + jf;
        let bm = b + mf + jf;
        if (t.norm() * (1.0 + bracket.norm()) <= 0.25 * f64::EPSILON * s.value().norm() && j > 2)
            || am.norm() == 0.0
            || bm.norm() == 0.0
        {
            break;
        }
        j += 1;
        if j >= SERIES_BUDGET {
            return Err(Error::NonConvergence(format!(
                "logarithmic ₂F₁ series for a = {a}, b = {b}, m = {m} exceeded {SERIES_BUDGET} terms"
            )));
        }
        t *= am * bm / ((jf + 1.0) * (jf + 1.0 + mf)) * w;
        psi1 += 1.0 / (jf + 1.0);
        psi_m += 1.0 / (jf + 1.0 + mf);
        psi_a += 1.0 / am;
        psi_b += 1.0 / bm;
    }
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    Ok(finite - sign * w.powi(m as i32) * coef * s.value())
}

/// Green normalization `c_ζ = π^{−n/2} 2^{−2ζ−1} Γ(ζ)/Γ(ζ − n/2 + 1)`.
pub fn c_zeta(p: &SpectralParam) -> Result<C64> {
    let z = p.zeta();
    let hn = 0.5 * p.nf();
    for arg in [z, z - hn + 1.0] {
        if is_nonpositive_integer(arg) {
            return Err(Error::Pole(format!("c_ζ: Γ({}) is infinite", arg.re)));
        }
    }
    let g = gamma_ratio(&[z], &[z - hn + 1.0])?;
    Ok(PI.powf(-hn) * C64::new(2.0, 0.0).powc(-2.0 * z - 1.0) * g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn gamma_trivial_values() {
        assert!((gamma(c(1.0, 0.0)).unwrap() - 1.0).norm() < 1e-15);
        assert!((gamma(c(0.5, 0.0)).unwrap() - PI.sqrt()).norm() < 1e-15);
        assert!((gamma(c(6.0, 0.0)).unwrap() - 120.0).norm() < 1e-12);
    }

    #[test]
    fn gamma_poles_are_errors() {
        for k in 0..5 {
            assert!(gamma(c(-(k as f64), 0.0)).unwrap_err().is_pole());
        }
        assert_eq!(rgamma(c(-3.0, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn sin_pi_exact_at_integers() {
        for k in -6..6 {
            assert_eq!(sin_pi(c(k as f64, 0.0)).re, 0.0);
        }
    }

    #[test]
    fn digamma_known_values() {
        assert!((digamma(c(1.0, 0.0)) + 0.577_215_664_901_532_9).norm() < 1e-14);
        assert!((digamma(c(0.5, 0.0)) - (-0.577_215_664_901_532_9 - 2.0 * 2f64.ln())).norm() < 1e-14);
        let z = c(-2.3, 1.7);
        assert!((digamma(z + 1.0) - digamma(z) - 1.0 / z).norm() < 1e-13);
    }

    #[test]
    fn hyp2f1_at_zero_is_one() {
        assert_eq!(hyp2f1(c(2.0, 1.0), c(0.3, 0.0), c(1.5, -2.0), 0.0).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn hyp2f1_log_closed_form() {
        for &u in &[0.1, 0.5, 0.8, 0.99, 0.999_999] {
            let v = hyp2f1(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), u).unwrap();
            let e = -(1.0 - u).ln() / u;
            assert!((v.re - e).abs() / e < 1e-13, "u={u}: {v} vs {e}");
        }
    }

    #[test]
    fn hyp2f1_pole_in_c() {
        assert!(hyp2f1(c(1.0, 0.0), c(1.0, 0.0), c(-2.0, 0.0), 0.3).unwrap_err().is_pole());
    }

    #[test]
    fn c_zeta_examples() {
        let p = SpectralParam::new(1, c(1.0, 0.0)).unwrap();
        assert!((c_zeta(&p).unwrap() - 1.0 / (4.0 * PI)).norm() < 1e-15);
        let p = SpectralParam::new(2, c(2.0, 0.0)).unwrap();
        assert!((c_zeta(&p).unwrap() - 1.0 / (32.0 * PI)).norm() < 1e-16);
        let p = SpectralParam::new(1, c(0.0, 0.0)).unwrap();
        assert!(c_zeta(&p).unwrap_err().is_pole());
    }

    #[test]
    fn spectral_param_exceptional_set() {
        assert!(SpectralParam::new(0, c(1.0, 0.0)).is_err());
        let p = SpectralParam::new(2, c(1.0, 0.0)).unwrap();
        assert!(p.ensure_regular().is_err());
        let p = SpectralParam::new(2, c(-0.5, 0.0)).unwrap();
        assert!(p.ensure_regular().is_err());
        let p = SpectralParam::new(1, c(0.5, 1.0)).unwrap();
        assert!(p.ensure_regular().is_ok());
        assert!(p.on_critical_line());
        assert_eq!(p.reflected().zeta(), c(0.5, -1.0));
    }
}
