//! Scattering matrices of rotationally symmetric surfaces `dr² + φ(r)² dθ²`, mode by mode.
//!
//! Each Fourier mode `e^{ikθ}` reduces `Δ − ζ(1−ζ)` to
//! `u'' + (φ'/φ) u' + (ζ(1−ζ) − k²/φ²) u = 0`. The solution regular at the center is matched
//! at `r = R` against `u₋ ~ x^{1−ζ}` and `u₊ ~ x^ζ`, `x = C e^{−r}`; `S_k = B/A` when
//! `u = A u₋ + B u₊`.

mod ode;
mod series;
mod warp;

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::solve_least_squares;
use crate::specialfn::SpectralParam;

pub use ode::{ScaledState, StepControl};
pub use series::{center_coefficients, is_resonant, jost_coefficients};
pub use warp::{normalize_bdf, Spline, WarpFunction, WarpKind};

/// Numerical settings shared by all radial solves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialOptions {
    pub matching_radius: f64,
    pub series_order: usize,
    pub rtol: f64,
    /// Uniform step instead of adaptive control.
    pub fixed_step: Option<f64>,
}

impl Default for RadialOptions {
    fn default() -> Self {
        Self { matching_radius: 12.0, series_order: 4, rtol: 1e-10, fixed_step: None }
    }
}

impl RadialOptions {
    fn control(&self) -> StepControl {
        StepControl { rtol: self.rtol, fixed_step: self.fixed_step }
    }
}

fn require_surface(p: &SpectralParam) -> Result<()> {
    if p.n() != 1 {
        return Err(Error::Unsupported(format!("radial solver needs n = 1, got n = {}", p.n())));
    }
    Ok(())
}

/// Right-hand side of the first-order mode system `(u, u')' = (u', −(φ'/φ)u' − (s − k²/φ²)u)`.
pub fn mode_ode_rhs<'a>(w: &'a WarpFunction, k: i64, p: &SpectralParam) -> impl Fn(f64, &[C64; 2]) -> [C64; 2] + 'a {
    let s = p.spectral_value();
    let k2 = (k * k) as f64;
    move |r, y| {
        let (dlog, inv_phi2) = w.coefficients(r);
        [y[1], -y[1] * dlog - y[0] * (s - k2 * inv_phi2)]
    }
}

/// A solution sample `(u, u')(r) = exp(log_scale) · (u, du)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSample {
    pub r: f64,
    pub u: C64,
    pub du: C64,
    pub log_scale: f64,
}

impl ModeSample {
    pub fn value(&self) -> C64 {
        self.u * self.log_scale.exp()
    }

    pub fn derivative(&self) -> C64 {
        self.du * self.log_scale.exp()
    }
}

/// Radius at which the center expansion is evaluated.
fn seed_radius(w: &WarpFunction) -> f64 {
    match w.support() {
        Some((lo, _)) => (0.5 * lo).min(0.25),
        None => 0.25,
    }
}

/// Integrates a mode solution from `a` to each point of `targets` in turn, honouring the warp
/// breakpoints.
pub fn integrate_mode(
    w: &WarpFunction,
    k: i64,
    p: &SpectralParam,
    a: f64,
    start: ScaledState,
    targets: &[f64],
    opts: &RadialOptions,
) -> Result<Vec<ModeSample>> {
    require_surface(p)?;
    let f = mode_ode_rhs(w, k, p);
    let ctl = opts.control();
    let mut h = 0.01;
    let mut r = a;
    let mut state = start;
    let breaks = w.breakpoints();
    let mut out = Vec::with_capacity(targets.len());
    for &t in targets {
        if !(t > 0.0) {
            return Err(Error::Domain(format!("radius {t} is not positive")));
        }
        let (lo, hi) = (r.min(t), r.max(t));
        let mut stops: Vec<f64> = breaks.iter().copied().filter(|&b| b > lo && b < hi).collect();
        if t < r {
            stops.reverse();
        }
        stops.push(t);
        for s in stops {
            state = ode::integrate(&f, r, s, state, &ctl, &mut h)?;
            r = s;
        }
        out.push(ModeSample { r, u: state.y[0], du: state.y[1], log_scale: state.log_scale });
    }
    Ok(out)
}

/// The solution with `u ~ r^{|k|/A_in}` at the center, sampled at increasing radii.
pub fn regular_solution(
    w: &WarpFunction,
    k: i64,
    p: &SpectralParam,
    r_grid: &[f64],
    opts: &RadialOptions,
) -> Result<Vec<ModeSample>> {
    require_surface(p)?;
    if r_grid.windows(2).any(|v| v[1] < v[0]) {
        return Err(Error::Domain("radii must be nondecreasing".into()));
    }
    let rs = seed_radius(w);
    if r_grid.first().is_some_and(|&r| r < rs) {
        return Err(Error::Domain(format!("radii below the seed radius {rs} are not supported")));
    }
    let kappa = k.unsigned_abs() as f64 / w.inner_scale();
    let (u, du, log_scale) = series::center_seed(kappa, p.spectral_value(), rs);
    integrate_mode(w, k, p, rs, ScaledState { y: [u, du], log_scale }, r_grid, opts)
}

/// Values and radial derivatives of `u₋ ~ x^{1−ζ}` and `u₊ ~ x^ζ` at `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JostPair {
    pub minus: (C64, C64),
    pub plus: (C64, C64),
}

impl JostPair {
    /// `W(u₋, u₊) = u₋ u₊' − u₋' u₊`.
    pub fn wronskian(&self) -> C64 {
        self.minus.0 * self.plus.1 - self.minus.1 * self.plus.0
    }
}

fn check_exterior(w: &WarpFunction, r: f64) -> Result<()> {
    if let Some((_, hi)) = w.support() {
        if r < hi {
            return Err(Error::Domain(format!("radius {r} lies inside the perturbation (ends at {hi})")));
        }
    }
    Ok(())
}

/// The two series germs truncated at order `m`, evaluated at `r`.
pub fn jost_solutions(w: &WarpFunction, k: i64, p: &SpectralParam, r: f64, m: usize) -> Result<JostPair> {
    require_surface(p)?;
    check_exterior(w, r)?;
    let z = p.zeta();
    let x = normalize_bdf(w)? * (-r).exp();
    let a = w.outer_scale();
    let em = 1.0 - z;
    let cm = jost_coefficients(em, z, k, a, m)?;
    let cp = jost_coefficients(z, z, k, a, m)?;
    let (um, dum, _) = series::jost_eval(em, &cm, x);
    let (up, dup, _) = series::jost_eval(z, &cp, x);
    Ok(JostPair { minus: (um, dum), plus: (up, dup) })
}

/// Relative residual of the truncated germs in the mode equation at `r`: `(minus, plus)`.
pub fn jost_defect(w: &WarpFunction, k: i64, p: &SpectralParam, r: f64, m: usize) -> Result<(f64, f64)> {
    check_exterior(w, r)?;
    let z = p.zeta();
    let x = normalize_bdf(w)? * (-r).exp();
    let (dlog, inv_phi2) = w.coefficients(r);
    let s = p.spectral_value();
    let k2 = (k * k) as f64;
    let defect = |e: C64| -> Result<f64> {
        let c = jost_coefficients(e, z, k, w.outer_scale(), m)?;
        let (u, du, d2u) = series::jost_eval(e, &c, x);
        Ok((d2u + du * dlog + u * (s - k2 * inv_phi2)).norm() / u.norm())
    };
    Ok((defect(1.0 - z)?, defect(z)?))
}

/// Coefficients `(A, B)` of `u = A u₋ + B u₊` for a sample `u` at the matching radius.
fn match_sample(j: &JostPair, u: C64, du: C64) -> Result<(C64, C64)> {
    let wr = j.wronskian();
    let scale = (j.minus.0.norm() + j.minus.1.norm()) * (j.plus.0.norm() + j.plus.1.norm());
    if wr.norm() < 1e-12 * scale {
        return Err(Error::Conditioning("Jost germs are nearly dependent".into()));
    }
    let a = (u * j.plus.1 - du * j.plus.0) / wr;
    let b = (j.minus.0 * du - j.minus.1 * u) / wr;
    Ok((a, b))
}

/// `(A, B)` of the regular solution, scaled by `exp(-log_scale)` of the matching sample.
pub fn mode_coefficients(
    w: &WarpFunction,
    k: i64,
    p: &SpectralParam,
    opts: &RadialOptions,
) -> Result<(C64, C64, f64)> {
    let r = opts.matching_radius;
    let j = jost_solutions(w, k, p, r, opts.series_order)?;
    let s = regular_solution(w, k, p, &[r], opts)?[0];
    let (a, b) = match_sample(&j, s.u, s.du)?;
    if a.norm() * (j.minus.0.norm() + j.minus.1.norm()) < 1e-10 * (s.u.norm() + s.du.norm()) {
        return Err(Error::Pole(format!("incoming coefficient vanishes at k = {k}, ζ = {}", p.zeta())));
    }
    Ok((a, b, s.log_scale))
}

/// Exact-hyperbolic modes from the hypergeometric connection coefficients:
/// `S_k = 2^{1−2ζ} Γ(½−ζ)/Γ(ζ−½) · Γ(|k|+ζ)/Γ(|k|+1−ζ)`.
pub fn hyperbolic_mode(p: &SpectralParam, k: i64) -> Result<C64> {
    require_surface(p)?;
    let z = p.zeta();
    let k = k.unsigned_abs() as f64;
    let g = crate::specialfn::gamma_ratio(&[0.5 - z, k + z], &[z - 0.5, k + 1.0 - z])?;
    Ok(C64::new(2.0, 0.0).powc(1.0 - 2.0 * z) * g)
}

/// `S_k = B/A`.
pub fn scattering_mode(w: &WarpFunction, k: i64, p: &SpectralParam, opts: &RadialOptions) -> Result<C64> {
    let (a, b, _) = mode_coefficients(w, k, p, opts)?;
    Ok(b / a)
}

/// The diagonal scattering matrix for `|k| ≤ K`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeScatteringData {
    pub param: SpectralParam,
    pub k_max: u32,
    pub bdf_constant: f64,
    pub entries: BTreeMap<i64, C64>,
}

impl ModeScatteringData {
    pub fn get(&self, k: i64) -> Option<C64> {
        self.entries.get(&k).copied()
    }
}

/// Evaluates `f(k)` for `k = 0..=K` in parallel and merges in order, collecting failures.
fn per_mode<T: Send, F: Fn(i64) -> Result<T> + Sync>(k_max: u32, f: F) -> Result<Vec<T>> {
    let results: Vec<(i64, Result<T>)> = (0..=k_max as i64).into_par_iter().map(|k| (k, f(k))).collect();
    let mut ok = Vec::with_capacity(results.len());
    let mut errs = Vec::new();
    for (k, r) in results {
        match r {
            Ok(v) => ok.push(v),
            Err(e) => errs.push((k, e)),
        }
    }
    if errs.is_empty() {
        Ok(ok)
    } else {
        Err(Error::Modes(errs))
    }
}

pub fn scattering_matrix(
    w: &WarpFunction,
    p: &SpectralParam,
    k_max: u32,
    opts: &RadialOptions,
) -> Result<ModeScatteringData> {
    require_surface(p)?;
    let values = per_mode(k_max, |k| scattering_mode(w, k, p, opts))?;
    let mut entries = BTreeMap::new();
    for (k, v) in values.into_iter().enumerate() {
        entries.insert(k as i64, v);
        entries.insert(-(k as i64), v);
    }
    Ok(ModeScatteringData { param: *p, k_max, bdf_constant: normalize_bdf(w)?, entries })
}

/// Ratios `S_k(g)/S_k(g₀)` for `k = 0..=K`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolRatio {
    pub ratios: Vec<(i64, C64)>,
    /// Modes where `|S_k(g₀)|` was too small to divide by.
    pub flagged: Vec<i64>,
    /// `sup |ratio − 1|` over `K/2 ≤ k ≤ K`.
    pub upper_sup: f64,
    /// `α` in `|ratio − 1| ≈ c k^{−α}`, fitted over `K/2 ≤ k ≤ K`.
    pub decay_exponent: Option<f64>,
}

impl SymbolRatio {
    pub fn deviation(&self, k: i64) -> Option<f64> {
        self.ratios.iter().find(|(j, _)| *j == k).map(|(_, r)| (r - 1.0).norm())
    }
}

pub fn symbol_ratio(d: &ModeScatteringData, d0: &ModeScatteringData) -> Result<SymbolRatio> {
    if d.param != d0.param || d.k_max != d0.k_max || d.bdf_constant != d0.bdf_constant {
        return Err(Error::Domain("scattering data differ in ζ, K or normalization".into()));
    }
    let mut ratios = Vec::new();
    let mut flagged = Vec::new();
    for k in 0..=d.k_max as i64 {
        let (a, b) = (d.entries[&k], d0.entries[&k]);
        if b.norm() < 1e-300 || !(a / b).is_finite() {
            flagged.push(k);
        } else {
            ratios.push((k, a / b));
        }
    }
    let half = d.k_max as i64 / 2;
    let upper: Vec<(f64, f64)> = ratios
        .iter()
        .filter(|(k, _)| *k >= half.max(1))
        .map(|(k, r)| (*k as f64, (r - 1.0).norm()))
        .collect();
    let upper_sup = upper.iter().map(|v| v.1).fold(0.0, f64::max);
    let pts: Vec<(f64, f64)> = upper.iter().filter(|v| v.1 > 0.0).map(|(k, v)| (k.ln(), v.ln())).collect();
    let decay_exponent = fit_slope(&pts).map(|s| -s);
    Ok(SymbolRatio { ratios, flagged, upper_sup, decay_exponent })
}

/// Least-squares slope of `(x, y)` points; `None` with fewer than two distinct abscissae.
pub fn fit_slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / sxx)
}

/// Result of fitting `u ≈ f x^{1−ζ} + f' x^ζ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionFit {
    pub f: C64,
    pub f_prime: C64,
    /// Slope of `log|u − fit|` against `log x`.
    pub remainder_exponent: f64,
    pub condition: f64,
}

/// Windows (in `r`) for [`expansion_fit`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitWindows {
    /// Coefficients are fitted here.
    pub fit: (f64, f64),
    /// The remainder is measured here (larger `x`).
    pub remainder: (f64, f64),
    pub samples: usize,
}

impl Default for FitWindows {
    fn default() -> Self {
        Self { fit: (8.0, 14.0), remainder: (3.0, 8.0), samples: 61 }
    }
}

pub fn expansion_fit(
    w: &WarpFunction,
    k: i64,
    p: &SpectralParam,
    windows: &FitWindows,
    opts: &RadialOptions,
) -> Result<ExpansionFit> {
    require_surface(p)?;
    let z = p.zeta();
    let (lo, hi) = windows.fit;
    check_exterior(w, lo.min(windows.remainder.0))?;
    if !(hi > lo) || windows.samples < 4 {
        return Err(Error::Domain("empty fit window".into()));
    }
    if p.on_critical_line() {
        let period = std::f64::consts::PI / z.im.abs();
        if hi - lo < period {
            return Err(Error::Conditioning(format!(
                "window of length {} in log x is shorter than one oscillation period {period}",
                hi - lo
            )));
        }
    }
    let c = normalize_bdf(w)?;
    let ns = windows.samples;
    let grid = |(a, b): (f64, f64)| -> Vec<f64> { (0..ns).map(|i| a + (b - a) * i as f64 / (ns - 1) as f64).collect() };
    let fit_r = grid(windows.fit);
    let rem_r = grid(windows.remainder);
    let mut all: Vec<f64> = fit_r.iter().chain(rem_r.iter()).copied().collect();
    all.sort_by(f64::total_cmp);
    all.dedup();
    let samples = regular_solution(w, k, p, &all, opts)?;
    let ref_scale = samples.last().expect("non-empty").log_scale;
    let value = |r: f64| {
        let s = samples.iter().find(|s| s.r == r).expect("sampled radius");
        s.u * (s.log_scale - ref_scale).exp()
    };
    let basis = |r: f64| {
        let lx = (c * (-r).exp()).ln();
        (((1.0 - z) * lx).exp(), (z * lx).exp(), lx)
    };
    let mut a = DMatrix::<C64>::zeros(ns, 2);
    let mut b = DVector::<C64>::zeros(ns);
    for (i, &r) in fit_r.iter().enumerate() {
        let (bm, bp, lx) = basis(r);
        let wgt = (-(z.re + 2.0) * lx).exp();
        a[(i, 0)] = bm * wgt;
        a[(i, 1)] = bp * wgt;
        b[i] = value(r) * wgt;
    }
    let (sol, condition) = solve_least_squares(a, b)?;
    if condition > 1e8 {
        return Err(Error::Conditioning(format!("fit condition number {condition:e} exceeds 1e8")));
    }
    let (f, fp) = (sol[0], sol[1]);
    let mut pts = Vec::new();
    for &r in &rem_r {
        let (bm, bp, lx) = basis(r);
        let u = value(r);
        let res = (u - f * bm - fp * bp).norm();
        if res > 1e3 * opts.rtol * u.norm() {
            pts.push((lx, res.ln()));
        }
    }
    let remainder_exponent = fit_slope(&pts)
        .ok_or_else(|| Error::NonConvergence("remainder is below the integration tolerance everywhere".into()))?;
    let scale = ref_scale.exp();
    Ok(ExpansionFit { f: f * scale, f_prime: fp * scale, remainder_exponent, condition })
}

/// One-parameter family `t ↦ sinh r (1 + t·direction·ψ)` with a fixed bump.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BumpFamily {
    pub center: f64,
    pub width: f64,
    pub direction: f64,
}

impl BumpFamily {
    pub fn at(&self, t: f64) -> Result<WarpFunction> {
        WarpFunction::bump(t * self.direction, self.center, self.width)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub t: f64,
    /// `sup_{|k| ≤ K} |S_k(t) − S_k(0)|`.
    pub distance: f64,
    pub entries: Vec<C64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeformationSweep {
    pub family: BumpFamily,
    pub param: SpectralParam,
    pub k_max: u32,
    pub rows: Vec<SweepRow>,
    /// Log-log slope of `D(t)` over `[t_min, 10 t_min]` of the positive `t`.
    pub slope: Option<f64>,
}

impl DeformationSweep {
    pub fn distance(&self, t: f64) -> Option<f64> {
        self.rows.iter().find(|r| r.t == t).map(|r| r.distance)
    }
}

pub fn deform_sweep(
    family: &BumpFamily,
    p: &SpectralParam,
    k_max: u32,
    t_values: &[f64],
    opts: &RadialOptions,
) -> Result<DeformationSweep> {
    let mut ts = t_values.to_vec();
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    if !ts.contains(&0.0) {
        return Err(Error::Domain("t = 0 must be among the sweep values".into()));
    }
    let mut rows = Vec::with_capacity(ts.len());
    for &t in &ts {
        let w = family.at(t)?;
        let entries = per_mode(k_max, |k| scattering_mode(&w, k, p, opts)).map_err(|e| match e {
            Error::Modes(v) => Error::Modes(
                v.into_iter().map(|(k, e)| (k, Error::Domain(format!("t = {t}: {e}")))).collect(),
            ),
            e => e,
        });
        rows.push((t, entries?));
    }
    let base = rows.iter().find(|(t, _)| *t == 0.0).expect("t = 0 present").1.clone();
    let rows: Vec<SweepRow> = rows
        .into_iter()
        .map(|(t, entries)| {
            let distance = entries.iter().zip(&base).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            SweepRow { t, distance, entries }
        })
        .collect();
    let positive: Vec<&SweepRow> = rows.iter().filter(|r| r.t > 0.0).collect();
    let slope = positive.first().and_then(|first| {
        let pts: Vec<(f64, f64)> = positive
            .iter()
            .filter(|r| r.t <= 10.0 * first.t * (1.0 + 1e-12) && r.distance > 0.0)
            .map(|r| (r.t.ln(), r.distance.ln()))
            .collect();
        fit_slope(&pts)
    });
    Ok(DeformationSweep { family: *family, param: *p, k_max, rows, slope })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn param(re: f64, im: f64) -> SpectralParam {
        SpectralParam::new(1, C64::new(re, im)).unwrap()
    }

    #[test]
    fn rejects_other_dimensions() {
        let p = SpectralParam::new(2, C64::new(1.0, 1.0)).unwrap();
        assert!(matches!(
            scattering_mode(&WarpFunction::exact_hyperbolic(), 0, &p, &RadialOptions::default()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn regular_seed_k0() {
        let p = param(0.5, 1.0);
        let s = regular_solution(&WarpFunction::exact_hyperbolic(), 0, &p, &[0.25], &RadialOptions::default()).unwrap();
        assert!((s[0].value() - 1.0).norm() < 0.05);
    }

    #[test]
    fn seed_linearity() {
        let w = WarpFunction::bump(0.2, 3.0, 1.0).unwrap();
        let p = param(0.5, 1.0);
        let opts = RadialOptions::default();
        let rs = seed_radius(&w);
        let seed = ScaledState::new(C64::new(1.0, 0.5), C64::new(-0.3, 0.0));
        let twice = ScaledState::new(C64::new(2.0, 1.0), C64::new(-0.6, 0.0));
        let a = integrate_mode(&w, 2, &p, rs, seed, &[5.0], &opts).unwrap()[0];
        let b = integrate_mode(&w, 2, &p, rs, twice, &[5.0], &opts).unwrap()[0];
        assert!((b.value() - 2.0 * a.value()).norm() <= 1e-14 * a.value().norm());
    }

    #[test]
    fn jost_requires_exterior() {
        let w = WarpFunction::bump(0.2, 3.0, 1.0).unwrap();
        assert!(jost_solutions(&w, 0, &param(0.5, 1.0), 3.5, 4).is_err());
    }

    #[test]
    fn k0_single_entry() {
        let w = WarpFunction::exact_hyperbolic();
        let p = param(0.5, 2.0);
        let opts = RadialOptions::default();
        let d = scattering_matrix(&w, &p, 0, &opts).unwrap();
        assert_eq!(d.entries.len(), 1);
        assert_eq!(d.get(0).unwrap(), scattering_mode(&w, 0, &p, &opts).unwrap());
    }

    #[test]
    fn slope_fit() {
        assert_eq!(fit_slope(&[(0.0, 1.0), (1.0, 3.0), (2.0, 5.0)]), Some(2.0));
        assert_eq!(fit_slope(&[(0.0, 1.0)]), None);
    }
}
