//! The half-space model of hyperbolic space `H^{n+1}`: distance, resolvent kernel,
//! generalized eigenfunctions, Poisson-type solutions and the model scattering symbol.

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::quad::{
    try_integrate, try_integrate_breaks, try_integrate_oscillatory_tail, try_integrate_to_infinity,
    QuadOptions,
};
use crate::specialfn::{c_zeta, gamma_ratio, hyp2f1_complement, is_nonpositive_integer, SpectralParam};

/// Smallest distance accepted by [`green`]; the kernel is singular on the diagonal.
pub const MIN_GREEN_DISTANCE: f64 = 1e-8;

/// A point `(x, y)` of the upper half-space, `x > 0`, `y ∈ ℝ^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfSpacePoint {
    x: f64,
    y: Vec<f64>,
}

impl HalfSpacePoint {
    pub fn new(x: f64, y: Vec<f64>) -> Result<Self> {
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::Domain(format!("height x = {x} must be positive")));
        }
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("non-finite boundary coordinate".into()));
        }
        Ok(Self { x, y })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn dim(&self) -> usize {
        self.y.len()
    }
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| (u - v) * (u - v)).sum()
}

/// Hyperbolic distance, `cosh d = 1 + |z − z'|²/(2xx')`, evaluated as `2 asinh(|z−z'|/(2√(xx')))`.
pub fn hyp_distance(z: &HalfSpacePoint, w: &HalfSpacePoint) -> f64 {
    assert_eq!(z.dim(), w.dim(), "points of different dimension");
    let e2 = (z.x - w.x) * (z.x - w.x) + sq_dist(&z.y, &w.y);
    2.0 * (e2.sqrt() / (2.0 * (z.x * w.x).sqrt())).asinh()
}

/// `ln cosh(t)` without overflow.
fn ln_cosh(t: f64) -> f64 {
    let a = t.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

/// Resolvent kernel `G_ζ(d) = c_ζ (cosh d/2)^{−2ζ} F(ζ, ζ − (n−1)/2; 2ζ − n + 1; cosh^{−2}(d/2))`.
pub fn green(p: &SpectralParam, d: f64) -> Result<C64> {
    if !(d >= MIN_GREEN_DISTANCE) || !d.is_finite() {
        return Err(Error::Domain(format!("green: distance {d} below {MIN_GREEN_DISTANCE:e}")));
    }
    let z = p.zeta();
    let nf = p.nf();
    let c = 2.0 * z - nf + 1.0;
    if is_nonpositive_integer(c) {
        return Err(Error::Pole(format!("green: 2ζ − n + 1 = {} is a nonpositive integer", c.re)));
    }
    let cz = c_zeta(p)?;
    let h = 0.5 * d;
    let u = 1.0 / (h.cosh() * h.cosh());
    let w = h.tanh() * h.tanh();
    let f = hyp2f1_complement(z, z - 0.5 * (nf - 1.0), c, u, w)?;
    Ok(cz * (-2.0 * z * ln_cosh(h)).exp() * f)
}

pub fn green_between(p: &SpectralParam, z: &HalfSpacePoint, w: &HalfSpacePoint) -> Result<C64> {
    green(p, hyp_distance(z, w))
}

/// Closed form `E_ζ(z, y') = c_ζ [x/(x² + |y − y'|²)]^ζ`.
pub fn eigenfunction(p: &SpectralParam, z: &HalfSpacePoint, yp: &[f64]) -> Result<C64> {
    let q = z.x / (z.x * z.x + sq_dist(&z.y, yp));
    Ok(c_zeta(p)? * (p.zeta() * q.ln()).exp())
}

/// Boundary limit `lim_{x'→0} x'^{−ζ} G_ζ(z, (x', y'))`, which equals `4^ζ E_ζ(z, y')`.
pub fn green_boundary_limit(p: &SpectralParam, z: &HalfSpacePoint, yp: &[f64]) -> Result<C64> {
    Ok((p.zeta() * 4f64.ln()).exp() * eigenfunction(p, z, yp)?)
}

/// Finite-difference stencil order for [`fd_shifted_laplacian`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FdOrder {
    Second,
    Fourth,
}

fn second_derivative(f: &mut dyn FnMut(f64) -> C64, h: f64, order: FdOrder) -> C64 {
    match order {
        FdOrder::Second => (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h),
        FdOrder::Fourth => {
            (-f(2.0 * h) + 16.0 * f(h) - 30.0 * f(0.0) + 16.0 * f(-h) - f(-2.0 * h)) / (12.0 * h * h)
        }
    }
}

fn first_derivative(f: &mut dyn FnMut(f64) -> C64, h: f64, order: FdOrder) -> C64 {
    match order {
        FdOrder::Second => (f(h) - f(-h)) / (2.0 * h),
        FdOrder::Fourth => (-f(2.0 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2.0 * h)) / (12.0 * h),
    }
}

/// `(Δ − ζ(n−ζ)) u` at `z` by central differences with step `h`, where
/// `Δ = −x²(∂_x² + Σ ∂_{y_i}²) + (n−1) x ∂_x`.
pub fn fd_shifted_laplacian<F>(p: &SpectralParam, u: F, z: &HalfSpacePoint, h: f64, order: FdOrder) -> C64
where
    F: Fn(f64, &[f64]) -> C64,
{
    let x = z.x;
    let y = z.y.clone();
    let mut along_x = |t: f64| u(x + t, &y);
    let uxx = second_derivative(&mut along_x, h, order);
    let ux = first_derivative(&mut along_x, h, order);
    let mut lap = uxx;
    for i in 0..y.len() {
        let mut along_y = |t: f64| {
            let mut yy = y.clone();
            yy[i] += t;
            u(x, &yy)
        };
        lap += second_derivative(&mut along_y, h, order);
    }
    let nf = p.nf();
    -x * x * lap + (nf - 1.0) * x * ux - p.spectral_value() * u(x, &y)
}

/// `|(Δ_h − ζ(n−ζ)) E_ζ(·, y')|` at `z` with the second-order stencil.
pub fn eigen_residual(p: &SpectralParam, z: &HalfSpacePoint, yp: &[f64], h: f64) -> Result<f64> {
    let cz = c_zeta(p)?;
    let zeta = p.zeta();
    let e = |x: f64, y: &[f64]| cz * (zeta * (x / (x * x + sq_dist(y, yp))).ln()).exp();
    Ok(fd_shifted_laplacian(p, e, z, h, FdOrder::Second).norm())
}

/// A compactly supported function on the boundary `ℝ^n`.
#[derive(Clone)]
pub struct BoundaryFunction {
    f: Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>,
    center: Vec<f64>,
    support_radius: f64,
}

impl std::fmt::Debug for BoundaryFunction {
    fn fmt(&self, fmt: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fmt.debug_struct("BoundaryFunction")
            .field("center", &self.center)
            .field("support_radius", &self.support_radius)
            .finish()
    }
}

impl BoundaryFunction {
    /// Wraps `f`; values outside the ball `|y − center| < support_radius` are forced to zero.
    pub fn new<F>(center: Vec<f64>, support_radius: f64, f: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        if !(support_radius > 0.0) {
            return Err(Error::Domain("support radius must be positive".into()));
        }
        Ok(Self { f: Arc::new(f), center, support_radius })
    }

    /// `amplitude · exp(1 − 1/(1 − |y−c|²/R²))`, equal to `amplitude` at the center.
    pub fn bump(center: Vec<f64>, radius: f64, amplitude: f64) -> Result<Self> {
        let c = center.clone();
        Self::new(center, radius, move |y| {
            let s2 = sq_dist(y, &c) / (radius * radius);
            if s2 >= 1.0 {
                0.0
            } else {
                amplitude * (1.0 - 1.0 / (1.0 - s2)).exp()
            }
        })
    }

    pub fn zero(n: usize) -> Self {
        Self { f: Arc::new(|_| 0.0), center: vec![0.0; n], support_radius: 1.0 }
    }

    /// `α f + β g`, supported in a ball containing both supports.
    pub fn linear_combination(alpha: f64, f: &Self, beta: f64, g: &Self) -> Self {
        let r = f.support_radius.max(sq_dist(&f.center, &g.center).sqrt() + g.support_radius);
        let (f1, g1) = (f.clone(), g.clone());
        Self {
            f: Arc::new(move |y| alpha * f1.eval(y) + beta * g1.eval(y)),
            center: f.center.clone(),
            support_radius: r,
        }
    }

    pub fn eval(&self, y: &[f64]) -> f64 {
        if sq_dist(y, &self.center) >= self.support_radius * self.support_radius {
            0.0
        } else {
            (self.f)(y)
        }
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }
}

/// Sorted breakpoints in `[lo, hi]`: `lo`, `hi`, and `anchor ± scale·10^j` for `j = −3..=6`.
fn geometric_breaks(lo: f64, hi: f64, anchor: f64, scale: f64) -> Vec<f64> {
    let mut pts = vec![lo, hi];
    if anchor > lo && anchor < hi {
        pts.push(anchor);
    }
    for j in -3..=6 {
        let off = scale * 10f64.powi(j);
        for v in [anchor - off, anchor + off] {
            if v > lo && v < hi {
                pts.push(v);
            }
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// Default tolerances for [`poisson_solution`].
pub fn poisson_options() -> QuadOptions {
    QuadOptions::new(1e-11, 1e-11)
}

/// `u(z) = 2^{2ζ}(2ζ − n) ∫ E_ζ(z, y') f(y') dy'` for `n ∈ {1, 2}`.
pub fn poisson_solution(p: &SpectralParam, f: &BoundaryFunction, z: &HalfSpacePoint, opts: QuadOptions) -> Result<C64> {
    if f.dim() != z.dim() || z.dim() != p.n() as usize {
        return Err(Error::Domain("dimension mismatch between parameter, point and boundary data".into()));
    }
    let zeta = p.zeta();
    let pref = (zeta * 4f64.ln()).exp() * (2.0 * zeta - p.nf()) * c_zeta(p)?;
    let x = z.x;
    let kern = move |r2: f64| (zeta * (x / (x * x + r2)).ln()).exp();
    match p.n() {
        1 => {
            let y0 = z.y[0];
            let (lo, hi) = (f.center[0] - f.support_radius, f.center[0] + f.support_radius);
            let pts = geometric_breaks(lo, hi, y0, x);
            let r = try_integrate_breaks(
                |t| {
                    let dy = t - y0;
                    Ok(kern(dy * dy) * f.eval(&[t]))
                },
                &pts,
                opts,
            )?;
            Ok(pref * r.value)
        }
        2 => {
            let y0 = [z.y[0], z.y[1]];
            let dc = sq_dist(&y0, &f.center).sqrt();
            let (lo, hi) = ((dc - f.support_radius).max(0.0), dc + f.support_radius);
            let mut pts = geometric_breaks(0.0, hi, 0.0, x);
            pts.retain(|&v| v >= lo);
            if pts.first() != Some(&lo) {
                pts.insert(0, lo);
            }
            let ang_opts = QuadOptions::new(0.01 * opts.abs_tol, opts.rel_tol);
            let r = try_integrate_breaks(
                |rho| {
                    if rho == 0.0 {
                        return Ok(C64::new(0.0, 0.0));
                    }
                    let shell = try_integrate(
                        |th| Ok(C64::new(f.eval(&[y0[0] + rho * th.cos(), y0[1] + rho * th.sin()]), 0.0)),
                        0.0,
                        2.0 * PI,
                        ang_opts,
                    )?;
                    Ok(kern(rho * rho) * rho * shell.value)
                },
                &pts,
                opts,
            )?;
            Ok(pref * r.value)
        }
        n => Err(Error::Unsupported(format!("poisson_solution for n = {n}"))),
    }
}

/// Model scattering symbol `a = 2^{n−2ζ} Γ(n/2 − ζ)/Γ(ζ − n/2) |ξ|^{2ζ−n}`.
pub fn model_symbol(p: &SpectralParam, xi_norm: f64) -> Result<C64> {
    if !(xi_norm > 0.0) {
        return Err(Error::Domain(format!("|ξ| = {xi_norm} must be positive")));
    }
    let z = p.zeta();
    let hn = 0.5 * p.nf();
    let g = gamma_ratio(&[hn - z], &[z - hn])?;
    let e = 2.0 * z - p.nf();
    Ok(g * (-e * 2f64.ln()).exp() * (e * xi_norm.ln()).exp())
}

/// Trapezoidal Fourier transform `f̂(ξ) = ∫ f(y) e^{−iyξ} dy` of one-dimensional boundary data.
pub struct DiscreteFourier {
    nodes: Vec<f64>,
    values: Vec<f64>,
    h: f64,
}

impl DiscreteFourier {
    pub fn new(f: &BoundaryFunction, points: usize) -> Result<Self> {
        if f.dim() != 1 {
            return Err(Error::Unsupported("discrete Fourier transform for n ≠ 1".into()));
        }
        let (lo, hi) = (f.center[0] - f.support_radius, f.center[0] + f.support_radius);
        let h = (hi - lo) / points as f64;
        let nodes: Vec<f64> = (0..=points).map(|j| lo + j as f64 * h).collect();
        let values = nodes.iter().map(|&t| f.eval(&[t])).collect();
        Ok(Self { nodes, values, h })
    }

    pub fn transform(&self, xi: f64) -> C64 {
        let mut s = C64::new(0.0, 0.0);
        for (t, v) in self.nodes.iter().zip(&self.values) {
            if *v != 0.0 {
                s += *v * C64::from_polar(1.0, -xi * t);
            }
        }
        s * self.h
    }
}

/// `(1/2π) ∫ a(|ξ|) f̂(ξ) e^{iy₀ξ} dξ` for `n = 1`, with `f̂` from [`DiscreteFourier`].
pub fn apply_model_symbol(p: &SpectralParam, f: &BoundaryFunction, y0: f64) -> Result<C64> {
    if p.n() != 1 {
        return Err(Error::Unsupported("apply_model_symbol for n ≠ 1".into()));
    }
    let dft = DiscreteFourier::new(f, 8192)?;
    let rs = f.support_radius;
    let xi_max = 2000.0 / rs;
    let eps: f64 = 1e-7;
    let even = |xi: f64| dft.transform(xi) * C64::from_polar(1.0, xi * y0) + dft.transform(-xi) * C64::from_polar(1.0, -xi * y0);
    let e = 2.0 * p.zeta() - 1.0;
    // ∫_0^ε a(ξ) g(ξ) dξ ≈ a(1) g(0) ε^{e+1}/(e+1)
    let a1 = model_symbol(p, 1.0)?;
    let head = a1 * even(0.0) * ((e + 1.0) * eps.ln()).exp() / (e + 1.0);
    let mut pts = vec![eps];
    let mut v = eps;
    while v < 1.0 {
        v *= 10.0;
        pts.push(v.min(1.0));
    }
    let step = 10.0 / rs;
    let mut t = 1.0;
    while t < xi_max {
        t += step;
        pts.push(t.min(xi_max));
    }
    let r = try_integrate_breaks(
        |xi| Ok(model_symbol(p, xi)? * even(xi)),
        &pts,
        QuadOptions { abs_tol: 1e-10, rel_tol: 1e-11, max_intervals: 20_000 },
    )?;
    Ok((head + r.value) / (2.0 * PI))
}

/// Least-squares coefficients `(A, B)` of `u(x) ≈ A x^{n−ζ} + B x^ζ`, rows weighted by `x^{−Re ζ}`.
pub fn fit_two_term(p: &SpectralParam, xs: &[f64], values: &[C64]) -> Result<(C64, C64, f64)> {
    let z = p.zeta();
    let nf = p.nf();
    let m = xs.len();
    let mut a = DMatrix::<C64>::zeros(m, 2);
    let mut b = DVector::<C64>::zeros(m);
    for (i, (&x, &u)) in xs.iter().zip(values).enumerate() {
        let w = x.powf(-z.re);
        a[(i, 0)] = w * ((nf - z) * x.ln()).exp();
        a[(i, 1)] = w * (z * x.ln()).exp();
        b[i] = w * u;
    }
    let (sol, cond) = solve_least_squares(a, b)?;
    Ok((sol[0], sol[1], cond))
}

/// Complex least squares via SVD; returns the solution and the 2-norm condition number.
pub(crate) fn solve_least_squares(a: DMatrix<C64>, b: DVector<C64>) -> Result<(DVector<C64>, f64)> {
    let svd = a.svd(true, true);
    let sv = &svd.singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    let cond = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if !cond.is_finite() {
        return Err(Error::Conditioning("singular least-squares system".into()));
    }
    let sol = svd
        .solve(&b, 0.0)
        .map_err(|e| Error::Conditioning(format!("least-squares solve failed: {e}")))?;
    Ok((sol, cond))
}

/// Prony fit of two exponents to samples `s_j = A x_j^{e₁} + B x_j^{e₂}` on a geometric grid
/// `x_j = x₀ q^j`. Returns the exponents ordered by imaginary part.
pub fn fit_two_exponents(q: f64, samples: &[C64]) -> Result<(C64, C64)> {
    let m = samples.len();
    if m < 5 {
        return Err(Error::Domain("at least five samples are needed".into()));
    }
    let rows = m - 2;
    let mut a = DMatrix::<C64>::zeros(rows, 2);
    let mut b = DVector::<C64>::zeros(rows);
    for j in 0..rows {
        a[(j, 0)] = samples[j + 1];
        a[(j, 1)] = samples[j];
        b[j] = samples[j + 2];
    }
    let (sol, _) = solve_least_squares(a, b)?;
    let (p1, p0) = (sol[0], sol[1]);
    let disc = (p1 * p1 + 4.0 * p0).sqrt();
    let l1 = 0.5 * (p1 + disc);
    let l2 = 0.5 * (p1 - disc);
    let lq = q.ln();
    let (e1, e2) = (l1.ln() / lq, l2.ln() / lq);
    Ok(if e1.im <= e2.im { (e1, e2) } else { (e2, e1) })
}

/// `J_m(x)` for integer `m` from the periodic integral `(1/2π)∫ cos(mτ − x sin τ) dτ` by the
/// trapezoidal rule, which converges geometrically once the node count exceeds `|x| + m`.
pub fn bessel_j_int(m: i32, x: f64) -> f64 {
    let n = (2.0 * (x.abs() + m.unsigned_abs() as f64) + 64.0) as usize;
    let h = 2.0 * PI / n as f64;
    let mut s = 0.0;
    for j in 0..n {
        let t = j as f64 * h;
        s += (m as f64 * t - x * t.sin()).cos();
    }
    s / n as f64
}

/// Fourier transform of `W_x(w) = x^ζ (|w|² + x²)^{−ζ}` at radius `|ξ|`, by quadrature.
/// Supported for `n ∈ {1, 2, 3}`.
pub fn w_hat_numeric(p: &SpectralParam, x: f64, xi: f64) -> Result<C64> {
    if !(x > 0.0 && xi > 0.0) {
        return Err(Error::Domain("x and |ξ| must be positive".into()));
    }
    let z = p.zeta();
    let w_x = move |r: f64| (z * x.ln() - z * (r * r + x * x).ln()).exp();
    let opts = QuadOptions::new(1e-13, 1e-12);
    let half = PI / xi;
    let start = (half * (40.0 * x / half).ceil()).max(4.0 * half);
    let head_pts = geometric_breaks(0.0, start, 0.0, x);
    let radial = |g: &dyn Fn(f64) -> C64| -> Result<C64> {
        let head = try_integrate_breaks(|r| Ok(g(r)), &head_pts, opts)?;
        let tail = try_integrate_oscillatory_tail(|r| Ok(g(r)), start, half, QuadOptions::new(1e-13, 1e-12), 400)?;
        Ok(head.value + tail.value)
    };
    match p.n() {
        1 => Ok(2.0 * radial(&|r| w_x(r) * (r * xi).cos())?),
        2 => Ok(2.0 * PI * radial(&|r| w_x(r) * bessel_j_int(0, r * xi) * r)?),
        3 => Ok(4.0 * PI / xi * radial(&|r| w_x(r) * (r * xi).sin() * r)?),
        n => Err(Error::Unsupported(format!("Ŵ_x quadrature for n = {n}"))),
    }
}

/// Two-term small-`x` prediction
/// `π^{n/2}[Γ(ζ−n/2)/Γ(ζ)] x^{n−ζ} + π^{n/2}[Γ(n/2−ζ)/Γ(ζ)] x^ζ (|ξ|/2)^{2ζ−n}`.
pub fn w_hat_predicted(p: &SpectralParam, x: f64, xi: f64) -> Result<C64> {
    let z = p.zeta();
    let nf = p.nf();
    let hn = 0.5 * nf;
    let pi_n = PI.powf(hn);
    let t1 = pi_n * gamma_ratio(&[z - hn], &[z])? * ((nf - z) * x.ln()).exp();
    let t2 = pi_n * gamma_ratio(&[hn - z], &[z])? * (z * x.ln()).exp() * ((2.0 * z - nf) * (0.5 * xi).ln()).exp();
    Ok(t1 + t2)
}

pub fn w_hat_asymptotics(p: &SpectralParam, x: f64, xi: f64) -> Result<(C64, C64)> {
    Ok((w_hat_numeric(p, x, xi)?, w_hat_predicted(p, x, xi)?))
}

/// Both forms of the resolvent difference identity at a pair of points.
#[derive(Debug, Clone, Copy)]
pub struct IdentityResidual {
    /// `|G_{n−ζ} − G_ζ − (2ζ − n) ∫ Ê_ζ(z,y) Ê_{n−ζ}(z',y) dy|` with `Ê` the boundary limit of the kernel.
    pub residual: f64,
    /// The same with coefficient `(n − 2ζ)` and the closed-form `E_ζ` in place of `Ê_ζ`.
    pub literal_residual: f64,
    pub green_difference: C64,
    /// `∫ E_ζ(z,y) E_{n−ζ}(z',y) dy` with the closed-form eigenfunctions.
    pub pairing: C64,
}

/// Integral over `ℝ^n` of `E_ζ(z, y) E_{n−ζ}(z', y)` (closed-form eigenfunctions), `n ∈ {1, 2}`.
fn eigen_pairing(p: &SpectralParam, z: &HalfSpacePoint, w: &HalfSpacePoint) -> Result<C64> {
    let q = p.reflected();
    let cz = c_zeta(p)? * c_zeta(&q)?;
    let (s, t) = (p.zeta(), q.zeta());
    let opts = QuadOptions::new(1e-13, 1e-11);
    let integrand = |y: &[f64]| -> C64 {
        let a = z.x / (z.x * z.x + sq_dist(&z.y, y));
        let b = w.x / (w.x * w.x + sq_dist(&w.y, y));
        (s * a.ln() + t * b.ln()).exp()
    };
    match p.n() {
        1 => {
            let (y0, y1) = (z.y[0].min(w.y[0]), z.y[0].max(w.y[0]));
            let scale = z.x.min(w.x);
            let lo = y0 - 50.0 * z.x.max(w.x);
            let hi = y1 + 50.0 * z.x.max(w.x);
            let mut pts = geometric_breaks(lo, hi, z.y[0], scale);
            pts.extend(geometric_breaks(lo, hi, w.y[0], scale));
            pts.sort_by(f64::total_cmp);
            pts.dedup();
            let mid = try_integrate_breaks(|y| Ok(integrand(&[y])), &pts, opts)?;
            let right = try_integrate_to_infinity(|y| Ok(integrand(&[y])), hi, opts)?;
            let left = try_integrate_to_infinity(|y| Ok(integrand(&[-y])), -lo, opts)?;
            Ok(cz * (mid.value + right.value + left.value))
        }
        2 => {
            let c = [z.y[0], z.y[1]];
            let sep = sq_dist(&z.y, &w.y).sqrt();
            let big = sep + 50.0 * z.x.max(w.x);
            let mut pts = geometric_breaks(0.0, big, 0.0, z.x.min(w.x));
            if sep > 0.0 {
                pts.extend(geometric_breaks(0.0, big, sep, w.x));
                pts.sort_by(f64::total_cmp);
                pts.dedup();
            }
            let phi0 = (w.y[1] - c[1]).atan2(w.y[0] - c[0]);
            let shell = |rho: f64| -> Result<C64> {
                let r = try_integrate_breaks(
                    |th| Ok(integrand(&[c[0] + rho * th.cos(), c[1] + rho * th.sin()])),
                    &[phi0 - PI, phi0, phi0 + PI],
                    QuadOptions::new(1e-15, 1e-12),
                )?;
                Ok(rho * r.value)
            };
            let mid = try_integrate_breaks(shell, &pts, opts)?;
            let tail = try_integrate_to_infinity(shell, big, opts)?;
            Ok(cz * (mid.value + tail.value))
        }
        n => Err(Error::Unsupported(format!("eigenfunction pairing for n = {n}"))),
    }
}

/// Resolvent difference identity residuals at `(z, z')` for `n ∈ {1, 2}`.
pub fn resolvent_identity_residual(p: &SpectralParam, z: &HalfSpacePoint, w: &HalfSpacePoint) -> Result<IdentityResidual> {
    let d = hyp_distance(z, w);
    let q = p.reflected();
    let diff = green(&q, d)? - green(p, d)?;
    let nf = p.nf();
    let two_zeta_minus_n = 2.0 * p.zeta() - nf;
    if two_zeta_minus_n.norm() == 0.0 {
        return Ok(IdentityResidual {
            residual: diff.norm(),
            literal_residual: diff.norm(),
            green_difference: diff,
            pairing: C64::new(0.0, 0.0),
        });
    }
    let pairing = eigen_pairing(p, z, w)?;
    // Boundary limits carry 4^ζ · 4^{n−ζ} = 4^n.
    let limit_pairing = 4f64.powf(nf) * pairing;
    Ok(IdentityResidual {
        residual: (diff - two_zeta_minus_n * limit_pairing).norm(),
        literal_residual: (diff + two_zeta_minus_n * pairing).norm(),
        green_difference: diff,
        pairing,
    })
}

/// A smooth function supported in a hyperbolic ball, with `(Δ − s)f` known analytically.
pub trait InteriorTestFunction: Sync {
    fn value(&self, z: &HalfSpacePoint) -> f64;
    fn shifted_laplacian(&self, p: &SpectralParam, z: &HalfSpacePoint) -> C64;
    /// Center and hyperbolic radius of a ball containing the support.
    fn support(&self) -> (&HalfSpacePoint, f64);
    fn scaled(&self, factor: f64) -> Box<dyn InteriorTestFunction>;
}

/// `f(z) = A exp(−(d(z, c)/σ)²)` cut off at hyperbolic radius `8σ`.
#[derive(Debug, Clone)]
pub struct HyperbolicBump {
    pub center: HalfSpacePoint,
    pub width: f64,
    pub amplitude: f64,
}

impl HyperbolicBump {
    pub fn new(center: HalfSpacePoint, width: f64) -> Result<Self> {
        if !(width > 0.0) {
            return Err(Error::Domain("bump width must be positive".into()));
        }
        Ok(Self { center, width, amplitude: 1.0 })
    }

    fn cutoff(&self) -> f64 {
        8.0 * self.width
    }

    fn profile(&self, d: f64) -> (f64, f64, f64) {
        if d >= self.cutoff() {
            return (0.0, 0.0, 0.0);
        }
        let s2 = self.width * self.width;
        let v = self.amplitude * (-d * d / s2).exp();
        (v, -2.0 * d / s2 * v, (-2.0 / s2 + 4.0 * d * d / (s2 * s2)) * v)
    }
}

impl InteriorTestFunction for HyperbolicBump {
    fn value(&self, z: &HalfSpacePoint) -> f64 {
        self.profile(hyp_distance(z, &self.center)).0
    }

    fn shifted_laplacian(&self, p: &SpectralParam, z: &HalfSpacePoint) -> C64 {
        let d = hyp_distance(z, &self.center);
        let (v, d1, d2) = self.profile(d);
        let nf = p.nf();
        // radial Laplacian −(φ'' + n coth d φ'); at the center the two terms merge into −(n+1)φ''
        let lap = if d < 1e-7 { -(nf + 1.0) * d2 } else { -(d2 + nf * d1 / d.tanh()) };
        lap - p.spectral_value() * v
    }

    fn support(&self) -> (&HalfSpacePoint, f64) {
        (&self.center, self.cutoff())
    }

    fn scaled(&self, factor: f64) -> Box<dyn InteriorTestFunction> {
        Box::new(Self { amplitude: self.amplitude * factor, ..self.clone() })
    }
}

/// `|∫ G_ζ(d(z, z')) [(Δ − ζ(n−ζ)) f](z') dg(z') − f(z)|` for `n = 1`, integrating in
/// Euclidean polar coordinates centered at the singular point `z`.
pub fn green_delta_residual(p: &SpectralParam, f: &dyn InteriorTestFunction, z: &HalfSpacePoint) -> Result<f64> {
    if p.n() != 1 || z.dim() != 1 {
        return Err(Error::Unsupported("green_delta_residual is implemented for n = 1".into()));
    }
    let (c, radius) = f.support();
    // A hyperbolic ball is a Euclidean ball with center (x_c cosh R, y_c) and radius x_c sinh R.
    let (bx, by, br) = (c.x() * radius.cosh(), c.y()[0], c.x() * radius.sinh());
    let (zx, zy) = (z.x(), z.y()[0]);
    let rho_min = 1e-6 * zx;
    let inner_opts = QuadOptions::new(1e-13, 1e-10);
    let outer_opts = QuadOptions::new(1e-11, 1e-9);
    let ray = |theta: f64| -> Result<C64> {
        let (ct, st) = (theta.cos(), theta.sin());
        // |z + ρe − B|² = br²
        let (dx, dy) = (zx - bx, zy - by);
        let bq = ct * dx + st * dy;
        let cq = dx * dx + dy * dy - br * br;
        let disc = bq * bq - cq;
        if disc <= 0.0 {
            return Ok(C64::new(0.0, 0.0));
        }
        let sq = disc.sqrt();
        let (r0, r1) = ((-bq - sq).max(rho_min), -bq + sq);
        if r1 <= r0 {
            return Ok(C64::new(0.0, 0.0));
        }
        let mut pts = vec![r0];
        let mut v = r0;
        while v * 10.0 < r1 {
            v *= 10.0;
            pts.push(v);
        }
        pts.push(r1);
        let r = try_integrate_breaks(
            |rho| {
                let w = HalfSpacePoint::new(zx + rho * ct, vec![zy + rho * st])?;
                let g = green(p, hyp_distance(z, &w))?;
                Ok(g * f.shifted_laplacian(p, &w) * rho / (w.x() * w.x()))
            },
            &pts,
            inner_opts,
        )?;
        Ok(r.value)
    };
    let angles: Vec<f64> = (0..=8).map(|j| j as f64 * PI / 4.0).collect();
    let total = try_integrate_breaks(ray, &angles, outer_opts)?;
    Ok((total.value - f.value(z)).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> HalfSpacePoint {
        HalfSpacePoint::new(x, vec![y]).unwrap()
    }

    fn sp(n: u32, re: f64, im: f64) -> SpectralParam {
        SpectralParam::new(n, C64::new(re, im)).unwrap()
    }

    #[test]
    fn distance_examples() {
        assert_eq!(hyp_distance(&pt(1.0, 0.0), &pt(1.0, 0.0)), 0.0);
        assert!((hyp_distance(&pt(1.0, 0.0), &pt(1.0, 1.0)) - 1.5f64.acosh()).abs() < 1e-15);
        let (a, b) = (pt(0.7, -0.2), pt(1.9, 2.5));
        let (a3, b3) = (pt(2.1, -0.6), pt(5.7, 7.5));
        assert!((hyp_distance(&a, &b) - hyp_distance(&a3, &b3)).abs() < 1e-14);
    }

    #[test]
    fn point_requires_positive_height() {
        assert!(HalfSpacePoint::new(0.0, vec![0.0]).is_err());
        assert!(HalfSpacePoint::new(-1.0, vec![0.0]).is_err());
    }

    #[test]
    fn green_log_tanh() {
        let p = sp(1, 1.0, 0.0);
        let g = green(&p, 2.0).unwrap();
        assert!((g.re - 0.043_344_490_986_225_7).abs() < 1e-15);
        let e = -(1f64.tanh()).ln() / (2.0 * PI);
        assert!((g.re - e).abs() / e < 1e-13);
    }

    #[test]
    fn green_rejects_diagonal() {
        let p = sp(1, 1.0, 0.0);
        assert!(green(&p, 0.0).is_err());
        assert!(green(&p, 1e-9).is_err());
        assert!(green(&p, 1e-8).is_ok());
    }

    #[test]
    fn green_small_distance_log_growth() {
        let p = sp(1, 1.0, 0.0);
        let d = 1e-8;
        let g = green(&p, d).unwrap();
        let e = -(0.5 * d).ln() / (2.0 * PI);
        assert!((g.re - e).abs() < 1e-9);
    }

    #[test]
    fn green_large_distance_decay() {
        let p = sp(1, 0.5, 2.0);
        let d = 20.0;
        let lead = c_zeta(&p).unwrap() * (p.zeta() * 4f64.ln()).exp() * (-p.zeta() * d).exp();
        let g = green(&p, d).unwrap();
        assert!((g / lead - 1.0).norm() < 1e-6);
    }

    #[test]
    fn eigenfunction_at_coincident_boundary_point() {
        let p = sp(1, 0.5, 1.0);
        let z = pt(0.3, 0.2);
        let e = eigenfunction(&p, &z, &[0.2]).unwrap();
        let expect = c_zeta(&p).unwrap() * (-p.zeta() * 0.3f64.ln()).exp();
        assert!((e - expect).norm() < 1e-14);
    }

    #[test]
    fn symbol_special_values() {
        let a = model_symbol(&sp(1, 1.0, 0.0), 1.0).unwrap();
        assert!((a - C64::new(-1.0, 0.0)).norm() < 1e-14);
        let p = sp(1, 0.5, 2.0);
        let prod = model_symbol(&p, 1.0).unwrap() * model_symbol(&p.reflected(), 1.0).unwrap();
        assert!((prod - 1.0).norm() < 1e-13);
    }

    #[test]
    fn symbol_pole_is_error() {
        // Γ(n/2 − ζ) has a pole at ζ = n/2 + 1
        assert!(model_symbol(&sp(1, 1.5, 0.0), 1.0).unwrap_err().is_pole());
    }

    #[test]
    fn bessel_j0_values() {
        assert!((bessel_j_int(0, 0.0) - 1.0).abs() < 1e-15);
        assert!((bessel_j_int(0, 2.404_825_557_695_773)).abs() < 1e-14);
        assert!((bessel_j_int(1, 1.0) - 0.440_050_585_744_933_5).abs() < 1e-14);
    }

    #[test]
    fn poisson_of_zero_is_zero() {
        let p = sp(1, 0.5, 1.0);
        let u = poisson_solution(&p, &BoundaryFunction::zero(1), &pt(0.1, 0.0), poisson_options()).unwrap();
        assert_eq!(u, C64::new(0.0, 0.0));
    }

    #[test]
    fn prony_recovers_exponents() {
        let (e1, e2) = (C64::new(0.5, -2.0), C64::new(0.5, 2.0));
        let q: f64 = 0.7;
        let s: Vec<C64> = (0..12)
            .map(|j| {
                let x = 1e-2 * q.powi(j);
                C64::new(1.3, 0.2) * (e1 * x.ln()).exp() + C64::new(-0.4, 0.9) * (e2 * x.ln()).exp()
            })
            .collect();
        let (f1, f2) = fit_two_exponents(q, &s).unwrap();
        assert!((f1 - e1).norm() < 1e-9 && (f2 - e2).norm() < 1e-9);
    }
}
