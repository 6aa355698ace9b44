use crate::error::{Error, Result};

/// Profile `ψ(s) = (1 − s²)⁴` on `|s| < 1`, with `s = (r − r₀)/σ`.
fn bump(s: f64) -> (f64, f64) {
    if s.abs() >= 1.0 {
        return (0.0, 0.0);
    }
    let v = 1.0 - s * s;
    (v.powi(4), -8.0 * s * v.powi(3))
}

/// Natural cubic spline through `(x_i, y_i)`, held constant outside the nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct Spline {
    x: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>,
}

impl Spline {
    fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        let n = x.len();
        if n < 2 || y.len() != n {
            return Err(Error::Domain("a table needs at least two (r, φ) nodes".into()));
        }
        if x.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Domain("table radii must be strictly increasing".into()));
        }
        // second derivatives by the tridiagonal system with natural end conditions
        let mut m = vec![0.0; n];
        if n > 2 {
            let mut diag = vec![0.0; n];
            let mut rhs = vec![0.0; n];
            for i in 1..n - 1 {
                let (h0, h1) = (x[i] - x[i - 1], x[i + 1] - x[i]);
                diag[i] = 2.0 * (h0 + h1);
                rhs[i] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
            }
            for i in 2..n - 1 {
                let h = x[i] - x[i - 1];
                let f = h / diag[i - 1];
                diag[i] -= f * h;
                rhs[i] -= f * rhs[i - 1];
            }
            for i in (1..n - 1).rev() {
                let upper = if i + 1 < n - 1 { (x[i + 1] - x[i]) * m[i + 1] } else { 0.0 };
                m[i] = (rhs[i] - upper) / diag[i];
            }
        }
        Ok(Self { x, y, m })
    }

    fn eval(&self, r: f64) -> (f64, f64) {
        let n = self.x.len();
        if r <= self.x[0] {
            return (self.y[0], 0.0);
        }
        if r >= self.x[n - 1] {
            return (self.y[n - 1], 0.0);
        }
        let i = self.x.partition_point(|&v| v <= r) - 1;
        let h = self.x[i + 1] - self.x[i];
        let (a, b) = ((self.x[i + 1] - r) / h, (r - self.x[i]) / h);
        let (m0, m1) = (self.m[i], self.m[i + 1]);
        let v = a * self.y[i] + b * self.y[i + 1] + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / 6.0;
        let d = (self.y[i + 1] - self.y[i]) / h + ((1.0 - 3.0 * a * a) * m0 + (3.0 * b * b - 1.0) * m1) * h / 6.0;
        (v, d)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.x
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum WarpKind {
    ExactHyperbolic,
    /// `φ = sinh r · (1 + t ψ((r − r₀)/σ))`.
    BumpPerturbed { amplitude: f64, center: f64, width: f64 },
    /// `φ = sinh r · g(r)` with `g` a natural cubic spline of the tabulated ratio `φ/sinh r`,
    /// held constant outside the table.
    Tabulated(Spline),
}

/// Warping function `φ` of a rotationally symmetric metric `dr² + φ(r)² dθ²`.
#[derive(Debug, Clone, PartialEq)]
pub struct WarpFunction {
    kind: WarpKind,
}

impl WarpFunction {
    pub fn exact_hyperbolic() -> Self {
        Self { kind: WarpKind::ExactHyperbolic }
    }

    pub fn bump(amplitude: f64, center: f64, width: f64) -> Result<Self> {
        if !(width > 0.0) || !(center - width > 0.0) {
            return Err(Error::Domain(format!(
                "bump support [{}, {}] must lie in r > 0",
                center - width,
                center + width
            )));
        }
        if !(amplitude.abs() < 1.0) {
            return Err(Error::Domain(format!("|t| = {} would make φ vanish", amplitude.abs())));
        }
        Ok(Self { kind: WarpKind::BumpPerturbed { amplitude, center, width } })
    }

    /// Samples `(r_i, φ(r_i))` with `r_0 > 0`.
    pub fn tabulated(r: &[f64], phi: &[f64]) -> Result<Self> {
        if r.first().is_none_or(|&r0| !(r0 > 0.0)) {
            return Err(Error::Domain("table radii must be positive".into()));
        }
        if r.len() != phi.len() {
            return Err(Error::Domain("table columns differ in length".into()));
        }
        let ratio: Vec<f64> = r.iter().zip(phi).map(|(&r, &p)| p / r.sinh()).collect();
        let spline = Spline::new(r.to_vec(), ratio)?;
        let (lo, hi) = (r[0], r[r.len() - 1]);
        for i in 0..=1000 {
            let rr = lo + (hi - lo) * i as f64 / 1000.0;
            if !(spline.eval(rr).0 > 0.0) {
                return Err(Error::Domain(format!("interpolated φ is not positive near r = {rr}")));
            }
        }
        Ok(Self { kind: WarpKind::Tabulated(spline) })
    }

    pub fn kind(&self) -> &WarpKind {
        &self.kind
    }

    /// The ratio `g = φ/sinh r` and its derivative.
    fn ratio(&self, r: f64) -> (f64, f64) {
        match &self.kind {
            WarpKind::ExactHyperbolic => (1.0, 0.0),
            WarpKind::BumpPerturbed { amplitude, center, width } => {
                let (v, d) = bump((r - center) / width);
                (1.0 + amplitude * v, amplitude * d / width)
            }
            WarpKind::Tabulated(s) => s.eval(r),
        }
    }

    pub fn phi(&self, r: f64) -> f64 {
        r.sinh() * self.ratio(r).0
    }

    /// `(φ'/φ, 1/φ²)`.
    pub fn coefficients(&self, r: f64) -> (f64, f64) {
        let (g, dg) = self.ratio(r);
        let coth = 1.0 / r.tanh();
        let inv_phi2 = if r > 20.0 {
            let e = (-r).exp();
            4.0 * e * e / ((1.0 - e * e) * (1.0 - e * e) * g * g)
        } else {
            1.0 / (r.sinh() * g).powi(2)
        };
        (coth + dg / g, inv_phi2)
    }

    /// The interval outside which `φ/sinh r` is constant, if any.
    pub fn support(&self) -> Option<(f64, f64)> {
        match &self.kind {
            WarpKind::ExactHyperbolic | WarpKind::BumpPerturbed { amplitude: 0.0, .. } => None,
            WarpKind::BumpPerturbed { center, width, .. } => Some((center - width, center + width)),
            WarpKind::Tabulated(s) => Some((s.x[0], s.x[s.x.len() - 1])),
        }
    }

    /// Points where the coefficients lose smoothness; the integrator restarts there.
    pub fn breakpoints(&self) -> Vec<f64> {
        match &self.kind {
            WarpKind::ExactHyperbolic | WarpKind::BumpPerturbed { amplitude: 0.0, .. } => Vec::new(),
            WarpKind::BumpPerturbed { center, width, .. } => vec![center - width, center + width],
            WarpKind::Tabulated(s) => s.x.clone(),
        }
    }

    /// `φ = A_in sinh r` near the center.
    pub fn inner_scale(&self) -> f64 {
        match &self.kind {
            WarpKind::Tabulated(s) => s.y[0],
            _ => 1.0,
        }
    }

    /// `φ = A_out sinh r` near infinity.
    pub fn outer_scale(&self) -> f64 {
        match &self.kind {
            WarpKind::Tabulated(s) => s.y[s.y.len() - 1],
            _ => 1.0,
        }
    }
}

/// The constant `C` in `x = C e^{−r}` for which the boundary circle has unit length scale.
pub fn normalize_bdf(w: &WarpFunction) -> Result<f64> {
    let far = w.support().map_or(1.0, |(_, hi)| hi) + 30.0;
    let a = w.phi(far) * 2.0 * (-far).exp();
    let b = w.phi(far + 5.0) * 2.0 * (-far - 5.0).exp();
    if !(a > 0.0) || ((a - b) / a).abs() > 1e-12 {
        return Err(Error::NonConvergence("φ e^{−r} does not stabilize".into()));
    }
    Ok(2.0 / w.outer_scale())
}
