//! Dormand–Prince 5(4) for the two-component linear mode equation, with rescaling.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const MAX_STEPS: usize = 2_000_000;

/// `(u, u')` stored as `exp(log_scale) · y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledState {
    pub y: [C64; 2],
    pub log_scale: f64,
}

impl ScaledState {
    pub fn new(u: C64, du: C64) -> Self {
        Self { y: [u, du], log_scale: 0.0 }
    }

    fn norm(&self) -> f64 {
        self.y[0].norm().max(self.y[1].norm())
    }

    fn rescale(&mut self) {
        let n = self.norm();
        if n > 1e100 || (n < 1e-100 && n > 0.0) {
            self.y = [self.y[0] / n, self.y[1] / n];
            self.log_scale += n.ln();
        }
    }
}

/// Step control. `fixed_step` switches to a uniform grid (no error control) per piece.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControl {
    pub rtol: f64,
    pub fixed_step: Option<f64>,
}

fn axpy(y: &[C64; 2], h: f64, ks: &[[C64; 2]; 7], coef: &[f64], upto: usize) -> [C64; 2] {
    let mut out = *y;
    for (j, &c) in coef.iter().enumerate().take(upto) {
        if c != 0.0 {
            out[0] += ks[j][0] * (h * c);
            out[1] += ks[j][1] * (h * c);
        }
    }
    out
}

fn stages<F: Fn(f64, &[C64; 2]) -> [C64; 2]>(f: &F, r: f64, y: &[C64; 2], h: f64, k0: [C64; 2]) -> [[C64; 2]; 7] {
    let mut ks = [[C64::new(0.0, 0.0); 2]; 7];
    ks[0] = k0;
    for i in 1..7 {
        let yi = axpy(y, h, &ks, &A[i], i);
        ks[i] = f(r + C[i] * h, &yi);
    }
    ks
}

/// Integrates a linear system from `a` to `b` (either direction).
pub fn integrate<F: Fn(f64, &[C64; 2]) -> [C64; 2]>(
    f: &F,
    a: f64,
    b: f64,
    mut state: ScaledState,
    ctl: &StepControl,
    h_hint: &mut f64,
) -> Result<ScaledState> {
    let span = b - a;
    if span == 0.0 {
        return Ok(state);
    }
    let dir = span.signum();
    if let Some(h) = ctl.fixed_step {
        let n = (span.abs() / h).ceil().max(1.0) as usize;
        let h = span / n as f64;
        for i in 0..n {
            let r = a + h * i as f64;
            let ks = stages(f, r, &state.y, h, f(r, &state.y));
            state.y = axpy(&state.y, h, &ks, &B, 7);
            state.rescale();
        }
        return Ok(state);
    }
    let mut r = a;
    let mut h = h_hint.abs().min(span.abs()).max(1e-6) * dir;
    let mut k0 = f(r, &state.y);
    for _ in 0..MAX_STEPS {
        if (b - r) * dir <= 0.0 {
            return Ok(state);
        }
        let last = (r + h - b) * dir >= 0.0;
        if last {
            h = b - r;
        }
        let ks = stages(f, r, &state.y, h, k0);
        let y5 = axpy(&state.y, h, &ks, &B, 7);
        let err = axpy(&[C64::new(0.0, 0.0); 2], h, &ks, &E, 7);
        let scale = ctl.rtol * state.norm().max(y5[0].norm().max(y5[1].norm())) + 1e-300;
        let e = err[0].norm().max(err[1].norm()) / scale;
        if e <= 1.0 {
            r = if last { b } else { r + h };
            state.y = y5;
            k0 = ks[6];
            let before = state.log_scale;
            state.rescale();
            if state.log_scale != before {
                k0 = f(r, &state.y);
            }
            if !last {
                *h_hint = h.abs();
            }
        }
        let factor = if e == 0.0 { 5.0 } else { (0.9 * e.powf(-0.2)).clamp(0.2, 5.0) };
        h *= factor;
        if h.abs() < 1e-13 * r.abs().max(1.0) {
            return Err(Error::NonConvergence(format!("step size underflow at r = {r}")));
        }
    }
    Err(Error::NonConvergence(format!("step budget exhausted before r = {b}")))
}
