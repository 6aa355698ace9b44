pub mod green;
pub mod identity;
pub mod index;
pub mod modes;
pub mod sweep;
pub mod symbol;

use hyperscat_core::radial::RadialOptions;

use crate::config::Config;
use crate::CliError;

/// `solver.radius`, `solver.order`, `solver.rtol`.
pub(crate) fn radial_options(cfg: &Config) -> Result<RadialOptions, CliError> {
    Ok(RadialOptions {
        matching_radius: cfg.positive("solver.radius")?,
        series_order: cfg.usize("solver.order")?,
        rtol: cfg.positive("solver.rtol")?,
        fixed_step: None,
    })
}

/// Geometric grid of `points` values in `[lo, hi]`.
pub(crate) fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..points).map(|i| (a + (b - a) * i as f64 / (points - 1) as f64).exp()).collect()
}
