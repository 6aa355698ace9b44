use std::f64::consts::PI;

use hyperscat_core::model::green;
use hyperscat_core::specialfn::c_zeta;
use hyperscat_core::{SpectralParam, C64};
use serde_json::json;

use super::log_grid;
use crate::config::{Config, Schema};
use crate::record::{complex_cells, num, Cell, Check, ResultRecord, Table};
use crate::CliError;

pub const SCHEMA: Schema = &[
    ("param.n", "1", "boundary dimension"),
    ("param.zeta_re", "1", "Re ζ"),
    ("param.zeta_im", "0", "Im ζ"),
    ("grid.d_min", "0.05", "smallest distance"),
    ("grid.d_max", "15", "largest distance"),
    ("grid.points", "200", "log-spaced sample count"),
    ("check.rel_tol", "1e-10", "closed-form tolerance"),
    ("check.decay_distance", "20", "distance of the decay check"),
    ("check.decay_tol", "1e-6", "decay-check tolerance"),
];

/// Elementary closed forms: `n = 1, ζ = 1` and every `ζ` for `n = 2`.
pub fn closed_form(p: &SpectralParam, d: f64) -> Option<C64> {
    let z = p.zeta();
    match p.n() {
        1 if z == C64::new(1.0, 0.0) => Some(C64::new(-(0.5 * d).tanh().ln() / (2.0 * PI), 0.0)),
        2 => Some((-(z - 1.0) * d).exp() / (4.0 * PI * d.sinh())),
        _ => None,
    }
}

pub fn run(cfg: &Config, rec: &mut ResultRecord) -> Result<(), CliError> {
    let p = cfg.param()?;
    let (lo, hi) = (cfg.positive("grid.d_min")?, cfg.positive("grid.d_max")?);
    let points = cfg.usize("grid.points")?;
    if points == 0 {
        return Err(CliError::Config("grid.points is zero: empty distance grid".into()));
    }
    if hi < lo {
        return Err(CliError::Config("grid.d_max is below grid.d_min".into()));
    }
    let tol = cfg.positive("check.rel_tol")?;
    let mut table = Table::new("green", &["d", "green_re", "green_im", "oracle_re", "oracle_im", "rel_err"]);
    let mut worst: Option<f64> = None;
    for d in log_grid(lo, hi, points) {
        let g = green(&p, d)?;
        let mut row = vec![Cell::Num(d)];
        row.extend(complex_cells(g));
        match closed_form(&p, d) {
            Some(o) => {
                let e = (g - o).norm() / o.norm();
                worst = Some(worst.map_or(e, |w: f64| w.max(e)));
                row.extend(complex_cells(o));
                row.push(Cell::Num(e));
            }
            None => row.extend([Cell::Empty, Cell::Empty, Cell::Empty]),
        }
        table.push(row);
    }
    if let Some(w) = worst {
        rec.checks.push(Check::le("closed_form_max_rel_err", w, tol));
    }
    let dd = cfg.positive("check.decay_distance")?;
    let lead = c_zeta(&p)? * (2.0 * p.zeta() * 2f64.ln() - p.zeta() * dd).exp();
    let decay = (green(&p, dd)? / lead - 1.0).norm();
    rec.checks.push(Check::le("large_distance_decay", decay, cfg.positive("check.decay_tol")?));
    rec.outputs.insert("closed_form_available".into(), json!(worst.is_some()));
    rec.outputs.insert("max_rel_err".into(), worst.map_or(serde_json::Value::Null, num));
    rec.tables.push(table);
    Ok(())
}
