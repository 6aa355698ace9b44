use hyperscat_core::radial::{deform_sweep, BumpFamily};
use serde_json::json;

use super::radial_options;
use crate::config::{Config, Schema};
use crate::record::{complex_cells, num, Cell, Check, ResultRecord, Table};
use crate::CliError;

pub const SCHEMA: Schema = &[
    ("param.n", "1", "boundary dimension (the radial solver needs 1)"),
    ("param.zeta_re", "0.5", "Re ζ"),
    ("param.zeta_im", "1", "Im ζ"),
    ("family.center", "3", "bump center r₀"),
    ("family.width", "1", "bump half-width σ"),
    ("family.direction", "-1", "amplitude per unit t (sign selects thickening or thinning)"),
    ("sweep.t_values", "0,1e-4,1e-3,1e-2,1e-1", "deformation parameters; must include 0"),
    ("sweep.k_max", "32", "mode cutoff K"),
    ("solver.radius", "12", "matching radius R"),
    ("solver.order", "4", "series order m"),
    ("solver.rtol", "1e-10", "integrator relative tolerance"),
    ("check.contraction", "1e-3", "bound on D(t_min)/D(t_max)"),
    ("check.slope_lo", "0.8", "lower bound on the fitted log-log slope"),
    ("check.slope_hi", "1.2", "upper bound on the fitted log-log slope"),
];

pub fn run(cfg: &Config, rec: &mut ResultRecord) -> Result<(), CliError> {
    let p = cfg.param()?;
    if p.n() != 1 {
        return Err(CliError::Config("sweep needs param.n = 1".into()));
    }
    let family = BumpFamily {
        center: cfg.f64("family.center")?,
        width: cfg.f64("family.width")?,
        direction: cfg.f64("family.direction")?,
    };
    let ts = cfg.f64_list("sweep.t_values")?;
    if !ts.contains(&0.0) {
        return Err(CliError::Config("sweep.t_values must include 0".into()));
    }
    for &t in &ts {
        family.at(t).map_err(crate::config_err)?;
    }
    let k_max = cfg.u32("sweep.k_max")?;
    let s = deform_sweep(&family, &p, k_max, &ts, &radial_options(cfg)?)?;

    let mut dist = Table::new("distance", &["t", "distance"]);
    let mut entries = Table::new("entries", &["t", "k", "s_re", "s_im"]);
    for row in &s.rows {
        dist.push(vec![Cell::Num(row.t), Cell::Num(row.distance)]);
        for (k, v) in row.entries.iter().enumerate() {
            let mut r = vec![Cell::Num(row.t), Cell::Int(k as i64)];
            r.extend(complex_cells(*v));
            entries.push(r);
        }
    }
    rec.checks.push(Check::equals("distance_at_zero", s.distance(0.0).unwrap_or(f64::NAN), 0.0));
    let positive: Vec<(f64, f64)> = s.rows.iter().filter(|r| r.t > 0.0).map(|r| (r.t, r.distance)).collect();
    let decreasing = positive.windows(2).all(|w| w[0].1 < w[1].1);
    rec.checks.push(Check::holds("strictly_decreasing_as_t_decreases", decreasing));
    if let (Some(first), Some(last)) = (positive.first(), positive.last()) {
        rec.checks.push(Check::le("contraction_ratio", first.1 / last.1, cfg.positive("check.contraction")?));
    }
    let slope = s.slope.unwrap_or(f64::NAN);
    rec.checks.push(Check::within("loglog_slope", slope, cfg.f64("check.slope_lo")?, cfg.f64("check.slope_hi")?));
    rec.outputs.insert("slope".into(), num(slope));
    rec.outputs.insert(
        "distance".into(),
        json!(s.rows.iter().map(|r| json!({ "t": num(r.t), "distance": num(r.distance) })).collect::<Vec<_>>()),
    );
    rec.tables.push(dist);
    rec.tables.push(entries);
    Ok(())
}
