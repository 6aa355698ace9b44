use hyperscat_core::radial::{hyperbolic_mode, scattering_matrix, symbol_ratio, RadialOptions, WarpFunction};
use hyperscat_core::C64;
use serde_json::json;

use super::radial_options;
use crate::config::{Config, Schema};
use crate::record::{complex, complex_cells, num, Cell, Check, ResultRecord, Table};
use crate::{config_err, CliError};

pub const SCHEMA: Schema = &[
    ("param.n", "1", "boundary dimension (the radial solver needs 1)"),
    ("param.zeta_re", "0.5", "Re ζ"),
    ("param.zeta_im", "1", "Im ζ"),
    ("warp.kind", "exact", "exact or bump"),
    ("warp.t", "0.1", "bump amplitude"),
    ("warp.center", "3", "bump center r₀"),
    ("warp.width", "1", "bump half-width σ"),
    ("modes.k_max", "16", "mode cutoff K"),
    ("solver.radius", "12", "matching radius R"),
    ("solver.order", "4", "series order m"),
    ("solver.rtol", "1e-10", "integrator relative tolerance"),
    ("check.functional_tol", "1e-8", "tolerance on |S_k(ζ)S_k(1−ζ) − 1|"),
    ("check.oracle_tol", "1e-8", "relative tolerance against the exact-hyperbolic closed form"),
    ("check.radius_shift", "2", "second matching radius offset"),
    ("check.radius_tol", "1e-8", "relative tolerance between the two matching radii"),
    ("check.symbol_tol", "0.05", "bound on |S_k(g)/S_k(g₀) − 1| at k = K"),
];

pub fn warp(cfg: &Config) -> Result<WarpFunction, CliError> {
    match cfg.string("warp.kind")?.as_str() {
        "exact" => Ok(WarpFunction::exact_hyperbolic()),
        "bump" => WarpFunction::bump(cfg.f64("warp.t")?, cfg.f64("warp.center")?, cfg.f64("warp.width")?)
            .map_err(config_err),
        other => Err(CliError::Config(format!("warp.kind must be exact or bump, got {other}"))),
    }
}

fn max_rel(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm() / y.norm()).fold(0.0, f64::max)
}

pub fn run(cfg: &Config, rec: &mut ResultRecord) -> Result<(), CliError> {
    let p = cfg.param()?;
    if p.n() != 1 {
        return Err(CliError::Config("modes needs param.n = 1".into()));
    }
    let w = warp(cfg)?;
    let k_max = cfg.u32("modes.k_max")?;
    let opts = radial_options(cfg)?;
    let d = scattering_matrix(&w, &p, k_max, &opts)?;
    let dr = scattering_matrix(&w, &p.reflected(), k_max, &opts)?;
    let shifted = RadialOptions { matching_radius: opts.matching_radius + cfg.positive("check.radius_shift")?, ..opts };
    let ds = scattering_matrix(&w, &p, k_max, &shifted)?;
    let ks: Vec<i64> = (0..=k_max as i64).collect();
    let s: Vec<C64> = ks.iter().map(|&k| d.entries[&k]).collect();
    let fe: Vec<f64> = ks.iter().map(|&k| (d.entries[&k] * dr.entries[&k] - 1.0).norm()).collect();
    let exact = matches!(cfg.string("warp.kind")?.as_str(), "exact");
    let oracle: Option<Vec<C64>> =
        if exact { Some(ks.iter().map(|&k| hyperbolic_mode(&p, k)).collect::<Result<_, _>>()?) } else { None };
    let ratios = if exact {
        None
    } else {
        let d0 = scattering_matrix(&WarpFunction::exact_hyperbolic(), &p, k_max, &opts)?;
        Some(symbol_ratio(&d, &d0)?)
    };

    let mut table = Table::new(
        "modes",
        &["k", "s_re", "s_im", "abs", "functional_err", "oracle_re", "oracle_im", "oracle_err", "ratio_re", "ratio_im"],
    );
    for (i, &k) in ks.iter().enumerate() {
        let mut row = vec![Cell::Int(k)];
        row.extend(complex_cells(s[i]));
        row.push(Cell::Num(s[i].norm()));
        row.push(Cell::Num(fe[i]));
        match &oracle {
            Some(o) => {
                row.extend(complex_cells(o[i]));
                row.push(Cell::Num((s[i] - o[i]).norm() / o[i].norm()));
            }
            None => row.extend([Cell::Empty, Cell::Empty, Cell::Empty]),
        }
        match ratios.as_ref().and_then(|r| r.ratios.iter().find(|(j, _)| *j == k)) {
            Some((_, r)) => row.extend(complex_cells(*r)),
            None => row.extend([Cell::Empty, Cell::Empty]),
        }
        table.push(row);
    }

    rec.checks.push(Check::le("functional_equation", fe.iter().cloned().fold(0.0, f64::max), cfg.positive("check.functional_tol")?));
    if let Some(o) = &oracle {
        rec.checks.push(Check::le("oracle_max_rel_err", max_rel(&s, o), cfg.positive("check.oracle_tol")?));
    }
    let s_shift: Vec<C64> = ks.iter().map(|&k| ds.entries[&k]).collect();
    rec.checks.push(Check::le("matching_radius_independence", max_rel(&s, &s_shift), cfg.positive("check.radius_tol")?));
    if let Some(r) = &ratios {
        let probe: Vec<i64> = [8i64, 16, 32, 64].into_iter().filter(|&k| k <= k_max as i64).collect();
        if probe.len() >= 2 {
            let dev: Vec<f64> = probe.iter().map(|&k| r.deviation(k).unwrap_or(f64::NAN)).collect();
            let monotone = dev.windows(2).all(|v| v[1] < v[0]);
            rec.checks.push(Check::holds("symbol_ratio_monotone", monotone));
            rec.outputs.insert(
                "symbol_ratio_deviation".into(),
                json!(probe.iter().zip(&dev).map(|(k, v)| json!({ "k": k, "deviation": num(*v) })).collect::<Vec<_>>()),
            );
        }
        let top = r.deviation(k_max as i64).unwrap_or(f64::NAN);
        rec.checks.push(Check::le("symbol_ratio_at_k_max", top, cfg.positive("check.symbol_tol")?));
        rec.outputs.insert("symbol_ratio_upper_sup".into(), num(r.upper_sup));
        rec.outputs.insert("symbol_ratio_decay_exponent".into(), r.decay_exponent.map_or(serde_json::Value::Null, num));
        rec.outputs.insert("symbol_ratio_flagged".into(), json!(r.flagged));
    }

    rec.outputs.insert(
        "scattering".into(),
        json!({
            "zeta": complex(p.zeta()),
            "k_max": k_max,
            "bdf_constant": num(d.bdf_constant),
            "entries": d.entries.iter().map(|(k, v)| json!({ "k": k, "s": complex(*v) })).collect::<Vec<_>>(),
        }),
    );
    rec.tables.push(table);
    Ok(())
}
