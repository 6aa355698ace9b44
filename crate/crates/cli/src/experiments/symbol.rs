use hyperscat_core::model::{model_symbol, w_hat_numeric, w_hat_predicted};
use hyperscat_core::specialfn::gamma_ratio;
use hyperscat_core::{SpectralParam, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::config::{Config, Schema};
use crate::record::{complex_cells, num, Cell, Check, ResultRecord, Table};
use crate::CliError;

pub const SCHEMA: Schema = &[
    ("param.n", "1", "boundary dimension"),
    ("param.zeta_re", "0.5", "Re ζ"),
    ("param.zeta_im", "2", "Im ζ"),
    ("asymptotics.xi", "1", "frequency |ξ|"),
    ("asymptotics.x_values", "1e-2,5e-3,2.5e-3", "distances to the boundary, halving"),
    ("check.ratio_lo", "1.6", "lower bound on successive discrepancy ratios"),
    ("check.ratio_hi", "2.4", "upper bound on successive discrepancy ratios"),
    ("check.homogeneity_tol", "1e-6", "tolerance of the |ξ|^{2ζ−n} scaling of the second term"),
    ("functional.samples", "50", "random (n, ζ, |ξ|) samples"),
    ("functional.seed", "7", "sampling seed"),
    ("functional.tol", "1e-12", "tolerance on |a(ζ)a(n−ζ) − 1|"),
];

pub fn run(cfg: &Config, rec: &mut ResultRecord) -> Result<(), CliError> {
    let p = cfg.param()?;
    let xi = cfg.positive("asymptotics.xi")?;
    let xs = cfg.f64_list("asymptotics.x_values")?;
    if xs.is_empty() || xs.iter().any(|&x| !(x > 0.0)) {
        return Err(CliError::Config("asymptotics.x_values must be positive and non-empty".into()));
    }
    let mut table =
        Table::new("asymptotics", &["x", "numeric_re", "numeric_im", "predicted_re", "predicted_im", "discrepancy"]);
    let mut disc = Vec::new();
    for &x in &xs {
        let (a, b) = (w_hat_numeric(&p, x, xi)?, w_hat_predicted(&p, x, xi)?);
        let d = (a - b).norm();
        let mut row = vec![Cell::Num(x)];
        row.extend(complex_cells(a));
        row.extend(complex_cells(b));
        row.push(Cell::Num(d));
        table.push(row);
        disc.push(d);
    }
    let (lo, hi) = (cfg.f64("check.ratio_lo")?, cfg.f64("check.ratio_hi")?);
    let mut ratios = Vec::new();
    for i in 1..disc.len() {
        let r = disc[i - 1] / disc[i];
        ratios.push(num(r));
        rec.checks.push(Check::within(&format!("discrepancy_ratio_{i}"), r, lo, hi));
    }
    rec.outputs.insert("discrepancy_ratios".into(), json!(ratios));

    // second term of the prediction scales as |ξ|^{2ζ−n}
    let x = xs[0];
    let z = p.zeta();
    let hn = 0.5 * p.nf();
    let first = std::f64::consts::PI.powf(hn) * gamma_ratio(&[z - hn], &[z])? * ((p.nf() - z) * x.ln()).exp();
    let second = |s: f64| -> Result<C64, CliError> { Ok(w_hat_predicted(&p, x, s)? - first) };
    let ratio = second(2.0 * xi)? / second(xi)?;
    let expect = (C64::new(2f64.ln(), 0.0) * (2.0 * z - p.nf())).exp();
    rec.checks.push(Check::le("second_term_homogeneity", (ratio - expect).norm(), cfg.positive("check.homogeneity_tol")?));

    let samples = cfg.usize("functional.samples")?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.u64("functional.seed")?);
    let mut fe = Table::new("functional_equation", &["n", "zeta_re", "zeta_im", "xi", "a_re", "a_im", "error"]);
    let mut worst = 0.0f64;
    let mut drawn = 0;
    while fe.rows.len() < samples {
        drawn += 1;
        if drawn > 100 * samples.max(1) {
            return Err(CliError::Core(hyperscat_core::Error::NonConvergence(
                "could not draw functional-equation samples off the poles".into(),
            )));
        }
        let n = rng.gen_range(1..=3u32);
        let zeta = C64::new(rng.gen_range(-2.0..4.0), rng.gen_range(-3.0..3.0));
        let xi = rng.gen_range(0.1..10.0);
        let q = SpectralParam::new(n, zeta)?;
        let (a, b) = match (model_symbol(&q, xi), model_symbol(&q.reflected(), xi)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => continue,
        };
        let e = (a * b - 1.0).norm();
        worst = worst.max(e);
        let mut row = vec![Cell::Int(n as i64), Cell::Num(zeta.re), Cell::Num(zeta.im), Cell::Num(xi)];
        row.extend(complex_cells(a));
        row.push(Cell::Num(e));
        fe.push(row);
    }
    rec.checks.push(Check::le("symbol_functional_equation", worst, cfg.positive("functional.tol")?));
    rec.tables.push(table);
    rec.tables.push(fe);
    Ok(())
}
