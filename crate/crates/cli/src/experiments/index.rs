use hyperscat_core::indexcalc::*;
use hyperscat_core::C64;
use serde_json::json;

use crate::config::{Config, Schema};
use crate::record::{num, Cell, Check, ResultRecord, Table};
use crate::{config_err, CliError};

pub const SCHEMA: Schema = &[
    ("index.zeta_re", "0.6", "Re ζ used for ordering and truncation"),
    ("index.zeta_im", "0.7", "Im ζ"),
    ("index.generic", "true", "ignore accidental integer relations between multiples of ζ"),
    ("index.n", "1", "dimension in the composition hypothesis"),
    ("index.expressions", "", "';'-separated expressions to evaluate"),
    ("neumann.j", "6", "number of powers J"),
    ("neumann.truncation_offset", "6", "truncation Re a < Re ζ + offset"),
    ("neumann.closure", "true", "use smooth closures of all sets"),
    ("neumann.union", "plain", "union across powers: plain or extended"),
];

fn law_checks(ctx: &IndexCtx, rec: &mut ResultRecord) -> Result<(), CliError> {
    let t = |p, q, l| IndexTerm::new(Exponent::new(p, q), l);
    let s = sum(ctx, &IndexSet::exact([t(1, 0, 0)]), &IndexSet::exact([t(2, 0, 3)]));
    rec.checks.push(Check::holds("law_sum_example", s == IndexSet::exact([t(3, 0, 3)])));
    let u = ext_union(ctx, &IndexSet::exact([t(1, 0, 0)]), &IndexSet::exact([t(2, 0, 1)]))?;
    rec.checks.push(Check::holds("law_union_log_bump", u == IndexSet::exact([t(1, 0, 0), t(2, 0, 2)])));
    let z = IndexSet::single(Exponent::new(0, 1));
    let inf = IndexSet::infinity();
    let ok = sum(ctx, &inf, &z).is_infinity() && ext_union(ctx, &inf, &z)? == z && ext_union(ctx, &z, &inf)? == z;
    rec.checks.push(Check::holds("law_infinity", ok));
    Ok(())
}

pub fn run(cfg: &Config, rec: &mut ResultRecord, log: &mut Vec<String>) -> Result<(), CliError> {
    let zeta = C64::new(cfg.f64("index.zeta_re")?, cfg.f64("index.zeta_im")?);
    let ctx = if cfg.bool("index.generic")? { IndexCtx::generic(zeta) } else { IndexCtx::new(zeta) };
    let n: i64 = cfg.u32("index.n")?.into();
    law_checks(&ctx, rec)?;

    let mut exprs = Table::new("expressions", &["expression", "value"]);
    let mut values = Vec::new();
    for e in cfg.string("index.expressions")?.split(';').map(str::trim).filter(|e| !e.is_empty()) {
        let v = evaluate(&ctx, e, n).map_err(config_err)?;
        log.push(format!("{e} = {v}"));
        values.push(json!({ "expression": e, "value": v.to_string() }));
        exprs.push(vec![Cell::Text(e.into()), Cell::Text(v.to_string())]);
    }

    let semantics = NeumannSemantics {
        closure: cfg.bool("neumann.closure")?,
        across_powers: match cfg.string("neumann.union")?.as_str() {
            "plain" => PowerUnion::Plain,
            "extended" => PowerUnion::Extended,
            other => return Err(CliError::Config(format!("neumann.union must be plain or extended, got {other}"))),
        },
    };
    let j = cfg.usize("neumann.j")?;
    if j == 0 {
        return Err(CliError::Config("neumann.j must be at least 1".into()));
    }
    let m = zeta.re + cfg.f64("neumann.truncation_offset")?;
    let report = neumann_envelope(&ctx, &neumann_base(), j, m, n, semantics)?;
    let mut viol = Table::new("violations", &["face", "exponent", "log_power"]);
    for v in &report.violations {
        log.push(format!("violation: {v}"));
        viol.push(vec![Cell::Text(v.face.to_string()), Cell::Text(v.term.a.to_string()), Cell::Int(v.term.log.into())]);
    }
    log.push(format!("envelope = {}", report.envelope));
    log.push(format!("reference = {}", report.reference));
    rec.checks.push(Check::holds("neumann_containment", report.contained()));
    rec.outputs.insert("truncation".into(), num(m));
    rec.outputs.insert("envelope".into(), json!(report.envelope.to_string()));
    rec.outputs.insert("reference".into(), json!(report.reference.to_string()));
    rec.outputs.insert("powers".into(), json!(report.powers.iter().map(|f| f.to_string()).collect::<Vec<_>>()));
    rec.outputs.insert("violation_count".into(), json!(report.violations.len()));
    rec.outputs.insert("expressions".into(), json!(values));
    rec.tables.push(viol);
    rec.tables.push(exprs);
    Ok(())
}
