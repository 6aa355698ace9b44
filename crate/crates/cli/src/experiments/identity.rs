use hyperscat_core::model::{hyp_distance, resolvent_identity_residual, HalfSpacePoint};
use serde_json::json;

use crate::config::{Config, Schema};
use crate::record::{num, Cell, Check, ResultRecord, Table};
use crate::{config_err, CliError};

pub const SCHEMA: Schema = &[
    ("param.n", "1", "boundary dimension (1 or 2)"),
    ("param.zeta_re", "0.5", "Re ζ"),
    ("param.zeta_im", "1", "Im ζ"),
    (
        "identity.pairs",
        "1,0/2,1; 1,0/1,1; 0.5,0/1,0.3; 2,-1/0.7,0.4; 1,0/3,0; 0.3,0.2/0.6,-0.5; 1.5,2/1,1; 0.8,0/0.8,2; 2,0/0.4,0; 1,-3/1.2,1",
        "point pairs z/z' separated by ';', each point x,y₁,…,y_n",
    ),
    ("check.tol", "1e-6", "residual tolerance"),
    ("check.symmetry_tol", "1e-8", "tolerance on |residual(z,z') − residual(z',z)|"),
];

fn point(text: &str, n: usize) -> Result<HalfSpacePoint, CliError> {
    let v: Vec<f64> = text
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| CliError::Config(format!("bad coordinate {t:?}"))))
        .collect::<Result<_, _>>()?;
    if v.len() != n + 1 {
        return Err(CliError::Config(format!("point {text:?} needs {} coordinates", n + 1)));
    }
    HalfSpacePoint::new(v[0], v[1..].to_vec()).map_err(config_err)
}

pub fn run(cfg: &Config, rec: &mut ResultRecord) -> Result<(), CliError> {
    let p = cfg.param()?;
    let n = p.n() as usize;
    let pairs: Vec<(HalfSpacePoint, HalfSpacePoint)> = cfg
        .string("identity.pairs")?
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let (a, b) = s.split_once('/').ok_or_else(|| CliError::Config(format!("pair {s:?} needs z/z'")))?;
            Ok((point(a, n)?, point(b, n)?))
        })
        .collect::<Result<_, CliError>>()?;
    if pairs.is_empty() {
        return Err(CliError::Config("identity.pairs is empty".into()));
    }
    let fmt = |z: &HalfSpacePoint| {
        std::iter::once(z.x()).chain(z.y().iter().copied()).map(|v| format!("{v:?}")).collect::<Vec<_>>().join(" ")
    };
    let mut table = Table::new("identity", &["pair", "z", "z_prime", "distance", "residual", "literal_residual"]);
    let mut worst = 0.0f64;
    let mut worst_literal = 0.0f64;
    for (i, (z, w)) in pairs.iter().enumerate() {
        let r = resolvent_identity_residual(&p, z, w)?;
        worst = worst.max(r.residual);
        worst_literal = worst_literal.max(r.literal_residual);
        table.push(vec![
            Cell::Int(i as i64),
            Cell::Text(fmt(z)),
            Cell::Text(fmt(w)),
            Cell::Num(hyp_distance(z, w)),
            Cell::Num(r.residual),
            Cell::Num(r.literal_residual),
        ]);
    }
    rec.checks.push(Check::le("max_residual", worst, cfg.positive("check.tol")?));
    let (z, w) = &pairs[0];
    let a = resolvent_identity_residual(&p, z, w)?.residual;
    let b = resolvent_identity_residual(&p, w, z)?.residual;
    rec.checks.push(Check::le("symmetry", (a - b).abs(), cfg.positive("check.symmetry_tol")?));
    rec.outputs.insert("max_residual".into(), num(worst));
    rec.outputs.insert("max_literal_residual".into(), num(worst_literal));
    rec.outputs.insert("pairs".into(), json!(pairs.len()));
    rec.tables.push(table);
    Ok(())
}
