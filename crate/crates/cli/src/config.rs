//! INI-style experiment configuration.
//!
//! ```ini
//! # comment
//! [param]
//! zeta_re = 0.5
//! ```
//!
//! Keys are addressed as `section.key`; keys before any section header live in the empty
//! section and are addressed by name alone.

use std::collections::BTreeMap;
use std::path::Path;

use hyperscat_core::{SpectralParam, C64};

use crate::CliError;

/// `(key, default, description)`.
pub type Schema = &'static [(&'static str, &'static str, &'static str)];

pub fn parse_ini(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    let mut section = String::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| CliError::Config(format!("line {}: unterminated section header", i + 1)))?;
            section = name.trim().to_string();
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("line {}: expected key = value", i + 1)))?;
        let key = if section.is_empty() { k.trim().to_string() } else { format!("{section}.{}", k.trim()) };
        if out.insert(key.clone(), v.trim().to_string()).is_some() {
            return Err(CliError::Config(format!("line {}: duplicate key {key}", i + 1)));
        }
    }
    Ok(out)
}

/// Fully resolved configuration: schema defaults, then the file, then `--set` overrides.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn resolve(
        experiment: &str,
        schema: Schema,
        file: Option<&Path>,
        sets: &[String],
    ) -> Result<Self, CliError> {
        let mut values: BTreeMap<String, String> =
            schema.iter().map(|(k, v, _)| (k.to_string(), v.to_string())).collect();
        values.insert("experiment.kind".into(), experiment.into());
        let mut apply = |k: String, v: String| -> Result<(), CliError> {
            if !values.contains_key(&k) {
                return Err(CliError::Config(format!("unknown key {k} for {experiment}")));
            }
            values.insert(k, v);
            Ok(())
        };
        if let Some(path) = file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
            for (k, v) in parse_ini(&text)? {
                apply(k, v)?;
            }
        }
        for s in sets {
            let (k, v) = s
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("--set expects key=value, got {s}")))?;
            apply(k.trim().to_string(), v.trim().to_string())?;
        }
        let cfg = Self { values };
        if cfg.string("experiment.kind")? != experiment {
            return Err(CliError::Config(format!(
                "config is for experiment {}, not {experiment}",
                cfg.string("experiment.kind")?
            )));
        }
        Ok(cfg)
    }

    pub fn values(&self) -> &BTreeMap<String, String> {
        &self.values
    }

    pub fn string(&self, key: &str) -> Result<String, CliError> {
        self.values.get(key).cloned().ok_or_else(|| CliError::Config(format!("missing key {key}")))
    }

    fn parsed<T: std::str::FromStr>(&self, key: &str, what: &str) -> Result<T, CliError> {
        let s = self.string(key)?;
        s.parse().map_err(|_| CliError::Config(format!("{key} = {s:?} is not {what}")))
    }

    pub fn f64(&self, key: &str) -> Result<f64, CliError> {
        let v: f64 = self.parsed(key, "a number")?;
        if v.is_nan() {
            return Err(CliError::Config(format!("{key} is NaN")));
        }
        Ok(v)
    }

    pub fn positive(&self, key: &str) -> Result<f64, CliError> {
        let v = self.f64(key)?;
        if !(v > 0.0) {
            return Err(CliError::Config(format!("{key} must be positive, got {v}")));
        }
        Ok(v)
    }

    pub fn u32(&self, key: &str) -> Result<u32, CliError> {
        self.parsed(key, "a nonnegative integer")
    }

    pub fn u64(&self, key: &str) -> Result<u64, CliError> {
        self.parsed(key, "a nonnegative integer")
    }

    pub fn usize(&self, key: &str) -> Result<usize, CliError> {
        self.parsed(key, "a nonnegative integer")
    }

    pub fn bool(&self, key: &str) -> Result<bool, CliError> {
        self.parsed(key, "true or false")
    }

    /// Comma-separated numbers; an empty value is an empty list.
    pub fn f64_list(&self, key: &str) -> Result<Vec<f64>, CliError> {
        let s = self.string(key)?;
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| CliError::Config(format!("{key}: {t:?} is not a number"))))
            .collect()
    }

    /// `param.n`, `param.zeta_re`, `param.zeta_im`.
    pub fn param(&self) -> Result<SpectralParam, CliError> {
        let n = self.u32("param.n")?;
        let z = C64::new(self.f64("param.zeta_re")?, self.f64("param.zeta_im")?);
        SpectralParam::new(n, z).map_err(|e| CliError::Config(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SCHEMA: Schema = &[("a.x", "1", ""), ("a.list", "1,2", ""), ("b", "yes", "")];

    #[test]
    fn ini_sections_and_comments() {
        let m = parse_ini("b = 3\n# c\n[a]\n x = 2 \n; c\nlist=\n").unwrap();
        assert_eq!(m["a.x"], "2");
        assert_eq!(m["b"], "3");
        assert_eq!(m["a.list"], "");
        assert!(parse_ini("[a\n").is_err());
        assert!(parse_ini("novalue\n").is_err());
        assert!(parse_ini("x=1\nx=2\n").is_err());
    }

    #[test]
    fn overrides_and_unknown_keys() {
        let c = Config::resolve("e", SCHEMA, None, &["a.x=5".into()]).unwrap();
        assert_eq!(c.f64("a.x").unwrap(), 5.0);
        assert_eq!(c.f64_list("a.list").unwrap(), vec![1.0, 2.0]);
        assert!(c.bool("b").is_err());
        assert!(Config::resolve("e", SCHEMA, None, &["zz=1".into()]).is_err());
        assert!(Config::resolve("e", SCHEMA, None, &["experiment.kind=f".into()]).is_err());
    }
}
