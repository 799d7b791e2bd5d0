//! Loading algebras from the catalog or from .liealg files.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use halfderiv::algebra::AlgebraSpec;
use halfderiv::catalog::{builtin, CatalogKey};
use halfderiv::dsl::parse_algebra;
use halfderiv::Rational;

/// `lambda=1,mu=1/4` to a parameter map. Empty input gives no parameters.
pub fn parse_params(s: &str) -> Result<BTreeMap<String, Rational>> {
    let mut out = BTreeMap::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| anyhow!("--params entry {part:?} is not name=value"))?;
        let v: Rational = v.trim().parse().with_context(|| format!("--params value for {k}"))?;
        if out.insert(k.trim().to_string(), v).is_some() {
            bail!("--params sets {k} twice");
        }
    }
    Ok(out)
}

/// `builtin:NAME?..` from the catalog, anything else as a file path.
pub fn load_algebra(src: &str, params: &BTreeMap<String, Rational>) -> Result<AlgebraSpec> {
    if let Some(key) = src.strip_prefix("builtin:") {
        if !params.is_empty() {
            bail!("--params only applies to files; give catalog parameters as {key}?lambda=..,mu=..");
        }
        let key: CatalogKey = key.parse()?;
        return Ok(builtin(&key)?);
    }
    let text = std::fs::read_to_string(src).with_context(|| format!("reading {src}"))?;
    parse_algebra(&text, params).with_context(|| format!("in {src}"))
}
