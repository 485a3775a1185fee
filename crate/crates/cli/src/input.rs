use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use serde_json::Value;
use toricnef::catalog::{self, Params};
use toricnef::divisor::Divisor;
use toricnef::fan::{validate, Fan, FanFile, FanFileError};
use toricnef::lattice::{IntMatrix, LatVec};

const CATALOG_PREFIX: &str = "catalog:";

/// Where a fan comes from: a fan file or a named catalog entry.
#[derive(Clone, Debug)]
pub enum FanSource {
    File(String),
    Catalog(String),
}

impl FanSource {
    pub fn parse(text: &str) -> FanSource {
        match text.strip_prefix(CATALOG_PREFIX) {
            Some(name) => FanSource::Catalog(name.to_string()),
            None => FanSource::File(text.to_string()),
        }
    }

    pub fn label(&self) -> String {
        match self {
            FanSource::File(path) => path.clone(),
            FanSource::Catalog(name) => format!("{CATALOG_PREFIX}{name}"),
        }
    }

    /// Reads the file or builds the catalog entry without validating file
    /// contents beyond their syntax.
    pub fn load_file(&self, params: &Params) -> Result<LoadedFile> {
        match self {
            FanSource::File(path) => {
                if !params.is_empty() {
                    bail!("--param: parameters are only valid with catalog:NAME sources");
                }
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("fan `{path}`: cannot read file"))?;
                let file = FanFile::parse(&text).map_err(|e| anyhow!("fan `{path}`: {e}"))?;
                Ok(LoadedFile::Raw(file))
            }
            FanSource::Catalog(name) => {
                let fan =
                    catalog::get(name, params).map_err(|e| anyhow!("{}: {e}", self.label()))?;
                Ok(LoadedFile::Built(fan))
            }
        }
    }

    pub fn load(&self, params: &Params) -> Result<Fan> {
        match self.load_file(params)? {
            LoadedFile::Built(fan) => Ok(fan),
            LoadedFile::Raw(file) => validate(file.fan)
                .map_err(|e| anyhow!("fan `{}`: {}", self.label(), FanFileError::from(e))),
        }
    }
}

pub enum LoadedFile {
    Raw(FanFile),
    Built(Fan),
}

fn split_pair<'a>(flag: &str, text: &'a str) -> Result<(&'a str, &'a str)> {
    let (k, v) = text
        .split_once('=')
        .ok_or_else(|| anyhow!("{flag}: expected NAME=VALUE, found `{text}`"))?;
    let k = k.trim();
    if k.is_empty() {
        bail!("{flag}: empty parameter name in `{text}`");
    }
    Ok((k, v.trim()))
}

fn parse_int(flag: &str, text: &str) -> Result<BigInt> {
    BigInt::from_str(text.trim()).map_err(|_| anyhow!("{flag}: `{text}` is not an integer"))
}

/// `--param k=v` values; a repeated name is an error.
pub fn parse_params(flag: &str, items: &[String]) -> Result<Params> {
    let mut out = Params::new();
    for item in items {
        let (k, v) = split_pair(flag, item)?;
        if out.insert(k.to_string(), parse_int(flag, v)?).is_some() {
            bail!("{flag}: parameter `{k}` given twice");
        }
    }
    Ok(out)
}

/// `--sweep a=lo..hi` values, inclusive ranges.
pub fn parse_sweeps(items: &[String]) -> Result<Vec<(String, Vec<BigInt>)>> {
    let mut out: Vec<(String, Vec<BigInt>)> = Vec::new();
    for item in items {
        let (k, range) = split_pair("--sweep", item)?;
        let (lo, hi) = range
            .split_once("..")
            .ok_or_else(|| anyhow!("--sweep: expected NAME=LO..HI, found `{item}`"))?;
        let lo = parse_int("--sweep", lo)?;
        let hi = parse_int("--sweep", hi)?;
        if lo > hi {
            bail!("--sweep: empty range `{range}` for `{k}`");
        }
        if out.iter().any(|(name, _)| name == k) {
            bail!("--sweep: parameter `{k}` swept twice");
        }
        let mut values = Vec::new();
        let mut x = lo;
        while x <= hi {
            values.push(x.clone());
            x += 1;
        }
        out.push((k.to_string(), values));
    }
    Ok(out)
}

/// Every combination of swept values on top of the fixed parameters, in
/// lexicographic order of the sweep flags.
pub fn sweep_points(fixed: &Params, sweeps: &[(String, Vec<BigInt>)]) -> Result<Vec<Params>> {
    for (k, _) in sweeps {
        if fixed.contains_key(k) {
            bail!("--sweep: parameter `{k}` is also given with --param");
        }
    }
    let mut points = vec![fixed.clone()];
    for (k, values) in sweeps {
        points = points
            .into_iter()
            .flat_map(|p| {
                values.iter().map(move |v| {
                    let mut q = p.clone();
                    q.insert(k.clone(), v.clone());
                    q
                })
            })
            .collect();
    }
    Ok(points)
}

/// `-d` values: comma-separated integers or `p/q` rationals, or `-K`.
pub fn parse_divisor(text: &str, fan: &Fan) -> Result<Divisor> {
    let d = Divisor::parse(text, fan.num_rays()).map_err(|e| anyhow!("-d: {e}"))?;
    if d.len() != fan.num_rays() {
        bail!(
            "-d: divisor has {} coefficients but the fan has {} rays",
            d.len(),
            fan.num_rays()
        );
    }
    Ok(d)
}

/// `-w X,Y,Z`.
pub fn parse_vector(text: &str) -> Result<LatVec> {
    let coords = text
        .split(',')
        .enumerate()
        .map(|(i, x)| {
            BigInt::from_str(x.trim())
                .map_err(|_| anyhow!("-w: entry {i} `{}` is not an integer", x.trim()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LatVec::new(coords))
}

/// `-m` values: a JSON array of integer rows.
pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let v: Value = serde_json::from_str(text).map_err(|e| anyhow!("-m: malformed JSON: {e}"))?;
    let rows = v
        .as_array()
        .ok_or_else(|| anyhow!("-m: expected a JSON array of integer rows"))?;
    if rows.is_empty() {
        bail!("-m: matrix has no rows");
    }
    let mut out = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let entries = row
            .as_array()
            .ok_or_else(|| anyhow!("-m: row {i}: expected an array"))?;
        let mut r = Vec::new();
        for (j, x) in entries.iter().enumerate() {
            match x {
                Value::Number(n) => r.push(
                    BigInt::from_str(&n.to_string())
                        .map_err(|_| anyhow!("-m: row {i} entry {j}: `{n}` is not an integer"))?,
                ),
                other => bail!("-m: row {i} entry {j}: expected integer, found {other}"),
            }
        }
        out.push(r);
    }
    let ncols = out[0].len();
    IntMatrix::new(out, ncols).map_err(|e| anyhow!("-m: {e}"))
}
