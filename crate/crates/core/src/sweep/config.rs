//! `key = value` configuration shared by config files and command-line flags.
//!
//! Keys are the flag names without the leading dashes; `-` and `_` are
//! interchangeable. Later assignments win, except `svg`, which accumulates.

use std::fs;
use std::path::{Path, PathBuf};

use super::{MeasureKind, SweepSpec};
use crate::error::{Error, Result};
use crate::measures::RenyiOrder;
use crate::quadrature::OracleSpec;

pub const DEFAULT_SEED: u64 = 0x5EED;

/// Splits config text into `(key, value)` pairs. `#` starts a comment.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", i + 1)))?;
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

fn list<T>(value: &str, parse: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(parse)
        .collect()
}

fn number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("{key}: cannot parse `{value}`")))
}

/// Accumulates settings on top of [`SweepSpec::default`].
#[derive(Debug, Clone)]
pub struct SweepConfig {
    spec: SweepSpec,
    oracle_samples: Option<u64>,
    seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            spec: SweepSpec::default(),
            oracle_samples: None,
            seed: DEFAULT_SEED,
        }
    }
}

impl SweepConfig {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().trim_start_matches('-').replace('-', "_");
        let s = &mut self.spec;
        match key.as_str() {
            "xi_min" => s.xi_min = number(&key, value)?,
            "xi_max" => s.xi_max = number(&key, value)?,
            "xi_steps" => s.xi_steps = number(&key, value)?,
            "w_over_m" => s.w_over_m_values = list(value, |v| number(&key, v))?,
            "measures" => s.measures = list(value, str::parse::<MeasureKind>)?,
            "renyi_orders" => s.renyi_orders = list(value, str::parse::<RenyiOrder>)?,
            "qmax_mult" => s.quad.q_max_multiple = number(&key, value)?,
            "rel_tol" => s.quad.target_rel_tol = number(&key, value)?,
            "grid" => {
                let n: Vec<usize> = list(value, |v| number(&key, v))?;
                let [nq, nt, np] = n[..] else {
                    return Err(Error::Config(format!(
                        "grid: expected `nq,ntheta,nphi`, got `{value}`"
                    )));
                };
                s.quad.n_q = nq;
                s.quad.n_theta = nt;
                s.quad.n_phi = np;
            }
            "oracle_samples" => {
                let n: u64 = number(&key, value)?;
                self.oracle_samples = (n > 0).then_some(n);
            }
            "seed" => self.seed = number(&key, value)?,
            "out" => s.output_path = PathBuf::from(value),
            "svg" => {
                let (m, path) = value.split_once(':').ok_or_else(|| {
                    Error::Config(format!("svg: expected `measure:path`, got `{value}`"))
                })?;
                s.svg_outputs.push((m.parse()?, PathBuf::from(path.trim())));
            }
            _ => return Err(Error::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    pub fn apply(&mut self, pairs: &[(String, String)]) -> Result<()> {
        pairs.iter().try_for_each(|(k, v)| self.set(k, v))
    }

    pub fn load_file(&mut self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        self.apply(&parse_config(&text)?)
    }

    pub fn build(&self) -> Result<SweepSpec> {
        let mut spec = self.spec.clone();
        spec.oracle = match self.oracle_samples {
            Some(n) => Some(OracleSpec::new(n, self.seed)?),
            None => None,
        };
        spec.validate()?;
        Ok(spec)
    }
}
