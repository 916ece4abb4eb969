//! JSON job configuration.
//!
//! ```json
//! {
//!   "cartan": [[2, -3], [-3, 2]],
//!   "lambda": { "coroot_pairings": ["2", "2"] },
//!   "point": { "alpha_values": ["1", "1"] },
//!   "precision_digits": 30,
//!   "max_length": 20
//! }
//! ```
//!
//! Rationals are strings (`"p/q"` or `"n"`). Unknown fields are rejected and
//! parse errors carry the path of the offending field.

use num_rational::BigRational;
use serde::Deserialize;

use crate::cartan::CartanMatrix;
use crate::lattice::{PointH, WeightVector};
use crate::rational::parse_rational;
use crate::real::PrecisionContext;
use crate::weyl::DEFAULT_TITS_CAP;
use crate::{Error, Result};

pub const DEFAULT_STRING_CAP: usize = 64;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightConfig {
    pub coroot_pairings: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointConfig {
    pub alpha_values: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapsConfig {
    #[serde(default = "default_tits_cap")]
    pub tits_cap: usize,
    #[serde(default = "default_string_cap")]
    pub string_cap: usize,
}

impl Default for CapsConfig {
    fn default() -> Self {
        CapsConfig { tits_cap: DEFAULT_TITS_CAP, string_cap: DEFAULT_STRING_CAP }
    }
}

fn default_tits_cap() -> usize {
    DEFAULT_TITS_CAP
}

fn default_string_cap() -> usize {
    DEFAULT_STRING_CAP
}

fn default_digits() -> u32 {
    PrecisionContext::DEFAULT_DIGITS
}

/// Raw configuration as it appears in the file.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub cartan: Vec<Vec<i64>>,
    #[serde(default)]
    pub lambda: Option<WeightConfig>,
    #[serde(default)]
    pub point: Option<PointConfig>,
    #[serde(default)]
    pub mu: Option<WeightConfig>,
    #[serde(default = "default_digits")]
    pub precision_digits: u32,
    #[serde(default)]
    pub max_length: Option<usize>,
    #[serde(default, rename = "M")]
    pub m: Option<String>,
    #[serde(default, rename = "N")]
    pub n: Option<String>,
    #[serde(default)]
    pub caps: CapsConfig,
}

impl JobConfig {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            if path == "." {
                Error::Config(e.inner().to_string())
            } else {
                Error::Config(format!("{path}: {}", e.inner()))
            }
        })
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }
}

/// A configuration with every present field parsed and checked against the rank.
#[derive(Debug, Clone)]
pub struct Job {
    pub cartan: CartanMatrix,
    pub lambda: Option<WeightVector>,
    pub point: Option<PointH>,
    pub mu: Option<WeightVector>,
    pub precision: PrecisionContext,
    pub max_length: Option<usize>,
    pub m: Option<BigRational>,
    pub n: Option<BigRational>,
    pub tits_cap: usize,
    pub string_cap: usize,
}

fn parse_list(values: &[String], field: &str) -> Result<Vec<BigRational>> {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| parse_rational(v).map_err(|e| Error::Config(format!("{field}[{i}]: {e}"))))
        .collect()
}

fn check_len(len: usize, rank: usize, field: &str) -> Result<()> {
    if len == rank {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!("{field} has {len} entries but the rank is {rank}")))
    }
}

impl Job {
    pub fn from_config(cfg: &JobConfig) -> Result<Self> {
        let precision = PrecisionContext::new(cfg.precision_digits)
            .map_err(|e| Error::Config(format!("precision_digits: {e}")))?;
        let lambda = cfg.lambda.as_ref().map(|l| parse_list(&l.coroot_pairings, "lambda.coroot_pairings")).transpose()?;
        let point = cfg.point.as_ref().map(|p| parse_list(&p.alpha_values, "point.alpha_values")).transpose()?;
        let mu = cfg.mu.as_ref().map(|l| parse_list(&l.coroot_pairings, "mu.coroot_pairings")).transpose()?;
        let m = cfg.m.as_deref().map(|s| parse_rational(s).map_err(|e| Error::Config(format!("M: {e}")))).transpose()?;
        let n = cfg.n.as_deref().map(|s| parse_rational(s).map_err(|e| Error::Config(format!("N: {e}")))).transpose()?;
        let cartan = CartanMatrix::new(cfg.cartan.clone())?;
        let r = cartan.rank();
        if let Some(l) = &lambda {
            check_len(l.len(), r, "lambda.coroot_pairings")?;
        }
        if let Some(p) = &point {
            check_len(p.len(), r, "point.alpha_values")?;
        }
        if let Some(u) = &mu {
            check_len(u.len(), r, "mu.coroot_pairings")?;
        }
        Ok(Job {
            cartan,
            lambda: lambda.map(WeightVector),
            point: point.map(PointH),
            mu: mu.map(WeightVector),
            precision,
            max_length: cfg.max_length,
            m,
            n,
            tits_cap: cfg.caps.tits_cap,
            string_cap: cfg.caps.string_cap,
        })
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        Self::from_config(&JobConfig::from_json_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_frac};

    #[test]
    fn full_config() {
        let job = Job::from_json_str(
            r#"{
                "cartan": [[2, -3], [-3, 2]],
                "lambda": {"coroot_pairings": ["2", "5/2"]},
                "point": {"alpha_values": ["1", "0.5"]},
                "mu": {"coroot_pairings": ["1", "1"]},
                "precision_digits": 40,
                "max_length": 12,
                "M": "2",
                "N": "1000",
                "caps": {"tits_cap": 50, "string_cap": 8}
            }"#,
        )
        .unwrap();
        assert_eq!(job.lambda.unwrap().0, vec![rat(2), rat_frac(5, 2)]);
        assert_eq!(job.point.unwrap().0, vec![rat(1), rat_frac(1, 2)]);
        assert_eq!(job.precision.digits(), 40);
        assert_eq!(job.max_length, Some(12));
        assert_eq!(job.m, Some(rat(2)));
        assert_eq!(job.tits_cap, 50);
        assert_eq!(job.string_cap, 8);
    }

    #[test]
    fn defaults() {
        let job = Job::from_json_str(r#"{"cartan": [[2, -1], [-1, 2]]}"#).unwrap();
        assert!(job.lambda.is_none());
        assert_eq!(job.precision.digits(), 30);
        assert_eq!(job.tits_cap, DEFAULT_TITS_CAP);
    }

    #[test]
    fn errors_name_the_field() {
        let e = Job::from_json_str(r#"{"cartan": [[2]], "bogus": 1}"#).unwrap_err();
        assert!(matches!(&e, Error::Config(m) if m.contains("bogus")));
        let e = Job::from_json_str(r#"{"cartan": [[2]], "caps": {"tits_cap": "x"}}"#).unwrap_err();
        assert!(matches!(&e, Error::Config(m) if m.contains("caps.tits_cap")));
        let e = Job::from_json_str(r#"{"cartan": [[2]], "lambda": {"coroot_pairings": ["1/0"]}}"#).unwrap_err();
        assert!(matches!(&e, Error::Config(m) if m.contains("lambda.coroot_pairings[0]")));
        let e = Job::from_json_str(r#"{"cartan": [[2]], "precision_digits": 5}"#).unwrap_err();
        assert!(matches!(e, Error::Config(_)));
        let e = Job::from_json_str(r#"{"cartan": [[2]], "point": {"alpha_values": ["1", "2"]}}"#).unwrap_err();
        assert!(matches!(e, Error::DimensionMismatch(_)));
        let e = Job::from_json_str(r#"{"cartan": [[2, -2], [-2, 2]]}"#).unwrap_err();
        assert_eq!(e, Error::SingularMatrix);
    }
}
