//! Instance files.
//!
//! One `key = value` pair per line, values in the rational-function grammar
//! (`a` is α, `b` is β). Blank lines and text after `#` are ignored.
//!
//! ```text
//! delta = a + b^2
//! lambda = a
//! beta = b
//! theta_images = b^2, a    # images of α and β
//! theta_choice = 1
//! ```
//!
//! `delta`, `lambda` and `beta` are required. `theta_images` defaults to the
//! standard θ (α ↦ β², β ↦ α) and `theta_choice` to 1.

use outer_f4::base_field::{FieldError, RatFn, TitsEndoK};
use outer_f4::f4_space::PolarTriple;
use outer_f4::polarity_algebra::PolarityAlgebra;
use outer_f4::quad_ext::{ExtDescriptor, ThetaChoice};
use std::collections::BTreeMap;
use std::path::Path;

/// Name of the builtin instance: δ = α + β², λ = α, β = β, θ: β ↦ α.
pub const BUILTIN: &str = "tru7";

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("witness mismatch: λ^θ + λ does not equal δ")]
    WitnessMismatch,
    #[error("β must be nonzero")]
    ZeroBeta,
    #[error("invalid instance: {0}")]
    Invalid(String),
}

/// The textual fields of an instance, as read.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceConfig {
    pub delta: String,
    pub lambda: String,
    pub beta: String,
    pub theta_images: (String, String),
    pub theta_choice: u8,
}

/// A validated instance and the algebra it defines.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub config: InstanceConfig,
    pub algebra: PolarityAlgebra,
}

const KEYS: [&str; 5] = ["delta", "lambda", "beta", "theta_images", "theta_choice"];

impl InstanceConfig {
    pub fn builtin() -> Self {
        InstanceConfig {
            delta: "a + b^2".into(),
            lambda: "a".into(),
            beta: "b".into(),
            theta_images: ("b^2".into(), "a".into()),
            theta_choice: 1,
        }
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut kv = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                ConfigError::Parse(format!("line {}: expected `key = value`", n + 1))
            })?;
            let k = k.trim();
            if !KEYS.contains(&k) {
                return Err(ConfigError::Parse(format!(
                    "line {}: unknown key `{k}`",
                    n + 1
                )));
            }
            if kv.insert(k.to_string(), v.trim().to_string()).is_some() {
                return Err(ConfigError::Parse(format!(
                    "line {}: duplicate key `{k}`",
                    n + 1
                )));
            }
        }
        let mut take = |k: &str| kv.remove(k);
        let required = |v: Option<String>, k: &str| {
            v.ok_or_else(|| ConfigError::Parse(format!("missing key `{k}`")))
        };
        let delta = required(take("delta"), "delta")?;
        let lambda = required(take("lambda"), "lambda")?;
        let beta = required(take("beta"), "beta")?;
        let theta_images = match take("theta_images") {
            None => Self::builtin().theta_images,
            Some(s) => {
                let (x, y) = s.split_once(',').ok_or_else(|| {
                    ConfigError::Parse("theta_images needs two comma-separated values".into())
                })?;
                (x.trim().to_string(), y.trim().to_string())
            }
        };
        let theta_choice = match take("theta_choice") {
            None => 1,
            Some(s) => match s.as_str() {
                "1" => 1,
                "2" => 2,
                _ => {
                    return Err(ConfigError::Parse(format!(
                        "theta_choice must be 1 or 2, got `{s}`"
                    )))
                }
            },
        };
        Ok(InstanceConfig {
            delta,
            lambda,
            beta,
            theta_images,
            theta_choice,
        })
    }

    /// Parse every value and validate the instance.
    pub fn build(&self) -> Result<PolarityAlgebra, ConfigError> {
        let field = |key: &str, src: &str| -> Result<RatFn, ConfigError> {
            src.parse::<RatFn>().map_err(|e| match e {
                FieldError::Parse(m) => ConfigError::Parse(format!("{key}: {m}")),
                other => ConfigError::Parse(format!("{key}: {other}")),
            })
        };
        let delta = field("delta", &self.delta)?;
        let lambda = field("lambda", &self.lambda)?;
        let beta = field("beta", &self.beta)?;
        let img_a = field("theta_images", &self.theta_images.0)?;
        let img_b = field("theta_images", &self.theta_images.1)?;
        if beta.is_zero() {
            return Err(ConfigError::ZeroBeta);
        }
        let theta =
            TitsEndoK::new(img_a, img_b).map_err(|e| ConfigError::Invalid(e.to_string()))?;
        let ext = ExtDescriptor::new(delta, lambda, theta).map_err(|e| match e {
            outer_f4::Error::WitnessMismatch => ConfigError::WitnessMismatch,
            other => ConfigError::Invalid(other.to_string()),
        })?;
        let choice = ThetaChoice::from_index(self.theta_choice).expect("validated on parse");
        let triple = PolarTriple::new(ext, choice, beta).map_err(|e| match e {
            outer_f4::Error::ZeroBeta => ConfigError::ZeroBeta,
            other => ConfigError::Invalid(other.to_string()),
        })?;
        Ok(PolarityAlgebra::new(triple))
    }
}

/// Load the builtin instance by name, or an instance file by path.
pub fn load_instance(src: &str) -> Result<Instance, ConfigError> {
    let config = if src == BUILTIN {
        InstanceConfig::builtin()
    } else {
        let text = std::fs::read_to_string(Path::new(src)).map_err(|e| ConfigError::Io {
            path: src.to_string(),
            message: e.to_string(),
        })?;
        InstanceConfig::parse(&text)?
    };
    let algebra = config.build()?;
    Ok(Instance {
        name: src.to_string(),
        config,
        algebra,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_loads() {
        let inst = load_instance(BUILTIN).unwrap();
        assert_eq!(inst.algebra.space().beta(), &RatFn::beta());
        assert_eq!(inst.algebra.space().choice(), ThetaChoice::One);
    }

    #[test]
    fn wrong_witness_is_rejected() {
        // β^θ + β = α + β, not α + β²
        let text = "delta = a + b^2\nlambda = b\nbeta = b\n";
        let err = InstanceConfig::parse(text).unwrap().build().unwrap_err();
        assert!(matches!(err, ConfigError::WitnessMismatch), "{err}");
    }

    #[test]
    fn missing_key_is_a_parse_error() {
        let err = InstanceConfig::parse("delta = a + b^2\nlambda = a\n").unwrap_err();
        assert!(
            matches!(err, ConfigError::Parse(ref m) if m.contains("beta")),
            "{err}"
        );
    }

    #[test]
    fn zero_beta_is_rejected() {
        let err = InstanceConfig::parse("delta = a + b^2\nlambda = a\nbeta = b + b\n")
            .unwrap()
            .build()
            .unwrap_err();
        assert!(matches!(err, ConfigError::ZeroBeta), "{err}");
    }

    #[test]
    fn comments_defaults_and_explicit_images() {
        let text = "# builtin, spelled out\ndelta = a + b^2\nlambda = a   # witness\nbeta = b\ntheta_images = b^2, a\ntheta_choice = 2\n";
        let cfg = InstanceConfig::parse(text).unwrap();
        assert_eq!(cfg.theta_choice, 2);
        assert_eq!(cfg.build().unwrap().space().choice(), ThetaChoice::Two);
        assert!(InstanceConfig::parse("delta = a\nbogus = 1\n").is_err());
    }
}
