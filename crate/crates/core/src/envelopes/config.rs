//! Declarative envelope / criterion configuration (TOML).
//!
//! ```toml
//! [envelope]
//! family = "wright"            # lehmer | chen | wright | mahler
//! alpha = "0.2315168134488983705603564064"
//! beta = "0.43"
//! gamma = "2.009445660877013753064908765816"
//! n_start = 1
//!
//! [criterion]
//! preset = "bo-planepartition"
//! n3 = 40
//! h = "1.86"
//! ```
//!
//! Constants are decimal or `p/q` strings and are read as exact rationals.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{BoundEnvelope, Constant, EnvelopeError, MahlerParams, WrightParams};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum EnvelopeSpec {
    Lehmer,
    Chen,
    Wright(WrightParams),
    Mahler(MahlerParams),
}

impl EnvelopeSpec {
    pub fn build(&self) -> BoundEnvelope {
        match self {
            EnvelopeSpec::Lehmer => BoundEnvelope::lehmer(),
            EnvelopeSpec::Chen => BoundEnvelope::chen(),
            EnvelopeSpec::Wright(p) => BoundEnvelope::wright(p),
            EnvelopeSpec::Mahler(p) => BoundEnvelope::mahler(p),
        }
    }
}

/// Overrides applied on top of a named criterion preset.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriterionOverrides {
    pub preset: Option<String>,
    pub n0: Option<u64>,
    pub n1: Option<u64>,
    pub n2: Option<u64>,
    pub n3: Option<u64>,
    /// Constant replacing the preset's `h`.
    pub h: Option<Constant>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub envelope: Option<EnvelopeSpec>,
    pub criterion: Option<CriterionOverrides>,
}

pub fn parse_config(text: &str) -> Result<ConfigFile, EnvelopeError> {
    toml::from_str(text).map_err(|e| EnvelopeError::Config(e.to_string()))
}

pub fn load_config(path: &Path) -> Result<ConfigFile, EnvelopeError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| EnvelopeError::Config(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}
