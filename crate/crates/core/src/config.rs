//! Run configuration, read from TOML.
//!
//! ```toml
//! [span]
//! max_chars = 45
//! target_chars = 32
//! count_mode = "characters"
//!
//! [cascade]
//! priority_prepositions = ["afin", "après"]
//!
//! [tree]
//! epsilon = 0.01
//!
//! [evo]
//! population = 40
//! seed = 42
//! ```

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bridge::DEFAULT_EPSILON;
use crate::cascade::CascadeConfig;
use crate::error::{Error, Result};
use crate::evo::EvoConfig;
use crate::span::SpanConfig;
use crate::tree::DEFAULT_ORACLE_CAP;

pub const CONFIG_ENV: &str = "RHESIS_CONFIG";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CascadeSection {
    pub priority_prepositions: BTreeSet<String>,
    pub clause_deprels: BTreeSet<String>,
    pub glue_deprels: BTreeSet<String>,
    pub punctuation: BTreeSet<String>,
}

impl Default for CascadeSection {
    fn default() -> Self {
        let d = CascadeConfig::default();
        CascadeSection {
            priority_prepositions: d.priority_prepositions,
            clause_deprels: d.clause_deprels,
            glue_deprels: d.glue_deprels,
            punctuation: d.punctuation,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TreeSection {
    /// Probability assumed for spans missing from a score table.
    pub epsilon: f64,
    pub oracle_cap: usize,
}

impl Default for TreeSection {
    fn default() -> Self {
        TreeSection {
            epsilon: DEFAULT_EPSILON,
            oracle_cap: DEFAULT_ORACLE_CAP,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub span: SpanConfig,
    pub cascade: CascadeSection,
    pub tree: TreeSection,
    pub evo: EvoConfig,
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Config = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Config::from_toml(&std::fs::read_to_string(path)?)
    }

    /// Loads `path`, else the file named by `RHESIS_CONFIG`, else defaults.
    pub fn resolve(path: Option<&Path>) -> Result<Self> {
        match path {
            Some(p) => Config::load(p),
            None => match std::env::var_os(CONFIG_ENV) {
                Some(p) if !p.is_empty() => Config::load(p),
                _ => Ok(Config::default()),
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.span.validate()?;
        self.evo.validate()?;
        if !(self.tree.epsilon > 0.0 && self.tree.epsilon < 1.0) {
            return Err(Error::Config("tree.epsilon must lie in (0, 1)".into()));
        }
        let c = &self.cascade;
        for (name, set) in [
            ("punctuation", &c.punctuation),
            ("clause_deprels", &c.clause_deprels),
            ("glue_deprels", &c.glue_deprels),
            ("priority_prepositions", &c.priority_prepositions),
        ] {
            if set.is_empty() {
                return Err(Error::Config(format!("cascade.{name} must not be empty")));
            }
        }
        Ok(())
    }

    pub fn cascade_config(&self) -> CascadeConfig {
        CascadeConfig {
            span: self.span,
            priority_prepositions: self.cascade.priority_prepositions.clone(),
            clause_deprels: self.cascade.clause_deprels.clone(),
            glue_deprels: self.cascade.glue_deprels.clone(),
            punctuation: self.cascade.punctuation.clone(),
        }
    }

    pub fn to_toml(&self) -> Result<String> {
        Ok(toml::to_string(self)?)
    }
}
