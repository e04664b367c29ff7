//! The span condition: the maximum length of a rhesis.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMode {
    /// Unicode scalar values, spaces included.
    Characters,
    /// Whitespace-separated forms.
    Words,
}

/// Maximum and preferred rhesis length.
///
/// Despite the field names, both limits are expressed in the unit chosen by
/// `count_mode`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpanConfig {
    pub max_chars: usize,
    pub target_chars: usize,
    pub count_mode: CountMode,
}

impl Default for SpanConfig {
    fn default() -> Self {
        SpanConfig {
            max_chars: 45,
            target_chars: 32,
            count_mode: CountMode::Characters,
        }
    }
}

impl SpanConfig {
    pub fn new(max_chars: usize, target_chars: usize) -> Result<Self> {
        let cfg = SpanConfig {
            max_chars,
            target_chars,
            count_mode: CountMode::Characters,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Character-mode config whose target is clamped under `max_chars`.
    pub fn with_max(max_chars: usize) -> Self {
        SpanConfig {
            max_chars,
            target_chars: SpanConfig::default().target_chars.min(max_chars),
            ..SpanConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.target_chars == 0 || self.target_chars > self.max_chars {
            return Err(Error::Config(format!(
                "span needs 0 < target_chars ({}) <= max_chars ({})",
                self.target_chars, self.max_chars
            )));
        }
        Ok(())
    }

    /// Length of `text` under the configured unit.
    pub fn measure(&self, text: &str) -> usize {
        match self.count_mode {
            CountMode::Characters => text.chars().count(),
            CountMode::Words => text.split_whitespace().count(),
        }
    }

    pub fn fits(&self, text: &str) -> bool {
        self.measure(text) <= self.max_chars
    }
}

pub fn fits_span(text: &str, cfg: &SpanConfig) -> bool {
    cfg.fits(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn classmates_lines() {
        let cfg = SpanConfig::with_max(45);
        assert!(fits_span("all of them except one.", &cfg));
        assert!(fits_span("", &cfg));
        let long = "She's not a monkey but if she had to be an animal,";
        assert_eq!(long.chars().count(), 50);
        assert!(!fits_span(long, &cfg));
    }

    #[test]
    fn counts_scalars_not_bytes() {
        let cfg = SpanConfig::with_max(5);
        assert!(fits_span("éèàçô", &cfg));
        assert!(!fits_span("éèàçôù", &cfg));
    }

    #[test]
    fn word_mode() {
        let cfg = SpanConfig {
            max_chars: 3,
            target_chars: 2,
            count_mode: CountMode::Words,
        };
        assert!(cfg.fits("l'homme est  grand"));
        assert!(!cfg.fits("l'homme est très grand"));
    }

    #[test]
    fn rejects_target_above_max() {
        assert!(SpanConfig::new(10, 11).is_err());
        assert!(SpanConfig::new(10, 0).is_err());
        assert!(SpanConfig::new(10, 10).is_ok());
    }

    proptest! {
        #[test]
        fn prefixes_and_suffixes_of_fitting_text_fit(text in "\\PC{0,60}", max in 1usize..60, cut in 0usize..60) {
            let cfg = SpanConfig::with_max(max);
            if cfg.fits(&text) {
                let chars: Vec<char> = text.chars().collect();
                let cut = cut.min(chars.len());
                let prefix: String = chars[..cut].iter().collect();
                let suffix: String = chars[cut..].iter().collect();
                prop_assert!(cfg.fits(&prefix));
                prop_assert!(cfg.fits(&suffix));
            }
        }
    }
}
