//! `key = value` defaults file. Blank lines and `#` comments are skipped;
//! command-line flags take precedence over every key.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

use crate::args::Format;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub trace_tol: Option<f64>,
    pub eps: Option<String>,
    pub cache_dir: Option<PathBuf>,
    pub format: Option<Format>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut config = Config::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("line {}: expected key = value", lineno + 1);
            };
            let (key, value) = (key.trim(), value.trim());
            let ctx = || format!("line {}: bad value for `{key}`", lineno + 1);
            match key {
                "samples" => config.samples = Some(value.parse().with_context(ctx)?),
                "seed" => config.seed = Some(value.parse().with_context(ctx)?),
                "tol" => config.tol = Some(value.parse().with_context(ctx)?),
                "trace_tol" => config.trace_tol = Some(value.parse().with_context(ctx)?),
                "eps" => config.eps = Some(value.to_string()),
                "cache_dir" => config.cache_dir = Some(PathBuf::from(value)),
                "format" => {
                    config.format = Some(
                        <Format as clap::ValueEnum>::from_str(value, true)
                            .map_err(anyhow::Error::msg)
                            .with_context(ctx)?,
                    )
                }
                other => bail!("line {}: unknown key `{other}`", lineno + 1),
            }
        }
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }
}
