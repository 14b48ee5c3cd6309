//! Settings resolution: command-line flags, then environment, then a TOML
//! config file, then built-in defaults.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::haar::Tolerances;

pub const ENV_CACHE_DIR: &str = "LIEAVG_CACHE_DIR";
pub const ENV_CONFIG: &str = "LIEAVG_CONFIG";
pub const ENV_SAMPLES: &str = "LIEAVG_SAMPLES";
pub const ENV_SEED: &str = "LIEAVG_SEED";

pub const DEFAULT_SAMPLES: usize = 100_000;
pub const DEFAULT_SEED: u64 = 42;

/// Keys accepted in the config file.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigFile {
    pub cache_dir: Option<PathBuf>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub tolerances: Option<Tolerances>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }
}

/// Values given on the command line.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub cache_dir: Option<PathBuf>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub config: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Settings {
    pub cache_dir: Option<PathBuf>,
    pub samples: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
}

impl Settings {
    /// Resolve with `env` as the environment lookup.
    pub fn resolve(flags: &Overrides, env: impl Fn(&str) -> Option<String>) -> Result<Self> {
        let config_path = flags.config.clone().or_else(|| env(ENV_CONFIG).map(PathBuf::from));
        let file = match config_path {
            Some(p) => ConfigFile::load(&p)?,
            None => ConfigFile::default(),
        };
        let parse_env = |key: &str| -> Result<Option<u64>> {
            env(key)
                .map(|v| v.trim().parse::<u64>().map_err(|_| Error::Parse(format!("{key}={v:?} is not an integer"))))
                .transpose()
        };
        Ok(Settings {
            cache_dir: flags
                .cache_dir
                .clone()
                .or_else(|| env(ENV_CACHE_DIR).map(PathBuf::from))
                .or(file.cache_dir),
            samples: match flags.samples {
                Some(s) => s,
                None => parse_env(ENV_SAMPLES)?
                    .map(|s| s as usize)
                    .or(file.samples)
                    .unwrap_or(DEFAULT_SAMPLES),
            },
            seed: match flags.seed {
                Some(s) => s,
                None => parse_env(ENV_SEED)?.or(file.seed).unwrap_or(DEFAULT_SEED),
            },
            tolerances: file.tolerances.unwrap_or_default(),
        })
    }
}
