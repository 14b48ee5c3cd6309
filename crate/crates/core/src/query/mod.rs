//! Query layer behind the `lieavg` command: each command returns a
//! [`QueryResult`] that serializes to one JSON document.

mod cache;
pub mod cli;
mod commands;
mod config;
mod result;
mod selftest;

pub use cache::{CacheStatus, TableCache, CACHE_FORMAT};
pub use commands::{
    asymptotics, branch, char_table, expect_trace, expect_twisted, g, lr, mc_verify, ratio, GMethod, SeriesRequest,
};
pub use config::{ConfigFile, Overrides, Settings, DEFAULT_SAMPLES, DEFAULT_SEED, ENV_CACHE_DIR, ENV_CONFIG, ENV_SAMPLES, ENV_SEED};
pub use result::{ExactValue, Metadata, QueryResult};
pub use selftest::{selftest, SelftestCheck, SelftestReport};
