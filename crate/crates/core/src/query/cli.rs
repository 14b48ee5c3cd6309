//! Argument parsing and dispatch for the `lieavg` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_rational::BigRational;

use super::{
    asymptotics, branch, char_table, expect_trace, expect_twisted, g, lr, mc_verify, ratio, selftest, GMethod,
    Overrides, QueryResult, SeriesRequest, Settings, TableCache,
};
use crate::error::Error;
use crate::expectation;
use crate::fourier::FourierData;
use crate::group::{Family, GroupSpec, Rank};
use crate::haar::{McConfig, Observable, SignedWeight};
use crate::partition::Partition;

pub const EXIT_OTHER: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_OUT_OF_RANGE: i32 = 3;
pub const EXIT_CONSISTENCY: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "lieavg", version, about = "Exact and Monte Carlo averages over Sp(2n), SO(2n) and SO(2n+1)")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Worker threads for Monte Carlo (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Character-table cache directory (also LIEAVG_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// TOML config file (also LIEAVG_CONFIG).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Cross-check independent computation routes on every query.
    #[arg(long, global = true)]
    verify: bool,
    /// Run the cross-validation suite.
    #[arg(long)]
    selftest: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// E_G[p_lambda].
    ExpectTrace {
        #[arg(long)]
        group: Family,
        #[arg(long, default_value = "stable")]
        rank: Rank,
        #[arg(long)]
        lambda: Partition,
    },
    /// E_G[chi_gamma p_lambda].
    ExpectTwisted {
        #[arg(long)]
        group: Family,
        #[arg(long, default_value = "stable")]
        rank: Rank,
        #[arg(long)]
        gamma: Partition,
        #[arg(long)]
        lambda: Partition,
    },
    /// Limit ratio R(gamma, c) = s_gamma(p_i = i c_i).
    Ratio {
        #[arg(long)]
        gamma: Partition,
        #[arg(long)]
        coeffs: FourierData<BigRational>,
    },
    /// Johansson limit and twisted asymptotics.
    Asymptotics {
        #[arg(long)]
        group: Family,
        #[arg(long)]
        coeffs: FourierData<BigRational>,
        #[arg(long)]
        gamma: Option<Partition>,
        /// Also sum the exact series at this rank.
        #[arg(long)]
        rank: Option<usize>,
        /// Weight cutoff of the series (default: the rank).
        #[arg(long, requires = "rank")]
        cutoff: Option<usize>,
    },
    /// Restriction of s_lambda from U(m) to the group.
    Branch {
        #[arg(long)]
        group: Family,
        #[arg(long)]
        lambda: Partition,
    },
    /// Character table of S_k.
    CharTable {
        #[arg(long)]
        k: usize,
    },
    /// Littlewood-Richardson coefficient c^lambda_{mu nu}.
    Lr {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
        #[arg(long)]
        nu: Partition,
    },
    /// Number of matchings preserved by a permutation of cycle type lambda.
    G {
        #[arg(long)]
        lambda: Partition,
        /// closed, brute, or rains:<2n>.
        #[arg(long, default_value = "closed")]
        method: GMethod,
    },
    /// Monte Carlo estimate against the exact value.
    McVerify {
        #[arg(long)]
        group: Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: Option<Partition>,
        /// Highest weight; a trailing '-' negates the last part (so-even).
        #[arg(long)]
        gamma: Option<SignedWeight>,
        /// Fourier coefficients of Phi instead of a trace product.
        #[arg(long, conflicts_with = "lambda")]
        coeffs: Option<FourierData<BigRational>>,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::OutOfStableRange { .. } => EXIT_OUT_OF_RANGE,
        Error::Consistency(_) => EXIT_CONSISTENCY,
        _ => EXIT_OTHER,
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), |k| std::env::var(k).ok(), &mut stdout.lock(), &mut stderr.lock())
}

/// Parse `args`, run, and write the result; returns the exit code.
pub fn run<I, T>(args: I, env: impl Fn(&str) -> Option<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match execute(&cli, env, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cli: &Cli, env: impl Fn(&str) -> Option<String>, out: &mut dyn Write) -> crate::Result<i32> {
    let settings = Settings::resolve(
        &Overrides {
            cache_dir: cli.cache_dir.clone(),
            samples: cli.samples,
            seed: cli.seed,
            config: cli.config.clone(),
        },
        env,
    )?;
    if cli.verify {
        expectation::set_verification(true);
    }
    let mut code = 0;
    if cli.selftest {
        let report = selftest()?;
        let text = if cli.pretty {
            serde_json::to_string_pretty(&report)
        } else {
            serde_json::to_string(&report)
        }
        .map_err(|e| Error::Io(e.to_string()))?;
        writeln!(out, "{text}")?;
        if !report.passed {
            code = EXIT_CONSISTENCY;
        }
    }
    let Some(command) = &cli.command else {
        if !cli.selftest {
            return Err(Error::Parse("no command given (see --help)".into()));
        }
        return Ok(code);
    };
    let result = dispatch(command, &settings, cli.threads)?;
    if cli.pretty {
        write!(out, "{}", result.to_pretty())?;
    } else {
        writeln!(out, "{}", result.to_json())?;
    }
    Ok(code)
}

fn dispatch(command: &Command, settings: &Settings, threads: usize) -> crate::Result<QueryResult> {
    let cache = settings.cache_dir.as_ref().map(TableCache::new);
    match command {
        Command::ExpectTrace { group, rank, lambda } => expect_trace(&GroupSpec::new(*group, *rank), lambda),
        Command::ExpectTwisted {
            group,
            rank,
            gamma,
            lambda,
        } => expect_twisted(&GroupSpec::new(*group, *rank), gamma, lambda, cache.as_ref()),
        Command::Ratio { gamma, coeffs } => ratio(gamma, coeffs),
        Command::Asymptotics {
            group,
            coeffs,
            gamma,
            rank,
            cutoff,
        } => {
            let series = rank.map(|r| SeriesRequest {
                rank: r,
                cutoff: cutoff.unwrap_or(r),
            });
            asymptotics(*group, coeffs, gamma.as_ref(), series)
        }
        Command::Branch { group, lambda } => branch(*group, lambda),
        Command::CharTable { k } => char_table(*k, cache.as_ref()),
        Command::Lr { lambda, mu, nu } => lr(lambda, mu, nu),
        Command::G { lambda, method } => g(lambda, *method),
        Command::McVerify {
            group,
            n,
            lambda,
            gamma,
            coeffs,
        } => {
            if *n == 0 {
                return Err(Error::Parse("--n must be positive".into()));
            }
            let observable = match (coeffs, gamma, lambda) {
                (Some(f), None, _) => Observable::Phi(f.to_float()),
                (Some(f), Some(gamma), _) => Observable::TwistedPhi {
                    gamma: gamma.clone(),
                    f: f.to_float(),
                },
                (None, None, Some(lambda)) => Observable::TraceProduct(lambda.clone()),
                (None, Some(gamma), Some(lambda)) => Observable::Twisted {
                    gamma: gamma.clone(),
                    lambda: lambda.clone(),
                },
                (None, _, None) => return Err(Error::Parse("mc-verify needs --lambda or --coeffs".into())),
            };
            let config = McConfig {
                samples: settings.samples,
                seed: settings.seed,
                tolerances: settings.tolerances.clone(),
            };
            mc_verify(&GroupSpec::finite(*group, *n), &observable, &config, threads)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["lieavg"];
        full.extend_from_slice(args);
        let code = run(full, |_| None, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn exit_codes() {
        let (code, out, _) = call(&["expect-trace", "--group", "sp", "--rank", "stable", "--lambda", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"numerator\":\"-1\""));
        assert_eq!(call(&["expect-trace", "--group", "xx", "--lambda", "2"]).0, EXIT_PARSE);
        assert_eq!(call(&["expect-trace", "--group", "sp", "--lambda", "2,a"]).0, EXIT_PARSE);
        let (code, _, err) = call(&["expect-trace", "--group", "so-odd", "--rank", "1", "--lambda", "1,1"]);
        assert_eq!(code, EXIT_OUT_OF_RANGE);
        assert!(err.contains("mc-verify"));
        assert_eq!(call(&[]).0, EXIT_PARSE);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn ratio_command() {
        let (code, out, _) = call(&["ratio", "--gamma", "2", "--coeffs", "c1=1/2,c2=1/3"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"numerator\":\"11\",\"denominator\":\"24\""));
        let (code, out, _) = call(&["--pretty", "ratio", "--gamma", "2", "--coeffs", "c1=1/2,c2=1/3"]);
        assert_eq!(code, 0);
        assert!(out.contains("11/24"));
    }
}
