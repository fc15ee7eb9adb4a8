//! `moebius`: sieve μ with a persistent cache, sweep the delta-sum identity,
//! query exact outcome probabilities, and emit density, walk and randomness
//! data as CSV or JSON.

mod cache;
mod commands;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use moebius_core::Parity;

use crate::cache::TableCache;

pub const CACHE_DIR_ENV: &str = "MOEBIUS_CACHE_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "moebius",
    version,
    about = "Möbius/Mertens sieving, identity checks and μ statistics"
)]
struct Cli {
    /// Directory holding cached μ tables.
    #[arg(long, global = true, env = CACHE_DIR_ENV, default_value = "cache")]
    cache_dir: PathBuf,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    All,
    Odd,
    Even,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::All => Parity::All,
            ParityArg::Odd => Parity::Odd,
            ParityArg::Even => Parity::Even,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: u64,
    pub end: u64,
}

fn parse_span(s: &str) -> Result<Span, String> {
    let (a, b) = s.split_once(':').ok_or("expected A:B")?;
    let start: u64 = a.trim().parse().map_err(|e| format!("bad start {a:?}: {e}"))?;
    let end: u64 = b.trim().parse().map_err(|e| format!("bad end {b:?}: {e}"))?;
    if start == 0 || start >= end {
        return Err(format!("range {start}:{end} must satisfy 1 ≤ A < B"));
    }
    Ok(Span { start, end })
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sieve μ(1..=N) into the cache and print a summary.
    Sieve {
        #[arg(long, visible_alias = "max", value_parser = clap::value_parser!(u64).range(1..))]
        limit: u64,
    },
    /// Check the delta-sum identity against the sieve for every n in [2, MAX].
    VerifyIdentity {
        #[arg(long, visible_alias = "limit", value_parser = clap::value_parser!(u64).range(2..))]
        max: u64,
        /// Use the odd-restricted identity on odd n only.
        #[arg(long)]
        odd_only: bool,
    },
    /// Exact Pr(μ = −1), Pr(μ = +1), Pr(μ = 0) for one n.
    Probs {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        n: u64,
        #[arg(long, value_enum, default_value = "all")]
        parity: ParityArg,
    },
    /// Cumulative or windowed μ frequencies with the limiting density.
    Density {
        #[arg(long, visible_alias = "limit", value_parser = clap::value_parser!(u64).range(1..))]
        max: u64,
        #[arg(long, value_enum, default_value = "all")]
        parity: ParityArg,
        /// Report frequencies over consecutive windows of this length.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        window: Option<u64>,
    },
    /// Mertens walk at geometric checkpoints with the running-max fit.
    Walk {
        #[arg(long, visible_alias = "limit")]
        max: u64,
    },
    /// Fair-coin walk simulation against the normal limit.
    Cointoss {
        #[arg(long, default_value_t = 10_000)]
        steps: u64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.96)]
        c: f64,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
    },
    /// Randomness tests on the μ signs of squarefree integers.
    Mustats {
        /// Integers A ≤ n < B.
        #[arg(long, value_parser = parse_span, required_unless_present = "synthetic")]
        range: Option<Span>,
        #[arg(long, value_enum, default_value = "all")]
        parity: ParityArg,
        /// Autocorrelation is reported at lags 1..=LAG.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        lag: u64,
        /// Test a simulated coin instead of μ.
        #[arg(long)]
        synthetic: bool,
        #[arg(long, default_value_t = 10_000)]
        length: usize,
        #[arg(long, default_value_t = 0.5)]
        p_plus: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache = TableCache::new(&cli.cache_dir);
    let ctx = commands::Context {
        cache: &cache,
        format: cli.format,
        out: cli.out.as_deref(),
    };
    let result = match cli.command {
        Command::Sieve { limit } => commands::sieve(&ctx, limit),
        Command::VerifyIdentity { max, odd_only } => commands::verify_identity(&ctx, max, odd_only),
        Command::Probs { n, parity } => commands::probs(&ctx, n, parity.into()),
        Command::Density { max, parity, window } => commands::density(&ctx, max, parity.into(), window),
        Command::Walk { max } => commands::walk(&ctx, max),
        Command::Cointoss {
            steps,
            trials,
            seed,
            c,
            epsilon,
        } => commands::cointoss(&ctx, steps, trials, seed, c, epsilon),
        Command::Mustats {
            range,
            parity,
            lag,
            synthetic,
            length,
            p_plus,
            seed,
        } => {
            let source = if synthetic {
                commands::SignSource::Coin { length, p_plus, seed }
            } else {
                commands::SignSource::Moebius {
                    span: range.expect("clap enforces --range"),
                    parity: parity.into(),
                }
            };
            commands::mustats(&ctx, source, lag as usize)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("moebius: {e}");
            e.exit_code()
        }
    }
}
