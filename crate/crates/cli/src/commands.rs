use std::io::Write;
use std::path::Path;

use moebius_core::{
    chi_square_balance, coin_sequence, coin_walk_simulate, delta_prob, density_limits,
    first_identity_mismatch, geometric_grid, interval_of, isqrt, lag_autocorrelation, mertens_series,
    mertens_walk_stats, prob_triple_even, prob_triple_general, prob_triple_odd, runs_test, sieve_moebius,
    sign_sequence_squarefree, IntervalBracket, Parity, SignCounts, TestReport, MIN_TEST_LENGTH,
    MIN_WALK_LIMIT,
};
use serde::Serialize;

use crate::cache::TableCache;
use crate::error::CliError;
use crate::output::{sig12, sink, JsonRational};
use crate::Format;

/// Largest n accepted by `probs`.
pub const PROBS_MAX_N: u64 = 10_000_000_000;

pub struct Context<'a> {
    pub cache: &'a TableCache,
    pub format: Option<Format>,
    pub out: Option<&'a Path>,
}

impl Context<'_> {
    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn write_json(&self, value: &impl Serialize) -> Result<(), CliError> {
        let mut w = sink(self.out)?;
        serde_json::to_writer_pretty(&mut w, value)?;
        writeln!(w)?;
        w.flush()?;
        Ok(())
    }
}

#[derive(Serialize)]
struct SieveSummary {
    limit: u64,
    squarefree: u64,
    mertens: i64,
    cache: String,
}

pub fn sieve(ctx: &Context, limit: u64) -> Result<(), CliError> {
    let (table, path) = ctx.cache.table(limit)?;
    let squarefree = table.squarefree_count();
    let mertens = mertens_series(&table).at(limit);
    let path = path.display().to_string();
    match ctx.format {
        Some(Format::Json) => ctx.write_json(&SieveSummary {
            limit,
            squarefree,
            mertens,
            cache: path,
        }),
        Some(Format::Csv) => {
            let mut w = sink(ctx.out)?;
            writeln!(w, "limit,squarefree,mertens,cache")?;
            writeln!(w, "{limit},{squarefree},{mertens},{path}")?;
            w.flush()?;
            Ok(())
        }
        None => {
            let mut w = sink(ctx.out)?;
            writeln!(
                w,
                "limit={limit} squarefree={squarefree} mertens={mertens} cache={path}"
            )?;
            w.flush()?;
            Ok(())
        }
    }
}

pub fn verify_identity(ctx: &Context, max: u64, odd_only: bool) -> Result<(), CliError> {
    let (table, _) = ctx.cache.table(max)?;
    let which = if odd_only { "odd n" } else { "n" };
    match first_identity_mismatch(&table, max, odd_only)? {
        None => {
            let mut w = sink(ctx.out)?;
            writeln!(w, "identity holds for every {which} in [2, {max}]")?;
            w.flush()?;
            Ok(())
        }
        Some((n, identity, sieve)) => Err(CliError::Verification(format!(
            "n = {n}: identity gives {identity}, sieve gives {sieve}"
        ))),
    }
}

#[derive(Serialize)]
struct ProbsReport {
    n: u64,
    parity: Parity,
    cutoff: u64,
    interval: IntervalBracket,
    p_minus: JsonRational,
    p_plus: JsonRational,
    p_zero: JsonRational,
    /// p_minus − p_plus.
    gap: JsonRational,
    delta_prob: JsonRational,
}

pub fn probs(ctx: &Context, n: u64, parity: Parity) -> Result<(), CliError> {
    if n > PROBS_MAX_N {
        return Err(CliError::usage(format!(
            "probs accepts n ≤ {PROBS_MAX_N}, got {n}"
        )));
    }
    if !parity.admits(n) {
        return Err(CliError::usage(format!("n = {n} is not in the {parity} class")));
    }
    let k = isqrt(n);
    let table = sieve_moebius(2 * k + 2)?;
    let triple = match parity {
        Parity::All => prob_triple_general(n, &table)?,
        Parity::Odd => prob_triple_odd(n, &table)?,
        Parity::Even => prob_triple_even(n, &table)?,
    };
    let interval = interval_of(n, &table)?;
    let delta = delta_prob(n, parity, &table)?;
    ctx.write_json(&ProbsReport {
        n,
        parity,
        cutoff: k,
        interval,
        p_minus: (&triple.p_minus).into(),
        p_plus: (&triple.p_plus).into(),
        p_zero: (&triple.p_zero).into(),
        gap: (&triple.gap()).into(),
        delta_prob: (&delta).into(),
    })
}

#[derive(Debug, Serialize)]
struct DensityRow {
    n: u64,
    freq_minus: f64,
    freq_plus: f64,
    freq_zero: f64,
    freq_squarefree: f64,
    limit: f64,
}

pub const DENSITY_HEADER: &str = "n,freq_minus,freq_plus,freq_zero,freq_squarefree,limit";

pub fn density(ctx: &Context, max: u64, parity: Parity, window: Option<u64>) -> Result<(), CliError> {
    let (table, _) = ctx.cache.table(max)?;
    let limit = density_limits().for_parity(parity).value;

    let mut marks = match window {
        Some(w) => (1..=max / w).map(|i| i * w).collect::<Vec<_>>(),
        None => geometric_grid(10, max),
    };
    if marks.last() != Some(&max) {
        marks.push(max);
    }

    let mut rows = Vec::with_capacity(marks.len());
    let mut counts = SignCounts::default();
    let mut next = 1;
    for &mark in &marks {
        if window.is_some() {
            counts = SignCounts::default();
        }
        for n in next..=mark {
            if parity.admits(n) {
                counts.add(table.get(n));
            }
        }
        next = mark + 1;
        if counts.total() == 0 {
            continue;
        }
        let [freq_minus, freq_plus, freq_zero] = counts.frequencies();
        rows.push(DensityRow {
            n: mark,
            freq_minus,
            freq_plus,
            freq_zero,
            freq_squarefree: counts.squarefree() as f64 / counts.total() as f64,
            limit,
        });
    }

    match ctx.format_or(Format::Csv) {
        Format::Json => ctx.write_json(&rows),
        Format::Csv => {
            let mut w = sink(ctx.out)?;
            writeln!(w, "{DENSITY_HEADER}")?;
            for r in &rows {
                writeln!(
                    w,
                    "{},{},{},{},{},{}",
                    r.n,
                    sig12(r.freq_minus),
                    sig12(r.freq_plus),
                    sig12(r.freq_zero),
                    sig12(r.freq_squarefree),
                    sig12(r.limit)
                )?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

pub const WALK_HEADER: &str = "n,M,sqrt_n,ratio,shift_term";

pub fn walk(ctx: &Context, max: u64) -> Result<(), CliError> {
    if max < MIN_WALK_LIMIT {
        return Err(CliError::usage(format!(
            "walk needs --max ≥ {MIN_WALK_LIMIT}, got {max}"
        )));
    }
    let (table, _) = ctx.cache.table(max)?;
    let stats = mertens_walk_stats(max, &mertens_series(&table))?;
    match ctx.format_or(Format::Csv) {
        Format::Json => ctx.write_json(&stats),
        Format::Csv => {
            let mut w = sink(ctx.out)?;
            writeln!(w, "{WALK_HEADER}")?;
            for c in &stats.checkpoints {
                writeln!(
                    w,
                    "{},{},{},{},{}",
                    c.n,
                    c.mertens,
                    sig12(c.sqrt_n),
                    sig12(c.ratio),
                    sig12(c.shift_term)
                )?;
            }
            writeln!(
                w,
                "# fitted_exponent={} fit_residual={}",
                sig12(stats.exponent),
                sig12(stats.fit_residual)
            )?;
            w.flush()?;
            Ok(())
        }
    }
}

pub fn cointoss(
    ctx: &Context,
    steps: u64,
    trials: u64,
    seed: u64,
    c: f64,
    epsilon: f64,
) -> Result<(), CliError> {
    let summary = coin_walk_simulate(steps, trials, seed, c, epsilon)?;
    ctx.write_json(&summary)
}

pub enum SignSource {
    Moebius { span: crate::Span, parity: Parity },
    Coin { length: usize, p_plus: f64, seed: u64 },
}

#[derive(Serialize)]
#[serde(tag = "source", rename_all = "snake_case")]
enum SequenceDescriptor {
    Moebius {
        start: u64,
        end: u64,
        parity: Parity,
        length: usize,
    },
    Coin {
        p_plus: f64,
        seed: u64,
        length: usize,
    },
}

#[derive(Serialize)]
struct SequenceReport<'a> {
    #[serde(flatten)]
    report: &'a TestReport,
    sequence: &'a SequenceDescriptor,
}

pub fn mustats(ctx: &Context, source: SignSource, max_lag: usize) -> Result<(), CliError> {
    let (seq, descriptor) = match source {
        SignSource::Moebius { span, parity } => {
            let (table, _) = ctx.cache.table(span.end - 1)?;
            let seq = sign_sequence_squarefree(span.start, span.end, parity, &table)?;
            let d = SequenceDescriptor::Moebius {
                start: span.start,
                end: span.end,
                parity,
                length: seq.len(),
            };
            (seq, d)
        }
        SignSource::Coin { length, p_plus, seed } => {
            let seq = coin_sequence(length, p_plus, seed)?;
            let d = SequenceDescriptor::Coin {
                p_plus,
                seed,
                length: seq.len(),
            };
            (seq, d)
        }
    };
    if seq.len() < MIN_TEST_LENGTH {
        return Err(CliError::usage(format!(
            "sequence has {} signs; the tests need at least {MIN_TEST_LENGTH}",
            seq.len()
        )));
    }
    if max_lag >= seq.len() {
        return Err(CliError::usage(format!(
            "lag {max_lag} must be below the sequence length {}",
            seq.len()
        )));
    }

    let mut reports: Vec<TestReport> = vec![chi_square_balance(&seq)?, runs_test(&seq)?];
    for lag in 1..=max_lag {
        reports.push(lag_autocorrelation(&seq, lag)?);
    }
    let out: Vec<_> = reports
        .iter()
        .map(|report| SequenceReport {
            report,
            sequence: &descriptor,
        })
        .collect();
    ctx.write_json(&out)
}
