//! `p1dt`: compute DT invariants of twisted Higgs bundles over P^1 and of
//! the associated symmetric quiver.
//!
//! Exit status: 0 on success, 1 when a check or the self-test fails (or the
//! computation hits an integrality violation), 2 on invalid input.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use p1dt_core::golden::{check_entry, golden_entries};
use p1dt_core::{
    check_d_independence, check_hn_product, check_shift_invariance, check_theorem2, omega_l,
    omega_q, table_degree, DimVector, Error, PipelineConfig, QuiverConfig,
};

use p1dt_cli::output::{Format, OutputRecord};

/// Caps the worker threads used for tables and the self-test.
const THREADS_ENV: &str = "P1DT_THREADS";

#[derive(Parser)]
#[command(name = "p1dt", version, about = "Exact DT invariants of twisted Higgs bundles over P^1")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Omega_L(r, d) for a line bundle of degree ell.
    Omega(OmegaArgs),
    /// Omega_ell(r) for r = 1..=rmax at the smallest coprime stable degree.
    Table(TableArgs),
    /// Omega_Q(m) for a dimension vector of the symmetric quiver.
    QuiverOmega(QuiverArgs),
    /// Consistency checks.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Recompute every published table entry and compare exactly.
    Selftest {
        /// Only entries with r <= 3.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Args)]
struct OmegaArgs {
    #[arg(long)]
    ell: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    rank: u32,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    degree: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    ell: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    rmax: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct QuiverArgs {
    #[arg(long)]
    ell: u32,
    /// Comma-separated `vertex:multiplicity` pairs, e.g. "1:1,2:1".
    #[arg(long, allow_hyphen_values = true)]
    dimvec: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Omega_L(r, d) against the sum of Omega_Q(m) over positive vectors,
    /// and vanishing of vectors reaching nonpositive vertices.
    Theorem2 {
        #[arg(long)]
        ell: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        rank: u32,
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
        /// Extend the window to [1 - margin, d] for the vanishing check.
        #[arg(long, default_value_t = 2)]
        margin: u32,
    },
    /// Whether Omega_L(r, d) agrees across the listed degrees.
    DIndependence {
        #[arg(long)]
        ell: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        rank: u32,
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        degrees: Vec<i64>,
    },
    /// Omega_Q(m) against Omega_Q(m[1]).
    Shift {
        #[arg(long)]
        ell: u32,
        #[arg(long, allow_hyphen_values = true)]
        dimvec: String,
    },
    /// Product of slope factors of the positive series against the series.
    HnProduct {
        #[arg(long)]
        ell: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        rmax: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        dmax: u32,
    },
}

/// Outcome of a command that ran to completion.
enum Status {
    Ok,
    Failed,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::InvalidInput(_) | Error::Parse { .. } | Error::ZeroRank => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        // only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(cli.command) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn run(command: Command) -> Result<Status, Error> {
    match command {
        Command::Omega(args) => {
            let record = omega_record(args.ell, args.rank, args.degree)?;
            print_single(&record, args.format);
            Ok(Status::Ok)
        }
        Command::Table(args) => {
            let records = table(args.ell, args.rmax)?;
            print_table(&records, args.format);
            Ok(Status::Ok)
        }
        Command::QuiverOmega(args) => {
            let m: DimVector = args.dimvec.parse()?;
            let start = Instant::now();
            let poly = omega_q(&QuiverConfig::new(args.ell), &m)?;
            let record = OutputRecord {
                ell: args.ell,
                r: m.rank(),
                d: m.degree(),
                stable_d: None,
                dimvec: Some(m.to_string()),
                kind: "omega_Q".into(),
                poly: OutputRecord::poly_terms(&poly)?,
                ms: start.elapsed().as_secs_f64() * 1e3,
            };
            print_single(&record, args.format);
            Ok(Status::Ok)
        }
        Command::Check(check) => run_check(check),
        Command::Selftest { quick } => Ok(selftest(quick)),
    }
}

fn omega_record(ell: u32, r: u32, d: i64) -> Result<OutputRecord, Error> {
    let start = Instant::now();
    let value = omega_l(&QuiverConfig::new(ell), r, d)?;
    Ok(OutputRecord {
        ell,
        r: u64::from(r),
        d,
        stable_d: Some(value.stable_d),
        dimvec: None,
        kind: "omega_L".into(),
        poly: OutputRecord::poly_terms(&value.poly)?,
        ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn table(ell: u32, rmax: u32) -> Result<Vec<OutputRecord>, Error> {
    (1..=rmax)
        .into_par_iter()
        .map(|r| omega_record(ell, r, table_degree(ell, r)))
        .collect()
}

fn print_single(record: &OutputRecord, format: Format) {
    match format {
        Format::Text => println!("{}", record.text_poly()),
        Format::Json => println!("{}", record.to_json()),
        Format::Latex => println!("{}", record.latex_poly()),
    }
}

fn print_table(records: &[OutputRecord], format: Format) {
    match format {
        Format::Text => {
            for rec in records {
                println!("{} = {}    [d = {}]", rec.label(), rec.text_poly(), rec.d);
            }
        }
        Format::Json => {
            println!("{}", serde_json::to_string(records).expect("records always serialize"));
        }
        Format::Latex => {
            println!("\\begin{{flalign*}}");
            for rec in records {
                println!("\\Omega_{{{}}}({})&={}\\\\", rec.ell, rec.r, rec.latex_poly());
            }
            println!("\\end{{flalign*}}");
        }
    }
}

fn verdict(passed: bool) -> Status {
    if passed {
        println!("PASS");
        Status::Ok
    } else {
        println!("FAIL");
        Status::Failed
    }
}

fn run_check(check: CheckCommand) -> Result<Status, Error> {
    match check {
        CheckCommand::Theorem2 { ell, rank, degree, margin } => {
            let rep = check_theorem2(&QuiverConfig::new(ell), rank, degree, margin)?;
            println!("Omega_L({rank}, {degree})      = {}", rep.omega_l.display_with("w"));
            println!("sum of Omega_Q(m)   = {}", rep.quiver_sum.display_with("w"));
            for (m, w) in &rep.summands {
                println!("  Omega_Q({m}) = {}", w.display_with("w"));
            }
            println!(
                "vectors touching [{}, 0]: {} checked, {} nonzero",
                1 - i64::from(margin),
                rep.extra_checked,
                rep.nonvanishing_extra.len()
            );
            for (m, w) in &rep.nonvanishing_extra {
                println!("  nonzero Omega_Q({m}) = {}", w.display_with("w"));
            }
            if rep.omega_l != rep.quiver_sum {
                let diff = &rep.omega_l - &rep.quiver_sum;
                println!("difference: {}", diff.display_with("w"));
            }
            Ok(verdict(rep.passed()))
        }
        CheckCommand::DIndependence { ell, rank, degrees } => {
            let rep = check_d_independence(&QuiverConfig::new(ell), rank, &degrees)?;
            for v in &rep.values {
                println!("d = {:>4} (stable {:>4}): {}", v.d, v.stable_d, v.poly.display_with("w"));
            }
            Ok(verdict(rep.passed()))
        }
        CheckCommand::Shift { ell, dimvec } => {
            let m: DimVector = dimvec.parse()?;
            let rep = check_shift_invariance(&QuiverConfig::new(ell), &m)?;
            println!("Omega_Q({}) = {}", rep.m, rep.before.display_with("w"));
            println!("Omega_Q({}) = {}", rep.m.shift(1), rep.after.display_with("w"));
            Ok(verdict(rep.passed()))
        }
        CheckCommand::HnProduct { ell, rmax, dmax } => {
            let rep = check_hn_product(&PipelineConfig::new(ell, rmax, dmax))?;
            println!("box ({rmax}, {dmax}): {} slope factors", rep.rays);
            for g in &rep.mismatches {
                println!("  mismatch at (r, d) = ({}, {})", g.r, g.d);
            }
            Ok(verdict(rep.passed()))
        }
    }
}

fn selftest(quick: bool) -> Status {
    let entries: Vec<_> = golden_entries(quick).collect();
    let outcomes: Vec<_> = entries
        .par_iter()
        .map(|e| {
            check_entry(e, |ell, r| {
                omega_l(&QuiverConfig::new(ell), r, table_degree(ell, r)).map(|v| v.poly)
            })
        })
        .collect();
    let mut failed = Vec::new();
    for o in &outcomes {
        let status = if o.passed() { "ok" } else { "FAIL" };
        println!(
            "ell={} r={} {:>8.3}s {status}",
            o.entry.ell,
            o.entry.r,
            o.elapsed.as_secs_f64()
        );
        if !o.passed() {
            failed.push(o);
        }
    }
    println!("{}/{} entries match", outcomes.len() - failed.len(), outcomes.len());
    for o in &failed {
        match &o.computed {
            Ok(p) => eprintln!(
                "mismatch ell={} r={}: expected {}, got {}",
                o.entry.ell,
                o.entry.r,
                o.entry.poly().display_with("w"),
                p.display_with("w")
            ),
            Err(e) => eprintln!("mismatch ell={} r={}: {e}", o.entry.ell, o.entry.r),
        }
    }
    if failed.is_empty() {
        Status::Ok
    } else {
        Status::Failed
    }
}
