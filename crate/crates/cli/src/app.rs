//! Argument definitions and command execution for the `qweights` binary.

use std::io::{self, Write};

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use qweights::weights::{self, BranchWeightReport};
use qweights::{CurveFamily, SemigroupPair};

use crate::format::{decimal, parse_q_list, ratio};
use crate::sweep::{self, OutputFormat, SweepRow, SweepSpec};
use crate::verify::{self, Grid, VerifyError};

pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;

/// Gap lists longer than this are not enumerated by `semigroup`.
const MAX_ENUMERATED_FROBENIUS: u64 = 1_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "qweights",
    version,
    about = "Exact q-Weierstrass weights of branch points on y^n = f(x)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,

    /// Emit CSV.
    #[arg(long, global = true)]
    pub csv: bool,

    /// Fractional digits for decimal renderings (round half to even).
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u16).range(0..=1000))]
    pub precision: u16,

    /// Maximum number of gaps to list.
    #[arg(long, global = true, default_value_t = 64)]
    pub limit: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weights of the branch points of one family at one q.
    Weight {
        #[arg(short = 'n')]
        n: u64,
        #[arg(short = 'd')]
        d: u64,
        #[arg(short = 'q', default_value_t = 2)]
        q: u64,
        /// Fail (exit 4) instead of leaving the infinity weight blank when gcd(n, d) > 1.
        #[arg(long)]
        strict: bool,
    },
    /// Compare every closed form with brute-force enumeration over a grid.
    Verify {
        #[arg(long, default_value_t = 8)]
        n_max: u64,
        #[arg(long, default_value_t = 30)]
        d_max: u64,
        #[arg(long, default_value_t = 5)]
        q_max: u64,
    },
    /// Table of weights and branch shares over a range of d.
    Sweep {
        #[arg(short = 'n')]
        n: u64,
        #[arg(long)]
        d_min: u64,
        #[arg(long)]
        d_max: u64,
        /// Comma-separated q values.
        #[arg(short = 'q', long = "q", default_value = "2", value_parser = parse_q_values)]
        q_list: QList,
        /// Skip d with gcd(n, d) > 1.
        #[arg(long)]
        coprime_only: bool,
    },
    /// Gap set, gap count, gap sum and Frobenius number of <a, b>.
    Semigroup { a: String, b: String },
}

/// A parsed `--q` argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QList(pub Vec<u64>);

fn parse_q_values(s: &str) -> Result<QList, crate::format::ParseError> {
    parse_q_list(s).map(QList)
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{message}")]
    Invalid { code: String, message: String },
    #[error("{failures} of {checks} checks failed")]
    Mismatch { failures: usize, checks: usize },
    #[error("{message}")]
    Unsupported { code: String, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    fn invalid(code: &str, message: impl Into<String>) -> Self {
        CliError::Invalid {
            code: code.into(),
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid { .. } => EXIT_INVALID,
            CliError::Mismatch { .. } => EXIT_MISMATCH,
            CliError::Unsupported { .. } => EXIT_UNSUPPORTED,
            CliError::Io(_) => EXIT_IO,
        }
    }

    pub fn code(&self) -> &str {
        match self {
            CliError::Invalid { code, .. } | CliError::Unsupported { code, .. } => code,
            CliError::Mismatch { .. } => "verification_mismatch",
            CliError::Io(_) => "io",
        }
    }

    /// One-line JSON object for the diagnostic stream.
    pub fn to_json(&self) -> String {
        serde_json::json!({ "error": self.code(), "message": self.to_string() }).to_string()
    }
}

impl From<qweights::Error> for CliError {
    fn from(e: qweights::Error) -> Self {
        let code = e.code().to_owned();
        let message = e.to_string();
        if e.is_unsupported() {
            CliError::Unsupported { code, message }
        } else {
            CliError::Invalid { code, message }
        }
    }
}

impl Cli {
    fn format(&self) -> OutputFormat {
        if self.json {
            OutputFormat::Json
        } else if self.csv {
            OutputFormat::Csv
        } else {
            OutputFormat::Text
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let precision = usize::from(cli.precision);
    match &cli.command {
        Command::Weight { n, d, q, strict } => {
            weight(*n, *d, *q, *strict, cli.format(), precision, out)
        }
        Command::Verify {
            n_max,
            d_max,
            q_max,
        } => {
            let grid = Grid {
                n_max: *n_max,
                d_max: *d_max,
                q_max: *q_max,
            };
            run_verify(&grid, cli.format(), out)
        }
        Command::Sweep {
            n,
            d_min,
            d_max,
            q_list,
            coprime_only,
        } => {
            let spec = SweepSpec::new(
                *n,
                *d_min,
                *d_max,
                q_list.0.clone(),
                *coprime_only,
                cli.format(),
            )
            .map_err(|m| CliError::invalid("invalid_sweep", m))?;
            run_sweep(&spec, precision, out)
        }
        Command::Semigroup { a, b } => semigroup(a, b, cli.format(), cli.limit, out),
    }
}

const GCD_NOTE: &str = "requires f; gcd(n,d)>1";

#[derive(Serialize)]
struct WeightJson {
    n: u64,
    d: u64,
    q: u64,
    gcd: u64,
    g: u64,
    d_q: String,
    affine_weight: String,
    infinity_weight: Option<String>,
    branch_total: Option<String>,
    curve_total: String,
    proportion: Option<String>,
    proportion_decimal: Option<String>,
    asymptotic_bound: String,
    asymptotic_bound_decimal: String,
}

impl WeightJson {
    fn new(r: &BranchWeightReport, precision: usize) -> Self {
        let f = &r.family;
        Self {
            n: f.n(),
            d: f.d(),
            q: r.q,
            gcd: f.gcd(),
            g: f.genus(),
            d_q: r.dimension.to_string(),
            affine_weight: r.affine_weight.to_string(),
            infinity_weight: r.infinity_weight.as_ref().map(ToString::to_string),
            branch_total: r.branch_total.as_ref().map(ToString::to_string),
            curve_total: r.curve_total.to_string(),
            proportion: r.proportion.as_ref().map(ratio),
            proportion_decimal: r.proportion.as_ref().map(|p| decimal(p, precision)),
            asymptotic_bound: ratio(&r.asymptotic_bound),
            asymptotic_bound_decimal: decimal(&r.asymptotic_bound, precision),
        }
    }
}

fn weight(
    n: u64,
    d: u64,
    q: u64,
    strict: bool,
    format: OutputFormat,
    precision: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let family = CurveFamily::new(n, d)?;
    if strict && !family.is_coprime() {
        return Err(qweights::Error::RequiresCoprimeFamily { gcd: family.gcd() }.into());
    }
    let report = weights::branch_weight_report(&family, q)?;
    match format {
        OutputFormat::Json => {
            let body = serde_json::to_string_pretty(&WeightJson::new(&report, precision))
                .expect("report serializes");
            writeln!(out, "{body}")?;
        }
        OutputFormat::Csv => {
            write!(
                out,
                "{}",
                sweep::to_csv(&[SweepRow::from_report(&report, precision)])
            )?;
        }
        OutputFormat::Text => {
            let or_note = |v: Option<String>| v.unwrap_or_else(|| GCD_NOTE.to_owned());
            let with_decimal = |r| format!("{} ({})", ratio(r), decimal(r, precision));
            writeln!(
                out,
                "family      n = {}, d = {}, gcd = {}, genus = {}",
                n,
                d,
                family.gcd(),
                family.genus()
            )?;
            writeln!(out, "q           {q}")?;
            writeln!(out, "d_q         {}", report.dimension)?;
            writeln!(out, "affine      {}", report.affine_weight)?;
            writeln!(
                out,
                "infinity    {}",
                or_note(report.infinity_weight.as_ref().map(ToString::to_string))
            )?;
            writeln!(
                out,
                "BW_q        {}",
                or_note(report.branch_total.as_ref().map(ToString::to_string))
            )?;
            writeln!(out, "total       {}", report.curve_total)?;
            writeln!(
                out,
                "proportion  {}",
                or_note(report.proportion.as_ref().map(with_decimal))
            )?;
            writeln!(
                out,
                "bound       {}",
                with_decimal(&report.asymptotic_bound)
            )?;
        }
    }
    Ok(())
}

fn run_verify(grid: &Grid, format: OutputFormat, out: &mut dyn Write) -> Result<(), CliError> {
    let summary = match verify::run(grid) {
        Ok(s) => s,
        Err(VerifyError::EmptyGrid) => return Err(CliError::invalid("empty_grid", "empty grid")),
        Err(VerifyError::Compute(e)) => return Err(e.into()),
    };
    match format {
        OutputFormat::Json => {
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&summary).expect("summary serializes")
            )?;
        }
        OutputFormat::Csv => {
            writeln!(out, "n,d,q,check,closed_form,oracle")?;
            for m in &summary.failures {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    m.n, m.d, m.q, m.check, m.closed_form, m.oracle
                )?;
            }
        }
        OutputFormat::Text => {
            for m in &summary.failures {
                writeln!(out, "MISMATCH {m}")?;
            }
            if summary.passed() {
                writeln!(
                    out,
                    "all {} checks passed ({} families, q = 1..{})",
                    summary.checks, summary.families, grid.q_max
                )?;
            } else {
                writeln!(
                    out,
                    "{} of {} checks failed",
                    summary.failures.len(),
                    summary.checks
                )?;
            }
        }
    }
    if summary.passed() {
        Ok(())
    } else {
        Err(CliError::Mismatch {
            failures: summary.failures.len(),
            checks: summary.checks,
        })
    }
}

fn run_sweep(spec: &SweepSpec, precision: usize, out: &mut dyn Write) -> Result<(), CliError> {
    let rows = sweep::run(spec, precision)?;
    let text = match spec.format {
        OutputFormat::Json => sweep::to_json(&rows),
        OutputFormat::Csv => sweep::to_csv(&rows),
        OutputFormat::Text => sweep::to_text(&rows),
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

#[derive(Serialize)]
struct SemigroupJson {
    a: String,
    b: String,
    coprime: bool,
    gaps: Option<Vec<String>>,
    gaps_truncated: bool,
    count: String,
    sum: String,
    frobenius: Option<String>,
    enumeration_agrees: Option<bool>,
}

fn parse_generator(s: &str) -> Result<BigUint, CliError> {
    let value: BigUint = s
        .parse()
        .map_err(|_| CliError::invalid("invalid_generator", format!("invalid generator {s:?}")))?;
    if value == BigUint::from(0u32) {
        return Err(CliError::invalid(
            "invalid_generator",
            "generators must be at least 1",
        ));
    }
    Ok(value)
}

fn semigroup(
    a: &str,
    b: &str,
    format: OutputFormat,
    limit: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let pair = SemigroupPair::new(parse_generator(a)?, parse_generator(b)?)
        .expect("generators are positive");
    let mut report = SemigroupJson {
        a: pair.a().to_string(),
        b: pair.b().to_string(),
        coprime: pair.is_coprime(),
        gaps: None,
        gaps_truncated: false,
        count: "infinite".into(),
        sum: "infinite".into(),
        frobenius: None,
        enumeration_agrees: None,
    };
    if pair.is_coprime() {
        let count = pair.gap_count()?;
        let sum = pair.gap_sum()?;
        let frobenius = pair.frobenius_number()?;
        if frobenius <= MAX_ENUMERATED_FROBENIUS.into() {
            let gaps = pair.gap_set()?;
            report.enumeration_agrees =
                Some(BigUint::from(gaps.len()) == count && gaps.sum() == sum);
            report.gaps_truncated = gaps.len() > limit;
            report.gaps = Some(
                gaps.elements()
                    .iter()
                    .take(limit)
                    .map(ToString::to_string)
                    .collect(),
            );
        }
        report.count = count.to_string();
        report.sum = sum.to_string();
        report.frobenius = Some(frobenius.to_string());
    }
    match format {
        OutputFormat::Json => {
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            )?;
        }
        OutputFormat::Csv => {
            writeln!(out, "a,b,count,sum,frobenius")?;
            let frobenius = report.frobenius.as_deref().unwrap_or("");
            writeln!(
                out,
                "{},{},{},{},{}",
                report.a, report.b, report.count, report.sum, frobenius
            )?;
        }
        OutputFormat::Text => {
            writeln!(out, "generators  {}, {}", report.a, report.b)?;
            if !report.coprime {
                writeln!(
                    out,
                    "gaps        infinite gap set (generators share a factor)"
                )?;
            } else if let Some(gaps) = &report.gaps {
                let more = if report.gaps_truncated { ", ..." } else { "" };
                writeln!(out, "gaps        {{{}{more}}}", gaps.join(", "))?;
            } else {
                writeln!(out, "gaps        not enumerated (Frobenius number above {MAX_ENUMERATED_FROBENIUS})")?;
            }
            let agreement = match report.enumeration_agrees {
                Some(true) => "  (closed form agrees with enumeration)",
                Some(false) => "  (closed form DISAGREES with enumeration)",
                None => "",
            };
            writeln!(out, "count       {}{agreement}", report.count)?;
            writeln!(out, "sum         {}{agreement}", report.sum)?;
            writeln!(
                out,
                "frobenius   {}",
                report.frobenius.as_deref().unwrap_or("none")
            )?;
        }
    }
    Ok(())
}
