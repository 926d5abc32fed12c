//! Parameter sweeps over `d` and `q` for a fixed `n`.
//!
//! A sweep produces one [`SweepRow`] per valid `(d, q)`, in increasing `d`
//! then increasing `q`. Rows render as CSV, JSON or an aligned text table;
//! JSON parses back into rows via [`parse_json`], and
//! [`recompute_mismatches`] checks a parsed table against fresh values.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use qweights::weights::{self, BranchWeightReport};
use qweights::{CurveFamily, Error};

use crate::format::{decimal, ratio};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    pub n: u64,
    pub d_min: u64,
    pub d_max: u64,
    /// Sorted, without repeats.
    pub q_list: Vec<u64>,
    pub coprime_only: bool,
    pub format: OutputFormat,
}

impl SweepSpec {
    pub fn new(
        n: u64,
        d_min: u64,
        d_max: u64,
        mut q_list: Vec<u64>,
        coprime_only: bool,
        format: OutputFormat,
    ) -> Result<Self, String> {
        if n < 2 {
            return Err(format!("n = {n} must be at least 2"));
        }
        if d_min <= n {
            return Err(format!("d_min = {d_min} must exceed n = {n}"));
        }
        if d_max < d_min {
            return Err(format!("d_max = {d_max} is below d_min = {d_min}"));
        }
        if q_list.is_empty() {
            return Err("q list is empty".into());
        }
        if q_list.contains(&0) {
            return Err("every q must be at least 1".into());
        }
        q_list.sort_unstable();
        q_list.dedup();
        Ok(Self {
            n,
            d_min,
            d_max,
            q_list,
            coprime_only,
            format,
        })
    }

    /// Families in range, skipping genus below 2 and (optionally) `gcd > 1`.
    pub fn families(&self) -> Vec<CurveFamily> {
        (self.d_min..=self.d_max)
            .filter_map(|d| CurveFamily::new(self.n, d).ok())
            .filter(|f| !self.coprime_only || f.is_coprime())
            .collect()
    }
}

/// One line of a sweep table. Field order is the column order.
///
/// Quantities that can outgrow 64 bits are decimal strings; ratios are
/// `p/q` strings. Fields that need `gcd(n, d) = 1` are `None` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepRow {
    pub n: u64,
    pub d: u64,
    pub q: u64,
    pub g: u64,
    pub d_q: String,
    pub affine_weight: String,
    pub infinity_weight: Option<String>,
    pub branch_total: Option<String>,
    pub proportion: Option<String>,
    pub proportion_decimal: Option<String>,
    pub asymptotic_bound: String,
    pub deviation: Option<String>,
    pub deviation_decimal: Option<String>,
}

pub const CSV_HEADER: &str = "n,d,q,g,d_q,affine_weight,infinity_weight,branch_total,\
proportion,proportion_decimal,asymptotic_bound,deviation,deviation_decimal";

impl SweepRow {
    pub fn from_report(report: &BranchWeightReport, precision: usize) -> Self {
        let family = &report.family;
        let deviation = report.deviation();
        Self {
            n: family.n(),
            d: family.d(),
            q: report.q,
            g: family.genus(),
            d_q: report.dimension.to_string(),
            affine_weight: report.affine_weight.to_string(),
            infinity_weight: report.infinity_weight.as_ref().map(ToString::to_string),
            branch_total: report.branch_total.as_ref().map(ToString::to_string),
            proportion: report.proportion.as_ref().map(ratio),
            proportion_decimal: report.proportion.as_ref().map(|p| decimal(p, precision)),
            asymptotic_bound: ratio(&report.asymptotic_bound),
            deviation: deviation.as_ref().map(ratio),
            deviation_decimal: deviation.as_ref().map(|x| decimal(x, precision)),
        }
    }

    pub fn compute(n: u64, d: u64, q: u64, precision: usize) -> Result<Self, Error> {
        let family = CurveFamily::new(n, d)?;
        let report = weights::branch_weight_report(&family, q)?;
        Ok(Self::from_report(&report, precision))
    }

    fn cells(&self) -> [String; 13] {
        let opt = |v: &Option<String>| v.clone().unwrap_or_default();
        [
            self.n.to_string(),
            self.d.to_string(),
            self.q.to_string(),
            self.g.to_string(),
            self.d_q.clone(),
            self.affine_weight.clone(),
            opt(&self.infinity_weight),
            opt(&self.branch_total),
            opt(&self.proportion),
            opt(&self.proportion_decimal),
            self.asymptotic_bound.clone(),
            opt(&self.deviation),
            opt(&self.deviation_decimal),
        ]
    }

    pub fn csv_line(&self) -> String {
        self.cells().join(",")
    }
}

/// Rows in `(d, q)` order; computed in parallel.
pub fn run(spec: &SweepSpec, precision: usize) -> Result<Vec<SweepRow>, Error> {
    let jobs: Vec<(CurveFamily, u64)> = spec
        .families()
        .into_iter()
        .flat_map(|f| spec.q_list.iter().map(move |&q| (f, q)))
        .collect();
    jobs.par_iter()
        .map(|(f, q)| {
            weights::branch_weight_report(f, *q).map(|r| SweepRow::from_report(&r, precision))
        })
        .collect()
}

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.csv_line());
        out.push('\n');
    }
    out
}

pub fn to_json(rows: &[SweepRow]) -> String {
    serde_json::to_string_pretty(rows).expect("rows serialize") + "\n"
}

/// Whitespace-aligned table; blank cells are shown as `-`.
pub fn to_text(rows: &[SweepRow]) -> String {
    let header: Vec<String> = CSV_HEADER.split(',').map(str::to_owned).collect();
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            r.cells()
                .into_iter()
                .map(|c| if c.is_empty() { "-".to_owned() } else { c })
                .collect()
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|i| {
            body.iter()
                .map(|r| r[i].len())
                .chain([header[i].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for line in std::iter::once(&header).chain(&body) {
        let cells: Vec<String> = line
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn parse_json(text: &str) -> Result<Vec<SweepRow>, serde_json::Error> {
    serde_json::from_str(text)
}

/// Recomputes every row from its `(n, d, q)` and lists the rows that differ.
pub fn recompute_mismatches(rows: &[SweepRow], precision: usize) -> Vec<(usize, String)> {
    rows.iter()
        .enumerate()
        .filter_map(
            |(k, row)| match SweepRow::compute(row.n, row.d, row.q, precision) {
                Ok(fresh) if fresh == *row => None,
                Ok(fresh) => Some((k, format!("expected {fresh:?}"))),
                Err(e) => Some((k, e.to_string())),
            },
        )
        .collect()
}
