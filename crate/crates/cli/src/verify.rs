//! Grid-wide comparison of every closed form against the enumeration oracle.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::Serialize;

use qweights::oracle;
use qweights::weights::{self, Corollary};
use qweights::{CurveFamily, Error};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    pub n_max: u64,
    pub d_max: u64,
    pub q_max: u64,
}

impl Grid {
    /// Valid families `2 <= n <= n_max`, `n < d <= d_max`, genus at least 2.
    pub fn families(&self) -> Vec<CurveFamily> {
        (2..=self.n_max)
            .flat_map(|n| (n + 1..=self.d_max).filter_map(move |d| CurveFamily::new(n, d).ok()))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub n: u64,
    pub d: u64,
    pub q: u64,
    pub check: String,
    pub closed_form: String,
    pub oracle: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}) {}: closed form {}, oracle {}",
            self.n, self.d, self.q, self.check, self.closed_form, self.oracle
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub families: usize,
    pub checks: usize,
    pub failures: Vec<Mismatch>,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyError {
    EmptyGrid,
    Compute(Error),
}

struct Checker {
    family: CurveFamily,
    q: u64,
    checks: usize,
    failures: Vec<Mismatch>,
}

fn show<T: fmt::Display>(value: &Result<T, Error>) -> String {
    match value {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

impl Checker {
    fn fail(&mut self, check: &str, closed_form: String, oracle: String) {
        self.failures.push(Mismatch {
            n: self.family.n(),
            d: self.family.d(),
            q: self.q,
            check: check.to_owned(),
            closed_form,
            oracle,
        });
    }

    fn compare<T: PartialEq + fmt::Display>(
        &mut self,
        check: &str,
        closed: Result<T, Error>,
        reference: Result<T, Error>,
    ) {
        self.checks += 1;
        if !matches!((&closed, &reference), (Ok(a), Ok(b)) if a == b) {
            self.fail(check, show(&closed), show(&reference));
        }
    }

    fn holds(&mut self, check: &str, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(check, detail(), "property violated".into());
        }
    }
}

fn check_point(family: CurveFamily, q: u64) -> Result<(usize, Vec<Mismatch>), Error> {
    let mut c = Checker {
        family,
        q,
        checks: 0,
        failures: Vec::new(),
    };
    let f = &family;
    let o = oracle::oracle_report(f, q)?;
    c.compare(
        "exponent set size",
        Ok(BigInt::from(o.set_size)),
        f.dimension(q),
    );

    if q >= 2 {
        let closed = weights::affine_branch_weight(f, q);
        c.compare("W1", weights::w1_closed(f, q), Ok(o.w1.clone()));
        c.compare("W2", weights::w2_closed(f, q), Ok(o.w2.clone()));
        c.compare("affine weight", closed.clone(), Ok(o.affine_weight.clone()));
        c.compare(
            "W1 - W2 - W3",
            weights::breakdown(f, q).map(|b| b.weight),
            Ok(o.affine_weight.clone()),
        );
        let period = f.n() / f.gcd();
        c.compare(
            "periodicity in q",
            weights::affine_branch_weight(f, q + period),
            closed.clone(),
        );
        for corollary in Corollary::ALL.into_iter().filter(|k| k.applies(f)) {
            c.compare(
                corollary.name(),
                weights::specialized_branch_weight(f, q, corollary),
                closed.clone(),
            );
        }
    } else if f.is_coprime() {
        c.compare(
            "affine 1-weight",
            weights::affine_branch_weight_q1(f),
            Ok(o.affine_weight.clone()),
        );
    }

    if let Some(at_infinity) = &o.infinity_weight {
        c.compare(
            "infinity weight",
            weights::infinity_weight(f, q),
            Ok(at_infinity.clone()),
        );
    }

    let report = weights::branch_weight_report(f, q)?;
    let non_negative = !report.affine_weight.is_negative()
        && report
            .infinity_weight
            .as_ref()
            .is_none_or(|w| !w.is_negative());
    c.holds("weights non-negative", non_negative, || {
        format!("{report:?}")
    });
    if let Some(p) = &report.proportion {
        let in_range = p.is_positive() && *p <= BigRational::one();
        c.holds("proportion in (0, 1]", in_range, || p.to_string());
    }
    Ok((c.checks, c.failures))
}

/// Runs every check on every `(family, q)` with `1 <= q <= q_max`.
pub fn run(grid: &Grid) -> Result<Summary, VerifyError> {
    let families = grid.families();
    if families.is_empty() || grid.q_max < 1 {
        return Err(VerifyError::EmptyGrid);
    }
    let points: Vec<(CurveFamily, u64)> = families
        .iter()
        .flat_map(|&f| (1..=grid.q_max).map(move |q| (f, q)))
        .collect();
    let results = points
        .par_iter()
        .map(|&(f, q)| check_point(f, q))
        .collect::<Result<Vec<_>, _>>()
        .map_err(VerifyError::Compute)?;
    let mut summary = Summary {
        families: families.len(),
        ..Summary::default()
    };
    for (checks, failures) in results {
        summary.checks += checks;
        summary.failures.extend(failures);
    }
    Ok(summary)
}
