//! Closed-form q-weights of branch points.
//!
//! The weight of an affine branch point `B` splits as `W1 - W2 - W3`, where
//! `W1` sums `ni + dj` over the exponent set, `W2` is `(d - 1)` times the sum
//! of `j`, and `W3` is the triangular number `0 + 1 + ... + (d_q - 1)`. Every
//! formula below is evaluated in exact rationals and then checked to be an
//! integer; the divisions by 6, 12 and 24 only cancel at the end.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::curve::CurveFamily;
use crate::error::{Error, Result};
use crate::oracle;

/// Arguments of `D(a, b, c) = sum_{j=0}^{c-1} {(a + bj) / c} * j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalSumArgs {
    pub a: BigInt,
    pub b: BigInt,
    pub c: u64,
}

impl FractionalSumArgs {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: u64) -> Result<Self> {
        if c < 1 {
            return Err(Error::ZeroModulus);
        }
        Ok(Self {
            a: a.into(),
            b: b.into(),
            c,
        })
    }
}

/// `D(a, b, c)`, with `{x} = x - floor(x)` so fractional parts lie in `[0, 1)`
/// even for negative `x`. The result has denominator dividing `c`.
pub fn fractional_sum(args: &FractionalSumArgs) -> BigRational {
    let c = BigInt::from(args.c);
    let mut numer = BigInt::zero();
    let mut term = args.a.mod_floor(&c);
    let step = args.b.mod_floor(&c);
    for j in 0..args.c {
        numer += &term * j;
        term = (term + &step).mod_floor(&c);
    }
    BigRational::new(numer, c)
}

fn require_q_at_least(q: u64, min: u64) -> Result<()> {
    if q < min {
        Err(Error::QOutOfRange { q, min })
    } else {
        Ok(())
    }
}

fn require_coprime(family: &CurveFamily) -> Result<()> {
    if family.is_coprime() {
        Ok(())
    } else {
        Err(Error::RequiresCoprimeFamily { gcd: family.gcd() })
    }
}

fn integral(what: &'static str, value: BigRational) -> Result<BigInt> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::NonIntegral {
            what,
            value: value.to_string(),
        })
    }
}

fn ratio(numer: BigInt, denom: i64) -> BigRational {
    BigRational::new(numer, denom.into())
}

fn int(v: u64) -> BigInt {
    BigInt::from(v)
}

/// Integer-valued parameters of a family lifted to `BigInt`.
struct Params {
    n: BigInt,
    d: BigInt,
    g: BigInt,
    gcd: BigInt,
}

impl Params {
    fn of(family: &CurveFamily) -> Self {
        Self {
            n: int(family.n()),
            d: int(family.d()),
            g: int(family.genus()),
            gcd: int(family.gcd()),
        }
    }

    /// `(n - 1)(d - 1)(n + 1)(d - 7) + 12g(G + 1) + 5(G^2 - 1)`, the
    /// q-independent numerator (over 24) of the affine weight.
    fn affine_base(&self) -> BigInt {
        let Params { n, d, g, gcd } = self;
        (n - 1) * (d - 1) * (n + 1) * (d - 7) + 12 * g * (gcd + 1) + 5 * (gcd * gcd - 1)
    }
}

/// `D(-(d + G)q, -d, n)`, the only q-dependent piece of the affine weight.
fn affine_fractional_sum(family: &CurveFamily, q: u64) -> BigRational {
    let p = Params::of(family);
    let args = FractionalSumArgs {
        a: -(&p.d + &p.gcd) * q,
        b: -p.d,
        c: family.n(),
    };
    fractional_sum(&args)
}

/// `W1 = 2(g-1)^2 q^2 + (g-1)Gq + (G^2 - 1 - (n-1)(d-1)(2nd - n - d - 1)) / 12`.
pub fn w1_closed(family: &CurveFamily, q: u64) -> Result<BigInt> {
    require_q_at_least(q, 2)?;
    let Params { n, d, g, gcd } = Params::of(family);
    let q = int(q);
    let gm1 = &g - 1;
    let poly = 2 * &gm1 * &gm1 * &q * &q + &gm1 * &gcd * &q;
    let gaps = &gcd * &gcd - 1 - (&n - 1) * (&d - 1) * (2 * &n * &d - &n - &d - 1);
    integral("W1", BigRational::from_integer(poly) + ratio(gaps, 12))
}

/// `W2 = (d - 1)((n - 1)((g - 1)q + (-2nd + 3n + d) / 6) - D(-(d + G)q, -d, n))`.
pub fn w2_closed(family: &CurveFamily, q: u64) -> Result<BigInt> {
    require_q_at_least(q, 2)?;
    let Params { n, d, g, .. } = Params::of(family);
    let inner = BigRational::from_integer((&g - 1) * q) + ratio(-2 * &n * &d + 3 * &n + &d, 6);
    let value = BigRational::from_integer(&d - 1)
        * (BigRational::from_integer(&n - 1) * inner - affine_fractional_sum(family, q));
    integral("W2", value)
}

/// `W3 = d_q(d_q - 1) / 2`.
pub fn w3_triangular(family: &CurveFamily, q: u64) -> Result<BigInt> {
    let dim = family.dimension(q)?;
    Ok(&dim * (&dim - 1) / 2)
}

/// q-weight of an affine branch point for `q >= 2`:
/// `((n-1)(d-1)(n+1)(d-7) + 12g(G+1) + 5(G^2-1)) / 24 + (d-1) D(-(d+G)q, -d, n)`.
///
/// Valid for every family, including the two exceptional triples.
pub fn affine_branch_weight(family: &CurveFamily, q: u64) -> Result<BigInt> {
    require_q_at_least(q, 2)?;
    let p = Params::of(family);
    let value = ratio(p.affine_base(), 24)
        + BigRational::from_integer(&p.d - 1) * affine_fractional_sum(family, q);
    integral("affine branch weight", value)
}

/// q = 1 weight of an affine branch point for coprime `(n, d)`:
/// `g(n+1)(d-7)/12 + (d-1) sum_{j=1}^{n-1} {-dj/n} j`.
pub fn affine_branch_weight_q1(family: &CurveFamily) -> Result<BigInt> {
    require_coprime(family)?;
    let Params { n, d, g, .. } = Params::of(family);
    let sum = fractional_sum(&FractionalSumArgs {
        a: BigInt::zero(),
        b: -&d,
        c: family.n(),
    });
    let value = ratio(&g * (&n + 1) * (&d - 7), 12) + BigRational::from_integer(&d - 1) * sum;
    integral("affine branch 1-weight", value)
}

/// Weight of the single point over infinity when `gcd(n, d) = 1`:
/// `(n^2 - 1)(d^2 - 1) / 24`, less `g` when `q = 1`.
///
/// For `gcd(n, d) > 1` there is no formula in `(n, d, q)` alone; the answer
/// depends on `f`, so this returns [`Error::RequiresCoprimeFamily`].
pub fn infinity_weight(family: &CurveFamily, q: u64) -> Result<BigInt> {
    require_q_at_least(q, 1)?;
    require_coprime(family)?;
    let Params { n, d, g, .. } = Params::of(family);
    let base = integral("infinity weight", ratio((&n * &n - 1) * (&d * &d - 1), 24))?;
    Ok(if q == 1 { base - g } else { base })
}

/// Special-case formulas for the affine weight, each with its own hypothesis
/// on `(n, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Corollary {
    /// `gcd(n, d) = 1`.
    Coprime,
    /// `d = -G (mod n)`; the weight is then independent of `q`.
    DCongruentMinusGcd,
    /// `d = -1 (mod n)`.
    DCongruentMinusOne,
    /// `n | d`.
    NDividesD,
}

impl Corollary {
    pub const ALL: [Corollary; 4] = [
        Corollary::Coprime,
        Corollary::DCongruentMinusGcd,
        Corollary::DCongruentMinusOne,
        Corollary::NDividesD,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Corollary::Coprime => "COPRIME",
            Corollary::DCongruentMinusGcd => "D_CONG_MINUS_G",
            Corollary::DCongruentMinusOne => "D_CONG_MINUS_1",
            Corollary::NDividesD => "N_DIVIDES_D",
        }
    }

    /// `None` if the hypothesis holds, otherwise a description of the
    /// failed condition.
    pub fn violation(self, family: &CurveFamily) -> Option<String> {
        let (n, d, gcd) = (family.n(), family.d(), family.gcd());
        let residue = d % n;
        match self {
            Corollary::Coprime if gcd != 1 => Some(format!("gcd({n}, {d}) = {gcd}, not 1")),
            Corollary::DCongruentMinusGcd if residue != (n - gcd) % n => {
                Some(format!("d = {d} is not congruent to -{gcd} mod {n}"))
            }
            Corollary::DCongruentMinusOne if residue != n - 1 => {
                Some(format!("d = {d} is not congruent to -1 mod {n}"))
            }
            Corollary::NDividesD if residue != 0 => Some(format!("{n} does not divide {d}")),
            _ => None,
        }
    }

    pub fn applies(self, family: &CurveFamily) -> bool {
        self.violation(family).is_none()
    }
}

impl fmt::Display for Corollary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Evaluates the selected corollary's own closed form (not the general
/// theorem) for `q >= 2`.
pub fn specialized_branch_weight(
    family: &CurveFamily,
    q: u64,
    corollary: Corollary,
) -> Result<BigInt> {
    require_q_at_least(q, 2)?;
    if let Some(reason) = corollary.violation(family) {
        return Err(Error::HypothesisFailed { corollary, reason });
    }
    let p = Params::of(family);
    let Params { n, d, g, gcd } = &p;
    let value = match corollary {
        Corollary::Coprime => {
            let sum = fractional_sum(&FractionalSumArgs {
                a: -(d + 1u32) * q,
                b: -d,
                c: family.n(),
            });
            ratio(g * (n + 1) * (d - 7), 12)
                + BigRational::from_integer(g.clone())
                + BigRational::from_integer(d - 1) * sum
        }
        Corollary::DCongruentMinusGcd => {
            let reduced_n = n / gcd;
            let extra = 2 * (d - 1) * (n - gcd) * (3 * n + reduced_n - 2);
            ratio(p.affine_base() + extra, 24)
        }
        Corollary::DCongruentMinusOne => ratio((n * n - 1) * (d * d - 1), 24),
        Corollary::NDividesD => ratio((n * n - 1) * (d * d - 2 * d), 24),
    };
    integral("corollary weight", value)
}

/// The three closed-form parts of the affine weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightBreakdown {
    pub w1: BigInt,
    pub w2: BigInt,
    pub w3: BigInt,
    pub weight: BigInt,
}

pub fn breakdown(family: &CurveFamily, q: u64) -> Result<WeightBreakdown> {
    let w1 = w1_closed(family, q)?;
    let w2 = w2_closed(family, q)?;
    let w3 = w3_triangular(family, q)?;
    let weight = &w1 - &w2 - &w3;
    if weight.is_negative() {
        return Err(Error::NonIntegral {
            what: "W1 - W2 - W3 (negative)",
            value: weight.to_string(),
        });
    }
    Ok(WeightBreakdown { w1, w2, w3, weight })
}

/// `(n + 1) / (3(n - 1)^2 (2q - 1)^2)`, the limiting share of the total
/// q-weight carried by branch points as `d` grows through values coprime to
/// `n`. For `q = 1` the `(2q - 1)^2` factor is absent (it is 1 anyway).
pub fn asymptotic_bound(n: u64, q: u64) -> BigRational {
    let n = int(n);
    let odd = int(2 * q.max(1) - 1);
    BigRational::new(&n + 1, 3 * (&n - 1) * (&n - 1) * &odd * &odd)
}

/// Everything known about the branch points of a family at a given `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchWeightReport {
    pub family: CurveFamily,
    pub q: u64,
    pub dimension: BigInt,
    /// Weight of each of the `d` affine branch points.
    pub affine_weight: BigInt,
    /// Present iff `gcd(n, d) = 1`.
    pub infinity_weight: Option<BigInt>,
    /// `BW_q = d * affine + infinity`, present iff `gcd(n, d) = 1`.
    pub branch_total: Option<BigInt>,
    /// Total q-weight of all points on the curve.
    pub curve_total: BigInt,
    /// `BW_q / curve_total`, present iff `gcd(n, d) = 1`.
    pub proportion: Option<BigRational>,
    pub asymptotic_bound: BigRational,
}

impl BranchWeightReport {
    /// Absolute distance between the proportion and its limit.
    pub fn deviation(&self) -> Option<BigRational> {
        self.proportion
            .as_ref()
            .map(|p| (p - &self.asymptotic_bound).abs())
    }
}

/// Assembles the full report for `q >= 1`.
///
/// For `q = 1` with `gcd(n, d) > 1` no closed form is available; the affine
/// weight then comes from enumerating the exponent set.
pub fn branch_weight_report(family: &CurveFamily, q: u64) -> Result<BranchWeightReport> {
    let dimension = family.dimension(q)?;
    let affine_weight = match q {
        1 if family.is_coprime() => affine_branch_weight_q1(family)?,
        1 => oracle::oracle_affine_weight(family, 1)?,
        _ => affine_branch_weight(family, q)?,
    };
    let curve_total = oracle::curve_total_weight(family.genus(), q)?;
    let (infinity_weight, branch_total, proportion) = if family.is_coprime() {
        let at_infinity = infinity_weight(family, q)?;
        let total = &affine_weight * family.d() + &at_infinity;
        let share = BigRational::new(total.clone(), curve_total.clone());
        (Some(at_infinity), Some(total), Some(share))
    } else {
        (None, None, None)
    };
    debug_assert!(proportion
        .as_ref()
        .is_none_or(|p| p.is_positive() && *p <= BigRational::one()));
    Ok(BranchWeightReport {
        family: *family,
        q,
        dimension,
        affine_weight,
        infinity_weight,
        branch_total,
        curve_total,
        proportion,
        asymptotic_bound: asymptotic_bound(family.n(), q),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: u64, d: u64) -> CurveFamily {
        CurveFamily::new(n, d).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Independent evaluation through `floor` on rationals.
    fn fractional_sum_by_floor(a: i64, b: i64, c: u64) -> BigRational {
        (0..c as i64)
            .map(|j| {
                let x = rat(a + b * j, c as i64);
                (&x - x.floor()) * BigRational::from_integer(j.into())
            })
            .sum()
    }

    #[test]
    fn fractional_sum_examples() {
        let d = |a: i64, b: i64, c| fractional_sum(&FractionalSumArgs::new(a, b, c).unwrap());
        assert_eq!(d(0, 0, 5), rat(0, 1));
        assert_eq!(d(7, -3, 1), rat(0, 1));
        assert_eq!(d(-12, -5, 3), rat(5, 3));
        assert_eq!(d(-16, -6, 4), rat(2, 1));
        assert_eq!(
            FractionalSumArgs::new(1, 1, 0).unwrap_err(),
            Error::ZeroModulus
        );
    }

    #[test]
    fn fractional_sum_matches_floor_definition() {
        for c in 1..=9u64 {
            for a in -30..=30 {
                for b in -12..=12 {
                    let got = fractional_sum(&FractionalSumArgs::new(a, b, c).unwrap());
                    assert_eq!(got, fractional_sum_by_floor(a, b, c), "D({a}, {b}, {c})");
                    assert!((got * BigRational::from_integer(c.into())).is_integer());
                }
            }
        }
    }

    #[test]
    fn w1_examples() {
        assert_eq!(w1_closed(&fam(3, 5), 2).unwrap(), 64.into());
        assert_eq!(w1_closed(&fam(2, 5), 2).unwrap(), 6.into());
        assert_eq!(w1_closed(&fam(4, 6), 2).unwrap(), 266.into());
        assert_eq!(
            w1_closed(&fam(3, 5), 1).unwrap_err(),
            Error::QOutOfRange { q: 1, min: 2 }
        );
    }

    #[test]
    fn w2_examples() {
        assert_eq!(w2_closed(&fam(3, 5), 2).unwrap(), 20.into());
        assert_eq!(w2_closed(&fam(2, 5), 2).unwrap(), 0.into());
        assert_eq!(w2_closed(&fam(2, 6), 2).unwrap(), 0.into());
        assert_eq!(w2_closed(&fam(4, 6), 2).unwrap(), 95.into());
        assert!(w2_closed(&fam(3, 5), 1).is_err());
    }

    #[test]
    fn w3_examples() {
        assert_eq!(w3_triangular(&fam(2, 5), 2).unwrap(), 3.into());
        assert_eq!(w3_triangular(&fam(3, 5), 2).unwrap(), 36.into());
        assert_eq!(w3_triangular(&fam(3, 5), 1).unwrap(), 6.into());
        assert!(w3_triangular(&fam(3, 5), 0).is_err());
    }

    #[test]
    fn affine_examples() {
        assert_eq!(affine_branch_weight(&fam(2, 5), 2).unwrap(), 3.into());
        assert_eq!(affine_branch_weight(&fam(3, 5), 2).unwrap(), 8.into());
        assert_eq!(affine_branch_weight(&fam(4, 6), 2).unwrap(), 18.into());
        assert_eq!(affine_branch_weight(&fam(2, 6), 2).unwrap(), 3.into());
        assert!(affine_branch_weight(&fam(2, 5), 1).is_err());
        let b = breakdown(&fam(3, 5), 2).unwrap();
        assert_eq!(
            (b.w1, b.w2, b.w3, b.weight),
            (64.into(), 20.into(), 36.into(), 8.into())
        );
    }

    #[test]
    fn affine_q1_examples() {
        assert_eq!(affine_branch_weight_q1(&fam(3, 5)).unwrap(), 4.into());
        assert_eq!(affine_branch_weight_q1(&fam(2, 7)).unwrap(), 3.into());
        assert_eq!(affine_branch_weight_q1(&fam(2, 5)).unwrap(), 1.into());
        assert_eq!(
            affine_branch_weight_q1(&fam(4, 6)).unwrap_err(),
            Error::RequiresCoprimeFamily { gcd: 2 }
        );
    }

    #[test]
    fn infinity_examples() {
        assert_eq!(infinity_weight(&fam(2, 5), 2).unwrap(), 3.into());
        assert_eq!(infinity_weight(&fam(3, 5), 1).unwrap(), 4.into());
        assert_eq!(infinity_weight(&fam(3, 5), 2).unwrap(), 8.into());
        let err = infinity_weight(&fam(2, 6), 3).unwrap_err();
        assert!(err.is_unsupported());
        assert!(infinity_weight(&fam(2, 8), 2).is_err());
    }

    #[test]
    fn corollary_examples() {
        use Corollary::*;
        assert_eq!(
            specialized_branch_weight(&fam(2, 5), 2, DCongruentMinusOne).unwrap(),
            3.into()
        );
        assert_eq!(
            specialized_branch_weight(&fam(4, 6), 3, DCongruentMinusGcd).unwrap(),
            18.into()
        );
        assert_eq!(
            specialized_branch_weight(&fam(2, 6), 2, NDividesD).unwrap(),
            3.into()
        );
        assert_eq!(
            specialized_branch_weight(&fam(3, 5), 2, Coprime).unwrap(),
            8.into()
        );
        let err = specialized_branch_weight(&fam(3, 5), 2, NDividesD).unwrap_err();
        assert_eq!(err.code(), "hypothesis_failed");
        assert!(err.to_string().contains("3 does not divide 5"));
        assert!(specialized_branch_weight(&fam(4, 6), 2, Coprime).is_err());
        assert!(specialized_branch_weight(&fam(3, 7), 2, DCongruentMinusOne).is_err());
        assert!(specialized_branch_weight(&fam(2, 5), 1, DCongruentMinusOne).is_err());
    }

    #[test]
    fn n_dividing_d_satisfies_minus_gcd() {
        assert!(Corollary::DCongruentMinusGcd.applies(&fam(3, 9)));
        assert!(Corollary::DCongruentMinusGcd.applies(&fam(4, 6)));
        assert!(!Corollary::DCongruentMinusGcd.applies(&fam(4, 9)));
    }

    #[test]
    fn report_examples() {
        let r = branch_weight_report(&fam(2, 5), 2).unwrap();
        assert_eq!(r.affine_weight, 3.into());
        assert_eq!(r.infinity_weight, Some(3.into()));
        assert_eq!(r.branch_total, Some(18.into()));
        assert_eq!(r.curve_total, 18.into());
        assert_eq!(r.proportion, Some(rat(1, 1)));

        let r = branch_weight_report(&fam(3, 5), 2).unwrap();
        assert_eq!(r.branch_total, Some(48.into()));
        assert_eq!(r.curve_total, 324.into());
        assert_eq!(r.proportion, Some(rat(4, 27)));
        assert_eq!(r.asymptotic_bound, rat(1, 27));
        assert_eq!(r.deviation(), Some(rat(3, 27)));

        let r = branch_weight_report(&fam(3, 5), 1).unwrap();
        assert_eq!(r.branch_total, Some(24.into()));
        assert_eq!(r.curve_total, 60.into());
        assert_eq!(r.asymptotic_bound, rat(4, 12));

        let r = branch_weight_report(&fam(4, 6), 2).unwrap();
        assert_eq!(r.affine_weight, 18.into());
        assert!(r.infinity_weight.is_none() && r.branch_total.is_none() && r.proportion.is_none());

        let r = branch_weight_report(&fam(4, 6), 1).unwrap();
        assert_eq!(
            r.affine_weight,
            oracle::oracle_affine_weight(&fam(4, 6), 1).unwrap()
        );
        assert!(branch_weight_report(&fam(4, 6), 0).is_err());
    }

    #[test]
    fn closed_forms_accept_huge_q() {
        let f = fam(5, 12);
        let q = u64::MAX - 3;
        let w = affine_branch_weight(&f, q).unwrap();
        // Periodic in q modulo n / G = 5.
        let same_class = 2 + (q - 2) % 5;
        assert_eq!(w, affine_branch_weight(&f, same_class).unwrap());
        assert!(w1_closed(&f, q).unwrap() > BigInt::from(u64::MAX));
    }
}
