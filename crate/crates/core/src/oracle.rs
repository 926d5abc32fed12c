//! Brute-force weights computed straight from the exponent set.
//!
//! Nothing here uses the closed forms in [`crate::weights`]: each quantity is
//! a direct sum over the pairs `(i, j)` of [`CurveFamily::exponent_set`].
//! At an affine branch point the basis element `(i, j)` vanishes to order
//! `ni + j`; at the point over infinity (coprime case) to order
//! `(2g - 2)q - (ni + dj)`. Both order lists are checked to be free of
//! repeats before the weight is formed.

use std::collections::HashSet;

use num_bigint::BigInt;

use crate::curve::{CurveFamily, ExponentSet};
use crate::error::{Error, Result};

/// Every oracle quantity for one `(n, d, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    /// Sum of `ni + dj` over the exponent set.
    pub w1: BigInt,
    /// `(d - 1)` times the sum of `j`.
    pub w2: BigInt,
    /// `d_q (d_q - 1) / 2`.
    pub w3: BigInt,
    pub affine_weight: BigInt,
    /// Present iff `gcd(n, d) = 1`.
    pub infinity_weight: Option<BigInt>,
    pub set_size: usize,
}

fn triangular(len: usize) -> BigInt {
    let len = BigInt::from(len);
    &len * (&len - 1) / 2
}

/// Sum of `orders` less `0 + 1 + ... + (len - 1)`, after checking the orders
/// are pairwise distinct.
fn weight_from_orders(what: &str, orders: impl Iterator<Item = BigInt>) -> BigInt {
    let mut seen = HashSet::new();
    let mut sum = BigInt::from(0);
    for order in orders {
        sum += &order;
        assert!(seen.insert(order), "repeated {what} vanishing order");
    }
    sum - triangular(seen.len())
}

fn require_q_at_least(q: u64, min: u64) -> Result<()> {
    if q < min {
        Err(Error::QOutOfRange { q, min })
    } else {
        Ok(())
    }
}

fn affine_weight_of(family: &CurveFamily, set: &ExponentSet) -> BigInt {
    let n = family.n();
    weight_from_orders("affine", set.iter().map(|(i, j)| BigInt::from(i) * n + j))
}

fn w1_of(family: &CurveFamily, set: &ExponentSet) -> BigInt {
    set.iter()
        .map(|(i, j)| BigInt::from(i) * family.n() + BigInt::from(j) * family.d())
        .sum()
}

fn w2_of(family: &CurveFamily, set: &ExponentSet) -> BigInt {
    let column: BigInt = set.iter().map(|(_, j)| BigInt::from(j)).sum();
    column * (family.d() - 1)
}

fn infinity_weight_of(family: &CurveFamily, set: &ExponentSet) -> Result<BigInt> {
    if !family.is_coprime() {
        return Err(Error::RequiresCoprimeFamily { gcd: family.gcd() });
    }
    let q = set.space().q();
    let orders = set
        .iter()
        .map(|(i, j)| family.infinity_vanishing_order(q, i, j).map(BigInt::from))
        .collect::<Result<Vec<_>>>()?;
    Ok(weight_from_orders("infinity", orders.into_iter()))
}

/// `sum (ni + j) - d_q(d_q - 1)/2` over the exponent set, for `q >= 1`.
pub fn oracle_affine_weight(family: &CurveFamily, q: u64) -> Result<BigInt> {
    let set = family.exponent_set(q)?;
    Ok(affine_weight_of(family, &set))
}

/// `sum (ni + dj)` over the exponent set, for `q >= 2`.
pub fn oracle_w1(family: &CurveFamily, q: u64) -> Result<BigInt> {
    require_q_at_least(q, 2)?;
    Ok(w1_of(family, &family.exponent_set(q)?))
}

/// `(d - 1) sum j` over the exponent set, for `q >= 2`.
pub fn oracle_w2(family: &CurveFamily, q: u64) -> Result<BigInt> {
    require_q_at_least(q, 2)?;
    Ok(w2_of(family, &family.exponent_set(q)?))
}

/// Weight of the point over infinity from its vanishing orders. Refuses
/// `gcd(n, d) > 1`: the `G` points over infinity then share orders that
/// depend on `f`.
pub fn oracle_infinity_weight(family: &CurveFamily, q: u64) -> Result<BigInt> {
    infinity_weight_of(family, &family.exponent_set(q)?)
}

/// Total q-weight of all points on a genus `g` curve: `g^3 - g` for `q = 1`,
/// `g(g - 1)^2 (2q - 1)^2` for `q >= 2`.
///
/// A reference constant rather than an enumeration; the non-branch
/// q-Weierstrass points cannot be located from `(n, d, q)`.
pub fn curve_total_weight(genus: u64, q: u64) -> Result<BigInt> {
    require_q_at_least(q, 1)?;
    let g = BigInt::from(genus);
    Ok(if q == 1 {
        &g * &g * &g - &g
    } else {
        let odd = BigInt::from(q) * 2 - 1;
        &g * (&g - 1) * (&g - 1) * &odd * &odd
    })
}

/// All oracle quantities from a single enumeration, for `q >= 1`. `w1` and
/// `w2` are reported for `q = 1` too, though only the affine sum is a weight
/// there.
pub fn oracle_report(family: &CurveFamily, q: u64) -> Result<OracleReport> {
    let set = family.exponent_set(q)?;
    let infinity_weight = match infinity_weight_of(family, &set) {
        Ok(w) => Some(w),
        Err(Error::RequiresCoprimeFamily { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(OracleReport {
        w1: w1_of(family, &set),
        w2: w2_of(family, &set),
        w3: triangular(set.len()),
        affine_weight: affine_weight_of(family, &set),
        infinity_weight,
        set_size: set.len(),
    })
}
