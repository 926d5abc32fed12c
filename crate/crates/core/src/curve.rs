//! Superelliptic families `y^n = f(x)` and their holomorphic q-differentials.
//!
//! For `G = gcd(n, d)` the genus satisfies `2g - 2 = nd - n - d - G`. The
//! q-differentials `x^i y^j (dx / y^(n-1))^q` with `0 <= j < n` and
//! `ni + dj <= (2g - 2)q` form a basis, so the exponent pairs `(i, j)` are
//! all that is needed to read off orders of vanishing at branch points.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest exponent set [`CurveFamily::exponent_set`] will materialize.
pub const MAX_ENUMERATION: u64 = 1 << 26;

/// The parameters `(n, d)` of a superelliptic curve with separable `f` of
/// degree `d`, together with the derived gcd and genus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CurveFamily {
    n: u64,
    d: u64,
    gcd: u64,
    genus: u64,
}

impl CurveFamily {
    pub fn new(n: u64, d: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::ExponentTooSmall { n });
        }
        if d <= n {
            return Err(Error::DegreeNotAboveExponent { n, d });
        }
        let gcd = n.gcd(&d);
        let too_large = || Error::TooLarge(format!("n * d overflows for n = {n}, d = {d}"));
        // nd - n - d - G >= 0 whenever d > n >= 2.
        let canonical = n
            .checked_mul(d)
            .and_then(|nd| nd.checked_sub(n + d + gcd))
            .ok_or_else(too_large)?;
        debug_assert!(canonical.is_even());
        let genus = canonical / 2 + 1;
        if genus < 2 {
            return Err(Error::GenusBelowTwo { n, d, genus });
        }
        Ok(Self { n, d, gcd, genus })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// `G = gcd(n, d)`, the number of points over infinity.
    pub fn gcd(&self) -> u64 {
        self.gcd
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn is_coprime(&self) -> bool {
        self.gcd == 1
    }

    /// `2g - 2`.
    pub fn canonical_degree(&self) -> u64 {
        2 * self.genus - 2
    }

    pub fn space(&self, q: u64) -> Result<QDifferentialSpace> {
        QDifferentialSpace::new(*self, q)
    }

    /// Dimension `d_q` of the space of holomorphic q-differentials.
    pub fn dimension(&self, q: u64) -> Result<BigInt> {
        Ok(self.space(q)?.dim())
    }

    /// Whether `(2g - 2)q < d(n - 1)`, i.e. the top row `j = n - 1` of the
    /// exponent set is empty. For `q >= 2` this happens only for
    /// `(n, d, q)` in `{(2, 5, 2), (2, 6, 2)}`. Always false for `q < 2`.
    pub fn is_exceptional(&self, q: u64) -> bool {
        if q < 2 {
            return false;
        }
        BigUint::from(self.canonical_degree()) * q < BigUint::from(self.d) * (self.n - 1)
    }

    /// Every `(i, j)` with `0 <= j < n`, `i >= 0` and `ni + dj <= (2g - 2)q`,
    /// sorted by `(j, i)`.
    pub fn exponent_set(&self, q: u64) -> Result<ExponentSet> {
        let space = self.space(q)?;
        let bound = self
            .canonical_degree()
            .checked_mul(q)
            .ok_or_else(|| Error::TooLarge(format!("(2g - 2)q overflows for q = {q}")))?;
        let rows = (0..self.n).map_while(|j| self.d.checked_mul(j).filter(|&dj| dj <= bound));
        let mut expected = 0u64;
        for dj in rows.clone() {
            expected = expected.saturating_add((bound - dj) / self.n + 1);
        }
        if expected > MAX_ENUMERATION {
            return Err(Error::TooLarge(format!(
                "exponent set for {self}, q = {q} has {expected} pairs"
            )));
        }
        let mut pairs = Vec::with_capacity(expected as usize);
        for (j, dj) in rows.enumerate() {
            let top = (bound - dj) / self.n;
            pairs.extend((0..=top).map(|i| (i, j as u64)));
        }
        Ok(ExponentSet { space, pairs })
    }

    /// `((2g - 2)q - (ni + dj)) / G`, the order of vanishing of the basis
    /// element `(i, j)` at each of the `G` points over infinity.
    pub fn infinity_vanishing_order(&self, q: u64, i: u64, j: u64) -> Result<BigUint> {
        self.space(q)?;
        let outside = Error::OutsideExponentSet { i, j };
        if j >= self.n {
            return Err(outside);
        }
        let bound = BigUint::from(self.canonical_degree()) * q;
        let used = BigUint::from(self.n) * i + BigUint::from(self.d) * j;
        if used > bound {
            return Err(outside);
        }
        let (order, rem) = (bound - used).div_rem(&BigUint::from(self.gcd));
        debug_assert!(rem == BigUint::from(0u32));
        Ok(order)
    }
}

impl fmt::Display for CurveFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n = {}, d = {})", self.n, self.d)
    }
}

/// `H^0(C, (Omega^1)^q)` for a family, identified by `q >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QDifferentialSpace {
    family: CurveFamily,
    q: u64,
}

impl QDifferentialSpace {
    pub fn new(family: CurveFamily, q: u64) -> Result<Self> {
        if q < 1 {
            return Err(Error::QOutOfRange { q, min: 1 });
        }
        Ok(Self { family, q })
    }

    pub fn family(&self) -> &CurveFamily {
        &self.family
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `g` when `q = 1`, otherwise `(g - 1)(2q - 1)`.
    pub fn dim(&self) -> BigInt {
        let g = BigInt::from(self.family.genus);
        if self.q == 1 {
            g
        } else {
            (g - 1) * (BigInt::from(self.q) * 2 - 1)
        }
    }
}

/// The exponent pairs `(i, j)` of the monomial basis of q-differentials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentSet {
    space: QDifferentialSpace,
    pairs: Vec<(u64, u64)>,
}

impl ExponentSet {
    pub fn space(&self) -> &QDifferentialSpace {
        &self.space
    }

    /// Pairs sorted by `(j, i)`.
    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, i: u64, j: u64) -> bool {
        self.pairs
            .binary_search_by(|&(pi, pj)| (pj, pi).cmp(&(j, i)))
            .is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.pairs.iter().copied()
    }
}
