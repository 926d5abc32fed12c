//! The numerical semigroup generated by two positive integers.
//!
//! `R(a, b)` is the set of non-negative combinations `ax + by`; its complement
//! in the non-negative integers is the gap set. When `gcd(a, b) = 1` the gap
//! set is finite and has closed-form cardinality and sum. Enumeration here is
//! the brute-force reference; the closed forms are what the weight formulas
//! use.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemigroupPair {
    a: BigUint,
    b: BigUint,
    coprime: bool,
}

impl SemigroupPair {
    /// Returns `None` if either generator is zero.
    pub fn new(a: impl Into<BigUint>, b: impl Into<BigUint>) -> Option<Self> {
        let (a, b) = (a.into(), b.into());
        if a.is_zero() || b.is_zero() {
            return None;
        }
        let coprime = a.gcd(&b).is_one();
        Some(Self { a, b, coprime })
    }

    pub fn a(&self) -> &BigUint {
        &self.a
    }

    pub fn b(&self) -> &BigUint {
        &self.b
    }

    pub fn is_coprime(&self) -> bool {
        self.coprime
    }

    fn require_coprime(&self) -> Result<()> {
        if self.coprime {
            Ok(())
        } else {
            Err(Error::NotCoprime {
                a: self.a.clone(),
                b: self.b.clone(),
            })
        }
    }

    /// Whether `m = ax + by` for some non-negative `x`, `y`.
    pub fn is_representable(&self, m: &BigUint) -> bool {
        let mut rest = m.clone();
        loop {
            if (&rest % &self.b).is_zero() {
                return true;
            }
            if rest < self.a {
                return false;
            }
            rest -= &self.a;
        }
    }

    /// All gaps in increasing order, by enumerating `0..=ab - a - b`.
    pub fn gap_set(&self) -> Result<GapSet> {
        self.require_coprime()?;
        let frobenius = self.frobenius_number()?;
        let Some(top) = frobenius.to_biguint() else {
            return Ok(GapSet::default());
        };
        let mut elements = Vec::new();
        let mut m = BigUint::zero();
        while m <= top {
            if !self.is_representable(&m) {
                elements.push(m.clone());
            }
            m += 1u32;
        }
        Ok(GapSet { elements })
    }

    /// `(a - 1)(b - 1) / 2`.
    pub fn gap_count(&self) -> Result<BigUint> {
        self.require_coprime()?;
        Ok((&self.a - 1u32) * (&self.b - 1u32) / 2u32)
    }

    /// `(a - 1)(b - 1)(2ab - a - b - 1) / 12`.
    pub fn gap_sum(&self) -> Result<BigUint> {
        self.require_coprime()?;
        let (a, b) = (BigInt::from(self.a.clone()), BigInt::from(self.b.clone()));
        let last = BigInt::from(2) * &a * &b - &a - &b - 1;
        let sum: BigInt = (&a - 1) * (&b - 1) * last / 12;
        // a = 1 or b = 1 zeroes the product before `last` can go negative.
        Ok(sum.to_biguint().expect("gap sum is non-negative"))
    }

    /// `ab - a - b`, the largest gap; `-1` when a generator is 1.
    pub fn frobenius_number(&self) -> Result<BigInt> {
        self.require_coprime()?;
        let (a, b) = (BigInt::from(self.a.clone()), BigInt::from(self.b.clone()));
        Ok(&a * &b - &a - &b)
    }
}

/// Strictly increasing list of non-representable integers.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GapSet {
    elements: Vec<BigUint>,
}

impl GapSet {
    pub fn elements(&self) -> &[BigUint] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn sum(&self) -> BigUint {
        self.elements.iter().sum()
    }

    pub fn max(&self) -> Option<&BigUint> {
        self.elements.last()
    }

    pub fn contains(&self, m: &BigUint) -> bool {
        self.elements.binary_search(m).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pair(a: u64, b: u64) -> SemigroupPair {
        SemigroupPair::new(a, b).unwrap()
    }

    fn gaps(a: u64, b: u64) -> Vec<u64> {
        pair(a, b)
            .gap_set()
            .unwrap()
            .elements()
            .iter()
            .map(|g| u64::try_from(g).unwrap())
            .collect()
    }

    /// Independent membership test: search over both coefficients.
    fn representable_brute(a: u64, b: u64, m: u64) -> bool {
        (0..=m / a).any(|x| (0..=m / b).any(|y| a * x + b * y == m))
    }

    #[test]
    fn zero_generator_rejected() {
        assert!(SemigroupPair::new(0u32, 3u32).is_none());
        assert!(SemigroupPair::new(3u32, 0u32).is_none());
    }

    #[test]
    fn representability_examples() {
        let s = pair(2, 3);
        assert!(!s.is_representable(&1u32.into()));
        assert!(s.is_representable(&0u32.into()));
        let s = pair(3, 5);
        assert!(!s.is_representable(&7u32.into()));
        assert!(s.is_representable(&8u32.into()));
    }

    #[test]
    fn gap_set_examples() {
        assert_eq!(gaps(2, 3), vec![1]);
        assert_eq!(gaps(3, 5), vec![1, 2, 4, 7]);
        assert_eq!(gaps(2, 7), vec![1, 3, 5]);
        assert!(gaps(1, 9).is_empty());
    }

    #[test]
    fn non_coprime_is_refused() {
        let s = pair(4, 6);
        assert!(!s.is_coprime());
        assert!(matches!(s.gap_set(), Err(Error::NotCoprime { .. })));
        assert!(s.gap_count().is_err());
        assert!(s.gap_sum().is_err());
        assert!(s.frobenius_number().is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(pair(2, 3).gap_count().unwrap(), 1u32.into());
        assert_eq!(pair(3, 5).gap_count().unwrap(), 4u32.into());
        assert_eq!(pair(1, 17).gap_count().unwrap(), 0u32.into());
        assert_eq!(pair(2, 3).gap_sum().unwrap(), 1u32.into());
        assert_eq!(pair(3, 5).gap_sum().unwrap(), 14u32.into());
        assert_eq!(pair(2, 7).gap_sum().unwrap(), 9u32.into());
        assert_eq!(pair(1, 1).gap_sum().unwrap(), 0u32.into());
        assert_eq!(pair(2, 3).frobenius_number().unwrap(), 1.into());
        assert_eq!(pair(3, 5).frobenius_number().unwrap(), 7.into());
        assert_eq!(pair(1, 5).frobenius_number().unwrap(), (-1).into());
    }

    #[test]
    fn big_generators() {
        let a = BigUint::from(10u32).pow(30) + 1u32;
        let b = BigUint::from(10u32).pow(30);
        let s = SemigroupPair::new(a.clone(), b.clone()).unwrap();
        assert!(s.is_coprime());
        assert_eq!(s.gap_count().unwrap(), &b * (&b - 1u32) / 2u32);
    }

    proptest! {
        #[test]
        fn representability_matches_brute(a in 1u64..15, b in 1u64..15, m in 0u64..120) {
            prop_assert_eq!(pair(a, b).is_representable(&m.into()), representable_brute(a, b, m));
        }

        #[test]
        fn gap_set_structure(a in 1u64..25, b in 1u64..25) {
            prop_assume!(num_integer::gcd(a, b) == 1);
            let s = pair(a, b);
            let set = s.gap_set().unwrap();
            prop_assert_eq!(gaps(a, b), gaps(b, a));
            prop_assert_eq!(BigUint::from(set.len()), s.gap_count().unwrap());
            prop_assert_eq!(set.sum(), s.gap_sum().unwrap());
            let frob = s.frobenius_number().unwrap();
            match set.max() {
                Some(m) => prop_assert_eq!(BigInt::from(m.clone()), frob.clone()),
                None => prop_assert_eq!(frob.clone(), BigInt::from(-1)),
            }
            for m in 0..=frob.max(BigInt::zero()).to_biguint().unwrap().try_into().unwrap_or(0u64) {
                let m = BigUint::from(m);
                prop_assert_eq!(set.contains(&m), !s.is_representable(&m));
            }
        }
    }
}
