//! Exact arithmetic in the ring of `p`-th cyclotomic integers `Z[ζ]`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^(p-2)`; the relation
//! `ζ^(p-1) = -(1 + ζ + … + ζ^(p-2))` keeps every value in a unique reduced
//! form, so equality is coefficient equality.
//!
//! The modulus `p = 1` is accepted and denotes the rational integers
//! (`ζ = 1`, a single coefficient). Groups without an odd cyclic factor take
//! their character values there.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycError {
    /// Operands live in different cyclotomic rings.
    ModulusMismatch { left: u32, right: u32 },
    /// A coefficient left the range of `i64`.
    Overflow,
    /// The modulus is neither 1 nor an odd prime.
    BadModulus(u32),
}

impl fmt::Display for CycError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycError::ModulusMismatch { left, right } => {
                write!(f, "cyclotomic modulus mismatch: {left} vs {right}")
            }
            CycError::Overflow => f.write_str("cyclotomic coefficient overflow"),
            CycError::BadModulus(p) => write!(f, "unsupported cyclotomic modulus {p}"),
        }
    }
}

impl core::error::Error for CycError {}

/// An element of `Z[ζ_p]` in canonical reduced form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycInt {
    p: u32,
    coeffs: Vec<i64>,
}

pub(crate) fn is_odd_prime(p: u32) -> bool {
    p >= 3 && p % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn basis_len(p: u32) -> usize {
    if p == 1 {
        1
    } else {
        (p - 1) as usize
    }
}

impl CycInt {
    fn check_modulus(p: u32) -> Result<(), CycError> {
        if p == 1 || is_odd_prime(p) {
            Ok(())
        } else {
            Err(CycError::BadModulus(p))
        }
    }

    pub fn zero(p: u32) -> Result<Self, CycError> {
        Self::check_modulus(p)?;
        Ok(CycInt { p, coeffs: vec![0; basis_len(p)] })
    }

    pub fn from_integer(p: u32, n: i64) -> Result<Self, CycError> {
        let mut z = Self::zero(p)?;
        z.coeffs[0] = n;
        Ok(z)
    }

    /// `ζ^(k mod p)` in canonical form.
    pub fn root_power(p: u32, k: i64) -> Result<Self, CycError> {
        Self::check_modulus(p)?;
        let mut counts = vec![0i64; p as usize];
        counts[k.rem_euclid(p as i64) as usize] = 1;
        Ok(Self::from_power_counts_unchecked(p, &counts))
    }

    /// Builds `Σ counts[k]·ζ^k` for `k < p`.
    ///
    /// Panics if `counts.len() != p`.
    pub fn from_power_counts(p: u32, counts: &[i64]) -> Result<Self, CycError> {
        Self::check_modulus(p)?;
        assert_eq!(counts.len(), p as usize, "power histogram must have length p");
        Ok(Self::from_power_counts_unchecked(p, counts))
    }

    pub(crate) fn from_power_counts_unchecked(p: u32, counts: &[i64]) -> Self {
        if p == 1 {
            return CycInt { p, coeffs: vec![counts[0]] };
        }
        let top = counts[p as usize - 1];
        let coeffs = counts[..p as usize - 1].iter().map(|&c| c - top).collect();
        CycInt { p, coeffs }
    }

    /// Builds an element from coefficients in the reduced basis.
    pub fn from_coeffs(p: u32, coeffs: Vec<i64>) -> Result<Self, CycError> {
        Self::check_modulus(p)?;
        assert_eq!(coeffs.len(), basis_len(p), "coefficient vector has wrong length");
        Ok(CycInt { p, coeffs })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Returns `n` when the value is the rational integer `n`.
    pub fn is_rational_integer(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    fn same_ring(&self, other: &Self) -> Result<(), CycError> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(CycError::ModulusMismatch { left: self.p, right: other.p })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CycError> {
        self.same_ring(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(*b).ok_or(CycError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(CycInt { p: self.p, coeffs })
    }

    pub fn try_neg(&self) -> Result<Self, CycError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.checked_neg().ok_or(CycError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(CycInt { p: self.p, coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CycError> {
        self.try_add(&other.try_neg()?)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CycError> {
        self.same_ring(other)?;
        let p = self.p as usize;
        if p == 1 {
            let c = self.coeffs[0].checked_mul(other.coeffs[0]).ok_or(CycError::Overflow)?;
            return Ok(CycInt { p: 1, coeffs: vec![c] });
        }
        // Multiply modulo ζ^p = 1, then reduce by Φ_p.
        let mut counts = vec![0i64; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let term = a.checked_mul(b).ok_or(CycError::Overflow)?;
                let slot = &mut counts[(i + j) % p];
                *slot = slot.checked_add(term).ok_or(CycError::Overflow)?;
            }
        }
        let top = counts[p - 1];
        let coeffs = counts[..p - 1]
            .iter()
            .map(|c| c.checked_sub(top).ok_or(CycError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(CycInt { p: self.p, coeffs })
    }

    /// Complex conjugate, `ζ ↦ ζ^(-1)`.
    pub fn conj(&self) -> Self {
        let p = self.p as usize;
        if p == 1 {
            return self.clone();
        }
        let mut counts = vec![0i64; p];
        for (i, &c) in self.coeffs.iter().enumerate() {
            counts[(p - i) % p] = c;
        }
        Self::from_power_counts_unchecked(self.p, &counts)
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeffs[0])?;
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            match i {
                1 => write!(f, " + {c}·z")?,
                _ => write!(f, " + {c}·z^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        self.try_add(rhs).expect("cyclotomic addition")
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        self.try_sub(rhs).expect("cyclotomic subtraction")
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        self.try_mul(rhs).expect("cyclotomic multiplication")
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        self.try_neg().expect("cyclotomic negation")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: u32, k: i64) -> CycInt {
        CycInt::root_power(p, k).unwrap()
    }

    #[test]
    fn powers_of_zeta_sum_to_zero() {
        let mut acc = CycInt::zero(5).unwrap();
        for k in 0..5 {
            acc = &acc + &z(5, k);
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn zeta_power_product_wraps() {
        assert_eq!(&z(5, 2) * &z(5, 3), CycInt::from_integer(5, 1).unwrap());
    }

    #[test]
    fn gauss_period_product() {
        // (ζ+ζ⁴)(ζ²+ζ³) = ζ³+ζ⁴+ζ+ζ² = -1, expanded by hand.
        let x = &z(5, 1) + &z(5, 4);
        let y = &z(5, 2) + &z(5, 3);
        assert_eq!((&x * &y).is_rational_integer(), Some(-1));
    }

    #[test]
    fn root_power_reduction() {
        assert_eq!(z(5, 0).coeffs(), &[1, 0, 0, 0]);
        assert_eq!(z(5, 4).coeffs(), &[-1, -1, -1, -1]);
        assert_eq!(z(5, 7), z(5, 2));
        assert_eq!(z(5, -3), z(5, 2));
    }

    #[test]
    fn rational_integer_detection() {
        assert_eq!(CycInt::zero(7).unwrap().is_rational_integer(), Some(0));
        let s = (1..5).fold(CycInt::zero(5).unwrap(), |acc, k| &acc + &z(5, k));
        assert_eq!(s.is_rational_integer(), Some(-1));
        assert_eq!(z(5, 1).is_rational_integer(), None);
    }

    #[test]
    fn integer_ring_modulus_one() {
        let two = CycInt::from_integer(1, 2).unwrap();
        assert_eq!(z(1, 17).is_rational_integer(), Some(1));
        assert_eq!((&two * &two).is_rational_integer(), Some(4));
    }

    #[test]
    fn mismatched_modulus_is_an_error() {
        assert_eq!(
            z(3, 1).try_add(&z(5, 1)),
            Err(CycError::ModulusMismatch { left: 3, right: 5 })
        );
        assert_eq!(CycInt::zero(9), Err(CycError::BadModulus(9)));
    }

    #[test]
    fn overflow_is_an_error() {
        let big = CycInt::from_integer(3, i64::MAX).unwrap();
        assert_eq!(big.try_add(&big), Err(CycError::Overflow));
    }

    #[test]
    fn galois_sums() {
        for p in [3u32, 5, 7, 11] {
            for j in 0..p as i64 {
                let s = (1..p as i64).fold(CycInt::zero(p).unwrap(), |acc, k| &acc + &z(p, j * k));
                let expect = if j == 0 { p as i64 - 1 } else { -1 };
                assert_eq!(s.is_rational_integer(), Some(expect), "p={p} j={j}");
            }
        }
    }

    #[test]
    fn conjugation_inverts_roots() {
        for k in 0..7 {
            assert_eq!(z(7, k).conj(), z(7, -k));
            assert_eq!((&z(7, k) * &z(7, k).conj()).is_rational_integer(), Some(1));
        }
    }

    #[test]
    fn debug_rendering() {
        let x = &z(5, 1) + &z(5, 1);
        assert_eq!(alloc::format!("{x:?}"), "0 + 2·z + 0·z^2 + 0·z^3");
    }
}
