//! Exact scalar fields.
//!
//! Everything in the crate is generic over a [`Scalar`]: a field whose
//! arithmetic is exact. Two families are provided, the prime fields
//! [`Fp<P>`] (modulus fixed at compile time) and the rationals
//! [`BigRational`](num_rational::BigRational).

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Which field an algebra is defined over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Prime(u64),
    Rationals,
}

impl FieldSpec {
    /// Returns `None` unless `p` is prime.
    pub fn prime(p: u64) -> Option<Self> {
        is_prime(p).then_some(FieldSpec::Prime(p))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F{p}"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

pub const fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn field() -> FieldSpec;

    fn from_bigint(n: &BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    /// `numer / denom`, or `None` when the denominator vanishes in the field.
    fn from_ratio(numer: &BigInt, denom: &BigInt) -> Option<Self> {
        let d = Self::from_bigint(denom);
        if d.is_zero() {
            None
        } else {
            Some(Self::from_bigint(numer) / d)
        }
    }

    /// A rational representative; for `F_p` the least nonnegative residue.
    fn to_rational(&self) -> BigRational;
}

/// Residues modulo the prime `P`, stored as the least nonnegative representative.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const MODULUS_IS_PRIME: () = assert!(is_prime(P) && P < (1 << 32), "modulus must be a prime below 2^32");

    pub fn new(value: u64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::MODULUS_IS_PRIME;
        Fp(value % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Self::new(1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    pub fn inverse(self) -> Option<Self> {
        (self.0 != 0).then(|| self.pow(P - 2))
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse().expect("division by zero in a prime field")
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Self::new(1)
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn field() -> FieldSpec {
        FieldSpec::Prime(P)
    }

    fn from_bigint(n: &BigInt) -> Self {
        let r = n.mod_floor_u64(P);
        Self::new(r)
    }

    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.0))
    }
}

trait ModFloor {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloor for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        let m = BigInt::from(p);
        let mut r = self % &m;
        if r.is_negative() {
            r += &m;
        }
        r.to_u64().expect("residue fits in u64")
    }
}

impl Scalar for BigRational {
    fn field() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F5 = Fp<5>;

    #[test]
    fn prime_field_arithmetic() {
        let a = F5::new(3);
        let b = F5::new(4);
        assert_eq!((a + b).value(), 2);
        assert_eq!((a - b).value(), 4);
        assert_eq!((a * b).value(), 2);
        assert_eq!((a / b * b), a);
        assert_eq!((-a).value(), 2);
        assert_eq!(F5::from_i64(-1).value(), 4);
        assert!(F5::new(0).inverse().is_none());
    }

    #[test]
    fn every_nonzero_residue_is_invertible() {
        for v in 1..31u64 {
            let x = Fp::<31>::new(v);
            assert_eq!(x * x.inverse().unwrap(), Fp::<31>::one());
        }
    }

    #[test]
    fn ratio_rejects_vanishing_denominator() {
        let five = BigInt::from(5);
        assert!(F5::from_ratio(&BigInt::from(1), &five).is_none());
        let q = BigRational::from_ratio(&BigInt::from(2), &BigInt::from(4)).unwrap();
        assert_eq!(q, BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn field_spec_checks_primality() {
        assert_eq!(FieldSpec::prime(7), Some(FieldSpec::Prime(7)));
        assert_eq!(FieldSpec::prime(9), None);
        assert_eq!(FieldSpec::prime(1), None);
    }
}
