//! Scalar traits shared by every algebraic container in the crate.
//!
//! Elements of the runtime fields carry their own context (characteristic,
//! modulus, p-adic precision), so the constructors here take `&self` as a
//! prototype instead of being context-free like `num_traits::Zero::zero`.
//! Types that do have context-free identities get these for free through
//! `num_traits`.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A commutative ring with identity.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Largest matrix dimension for which characteristic polynomials and
    /// cofactor determinants over this ring are attempted.
    const MATRIX_LIMIT: usize = 12;

    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64_like(&self, n: i64) -> Self;

    fn is_one(&self) -> bool {
        (self.clone() - self.one_like()).is_zero()
    }

    fn pow_u(&self, mut e: u128) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn try_inv(&self) -> Result<Self>;

    fn try_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * rhs.try_inv()?)
    }
}

/// A finite field with a fixed enumeration of its elements.
pub trait FiniteField: Field {
    fn order(&self) -> u128;
    fn characteristic(&self) -> u64;
    /// The `i`-th element in enumeration order, `0 <= i < order`.
    fn nth_element(&self, i: u128) -> Self;
    /// Inverse of `nth_element`.
    fn index(&self) -> u128;
}

macro_rules! num_ring {
    ($t:ty, $from:expr) => {
        impl Ring for $t {
            fn zero_like(&self) -> Self {
                <$t as Zero>::zero()
            }
            fn one_like(&self) -> Self {
                <$t as One>::one()
            }
            fn is_zero(&self) -> bool {
                Zero::is_zero(self)
            }
            fn from_i64_like(&self, n: i64) -> Self {
                ($from)(n)
            }
        }
    };
}

num_ring!(BigInt, BigInt::from);
num_ring!(BigRational, |n: i64| BigRational::from_integer(BigInt::from(n)));

impl Field for BigRational {
    fn try_inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.recip())
    }
}

