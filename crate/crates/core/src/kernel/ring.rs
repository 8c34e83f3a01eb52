use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::scalar::ExactScalar;

/// Commutative ring with identity, exact arithmetic.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

/// Euclidean domain with a total order on the Euclidean function.
pub trait EuclideanRing: Ring {
    type Norm: Ord;
    /// Euclidean size; only compared for nonzero elements.
    fn norm(&self) -> Self::Norm;
    /// `a = q·b + r` with `r = 0` or `norm(r) < norm(b)`.
    fn div_rem(&self, other: &Self) -> (Self, Self);
    fn is_unit(&self) -> bool;
    /// A unit `u` and its inverse such that `self·u` is the preferred
    /// associate (positive integer, monic polynomial).
    fn normalizing_unit(&self) -> (Self, Self);
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl EuclideanRing for BigInt {
    type Norm = BigInt;
    fn norm(&self) -> BigInt {
        self.abs()
    }
    fn div_rem(&self, o: &Self) -> (Self, Self) {
        // floor division keeps |r| < |o|
        self.div_mod_floor(o)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn normalizing_unit(&self) -> (Self, Self) {
        let u = if self.is_negative() { BigInt::from(-1) } else { BigInt::from(1) };
        (u.clone(), u)
    }
}

impl Ring for ExactScalar {
    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn one() -> Self {
        ExactScalar::one()
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl EuclideanRing for ExactScalar {
    type Norm = u8;
    fn norm(&self) -> u8 {
        0
    }
    fn div_rem(&self, o: &Self) -> (Self, Self) {
        (self / o, ExactScalar::zero())
    }
    fn is_unit(&self) -> bool {
        !self.is_zero()
    }
    fn normalizing_unit(&self) -> (Self, Self) {
        if self.is_zero() {
            return (ExactScalar::one(), ExactScalar::one());
        }
        (self.inv().expect("nonzero"), self.clone())
    }
}
