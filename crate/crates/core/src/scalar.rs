//! The exact scalar abstraction the linear algebra is written against.
//!
//! Cyclotomic numbers carry their conductor, so the constants `0` and `1` are
//! produced from an existing value (`zero_like`, `one_like`) instead of the
//! context-free `num_traits::Zero`/`One`.

use std::fmt::Debug;
use std::hash::Hash;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed};

use crate::cyclotomic::CycloNum;

pub trait Field: Clone + Eq + Hash + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Whether the two values live in the same field (same conductor).
    fn compatible(&self, _other: &Self) -> bool {
        true
    }
}

impl<T> Field for Ratio<T>
where
    T: Integer + Signed + FromPrimitive + Clone + Hash + Debug + Send + Sync,
{
    fn zero_like(&self) -> Self {
        num_traits::Zero::zero()
    }

    fn one_like(&self) -> Self {
        num_traits::One::one()
    }

    fn int_like(&self, v: i64) -> Self {
        Ratio::from_integer(T::from_i64(v).expect("integer fits the scalar type"))
    }

    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        num_traits::One::is_one(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self.clone()
    }

    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Field for CycloNum {
    fn zero_like(&self) -> Self {
        CycloNum::zero(self.conductor())
    }

    fn one_like(&self) -> Self {
        CycloNum::one(self.conductor())
    }

    fn int_like(&self, v: i64) -> Self {
        CycloNum::from_int(self.conductor(), v)
    }

    fn is_zero(&self) -> bool {
        CycloNum::is_zero(self)
    }

    fn is_one(&self) -> bool {
        CycloNum::is_one(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn inv(&self) -> Option<Self> {
        CycloNum::inv(self).ok()
    }

    fn compatible(&self, other: &Self) -> bool {
        self.conductor() == other.conductor()
    }
}
