//! Exact scalar types for the small linear systems in the solvers.
//!
//! Every operation is checked and returns `None` instead of losing
//! precision, so callers can run on [`Small`] first and redo the work on
//! [`Rational`] when it overflows.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::games::Rational;

pub trait Field: Clone + Ord + Debug {
    fn from_rational(r: &Rational) -> Option<Self>;
    fn to_rational(&self) -> Rational;
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn div(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
}

impl Field for Rational {
    fn from_rational(r: &Rational) -> Option<Self> {
        Some(r.clone())
    }
    fn to_rational(&self) -> Rational {
        self.clone()
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        (!Zero::is_zero(o)).then(|| self / o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
}

/// Numerator and denominator bounded by `2^62`, so every intermediate
/// product fits in an `i128`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Small {
    num: i128,
    den: i128,
}

const LIMIT: i128 = 1 << 62;

impl Small {
    fn make(num: i128, den: i128) -> Option<Small> {
        if den == 0 {
            return None;
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        (num.abs() <= LIMIT && den <= LIMIT).then_some(Small { num, den })
    }
}

impl Ord for Small {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.num * o.den).cmp(&(o.num * self.den))
    }
}

impl PartialOrd for Small {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Field for Small {
    fn from_rational(r: &Rational) -> Option<Self> {
        let fit = |b: &BigInt| b.to_i128().filter(|v| v.abs() <= LIMIT);
        Some(Small {
            num: fit(r.numer())?,
            den: fit(r.denom())?,
        })
    }
    fn to_rational(&self) -> Rational {
        Rational::new(BigInt::from(self.num), BigInt::from(self.den))
    }
    fn zero() -> Self {
        Small { num: 0, den: 1 }
    }
    fn one() -> Self {
        Small { num: 1, den: 1 }
    }
    fn is_zero(&self) -> bool {
        self.num == 0
    }
    fn is_negative(&self) -> bool {
        self.num < 0
    }
    fn is_positive(&self) -> bool {
        self.num > 0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        if self.den == o.den {
            return Small::make(self.num + o.num, self.den);
        }
        Small::make(self.num * o.den + o.num * self.den, self.den * o.den)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.add(&o.neg()?)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        if self.num == 0 || o.num == 0 {
            return Some(Small::zero());
        }
        Small::make(self.num * o.num, self.den * o.den)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        Small::make(self.num * o.den, self.den * o.num)
    }
    fn neg(&self) -> Option<Self> {
        Some(Small { num: -self.num, den: self.den })
    }
}
