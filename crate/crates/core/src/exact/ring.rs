//! Algebraic structure traits shared by every exact scalar in the crate.
//!
//! Constants produced by [`Ring::zero`], [`Ring::one`] and
//! [`Ring::from_rational`] carry no context (no radicand, no defining
//! polynomial). Context-bearing types adopt the context of whichever operand
//! has one when they are combined.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::Rational;

/// Sign of an exact quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_i32(v: i32) -> Sign {
        match v.cmp(&0) {
            std::cmp::Ordering::Less => Sign::Negative,
            std::cmp::Ordering::Equal => Sign::Zero,
            std::cmp::Ordering::Greater => Sign::Positive,
        }
    }

    pub fn to_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    pub fn flip(self) -> Sign {
        Sign::of_i32(-self.to_i32())
    }

    pub fn mul(self, other: Sign) -> Sign {
        Sign::of_i32(self.to_i32() * other.to_i32())
    }

    /// Compact `+`, `-`, `0` rendering used in sign tables.
    pub fn symbol(self) -> char {
        match self {
            Sign::Negative => '-',
            Sign::Zero => '0',
            Sign::Positive => '+',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Commutative ring with unit. `zero`, `one` and `is_zero` come from
/// `num_traits`.
pub trait Ring:
    Clone
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
    + Sized
{
    fn from_rational(r: &Rational) -> Self;

    /// Whether the value cannot be told apart from zero. Exact rings answer
    /// `is_zero`; enclosures answer whether they contain zero.
    fn is_possibly_zero(&self) -> bool {
        self.is_zero()
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
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

/// Ring in which division by a known divisor is exact (Bareiss elimination).
pub trait ExactDiv: Ring {
    /// `self / d`, assuming `d` divides `self`. Panics when it does not.
    fn exact_div(&self, d: &Self) -> Self;
}

/// Field operations. `inv` panics on zero.
pub trait Field: ExactDiv {
    fn inv(&self) -> Self;

    fn div(&self, d: &Self) -> Self {
        self.clone() * d.inv()
    }
}

/// Exactly decidable sign.
pub trait Signed: Ring {
    fn sgn(&self) -> Sign;
}

// ---------------------------------------------------------------------------
// Rational

impl Ring for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl ExactDiv for Rational {
    fn exact_div(&self, d: &Self) -> Self {
        self / d
    }
}

impl Field for Rational {
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero rational");
        self.recip()
    }
}

impl Signed for Rational {
    fn sgn(&self) -> Sign {
        if Zero::is_zero(self) {
            Sign::Zero
        } else if num_traits::Signed::is_negative(self) {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }
}

// ---------------------------------------------------------------------------
// BigInt (integer Bareiss)

impl Ring for BigInt {
    fn from_rational(r: &Rational) -> Self {
        assert!(r.is_integer(), "non-integral rational {r} used as integer");
        r.to_integer()
    }
}

impl ExactDiv for BigInt {
    fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = num_integer::Integer::div_rem(self, d);
        assert!(Zero::is_zero(&r), "inexact integer division");
        q
    }
}

impl Signed for BigInt {
    fn sgn(&self) -> Sign {
        match self.sign() {
            num_bigint::Sign::Minus => Sign::Negative,
            num_bigint::Sign::NoSign => Sign::Zero,
            num_bigint::Sign::Plus => Sign::Positive,
        }
    }
}

// ---------------------------------------------------------------------------
// f64, for numeric residual evaluation. `is_zero` is an exact comparison.

impl Ring for f64 {
    fn from_rational(r: &Rational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
}

impl ExactDiv for f64 {
    fn exact_div(&self, d: &Self) -> Self {
        self / d
    }
}

impl Field for f64 {
    fn inv(&self) -> Self {
        1.0 / self
    }
}
