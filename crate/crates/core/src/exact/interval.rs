//! Closed intervals with rational endpoints and outward-conservative
//! arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed as _, Zero};

use super::rational::{format_rational, to_f64};
use super::ring::{Ring, Sign};
use super::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    /// Panics if `lo > hi`.
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval with lo > hi: [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }
    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Sign of every point of the interval, or `None` when it straddles zero
    /// (a point interval at zero returns `Some(Zero)`).
    pub fn sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Positive)
        } else if self.hi.is_negative() {
            Some(Sign::Negative)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Sign::Zero)
        } else {
            None
        }
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Strict ordering when the intervals are disjoint.
    pub fn compare(&self, other: &Interval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if other.hi < self.lo {
            Some(Ordering::Greater)
        } else if self.is_point() && other.is_point() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Widens the endpoints to the grid `2^-bits`, keeping representation size
    /// bounded across long computations.
    pub fn round_outward(&self, bits: u32) -> Interval {
        if self.is_point() && self.lo.denom().bits() <= bits as u64 {
            return self.clone();
        }
        let scale = Rational::from_integer(BigInt::one() << bits);
        let lo = (&self.lo * &scale).floor() / &scale;
        let hi = (&self.hi * &scale).ceil() / &scale;
        Interval { lo, hi }
    }

    pub fn square(&self) -> Interval {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        if self.contains_zero() {
            Interval {
                lo: Rational::zero(),
                hi: a.max(b),
            }
        } else if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    /// `1/self`; `None` when the interval contains zero.
    pub fn recip(&self) -> Option<Interval> {
        if self.contains_zero() {
            return None;
        }
        Some(Interval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    pub fn div(&self, rhs: &Interval) -> Option<Interval> {
        rhs.recip().map(|r| self.clone() * r)
    }

    /// Enclosure of `√x` over the interval, with endpoints on the `2^-bits`
    /// grid. Negative parts are clipped to zero. Returns an empty-safe result
    /// only for intervals with `hi ≥ 0`.
    pub fn sqrt(&self, bits: u32) -> Interval {
        assert!(!self.hi.is_negative(), "square root of negative interval");
        let lo = if self.lo.is_positive() {
            sqrt_floor(&self.lo, bits)
        } else {
            Rational::zero()
        };
        let hi = sqrt_ceil(&self.hi, bits);
        Interval { lo, hi }
    }

    pub fn pow(&self, e: u32) -> Interval {
        let mut acc = Interval::point(Rational::one());
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    pub fn lo_f64(&self) -> f64 {
        to_f64(&self.lo)
    }
    pub fn hi_f64(&self) -> f64 {
        to_f64(&self.hi)
    }
    pub fn width_f64(&self) -> f64 {
        to_f64(&self.width())
    }
    pub fn mid_f64(&self) -> f64 {
        to_f64(&self.midpoint())
    }
}

fn sqrt_floor(x: &Rational, bits: u32) -> Rational {
    // floor(√(x·4^bits)) / 2^bits
    let scaled = (x * Rational::from_integer(BigInt::one() << (2 * bits)))
        .floor()
        .to_integer();
    Rational::new(scaled.sqrt(), BigInt::one() << bits)
}

fn sqrt_ceil(x: &Rational, bits: u32) -> Rational {
    let scaled = (x * Rational::from_integer(BigInt::one() << (2 * bits)))
        .ceil()
        .to_integer();
    let r = scaled.sqrt();
    let r = if &r * &r == scaled { r } else { r + 1 };
    Rational::new(r, BigInt::one() << bits)
}

/// Interval evaluation of ring expressions. `is_zero` means the point zero.
impl Ring for Interval {
    fn from_rational(r: &Rational) -> Self {
        Interval::point(r.clone())
    }

    fn is_possibly_zero(&self) -> bool {
        self.contains_zero()
    }
}

impl Zero for Interval {
    fn zero() -> Self {
        Interval::point(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }
}

impl One for Interval {
    fn one() -> Self {
        Interval::point(Rational::one())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            format_rational(&self.lo),
            format_rational(&self.hi)
        )
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval {
            lo: self.lo + rhs.lo,
            hi: self.hi + rhs.hi,
        }
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        Interval {
            lo: self.lo - rhs.hi,
            hi: self.hi - rhs.lo,
        }
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        if self.is_point() && rhs.is_point() {
            return Interval::point(self.lo * rhs.lo);
        }
        let c = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn arithmetic_is_conservative() {
        let a = Interval::new(int(-1), int(2));
        let b = Interval::new(int(3), int(4));
        assert_eq!(a.clone() * b.clone(), Interval::new(int(-4), int(8)));
        assert_eq!(a.clone() - b.clone(), Interval::new(int(-5), int(-1)));
        assert_eq!(a.square(), Interval::new(int(0), int(4)));
        assert!(a.recip().is_none());
        assert_eq!(b.recip().unwrap(), Interval::new(rat(1, 4), rat(1, 3)));
    }

    #[test]
    fn sqrt_brackets() {
        let s = Interval::point(int(2)).sqrt(40);
        assert!(s.lo_f64() <= 2f64.sqrt() && 2f64.sqrt() <= s.hi_f64());
        assert!(s.width_f64() <= 2.0 / (1u64 << 40) as f64);
        assert_eq!(Interval::point(int(4)).sqrt(10), Interval::point(int(2)));
    }

    #[test]
    fn rounding_never_narrows() {
        let x = Interval::new(rat(1, 3), rat(2, 3));
        let r = x.round_outward(8);
        assert!(r.lo() <= x.lo() && r.hi() >= x.hi());
    }
}
