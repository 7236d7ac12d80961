//! Elements `a + b√d` of a real quadratic field.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed as _, Zero};
use serde::{Deserialize, Serialize};

use super::interval::Interval;
use super::rational::{format_rational, parse_rational, square_free_split};
use super::ring::{ExactDiv, Field, Ring, Sign, Signed};
use super::Rational;
use crate::error::Error;

/// `a + b√d` with `d` a square-free positive integer.
///
/// Values with `b = 0` are rational and combine with any radicand. Combining
/// two irrational values with different radicands panics.
#[derive(Clone, Debug)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: u64,
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, d: u64) -> Result<Self, Error> {
        if d == 0 {
            return Err(Error::Domain("radicand must be positive".into()));
        }
        let (k, sf) = square_free_split(&BigInt::from(d));
        if !k.is_one() {
            return Err(Error::Domain(format!("radicand {d} is not square-free")));
        }
        let _ = sf;
        Ok(Self::normalized(a, b, d))
    }

    fn normalized(a: Rational, b: Rational, d: u64) -> Self {
        if d == 1 {
            QuadExt {
                a: a + b,
                b: Rational::zero(),
                d: 1,
            }
        } else if b.is_zero() {
            QuadExt { a, b, d: 1 }
        } else {
            QuadExt { a, b, d }
        }
    }

    pub fn rational(a: Rational) -> Self {
        QuadExt {
            a,
            b: Rational::zero(),
            d: 1,
        }
    }

    /// `√r` for a non-negative rational `r`, written over its square-free
    /// radicand.
    pub fn sqrt_rational(r: &Rational) -> Result<Self, Error> {
        if r.is_negative() {
            return Err(Error::Domain(format!("square root of negative {r}")));
        }
        if r.is_zero() {
            return Ok(Self::rational(Rational::zero()));
        }
        // √(p/q) = √(pq)/q
        let pq = r.numer() * r.denom();
        let (k, d) = square_free_split(&pq);
        let coeff = Rational::new(k, r.denom().clone());
        let d: u64 = d
            .try_into()
            .map_err(|_| Error::Domain("radicand exceeds 64 bits".into()))?;
        Ok(Self::normalized(Rational::zero(), coeff, d))
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }
    pub fn b(&self) -> &Rational {
        &self.b
    }
    /// The radicand; `1` for rational values.
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    pub fn conjugate(&self) -> Self {
        QuadExt {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// `a² − b²d`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(BigInt::from(self.d))
    }

    fn radicand_with(&self, other: &Self) -> u64 {
        match (self.b.is_zero(), other.b.is_zero()) {
            (true, _) => other.d,
            (_, true) => self.d,
            _ => {
                assert_eq!(
                    self.d, other.d,
                    "radicand mismatch: √{} vs √{}",
                    self.d, other.d
                );
                self.d
            }
        }
    }

    pub fn compatible(&self, other: &Self) -> bool {
        self.b.is_zero() || other.b.is_zero() || self.d == other.d
    }

    /// Rational enclosure of the value with width at most `2^-bits`
    /// (roughly; the radical is bracketed at that precision).
    pub fn enclosure(&self, bits: u32) -> Interval {
        if self.b.is_zero() {
            return Interval::point(self.a.clone());
        }
        let root = Interval::point(Rational::from_integer(BigInt::from(self.d))).sqrt(bits + 8);
        Interval::point(self.a.clone()) + Interval::point(self.b.clone()) * root
    }

    pub fn to_f64(&self) -> f64 {
        super::rational::to_f64(&self.a) + super::rational::to_f64(&self.b) * (self.d as f64).sqrt()
    }

    /// JSON form `{"a":"p/q","b":"p/q","d":n}`.
    pub fn to_json(&self) -> QuadExtJson {
        QuadExtJson {
            a: format_rational(&self.a),
            b: format_rational(&self.b),
            d: self.d,
        }
    }

    pub fn from_json(j: &QuadExtJson) -> Result<Self, Error> {
        QuadExt::new(parse_rational(&j.a)?, parse_rational(&j.b)?, j.d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadExtJson {
    pub a: String,
    pub b: String,
    pub d: u64,
}

/// Sign of `a + b√d`, decided by rational comparisons only.
pub fn qext_sign(x: &QuadExt) -> Sign {
    let sa = x.a.sgn();
    let sb = x.b.sgn();
    if sb.is_zero() {
        return sa;
    }
    if sa.is_zero() || sa == sb {
        return sb;
    }
    // opposite signs: compare a² with b²d
    let lhs = &x.a * &x.a;
    let rhs = &x.b * &x.b * Rational::from_integer(BigInt::from(x.d));
    match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => sa,
        std::cmp::Ordering::Less => sb,
        std::cmp::Ordering::Equal => Sign::Zero, // unreachable for square-free d > 1
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        if !self.compatible(other) {
            return None;
        }
        Some(match qext_sign(&(self.clone() - other.clone())) {
            Sign::Negative => std::cmp::Ordering::Less,
            Sign::Zero => std::cmp::Ordering::Equal,
            Sign::Positive => std::cmp::Ordering::Greater,
        })
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", format_rational(&self.a))
        } else if self.a.is_zero() {
            write!(f, "({})*sqrt({})", format_rational(&self.b), self.d)
        } else {
            write!(
                f,
                "{} + ({})*sqrt({})",
                format_rational(&self.a),
                format_rational(&self.b),
                self.d
            )
        }
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        let d = self.radicand_with(&rhs);
        QuadExt::normalized(self.a + rhs.a, self.b + rhs.b, d)
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: QuadExt) -> QuadExt {
        let d = self.radicand_with(&rhs);
        QuadExt::normalized(self.a - rhs.a, self.b - rhs.b, d)
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        let d = self.radicand_with(&rhs);
        let dd = Rational::from_integer(BigInt::from(d));
        let a = &self.a * &rhs.a + &self.b * &rhs.b * dd;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QuadExt::normalized(a, b, d)
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Div for QuadExt {
    type Output = QuadExt;
    fn div(self, rhs: QuadExt) -> QuadExt {
        self * rhs.inv()
    }
}

impl Ring for QuadExt {
    fn from_rational(r: &Rational) -> Self {
        QuadExt::rational(r.clone())
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt::rational(Rational::one())
    }
}

impl ExactDiv for QuadExt {
    fn exact_div(&self, d: &Self) -> Self {
        self.clone() * d.inv()
    }
}

impl Field for QuadExt {
    fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "inverse of zero in Q(√{})", self.d);
        QuadExt::normalized(&self.a / &n, -(&self.b / &n), self.d)
    }
}

impl Signed for QuadExt {
    fn sgn(&self) -> Sign {
        qext_sign(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn q(a: Rational, b: Rational, d: u64) -> QuadExt {
        QuadExt::new(a, b, d).unwrap()
    }

    #[test]
    fn sign_examples() {
        assert_eq!(qext_sign(&q(rat(135, 98), rat(19, 98), 57)), Sign::Positive);
        assert_eq!(qext_sign(&q(int(-5), int(1), 7)), Sign::Negative);
        assert_eq!(qext_sign(&q(int(0), int(0), 57)), Sign::Zero);
        assert_eq!(qext_sign(&q(int(3), int(-1), 7)), Sign::Positive);
        assert_eq!(qext_sign(&q(int(2), int(-1), 7)), Sign::Negative);
    }

    #[test]
    fn rejects_non_square_free() {
        assert!(QuadExt::new(int(1), int(1), 12).is_err());
        assert!(QuadExt::new(int(1), int(1), 0).is_err());
    }

    #[test]
    fn sqrt_rational_normalizes() {
        let s = QuadExt::sqrt_rational(&rat(3, 4)).unwrap();
        assert_eq!(s.d(), 3);
        assert_eq!(s.b(), &rat(1, 2));
        assert_eq!(s.clone() * s, QuadExt::rational(rat(3, 4)));
        assert_eq!(
            QuadExt::sqrt_rational(&rat(9, 4)).unwrap(),
            QuadExt::rational(rat(3, 2))
        );
        // √(1/24) = √6/12
        let t = QuadExt::sqrt_rational(&rat(1, 24)).unwrap();
        assert_eq!((t.d(), t.b().clone()), (6, rat(1, 12)));
    }

    #[test]
    fn field_ops() {
        let x = q(int(5), int(1), 7);
        let y = x.inv();
        assert_eq!(x.clone() * y, QuadExt::one());
        assert_eq!((x.clone() / x.clone()), QuadExt::one());
        assert!(x > q(int(7), int(0), 1));
        assert!((x.to_f64() - (5.0 + 7f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    #[should_panic(expected = "radicand mismatch")]
    fn mismatched_radicands_panic() {
        let _ = q(int(0), int(1), 2) + q(int(0), int(1), 3);
    }

    #[test]
    fn enclosure_contains_value() {
        let x = q(rat(135, 98), rat(19, 98), 57);
        let e = x.enclosure(60);
        let v = x.to_f64();
        assert!(e.lo_f64() <= v + 1e-15 && v - 1e-15 <= e.hi_f64());
        assert!(e.width_f64() < 1e-15);
    }

    #[test]
    fn json_round_trip() {
        let x = q(rat(135, 98), rat(19, 98), 57);
        let j = x.to_json();
        assert_eq!(
            j,
            QuadExtJson {
                a: "135/98".into(),
                b: "19/98".into(),
                d: 57
            }
        );
        assert_eq!(QuadExt::from_json(&j).unwrap(), x);
    }
}
