//! A single exact real value in whichever representation is tightest.

use std::cmp::Ordering;
use std::fmt;

use serde_json::{json, Value};

use super::algebraic::{AlgebraicReal, Enclose};
use super::interval::Interval;
use super::poly::UniPoly;
use super::quadext::QuadExt;
use super::rational::{format_rational, to_decimal, to_f64};
use super::ring::{Sign, Signed};
use super::Rational;

#[derive(Clone, Debug)]
pub enum Number {
    Rational(Rational),
    Quad(QuadExt),
    Algebraic(AlgebraicReal),
}

impl Number {
    /// Collapses to the simplest representation: rational, then quadratic.
    pub fn simplify(self) -> Number {
        match self {
            Number::Quad(q) => match q.to_rational() {
                Some(r) => Number::Rational(r),
                None => Number::Quad(q),
            },
            Number::Algebraic(a) => {
                if let Some(r) = a.to_rational() {
                    Number::Rational(r)
                } else if let Some(q) = a.as_quadratic() {
                    Number::Quad(q)
                } else {
                    Number::Algebraic(a)
                }
            }
            r => r,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Number::Rational(r) => to_f64(r),
            Number::Quad(q) => q.to_f64(),
            Number::Algebraic(a) => a.to_f64(),
        }
    }

    pub fn to_rational(&self) -> Option<Rational> {
        match self {
            Number::Rational(r) => Some(r.clone()),
            Number::Quad(q) => q.to_rational(),
            Number::Algebraic(a) => a.to_rational(),
        }
    }

    pub fn as_quad(&self) -> Option<QuadExt> {
        match self {
            Number::Rational(r) => Some(QuadExt::rational(r.clone())),
            Number::Quad(q) => Some(q.clone()),
            Number::Algebraic(a) => a.as_quadratic(),
        }
    }

    /// Exact conversion to a root of a rational polynomial.
    pub fn to_algebraic(&self) -> AlgebraicReal {
        match self {
            Number::Rational(r) => AlgebraicReal::from_rational(r.clone()),
            Number::Quad(q) => {
                if let Some(r) = q.to_rational() {
                    return AlgebraicReal::from_rational(r);
                }
                // x² − 2a·x + N(q)
                let two_a = q.a() * Rational::from_integer(2.into());
                let p = UniPoly::new(vec![q.norm(), -two_a, Rational::from_integer(1.into())]);
                let qc = q.clone();
                AlgebraicReal::from_enclosure(&p, move |b| qc.enclosure(b))
                    .expect("quadratic root isolates")
            }
            Number::Algebraic(a) => a.clone(),
        }
    }

    pub fn sgn(&self) -> Sign {
        match self {
            Number::Rational(r) => r.sgn(),
            Number::Quad(q) => q.sgn(),
            Number::Algebraic(a) => a.sgn(),
        }
    }

    pub fn cmp_exact(&self, other: &Number) -> Ordering {
        match (self, other) {
            (Number::Rational(a), Number::Rational(b)) => a.cmp(b),
            _ => {
                if let (Some(a), Some(b)) = (self.as_quad(), other.as_quad()) {
                    if a.compatible(&b) {
                        return a.partial_cmp(&b).unwrap();
                    }
                }
                self.to_algebraic().cmp(&other.to_algebraic())
            }
        }
    }

    pub fn eq_exact(&self, other: &Number) -> bool {
        self.cmp_exact(other) == Ordering::Equal
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        match self {
            Number::Rational(r) => to_decimal(r, digits),
            Number::Quad(q) => {
                let bits = (digits as f64 * 3.33).ceil() as u32 + 16;
                to_decimal(&q.enclosure(bits).midpoint(), digits)
            }
            Number::Algebraic(a) => a.to_decimal(digits),
        }
    }

    /// JSON form: `"p/q"` for rationals, `{"a","b","d"}` for quadratic
    /// irrationals, `{"poly","interval","approx"}` otherwise.
    pub fn to_json(&self, digits: usize) -> Value {
        match self {
            Number::Rational(r) => Value::String(format_rational(r)),
            Number::Quad(q) => json!(q.to_json()),
            Number::Algebraic(a) => json!(a.to_json(digits)),
        }
    }
}

impl Enclose for Number {
    fn enclose(&self, bits: u32) -> Interval {
        match self {
            Number::Rational(r) => Interval::point(r.clone()),
            Number::Quad(q) => q.enclosure(bits),
            Number::Algebraic(a) => a.enclose(bits),
        }
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Rational(r) => write!(f, "{}", format_rational(r)),
            Number::Quad(q) => write!(f, "{q}"),
            Number::Algebraic(a) => write!(f, "{a}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn quad_round_trip() {
        let q = QuadExt::new(rat(9, 16), rat(1, 16), 57).unwrap();
        let a = Number::Quad(q.clone()).to_algebraic();
        assert_eq!(a.degree(), 2);
        assert_eq!(Number::Algebraic(a).simplify().as_quad().unwrap(), q);
    }

    #[test]
    fn mixed_comparison() {
        let a = Number::Quad(QuadExt::new(int(0), int(1), 2).unwrap());
        let b = Number::Rational(rat(3, 2));
        assert_eq!(a.cmp_exact(&b), Ordering::Less);
        let c = Number::Quad(QuadExt::new(int(0), int(1), 3).unwrap());
        assert_eq!(a.cmp_exact(&c), Ordering::Less);
        assert_eq!(
            Number::Rational(int(2)).to_json(5),
            Value::String("2".into())
        );
    }
}
