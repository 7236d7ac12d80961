//! Elements `p + q√w` over an ordered base ring with `w ≥ 0`.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::algebraic::Enclose;
use super::interval::Interval;
use super::ring::{Ring, Sign, Signed};
use super::Rational;

/// `p + q√w`. The radicand is shared by every element taking part in an
/// operation; constants carry none and adopt their partner's.
#[derive(Clone, Debug)]
pub struct RadicalExt<B> {
    p: B,
    q: B,
    w: Option<B>,
}

impl<B: Ring + Signed> RadicalExt<B> {
    pub fn new(p: B, q: B, w: B) -> Self {
        assert!(!w.sgn().eq(&Sign::Negative), "negative radicand");
        RadicalExt { p, q, w: Some(w) }
    }

    pub fn base(p: B) -> Self {
        RadicalExt {
            p,
            q: B::zero(),
            w: None,
        }
    }

    /// `σ√w` for `σ = ±1`.
    pub fn sqrt(w: B, sigma: i32) -> Self {
        Self::new(B::zero(), B::from_i64(sigma as i64), w)
    }

    pub fn p(&self) -> &B {
        &self.p
    }

    pub fn q(&self) -> &B {
        &self.q
    }

    pub fn w(&self) -> Option<&B> {
        self.w.as_ref()
    }

    fn join(a: &Option<B>, b: &Option<B>) -> Option<B> {
        a.clone().or_else(|| b.clone())
    }
}

/// Sign of `p + q√w`, decided from signs in the base ring.
pub fn radical_sign<B: Ring + Signed>(x: &RadicalExt<B>) -> Sign {
    let sp = x.p.sgn();
    let w = match &x.w {
        Some(w) if !w.sgn().is_zero() => w,
        _ => return sp,
    };
    let sq = x.q.sgn();
    if sq.is_zero() {
        return sp;
    }
    if sp.is_zero() || sp == sq {
        return sq;
    }
    let d = x.p.clone() * x.p.clone() - x.q.clone() * x.q.clone() * w.clone();
    match d.sgn() {
        Sign::Positive => sp,
        Sign::Negative => sq,
        Sign::Zero => Sign::Zero,
    }
}

impl<B: Ring + Signed> Add for RadicalExt<B> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        RadicalExt {
            w: Self::join(&self.w, &rhs.w),
            p: self.p + rhs.p,
            q: self.q + rhs.q,
        }
    }
}

impl<B: Ring + Signed> Sub for RadicalExt<B> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        RadicalExt {
            w: Self::join(&self.w, &rhs.w),
            p: self.p - rhs.p,
            q: self.q - rhs.q,
        }
    }
}

impl<B: Ring + Signed> Neg for RadicalExt<B> {
    type Output = Self;
    fn neg(self) -> Self {
        RadicalExt {
            p: -self.p,
            q: -self.q,
            w: self.w,
        }
    }
}

impl<B: Ring + Signed> Mul for RadicalExt<B> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let w = Self::join(&self.w, &rhs.w);
        let qq = self.q.clone() * rhs.q.clone();
        let p = match &w {
            Some(w) => self.p.clone() * rhs.p.clone() + qq * w.clone(),
            None => self.p.clone() * rhs.p.clone(),
        };
        let q = self.p * rhs.q + self.q * rhs.p;
        RadicalExt { p, q, w }
    }
}

impl<B: Ring + Signed> Ring for RadicalExt<B> {
    fn from_rational(r: &Rational) -> Self {
        Self::base(B::from_rational(r))
    }
}

impl<B: Ring + Signed> Zero for RadicalExt<B> {
    fn zero() -> Self {
        Self::base(B::zero())
    }
    fn is_zero(&self) -> bool {
        radical_sign(self).is_zero()
    }
}

impl<B: Ring + Signed> One for RadicalExt<B> {
    fn one() -> Self {
        Self::base(B::one())
    }
}

impl<B: Ring + Signed> Signed for RadicalExt<B> {
    fn sgn(&self) -> Sign {
        radical_sign(self)
    }
}

impl<B: Ring + Signed + Enclose> Enclose for RadicalExt<B> {
    fn enclose(&self, bits: u32) -> Interval {
        let p = self.p.enclose(bits + 4);
        match &self.w {
            Some(w) if !self.q.is_zero() => {
                let wi = w.enclose(2 * bits + 8);
                let wi = if wi.lo() < &Rational::from_integer(0.into()) {
                    Interval::new(
                        Rational::from_integer(0.into()),
                        wi.hi().clone().max(Rational::from_integer(0.into())),
                    )
                } else {
                    wi
                };
                (p + self.q.enclose(bits + 4) * wi.sqrt(bits + 8)).round_outward(bits + 2)
            }
            _ => p,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    type R = RadicalExt<Rational>;

    #[test]
    fn signs() {
        // 3 − √7 > 0, 2 − √7 < 0, 3 − √9 = 0
        assert_eq!(
            radical_sign(&R::new(int(3), int(-1), int(7))),
            Sign::Positive
        );
        assert_eq!(
            radical_sign(&R::new(int(2), int(-1), int(7))),
            Sign::Negative
        );
        assert_eq!(radical_sign(&R::new(int(3), int(-1), int(9))), Sign::Zero);
        assert_eq!(
            radical_sign(&R::new(int(-1), int(1), int(0))),
            Sign::Negative
        );
    }

    #[test]
    fn arithmetic() {
        let s = R::sqrt(int(2), 1);
        let sq = s.clone() * s.clone();
        assert!((sq - R::from_i64(2)).is_zero());
        let x = R::base(rat(1, 2)) + s;
        let e = x.enclose(40);
        let v = 0.5 + 2f64.sqrt();
        assert!(e.lo_f64() <= v && v <= e.hi_f64());
    }
}
