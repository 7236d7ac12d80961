//! Real algebraic numbers by isolating interval, and arithmetic in the field
//! they generate.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed as _, Zero};
use serde::{Deserialize, Serialize};

use super::interval::Interval;
use super::poly::UniPoly;
use super::quadext::QuadExt;
use super::rational::{format_rational, rational_sqrt, square_free_split, to_decimal, to_f64};
use super::ring::{ExactDiv, Field, Ring, Sign, Signed};
use super::sturm::SturmSeq;
use super::Rational;

/// Values that admit arbitrarily tight rational enclosures.
pub trait Enclose {
    /// Closed interval containing the value, roughly `2^-bits` wide.
    fn enclose(&self, bits: u32) -> Interval;
}

impl Enclose for Rational {
    fn enclose(&self, _bits: u32) -> Interval {
        Interval::point(self.clone())
    }
}

impl Enclose for QuadExt {
    fn enclose(&self, bits: u32) -> Interval {
        self.enclosure(bits)
    }
}

/// A real root of a square-free rational polynomial, pinned down by an
/// interval `(lo, hi]` containing no other root. Rational values carry a
/// linear polynomial and a point interval.
#[derive(Clone, Debug)]
pub struct AlgebraicReal {
    poly: UniPoly<Rational>,
    lo: Rational,
    hi: Rational,
}

fn sign_at(p: &UniPoly<Rational>, x: &Rational) -> Sign {
    p.eval(x).sgn()
}

impl AlgebraicReal {
    pub fn from_rational(r: Rational) -> Self {
        AlgebraicReal {
            poly: UniPoly::linear_root(r.clone()).primitive_positive(),
            lo: r.clone(),
            hi: r,
        }
    }

    /// Wraps an isolating interval of a square-free polynomial whose
    /// endpoints are not roots.
    fn isolated(poly: UniPoly<Rational>, lo: Rational, hi: Rational) -> Self {
        let mut a = AlgebraicReal {
            poly: poly.primitive_positive(),
            lo,
            hi,
        };
        if a.poly.degree() == Some(1) {
            let r = -a.poly.coeff(0) / a.poly.coeff(1);
            return Self::from_rational(r);
        }
        a.try_rational();
        a
    }

    /// Detects a rational root: with integer leading coefficient `L`, every
    /// rational root is a multiple of `1/L`, so once the interval is narrower
    /// than `1/L` only one candidate remains.
    fn try_rational(&mut self) {
        if self.is_rational() {
            return;
        }
        let l = Rational::from_integer(self.poly.lc().unwrap().to_integer().abs());
        while self.width() * &l >= Rational::one() {
            self.bisect();
            if self.is_rational() {
                return;
            }
        }
        let n = (&self.hi * &l).floor();
        let cand = n / &l;
        if cand > self.lo && self.poly.eval(&cand).is_zero() {
            *self = Self::from_rational(cand);
        }
    }

    /// All distinct real roots of `p` in increasing order, with
    /// multiplicities from the square-free decomposition.
    pub fn real_roots(p: &UniPoly<Rational>) -> Vec<(AlgebraicReal, usize)> {
        let mut out = Vec::new();
        for (factor, mult) in p.square_free_decomposition() {
            let isolated = isolate(&factor);
            let mut roots: Vec<AlgebraicReal> = isolated
                .into_iter()
                .map(|(lo, hi)| Self::isolated(factor.clone(), lo, hi))
                .collect();
            // Strip the rational roots from the defining polynomial of the
            // irrational ones.
            let mut reduced = factor.clone();
            for r in roots.iter().filter(|r| r.is_rational()) {
                reduced = reduced.exact_quo(&UniPoly::linear_root(r.lo.clone()));
            }
            if reduced.degree() != factor.degree() {
                for r in roots.iter_mut().filter(|r| !r.is_rational()) {
                    r.poly = reduced.primitive_positive();
                }
            }
            out.extend(roots.into_iter().map(|r| (r, mult)));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// The root of `p` inside an enclosure that is refined on request until it
    /// isolates exactly one root.
    pub fn from_enclosure(
        p: &UniPoly<Rational>,
        enclose: impl Fn(u32) -> Interval,
    ) -> Option<Self> {
        let sf = p.square_free_part();
        let seq = SturmSeq::rational(&sf);
        let mut bits = 32;
        while bits <= 4096 {
            let e = enclose(bits);
            let n = seq.count_closed(e.lo(), e.hi());
            if n == 0 {
                return None;
            }
            if n == 1 {
                if sf.eval(e.lo()).is_zero() {
                    return Some(Self::from_rational(e.lo().clone()));
                }
                if sf.eval(e.hi()).is_zero() {
                    return Some(Self::from_rational(e.hi().clone()));
                }
                return Some(Self::isolated(sf, e.lo().clone(), e.hi().clone()));
            }
            bits *= 2;
        }
        None
    }

    pub fn poly(&self) -> &UniPoly<Rational> {
        &self.poly
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

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    pub fn is_rational(&self) -> bool {
        self.lo == self.hi
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.lo.clone())
    }

    /// Halves the isolating interval; lands on the root exactly when the
    /// midpoint is a root.
    fn bisect(&mut self) {
        if self.is_rational() {
            return;
        }
        let mid = (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2));
        let sm = sign_at(&self.poly, &mid);
        if sm.is_zero() {
            *self = Self::from_rational(mid);
            return;
        }
        let sh = sign_at(&self.poly, &self.hi);
        if sm == sh {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    /// Narrows the interval to width at most `2^-bits`.
    pub fn refine(&mut self, bits: u32) {
        let target = Rational::new(BigInt::one(), BigInt::one() << bits);
        while !self.is_rational() && self.width() > target {
            self.bisect();
        }
    }

    pub fn refined(&self, bits: u32) -> Self {
        let mut c = self.clone();
        c.refine(bits);
        c
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone())
    }

    /// Exact sign of `q(self)`.
    pub fn sign_of_poly(&self, q: &UniPoly<Rational>) -> Sign {
        if let Some(r) = self.to_rational() {
            return q.eval(&r).sgn();
        }
        if q.is_zero() {
            return Sign::Zero;
        }
        let q = q.rem(&self.poly);
        if q.is_constant() {
            return q.coeff(0).sgn();
        }
        let g = UniPoly::gcd(&self.poly, &q);
        if !g.is_constant() && sign_at(&g, &self.lo) != sign_at(&g, &self.hi) {
            return Sign::Zero;
        }
        let mut a = self.clone();
        loop {
            if let Some(s) = q.eval_interval(&a.interval()).sign() {
                return s;
            }
            a.bisect();
            if let Some(r) = a.to_rational() {
                return q.eval(&r).sgn();
            }
        }
    }

    pub fn sgn(&self) -> Sign {
        self.sign_of_poly(&UniPoly::x())
    }

    /// Exact comparison.
    pub fn cmp(&self, other: &Self) -> Ordering {
        match (self.to_rational(), other.to_rational()) {
            (Some(a), Some(b)) => a.cmp(&b),
            (Some(a), None) => other
                .sign_of_poly(&UniPoly::linear_root(a))
                .flip()
                .to_ordering(),
            (None, Some(b)) => self.sign_of_poly(&UniPoly::linear_root(b)).to_ordering(),
            (None, None) => {
                let mut a = self.clone();
                let mut b = other.clone();
                if a.sign_of_poly(&b.poly).is_zero() {
                    // `a` is some root of b's polynomial; equal iff it lies in b's interval.
                    loop {
                        if a.hi <= b.lo || a.lo >= b.hi {
                            break;
                        }
                        if a.lo >= b.lo && a.hi <= b.hi {
                            return Ordering::Equal;
                        }
                        a.bisect();
                    }
                }
                loop {
                    if let (Some(x), Some(y)) = (a.to_rational(), b.to_rational()) {
                        return x.cmp(&y);
                    }
                    if a.hi <= b.lo {
                        return Ordering::Less;
                    }
                    if b.hi <= a.lo {
                        return Ordering::Greater;
                    }
                    if a.width() >= b.width() {
                        a.bisect();
                    } else {
                        b.bisect();
                    }
                }
            }
        }
    }

    pub fn eq_exact(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }

    /// Exact value in a real quadratic field, for degree-two roots.
    pub fn as_quadratic(&self) -> Option<QuadExt> {
        if let Some(r) = self.to_rational() {
            return Some(QuadExt::rational(r));
        }
        if self.degree() != 2 {
            return None;
        }
        let (c, b, a) = (self.poly.coeff(0), self.poly.coeff(1), self.poly.coeff(2));
        let disc = &b * &b - Rational::from_integer(BigInt::from(4)) * &a * &c;
        let two_a = Rational::from_integer(BigInt::from(2)) * &a;
        let root = QuadExt::sqrt_rational(&disc).ok()?;
        let base = QuadExt::rational(-&b / &two_a);
        let scale = QuadExt::rational(two_a.recip());
        for cand in [
            base.clone() + root.clone() * scale.clone(),
            base - root * scale,
        ] {
            let lo = QuadExt::rational(self.lo.clone());
            let hi = QuadExt::rational(self.hi.clone());
            if cand > lo && cand <= hi {
                return Some(cand);
            }
        }
        None
    }

    pub fn to_f64(&self) -> f64 {
        match self.to_rational() {
            Some(r) => to_f64(&r),
            None => to_f64(&self.refined(64).interval().midpoint()),
        }
    }

    /// Decimal approximation with `digits` places.
    pub fn to_decimal(&self, digits: usize) -> String {
        let bits = (digits as f64 * 3.33).ceil() as u32 + 16;
        match self.to_rational() {
            Some(r) => to_decimal(&r, digits),
            None => to_decimal(&self.refined(bits).interval().midpoint(), digits),
        }
    }

    pub fn to_json(&self, digits: usize) -> AlgebraicJson {
        let r = self.refined(64);
        AlgebraicJson {
            poly: self.poly.coeffs().iter().map(format_rational).collect(),
            interval: [format_rational(&r.lo), format_rational(&r.hi)],
            approx: self.to_decimal(digits),
        }
    }
}

impl Sign {
    pub fn to_ordering(self) -> Ordering {
        match self {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

impl Enclose for AlgebraicReal {
    fn enclose(&self, bits: u32) -> Interval {
        self.refined(bits).interval()
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_rational() {
            Some(r) => write!(f, "{}", format_rational(&r)),
            None => write!(
                f,
                "root of {} in ({}, {}]",
                self.poly.fmt_var("x"),
                format_rational(&self.lo),
                format_rational(&self.hi)
            ),
        }
    }
}

/// JSON form of an algebraic number: defining polynomial (coefficients lowest
/// degree first), isolating interval and a decimal approximation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraicJson {
    pub poly: Vec<String>,
    pub interval: [String; 2],
    pub approx: String,
}

/// Isolating intervals `(lo, hi]` for the real roots of a square-free
/// polynomial, with no endpoint a root.
fn isolate(p: &UniPoly<Rational>) -> Vec<(Rational, Rational)> {
    let seq = SturmSeq::rational(p);
    let b = p.cauchy_bound().ceil();
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((a, b)) = stack.pop() {
        match seq.count_half_open(&a, &b) {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                let mid = split_point(p, &a, &b);
                stack.push((a, mid.clone()));
                stack.push((mid, b));
            }
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

fn split_point(p: &UniPoly<Rational>, a: &Rational, b: &Rational) -> Rational {
    let w = b - a;
    let mut mid = (a + b) / Rational::from_integer(BigInt::from(2));
    let mut k = 3u32;
    while p.eval(&mid).is_zero() {
        mid = (a + b) / Rational::from_integer(BigInt::from(2))
            + &w / Rational::from_integer(BigInt::one() << k);
        k += 1;
    }
    mid
}

// ---------------------------------------------------------------------------

/// Element `r(α)` of `Q(α)` for an algebraic real `α`, stored as a polynomial
/// reduced modulo the defining polynomial of `α`.
#[derive(Clone, Debug)]
pub struct AlgElem {
    repr: UniPoly<Rational>,
    ctx: Option<Arc<AlgebraicReal>>,
}

impl AlgElem {
    pub fn new(ctx: &Arc<AlgebraicReal>, repr: UniPoly<Rational>) -> Self {
        let repr = if ctx.degree() > 0 {
            repr.rem(ctx.poly())
        } else {
            repr
        };
        AlgElem {
            repr,
            ctx: Some(ctx.clone()),
        }
    }

    /// `α` itself.
    pub fn generator(ctx: &Arc<AlgebraicReal>) -> Self {
        Self::new(ctx, UniPoly::x())
    }

    pub fn rational(r: Rational) -> Self {
        AlgElem {
            repr: UniPoly::constant(r),
            ctx: None,
        }
    }

    pub fn repr(&self) -> &UniPoly<Rational> {
        &self.repr
    }

    pub fn context(&self) -> Option<&Arc<AlgebraicReal>> {
        self.ctx.as_ref()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.repr.is_constant() {
            return Some(self.repr.coeff(0));
        }
        let ctx = self.ctx.as_ref()?;
        ctx.to_rational().map(|r| self.repr.eval(&r))
    }

    fn join(
        a: &Option<Arc<AlgebraicReal>>,
        b: &Option<Arc<AlgebraicReal>>,
    ) -> Option<Arc<AlgebraicReal>> {
        match (a, b) {
            (Some(x), Some(y)) => {
                assert!(
                    Arc::ptr_eq(x, y) || x.poly() == y.poly(),
                    "AlgElem context mismatch"
                );
                Some(x.clone())
            }
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        }
    }

    fn build(repr: UniPoly<Rational>, ctx: Option<Arc<AlgebraicReal>>) -> Self {
        match ctx {
            Some(c) => Self::new(&c, repr),
            None => AlgElem { repr, ctx: None },
        }
    }
}

impl Add for AlgElem {
    type Output = AlgElem;
    fn add(self, rhs: AlgElem) -> AlgElem {
        let ctx = Self::join(&self.ctx, &rhs.ctx);
        Self::build(self.repr + rhs.repr, ctx)
    }
}

impl Sub for AlgElem {
    type Output = AlgElem;
    fn sub(self, rhs: AlgElem) -> AlgElem {
        let ctx = Self::join(&self.ctx, &rhs.ctx);
        Self::build(self.repr - rhs.repr, ctx)
    }
}

impl Mul for AlgElem {
    type Output = AlgElem;
    fn mul(self, rhs: AlgElem) -> AlgElem {
        let ctx = Self::join(&self.ctx, &rhs.ctx);
        Self::build(self.repr * rhs.repr, ctx)
    }
}

impl Neg for AlgElem {
    type Output = AlgElem;
    fn neg(self) -> AlgElem {
        AlgElem {
            repr: -self.repr,
            ctx: self.ctx,
        }
    }
}

impl Ring for AlgElem {
    fn from_rational(r: &Rational) -> Self {
        Self::rational(r.clone())
    }
}

impl Zero for AlgElem {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.sgn().is_zero()
    }
}

impl One for AlgElem {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}

impl ExactDiv for AlgElem {
    fn exact_div(&self, d: &Self) -> Self {
        self.clone() * d.inv()
    }
}

impl Field for AlgElem {
    /// The defining polynomial need not be irreducible, so a common factor
    /// with the modulus is split off first; the cofactor still vanishes at
    /// `α` and the inverse modulo it is valid at `α`.
    fn inv(&self) -> Self {
        if self.repr.is_constant() {
            let c = self.repr.coeff(0);
            assert!(!c.is_zero(), "inverse of zero");
            return AlgElem {
                repr: UniPoly::constant(c.recip()),
                ctx: self.ctx.clone(),
            };
        }
        let ctx = self
            .ctx
            .as_ref()
            .expect("non-constant element without context");
        assert!(!self.is_zero(), "inverse of zero");
        let mut modulus = ctx.poly().clone();
        loop {
            let (g, s, _) = UniPoly::xgcd(&self.repr, &modulus);
            if g.is_constant() {
                return Self::new(ctx, s);
            }
            modulus = if ctx.sign_of_poly(&g).is_zero() {
                g
            } else {
                modulus.exact_quo(&g)
            };
        }
    }
}

impl Signed for AlgElem {
    fn sgn(&self) -> Sign {
        match &self.ctx {
            None => self.repr.coeff(0).sgn(),
            Some(c) => c.sign_of_poly(&self.repr),
        }
    }
}

impl Enclose for AlgElem {
    fn enclose(&self, bits: u32) -> Interval {
        if let Some(r) = self.to_rational() {
            return Interval::point(r);
        }
        let ctx = self.ctx.as_ref().unwrap();
        // the interval evaluation loses a few bits per coefficient
        let extra = 8 + 4 * self.repr.degree().unwrap_or(0) as u32;
        self.repr
            .eval_interval(&ctx.enclose(bits + extra))
            .round_outward(bits + 2)
    }
}

/// Square root of a non-negative rational as an [`AlgebraicReal`].
pub fn sqrt_algebraic(r: &Rational) -> AlgebraicReal {
    assert!(!r.is_negative(), "square root of negative rational");
    if let Some(s) = rational_sqrt(r) {
        return AlgebraicReal::from_rational(s);
    }
    let (_, d) = square_free_split(&(r.numer() * r.denom()));
    debug_assert!(d > BigInt::one());
    let p = UniPoly::new(vec![-r.clone(), Rational::zero(), Rational::one()]);
    let r2 = r.clone();
    AlgebraicReal::from_enclosure(&p, move |bits| Interval::point(r2.clone()).sqrt(bits))
        .expect("positive square root is a simple root")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::qpoly;
    use crate::exact::rational::{int, rat};

    #[test]
    fn roots_with_multiplicity() {
        // ρ(3ρ−1)²
        let p = qpoly(&[0, 1, -6, 9]);
        let roots = AlgebraicReal::real_roots(&p);
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].0.to_rational(), Some(int(0)));
        assert_eq!(roots[0].1, 1);
        assert_eq!(roots[1].0.to_rational(), Some(rat(1, 3)));
        assert_eq!(roots[1].1, 2);
    }

    #[test]
    fn irrational_roots_sorted_and_reduced() {
        // (x² − 2)(2x − 1)
        let p = qpoly(&[-2, 0, 1]) * qpoly(&[-1, 2]);
        let roots = AlgebraicReal::real_roots(&p);
        assert_eq!(roots.len(), 3);
        assert!((roots[0].0.to_f64() + 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(roots[1].0.to_rational(), Some(rat(1, 2)));
        assert_eq!(roots[2].0.poly(), &qpoly(&[-2, 0, 1]));
        let q = roots[2].0.as_quadratic().unwrap();
        assert_eq!(q, QuadExt::new(int(0), int(1), 2).unwrap());
    }

    #[test]
    fn exact_sign_detects_zero() {
        let r = sqrt_algebraic(&int(2));
        assert_eq!(r.sign_of_poly(&qpoly(&[-2, 0, 1])), Sign::Zero);
        // x⁴ − 4 = (x²−2)(x²+2) vanishes at √2
        assert_eq!(r.sign_of_poly(&qpoly(&[-4, 0, 0, 0, 1])), Sign::Zero);
        assert_eq!(r.sign_of_poly(&qpoly(&[-3, 2])), Sign::Negative); // 2√2 − 3 < 0
        assert_eq!(r.sign_of_poly(&qpoly(&[-2, 1])), Sign::Negative);
    }

    #[test]
    fn comparisons() {
        let a = sqrt_algebraic(&int(2));
        let roots = AlgebraicReal::real_roots(&qpoly(&[-4, 0, 0, 0, 1]));
        assert_eq!(roots.len(), 2);
        assert!(roots[1].0.eq_exact(&a));
        assert_eq!(roots[0].0.cmp(&a), Ordering::Less);
        assert_eq!(
            a.cmp(&AlgebraicReal::from_rational(rat(3, 2))),
            Ordering::Less
        );
    }

    #[test]
    fn field_arithmetic() {
        let a = Arc::new(sqrt_algebraic(&int(2)));
        let x = AlgElem::generator(&a);
        let y = x.clone() + AlgElem::rational(int(1));
        let inv = y.inv();
        assert!((y.clone() * inv.clone() - AlgElem::one()).is_zero());
        // 1/(1+√2) = √2 − 1
        assert!((inv - (x.clone() - AlgElem::one())).is_zero());
        assert_eq!((x.clone() * x).to_rational(), Some(int(2)));
    }

    #[test]
    fn inverse_with_reducible_modulus() {
        // α = √2 as a root of (x²−2)(x²−3); element x²−3 is nonzero at α
        let p = qpoly(&[-2, 0, 1]) * qpoly(&[-3, 0, 1]);
        let alpha = AlgebraicReal::from_enclosure(&p, |b| Interval::point(int(2)).sqrt(b)).unwrap();
        let a = Arc::new(alpha);
        let e = AlgElem::new(&a, qpoly(&[-3, 0, 1]));
        let prod = e.clone() * e.inv();
        assert!((prod - AlgElem::one()).is_zero());
    }

    #[test]
    fn decimals_and_json() {
        let a = sqrt_algebraic(&int(2));
        assert_eq!(a.to_decimal(10), "1.4142135624");
        let j = a.to_json(5);
        assert_eq!(j.poly, vec!["-2", "0", "1"]);
        assert_eq!(j.approx, "1.41421");
    }
}
