//! Dense univariate polynomials, lowest degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed as _, Zero};

use super::interval::Interval;
use super::rational::{denominator_lcm, format_rational};
use super::ring::{ExactDiv, Field, Ring};
use super::Rational;

#[derive(Clone, Debug)]
pub struct UniPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Ring> UniPoly<F> {
    /// Builds from coefficients, lowest degree first; trailing zeros are
    /// stripped.
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![F::zero(), F::one()])
    }

    /// `c·x^k`.
    pub fn monomial(c: F, k: usize) -> Self {
        let mut v = vec![F::zero(); k];
        v.push(c);
        Self::new(v)
    }

    /// `x − r`.
    pub fn linear_root(r: F) -> Self {
        Self::new(vec![-r, F::one()])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| F::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Horner evaluation in another ring, lifting each coefficient.
    pub fn eval_in<R: Ring>(&self, x: &R, lift: impl Fn(&F) -> R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * x.clone() + lift(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * F::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn map<G: Ring>(&self, f: impl Fn(&F) -> G) -> UniPoly<G> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            acc * other.clone() + Self::constant(c.clone())
        })
    }
}

impl<F: Field> UniPoly<F> {
    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv_lc = d.lc().unwrap().inv();
        let mut r = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![F::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = r[k + dd].clone() * inv_lc.clone();
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].clone() - c.clone() * dc.clone();
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Quotient, panicking if the division leaves a remainder.
    pub fn exact_quo(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.inv()),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: `(g, s, t)` with `s·a + t·b = g`, `g` monic.
    pub fn xgcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::constant(F::one()), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::constant(F::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0 - q.clone() * s1.clone();
            s0 = std::mem::replace(&mut s1, s);
            let t = t0 - q * t1.clone();
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = lc.inv();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn square_free_part(&self) -> Self {
        assert!(!self.is_zero(), "square-free part of zero polynomial");
        if self.is_constant() {
            return Self::constant(F::one());
        }
        let g = Self::gcd(self, &self.derivative());
        self.exact_quo(&g).monic()
    }

    /// Yun's gcd cascade: `self = c · Π aᵢ^i` with the `aᵢ` monic, square-free
    /// and pairwise coprime. Only non-constant factors are returned.
    pub fn square_free_decomposition(&self) -> Vec<(Self, usize)> {
        assert!(
            !self.is_zero(),
            "square-free decomposition of zero polynomial"
        );
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = Self::gcd(&f, &df);
        let mut b = f.exact_quo(&a0);
        let c = df.exact_quo(&a0);
        let mut d = c - b.derivative();
        let mut i = 1;
        while !b.is_constant() {
            let a = Self::gcd(&b, &d);
            b = b.exact_quo(&a);
            let c = d.exact_quo(&a);
            d = c - b.derivative();
            if !a.is_constant() {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }
}

impl UniPoly<Rational> {
    /// Positive rational multiple with coprime integer coefficients.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = denominator_lcm(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        Self::new(
            ints.into_iter()
                .map(|c| Rational::new(c, g.clone()))
                .collect(),
        )
    }

    /// Primitive form with a positive leading coefficient.
    pub fn primitive_positive(&self) -> Self {
        let p = self.primitive();
        if p.lc().is_some_and(|c| c.is_negative()) {
            -p
        } else {
            p
        }
    }

    /// Integer coefficients of [`Self::primitive_positive`].
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        self.primitive_positive()
            .coeffs
            .iter()
            .map(|c| c.to_integer())
            .collect()
    }

    /// Interval Horner evaluation.
    pub fn eval_interval(&self, x: &Interval) -> Interval {
        self.coeffs
            .iter()
            .rev()
            .fold(Interval::point(Rational::zero()), |acc, c| {
                acc * x.clone() + Interval::point(c.clone())
            })
    }

    /// Strict upper bound on the modulus of every complex root (Cauchy).
    pub fn cauchy_bound(&self) -> Rational {
        let n = self.degree().expect("root bound of zero polynomial");
        let lc = self.coeffs[n].abs();
        let m = self.coeffs[..n]
            .iter()
            .map(|c| c.abs() / &lc)
            .max()
            .unwrap_or_else(Rational::zero);
        m + Rational::one()
    }

    /// Whether the two polynomials agree up to a nonzero rational factor.
    pub fn proportional(&self, other: &Self) -> bool {
        self.primitive_positive() == other.primitive_positive()
    }

    pub fn fmt_var(&self, var: &str) -> String {
        fmt_poly(self.coeffs.iter().map(format_rational).collect(), var)
    }
}

fn fmt_poly(coeffs: Vec<String>, var: &str) -> String {
    let mut parts = Vec::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c == "0" {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let term = if mono.is_empty() {
            c.clone()
        } else if c == "1" {
            mono
        } else if c == "-1" {
            format!("-{mono}")
        } else if c.contains('/') {
            format!("({c})*{mono}")
        } else {
            format!("{c}*{mono}")
        };
        parts.push(term);
    }
    if parts.is_empty() {
        return "0".into();
    }
    parts.join(" + ").replace("+ -", "- ")
}

impl<F: Ring + PartialEq> PartialEq for UniPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: Ring + fmt::Display> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            fmt_poly(self.coeffs.iter().map(|c| c.to_string()).collect(), "x")
        )
    }
}

impl<F: Ring> Add for UniPoly<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        for (i, c) in short.coeffs.into_iter().enumerate() {
            long.coeffs[i] = long.coeffs[i].clone() + c;
        }
        Self::new(long.coeffs)
    }
}

impl<F: Ring> Neg for UniPoly<F> {
    type Output = Self;
    fn neg(self) -> Self {
        UniPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<F: Ring> Sub for UniPoly<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Ring> Mul for UniPoly<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }
}

impl<F: Ring> Ring for UniPoly<F> {
    fn from_rational(r: &Rational) -> Self {
        UniPoly::constant(F::from_rational(r))
    }
}

impl<F: Ring> Zero for UniPoly<F> {
    fn zero() -> Self {
        UniPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<F: Ring> One for UniPoly<F> {
    fn one() -> Self {
        UniPoly::constant(F::one())
    }
}

impl<F: Field> ExactDiv for UniPoly<F> {
    fn exact_div(&self, d: &Self) -> Self {
        self.exact_quo(d)
    }
}

/// Shorthand for rational polynomials built from integer coefficients,
/// lowest degree first.
pub fn qpoly(coeffs: &[i64]) -> UniPoly<Rational> {
    UniPoly::from_i64(coeffs)
}
