//! Sturm sequences and real-root counting.

use super::poly::UniPoly;
use super::ring::{Field, Sign, Signed};
use super::Rational;

/// Number of sign changes in `signs`, zeros dropped.
pub fn sign_variations(signs: &[Sign]) -> usize {
    let mut last = None;
    let mut v = 0;
    for &s in signs {
        if s.is_zero() {
            continue;
        }
        if last.is_some_and(|l| l != s) {
            v += 1;
        }
        last = Some(s);
    }
    v
}

/// The chain `p₀ = p`, `p₁ = p'`, `pₖ₊₁ = −rem(pₖ₋₁, pₖ)`.
///
/// When `p` has repeated roots the last element is their gcd; counting then
/// runs on the square-free part so the counts stay correct at multiple roots.
#[derive(Clone, Debug)]
pub struct SturmSeq<F> {
    chain: Vec<UniPoly<F>>,
    reduced: Option<Box<SturmSeq<F>>>,
}

impl<F: Field + Signed> SturmSeq<F> {
    /// Chain without normalization.
    pub fn new(p: &UniPoly<F>) -> Self {
        Self::build(p, |q| q)
    }

    fn build(p: &UniPoly<F>, norm: impl Fn(UniPoly<F>) -> UniPoly<F> + Copy) -> Self {
        assert!(!p.is_zero(), "Sturm sequence of zero polynomial");
        let mut chain = vec![norm(p.clone())];
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(norm(d));
            loop {
                let n = chain.len();
                let r = chain[n - 2].rem(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(norm(-r));
            }
        }
        let reduced = if chain.last().unwrap().is_constant() {
            None
        } else {
            Some(Box::new(Self::build(&p.square_free_part(), norm)))
        };
        SturmSeq { chain, reduced }
    }

    pub fn chain(&self) -> &[UniPoly<F>] {
        &self.chain
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn signs_at(&self, x: &F) -> Vec<Sign> {
        self.chain.iter().map(|p| p.eval(x).sgn()).collect()
    }

    /// Signs of the chain as `x → +∞`.
    pub fn signs_at_pos_inf(&self) -> Vec<Sign> {
        self.chain.iter().map(|p| p.lc().unwrap().sgn()).collect()
    }

    /// Signs of the chain as `x → −∞`.
    pub fn signs_at_neg_inf(&self) -> Vec<Sign> {
        self.chain
            .iter()
            .map(|p| {
                let s = p.lc().unwrap().sgn();
                if p.degree().unwrap() % 2 == 1 {
                    s.flip()
                } else {
                    s
                }
            })
            .collect()
    }

    fn counter(&self) -> &SturmSeq<F> {
        self.reduced.as_deref().unwrap_or(self)
    }

    pub fn variations_at(&self, x: &F) -> usize {
        sign_variations(&self.counter().signs_at(x))
    }

    /// Distinct roots in `(a, b]`.
    pub fn count_half_open(&self, a: &F, b: &F) -> usize {
        let c = self.counter();
        let va = sign_variations(&c.signs_at(a));
        let vb = sign_variations(&c.signs_at(b));
        va.saturating_sub(vb)
    }

    /// Distinct roots in `(a, b)`.
    pub fn count_open(&self, a: &F, b: &F) -> usize {
        let n = self.count_half_open(a, b);
        if self.chain[0].eval(b).is_zero() {
            n.saturating_sub(1)
        } else {
            n
        }
    }

    /// Distinct roots in `[a, b]`.
    pub fn count_closed(&self, a: &F, b: &F) -> usize {
        let n = self.count_half_open(a, b);
        if self.chain[0].eval(a).is_zero() {
            n + 1
        } else {
            n
        }
    }

    /// Distinct real roots.
    pub fn count_real(&self) -> usize {
        let c = self.counter();
        sign_variations(&c.signs_at_neg_inf())
            .saturating_sub(sign_variations(&c.signs_at_pos_inf()))
    }
}

impl SturmSeq<Rational> {
    /// Chain with every element scaled to a primitive integer polynomial by a
    /// positive factor, which leaves all signs unchanged.
    pub fn rational(p: &UniPoly<Rational>) -> Self {
        Self::build(p, |q| q.primitive())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::qpoly;
    use crate::exact::rational::{int, rat};

    #[test]
    fn variations_skip_zeros() {
        use Sign::*;
        assert_eq!(
            sign_variations(&[Positive, Zero, Negative, Negative, Positive]),
            2
        );
        assert_eq!(sign_variations(&[Zero, Zero]), 0);
    }

    #[test]
    fn counts_simple_roots() {
        // (x−1)(x−2)(x−3)
        let p = qpoly(&[-6, 11, -6, 1]);
        let s = SturmSeq::rational(&p);
        assert_eq!(s.count_real(), 3);
        assert_eq!(s.count_half_open(&int(0), &int(2)), 2);
        assert_eq!(s.count_open(&int(0), &int(2)), 1);
        assert_eq!(s.count_closed(&int(1), &int(3)), 3);
        assert_eq!(s.count_half_open(&rat(3, 2), &rat(5, 2)), 1);
    }

    #[test]
    fn counts_multiple_roots_once() {
        // (x−1)²(x+1)
        let p = qpoly(&[1, -1, -1, 1]);
        let s = SturmSeq::rational(&p);
        assert_eq!(s.count_real(), 2);
        assert_eq!(s.count_half_open(&int(0), &int(1)), 1);
        assert_eq!(s.count_open(&int(0), &int(1)), 0);
        assert_eq!(s.count_half_open(&int(-2), &int(2)), 2);
    }

    #[test]
    fn no_real_roots() {
        let s = SturmSeq::rational(&qpoly(&[1, 0, 1]));
        assert_eq!(s.count_real(), 0);
    }
}
