//! Sylvester resultants and discriminants.

use super::matrix::{det_bareiss, Matrix};
use super::poly::UniPoly;
use super::ring::{ExactDiv, Field, Ring};
use super::Rational;

/// Sylvester matrix of `p` (degree m) and `q` (degree n): n shifted rows of
/// `p` on top, then m shifted rows of `q`, coefficients highest degree first.
pub fn sylvester<R: Ring>(p: &UniPoly<R>, q: &UniPoly<R>) -> Matrix<R> {
    let m = p.degree().expect("resultant of zero polynomial");
    let n = q.degree().expect("resultant of zero polynomial");
    let size = m + n;
    Matrix::from_fn(size, |i, j| {
        let (poly, deg, shift) = if i < n { (p, m, i) } else { (q, n, i - n) };
        if j < shift || j > shift + deg {
            R::zero()
        } else {
            poly.coeff(deg - (j - shift))
        }
    })
}

/// `res(p, q) = det sylvester(p, q)`; e.g. `res(x − 1, x + 1) = 2`.
pub fn resultant<R: ExactDiv>(p: &UniPoly<R>, q: &UniPoly<R>) -> R {
    det_bareiss(&sylvester(p, q))
}

/// `disc(p) = (−1)^{n(n−1)/2} · res(p, p') / lc(p)`.
pub fn discriminant<F: Field>(p: &UniPoly<F>) -> F {
    let n = p.degree().expect("discriminant of zero polynomial");
    assert!(n >= 1, "discriminant of a constant");
    let r = resultant(p, &p.derivative());
    let r = r.div(p.lc().unwrap());
    if (n * (n - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

/// Bivariate polynomial: outer variable `t`, coefficients in `Q[x]`.
pub type BiPoly = UniPoly<UniPoly<Rational>>;

/// Eliminates the outer variable: `res_t(m(t), h(t, x)) ∈ Q[x]`.
pub fn eliminate(m: &UniPoly<Rational>, h: &BiPoly) -> UniPoly<Rational> {
    let lifted: BiPoly = m.map(|c| UniPoly::constant(c.clone()));
    resultant(&lifted, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::qpoly;
    use crate::exact::rational::int;

    #[test]
    fn sign_convention() {
        assert_eq!(resultant(&qpoly(&[-1, 1]), &qpoly(&[1, 1])), int(2));
        assert_eq!(resultant(&qpoly(&[1, 1]), &qpoly(&[-1, 1])), int(-2));
    }

    #[test]
    fn quadratic_discriminant() {
        // ax² + bx + c → b² − 4ac
        let p = qpoly(&[3, 5, 2]);
        assert_eq!(discriminant(&p), int(25 - 24));
        let cubic = qpoly(&[-6, 11, -6, 1]); // roots 1,2,3: Π(ri−rj)² = 4
        assert_eq!(discriminant(&cubic), int(4));
    }

    #[test]
    fn elimination_gives_norm() {
        // t² − 2 and x − t  →  x² − 2 (up to sign)
        let m = qpoly(&[-2, 0, 1]);
        let h: BiPoly = UniPoly::new(vec![qpoly(&[0, 1]), qpoly(&[-1])]);
        let r = eliminate(&m, &h);
        assert!(r.proportional(&qpoly(&[-2, 0, 1])));
    }
}
