//! Triangular pyramids with unit lateral edges and an equilateral base of
//! squared side `η`, `0 < η < 3`.
//!
//! Vertices: apex `v₀ = (0, 0, s)` with `s = √((3−η)/3)`, base
//! `v₁ = (0, √(η/3), 0)`, `v₂ = (−√η/2, −√(η/3)/2, 0)`,
//! `v₃ = (√η/2, −√(η/3)/2, 0)`. A common point `O* = (0, 0, z)` on the axis
//! has distance coordinates `X = (z−s)²` to the apex and `Y = z² + η/3` to
//! every base vertex. Four equal spheres of squared radius `ρ`, each through
//! `O*` and the three vertices of one face, exist exactly when
//!
//! ```text
//! 3(X−Y+1)² + 4ηX − 12X = 0
//! 3Y² − 4ρ(3Y−η) = 0
//! 4ρ(4Y − (X−Y−1)² − ηX) − X(4Y − ηX) = 0
//! ```
//!
//! Eliminating gives the cubic `g(ρ)`; in terms of `t = z²` the admissible
//! heights are the positive roots of the cubic `f(t)`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cayley_menger::{check_eta, circumradius_sq_pyramid};
use crate::error::{Error, Result};
use crate::exact::rational::to_decimal;
use crate::exact::resultant::{eliminate, resultant, BiPoly};
use crate::exact::{
    format_rational, rat, AlgElem, AlgebraicReal, Enclose, Field, Interval, MPoly, Number, QuadExt,
    RadicalExt, Rational, Ring, Sign, Signed, SturmSeq, UniPoly,
};

/// Squared base edge of a pyramid with unit lateral edges.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PyramidParams {
    #[serde(serialize_with = "crate::plane::ser_rational")]
    eta: Rational,
}

impl PyramidParams {
    pub fn new(eta: Rational) -> Result<Self> {
        check_eta(&eta)?;
        Ok(PyramidParams { eta })
    }

    pub fn eta(&self) -> &Rational {
        &self.eta
    }
}

/// `η` as handled by the solver: a rational, or the boundary value `η̄`.
#[derive(Clone, Debug, PartialEq)]
pub enum EtaValue {
    Rational(Rational),
    Bar,
}

impl EtaValue {
    /// Accepts `etabar` or a rational in `(0, 3)`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("etabar") {
            return Ok(EtaValue::Bar);
        }
        let r = crate::exact::parse_rational(s)?;
        check_eta(&r)?;
        Ok(EtaValue::Rational(r))
    }

    pub fn number(&self) -> Number {
        match self {
            EtaValue::Rational(r) => Number::Rational(r.clone()),
            EtaValue::Bar => Number::Quad(eta_bar()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.number().to_f64()
    }

    pub fn to_json(&self) -> Value {
        match self {
            EtaValue::Rational(r) => Value::String(format_rational(r)),
            EtaValue::Bar => json!(eta_bar().to_json()),
        }
    }
}

impl fmt::Display for EtaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EtaValue::Rational(r) => write!(f, "{}", format_rational(r)),
            EtaValue::Bar => write!(f, "{}", eta_bar()),
        }
    }
}

// ---------------------------------------------------------------------------
// Polynomials

/// `g(ρ) = 1024(η−3)ρ³ + (−704η²+1920η+768)ρ² + η(196η²−732η+288)ρ + 27η²`.
pub fn poly_g<R: Ring>(eta: &R) -> UniPoly<R> {
    let e = || eta.clone();
    let k = R::from_i64;
    UniPoly::new(vec![
        k(27) * e() * e(),
        e() * (k(196) * e() * e() - k(732) * e() + k(288)),
        k(-704) * e() * e() + k(1920) * e() + k(768),
        k(1024) * (e() - k(3)),
    ])
}

/// `f(t) = 432(η−3)t³ + 108η(η−2)t² − 9η²(η+1)t + η⁴`.
pub fn poly_f<R: Ring>(eta: &R) -> UniPoly<R> {
    let e = || eta.clone();
    let k = R::from_i64;
    UniPoly::new(vec![
        e().pow(4),
        k(-9) * e() * e() * (e() + k(1)),
        k(108) * e() * (e() - k(2)),
        k(432) * (e() - k(3)),
    ])
}

/// `49η² − 135η − 12`, whose positive root separates one from three real
/// roots of `g`.
pub fn eta_bar_poly() -> UniPoly<Rational> {
    crate::exact::qpoly(&[-12, -135, 49])
}

/// `η̄ = 135/98 + (19/98)√57`.
pub fn eta_bar() -> QuadExt {
    QuadExt::new(rat(135, 98), rat(19, 98), 57).expect("57 is square-free")
}

/// Residuals of the three pyramid equations, in the order listed in the
/// module docs.
pub fn eqnl_residuals<R: Ring>(eta: &R, x: &R, y: &R, rho: &R) -> [R; 3] {
    let k = R::from_i64;
    let (e, x, y, r) = (eta.clone(), x.clone(), y.clone(), rho.clone());
    let d = x.clone() - y.clone() + k(1);
    let e1 = k(3) * d.clone() * d + k(4) * e.clone() * x.clone() - k(12) * x.clone();
    let e2 = k(3) * y.clone() * y.clone() - k(4) * r.clone() * (k(3) * y.clone() - e.clone());
    let m = x.clone() - y.clone() - k(1);
    let e3 = k(4) * r * (k(4) * y.clone() - m.clone() * m - e.clone() * x.clone())
        - x.clone() * (k(4) * y - e * x);
    [e1, e2, e3]
}

/// The three equations as polynomials in `X, Y, rho, eta`.
pub fn eqnl_polys() -> [MPoly; 3] {
    let v = MPoly::var;
    eqnl_residuals(&v("eta"), &v("X"), &v("Y"), &v("rho"))
}

fn eqnl_at(eta: &Rational, rho: &Rational) -> [MPoly; 3] {
    let v = MPoly::var;
    let c = |r: &Rational| MPoly::constant(r.clone());
    eqnl_residuals(&c(eta), &v("X"), &v("Y"), &c(rho))
}

/// Discriminant of `g` in `ρ`, factored:
/// `196608 η³ (3−η)(49η²−135η−12)(5η−12)²(7η−20)²`.
pub fn disc_g_factored(eta: &Rational) -> Rational {
    let e = eta.clone();
    let k = |n: i64| Rational::from_integer(n.into());
    k(196608)
        * e.pow(3)
        * (k(3) - &e)
        * eta_bar_poly().eval(&e)
        * (k(5) * &e - k(12)).pow(2)
        * (k(7) * &e - k(20)).pow(2)
}

/// Discriminant of `f` in `t`, factored: `314928 η⁷ (3−η)(49η²−135η−12)`.
pub fn disc_f_factored(eta: &Rational) -> Rational {
    let k = |n: i64| Rational::from_integer(n.into());
    k(314928) * eta.pow(7) * (k(3) - eta) * eta_bar_poly().eval(eta)
}

// ---------------------------------------------------------------------------
// Solutions

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Branch {
    TrivialNorth,
    TrivialSouth,
    NonTrivial,
}

#[derive(Clone, Debug)]
pub struct PyramidSolution {
    pub rho: Number,
    pub x: Number,
    pub y: Number,
    /// Signed height of `O*` on the symmetry axis.
    pub z: Number,
    pub multiplicity: usize,
    pub branch: Branch,
}

impl PyramidSolution {
    pub fn ostar(&self) -> [Number; 3] {
        [
            Number::Rational(Rational::zero()),
            Number::Rational(Rational::zero()),
            self.z.clone(),
        ]
    }

    /// Residual enclosures of the three equations at `bits` of precision.
    pub fn residual_enclosures(&self, eta: &EtaValue, bits: u32) -> [Interval; 3] {
        eqnl_residuals(
            &eta.number().enclose(bits),
            &self.x.enclose(bits),
            &self.y.enclose(bits),
            &self.rho.enclose(bits),
        )
    }

    pub fn to_json(&self, digits: usize) -> Value {
        json!({
            "branch": self.branch,
            "rho": self.rho.to_json(digits),
            "X": self.x.to_json(digits),
            "Y": self.y.to_json(digits),
            "z": self.z.to_json(digits),
            "decimal": {
                "rho": self.rho.to_decimal(digits),
                "X": self.x.to_decimal(digits),
                "Y": self.y.to_decimal(digits),
                "z": self.z.to_decimal(digits),
            },
            "multiplicity": self.multiplicity,
        })
    }
}

/// Why a positive root of `g` carries no real point `O*` on the axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Obstruction {
    /// `3Y² − 12ρY + 4ρη` has no real root.
    ComplexY,
    /// No real `X` for any real `Y`.
    ComplexX,
    /// Real `(X, Y)` exist but none satisfies every equation with `z² > 0`.
    NoAxisPoint,
}

#[derive(Clone, Debug)]
pub struct ComplexBranch {
    pub rho: Number,
    pub multiplicity: usize,
    pub reason: Obstruction,
    /// Eliminant in `X` when `ρ` is rational, certified to have no real root.
    pub x_poly: Option<UniPoly<Rational>>,
}

impl ComplexBranch {
    pub fn to_json(&self, digits: usize) -> Value {
        json!({
            "rho": self.rho.to_json(digits),
            "rho_decimal": self.rho.to_decimal(digits),
            "multiplicity": self.multiplicity,
            "reason": self.reason,
            "X_poly": self.x_poly.as_ref().map(|p| p.fmt_var("X")),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Regime {
    OneRealRoot,
    ThreeRealRoots,
    Boundary,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Regime::OneRealRoot => "OneRealRoot",
            Regime::ThreeRealRoots => "ThreeRealRoots",
            Regime::Boundary => "Boundary",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct PyramidClassification {
    pub eta: EtaValue,
    /// Squared circumradius `3/(12−4η)`.
    pub rt2: Number,
    pub trivial: Vec<PyramidSolution>,
    /// Sorted by decreasing height `z`.
    pub nontrivial: Vec<PyramidSolution>,
    pub complex: Vec<ComplexBranch>,
    pub regime: Regime,
}

impl PyramidClassification {
    /// Distinct values of `ρ` among the non-trivial solutions.
    pub fn distinct_rho(&self) -> usize {
        let mut seen: Vec<&Number> = Vec::new();
        for s in &self.nontrivial {
            if !seen.iter().any(|r| r.eq_exact(&s.rho)) {
                seen.push(&s.rho);
            }
        }
        seen.len()
    }

    /// JSON record; `centers` adds `Ostar` and the four sphere centers of
    /// every non-trivial solution.
    pub fn to_json(&self, digits: usize, centers: bool) -> Value {
        let nontrivial: Vec<Value> = self
            .nontrivial
            .iter()
            .map(|s| {
                let mut v = s.to_json(digits);
                if centers {
                    let cfg = cartesian_config(&self.eta, s, digits).ok();
                    v["Ostar"] = match &cfg {
                        Some(c) => c.ostar_json(digits),
                        None => Value::Null,
                    };
                    v["centers"] = match &cfg {
                        Some(c) => c.centers_json(digits),
                        None => Value::Null,
                    };
                }
                v
            })
            .collect();
        json!({
            "eta": self.eta.to_json(),
            "RT2": self.rt2.to_json(digits),
            "eta_decimal": self.eta.number().to_decimal(digits),
            "trivial": self.trivial.iter().map(|s| s.to_json(digits)).collect::<Vec<_>>(),
            "nontrivial": nontrivial,
            "complex": self.complex.iter().map(|c| c.to_json(digits)).collect::<Vec<_>>(),
            "regime": self.regime,
        })
    }
}

// ---------------------------------------------------------------------------
// Back substitution

type R1<B> = RadicalExt<B>;
type R2<B> = RadicalExt<RadicalExt<B>>;

/// One real candidate `(X, Y)` over `B(√D)(√D_X)` passing every exact check.
#[derive(Clone, Debug)]
pub struct RawBranch<B> {
    pub y: R1<B>,
    pub x: R2<B>,
    /// `t = z² = Y − η/3`.
    pub t: R1<B>,
    pub z_sign: Sign,
}

fn lift2<B: Ring + Signed>(b: B) -> R2<B> {
    RadicalExt::base(RadicalExt::base(b))
}

/// All real `(X, Y)` with `t > 0` and consistent sign of `z` for a given `ρ`.
///
/// `Y` solves `3Y² − 12ρY + 4ρη = 0`, `X` then solves the first equation
/// `3X² + (4η−6−6Y)X + 3(Y−1)² = 0`. Every one of the (at most four)
/// combinations is tested exactly against all three equations and against
/// `(Y − X + 1 − 2η/3)² = 4 s² t`, which holds iff `X = (z−s)²` for
/// `z = ±√t`; its sign fixes the sign of `z`.
pub fn solve_from_rho<B>(eta: &B, rho: &B) -> (Vec<RawBranch<B>>, Option<Obstruction>)
where
    B: Field + Signed,
{
    let k = B::from_i64;
    let q = |n, d| B::from_rational(&rat(n, d));
    let d = k(144) * rho.clone() * rho.clone() - k(48) * rho.clone() * eta.clone();
    if d.sgn() == Sign::Negative {
        return (Vec::new(), Some(Obstruction::ComplexY));
    }
    let signs = |s: Sign| if s.is_zero() { vec![1] } else { vec![1, -1] };
    let c = (k(3) - eta.clone()) * q(1, 3);
    let mut out = Vec::new();
    let mut real_x = false;
    for sy in signs(d.sgn()) {
        let y = RadicalExt::new(k(2) * rho.clone(), q(sy, 6), d.clone());
        let b = R1::base(k(4) * eta.clone() - k(6)) - R1::from_i64(6) * y.clone();
        let y1 = y.clone() - R1::one();
        let dx = b.clone() * b.clone() - R1::from_i64(36) * y1.clone() * y1;
        let sdx = dx.sgn();
        if sdx == Sign::Negative {
            continue;
        }
        real_x = true;
        for sx in signs(sdx) {
            let x = RadicalExt::new(
                -b.clone() * R1::from_rational(&rat(1, 6)),
                R1::from_rational(&rat(sx, 6)),
                dx.clone(),
            );
            let y2 = R2::base(y.clone());
            let res = eqnl_residuals(&lift2(eta.clone()), &x, &y2, &lift2(rho.clone()));
            if res.iter().any(|r| !r.is_zero()) {
                continue;
            }
            let t = y.clone() - R1::base(eta.clone() * q(1, 3));
            if t.sgn() != Sign::Positive {
                continue;
            }
            let nz = y2 - x.clone() + lift2((k(3) - k(2) * eta.clone()) * q(1, 3));
            let check = nz.clone() * nz.clone() - lift2(k(4) * c.clone()) * R2::base(t.clone());
            if !check.is_zero() {
                continue;
            }
            out.push(RawBranch {
                y: y.clone(),
                x,
                t,
                z_sign: nz.sgn(),
            });
        }
    }
    let obstruction = if !out.is_empty() {
        None
    } else if real_x {
        Some(Obstruction::NoAxisPoint)
    } else {
        Some(Obstruction::ComplexX)
    };
    (out, obstruction)
}

/// Whether `(X, Y)` is one of the two poles of the circumsphere.
fn pole_of<B: Field + Signed>(eta: &B, raw: &RawBranch<B>) -> Option<Branch> {
    let k = B::from_i64;
    let x = &raw.x;
    let y = R2::base(raw.y.clone());
    if x.is_zero() && (y.clone() - R2::one()).is_zero() {
        return Some(Branch::TrivialNorth);
    }
    let den = (k(12) - k(4) * eta.clone()).inv();
    let xs = lift2(k(12) * den.clone());
    let ys = lift2(k(4) * eta.clone() * den);
    if (x.clone() - xs).is_zero() && (y - ys).is_zero() {
        return Some(Branch::TrivialSouth);
    }
    None
}

fn sqrt_enclosure(iv: &Interval, bits: u32, negative: bool) -> Interval {
    let clipped = if iv.hi() < &Rational::zero() {
        Interval::point(Rational::zero())
    } else {
        iv.clone()
    };
    let s = clipped.sqrt(bits);
    if negative {
        -s
    } else {
        s
    }
}

/// Norm of a polynomial over `Q(√d)`: `p · p̄ ∈ Q[x]`.
fn norm_poly(p: &UniPoly<QuadExt>) -> UniPoly<Rational> {
    let conj = p.map(|c| c.conjugate());
    (p.clone() * conj).map(|c| c.to_rational().expect("norm is rational"))
}

/// `±√c` for `c ≥ 0` in `Q(√d)`, as an exact number.
fn quad_sqrt(c: &QuadExt, negative: bool) -> Result<Number> {
    if let Some(r) = c.to_rational() {
        let s = QuadExt::sqrt_rational(&r)?;
        return Ok(Number::Quad(if negative { -s } else { s }).simplify());
    }
    let p = UniPoly::new(vec![-c.clone(), QuadExt::zero(), QuadExt::one()]);
    let alg = AlgebraicReal::from_enclosure(&norm_poly(&p), |b| {
        sqrt_enclosure(&c.enclosure(b + 4), b + 2, negative)
    })
    .ok_or_else(|| Error::InconsistentBranch("square root isolation failed".into()))?;
    Ok(Number::Algebraic(alg).simplify())
}

fn isolate(p: &UniPoly<Rational>, enc: impl Fn(u32) -> Interval, what: &str) -> Result<Number> {
    AlgebraicReal::from_enclosure(p, enc)
        .map(|a| Number::Algebraic(a).simplify())
        .ok_or_else(|| Error::InconsistentBranch(format!("{what} is not a root of its eliminant")))
}

/// Back substitution over `Q(ρ)` for rational `η`: every real solution
/// belonging to the root `ρ` of `g`, including poles (flagged).
pub fn back_substitute(
    eta: &Rational,
    rho: &AlgebraicReal,
) -> Result<(
    Vec<(RawBranch<AlgElem>, Option<Branch>)>,
    Option<Obstruction>,
)> {
    check_eta(eta)?;
    if rho.sign_of_poly(&poly_g(eta)) != Sign::Zero {
        return Err(Error::NotASolution(format!("{rho} is not a root of g")));
    }
    let ctx = Arc::new(rho.clone());
    let e = AlgElem::rational(eta.clone());
    let r = AlgElem::generator(&ctx);
    let (raw, obstruction) = solve_from_rho(&e, &r);
    let tagged = raw
        .into_iter()
        .map(|b| {
            let pole = pole_of(&e, &b);
            (b, pole)
        })
        .collect();
    Ok((tagged, obstruction))
}

fn trivial_rational(eta: &Rational) -> Result<Vec<PyramidSolution>> {
    let rt2 = circumradius_sq_pyramid(eta)?;
    let three = Rational::from_integer(3.into());
    let c = (&three - eta) / &three;
    let den = Rational::from_integer(12.into()) - Rational::from_integer(4.into()) * eta;
    let south_z2 = eta * eta / (Rational::from_integer(9.into()) - &three * eta);
    let sqrt = |r: &Rational, neg: bool| -> Result<Number> {
        let s = QuadExt::sqrt_rational(r)?;
        Ok(Number::Quad(if neg { -s } else { s }).simplify())
    };
    Ok(vec![
        PyramidSolution {
            rho: Number::Rational(rt2.clone()),
            x: Number::Rational(Rational::zero()),
            y: Number::Rational(Rational::one()),
            z: sqrt(&c, false)?,
            multiplicity: 1,
            branch: Branch::TrivialNorth,
        },
        PyramidSolution {
            rho: Number::Rational(rt2),
            x: Number::Rational(Rational::from_integer(12.into()) / &den),
            y: Number::Rational(Rational::from_integer(4.into()) * eta / &den),
            z: sqrt(&south_z2, true)?,
            multiplicity: 1,
            branch: Branch::TrivialSouth,
        },
    ])
}

fn regime_of(eta: &Rational) -> Regime {
    let g = poly_g(eta);
    let double = UniPoly::gcd(&g, &g.derivative()).degree().unwrap_or(0) > 0;
    match eta_bar_poly().eval(eta).sgn() {
        _ if double => Regime::Boundary,
        Sign::Zero => Regime::Boundary,
        Sign::Negative => Regime::OneRealRoot,
        Sign::Positive => Regime::ThreeRealRoots,
    }
}

/// `X` eliminant for rational `ρ`: `gcd(res_Y(e₁, e₂), res_Y(e₃, e₂))`.
pub fn x_eliminant(eta: &Rational, rho: &Rational) -> UniPoly<Rational> {
    let [e1, e2, e3] = eqnl_at(eta, rho);
    let bi = |p: &MPoly| p.to_bivariate("Y", "X").expect("only X and Y remain");
    let (b1, b2, b3) = (bi(&e1), bi(&e2), bi(&e3));
    let r12: UniPoly<Rational> = resultant(&b1, &b2);
    let r32: UniPoly<Rational> = resultant(&b3, &b2);
    UniPoly::gcd(&r12, &r32)
}

fn sort_by_height(v: &mut [PyramidSolution]) {
    v.sort_by(|a, b| b.z.cmp_exact(&a.z));
}

/// Full solution set for a rational `η`.
pub fn classify(p: &PyramidParams) -> Result<PyramidClassification> {
    let eta = p.eta();
    let g = poly_g(eta);
    let f = poly_f(eta);
    let c = (Rational::from_integer(3.into()) - eta) / Rational::from_integer(3.into());
    let f_pos: Vec<AlgebraicReal> = AlgebraicReal::real_roots(&f)
        .into_iter()
        .map(|(r, _)| r)
        .filter(|r| r.sgn() == Sign::Positive)
        .collect();
    let mut matched = vec![false; f_pos.len()];
    let mut nontrivial = Vec::new();
    let mut complex = Vec::new();

    for (rho, mult) in AlgebraicReal::real_roots(&g) {
        if rho.sgn() != Sign::Positive {
            continue;
        }
        let (raw, obstruction) = back_substitute(eta, &rho)?;
        let rho_num = Number::Algebraic(rho.clone()).simplify();
        let mut found = 0;
        for (br, pole) in raw {
            let t_enc = |b: u32| br.t.enclose(b);
            let is_f_root = f.eval_in(&br.t, R1::from_rational).is_zero();
            if !is_f_root {
                if pole.is_some() {
                    continue;
                }
                return Err(Error::InconsistentBranch(format!(
                    "branch at rho = {rho} has z^2 off the roots of f"
                )));
            }
            let t_alg = AlgebraicReal::from_enclosure(&f, t_enc)
                .ok_or_else(|| Error::InconsistentBranch("t isolation failed".into()))?;
            let idx = f_pos
                .iter()
                .position(|r| r.eq_exact(&t_alg))
                .ok_or_else(|| Error::InconsistentBranch("t is not a positive root of f".into()))?;
            matched[idx] = true;
            found += 1;

            let pt = t_alg.poly().clone();
            let shift = UniPoly::new(vec![
                -(eta / Rational::from_integer(3.into())),
                Rational::one(),
            ]);
            let y = isolate(&pt.compose(&shift), |b| br.y.enclose(b), "Y")?;
            let sq = UniPoly::monomial(Rational::one(), 2);
            let neg = br.z_sign == Sign::Negative;
            let z = isolate(
                &pt.compose(&sq),
                |b| sqrt_enclosure(&br.t.enclose(2 * b + 8), b + 2, neg),
                "z",
            )?;
            // X = t + c − 2σ√(ct): eliminate t from (X − t − c)² − 4ct.
            let h: BiPoly = UniPoly::new(vec![
                UniPoly::new(vec![
                    c.clone() * &c,
                    -(c.clone() * Rational::from_integer(2.into())),
                    Rational::one(),
                ]),
                UniPoly::new(vec![
                    -(c.clone() * Rational::from_integer(2.into())),
                    -Rational::from_integer(2.into()),
                ]),
                UniPoly::constant(Rational::one()),
            ]);
            let x = isolate(&eliminate(&pt, &h), |b| br.x.enclose(b), "X")?;
            nontrivial.push(PyramidSolution {
                rho: rho_num.clone(),
                x,
                y,
                z,
                multiplicity: mult,
                branch: Branch::NonTrivial,
            });
        }
        if found == 0 {
            let x_poly = rho.to_rational().map(|r| x_eliminant(eta, &r));
            if let Some(xp) = &x_poly {
                if SturmSeq::rational(xp).count_real() != 0 {
                    return Err(Error::InconsistentBranch(format!(
                        "rho = {rho} leaves real X without an axis point"
                    )));
                }
            }
            complex.push(ComplexBranch {
                rho: rho_num,
                multiplicity: mult,
                reason: obstruction.unwrap_or(Obstruction::NoAxisPoint),
                x_poly,
            });
        }
    }
    if matched.iter().any(|m| !m) {
        return Err(Error::InconsistentBranch(
            "a positive root of f has no matching root of g".into(),
        ));
    }
    sort_by_height(&mut nontrivial);
    Ok(PyramidClassification {
        eta: EtaValue::Rational(eta.clone()),
        rt2: Number::Rational(circumradius_sq_pyramid(eta)?),
        trivial: trivial_rational(eta)?,
        nontrivial,
        complex,
        regime: regime_of(eta),
    })
}

/// Distinct real roots with multiplicity of a polynomial over `Q(√d)` that
/// splits into linear factors.
fn quad_roots(p: &UniPoly<QuadExt>) -> Result<Vec<(QuadExt, usize)>> {
    let mut out = Vec::new();
    for (factor, mult) in p.square_free_decomposition() {
        match factor.degree() {
            Some(0) => {}
            Some(1) => {
                let m = factor.monic();
                out.push((-m.coeff(0), mult));
            }
            _ => {
                return Err(Error::InconsistentBranch(format!(
                    "factor of degree {:?} does not split over the quadratic field",
                    factor.degree()
                )))
            }
        }
    }
    Ok(out)
}

/// Full solution set at `η = η̄`, where `g` and `f` each have a double root
/// and everything lives in `Q(√57)`.
pub fn classify_eta_bar() -> Result<PyramidClassification> {
    let e = eta_bar();
    let k = QuadExt::from_i64;
    let third = QuadExt::from_rational(&rat(1, 3));
    let c = (k(3) - e.clone()) * third.clone();
    let rt2 = k(3) * (k(12) - k(4) * e.clone()).inv();
    let f_pos: Vec<QuadExt> = quad_roots(&poly_f(&e))?
        .into_iter()
        .map(|(r, _)| r)
        .filter(|r| r.sgn() == Sign::Positive)
        .collect();
    let mut matched = vec![false; f_pos.len()];
    let mut nontrivial = Vec::new();
    let mut complex = Vec::new();

    for (rho, mult) in quad_roots(&poly_g(&e))? {
        if rho.sgn() != Sign::Positive {
            continue;
        }
        let (raw, obstruction) = solve_from_rho(&e, &rho);
        let mut found = 0;
        for br in raw {
            let idx = f_pos
                .iter()
                .position(|t| (br.t.clone() - R1::base(t.clone())).is_zero());
            let Some(idx) = idx else {
                if pole_of(&e, &br).is_some() {
                    continue;
                }
                return Err(Error::InconsistentBranch(format!(
                    "branch at rho = {rho} has z^2 off the roots of f"
                )));
            };
            matched[idx] = true;
            found += 1;
            let t = f_pos[idx].clone();
            let neg = br.z_sign == Sign::Negative;
            let z = quad_sqrt(&t, neg)?;
            let p = t.clone() + c.clone();
            let w = k(4) * c.clone() * t.clone();
            // (X − p)² − w over Q(√57), then its norm
            let xq = UniPoly::new(vec![p.clone() * p.clone() - w, -(k(2) * p), QuadExt::one()]);
            let x = isolate(&norm_poly(&xq), |b| br.x.enclose(b), "X")?;
            nontrivial.push(PyramidSolution {
                rho: Number::Quad(rho.clone()).simplify(),
                x,
                y: Number::Quad(t + e.clone() * third.clone()).simplify(),
                z,
                multiplicity: mult,
                branch: Branch::NonTrivial,
            });
        }
        if found == 0 {
            complex.push(ComplexBranch {
                rho: Number::Quad(rho),
                multiplicity: mult,
                reason: obstruction.unwrap_or(Obstruction::NoAxisPoint),
                x_poly: None,
            });
        }
    }
    if matched.iter().any(|m| !m) {
        return Err(Error::InconsistentBranch(
            "a positive root of f has no matching root of g".into(),
        ));
    }
    sort_by_height(&mut nontrivial);

    let den = (k(12) - k(4) * e.clone()).inv();
    let south_z2 = e.clone() * e.clone() * (k(9) - k(3) * e.clone()).inv();
    let trivial = vec![
        PyramidSolution {
            rho: Number::Quad(rt2.clone()),
            x: Number::Rational(Rational::zero()),
            y: Number::Rational(Rational::one()),
            z: quad_sqrt(&c, false)?,
            multiplicity: 1,
            branch: Branch::TrivialNorth,
        },
        PyramidSolution {
            rho: Number::Quad(rt2.clone()),
            x: Number::Quad(k(12) * den.clone()),
            y: Number::Quad(k(4) * e.clone() * den),
            z: quad_sqrt(&south_z2, true)?,
            multiplicity: 1,
            branch: Branch::TrivialSouth,
        },
    ];
    Ok(PyramidClassification {
        eta: EtaValue::Bar,
        rt2: Number::Quad(rt2),
        trivial,
        nontrivial,
        complex,
        regime: Regime::Boundary,
    })
}

/// Dispatches on the kind of `η`.
pub fn classify_value(eta: &EtaValue) -> Result<PyramidClassification> {
    match eta {
        EtaValue::Rational(r) => classify(&PyramidParams::new(r.clone())?),
        EtaValue::Bar => classify_eta_bar(),
    }
}

/// Orthocenter of the pyramid: `(0, 0, η/(6s))` with `s = √((3−η)/3)`.
///
/// The altitude from `v₀` is the axis; the altitude from `v₁` is the line
/// through `v₁` along the normal of the face `v₀v₂v₃`, and it meets the axis
/// at that height.
pub fn orthocenter_pyramid(eta: &Rational) -> Result<[QuadExt; 3]> {
    check_eta(eta)?;
    let three = Rational::from_integer(3.into());
    let c = (&three - eta) / &three;
    let s = QuadExt::sqrt_rational(&c)?;
    let z = s * QuadExt::rational(eta / (Rational::from_integer(6.into()) * c));
    Ok([QuadExt::zero(), QuadExt::zero(), z])
}

// ---------------------------------------------------------------------------
// Cartesian recovery

pub type IPoint = [Interval; 3];

fn sub3(a: &IPoint, b: &IPoint) -> IPoint {
    [
        a[0].clone() - b[0].clone(),
        a[1].clone() - b[1].clone(),
        a[2].clone() - b[2].clone(),
    ]
}

fn add3(a: &IPoint, b: &IPoint) -> IPoint {
    [
        a[0].clone() + b[0].clone(),
        a[1].clone() + b[1].clone(),
        a[2].clone() + b[2].clone(),
    ]
}

fn scale3(s: &Interval, a: &IPoint) -> IPoint {
    [
        s.clone() * a[0].clone(),
        s.clone() * a[1].clone(),
        s.clone() * a[2].clone(),
    ]
}

fn dot3(a: &IPoint, b: &IPoint) -> Interval {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

fn cross3(a: &IPoint, b: &IPoint) -> IPoint {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

fn sq_dist(a: &IPoint, b: &IPoint) -> Interval {
    let d = sub3(a, b);
    dot3(&d, &d)
}

/// Interval enclosures of the four vertices.
pub fn pyramid_vertices(eta: &Number, bits: u32) -> [IPoint; 4] {
    let b = bits + 8;
    let e = eta.enclose(b);
    let zero = || Interval::point(Rational::zero());
    let q = |n, d| Interval::point(rat(n, d));
    let s = (q(1, 1) - e.clone() * q(1, 3)).sqrt(b);
    let r = (e.clone() * q(1, 3)).sqrt(b);
    let h = e.sqrt(b) * q(1, 2);
    let m = -(r.clone() * q(1, 2));
    [
        [zero(), zero(), s],
        [zero(), r, zero()],
        [-h.clone(), m.clone(), zero()],
        [h, m, zero()],
    ]
}

/// Certified Cartesian configuration of one solution.
#[derive(Clone, Debug)]
pub struct SphereConfig {
    /// Enclosure of `√ρ`.
    pub radius: Interval,
    pub vertices: [IPoint; 4],
    pub ostar: IPoint,
    /// `centers[i]` is the center of the sphere through the face opposite `vᵢ`.
    pub centers: [IPoint; 4],
    /// Widest enclosure among the 16 incidence residuals `‖w−p‖² − ρ`.
    pub max_residual_width: Rational,
}

fn decimal_point(p: &IPoint, digits: usize) -> Value {
    json!(p
        .iter()
        .map(|c| to_decimal(&c.midpoint(), digits))
        .collect::<Vec<_>>())
}

impl SphereConfig {
    pub fn ostar_json(&self, digits: usize) -> Value {
        decimal_point(&self.ostar, digits)
    }

    pub fn centers_json(&self, digits: usize) -> Value {
        json!(self
            .centers
            .iter()
            .map(|c| decimal_point(c, digits))
            .collect::<Vec<_>>())
    }

    pub fn centers_f64(&self) -> [[f64; 3]; 4] {
        self.centers.clone().map(|c| c.map(|x| x.mid_f64()))
    }

    pub fn vertices_f64(&self) -> [[f64; 3]; 4] {
        self.vertices.clone().map(|c| c.map(|x| x.mid_f64()))
    }

    pub fn ostar_f64(&self) -> [f64; 3] {
        self.ostar.clone().map(|x| x.mid_f64())
    }

    pub fn to_json(&self, digits: usize) -> Value {
        json!({
            "radius": to_decimal(&self.radius.midpoint(), digits),
            "Ostar": self.ostar_json(digits),
            "centers": self.centers_json(digits),
            "vertices": json!(self.vertices.iter().map(|v| decimal_point(v, digits)).collect::<Vec<_>>()),
            "max_residual_width": format!("{:.3e}", crate::exact::rational::to_f64(&self.max_residual_width)),
        })
    }
}

enum Attempt {
    Done(SphereConfig),
    Refine,
    Fail(String),
}

fn try_config(
    eta: &Number,
    sol: &PyramidSolution,
    bits: u32,
    tol: &Rational,
    last: bool,
) -> Attempt {
    let v = pyramid_vertices(eta, bits);
    let zero = || Interval::point(Rational::zero());
    let ostar = [zero(), zero(), sol.z.enclose(bits + 8)];
    let rho = sol.rho.enclose(bits + 8);
    let mut centers: Vec<IPoint> = Vec::with_capacity(4);
    for i in 0..4 {
        let face: Vec<&IPoint> = (0..4).filter(|&j| j != i).map(|j| &v[j]).collect();
        let (p, a, b) = (face[0], sub3(face[1], face[0]), sub3(face[2], face[0]));
        let n = cross3(&a, &b);
        let n2 = dot3(&n, &n);
        let lhs = sub3(&scale3(&dot3(&a, &a), &b), &scale3(&dot3(&b, &b), &a));
        let Some(inv) = (n2.clone() * Interval::point(rat(2, 1))).recip() else {
            return Attempt::Refine;
        };
        let cc = add3(p, &scale3(&inv, &cross3(&lhs, &n)));
        let h2 = rho.clone() - sq_dist(&cc, p);
        if h2.hi() < &Rational::zero() {
            return Attempt::Fail(format!("rho is below the circumradius of face {i}"));
        }
        let Some(norm_inv) = n2.sqrt(bits + 8).recip() else {
            return Attempt::Refine;
        };
        let step = scale3(&(sqrt_enclosure(&h2, bits + 8, false) * norm_inv), &n);
        let cands = [add3(&cc, &step), sub3(&cc, &step)];
        let ok: Vec<&IPoint> = cands
            .iter()
            .filter(|w| (sq_dist(w, &ostar) - rho.clone()).contains_zero())
            .collect();
        match ok.len() {
            0 if last => return Attempt::Fail(format!("no center for face {i} passes through O*")),
            0 => return Attempt::Refine,
            1 => centers.push(ok[0].clone()),
            _ => {
                // Both pass through O*: the candidates coincide, or O* lies
                // in the plane of the face (e.g. O* is one of its vertices).
                // Prefer the center farthest from those already chosen so
                // that distinct spheres are reported.
                let gap = sq_dist(&cands[0], &cands[1]);
                let off_plane = dot3(&n, &sub3(&ostar, p));
                if !(gap.hi() < tol || off_plane.contains_zero() || last) {
                    return Attempt::Refine;
                }
                let spread = |w: &IPoint| {
                    centers
                        .iter()
                        .map(|c| sq_dist(w, c).mid_f64())
                        .fold(f64::INFINITY, f64::min)
                };
                let pick = if spread(ok[1]) > spread(ok[0]) {
                    ok[1]
                } else {
                    ok[0]
                };
                centers.push(pick.clone());
            }
        }
    }
    let centers: [IPoint; 4] = centers.try_into().expect("four faces");
    let mut width = Rational::zero();
    for (i, w) in centers.iter().enumerate() {
        let points = (0..4)
            .filter(|&j| j != i)
            .map(|j| &v[j])
            .chain(std::iter::once(&ostar));
        for p in points {
            let r = sq_dist(w, p) - rho.clone();
            if !r.contains_zero() {
                return if last {
                    Attempt::Fail(format!("center {i} misses an incidence"))
                } else {
                    Attempt::Refine
                };
            }
            width = width.max(r.width());
        }
    }
    if &width >= tol {
        return if last {
            Attempt::Fail("precision target not reached".into())
        } else {
            Attempt::Refine
        };
    }
    Attempt::Done(SphereConfig {
        radius: rho.sqrt(bits + 8),
        vertices: v,
        ostar,
        centers,
        max_residual_width: width,
    })
}

/// Recovers `O*` and the four centers, certifying all sixteen incidences to
/// `10^-digits`.
pub fn cartesian_config(
    eta: &EtaValue,
    sol: &PyramidSolution,
    digits: usize,
) -> Result<SphereConfig> {
    let tol = Rational::new(1.into(), num_bigint::BigInt::from(10).pow(digits as u32));
    let mut bits = (digits as f64 * 3.33).ceil() as u32 + 24;
    let e = eta.number();
    loop {
        let last = bits > 4096;
        match try_config(&e, sol, bits, &tol, last) {
            Attempt::Done(c) => return Ok(c),
            Attempt::Fail(m) => return Err(Error::InconsistentBranch(m)),
            Attempt::Refine => bits *= 2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qpoly;
    use crate::exact::rational::int;

    fn classify_q(n: i64, d: i64) -> PyramidClassification {
        classify(&PyramidParams::new(rat(n, d)).unwrap()).unwrap()
    }

    #[test]
    fn g_and_f_coefficients() {
        assert_eq!(poly_g(&int(1)), qpoly(&[27, -248, 1984, -2048]));
        assert_eq!(poly_g(&int(2)), qpoly(&[108, -784, 1792, -1024]));
        let g = poly_g(&rat(29, 10));
        let expect = [
            rat(22707, 100),
            rat(-135169, 250),
            rat(10384, 25),
            rat(-512, 5),
        ];
        assert_eq!(g.coeffs(), &expect);
        assert_eq!(poly_f(&int(1)), qpoly(&[1, -18, -108, -864]));
        assert_eq!(poly_f(&int(2)), qpoly(&[16, -108, 0, -432]));
        assert!(poly_f(&int(1)).eval(&rat(1, 24)).is_zero());
        assert!(poly_f(&rat(12, 5)).eval(&rat(1, 5)).is_zero());
    }

    #[test]
    fn eta_bar_is_root() {
        let e = eta_bar();
        assert!(eta_bar_poly()
            .map(|c| QuadExt::rational(c.clone()))
            .eval(&e)
            .is_zero());
        assert!((e.to_f64() - 2.8412).abs() < 1e-4);
    }

    #[test]
    fn discriminants_factor() {
        for e in [rat(1, 2), rat(2, 1), rat(29, 10), rat(12, 5), rat(7, 3)] {
            let dg = crate::exact::resultant::discriminant(&poly_g(&e));
            let df = crate::exact::resultant::discriminant(&poly_f(&e));
            assert_eq!(dg, disc_g_factored(&e), "g at {e}");
            assert_eq!(df, disc_f_factored(&e), "f at {e}");
        }
    }

    #[test]
    fn eta_one() {
        let c = classify_q(1, 1);
        assert_eq!(c.regime, Regime::OneRealRoot);
        assert_eq!(c.nontrivial.len(), 1);
        let s = &c.nontrivial[0];
        assert!(s.rho.eq_exact(&Number::Rational(rat(27, 32))));
        assert!(s.x.eq_exact(&Number::Rational(rat(3, 8))));
        assert!(s.y.eq_exact(&Number::Rational(rat(3, 8))));
        let z = QuadExt::sqrt_rational(&rat(1, 24)).unwrap();
        assert!(s.z.eq_exact(&Number::Quad(z)));
        assert!(c.rt2.eq_exact(&Number::Rational(rat(3, 8))));
        assert!(c.trivial[1].x.eq_exact(&Number::Rational(rat(3, 2))));
        assert!(c.trivial[1].y.eq_exact(&Number::Rational(rat(1, 2))));
    }

    #[test]
    fn eta_two_cubics() {
        let c = classify_q(2, 1);
        assert_eq!(c.nontrivial.len(), 1);
        let s = &c.nontrivial[0];
        assert!((s.rho.to_f64() - 1.1746).abs() < 1e-4);
        assert!((s.z.to_f64() - 0.371).abs() < 1e-3);
        let xa = s.x.to_algebraic();
        let ya = s.y.to_algebraic();
        assert_eq!(xa.sign_of_poly(&qpoly(&[-3, 73, -60, 36])), Sign::Zero);
        assert_eq!(ya.sign_of_poly(&qpoly(&[-6, 19, -24, 12])), Sign::Zero);
    }

    #[test]
    fn eta_twelve_fifths() {
        let c = classify_q(12, 5);
        assert_eq!(c.regime, Regime::Boundary);
        assert_eq!(c.nontrivial.len(), 1);
        let s = &c.nontrivial[0];
        assert!(s.rho.eq_exact(&Number::Rational(rat(5, 4))));
        assert!(s
            .z
            .eq_exact(&Number::Quad(QuadExt::sqrt_rational(&rat(1, 5)).unwrap())));
        assert!(s.x.eq_exact(&Number::Rational(int(0))));
        assert_eq!(c.complex.len(), 1);
        let cb = &c.complex[0];
        assert!(cb.rho.eq_exact(&Number::Rational(rat(9, 20))));
        assert_eq!(cb.multiplicity, 2);
        assert!(cb
            .x_poly
            .as_ref()
            .unwrap()
            .proportional(&qpoly(&[64, -45, 25])));
    }

    #[test]
    fn eta_twenty_sevenths() {
        let c = classify_q(20, 7);
        assert_eq!(c.regime, Regime::Boundary);
        assert_eq!(c.nontrivial.len(), 3);
        assert_eq!(c.distinct_rho(), 2);
        let simple: Vec<_> = c
            .nontrivial
            .iter()
            .filter(|s| s.multiplicity == 1)
            .collect();
        assert_eq!(simple.len(), 1);
        assert!(simple[0].rho.eq_exact(&Number::Rational(rat(27, 28))));
        let z = QuadExt::sqrt_rational(&rat(25, 21)).unwrap();
        assert!(simple[0].z.eq_exact(&Number::Quad(-z)));
        let quartic = qpoly(&[400, 0, -1365, 0, 441]);
        let r21 = 21f64.sqrt();
        let r5 = 5f64.sqrt();
        let want = [
            (-5.0 * r21 + 21.0 * r5) / 42.0,
            (-5.0 * r21 - 21.0 * r5) / 42.0,
        ];
        for s in c.nontrivial.iter().filter(|s| s.multiplicity == 2) {
            assert!(s.rho.eq_exact(&Number::Rational(rat(5, 4))));
            assert_eq!(s.z.to_algebraic().sign_of_poly(&quartic), Sign::Zero);
            assert!(want.iter().any(|w| (w - s.z.to_f64()).abs() < 1e-12));
        }
    }

    #[test]
    fn eta_twenty_nine_tenths() {
        let c = classify_q(29, 10);
        assert_eq!(c.regime, Regime::ThreeRealRoots);
        let got: Vec<(f64, f64)> = c
            .nontrivial
            .iter()
            .map(|s| (s.z.to_f64(), s.rho.to_f64()))
            .collect();
        let want = [(0.59227, 1.2370), (-0.93909, 0.9687), (-2.3005, 1.8506)];
        assert_eq!(got.len(), 3);
        for ((z, r), (wz, wr)) in got.iter().zip(want) {
            assert!((z - wz).abs() < 1e-4, "{z} vs {wz}");
            assert!((r - wr).abs() < 1e-4, "{r} vs {wr}");
        }
    }

    #[test]
    fn eta_bar_exact() {
        let c = classify_eta_bar().unwrap();
        assert_eq!(c.regime, Regime::Boundary);
        assert_eq!(c.nontrivial.len(), 2);
        let rho1 = QuadExt::new(rat(7911, 12544), rat(1035, 12544), 57).unwrap();
        let rho2 = QuadExt::new(rat(9, 16), rat(1, 16), 57).unwrap();
        let s1 = c.nontrivial.iter().find(|s| s.multiplicity == 1).unwrap();
        let s2 = c.nontrivial.iter().find(|s| s.multiplicity == 2).unwrap();
        assert!(s1.rho.eq_exact(&Number::Quad(rho1)));
        assert!(s2.rho.eq_exact(&Number::Quad(rho2)));
        assert!((s1.z.to_f64() - 0.5660).abs() < 1e-4);
        assert!((s2.z.to_f64() + 1.3124).abs() < 1e-4);
    }

    #[test]
    fn trivial_poles_solve_system() {
        for (n, d) in [(1, 2), (1, 1), (12, 5), (29, 10)] {
            let e = rat(n, d);
            let c = classify_q(n, d);
            for s in &c.trivial {
                let r = eqnl_residuals(
                    &e,
                    &s.x.to_rational().unwrap(),
                    &s.y.to_rational().unwrap(),
                    &s.rho.to_rational().unwrap(),
                );
                assert!(r.iter().all(|v| v.is_zero()));
            }
        }
    }

    #[test]
    fn orthocenter_values() {
        let o = orthocenter_pyramid(&int(2)).unwrap();
        assert_eq!(o[2], QuadExt::sqrt_rational(&rat(1, 3)).unwrap());
        let o = orthocenter_pyramid(&int(1)).unwrap();
        assert_eq!(o[2], QuadExt::sqrt_rational(&rat(1, 24)).unwrap());
        let c = classify_q(2, 1);
        assert!((c.nontrivial[0].z.to_f64() - o[2].to_f64()).abs() > 0.1);
    }

    #[test]
    fn sphere_centers_certified() {
        for (n, d) in [(1, 1), (2, 1), (12, 5), (29, 10)] {
            let c = classify_q(n, d);
            for s in &c.nontrivial {
                let cfg = cartesian_config(&c.eta, s, 20).unwrap();
                assert!(cfg.max_residual_width < rat(1, 10i64.pow(18)));
            }
        }
    }

    #[test]
    fn twelve_fifths_reflections() {
        let c = classify_q(12, 5);
        let cfg = cartesian_config(&c.eta, &c.nontrivial[0], 16).unwrap();
        // w₀ is the circumcenter, the lateral centers its mirror images
        let w = cfg.centers_f64();
        let rt = (1.25f64).sqrt();
        let apex = cfg.vertices_f64()[0];
        for wi in &w {
            let d: f64 = wi
                .iter()
                .zip(apex)
                .map(|(a, b)| (a - b).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!((d - rt).abs() < 1e-12);
        }
        assert!(w[0][0].abs() < 1e-15 && w[0][1].abs() < 1e-15);
    }
}
