//! Three equal circles through a common point, each passing through two
//! vertices of a triangle.
//!
//! Vertices `v₀, v₁, v₂` with squared sides `A = ‖v₁−v₂‖²`, `B = ‖v₀−v₂‖²`,
//! `C = ‖v₀−v₁‖²`. The common point `P` has distance coordinates
//! `(X, Y, Z) = (‖P−v₀‖², ‖P−v₁‖², ‖P−v₂‖²)` and the circles have squared
//! radius `ρ`.

use std::sync::OnceLock;

use serde::Serialize;

use crate::cayley_menger::{
    circumradius_sq_triangle, cm_membership_residual, cm_sphere_residual, distance_matrix, theta,
};
use crate::error::{Error, Result};
use crate::exact::{format_rational, Field, MPoly, QuadExt, Rational, Ring};

/// Squared side lengths of a non-degenerate triangle.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TriangleParams {
    #[serde(serialize_with = "ser_rational")]
    a: Rational,
    #[serde(serialize_with = "ser_rational")]
    b: Rational,
    #[serde(serialize_with = "ser_rational")]
    c: Rational,
}

pub(crate) fn ser_rational<S: serde::Serializer>(
    r: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

impl TriangleParams {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        let zero = Rational::from_integer(0.into());
        if a <= zero || b <= zero || c <= zero {
            return Err(Error::DegenerateTriangle(
                "squared sides must be positive".into(),
            ));
        }
        circumradius_sq_triangle(&a, &b, &c)?;
        Ok(TriangleParams { a, b, c })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    /// `2(AB+AC+BC) − (A²+B²+C²)`.
    pub fn theta(&self) -> Rational {
        theta(&self.a, &self.b, &self.c)
    }

    pub fn circumradius_sq(&self) -> Rational {
        &self.a * &self.b * &self.c / self.theta()
    }
}

/// The four polynomials of the planar system, written out term by term.
/// The first says `P` lies in the plane of the triangle; the other three
/// say `P` lies on a circle of squared radius `ρ` through `{v₁,v₂}`,
/// `{v₀,v₂}` and `{v₀,v₁}` respectively.
pub fn plane_system_residuals<R: Ring>(
    a: &R,
    b: &R,
    c: &R,
    x: &R,
    y: &R,
    z: &R,
    rho: &R,
) -> [R; 4] {
    let two = R::from_i64(2);
    let (a, b, c, x, y, z) = (
        a.clone(),
        b.clone(),
        c.clone(),
        x.clone(),
        y.clone(),
        z.clone(),
    );
    let e1 = two.clone()
        * (-(a.clone() * a.clone() * x.clone()) - a.clone() * b.clone() * c.clone()
            + a.clone() * b.clone() * x.clone()
            + a.clone() * b.clone() * y.clone()
            + a.clone() * c.clone() * x.clone()
            + a.clone() * c.clone() * z.clone()
            - a.clone() * x.clone() * x.clone()
            + a.clone() * x.clone() * y.clone()
            + a.clone() * x.clone() * z.clone()
            - a.clone() * y.clone() * z.clone()
            - b.clone() * b.clone() * y.clone()
            + b.clone() * c.clone() * y.clone()
            + b.clone() * c.clone() * z.clone()
            + b.clone() * x.clone() * y.clone()
            - b.clone() * x.clone() * z.clone()
            - b.clone() * y.clone() * y.clone()
            + b.clone() * y.clone() * z.clone()
            - c.clone() * c.clone() * z.clone()
            - c.clone() * x.clone() * y.clone()
            + c.clone() * x.clone() * z.clone()
            + c.clone() * y.clone() * z.clone()
            - c.clone() * z.clone() * z.clone());
    let circle = |s: &R, p: &R, q: &R| {
        rho.clone()
            * (two.clone()
                * (s.clone() * p.clone() + s.clone() * q.clone() + p.clone() * q.clone())
                - s.clone() * s.clone()
                - p.clone() * p.clone()
                - q.clone() * q.clone())
            - s.clone() * p.clone() * q.clone()
    };
    [
        e1,
        circle(&a, &y, &z),
        circle(&b, &x, &z),
        circle(&c, &x, &y),
    ]
}

/// The same four conditions as bordered determinants: membership of `P` in
/// the plane of the triangle, then sphere conditions for the three edges.
pub fn plane_system_cm<R: Ring>(a: &R, b: &R, c: &R, x: &R, y: &R, z: &R, rho: &R) -> [R; 4] {
    let tri = distance_matrix(3, &[c.clone(), b.clone(), a.clone()]).expect("three points");
    let edge = |d: &R| distance_matrix(2, std::slice::from_ref(d)).expect("two points");
    let ok = "coordinate count matches";
    [
        cm_membership_residual(&tri, &[x.clone(), y.clone(), z.clone()]).expect(ok),
        cm_sphere_residual(&edge(a), &[y.clone(), z.clone()], rho).expect(ok),
        cm_sphere_residual(&edge(b), &[x.clone(), z.clone()], rho).expect(ok),
        cm_sphere_residual(&edge(c), &[x.clone(), y.clone()], rho).expect(ok),
    ]
}

/// The planar system as polynomials in `A,B,C,X,Y,Z,rho`.
pub fn plane_system_polys() -> [MPoly; 4] {
    let v = |s: &str| MPoly::var(s);
    plane_system_residuals(
        &v("A"),
        &v("B"),
        &v("C"),
        &v("X"),
        &v("Y"),
        &v("Z"),
        &v("rho"),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PlaneKind {
    /// The common point is the orthocenter (non-trivial solution).
    Orthocenter,
    /// The common point lies on the circumcircle and the circles coincide
    /// with it.
    CircumcirclePoint,
    /// A solution of the degenerate components (collapsed triangle).
    Degenerate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlaneSolution {
    pub rho: Rational,
    pub coords: [Rational; 3],
    pub kind: PlaneKind,
}

impl PlaneSolution {
    pub fn to_json(&self, digits: usize) -> serde_json::Value {
        let dec = |r: &Rational| crate::exact::rational::to_decimal(r, digits);
        serde_json::json!({
            "rho": format_rational(&self.rho),
            "coords": self.coords.iter().map(format_rational).collect::<Vec<_>>(),
            "decimal": {
                "rho": dec(&self.rho),
                "coords": self.coords.iter().map(dec).collect::<Vec<_>>(),
            },
            "kind": self.kind,
        })
    }

    pub fn residuals(&self, t: &TriangleParams) -> [Rational; 4] {
        let [x, y, z] = &self.coords;
        plane_system_residuals(&t.a, &t.b, &t.c, x, y, z, &self.rho)
    }
}

/// `ρ = ABC/θ` with the orthocenter
/// `(A(B+C−A)², B(A+C−B)², C(A+B−C)²)/θ`.
pub fn johnson_solution(t: &TriangleParams) -> Result<PlaneSolution> {
    let th = t.theta();
    let (a, b, c) = (&t.a, &t.b, &t.c);
    let sq = |r: Rational| &r * &r;
    let coords = [
        a * sq(b + c - a) / &th,
        b * sq(a + c - b) / &th,
        c * sq(a + b - c) / &th,
    ];
    let sol = PlaneSolution {
        rho: t.circumradius_sq(),
        coords,
        kind: PlaneKind::Orthocenter,
    };
    if sol
        .residuals(t)
        .iter()
        .any(|r| !num_traits::Zero::is_zero(r))
    {
        return Err(Error::NotASolution("orthocenter residual nonzero".into()));
    }
    Ok(sol)
}

const CIRCUMCIRCLE_GENERATORS: [&str; 7] = [
    "B*Y^2-B*Y*Z-C*Y*Z+C*Z^2-B*Y-X*Y-C*Z-X*Z+2*Y*Z+X",
    "B*X*Y-C*X*Y-B*X*Z+C*X*Z+B*C-X^2-B*Y-C*Z+Y*Z+X",
    "B*C*Y-C*X*Y-C^2*Z+B*X*Z-B*Y*Z+C*Z^2-B*C+C*X-X*Z+Y*Z",
    "B^2*Y-C*X*Y-B*C*Z+B*X*Z-B*Y*Z+C*Z^2+B*C-B*X-B*Y-C*Z-X*Z+Y*Z+X",
    "B^2*X*Z-2*B*C*X*Z+C^2*X*Z-B^2*C+2*B*C*X-C*X^2+2*B*C*Z-2*B*X*Z-C*Z^2+X*Z",
    "C*X*Y^2-2*C*X*Y*Z+C*X*Z^2-2*C*X*Y-C^2*Z-X^2*Z+2*C*Y*Z+2*X*Y*Z-Y^2*Z+C*X",
    "C^2*X*Y-C*X^2*Y+B*C*X*Z-2*C^2*X*Z+B*X^2*Z-C*X*Y*Z-B*X*Z^2+2*C*X*Z^2-B*C^2\
     -B*C*X+2*C*X^2+C*X*Y+B*C*Z+2*C^2*Z-B*X*Z-2*X^2*Z-C*Y*Z+X*Y*Z-2*C*Z^2+Y*Z^2\
     +B*C-2*C*X+2*X*Z-Y*Z",
];

/// Generators of the circumcircle component, normalized to `A = 1`.
pub fn circumcircle_generators() -> &'static [MPoly; 7] {
    static GENS: OnceLock<[MPoly; 7]> = OnceLock::new();
    GENS.get_or_init(|| {
        CIRCUMCIRCLE_GENERATORS.map(|s| MPoly::parse(s).expect("literal generator parses"))
    })
}

/// Whether the point with distance coordinates `(X,Y,Z)` lies on the
/// circumcircle component. All six quantities are divided by `A` first.
pub fn circumcircle_check<F: Field>(a: &F, b: &F, c: &F, x: &F, y: &F, z: &F) -> Result<bool> {
    if a.is_zero() {
        return Err(Error::Domain("A = 0".into()));
    }
    let s = |v: &F| v.div(a);
    let (b, c, x, y, z) = (s(b), s(c), s(x), s(y), s(z));
    let lookup = |v: &str| -> F {
        match v {
            "B" => b.clone(),
            "C" => c.clone(),
            "X" => x.clone(),
            "Y" => y.clone(),
            "Z" => z.clone(),
            _ => unreachable!("generator variable {v}"),
        }
    };
    Ok(circumcircle_generators()
        .iter()
        .all(|q| q.eval(&lookup).is_zero()))
}

/// A point of the embedded triangle, in the frame scaled by `√A`.
pub type Point2 = [QuadExt; 2];

/// Cartesian embedding with coordinates in `Q(√θ)`.
///
/// The stored coordinates are the true ones multiplied by `√A`:
/// `v₁ = (0,0)`, `v₂ = (A,0)`, `v₀ = ((A−B+C)/2, √θ/2)`. Squared distances
/// are recovered by dividing by `A`, which keeps everything in one quadratic
/// field. For `A = 1` these are the true coordinates.
#[derive(Clone, Debug)]
pub struct TriangleEmbedding {
    a: Rational,
    b: Rational,
    c: Rational,
    theta: Rational,
    vertices: [Point2; 3],
}

fn q(r: Rational) -> QuadExt {
    QuadExt::rational(r)
}

impl TriangleEmbedding {
    pub fn vertices(&self) -> &[Point2; 3] {
        &self.vertices
    }

    pub fn scale(&self) -> &Rational {
        &self.a
    }

    /// True squared distance between two frame points.
    pub fn sq_dist(&self, p: &Point2, r: &Point2) -> QuadExt {
        let dx = p[0].clone() - r[0].clone();
        let dy = p[1].clone() - r[1].clone();
        (dx.clone() * dx + dy.clone() * dy).div(&q(self.a.clone()))
    }

    /// Distance coordinates `(X,Y,Z)` of a frame point.
    pub fn distance_coords(&self, p: &Point2) -> [QuadExt; 3] {
        let v = &self.vertices;
        [
            self.sq_dist(p, &v[0]),
            self.sq_dist(p, &v[1]),
            self.sq_dist(p, &v[2]),
        ]
    }

    /// True Cartesian coordinates in floating point.
    pub fn to_f64(&self, p: &Point2) -> [f64; 2] {
        let s = crate::exact::rational::to_f64(&self.a).sqrt();
        [p[0].to_f64() / s, p[1].to_f64() / s]
    }

    /// `√θ` as an element of the coordinate field.
    fn sqrt_theta(&self) -> QuadExt {
        QuadExt::sqrt_rational(&self.theta).expect("theta > 0")
    }

    /// Circumcenter `(A/2, A(B+C−A)/(2√θ))` in the frame.
    pub fn circumcenter(&self) -> Point2 {
        let half = Rational::new(1.into(), 2.into());
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let y = q(a * (b + c - a) * &half).div(&self.sqrt_theta());
        [q(a * &half), y]
    }

    /// Second intersection of the circumcircle with the line through `v₁`
    /// of slope `m`. As `m` runs over the rationals this sweeps every point
    /// of the circle except `v₁` and the point on the vertical through `v₁`.
    pub fn circumcircle_point(&self, m: &Rational) -> Point2 {
        let o = self.circumcenter();
        let mq = q(m.clone());
        let dot = o[0].clone() + mq.clone() * o[1].clone();
        let norm = q(Rational::from_integer(1.into()) + m * m);
        let s = q(Rational::from_integer(2.into())) * dot.div(&norm);
        [s.clone(), s * mq]
    }

    /// Barycentric combination `α v₀ + β v₁ + γ v₂` with `α+β+γ = 1`.
    pub fn barycentric(&self, alpha: &Rational, beta: &Rational) -> Point2 {
        let gamma = Rational::from_integer(1.into()) - alpha - beta;
        let w = [alpha, beta, &gamma];
        let mut p = [
            q(Rational::from_integer(0.into())),
            q(Rational::from_integer(0.into())),
        ];
        for (wi, v) in w.iter().zip(&self.vertices) {
            for k in 0..2 {
                p[k] = p[k].clone() + q((*wi).clone()) * v[k].clone();
            }
        }
        p
    }
}

/// Embeds the triangle with `v₁` at the origin and `v₂` on the positive
/// x-axis.
pub fn embed_triangle(t: &TriangleParams) -> Result<TriangleEmbedding> {
    let th = t.theta();
    let half = Rational::new(1.into(), 2.into());
    let sqrt_theta = QuadExt::sqrt_rational(&th)?;
    let zero = || q(Rational::from_integer(0.into()));
    let v0 = [
        q((&t.a - &t.b + &t.c) * &half),
        sqrt_theta * q(half.clone()),
    ];
    Ok(TriangleEmbedding {
        a: t.a.clone(),
        b: t.b.clone(),
        c: t.c.clone(),
        theta: th,
        vertices: [v0, [zero(), zero()], [q(t.a.clone()), zero()]],
    })
}

/// Intersection of the altitudes through `v₀` and `v₁`, computed in the
/// embedding frame.
pub fn orthocenter_cartesian_oracle(t: &TriangleParams) -> Result<(TriangleEmbedding, Point2)> {
    let e = embed_triangle(t)?;
    let [v0, _, v2] = e.vertices.clone();
    // The altitude through v₀ is the vertical x = v₀ₓ. The altitude through
    // v₁ = 0 is {p : p·(v₀ − v₂) = 0}.
    let dx = v0[0].clone() - v2[0].clone();
    let dy = v0[1].clone() - v2[1].clone();
    let x = v0[0].clone();
    let y = -(x.clone() * dx).div(&dy);
    Ok((e, [x, y]))
}
