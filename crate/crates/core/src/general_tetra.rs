//! Four equal spheres through a common point `P` for an arbitrary
//! tetrahedron, each passing through the three vertices of one face.
//!
//! With squared edge lengths `dᵢⱼ`, distance coordinates
//! `(X, Y, Z, W) = (‖P−v₀‖², …, ‖P−v₃‖²)` and squared radius `ρ`, the system
//! has five equations, each a 6×6 Cayley–Menger determinant:
//!
//! * `P` lies in the space of the tetrahedron (points `P, v₀, …, v₃`);
//! * for each face `k`, a center at squared distance `ρ` from `P` and from
//!   the three vertices other than `vₖ` exists (points `O, P` and the face).

use nalgebra::{DMatrix, DVector};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cayley_menger::{
    circumradius_sq_pyramid, cm_membership_residual, cm_sphere_residual, distance_matrix, exact_det,
};
use crate::error::{Error, Result};
use crate::exact::matrix::{det_expansion, Matrix};
use crate::exact::{format_rational, qpoly, rat, MPoly, QuadExt, Rational, Ring, UniPoly};
use crate::pyramid::eqnl_polys;

/// Squared edge lengths `[d₀₁, d₀₂, d₀₃, d₁₂, d₁₃, d₂₃]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TetraParams {
    #[serde(serialize_with = "ser_edges")]
    d: [Rational; 6],
}

fn ser_edges<S: serde::Serializer>(
    d: &[Rational; 6],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(6))?;
    for x in d {
        seq.serialize_element(&format_rational(x))?;
    }
    seq.end()
}

impl TetraParams {
    /// Rejects non-positive edges and degenerate (flat or non-Euclidean)
    /// distance data: the bordered determinant must equal `288·vol² > 0`.
    pub fn new(d: [Rational; 6]) -> Result<Self> {
        if d.iter().any(|x| x <= &Rational::zero()) {
            return Err(Error::Domain(
                "squared edge lengths must be positive".into(),
            ));
        }
        let m = distance_matrix(4, &d)?;
        let bordered: Vec<Vec<Rational>> = (0..5)
            .map(|i| {
                (0..5)
                    .map(|j| match (i, j) {
                        (0, 0) => Rational::zero(),
                        (0, _) | (_, 0) => Rational::one(),
                        _ => m[i - 1][j - 1].clone(),
                    })
                    .collect()
            })
            .collect();
        let det = exact_det(bordered)?;
        if det <= Rational::zero() {
            return Err(Error::Domain(format!(
                "not a solid tetrahedron (Cayley-Menger determinant {})",
                format_rational(&det)
            )));
        }
        Ok(TetraParams { d })
    }

    pub fn regular() -> Self {
        Self::new(std::array::from_fn(|_| Rational::one())).expect("regular tetrahedron")
    }

    /// Unit lateral edges from the apex and squared base edge `η`.
    pub fn pyramid(eta: &Rational) -> Result<Self> {
        let one = Rational::one();
        Self::new([
            one.clone(),
            one.clone(),
            one,
            eta.clone(),
            eta.clone(),
            eta.clone(),
        ])
    }

    pub fn edges(&self) -> &[Rational; 6] {
        &self.d
    }

    pub fn lifted<R: Ring>(&self) -> [R; 6] {
        std::array::from_fn(|i| R::from_rational(&self.d[i]))
    }

    /// Relabels vertices: new vertex `i` is old vertex `perm[i]`.
    pub fn permuted(&self, perm: [usize; 4]) -> Self {
        let m = distance_matrix(4, &self.d).expect("six edges");
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        TetraParams {
            d: pairs.map(|(i, j)| m[perm[i]][perm[j]].clone()),
        }
    }

    pub fn to_f64(&self) -> [f64; 6] {
        self.d.clone().map(|x| crate::exact::rational::to_f64(&x))
    }
}

/// The five residuals at distance coordinates `p` and squared radius `ρ`:
/// membership first, then the face opposite `v₀`, …, `v₃`.
pub fn general_system_residuals<R: Ring>(d: &[R; 6], p: &[R; 4], rho: &R) -> [R; 5] {
    let v = distance_matrix(4, d).expect("six edges");
    let mut out: Vec<R> = Vec::with_capacity(5);
    out.push(cm_membership_residual(&v, p).expect("matching sizes"));
    for k in 0..4 {
        let idx: Vec<usize> = (0..4).filter(|&i| i != k).collect();
        let face: Vec<Vec<R>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| v[i][j].clone()).collect())
            .collect();
        let pf: Vec<R> = idx.iter().map(|&i| p[i].clone()).collect();
        out.push(cm_sphere_residual(&face, &pf, rho).expect("matching sizes"));
    }
    out.try_into().expect("five residuals")
}

/// Plain (unbordered) 5×5 squared-distance determinant of `v₀, …, v₃, P`;
/// vanishes iff `P` lies on the circumsphere.
pub fn circumsphere_residual<R: Ring>(d: &[R; 6], p: &[R; 4]) -> R {
    let v = distance_matrix(4, d).expect("six edges");
    let m = Matrix::from_fn(5, |i, j| match (i, j) {
        (4, 4) => R::zero(),
        (4, k) | (k, 4) => p[k].clone(),
        (i, j) => v[i][j].clone(),
    });
    det_expansion(&m)
}

/// A point of the system together with its admissibility flags.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralSolution<T> {
    pub coords: [T; 4],
    pub rho: T,
    /// All of `X, Y, Z, W, ρ` are positive.
    pub geometrically_admissible: bool,
    /// `P` lies on the circumsphere.
    pub trivial: bool,
}

// ---------------------------------------------------------------------------
// Regular tetrahedron

/// `(8ρ−5)(8ρ−3)²(32ρ−27)(64ρ²−8ρ+1)`: the radii of the regular
/// tetrahedron with unit edges.
pub fn regular_eliminant() -> UniPoly<Rational> {
    qpoly(&[-5, 8]) * regular_quintic()
}

/// `131072ρ⁵ − 225280ρ⁴ + 129536ρ³ − 31488ρ² + 3528ρ − 243`, the eliminant of
/// the axis-restricted system at `η = 1`.
pub fn regular_quintic() -> UniPoly<Rational> {
    qpoly(&[-243, 3528, -31488, 129536, -225280, 131072])
}

/// The quintic in factored form `(8ρ−3)²(32ρ−27)(64ρ²−8ρ+1)`.
pub fn regular_quintic_factored() -> UniPoly<Rational> {
    let p = qpoly(&[-3, 8]);
    p.clone() * p * qpoly(&[-27, 32]) * qpoly(&[1, -8, 64])
}

/// Representative solutions for the unit regular tetrahedron: the south
/// pole of the circumsphere (`ρ = 3/8`, trivial), the center
/// (`ρ = 27/32`) and the six permutations of
/// `((5+√7)/4, (5+√7)/4, (5−√7)/4, (5−√7)/4)` at `ρ = 5/8`. Each one is
/// checked exactly in `Q(√7)` before it is returned.
pub fn regular_solutions() -> Result<Vec<GeneralSolution<QuadExt>>> {
    let q = |r: Rational| QuadExt::rational(r);
    let a = QuadExt::new(rat(5, 4), rat(1, 4), 7)?;
    let b = QuadExt::new(rat(5, 4), rat(-1, 4), 7)?;
    let mut pts: Vec<([QuadExt; 4], QuadExt)> = vec![
        (
            [q(rat(3, 2)), q(rat(1, 2)), q(rat(1, 2)), q(rat(1, 2))],
            q(rat(3, 8)),
        ),
        (
            [q(rat(3, 8)), q(rat(3, 8)), q(rat(3, 8)), q(rat(3, 8))],
            q(rat(27, 32)),
        ),
    ];
    for pair in [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]] {
        let c: [QuadExt; 4] = std::array::from_fn(|i| {
            if pair.contains(&i) {
                a.clone()
            } else {
                b.clone()
            }
        });
        pts.push((c, q(rat(5, 8))));
    }
    let d = TetraParams::regular().lifted::<QuadExt>();
    let eliminant = regular_eliminant();
    pts.into_iter()
        .map(|(c, rho)| {
            let r = general_system_residuals(&d, &c, &rho);
            if r.iter().any(|x| !x.is_zero()) {
                return Err(Error::NotASolution(format!("regular point at rho = {rho}")));
            }
            let qe = eliminant.map(|x| QuadExt::rational(x.clone()));
            if !qe.eval(&rho).is_zero() {
                return Err(Error::NotASolution(format!(
                    "rho = {rho} off the eliminant"
                )));
            }
            let positive = c.iter().chain([&rho]).all(|x| x > &QuadExt::zero());
            let trivial = circumsphere_residual(&d, &c).is_zero();
            Ok(GeneralSolution {
                coords: c,
                rho,
                geometrically_admissible: positive,
                trivial,
            })
        })
        .collect()
}

impl GeneralSolution<QuadExt> {
    pub fn to_json(&self, digits: usize) -> serde_json::Value {
        let dec = |x: &QuadExt| format!("{:.*}", digits.min(17), x.to_f64());
        serde_json::json!({
            "rho": self.rho.to_json(),
            "coords": self.coords.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
            "decimal": {
                "rho": dec(&self.rho),
                "coords": self.coords.iter().map(dec).collect::<Vec<_>>(),
            },
            "geometrically_admissible": self.geometrically_admissible,
            "trivial": self.trivial,
        })
    }
}

/// Full report for the unit regular tetrahedron: eliminants, every
/// representative solution and the Cartesian example.
pub fn regular_report(digits: usize) -> Result<serde_json::Value> {
    let sols = regular_solutions()?;
    let nontrivial = sols
        .iter()
        .filter(|s| s.geometrically_admissible && !s.trivial)
        .count();
    let (o, w) = regular_example_cartesian();
    Ok(serde_json::json!({
        "d": TetraParams::regular().d.iter().map(format_rational).collect::<Vec<_>>(),
        "eliminant": regular_eliminant().fmt_var("rho"),
        "eliminant_factored": "(8rho-5)(8rho-3)^2(32rho-27)(64rho^2-8rho+1)",
        "axis_quintic": regular_quintic().fmt_var("rho"),
        "quintic_identity": regular_quintic() == regular_quintic_factored(),
        "solutions": sols.iter().map(|s| s.to_json(digits)).collect::<Vec<_>>(),
        "nontrivial_admissible": nontrivial,
        "example": { "Ostar": o, "centers": w },
    }))
}

/// Cartesian data of one `ρ = 5/8` solution in the frame of the pyramid
/// vertices: `O*` and centers `w₀, …, w₃`.
pub fn regular_example_cartesian() -> ([f64; 3], [[f64; 3]; 4]) {
    let r3 = 3f64.sqrt();
    let r6 = 6f64.sqrt();
    let r7 = 7f64.sqrt();
    let r21 = 21f64.sqrt();
    let r42 = 42f64.sqrt();
    let ostar = [0.0, -r21 / 6.0, (r6 - r42) / 12.0];
    let w = [
        [0.0, 0.0, -r42 / 12.0],
        [0.0, -(1.0 + r7) * r3 / 9.0, (4.0 + r7) * r6 / 36.0],
        [
            (1.0 - r7) / 6.0,
            (1.0 - r7) * r3 / 18.0,
            (4.0 - r7) * r6 / 36.0,
        ],
        [
            (r7 - 1.0) / 6.0,
            (1.0 - r7) * r3 / 18.0,
            (4.0 - r7) * r6 / 36.0,
        ],
    ];
    (ostar, w)
}

// ---------------------------------------------------------------------------
// Pyramids at ρ = R_T²

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Locus {
    /// `Y = Z = W`: on the symmetry axis.
    Equidistant,
    /// In the plane of the base.
    Coplanar,
    /// On the circumsphere.
    Circumsphere,
}

/// `Y² − YZ + Z² − YW − ZW + W²`, zero on the axis.
pub fn locus_axis_factor(p: &[f64; 4]) -> f64 {
    let [_, y, z, w] = *p;
    y * y - y * z + z * z - y * w - z * w + w * w
}

/// `3X² + Y² − 2YZ + Z² − 2YW − 2ZW + W² − 6X + 3`, zero on the base plane
/// and on the circumsphere.
pub fn locus_plane_sphere_factor(p: &[f64; 4]) -> f64 {
    let [x, y, z, w] = *p;
    3.0 * x * x + y * y - 2.0 * y * z + z * z - 2.0 * y * w - 2.0 * z * w + w * w - 6.0 * x + 3.0
}

const RESIDUAL_TOL: f64 = 1e-8;
const LOCUS_TOL: f64 = 1e-8;

/// Which of the three loci contain a numerical solution with `ρ = R_T²` of
/// the pyramid with parameter `η`.
pub fn circumradius_locus_classify(eta: &Rational, p: &[f64; 4], rho: f64) -> Result<Vec<Locus>> {
    let rt2 = crate::exact::rational::to_f64(&circumradius_sq_pyramid(eta)?);
    if (rho - rt2).abs() > RESIDUAL_TOL {
        return Err(Error::Domain(format!(
            "rho = {rho} differs from R_T^2 = {rt2}"
        )));
    }
    let d = TetraParams::pyramid(eta)?.to_f64();
    let res = general_system_residuals(&d, p, &rho);
    let worst = res.iter().fold(0f64, |m, r| m.max(r.abs()));
    if worst > RESIDUAL_TOL {
        return Err(Error::NotASolution(format!("residual {worst:.3e}")));
    }
    let e = crate::exact::rational::to_f64(eta);
    let s = ((3.0 - e) / 3.0).sqrt();
    // X − mean(Y,Z,W) = s² − η/3 − 2zs; x² + y² = mean − z² − η/3
    let mean = (p[1] + p[2] + p[3]) / 3.0;
    let z = (s * s - e / 3.0 - p[0] + mean) / (2.0 * s);
    let rad2 = mean - z * z - e / 3.0;
    let zc = (s * s - e / 3.0) / (2.0 * s);
    let mut out = Vec::new();
    if locus_axis_factor(p).abs() < LOCUS_TOL {
        out.push(Locus::Equidistant);
    }
    if z.abs() < LOCUS_TOL {
        out.push(Locus::Coplanar);
    }
    if (rad2 + (z - zc).powi(2) - rt2).abs() < LOCUS_TOL {
        out.push(Locus::Circumsphere);
    }
    if out.is_empty() {
        return Err(Error::NotASolution(format!(
            "point lies on none of the loci (factors {:.3e}, {:.3e})",
            locus_axis_factor(p),
            locus_plane_sphere_factor(p)
        )));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Numerical refinement

#[derive(Clone, Copy, Debug)]
pub struct NewtonOptions {
    pub max_iter: usize,
    /// Success threshold on the max-norm of the residuals.
    pub tol: f64,
    /// Iterates with a coordinate beyond this bound count as divergent.
    pub bound: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions {
            max_iter: 100,
            tol: 1e-12,
            bound: 1e5,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Refined {
    pub solution: GeneralSolution<f64>,
    pub iterations: usize,
    pub residual: f64,
}

fn max_norm(v: &DVector<f64>) -> f64 {
    v.iter().fold(0f64, |m, x| m.max(x.abs()))
}

/// Damped Gauss–Newton on `F(u) = 0` with a central-difference Jacobian.
/// Square systems reduce to Newton; overdetermined ones to least squares.
fn gauss_newton(
    f: &dyn Fn(&DVector<f64>) -> DVector<f64>,
    seed: DVector<f64>,
    opts: &NewtonOptions,
    require_regular: bool,
) -> Result<(DVector<f64>, usize, f64)> {
    if seed.iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain("seed is not finite".into()));
    }
    let n = seed.len();
    let mut u = seed;
    let mut r = f(&u);
    let m = r.len();
    let jacobian = |u: &DVector<f64>| {
        let mut j = DMatrix::zeros(m, n);
        for k in 0..n {
            let h = 1e-7 * u[k].abs().max(1.0);
            let (mut a, mut b) = (u.clone(), u.clone());
            a[k] += h;
            b[k] -= h;
            let col = (f(&a) - f(&b)) / (2.0 * h);
            j.set_column(k, &col);
        }
        j
    };
    for it in 0..=opts.max_iter {
        if u.iter().any(|x| !x.is_finite() || x.abs() > opts.bound) {
            return Err(Error::Divergence(format!(
                "iterate left the box at step {it}"
            )));
        }
        let norm = max_norm(&r);
        if norm < opts.tol {
            if !require_regular {
                return Ok((u, it, norm));
            }
            let j = jacobian(&u);
            let sv = j.singular_values();
            let (lo, hi) = (sv.min(), sv.max());
            if lo <= 1e-8 * hi.max(1.0) {
                return Err(Error::SingularJacobian(it));
            }
            return Ok((u, it, norm));
        }
        if it == opts.max_iter {
            break;
        }
        let j = jacobian(&u);
        let step = j
            .clone()
            .svd(true, true)
            .solve(&(-&r), 1e-14)
            .map_err(|_| Error::SingularJacobian(it))?;
        let mut lambda = 1.0;
        let base = r.norm();
        loop {
            let cand = &u + &step * lambda;
            let rc = f(&cand);
            if rc.norm() < base || lambda < 1e-6 {
                u = cand;
                r = rc;
                break;
            }
            lambda *= 0.5;
        }
    }
    Err(Error::Divergence(format!(
        "no convergence in {} iterations (residual {:.3e})",
        opts.max_iter,
        max_norm(&r)
    )))
}

fn flags(d: &[f64; 6], p: &[f64; 4], rho: f64) -> GeneralSolution<f64> {
    let scale = d.iter().chain(p).fold(1f64, |m, x| m.max(x.abs()));
    GeneralSolution {
        coords: *p,
        rho,
        geometrically_admissible: p.iter().all(|x| *x > 0.0) && rho > 0.0,
        trivial: circumsphere_residual(d, p).abs() < 1e-8 * scale.powi(4),
    }
}

/// Newton on all five unknowns `(X, Y, Z, W, ρ)`.
pub fn numeric_refine(t: &TetraParams, seed: [f64; 5]) -> Result<Refined> {
    numeric_refine_with(t, seed, &NewtonOptions::default())
}

pub fn numeric_refine_with(
    t: &TetraParams,
    seed: [f64; 5],
    opts: &NewtonOptions,
) -> Result<Refined> {
    let d = t.to_f64();
    let f = |u: &DVector<f64>| {
        let p = [u[0], u[1], u[2], u[3]];
        DVector::from_row_slice(&general_system_residuals(&d, &p, &u[4]))
    };
    let (u, iterations, residual) = gauss_newton(&f, DVector::from_row_slice(&seed), opts, true)?;
    let p = [u[0], u[1], u[2], u[3]];
    Ok(Refined {
        solution: flags(&d, &p, u[4]),
        iterations,
        residual,
    })
}

/// Least squares in `(X, Y, Z, W)` with `ρ` held fixed. Solutions may form
/// a continuum here (at `ρ = R_T²` every point of the circumsphere
/// qualifies), so no regularity is demanded at the limit.
pub fn numeric_refine_fixed_rho(t: &TetraParams, seed: [f64; 4], rho: f64) -> Result<Refined> {
    let d = t.to_f64();
    let f = |u: &DVector<f64>| {
        let p = [u[0], u[1], u[2], u[3]];
        DVector::from_row_slice(&general_system_residuals(&d, &p, &rho))
    };
    let (u, iterations, residual) = gauss_newton(
        &f,
        DVector::from_row_slice(&seed),
        &NewtonOptions::default(),
        false,
    )?;
    let p = [u[0], u[1], u[2], u[3]];
    Ok(Refined {
        solution: flags(&d, &p, rho),
        iterations,
        residual,
    })
}

// ---------------------------------------------------------------------------
// Restriction to the pyramid axis

/// The five residuals with `d₀ᵢ = 1`, `dᵢⱼ = η` and `Z = W = Y`, as
/// polynomials in `eta, X, Y, rho`.
pub fn specialized_residuals() -> [MPoly; 5] {
    let v = MPoly::var;
    let (one, eta) = (MPoly::int(1), v("eta"));
    let d = [one.clone(), one.clone(), one, eta.clone(), eta.clone(), eta];
    let p = [v("X"), v("Y"), v("Y"), v("Y")];
    general_system_residuals(&d, &p, &v("rho"))
}

/// Each specialized residual divided by the axis equation it reduces to
/// (membership ↦ first, base face ↦ second, lateral faces ↦ third). The
/// cofactors involve `η` alone.
pub fn specialization_cofactors() -> Result<[MPoly; 5]> {
    let [e1, e2, e3] = eqnl_polys();
    let targets = [&e1, &e2, &e3, &e3, &e3];
    let res = specialized_residuals();
    let mut out = Vec::with_capacity(5);
    for (r, t) in res.iter().zip(targets) {
        let c = r
            .div_exact(t)
            .ok_or_else(|| Error::NotASolution(format!("{r} is not a multiple of {t}")))?;
        if c.is_zero() || c.variables().iter().any(|x| x != "eta") {
            return Err(Error::NotASolution(format!(
                "cofactor {c} is not a function of eta"
            )));
        }
        out.push(c);
    }
    Ok(out.try_into().expect("five cofactors"))
}

/// Exact check at one rational point: every residual of the general system
/// equals its cofactor times the matching axis equation, and no cofactor
/// vanishes.
pub fn check_specialization_at(
    cofactors: &[MPoly; 5],
    eta: &Rational,
    x: &Rational,
    y: &Rational,
    rho: &Rational,
) -> bool {
    let one = Rational::one();
    let d = [
        one.clone(),
        one.clone(),
        one,
        eta.clone(),
        eta.clone(),
        eta.clone(),
    ];
    let p = [x.clone(), y.clone(), y.clone(), y.clone()];
    let general = general_system_residuals(&d, &p, rho);
    let axis = crate::pyramid::eqnl_residuals(eta, x, y, rho);
    let targets = [0, 1, 2, 2, 2];
    general
        .iter()
        .zip(cofactors)
        .zip(targets)
        .all(|((g, c), k)| {
            let cv = c.eval(&|_: &str| eta.clone());
            !cv.is_zero() && *g == cv * axis[k].clone()
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    #[test]
    fn regular_center_and_noncyclic_vanish() {
        let sols = regular_solutions().unwrap();
        assert_eq!(sols.len(), 8);
        let nontrivial: Vec<_> = sols
            .iter()
            .filter(|s| s.geometrically_admissible && !s.trivial)
            .collect();
        assert_eq!(nontrivial.len(), 7);
        assert!(sols[0].trivial);
        assert_eq!(sols[1].coords[0], QuadExt::rational(rat(3, 8)));
    }

    #[test]
    fn random_point_is_not_a_solution() {
        let d = TetraParams::regular().lifted::<Rational>();
        let r =
            general_system_residuals(&d, &[rat(1, 2), rat(2, 3), int(1), rat(5, 7)], &rat(1, 3));
        assert!(r.iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn eliminant_factorizations() {
        assert_eq!(regular_quintic(), regular_quintic_factored());
        assert_eq!(regular_eliminant().degree(), Some(6));
        for r in [rat(5, 8), rat(3, 8), rat(27, 32)] {
            assert!(regular_eliminant().eval(&r).is_zero());
        }
        // 5/8 is a root of the sextic only
        assert!(!regular_quintic().eval(&rat(5, 8)).is_zero());
    }

    #[test]
    fn cartesian_example_incidences() {
        let v = crate::pyramid::pyramid_vertices(&crate::exact::Number::Rational(int(1)), 64)
            .map(|p| p.map(|c| c.mid_f64()));
        let (o, w) = regular_example_cartesian();
        let dist2 = |a: &[f64; 3], b: &[f64; 3]| -> f64 {
            a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum()
        };
        for (i, wi) in w.iter().enumerate() {
            assert!((dist2(wi, &o) - 0.625).abs() < 1e-12);
            for (j, vj) in v.iter().enumerate() {
                if i != j {
                    assert!((dist2(wi, vj) - 0.625).abs() < 1e-12, "w{i} v{j}");
                }
            }
        }
    }

    #[test]
    fn newton_from_seed() {
        let t = TetraParams::regular();
        let r = numeric_refine(&t, [1.9, 1.9, 0.6, 0.6, 0.62]).unwrap();
        let a = (5.0 + 7f64.sqrt()) / 4.0;
        let b = (5.0 - 7f64.sqrt()) / 4.0;
        let want = [a, a, b, b, 0.625];
        let got = [
            r.solution.coords[0],
            r.solution.coords[1],
            r.solution.coords[2],
            r.solution.coords[3],
            r.solution.rho,
        ];
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-10);
        }
        let exact = numeric_refine(&t, [0.375, 0.375, 0.375, 0.375, 27.0 / 32.0]).unwrap();
        assert_eq!(exact.iterations, 0);
        assert!(matches!(
            numeric_refine(&t, [1e6; 5]),
            Err(Error::Divergence(_))
        ));
        // the trivial solutions fill the circumsphere, so they are not isolated
        assert!(matches!(
            numeric_refine(&t, [1.5, 0.5, 0.5, 0.5, 0.375]),
            Err(Error::SingularJacobian(_))
        ));
    }

    #[test]
    fn loci_at_circumradius() {
        let l = circumradius_locus_classify(&int(1), &[0.0, 1.0, 1.0, 1.0], 0.375).unwrap();
        assert!(l.contains(&Locus::Equidistant) && l.contains(&Locus::Circumsphere));
        assert!(matches!(
            circumradius_locus_classify(&int(1), &[0.375; 4], 0.375),
            Err(Error::NotASolution(_))
        ));
        // η = 3/2: the circumcenter lies in the base plane, and the point of
        // the base circle opposite v₁ is both coplanar and cospherical
        let eta = rat(3, 2);
        let l = circumradius_locus_classify(&eta, &[1.0, 2.0, 0.5, 0.5], 0.5).unwrap();
        assert!(l.contains(&Locus::Coplanar) && l.contains(&Locus::Circumsphere));
        // refinement at fixed ρ lands somewhere on the circumsphere
        let t = TetraParams::pyramid(&eta).unwrap();
        let r = numeric_refine_fixed_rho(&t, [1.01, 1.98, 0.51, 0.49], 0.5).unwrap();
        let l = circumradius_locus_classify(&eta, &r.solution.coords, 0.5).unwrap();
        assert!(l.contains(&Locus::Circumsphere));
    }

    #[test]
    fn axis_restriction_identity() {
        let c = specialization_cofactors().unwrap();
        for (e, x, y, r) in [
            (rat(1, 2), rat(3, 7), rat(2, 5), rat(9, 11)),
            (int(2), rat(-1, 3), rat(5, 2), rat(1, 4)),
        ] {
            assert!(check_specialization_at(&c, &e, &x, &y, &r));
        }
    }

    #[test]
    fn permutation_relabels_residuals() {
        let t = TetraParams::new([
            int(1),
            rat(6, 5),
            rat(4, 3),
            rat(3, 2),
            rat(7, 5),
            rat(5, 4),
        ])
        .unwrap();
        let p = [rat(1, 2), rat(2, 3), rat(3, 4), rat(4, 5)];
        let rho = rat(5, 6);
        let base = general_system_residuals(&t.lifted::<Rational>(), &p, &rho);
        let perm = [2, 0, 3, 1];
        let tp = t.permuted(perm);
        let pp = perm.map(|i| p[i].clone());
        let moved = general_system_residuals(&tp.lifted::<Rational>(), &pp, &rho);
        assert_eq!(moved[0], base[0]);
        for k in 0..4 {
            assert_eq!(moved[k + 1], base[perm[k] + 1]);
        }
    }
}
