//! Plain floating-point geometry used to cross-check the exact modules.
//!
//! Nothing here feeds back into a classification: the pyramid solver and the
//! R-body verdicts are exact, and these routines only confirm them from a
//! different direction (Cartesian coordinates and a bracketing root search
//! along the symmetry axis).

use std::ops::{Add, Mul, Sub};

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CartesianPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl CartesianPoint {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        CartesianPoint { x, y, z }
    }

    pub fn dot(&self, o: &Self) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(&self, o: &Self) -> Self {
        CartesianPoint::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm2(&self) -> f64 {
        self.dot(self)
    }

    pub fn dist2(&self, o: &Self) -> f64 {
        (*self - *o).norm2()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl From<[f64; 3]> for CartesianPoint {
    fn from(a: [f64; 3]) -> Self {
        CartesianPoint::new(a[0], a[1], a[2])
    }
}

impl Add for CartesianPoint {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        CartesianPoint::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for CartesianPoint {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        CartesianPoint::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for CartesianPoint {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        CartesianPoint::new(self.x * k, self.y * k, self.z * k)
    }
}

fn check_eta(eta: f64) -> Result<()> {
    if eta > 0.0 && eta < 3.0 {
        Ok(())
    } else {
        Err(Error::EtaOutOfRange(eta.to_string()))
    }
}

/// Apex above the origin, equilateral base in `z = 0` with `v₁` on the
/// positive `y`-axis.
pub fn embed_pyramid(eta: f64) -> Result<[CartesianPoint; 4]> {
    check_eta(eta)?;
    let s = ((3.0 - eta) / 3.0).sqrt();
    let r = (eta / 3.0).sqrt();
    let h = eta.sqrt() / 2.0;
    Ok([
        CartesianPoint::new(0.0, 0.0, s),
        CartesianPoint::new(0.0, r, 0.0),
        CartesianPoint::new(-h, -r / 2.0, 0.0),
        CartesianPoint::new(h, -r / 2.0, 0.0),
    ])
}

/// Height of the circumcenter, `(3−2η)/(2√(9−3η))`.
pub fn circumcenter_height(eta: f64) -> f64 {
    (3.0 - 2.0 * eta) / (2.0 * (9.0 - 3.0 * eta).sqrt())
}

/// Circumcenter and squared circumradius of a triangle in space.
pub fn face_circumcircle(
    face: &[CartesianPoint; 3],
) -> Result<(CartesianPoint, f64, CartesianPoint)> {
    let a = face[1] - face[0];
    let b = face[2] - face[0];
    let n = a.cross(&b);
    let n2 = n.norm2();
    if n2 <= 1e-24 * (a.norm2() * b.norm2()).max(f64::MIN_POSITIVE) {
        return Err(Error::DegenerateTriangle("collinear face".into()));
    }
    let offset = (n.cross(&a) * b.norm2() + b.cross(&n) * a.norm2()) * (1.0 / (2.0 * n2));
    let c = face[0] + offset;
    Ok((c, offset.norm2(), n * (1.0 / n2.sqrt())))
}

/// Centers of the spheres of radius `r` through the three points.
pub fn sphere_centers_through_face(
    face: &[CartesianPoint; 3],
    r: f64,
) -> Result<Vec<CartesianPoint>> {
    let (c, rf2, n) = face_circumcircle(face)?;
    let h2 = r * r - rf2;
    let tol = 1e-12 * rf2.max(1.0);
    Ok(if h2.abs() <= tol {
        vec![c]
    } else if h2 < 0.0 {
        vec![]
    } else {
        let h = h2.sqrt();
        vec![c + n * h, c - n * h]
    })
}

/// Intersection of the altitudes from `v₀` (the `z`-axis) and `v₁`.
pub fn orthocenter_by_altitudes(eta: f64) -> Result<CartesianPoint> {
    let v = embed_pyramid(eta)?;
    let (_, _, n) = face_circumcircle(&[v[0], v[2], v[3]])?;
    // v₁ + t·n has x = 0 already (n lies in the plane x = 0); solve y = 0
    if n.y.abs() < 1e-15 {
        return Err(Error::Domain("altitude parallel to the base".into()));
    }
    let t = -v[1].y / n.y;
    Ok(v[1] + n * t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxisLabel {
    /// `O*` at the apex.
    TrivialNorth,
    /// `O*` at the antipode of the apex on the circumsphere.
    TrivialSouth,
    NonTrivial,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AxisRoot {
    pub z: f64,
    pub rho: f64,
    pub label: AxisLabel,
}

pub const GRID_STEP: f64 = 1e-3;
pub const Z_RANGE: f64 = 5.0;
pub const POLE_WINDOW: f64 = 1e-6;
pub const BISECTION_TOL: f64 = 1e-12;

/// `ρ` forced by the base-face equation at height `z`; infinite at `z = 0`.
pub fn axis_rho(eta: f64, z: f64) -> f64 {
    let y = z * z + eta / 3.0;
    3.0 * y * y / (4.0 * (3.0 * y - eta))
}

/// The lateral-face equation along the axis after eliminating `ρ`, with the
/// double root at the apex divided out. Every term of that equation carries
/// `X = (s−z)²` or `(Y−1)² = (z−s)²(z+s)²`, so the quotient is taken term by
/// term.
pub fn axis_function(eta: f64, z: f64) -> f64 {
    let s = ((3.0 - eta) / 3.0).sqrt();
    let x = (s - z) * (s - z);
    let y = z * z + eta / 3.0;
    let rho = axis_rho(eta, z);
    4.0 * rho * (2.0 * (y + 1.0) - x - eta - (z + s) * (z + s)) - (4.0 * y - eta * x)
}

/// The undeflated lateral-face equation `4ρ(4Y − (X−Y−1)² − ηX) − X(4Y − ηX)`.
pub fn axis_function_raw(eta: f64, z: f64) -> f64 {
    let s = ((3.0 - eta) / 3.0).sqrt();
    let x = (s - z) * (s - z);
    let y = z * z + eta / 3.0;
    let m = x - y - 1.0;
    4.0 * axis_rho(eta, z) * (4.0 * y - m * m - eta * x) - x * (4.0 * y - eta * x)
}

fn bisect(eta: f64, mut a: f64, mut b: f64) -> f64 {
    let mut fa = axis_function(eta, a);
    while b - a > BISECTION_TOL {
        let m = 0.5 * (a + b);
        let fm = axis_function(eta, m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Brackets sign changes of [`axis_function`] on a uniform grid over
/// `[−5, 5]`, skipping cells that touch the pole at `z = 0`, refines each by
/// bisection and labels the two trivial poles of the circumsphere. The apex
/// is always reported since it was divided out.
pub fn axis_bisection_solve(eta: f64) -> Result<Vec<AxisRoot>> {
    check_eta(eta)?;
    let s = ((3.0 - eta) / 3.0).sqrt();
    let south = -eta / (9.0 - 3.0 * eta).sqrt();
    let n = (2.0 * Z_RANGE / GRID_STEP).round() as i64;
    let grid = |k: i64| -Z_RANGE + k as f64 * GRID_STEP;
    let mut roots: Vec<f64> = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for k in 0..=n {
        let z = grid(k);
        if z.abs() < POLE_WINDOW + GRID_STEP {
            prev = None;
            continue;
        }
        let fz = axis_function(eta, z);
        if fz == 0.0 {
            roots.push(z);
            prev = None;
            continue;
        }
        if let Some((zp, fp)) = prev {
            if (fp < 0.0) != (fz < 0.0) {
                roots.push(bisect(eta, zp, z));
            }
        }
        prev = Some((z, fz));
    }
    roots.push(s);
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    Ok(roots
        .into_iter()
        .map(|z| {
            let label = if (z - s).abs() < 1e-9 {
                AxisLabel::TrivialNorth
            } else if (z - south).abs() < 1e-9 {
                AxisLabel::TrivialSouth
            } else {
                AxisLabel::NonTrivial
            };
            AxisRoot {
                z,
                rho: axis_rho(eta, z),
                label,
            }
        })
        .collect())
}

/// Non-trivial roots only, sorted by height descending.
pub fn axis_nontrivial(eta: f64) -> Result<Vec<AxisRoot>> {
    let mut v: Vec<AxisRoot> = axis_bisection_solve(eta)?
        .into_iter()
        .filter(|r| r.label == AxisLabel::NonTrivial)
        .collect();
    v.sort_by(|a, b| b.z.total_cmp(&a.z));
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() < tol
    }

    #[test]
    fn embedding_distances() {
        for eta in [0.5, 1.0, 1.5, 2.0, 2.9] {
            let v = embed_pyramid(eta).unwrap();
            for (i, j, d) in [
                (0, 1, 1.0),
                (0, 2, 1.0),
                (0, 3, 1.0),
                (1, 2, eta),
                (1, 3, eta),
                (2, 3, eta),
            ] {
                assert!(close(v[i].dist2(&v[j]), d, 1e-14));
            }
        }
        assert!(close(circumcenter_height(1.5), 0.0, 1e-15));
        let v = embed_pyramid(2.0).unwrap();
        let (a, b, c) = (v[1] - v[0], v[2] - v[0], v[3] - v[0]);
        assert!(a.dot(&b).abs() < 1e-14 && a.dot(&c).abs() < 1e-14 && b.dot(&c).abs() < 1e-14);
        assert!(embed_pyramid(3.0).is_err());
    }

    #[test]
    fn face_centers() {
        let v = embed_pyramid(1.0).unwrap();
        let base = [v[1], v[2], v[3]];
        let r = (27f64 / 32.0).sqrt();
        let c = sphere_centers_through_face(&base, r).unwrap();
        let h = (27f64 / 32.0 - 1.0 / 3.0).sqrt();
        assert_eq!(c.len(), 2);
        assert!(close(c[0].z.abs(), h, 1e-14) && close(c[0].z, -c[1].z, 1e-14));
        let rf = (1f64 / 3.0).sqrt();
        assert_eq!(sphere_centers_through_face(&base, rf).unwrap().len(), 1);
        assert!(sphere_centers_through_face(&base, 0.5).unwrap().is_empty());
        let line = [v[1], v[1] * 2.0, v[1] * 3.0];
        assert!(sphere_centers_through_face(&line, 1.0).is_err());
    }

    #[test]
    fn axis_examples() {
        let r = axis_nontrivial(1.0).unwrap();
        assert_eq!(r.len(), 1);
        assert!(close(r[0].z, 1.0 / 24f64.sqrt(), 1e-10));
        assert!(close(r[0].rho, 27.0 / 32.0, 1e-10));

        let r = axis_nontrivial(2.9).unwrap();
        let want = [0.59227, -0.93909, -2.3005];
        assert_eq!(r.len(), 3);
        for (g, w) in r.iter().zip(want) {
            assert!(close(g.z, w, 1e-4), "{} vs {w}", g.z);
        }

        let r = axis_nontrivial(1.5).unwrap();
        assert_eq!(r.len(), 1);
        assert!(close(r[0].z, 0.2865, 1e-4) && close(r[0].rho, 1.0316, 1e-4));

        let all = axis_bisection_solve(1.0).unwrap();
        assert!(all.iter().any(|r| r.label == AxisLabel::TrivialNorth));
        assert!(all.iter().any(|r| r.label == AxisLabel::TrivialSouth));
        for r in &all {
            assert!(axis_function_raw(1.0, r.z).abs() < 1e-9);
        }
    }

    #[test]
    fn altitudes_meet_on_axis() {
        let h = orthocenter_by_altitudes(1.0).unwrap();
        assert!(close(h.z, 1.0 / 24f64.sqrt(), 1e-14));
    }
}
