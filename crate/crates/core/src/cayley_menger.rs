//! Cayley–Menger matrices in distance coordinates.
//!
//! Point sets are described only by pairwise squared distances. A point `P`
//! relative to a reference set `V = {v₀,…,vₙ}` is given by its distance
//! coordinates `(‖P−v₀‖²,…,‖P−vₙ‖²)`.
//!
//! Residual sign convention: every residual is the plain determinant of the
//! bordered matrix laid out as documented on each constructor. Only the
//! vanishing locus carries meaning.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::matrix::{det_expansion, det_integer, Matrix};
use crate::exact::{format_rational, Rational, Ring};

/// A bordered Cayley–Menger matrix: corner 0, a border of ones, zero
/// diagonal, symmetric squared distances.
#[derive(Clone, Debug, PartialEq)]
pub struct CMMatrix<R> {
    m: Matrix<R>,
}

impl<R: Ring> CMMatrix<R> {
    /// Validates the border pattern and symmetry.
    pub fn new(m: Matrix<R>) -> Result<Self> {
        let n = m.size();
        if n < 2 {
            return Err(Error::InvalidCayleyMenger(format!("order {n} < 2")));
        }
        let is_one = |x: &R| (x.clone() - R::one()).is_zero();
        if !m.get(0, 0).is_zero() {
            return Err(Error::InvalidCayleyMenger("corner entry is not 0".into()));
        }
        for i in 1..n {
            if !is_one(m.get(0, i)) || !is_one(m.get(i, 0)) {
                return Err(Error::InvalidCayleyMenger(format!(
                    "border entry {i} is not 1"
                )));
            }
            if !m.get(i, i).is_zero() {
                return Err(Error::InvalidCayleyMenger(format!(
                    "diagonal entry {i} is not 0"
                )));
            }
            for j in 1..i {
                if !(m.get(i, j).clone() - m.get(j, i).clone()).is_possibly_zero() {
                    return Err(Error::InvalidCayleyMenger(format!(
                        "entries ({i},{j}) and ({j},{i}) differ"
                    )));
                }
            }
        }
        Ok(CMMatrix { m })
    }

    /// The bordered matrix of a point set with the given squared distances.
    pub fn from_distances(d: &[Vec<R>]) -> Result<Self> {
        let k = d.len();
        for row in d {
            if row.len() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    got: row.len(),
                });
            }
        }
        Self::new(Matrix::from_fn(k + 1, |i, j| match (i, j) {
            (0, 0) => R::zero(),
            (0, _) | (_, 0) => R::one(),
            _ => d[i - 1][j - 1].clone(),
        }))
    }

    /// Order of the bordered matrix (number of points plus one).
    pub fn order(&self) -> usize {
        self.m.size()
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.m
    }

    /// Determinant by division-free expansion; valid in any commutative ring,
    /// including polynomial rings.
    pub fn det(&self) -> R {
        det_expansion(&self.m)
    }
}

impl CMMatrix<Rational> {
    /// Exact determinant by integer Bareiss elimination.
    pub fn exact_det(&self) -> Rational {
        det_integer(&self.m)
    }
}

impl fmt::Display for CMMatrix<Rational> {
    /// Aligned grid of exact fractions.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.order();
        let cells: Vec<Vec<String>> = (0..n)
            .map(|i| self.m.row(i).iter().map(format_rational).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

/// Exact determinant of a square rational matrix.
pub fn exact_det(rows: Vec<Vec<Rational>>) -> Result<Rational> {
    Ok(det_integer(&Matrix::from_rows(rows)?))
}

fn check_coords<R>(v: &[Vec<R>], p: &[R]) -> Result<()> {
    if p.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: v.len(),
            got: p.len(),
        });
    }
    Ok(())
}

/// Matrix of `{P} ∪ V`: rows `[0,1,…,1]`, `[1,0,D₀,…,Dₙ]`,
/// `[1,D₀,0,d₀₁,…]`, … where `Dᵢ = ‖P−vᵢ‖²`.
pub fn membership_matrix<R: Ring>(v: &[Vec<R>], p: &[R]) -> Result<CMMatrix<R>> {
    check_coords(v, p)?;
    let k = v.len() + 1;
    let d: Vec<Vec<R>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| match (i, j) {
                    (0, 0) => R::zero(),
                    (0, j) => p[j - 1].clone(),
                    (i, 0) => p[i - 1].clone(),
                    (i, j) => v[i - 1][j - 1].clone(),
                })
                .collect()
        })
        .collect();
    CMMatrix::from_distances(&d)
}

/// Matrix of `{O, P} ∪ V` where `O` is a centre at squared distance `ρ`
/// from `P` and every `vᵢ`: rows `[0,1,1,…]`, `[1,0,ρ,ρ,…]`,
/// `[1,ρ,0,D₀,…]`, `[1,ρ,D₀,0,d₀₁,…]`, …
pub fn sphere_matrix<R: Ring>(v: &[Vec<R>], p: &[R], rho: &R) -> Result<CMMatrix<R>> {
    check_coords(v, p)?;
    let k = v.len() + 2;
    let d: Vec<Vec<R>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| match (i, j) {
                    _ if i == j => R::zero(),
                    (0, _) | (_, 0) => rho.clone(),
                    (1, j) => p[j - 2].clone(),
                    (i, 1) => p[i - 2].clone(),
                    (i, j) => v[i - 2][j - 2].clone(),
                })
                .collect()
        })
        .collect();
    CMMatrix::from_distances(&d)
}

/// Vanishes iff `P` lies in the affine span of `V` (with `V` spanning a
/// simplex of dimension `|V|−1`).
pub fn cm_membership_residual<R: Ring>(v: &[Vec<R>], p: &[R]) -> Result<R> {
    Ok(membership_matrix(v, p)?.det())
}

/// Vanishes iff `P` lies on a sphere of squared radius `ρ` through `V`
/// inside the span of `V ∪ {P}`.
pub fn cm_sphere_residual<R: Ring>(v: &[Vec<R>], p: &[R], rho: &R) -> Result<R> {
    Ok(sphere_matrix(v, p, rho)?.det())
}

/// `θ = 2(AB+AC+BC) − (A²+B²+C²)`, sixteen times the squared area.
pub fn theta(a: &Rational, b: &Rational, c: &Rational) -> Rational {
    let two = Rational::from_integer(2.into());
    two * (a * b + a * c + b * c) - (a * a + b * b + c * c)
}

/// Squared circumradius `ABC/θ` of a triangle with squared sides `A,B,C`.
pub fn circumradius_sq_triangle(a: &Rational, b: &Rational, c: &Rational) -> Result<Rational> {
    let t = theta(a, b, c);
    if t <= Rational::from_integer(0.into()) {
        return Err(Error::DegenerateTriangle(format!(
            "theta = {} for (A,B,C) = ({}, {}, {})",
            format_rational(&t),
            format_rational(a),
            format_rational(b),
            format_rational(c)
        )));
    }
    Ok(a * b * c / t)
}

pub(crate) fn check_eta(eta: &Rational) -> Result<()> {
    let zero = Rational::from_integer(0.into());
    let three = Rational::from_integer(3.into());
    if *eta <= zero || *eta >= three {
        return Err(Error::EtaOutOfRange(format_rational(eta)));
    }
    Ok(())
}

/// Squared circumradius `3/(12−4η)` of the pyramid with unit lateral edges
/// and squared base edge `η`.
pub fn circumradius_sq_pyramid(eta: &Rational) -> Result<Rational> {
    check_eta(eta)?;
    let three = Rational::from_integer(3.into());
    let twelve = Rational::from_integer(12.into());
    let four = Rational::from_integer(4.into());
    Ok(three / (twelve - four * eta))
}

/// Full symmetric squared-distance matrix from the upper triangle, listed
/// row by row: `d₀₁, d₀₂, …, d₁₂, …`.
pub fn distance_matrix<R: Ring>(k: usize, upper: &[R]) -> Result<Vec<Vec<R>>> {
    let expected = k * (k - 1) / 2;
    if upper.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            got: upper.len(),
        });
    }
    let mut d = vec![vec![R::zero(); k]; k];
    let mut it = upper.iter();
    for i in 0..k {
        for j in i + 1..k {
            let x = it.next().unwrap().clone();
            d[i][j] = x.clone();
            d[j][i] = x;
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat, MPoly};

    fn unit(k: usize) -> Vec<Vec<Rational>> {
        distance_matrix(k, &vec![int(1); k * (k - 1) / 2]).unwrap()
    }

    #[test]
    fn regular_tetrahedron_det() {
        let cm = CMMatrix::from_distances(&unit(4)).unwrap();
        assert_eq!(cm.exact_det(), int(4));
        assert_eq!(cm.det(), int(4));
        // 288 V² with V = √2/12
        assert_eq!(int(288) * rat(2, 144), int(4));
    }

    #[test]
    fn collinear_triangle_det_vanishes() {
        let d = distance_matrix(3, &[int(1), int(4), int(1)]).unwrap();
        assert_eq!(CMMatrix::from_distances(&d).unwrap().exact_det(), int(0));
    }

    #[test]
    fn identity_det() {
        let id = (0..3)
            .map(|i| (0..3).map(|j| int((i == j) as i64)).collect())
            .collect();
        assert_eq!(exact_det(id).unwrap(), int(1));
    }

    #[test]
    fn rejects_bad_layout() {
        let m = Matrix::from_rows(vec![
            vec![int(0), int(1), int(1)],
            vec![int(1), int(0), int(2)],
            vec![int(1), int(3), int(0)],
        ])
        .unwrap();
        assert!(matches!(
            CMMatrix::new(m),
            Err(Error::InvalidCayleyMenger(_))
        ));
        let m = Matrix::from_rows(vec![vec![int(0), int(2)], vec![int(1), int(0)]]).unwrap();
        assert!(CMMatrix::new(m).is_err());
    }

    #[test]
    fn membership_examples() {
        let t = unit(3);
        let c = rat(1, 3);
        assert_eq!(
            cm_membership_residual(&t, &[c.clone(), c.clone(), c]).unwrap(),
            int(0)
        );
        assert_eq!(
            cm_membership_residual(&t, &[int(0), int(1), int(1)]).unwrap(),
            int(0)
        );
        let q = rat(3, 8);
        assert_eq!(
            cm_membership_residual(&unit(4), &vec![q; 4]).unwrap(),
            int(0)
        );
        assert_ne!(
            cm_membership_residual(&t, &[int(1), int(1), int(1)]).unwrap(),
            int(0)
        );
        assert!(cm_membership_residual(&t, &[int(1)]).is_err());
    }

    #[test]
    fn sphere_examples() {
        // two points at squared distance 1, P with Y = Z = 1, ρ = 1/3
        let v = unit(2);
        assert_eq!(
            cm_sphere_residual(&v, &[int(1), int(1)], &rat(1, 3)).unwrap(),
            int(0)
        );
        // base face η = 1, apex at Y = 1, ρ = 3/8
        assert_eq!(
            cm_sphere_residual(&unit(3), &[int(1), int(1), int(1)], &rat(3, 8)).unwrap(),
            int(0)
        );
        assert_ne!(
            cm_sphere_residual(&unit(3), &[int(1), int(1), int(1)], &rat(1, 2)).unwrap(),
            int(0)
        );
    }

    #[test]
    fn sphere_residual_matches_pyramid_equation() {
        // 3Y² − 4ρ(3Y − η) up to a constant factor
        let e = MPoly::var("eta");
        let y = MPoly::var("Y");
        let rho = MPoly::var("rho");
        let v = distance_matrix(3, &[e.clone(), e.clone(), e.clone()]).unwrap();
        let r = cm_sphere_residual(&v, &[y.clone(), y.clone(), y.clone()], &rho).unwrap();
        let expected = MPoly::int(3) * y.clone() * y.clone()
            - MPoly::int(4) * rho * (MPoly::int(3) * y - e.clone());
        let q = r.div_exact(&expected).expect("divisible");
        assert_eq!(q.clone() * expected, r);
        assert_eq!(q.variables(), vec!["eta".to_string()]);
    }

    #[test]
    fn circumradii() {
        assert_eq!(
            circumradius_sq_triangle(&int(1), &int(1), &int(1)).unwrap(),
            rat(1, 3)
        );
        assert_eq!(
            circumradius_sq_triangle(&int(2), &int(1), &int(1)).unwrap(),
            rat(1, 2)
        );
        assert!(matches!(
            circumradius_sq_triangle(&int(0), &int(0), &int(0)),
            Err(Error::DegenerateTriangle(_))
        ));
        assert_eq!(circumradius_sq_pyramid(&int(1)).unwrap(), rat(3, 8));
        assert_eq!(circumradius_sq_pyramid(&rat(3, 2)).unwrap(), rat(1, 2));
        assert_eq!(circumradius_sq_pyramid(&rat(12, 5)).unwrap(), rat(5, 4));
        assert!(circumradius_sq_pyramid(&int(3)).is_err());
        assert!(circumradius_sq_pyramid(&int(0)).is_err());
    }

    #[test]
    fn grid_display() {
        let cm = CMMatrix::from_distances(&unit(2)).unwrap();
        let s = cm.to_string();
        assert_eq!(s.lines().count(), 3);
        assert!(s.starts_with("[ 0  1  1 ]"));
    }
}
