//! Degree-truncated ideal membership by linear algebra on a Macaulay matrix.
//!
//! Given generators `g₁,…,gₘ` and a cofactor degree bound `d`, the span of
//! `{μ·gᵢ : deg μ ≤ d}` is a finite-dimensional subspace of the ideal. The
//! lowest-degree univariate polynomial `p(v)` inside that subspace is found
//! by Gaussian elimination, together with explicit cofactors `cᵢ` such that
//! `p = Σ cᵢ gᵢ`. A hit is a proof of membership; a miss only says that the
//! bound was too small.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::mpoly::MPoly;
use super::poly::UniPoly;
use super::ring::Ring;
use super::Rational;

/// `p = Σ cofactors[i] · generators[i]`.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub poly: UniPoly<Rational>,
    pub cofactors: Vec<MPoly>,
}

impl Certificate {
    /// Re-expands the combination and compares it with `poly`.
    pub fn verify(&self, gens: &[MPoly], var: &str) -> bool {
        let sum = self
            .cofactors
            .iter()
            .zip(gens)
            .fold(MPoly::zero(), |acc, (c, g)| acc + c.clone() * g.clone());
        sum == MPoly::from_univariate(&self.poly, var)
    }
}

/// Every monomial of total degree at most `d` in `vars`.
pub fn monomials_up_to(vars: &[&str], d: u32) -> Vec<MPoly> {
    let mut out = vec![MPoly::int(1)];
    let mut layer = vec![(MPoly::int(1), 0usize)];
    for _ in 0..d {
        let mut next = Vec::new();
        for (m, first) in &layer {
            for (k, v) in vars.iter().enumerate().skip(*first) {
                next.push((m.clone() * MPoly::var(v), k));
            }
        }
        out.extend(next.iter().map(|(m, _)| m.clone()));
        layer = next;
    }
    out
}

struct Row {
    vec: Vec<Rational>,
    origin: Vec<Rational>,
}

fn lead(v: &[Rational]) -> Option<usize> {
    v.iter().rposition(|c| !c.is_zero())
}

fn axpy(y: &mut [Rational], a: &Rational, x: &[Rational]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi -= a * xi;
        }
    }
}

/// Lowest-degree nonzero `p(var)` of degree ≤ `max_degree` in the truncated
/// ideal, with cofactors.
pub fn univariate_eliminant(
    gens: &[MPoly],
    vars: &[&str],
    var: &str,
    cofactor_degree: u32,
    max_degree: usize,
) -> Option<Certificate> {
    let multipliers = monomials_up_to(vars, cofactor_degree);
    let mut columns: Vec<MPoly> = Vec::new();
    for g in gens {
        for m in &multipliers {
            columns.push(m.clone() * g.clone());
        }
    }
    let targets: Vec<MPoly> = (0..=max_degree)
        .map(|k| MPoly::var(var).pow(k as u32))
        .collect();

    // Index every monomial that occurs, in increasing monomial order.
    let mut monos: Vec<_> = columns
        .iter()
        .chain(&targets)
        .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
        .collect();
    monos.sort();
    monos.dedup();
    let index: HashMap<_, usize> = monos.iter().cloned().zip(0..).collect();
    let n_origin = columns.len() + targets.len();

    let dense = |p: &MPoly| {
        let mut v = vec![Rational::zero(); monos.len()];
        for (m, c) in p.terms() {
            v[index[m]] = c.clone();
        }
        v
    };

    let mut basis: Vec<Option<Row>> = (0..monos.len()).map(|_| None).collect();
    let mut insert = |mut row: Row| -> Option<Row> {
        while let Some(l) = lead(&row.vec) {
            match &basis[l] {
                Some(b) => {
                    let f = &row.vec[l] / &b.vec[l];
                    axpy(&mut row.vec, &f, &b.vec);
                    axpy(&mut row.origin, &f, &b.origin);
                }
                None => {
                    basis[l] = Some(row);
                    return None;
                }
            }
        }
        Some(row)
    };

    for (k, c) in columns.iter().enumerate() {
        let mut origin = vec![Rational::zero(); n_origin];
        origin[k] = Rational::one();
        insert(Row {
            vec: dense(c),
            origin,
        });
    }
    for (k, t) in targets.iter().enumerate() {
        let mut origin = vec![Rational::zero(); n_origin];
        origin[columns.len() + k] = Rational::one();
        if let Some(zero) = insert(Row {
            vec: dense(t),
            origin,
        }) {
            // 0 = Σ origin_target·varʲ + Σ origin_col·μ·g
            let tcoef = zero.origin[columns.len()..].to_vec();
            let poly = UniPoly::new(tcoef);
            let mut cofactors = vec![MPoly::zero(); gens.len()];
            for (i, cof) in cofactors.iter_mut().enumerate() {
                for (j, m) in multipliers.iter().enumerate() {
                    let c = &zero.origin[i * multipliers.len() + j];
                    if !c.is_zero() {
                        *cof = cof.clone() - m.scale(c);
                    }
                }
            }
            return Some(Certificate { poly, cofactors });
        }
    }
    None
}
