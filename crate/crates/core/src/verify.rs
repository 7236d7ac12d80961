//! Acceptance suite for the worked examples and structural claims, shared
//! by the `acceptance` test target and the `verify` subcommand.
//!
//! Every criterion runs a list of named checks; a check that errors counts
//! as failed and carries the error text. Random inputs come from a fixed
//! seed, so reports are reproducible.

use std::time::Instant;

use num_traits::{One, Signed as _, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::cayley_menger::circumradius_sq_pyramid;
use crate::error::Result;
use crate::exact::{qpoly, rat, Number, QuadExt, Rational, Sign, SturmSeq, UniPoly};
use crate::general_tetra::{
    check_specialization_at, circumradius_locus_classify, locus_axis_factor,
    locus_plane_sphere_factor, numeric_refine_fixed_rho, regular_eliminant,
    regular_example_cartesian, regular_quintic, regular_quintic_factored, regular_solutions,
    specialization_cofactors, Locus, TetraParams,
};
use crate::oracle::{axis_nontrivial, embed_pyramid, CartesianPoint};
use crate::plane::{
    johnson_solution, orthocenter_cartesian_oracle, plane_system_polys, TriangleParams,
};
use crate::pyramid::{
    cartesian_config, classify, classify_eta_bar, disc_f_factored, disc_g_factored, poly_f, poly_g,
    EtaValue, PyramidClassification, PyramidParams,
};
use crate::rbody::{
    chain_f_closed_form, chain_g_closed_form, classify_rbody, placement, sqrt_number,
    sturm_table_f, sturm_table_g, Placement,
};

const SEED: u64 = 0x5eed_2024;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub seconds: f64,
}

impl CriterionReport {
    pub fn summary_line(&self) -> String {
        let failed: Vec<&str> = self
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut line = format!(
            "[{status}] criterion {}: {} ({} checks, {:.1}s)",
            self.id,
            self.title,
            self.checks.len(),
            self.seconds
        );
        if !failed.is_empty() {
            line.push_str(&format!(" failed: {}", failed.join(", ")));
        }
        line
    }
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn add(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn run(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<(bool, String)>) {
        let (passed, detail) = match f() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        self.add(name, passed, detail);
    }
}

pub const TITLES: [&str; 8] = [
    "plane systems and the orthocenter",
    "regular tetrahedron solution set",
    "pyramid worked examples",
    "root-count law and discriminants",
    "R-body classification",
    "oracle equivalence on the axis",
    "loci at the circumradius",
    "restriction of the general system to pyramids",
];

pub fn run_criterion(id: usize) -> CriterionReport {
    let start = Instant::now();
    let checks = match id {
        1 => plane_checks(),
        2 => regular_checks(),
        3 => pyramid_checks(),
        4 => root_count_checks(),
        5 => rbody_checks(),
        6 => oracle_checks(),
        7 => locus_checks(),
        8 => specialization_checks(),
        _ => {
            let mut c = Checks::default();
            c.add("known criterion", false, format!("no criterion {id}"));
            c
        }
    };
    let passed = !checks.0.is_empty() && checks.0.iter().all(|c| c.passed);
    CriterionReport {
        id,
        title: TITLES.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"),
        passed,
        checks: checks.0,
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// All eight criteria, in order.
pub fn run_all() -> Vec<CriterionReport> {
    let ids: Vec<usize> = (1..=8).collect();
    crate::par::map_ordered(&ids, |&i| run_criterion(i))
}

fn rand_rational(rng: &mut StdRng, lo: f64, hi: f64, max_den: i64) -> Rational {
    loop {
        let d = rng.gen_range(1..=max_den);
        let n = (rng.gen_range(lo..hi) * d as f64).round() as i64;
        let r = rat(n, d);
        if r > Rational::from_float(lo).unwrap() && r < Rational::from_float(hi).unwrap() {
            return r;
        }
    }
}

fn num(r: Rational) -> Number {
    Number::Rational(r)
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

// ---------------------------------------------------------------------------
// 1

fn plane_checks() -> Checks {
    let mut c = Checks::default();
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut tried = 0;
    let mut ok = 0;
    let mut failures = Vec::new();
    while tried < 100 {
        let (a, b, cc) = (
            rand_rational(&mut rng, 0.1, 5.0, 9),
            rand_rational(&mut rng, 0.1, 5.0, 9),
            rand_rational(&mut rng, 0.1, 5.0, 9),
        );
        let Ok(t) = TriangleParams::new(a, b, cc) else {
            continue;
        };
        tried += 1;
        let good = (|| -> Result<bool> {
            let s = johnson_solution(&t)?;
            let zero = s.residuals(&t).iter().all(|r| r.is_zero());
            let (e, h) = orthocenter_cartesian_oracle(&t)?;
            let oracle = e.distance_coords(&h);
            let same = oracle
                .iter()
                .zip(&s.coords)
                .all(|(o, x)| *o == QuadExt::rational(x.clone()));
            Ok(zero && same && s.rho == t.circumradius_sq())
        })()
        .unwrap_or(false);
        if good {
            ok += 1;
        } else {
            failures.push(format!("({},{},{})", t.a(), t.b(), t.c()));
        }
    }
    c.add(
        "100 random triangles: zero residuals and oracle orthocenter",
        ok == 100,
        format!("{ok}/100 exact matches {}", failures.join(" ")),
    );
    c.run("equilateral eliminant rho(3rho-1)^2", || {
        let gens: Vec<_> = plane_system_polys()
            .iter()
            .map(|p| {
                ["A", "B", "C"].iter().fold(p.clone(), |acc, v| {
                    acc.substitute(v, &crate::exact::MPoly::int(1))
                })
            })
            .collect();
        let cert = crate::exact::macaulay::univariate_eliminant(
            &gens,
            &["X", "Y", "Z", "rho"],
            "rho",
            4,
            3,
        )
        .ok_or_else(|| crate::Error::Domain("no eliminant in degree 4".into()))?;
        let ok = cert.verify(&gens, "rho") && cert.poly.proportional(&qpoly(&[0, 1, -6, 9]));
        Ok((ok, format!("eliminant {}", cert.poly.fmt_var("rho"))))
    });
    c.run("equilateral solution rho = 1/3 at (1/3,1/3,1/3)", || {
        let one = Rational::one();
        let s = johnson_solution(&TriangleParams::new(one.clone(), one.clone(), one)?)?;
        let t = rat(1, 3);
        Ok((
            s.rho == t && s.coords.iter().all(|x| *x == t),
            format!("rho = {}", s.rho),
        ))
    });
    c
}

// ---------------------------------------------------------------------------
// 2

fn regular_checks() -> Checks {
    let mut c = Checks::default();
    c.add(
        "quintic equals its factored form",
        regular_quintic() == regular_quintic_factored(),
        regular_quintic().fmt_var("rho"),
    );
    c.add(
        "sextic is (8rho-5) times the quintic",
        regular_eliminant() == qpoly(&[-5, 8]) * regular_quintic_factored()
            && regular_eliminant().degree() == Some(6),
        regular_eliminant().fmt_var("rho"),
    );
    c.run(
        "7 non-trivial admissible solutions with zero residuals in Q(sqrt 7)",
        || {
            let sols = regular_solutions()?;
            let n = sols
                .iter()
                .filter(|s| s.geometrically_admissible && !s.trivial)
                .count();
            let five_eighths = sols
                .iter()
                .filter(|s| s.rho == QuadExt::rational(rat(5, 8)))
                .count();
            Ok((
                n == 7 && five_eighths == 6,
                format!("{n} non-trivial, {five_eighths} at rho = 5/8"),
            ))
        },
    );
    c.run("center rho = 27/32 at X=Y=Z=W=3/8", || {
        let sols = regular_solutions()?;
        let q = QuadExt::rational(rat(3, 8));
        let ok = sols
            .iter()
            .any(|s| s.rho == QuadExt::rational(rat(27, 32)) && s.coords.iter().all(|x| *x == q));
        Ok((ok, String::new()))
    });
    c.run("Cartesian data recovered to 1e-9", || {
        let v = embed_pyramid(1.0)?;
        let (o, w) = regular_example_cartesian();
        let o = CartesianPoint::from(o);
        let r2 = 0.625;
        let mut worst = 0f64;
        for (i, wi) in w.iter().enumerate() {
            let wi = CartesianPoint::from(*wi);
            worst = worst.max((wi.dist2(&o) - r2).abs());
            for (j, vj) in v.iter().enumerate() {
                if i != j {
                    worst = worst.max((wi.dist2(vj) - r2).abs());
                }
            }
        }
        // the displayed O* has the distance coordinates of one exact solution
        let d: Vec<f64> = v.iter().map(|vi| vi.dist2(&o)).collect();
        let sols = regular_solutions()?;
        let matched = sols.iter().any(|s| {
            s.rho == QuadExt::rational(rat(5, 8))
                && s.coords
                    .iter()
                    .zip(&d)
                    .all(|(x, y)| close(x.to_f64(), *y, 1e-9))
        });
        Ok((
            worst < 1e-9 && matched,
            format!("max incidence error {worst:.2e}"),
        ))
    });
    c
}

// ---------------------------------------------------------------------------
// 3

fn classify_q(e: &Rational) -> Result<PyramidClassification> {
    classify(&PyramidParams::new(e.clone())?)
}

fn certified(c: &PyramidClassification) -> bool {
    let tol = rat(1, 1_000_000_000);
    c.nontrivial.iter().chain(&c.trivial).all(|s| {
        s.residual_enclosures(&c.eta, 64)
            .iter()
            .all(|iv| iv.contains_zero() && iv.width() < tol)
    })
}

fn pyramid_checks() -> Checks {
    let mut c = Checks::default();
    c.run("eta = 1", || {
        let p = classify_q(&rat(1, 1))?;
        let s = &p.nontrivial[..];
        let z = Number::Quad(QuadExt::sqrt_rational(&rat(1, 24))?);
        let ok = s.len() == 1
            && s[0].rho.eq_exact(&num(rat(27, 32)))
            && s[0].z.eq_exact(&z)
            && p.trivial.iter().all(|t| t.rho.eq_exact(&num(rat(3, 8))))
            && certified(&p);
        Ok((
            ok,
            format!(
                "rho = {}",
                s.first().map(|s| s.rho.to_string()).unwrap_or_default()
            ),
        ))
    });
    c.run("eta = 3/2", || {
        let e = rat(3, 2);
        let p = classify_q(&e)?;
        let cubic = qpoly(&[-81, 738, -2752, 2048]);
        let s = &p.nontrivial[..];
        let ok = poly_g(&e).proportional(&cubic)
            && s.len() == 1
            && close(s[0].rho.to_f64(), 1.0316, 1e-4)
            && close(s[0].z.to_f64(), 0.2865, 1e-4)
            && certified(&p);
        Ok((
            ok,
            format!(
                "rho = {:.6}",
                s.first().map(|s| s.rho.to_f64()).unwrap_or(f64::NAN)
            ),
        ))
    });
    c.run("eta = 2", || {
        let p = classify_q(&rat(2, 1))?;
        let s = &p.nontrivial[..];
        let ok = s.len() == 1
            && close(s[0].rho.to_f64(), 1.1746, 1e-4)
            && close(s[0].z.to_f64(), 0.371, 1e-3)
            && s[0]
                .x
                .to_algebraic()
                .sign_of_poly(&qpoly(&[-3, 73, -60, 36]))
                == Sign::Zero
            && certified(&p);
        Ok((
            ok,
            format!(
                "z = {:.6}",
                s.first().map(|s| s.z.to_f64()).unwrap_or(f64::NAN)
            ),
        ))
    });
    c.run("eta = 12/5", || {
        let e = rat(12, 5);
        let p = classify_q(&e)?;
        let factored = qpoly(&[5, -4]) * qpoly(&[-9, 20]) * qpoly(&[-9, 20]);
        let complex = p.complex.iter().any(|b| {
            b.rho.eq_exact(&num(rat(9, 20)))
                && b.x_poly.as_ref().is_some_and(|x| {
                    x.proportional(&qpoly(&[64, -45, 25]))
                        && crate::exact::resultant::discriminant(x) < Rational::zero()
                })
        });
        let ok = poly_g(&e).proportional(&factored)
            && complex
            && p.nontrivial.len() == 1
            && p.nontrivial[0].rho.eq_exact(&num(rat(5, 4)))
            && certified(&p);
        Ok((ok, format!("{} complex branch(es)", p.complex.len())))
    });
    c.run("eta = 20/7", || {
        let p = classify_q(&rat(20, 7))?;
        let quartic = qpoly(&[400, 0, -1365, 0, 441]);
        let r21 = 21f64.sqrt();
        let r5 = 5f64.sqrt();
        let doubles = [
            (-5.0 * r21 + 21.0 * r5) / 42.0,
            (-5.0 * r21 - 21.0 * r5) / 42.0,
        ];
        let z1 = Number::Quad(-QuadExt::sqrt_rational(&rat(25, 21))?);
        let mut ok = p.nontrivial.len() == 3 && p.distinct_rho() == 2 && certified(&p);
        for s in &p.nontrivial {
            ok &= if s.multiplicity == 1 {
                s.rho.eq_exact(&num(rat(27, 28))) && s.z.eq_exact(&z1)
            } else {
                s.rho.eq_exact(&num(rat(5, 4)))
                    && s.z.to_algebraic().sign_of_poly(&quartic) == Sign::Zero
                    && doubles.iter().any(|w| close(*w, s.z.to_f64(), 1e-12))
            };
        }
        Ok((ok, format!("{} solutions", p.nontrivial.len())))
    });
    c.run("eta = etabar exact in Q(sqrt 57)", || {
        let p = classify_eta_bar()?;
        let rho1 = Number::Quad(QuadExt::new(rat(7911, 12544), rat(1035, 12544), 57)?);
        let rho2 = Number::Quad(QuadExt::new(rat(9, 16), rat(1, 16), 57)?);
        let ok = p.nontrivial.iter().any(|s| s.rho.eq_exact(&rho1))
            && p.nontrivial.iter().any(|s| s.rho.eq_exact(&rho2))
            && p.distinct_rho() == 2;
        Ok((ok, String::new()))
    });
    c.run("eta = 29/10", || {
        let p = classify_q(&rat(29, 10))?;
        let want = [(0.59227, 1.2370), (-0.93909, 0.9687), (-2.3005, 1.8506)];
        let ok = p.nontrivial.len() == 3
            && p.nontrivial
                .iter()
                .zip(want)
                .all(|(s, (z, r))| close(s.z.to_f64(), z, 1e-4) && close(s.rho.to_f64(), r, 1e-4))
            && certified(&p);
        Ok((ok, String::new()))
    });
    c
}

// ---------------------------------------------------------------------------
// 4

fn positive_roots(p: &UniPoly<Rational>) -> usize {
    SturmSeq::rational(p).count_open(&Rational::zero(), &(p.cauchy_bound() + Rational::one()))
}

fn root_count_checks() -> Checks {
    let mut c = Checks::default();
    let eta_bar = crate::pyramid::eta_bar();
    let mut bad = Vec::new();
    for k in 1..=50 {
        let e = rat(3 * k, 51);
        let above = QuadExt::rational(e.clone()) > eta_bar;
        let want = if above { 3 } else { 1 };
        let (nf, ng) = (positive_roots(&poly_f(&e)), positive_roots(&poly_g(&e)));
        let square_free = disc_g_factored(&e) != Rational::zero();
        if nf != want || ng != want || !square_free {
            bad.push(format!("{e}: f {nf}, g {ng}"));
        }
    }
    c.add(
        "50-point grid: 1 positive root below etabar, 3 above",
        bad.is_empty(),
        bad.join("; "),
    );
    for e in [rat(12, 5), rat(20, 7)] {
        c.run(format!("double root of g at eta = {e}"), || {
            let dec = poly_g(&e).square_free_decomposition();
            let double = dec.iter().any(|(_, m)| *m == 2);
            Ok((
                double && disc_g_factored(&e).is_zero(),
                format!("{} factors", dec.len()),
            ))
        });
    }
    let mut rng = StdRng::seed_from_u64(SEED + 4);
    let mut bad = Vec::new();
    for _ in 0..20 {
        let e = rand_rational(&mut rng, 0.01, 2.99, 97);
        let dg = crate::exact::resultant::discriminant(&poly_g(&e));
        let df = crate::exact::resultant::discriminant(&poly_f(&e));
        if dg != disc_g_factored(&e) || df != disc_f_factored(&e) {
            bad.push(e.to_string());
        }
    }
    c.add(
        "closed-form discriminants equal resultant computation at 20 random eta",
        bad.is_empty(),
        bad.join(" "),
    );
    c
}

// ---------------------------------------------------------------------------
// 5

fn chains_agree(e: &Rational) -> bool {
    let pairs = [
        (chain_g_closed_form(e), SturmSeq::rational(&poly_g(e))),
        (chain_f_closed_form(e), SturmSeq::rational(&poly_f(e))),
    ];
    pairs.iter().all(|(lit, seq)| {
        lit.len() == seq.len()
            && lit.iter().zip(seq.chain()).all(|(a, b)| {
                a.proportional(b)
                    && a.lc()
                        .is_some_and(|x| b.lc().is_some_and(|y| x.is_positive() == y.is_positive()))
            })
    })
}

fn rbody_checks() -> Checks {
    let mut c = Checks::default();
    let mut rng = StdRng::seed_from_u64(SEED + 5);
    let low: Vec<Rational> = (0..30)
        .map(|_| rand_rational(&mut rng, 0.05, 2.39, 97))
        .collect();
    let high: Vec<Rational> = (0..30)
        .map(|_| rand_rational(&mut rng, 2.41, 2.99, 97))
        .collect();

    let mut bad = Vec::new();
    for e in &low {
        match sturm_table_g(e) {
            Ok([a, b]) if a.variations == 2 && b.variations == 2 => {}
            Ok(_) => bad.push(e.to_string()),
            Err(err) => bad.push(format!("{e}: {err}")),
        }
    }
    c.add(
        "g tables: 2 variations at both ends, 30 eta < 12/5",
        bad.is_empty(),
        bad.join(" "),
    );

    let mut bad = Vec::new();
    for e in &high {
        match sturm_table_f(e) {
            Ok([a, b]) if a.variations == b.variations => {}
            Ok(_) => bad.push(e.to_string()),
            Err(err) => bad.push(format!("{e}: {err}")),
        }
    }
    c.add(
        "f tables: equal variations at both ends, 30 eta > 12/5",
        bad.is_empty(),
        bad.join(" "),
    );

    let verdicts = crate::par::map_ordered(&low, |e| -> Result<bool> {
        let v = classify_rbody(e)?;
        let rstar = v
            .rstar
            .clone()
            .ok_or_else(|| crate::Error::Domain("no R*".into()))?;
        let rt = sqrt_number(&num(v.rt2.clone()))?;
        let interior = v
            .ostar_z
            .iter()
            .map(|z| placement(e, z))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .all(|p| *p == Placement::Interior);
        Ok(v.rbody && v.admissible && rstar.cmp_exact(&rt).is_gt() && interior)
    });
    let fails: Vec<String> = low
        .iter()
        .zip(&verdicts)
        .filter(|(_, r)| !matches!(r, Ok(true)))
        .map(|(e, _)| e.to_string())
        .collect();
    c.add(
        "R-body with R* > R_T and interior O* below 12/5",
        fails.is_empty(),
        fails.join(" "),
    );

    let mut upper = high.clone();
    upper.push(rat(12, 5));
    let verdicts = crate::par::map_ordered(&upper, |e| -> Result<bool> {
        let v = classify_rbody(e)?;
        Ok(!v.rbody && v.reason != Placement::Interior)
    });
    let fails: Vec<String> = upper
        .iter()
        .zip(&verdicts)
        .filter(|(_, r)| !matches!(r, Ok(true)))
        .map(|(e, _)| e.to_string())
        .collect();
    c.add(
        "no R-body and O* not interior on [12/5, 3)",
        fails.is_empty(),
        fails.join(" "),
    );

    let bad: Vec<String> = low
        .iter()
        .chain(&high)
        .filter(|e| !chains_agree(e))
        .map(|e| e.to_string())
        .collect();
    c.add(
        "closed-form Sturm chains equal computed chains up to positive scaling",
        bad.is_empty(),
        bad.join(" "),
    );
    c
}

// ---------------------------------------------------------------------------
// 6

fn oracle_checks() -> Checks {
    let mut c = Checks::default();
    let grid: Vec<Rational> = (1..=25).map(|k| rat(29 * k, 250)).collect();
    let rows = crate::par::map_ordered(&grid, |e| -> Result<(bool, String)> {
        let p = classify_q(e)?;
        let o = axis_nontrivial(crate::exact::rational::to_f64(e))?;
        let alg: Vec<f64> = p.nontrivial.iter().map(|s| s.z.to_f64()).collect();
        let mut ok = alg.len() == o.len();
        let mut worst = 0f64;
        for (a, r) in alg.iter().zip(&o) {
            worst = worst.max((a - r.z).abs());
        }
        ok &= worst < 1e-9;
        Ok((
            ok,
            format!(
                "{e}: {} algebraic, {} oracle, max gap {worst:.1e}",
                alg.len(),
                o.len()
            ),
        ))
    });
    let mut bad = Vec::new();
    for r in rows {
        match r {
            Ok((true, _)) => {}
            Ok((false, d)) => bad.push(d),
            Err(e) => bad.push(e.to_string()),
        }
    }
    c.add(
        "25-point grid: same roots within 1e-9",
        bad.is_empty(),
        bad.join("; "),
    );
    c.run(
        "sphere centers through four faces agree with oracle geometry",
        || {
            let e = rat(29, 10);
            let p = classify_q(&e)?;
            let v = embed_pyramid(2.9)?;
            let mut worst = 0f64;
            for s in &p.nontrivial {
                let cfg = cartesian_config(&EtaValue::Rational(e.clone()), s, 12)?;
                let r = s.rho.to_f64().sqrt();
                for (k, w) in cfg.centers_f64().iter().enumerate() {
                    let face: Vec<CartesianPoint> =
                        (0..4).filter(|&i| i != k).map(|i| v[i]).collect();
                    let cands = crate::oracle::sphere_centers_through_face(
                        &[face[0], face[1], face[2]],
                        r,
                    )?;
                    let w = CartesianPoint::from(*w);
                    let gap = cands
                        .iter()
                        .map(|c| c.dist2(&w).sqrt())
                        .fold(f64::INFINITY, f64::min);
                    worst = worst.max(gap);
                }
            }
            Ok((worst < 1e-9, format!("max center gap {worst:.1e}")))
        },
    );
    c
}

// ---------------------------------------------------------------------------
// 7

fn locus_checks() -> Checks {
    let mut c = Checks::default();
    let mut rng = StdRng::seed_from_u64(SEED + 7);
    for e in [rat(1, 1), rat(3, 2), rat(2, 1)] {
        c.run(format!("refined solutions at eta = {e}"), || {
            let ef = crate::exact::rational::to_f64(&e);
            let rho = crate::exact::rational::to_f64(&circumradius_sq_pyramid(&e)?);
            let t = TetraParams::pyramid(&e)?;
            let v = embed_pyramid(ef)?;
            let zc = crate::oracle::circumcenter_height(ef);
            let center = CartesianPoint::new(0.0, 0.0, zc);
            let coords =
                |p: &CartesianPoint| -> [f64; 4] { std::array::from_fn(|i| v[i].dist2(p)) };
            let mut seeds: Vec<[f64; 4]> = Vec::new();
            for _ in 0..6 {
                // points of the circumsphere, pushed off it
                let (th, ph): (f64, f64) = (rng.gen_range(0.0..3.1), rng.gen_range(0.0..6.2));
                let dir = CartesianPoint::new(th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos());
                let p = center + dir * (rho.sqrt() * 1.01);
                seeds.push(coords(&p));
            }
            // base-plane point opposite v₁ on the base circle
            let r = (ef / 3.0).sqrt();
            seeds.push(coords(&CartesianPoint::new(0.0, -r, 0.0)));
            let mut summary = Vec::new();
            let mut ok = true;
            let mut coplanar = false;
            for s in seeds {
                let sol = numeric_refine_fixed_rho(&t, s, rho)?;
                let p = sol.solution.coords;
                let loci = circumradius_locus_classify(&e, &p, rho)?;
                let f1 = locus_axis_factor(&p).abs();
                let f2 = locus_plane_sphere_factor(&p).abs();
                ok &= !loci.is_empty() && f1.min(f2) < 1e-8;
                coplanar |= loci.contains(&Locus::Coplanar);
                summary.push(format!("{loci:?} {:.1e}", f1.min(f2)));
            }
            if e == rat(3, 2) {
                ok &= coplanar;
            }
            Ok((ok, summary.join("; ")))
        });
    }
    c
}

// ---------------------------------------------------------------------------
// 8

fn specialization_checks() -> Checks {
    let mut c = Checks::default();
    c.run("exact identity at 10 random rational points", || {
        let cof = specialization_cofactors()?;
        let mut rng = StdRng::seed_from_u64(SEED + 8);
        let mut ok = 0;
        for _ in 0..10 {
            let e = rand_rational(&mut rng, 0.05, 2.95, 50);
            let x = rand_rational(&mut rng, -3.0, 3.0, 50);
            let y = rand_rational(&mut rng, -3.0, 3.0, 50);
            let r = rand_rational(&mut rng, 0.05, 3.0, 50);
            if check_specialization_at(&cof, &e, &x, &y, &r) {
                ok += 1;
            }
        }
        let shown: Vec<String> = cof.iter().map(|p| p.to_string()).collect();
        Ok((ok == 10, format!("{ok}/10; cofactors {}", shown.join(", "))))
    });
    c
}
