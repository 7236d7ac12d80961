//! Whether the pyramid's vertex set together with `O*` is the whole hulloid
//! at radius `R* = √ρ`: sign tables of the Sturm chains of `g` and `f` at the
//! ends of the relevant intervals, and the interiority test for `O*`.
//!
//! The chains are stored twice: as closed-form rational functions of `η`
//! (the tables below) and as computed by [`SturmSeq`]. Every table is
//! cross-checked against the computed chain before it is returned.

use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cayley_menger::{check_eta, circumradius_sq_pyramid};
use crate::error::{Error, Result};
use crate::exact::sturm::sign_variations;
use crate::exact::{
    format_rational, qpoly, rat, AlgebraicReal, Enclose, Number, QuadExt, Rational, Sign, Signed,
    SturmSeq, UniPoly,
};
use crate::pyramid::{
    cartesian_config, classify, poly_f, poly_g, Branch, PyramidClassification, PyramidParams,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PolyId {
    G,
    F,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EvalPoint {
    /// `0`
    Zero,
    /// `ρ = R_T² = 3/(12−4η)`
    CircumradiusSq,
    /// `t = s² = (3−η)/3`
    ApexHeightSq,
}

/// Signs of the four chain elements at one point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SturmTable {
    pub poly: PolyId,
    pub point: EvalPoint,
    pub signs: Vec<Sign>,
    pub variations: usize,
}

impl SturmTable {
    fn new(poly: PolyId, point: EvalPoint, values: &[Rational]) -> Self {
        let signs: Vec<Sign> = values.iter().map(|v| v.sgn()).collect();
        let variations = sign_variations(&signs);
        SturmTable {
            poly,
            point,
            signs,
            variations,
        }
    }

    pub fn pattern(&self) -> String {
        let s: Vec<String> = self.signs.iter().map(|s| s.symbol().to_string()).collect();
        format!("[{}]", s.join(","))
    }
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn horner(e: &Rational, coeffs: &[i64]) -> Rational {
    coeffs
        .iter()
        .fold(Rational::zero(), |acc, c| acc * e + q(*c))
}

// ---------------------------------------------------------------------------
// Closed-form chains. Coefficient lists run from the highest power of η down.

/// Chain of `g` in `ρ`: `g, g′, g₂, g₃` with `g₂` linear and `g₃` constant.
pub fn chain_g_closed_form(e: &Rational) -> Vec<UniPoly<Rational>> {
    let three_minus = q(3) - e;
    let g1 = UniPoly::new(vec![
        horner(e, &[196, -732, 288, 0]),
        horner(e, &[-1408, 3840, 1536]),
        horner(e, &[3072, -9216]),
    ]);
    let den = q(3) * &three_minus;
    let g2 = UniPoly::new(vec![
        horner(e, &[539, -3483, 6666, -2880, -864, 0]) / &den,
        horner(e, &[832, -10560, 39264, -43776, -4608]) / &den,
    ]);
    vec![poly_g(e), g1, g2, UniPoly::constant(g3(e))]
}

fn g3(e: &Rational) -> Rational {
    let num = q(-27)
        * (q(5) * e - q(12)).pow(2)
        * horner(e, &[49, -135, -12])
        * (q(7) * e - q(20)).pow(2)
        * e.pow(3)
        * (e - q(3)).pow(2);
    num / horner(e, &[26, -330, 1227, -1368, -144]).pow(2)
}

/// Chain of `f` in `t`: `f, f′, f₂, f₃`.
pub fn chain_f_closed_form(e: &Rational) -> Vec<UniPoly<Rational>> {
    let f1 = UniPoly::new(vec![
        q(-9) * e * e * (e + q(1)),
        horner(e, &[216, -432, 0]),
        horner(e, &[1296, -3888]),
    ]);
    let den = q(4) * e - q(12);
    let e2 = e * e;
    let f2 = UniPoly::new(vec![
        -(&e2 * horner(e, &[5, -13, -2, 0])) / &den,
        -(&e2 * horner(e, &[-48, 144, -24])) / &den,
    ]);
    vec![poly_f(e), f1, f2, UniPoly::constant(f3(e))]
}

fn f3(e: &Rational) -> Rational {
    q(-9) * (e - q(3)).pow(2) * horner(e, &[49, -135, -12]) * e.pow(3)
        / (q(4) * horner(e, &[2, -6, 1]).pow(2))
}

/// Closed-form values of the `g` chain at `ρ = 0`.
pub fn table_g_at_zero(e: &Rational) -> [Rational; 4] {
    [
        q(27) * e * e,
        q(4) * e * horner(e, &[49, -183, 72]),
        e * horner(e, &[539, -3483, 6666, -2880, -864]) / (q(36) * (q(3) - e)),
        g3(e),
    ]
}

/// Closed-form values of the `g` chain at `ρ = 3/(12−4η)`.
pub fn table_g_at_rt2(e: &Rational) -> [Rational; 4] {
    let em3 = e - q(3);
    [
        q(12) * e * (q(12) - q(5) * e) * horner(e, &[2, -9, 12]) / em3.pow(2),
        q(4) * horner(e, &[49, -330, 885, -936, 144]) / &em3,
        -horner(e, &[539, -5100, 16491, -14958, -21672, 35424, 3456]) / (q(36) * em3.pow(2)),
        g3(e),
    ]
}

/// Closed-form values of the `f` chain at `t = 0`.
pub fn table_f_at_zero(e: &Rational) -> [Rational; 4] {
    [
        e.pow(4),
        q(-9) * e * e * (e + q(1)),
        e.pow(3) * horner(e, &[5, -13, -2]) / (q(4) * (q(3) - e)),
        f3(e),
    ]
}

/// Closed-form values of the `f` chain at `t = (3−η)/3`.
pub fn table_f_at_apex(e: &Rational) -> [Rational; 4] {
    [
        q(9) * (q(5) * e - q(12)) * horner(e, &[2, -9, 12]),
        horner(e, &[63, -945, 3456, -3888]),
        e * e * horner(e, &[21, -109, 150, -24]) / (q(4) * (q(3) - e)),
        f3(e),
    ]
}

/// Signs of the computed chain of `p` at `x`, or an error when it does not
/// have the four elements of a generic cubic.
fn computed_signs(p: &UniPoly<Rational>, x: &Rational) -> Result<Vec<Sign>> {
    let seq = SturmSeq::rational(p);
    if seq.len() != 4 {
        return Err(Error::Domain(format!(
            "Sturm chain has {} elements, expected 4",
            seq.len()
        )));
    }
    Ok(seq.signs_at(x))
}

fn checked(
    poly: PolyId,
    point: EvalPoint,
    values: &[Rational],
    p: &UniPoly<Rational>,
    x: &Rational,
) -> Result<SturmTable> {
    let t = SturmTable::new(poly, point, values);
    let direct = computed_signs(p, x)?;
    if direct != t.signs {
        return Err(Error::InconsistentBranch(format!(
            "closed-form signs {} disagree with the computed chain",
            t.pattern()
        )));
    }
    Ok(t)
}

fn in_open(e: &Rational, lo: &Rational, hi: &Rational) -> bool {
    lo < e && e < hi
}

/// Tables of `g` at `ρ = 0` and `ρ = R_T²` for `0 < η < 12/5`.
pub fn sturm_table_g(eta: &Rational) -> Result<[SturmTable; 2]> {
    if !in_open(eta, &q(0), &rat(12, 5)) {
        return Err(Error::EtaOutOfRange(format!(
            "{} (expected 0 < eta < 12/5)",
            format_rational(eta)
        )));
    }
    let g = poly_g(eta);
    let rt2 = circumradius_sq_pyramid(eta)?;
    Ok([
        checked(PolyId::G, EvalPoint::Zero, &table_g_at_zero(eta), &g, &q(0))?,
        checked(
            PolyId::G,
            EvalPoint::CircumradiusSq,
            &table_g_at_rt2(eta),
            &g,
            &rt2,
        )?,
    ])
}

/// Tables of `f` at `t = 0` and `t = (3−η)/3` for `12/5 < η < 3`.
pub fn sturm_table_f(eta: &Rational) -> Result<[SturmTable; 2]> {
    if !in_open(eta, &rat(12, 5), &q(3)) {
        return Err(Error::EtaOutOfRange(format!(
            "{} (expected 12/5 < eta < 3)",
            format_rational(eta)
        )));
    }
    let f = poly_f(eta);
    let c = (q(3) - eta) / q(3);
    let tables = [
        checked(PolyId::F, EvalPoint::Zero, &table_f_at_zero(eta), &f, &q(0))?,
        checked(
            PolyId::F,
            EvalPoint::ApexHeightSq,
            &table_f_at_apex(eta),
            &f,
            &c,
        )?,
    ];
    let expected = f_case(eta).patterns();
    if tables[0].signs != expected[0] || tables[1].signs != expected[1] {
        return Err(Error::InconsistentBranch(format!(
            "sign patterns {} / {} do not match the case split",
            tables[0].pattern(),
            tables[1].pattern()
        )));
    }
    Ok(tables)
}

/// Thresholds in `(12/5, 3)` where the third chain entries of `f` change
/// sign: `v₂*` from `5η²−13η−2` (at `t = 0`) and `w₂*` from
/// `21η³−109η²+150η−24` (at `t = (3−η)/3`).
pub struct Thresholds {
    pub v2: AlgebraicReal,
    pub w2: AlgebraicReal,
    pub eta_bar: AlgebraicReal,
}

fn unique_root_in(p: &UniPoly<Rational>, lo: &Rational, hi: &Rational) -> AlgebraicReal {
    let roots: Vec<AlgebraicReal> = AlgebraicReal::real_roots(p)
        .into_iter()
        .map(|(r, _)| r)
        .filter(|r| r.cmp(&AlgebraicReal::from_rational(lo.clone())).is_gt())
        .filter(|r| r.cmp(&AlgebraicReal::from_rational(hi.clone())).is_lt())
        .collect();
    assert_eq!(roots.len(), 1, "expected a unique root of {p} in the range");
    roots.into_iter().next().unwrap()
}

pub fn thresholds() -> &'static Thresholds {
    static CELL: OnceLock<Thresholds> = OnceLock::new();
    CELL.get_or_init(|| {
        let (lo, hi) = (rat(12, 5), q(3));
        Thresholds {
            v2: unique_root_in(&qpoly(&[-2, -13, 5]), &lo, &hi),
            w2: unique_root_in(&qpoly(&[-24, 150, -109, 21]), &lo, &hi),
            eta_bar: unique_root_in(&crate::pyramid::eta_bar_poly(), &lo, &hi),
        }
    })
}

/// Position of `η ∈ (12/5, 3)` relative to `w₂* < v₂* < η̄`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FCase {
    BelowW2,
    BetweenW2V2,
    BetweenV2EtaBar,
    AboveEtaBar,
}

impl FCase {
    /// Expected sign patterns at `t = 0` and at `t = (3−η)/3`.
    pub fn patterns(self) -> [Vec<Sign>; 2] {
        use Sign::{Negative as N, Positive as P};
        match self {
            FCase::BelowW2 => [vec![P, N, N, P], vec![P, N, N, P]],
            FCase::BetweenW2V2 => [vec![P, N, N, P], vec![P, N, P, P]],
            FCase::BetweenV2EtaBar => [vec![P, N, P, P], vec![P, N, P, P]],
            FCase::AboveEtaBar => [vec![P, N, P, N], vec![P, N, P, N]],
        }
    }
}

/// Case of a rational `η ∈ (12/5, 3)`; the thresholds are irrational so
/// the comparisons are strict.
pub fn f_case(eta: &Rational) -> FCase {
    let th = thresholds();
    let e = AlgebraicReal::from_rational(eta.clone());
    if e.cmp(&th.w2).is_lt() {
        FCase::BelowW2
    } else if e.cmp(&th.v2).is_lt() {
        FCase::BetweenW2V2
    } else if e.cmp(&th.eta_bar).is_lt() {
        FCase::BetweenV2EtaBar
    } else {
        FCase::AboveEtaBar
    }
}

/// `√x` for a positive exact number.
pub fn sqrt_number(x: &Number) -> Result<Number> {
    match x {
        Number::Rational(r) => Ok(Number::Quad(QuadExt::sqrt_rational(r)?).simplify()),
        other => {
            let a = other.to_algebraic();
            let p = a.poly().compose(&UniPoly::monomial(Rational::one(), 2));
            AlgebraicReal::from_enclosure(&p, |b| {
                let iv = a.enclose(2 * b + 8);
                let iv = if iv.lo() < &Rational::zero() {
                    crate::exact::Interval::new(Rational::zero(), iv.hi().clone())
                } else {
                    iv
                };
                iv.sqrt(b + 2)
            })
            .map(|r| Number::Algebraic(r).simplify())
            .ok_or_else(|| Error::Domain("square root isolation failed".into()))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Statement {
    HulloidIsVUnionOstar,
    AdmissibleButNotRBody,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Placement {
    Interior,
    OnBoundary,
    Exterior,
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Placement::Interior => "interior",
            Placement::OnBoundary => "on-boundary",
            Placement::Exterior => "exterior",
        })
    }
}

#[derive(Clone, Debug)]
pub struct RBodyVerdict {
    pub eta: Rational,
    pub rbody: bool,
    /// `R* = √ρ` for the unique admissible `ρ` when `η < 12/5`.
    pub rstar: Option<Number>,
    pub rt2: Rational,
    /// Heights of every admissible `O*`.
    pub ostar_z: Vec<Number>,
    pub statement: Statement,
    pub reason: Placement,
    pub tables: Vec<SturmTable>,
    /// Every `O*` has four certified spheres through it.
    pub admissible: bool,
}

impl RBodyVerdict {
    pub fn to_json(&self, digits: usize) -> Value {
        let ostar: Vec<Value> = self
            .ostar_z
            .iter()
            .map(|z| json!(["0", "0", z.to_decimal(digits)]))
            .collect();
        json!({
            "eta": format_rational(&self.eta),
            "rbody": self.rbody,
            "Rstar": self.rstar.as_ref().map(|r| r.to_json(digits)),
            "RT": format!("sqrt({})", format_rational(&self.rt2)),
            "Ostar": ostar,
            "reason": self.reason,
            "statement": self.statement,
            "admissible": self.admissible,
            "tables": self.tables.iter().map(|t| json!({
                "poly": t.poly,
                "point": t.point,
                "signs": t.pattern(),
                "variations": t.variations,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Placement of `(0, 0, z)` relative to the open segment of the axis inside
/// the pyramid, `0 < z < s`.
pub fn placement(eta: &Rational, z: &Number) -> Result<Placement> {
    let s = Number::Quad(QuadExt::sqrt_rational(&((q(3) - eta) / q(3)))?);
    let zero = Number::Rational(Rational::zero());
    let lo = z.cmp_exact(&zero);
    let hi = z.cmp_exact(&s);
    Ok(if lo.is_gt() && hi.is_lt() {
        Placement::Interior
    } else if lo.is_eq() || hi.is_eq() {
        Placement::OnBoundary
    } else {
        Placement::Exterior
    })
}

fn admissible(c: &PyramidClassification) -> bool {
    c.nontrivial
        .iter()
        .all(|s| cartesian_config(&c.eta, s, 12).is_ok())
}

pub fn classify_rbody(eta: &Rational) -> Result<RBodyVerdict> {
    check_eta(eta)?;
    let c = classify(&PyramidParams::new(eta.clone())?)?;
    let rt2 = circumradius_sq_pyramid(eta)?;
    let ostar_z: Vec<Number> = c
        .nontrivial
        .iter()
        .filter(|s| s.branch == Branch::NonTrivial)
        .map(|s| s.z.clone())
        .collect();
    let adm = admissible(&c);

    if eta < &rat(12, 5) {
        let tables = sturm_table_g(eta)?;
        let g = poly_g(eta);
        if g.eval(&rt2).is_zero() {
            return Err(Error::InconsistentBranch("g vanishes at R_T^2".into()));
        }
        if tables[0].variations != tables[1].variations
            || SturmSeq::rational(&g).count_half_open(&q(0), &rt2) != 0
        {
            return Err(Error::InconsistentBranch(
                "g has a root in (0, R_T^2]".into(),
            ));
        }
        if c.nontrivial.len() != 1 {
            return Err(Error::InconsistentBranch(format!(
                "expected one admissible solution, found {}",
                c.nontrivial.len()
            )));
        }
        let sol = &c.nontrivial[0];
        if sol.rho.cmp_exact(&Number::Rational(rt2.clone())).is_le() {
            return Err(Error::InconsistentBranch("R* does not exceed R_T".into()));
        }
        let reason = placement(eta, &sol.z)?;
        let rbody = reason == Placement::Interior;
        return Ok(RBodyVerdict {
            eta: eta.clone(),
            rbody,
            rstar: Some(sqrt_number(&sol.rho)?),
            rt2,
            ostar_z,
            statement: if rbody {
                Statement::HulloidIsVUnionOstar
            } else {
                Statement::AdmissibleButNotRBody
            },
            reason,
            tables: tables.to_vec(),
            admissible: adm,
        });
    }

    let mut tables = Vec::new();
    if eta > &rat(12, 5) {
        let t = sturm_table_f(eta)?;
        let c3 = (q(3) - eta) / q(3);
        if t[0].variations != t[1].variations
            || SturmSeq::rational(&poly_f(eta)).count_open(&q(0), &c3) != 0
        {
            return Err(Error::InconsistentBranch(
                "f has a root in (0, (3-eta)/3)".into(),
            ));
        }
        tables.extend(t);
    }
    let mut reason = Placement::Exterior;
    for z in &ostar_z {
        match placement(eta, z)? {
            Placement::Interior => {
                return Err(Error::InconsistentBranch(
                    "an admissible O* lies inside the pyramid".into(),
                ))
            }
            Placement::OnBoundary => reason = Placement::OnBoundary,
            Placement::Exterior => {}
        }
    }
    Ok(RBodyVerdict {
        eta: eta.clone(),
        rbody: false,
        rstar: None,
        rt2,
        ostar_z,
        statement: Statement::AdmissibleButNotRBody,
        reason,
        tables,
        admissible: adm,
    })
}

/// Verdict as a plain label, for tabular output.
pub fn verdict_label(v: &RBodyVerdict) -> &'static str {
    if v.rbody {
        "rbody"
    } else {
        "not-rbody"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    fn signs(s: &str) -> Vec<Sign> {
        s.chars()
            .map(|c| match c {
                '+' => Sign::Positive,
                '-' => Sign::Negative,
                _ => Sign::Zero,
            })
            .collect()
    }

    #[test]
    fn closed_form_chains_match_computed() {
        for e in [
            rat(1, 3),
            int(1),
            rat(7, 4),
            int(2),
            rat(5, 2),
            rat(14, 5),
            rat(29, 10),
        ] {
            let seq = SturmSeq::rational(&poly_g(&e));
            for (a, b) in chain_g_closed_form(&e).iter().zip(seq.chain()) {
                let (ka, kb) = (a.lc().unwrap().sgn(), b.lc().unwrap().sgn());
                assert!(a.proportional(b) && ka == kb, "g chain at {e}");
            }
            let seq = SturmSeq::rational(&poly_f(&e));
            for (a, b) in chain_f_closed_form(&e).iter().zip(seq.chain()) {
                let (ka, kb) = (a.lc().unwrap().sgn(), b.lc().unwrap().sgn());
                assert!(a.proportional(b) && ka == kb, "f chain at {e}");
            }
        }
    }

    #[test]
    fn g_tables_examples() {
        let [z, r] = sturm_table_g(&int(1)).unwrap();
        assert_eq!(z.signs, signs("+--+"));
        assert_eq!(z.variations, 2);
        assert_eq!(r.variations, 2);
        let [z, r] = sturm_table_g(&int(2)).unwrap();
        assert_eq!((z.variations, r.variations), (2, 2));
        assert!(sturm_table_g(&rat(12, 5)).is_err());
    }

    #[test]
    fn f_tables_examples() {
        let [a, b] = sturm_table_f(&rat(5, 2)).unwrap();
        assert_eq!(a.signs, signs("+--+"));
        assert_eq!(b.signs, signs("+--+"));
        let [a, b] = sturm_table_f(&rat(14, 5)).unwrap();
        assert_eq!(a.signs, signs("+-++"));
        assert_eq!(b.signs, signs("+-++"));
        let [a, b] = sturm_table_f(&rat(29, 10)).unwrap();
        assert_eq!(a.signs, signs("+-+-"));
        assert_eq!(a.variations, b.variations);
        assert_eq!(f_case(&rat(272, 100)), FCase::BetweenW2V2);
        assert!(sturm_table_f(&int(2)).is_err());
    }

    #[test]
    fn threshold_values() {
        let th = thresholds();
        assert!((th.v2.to_f64() - 2.74).abs() < 0.01);
        assert!((th.w2.to_f64() - 2.71).abs() < 0.01);
        assert!(th.w2.cmp(&th.v2).is_lt() && th.v2.cmp(&th.eta_bar).is_lt());
    }

    #[test]
    fn verdicts() {
        let v = classify_rbody(&int(1)).unwrap();
        assert!(v.rbody && v.admissible);
        assert_eq!(v.statement, Statement::HulloidIsVUnionOstar);
        let r = v.rstar.unwrap();
        assert!(r.eq_exact(&Number::Quad(QuadExt::sqrt_rational(&rat(27, 32)).unwrap())));

        let v = classify_rbody(&int(2)).unwrap();
        assert!(v.rbody);
        // √1.1746… = 1.0838…; the square is a root of g exactly
        let r = v.rstar.unwrap();
        assert!((r.to_f64() - 1.0837).abs() < 2e-4);
        let g_sq = poly_g(&int(2)).compose(&UniPoly::monomial(Rational::one(), 2));
        assert_eq!(r.to_algebraic().sign_of_poly(&g_sq), Sign::Zero);

        let v = classify_rbody(&rat(12, 5)).unwrap();
        assert!(!v.rbody);
        assert_eq!(v.reason, Placement::OnBoundary);

        let v = classify_rbody(&rat(29, 10)).unwrap();
        assert!(!v.rbody);
        assert_eq!(v.reason, Placement::Exterior);
        assert_eq!(v.statement, Statement::AdmissibleButNotRBody);
    }
}
