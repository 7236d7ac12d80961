use num_traits::{One, Zero};
use proptest::prelude::*;

use equisphere::exact::{rat, AlgebraicReal, Enclose, Interval, Number, Rational, SturmSeq};
use equisphere::general_tetra::{general_system_residuals, TetraParams};
use equisphere::pyramid::{
    classify, poly_f, poly_g, Branch, EtaValue, PyramidParams, PyramidSolution,
};
use equisphere::rbody::classify_rbody;

const BITS: u32 = 160;

fn eta_above() -> impl Strategy<Value = Rational> {
    (1i64..600).prop_map(|k| rat(12, 5) + rat(k, 1000))
}

fn eta() -> impl Strategy<Value = Rational> {
    (1i64..60, 1i64..=20).prop_filter_map("eta in (0, 3)", |(n, d)| {
        let e = rat(n, d);
        (e > Rational::zero() && e < rat(3, 1)).then_some(e)
    })
}

fn tiny(iv: &Interval) -> bool {
    iv.contains_zero() && iv.width() < rat(1, 10i64.pow(15)) * rat(1, 10i64.pow(15))
}

/// Recomputes `X` and `Y` from the height alone: `X = (s − z)²`, `Y = z² + η/3`.
fn axis_consistent(eta: &Rational, s: &PyramidSolution) -> bool {
    let e = Interval::point(eta.clone());
    let apex = (Interval::one() - e.clone() * Interval::point(rat(1, 3))).sqrt(BITS);
    let z = s.z.enclose(BITS);
    let x = (apex - z.clone()).square() - s.x.enclose(BITS);
    let y = z.square() + e * Interval::point(rat(1, 3)) - s.y.enclose(BITS);
    x.contains_zero()
        && y.contains_zero()
        && x.width() < rat(1, 1 << 40)
        && y.width() < rat(1, 1 << 40)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn solutions_satisfy_both_systems(e in eta()) {
        let c = classify(&PyramidParams::new(e.clone()).unwrap()).unwrap();
        let ev = EtaValue::Rational(e.clone());
        let d = TetraParams::pyramid(&e).unwrap().lifted::<Interval>();
        for s in c.trivial.iter().chain(&c.nontrivial) {
            for r in s.residual_enclosures(&ev, BITS) {
                prop_assert!(tiny(&r), "eqnl residual {:?}", r);
            }
            let (x, y) = (s.x.enclose(BITS), s.y.enclose(BITS));
            let p = [x, y.clone(), y.clone(), y];
            for r in general_system_residuals(&d, &p, &s.rho.enclose(BITS)) {
                prop_assert!(r.contains_zero() && r.width() < rat(1, 1 << 50), "general residual {:?}", r);
            }
            prop_assert!(axis_consistent(&e, s));
        }
    }

    #[test]
    fn trivial_solutions_are_the_poles(e in eta()) {
        let c = classify(&PyramidParams::new(e.clone()).unwrap()).unwrap();
        let rt2 = rat(3, 1) / (rat(12, 1) - rat(4, 1) * &e);
        prop_assert_eq!(c.trivial.len(), 2);
        for s in &c.trivial {
            prop_assert!(s.rho.eq_exact(&Number::Rational(rt2.clone())));
            match s.branch {
                // apex: X = 0
                Branch::TrivialNorth => prop_assert!(s.x.eq_exact(&Number::Rational(Rational::zero()))),
                // antipode of the apex: X = (2R)²
                Branch::TrivialSouth => {
                    prop_assert!(s.x.eq_exact(&Number::Rational(rat(4, 1) * &rt2)));
                    prop_assert!(s.z.sgn() == equisphere::exact::Sign::Negative);
                }
                Branch::NonTrivial => prop_assert!(false, "non-trivial in trivial list"),
            }
        }
    }

    #[test]
    fn every_root_of_g_is_accounted_for(e in eta()) {
        let c = classify(&PyramidParams::new(e.clone()).unwrap()).unwrap();
        let roots: Vec<(AlgebraicReal, usize)> = AlgebraicReal::real_roots(&poly_g(&e))
            .into_iter()
            .filter(|(r, _)| r.sgn() == equisphere::exact::Sign::Positive)
            .collect();
        let mult_of = |rho: &Number| -> Option<usize> {
            let a = rho.to_algebraic();
            roots.iter().find(|(r, _)| r.cmp(&a).is_eq()).map(|(_, m)| *m)
        };
        let mut seen: Vec<Number> = Vec::new();
        for (rho, m) in c.nontrivial.iter().map(|s| (&s.rho, s.multiplicity))
            .chain(c.complex.iter().map(|b| (&b.rho, b.multiplicity)))
        {
            prop_assert_eq!(mult_of(rho), Some(m));
            if !seen.iter().any(|r| r.eq_exact(rho)) {
                seen.push(rho.clone());
            }
        }
        prop_assert_eq!(seen.len(), roots.len());
    }

    #[test]
    fn g_has_no_root_up_to_the_circumradius(e in eta()) {
        prop_assume!(e < rat(12, 5));
        let rt2 = rat(3, 1) / (rat(12, 1) - rat(4, 1) * &e);
        let s = SturmSeq::new(&poly_g(&e));
        prop_assert_eq!(s.count_half_open(&Rational::zero(), &rt2), 0);
    }

    #[test]
    fn f_has_no_root_below_the_apex_height(e in eta_above()) {
        prop_assume!(e > rat(12, 5));
        let t = (rat(3, 1) - &e) / rat(3, 1);
        let s = SturmSeq::new(&poly_f(&e));
        prop_assert_eq!(s.count_open(&Rational::zero(), &t), 0);
    }
}

#[test]
fn rbody_verdict_flips_at_twelve_fifths() {
    let (mut lo, mut hi) = (rat(1, 1), rat(14, 5));
    assert!(classify_rbody(&lo).unwrap().rbody);
    assert!(!classify_rbody(&hi).unwrap().rbody);
    for _ in 0..18 {
        let mid = (&lo + &hi) / rat(2, 1);
        if classify_rbody(&mid).unwrap().rbody {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let target = rat(12, 5);
    assert!(lo < target && target <= hi, "flip in [{lo}, {hi}]");
    assert!(&hi - &lo < rat(1, 10_000));
    assert!(!classify_rbody(&target).unwrap().rbody);
}

#[test]
fn eta_bar_has_a_double_root() {
    let c = equisphere::pyramid::classify_eta_bar().unwrap();
    let double = c
        .nontrivial
        .iter()
        .map(|s| s.multiplicity)
        .chain(c.complex.iter().map(|b| b.multiplicity))
        .any(|m| m == 2);
    assert!(c
        .nontrivial
        .iter()
        .chain(&c.trivial)
        .all(|s| s.residual_enclosures(&EtaValue::Bar, BITS).iter().all(tiny)));
    assert!(double);
}
