use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use equisphere::exact::resultant::discriminant;
use equisphere::exact::{rat, AlgebraicReal, QuadExt, Rational, SturmSeq, UniPoly};
use equisphere::pyramid::{disc_f_factored, disc_g_factored, poly_f, poly_g};

fn rational(lo: i64, hi: i64, den: i64) -> impl Strategy<Value = Rational> {
    (lo * den..hi * den, 1..=den).prop_map(|(n, d)| rat(n, d))
}

fn eta() -> impl Strategy<Value = Rational> {
    (1i64..300, Just(100i64)).prop_map(|(n, d)| rat(n, d))
}

/// `lc · Π(x − rᵢ) · (x² + k)^e` with known rational roots.
fn with_roots() -> impl Strategy<Value = (UniPoly<Rational>, Vec<Rational>)> {
    (
        prop::collection::vec((-12i64..12, 1i64..4), 1..5),
        0usize..2,
        1i64..5,
        prop_oneof![Just(1i64), Just(-3i64)],
    )
        .prop_map(|(roots, quad, k, lc)| {
            let rs: Vec<Rational> = roots.iter().map(|&(n, d)| rat(n, d)).collect();
            let mut p = UniPoly::constant(rat(lc, 1));
            for r in &rs {
                p = p * UniPoly::linear_root(r.clone());
            }
            if quad == 1 {
                p = p * UniPoly::new(vec![rat(k, 1), Rational::zero(), Rational::one()]);
            }
            (p, rs)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sturm_counts_distinct_roots((p, roots) in with_roots(), a in rational(-14, 0, 7), b in rational(0, 14, 7)) {
        prop_assume!(!p.eval(&a).is_zero() && !p.eval(&b).is_zero());
        let seq = SturmSeq::rational(&p);
        let mut inside: Vec<&Rational> = roots.iter().filter(|r| **r > a && **r < b).collect();
        inside.sort();
        inside.dedup();
        prop_assert_eq!(seq.variations_at(&a) - seq.variations_at(&b), inside.len());
        // brute force on a grid finer than the root spacing (1/12 apart at least)
        let sf = p.square_free_part();
        let n = 2000;
        let step = (&b - &a) / Rational::from_integer(n.into());
        let mut changes = 0;
        let mut prev = sf.eval(&a).signum();
        for i in 1..=n {
            let x = &a + &step * Rational::from_integer(i.into());
            let v = sf.eval(&x).signum();
            if v.is_zero() {
                changes += 1;
                prev = v;
                continue;
            }
            if !prev.is_zero() && v != prev {
                changes += 1;
            }
            prev = v;
        }
        prop_assert_eq!(changes, inside.len());
    }

    #[test]
    fn square_free_part_divides((p, _) in with_roots()) {
        let s = p.square_free_part();
        prop_assert!(s.divides(&p));
        let g = UniPoly::gcd(&s, &s.derivative());
        prop_assert!(g.is_constant());
    }

    #[test]
    fn isolating_intervals_change_sign((p, _) in with_roots()) {
        for (r, _) in AlgebraicReal::real_roots(&p) {
            if r.is_rational() {
                prop_assert!(r.poly().eval(r.lo()).is_zero());
            } else {
                let (lo, hi) = (r.poly().eval(r.lo()), r.poly().eval(r.hi()));
                prop_assert!(lo.signum() * hi.signum() == -Rational::one());
            }
        }
    }

    #[test]
    fn quadratic_norm(a in rational(-20, 20, 9), b in rational(-20, 20, 9), d in prop::sample::select(vec![2u64, 3, 5, 6, 7, 57])) {
        let x = QuadExt::new(a.clone(), b.clone(), d).unwrap();
        let prod = x.clone() * x.conjugate();
        let want = &a * &a - &b * &b * Rational::from_integer(d.into());
        prop_assert_eq!(prod, QuadExt::rational(want));
    }

    #[test]
    fn discriminants_match_closed_forms(e in eta()) {
        prop_assert_eq!(discriminant(&poly_g(&e)), disc_g_factored(&e));
        prop_assert_eq!(discriminant(&poly_f(&e)), disc_f_factored(&e));
    }
}
