use num_traits::Zero;
use proptest::prelude::*;

use equisphere::cayley_menger::{
    circumradius_sq_triangle, cm_membership_residual, cm_sphere_residual, distance_matrix,
};
use equisphere::exact::{rat, MPoly, QuadExt, Rational};
use equisphere::plane::{
    circumcircle_check, embed_triangle, johnson_solution, orthocenter_cartesian_oracle,
    plane_system_polys, plane_system_residuals, TriangleParams,
};

fn rational(lo: i64, hi: i64, den: i64) -> impl Strategy<Value = Rational> {
    (lo * den..hi * den, 1..=den).prop_map(|(n, d)| rat(n, d))
}

fn triangle() -> impl Strategy<Value = TriangleParams> {
    (rational(0, 6, 7), rational(0, 6, 7), rational(0, 6, 7))
        .prop_filter_map("non-degenerate", |(a, b, c)| {
            TriangleParams::new(a, b, c).ok()
        })
}

fn q(r: &Rational) -> QuadExt {
    QuadExt::rational(r.clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn johnson_matches_oracle(t in triangle()) {
        let s = johnson_solution(&t).unwrap();
        prop_assert!(s.residuals(&t).iter().all(|r| r.is_zero()));
        let (e, h) = orthocenter_cartesian_oracle(&t).unwrap();
        let d = e.distance_coords(&h);
        for (x, y) in d.iter().zip(&s.coords) {
            prop_assert_eq!(x, &q(y));
        }
    }

    #[test]
    fn membership_is_relabeling_symmetric(t in triangle(), p in prop::collection::vec(rational(0, 5, 9), 3), perm in Just([2usize, 0, 1]).prop_union(Just([1, 0, 2]))) {
        // upper triangle order d01, d02, d12
        let d = [t.c().clone(), t.b().clone(), t.a().clone()];
        let m = distance_matrix(3, &d).unwrap();
        let base = cm_membership_residual(&m, &p).unwrap();
        let pm: Vec<Vec<Rational>> = (0..3).map(|i| (0..3).map(|j| m[perm[i]][perm[j]].clone()).collect()).collect();
        let pp: Vec<Rational> = perm.iter().map(|&i| p[i].clone()).collect();
        prop_assert_eq!(cm_membership_residual(&pm, &pp).unwrap(), base);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn edge_circles_force_the_circumradius(t in triangle()) {
        let s = johnson_solution(&t).unwrap();
        let r2 = circumradius_sq_triangle(t.a(), t.b(), t.c()).unwrap();
        let [x, y, z] = s.coords.clone();
        let edges = [(t.a(), [y.clone(), z.clone()]), (t.b(), [x.clone(), z.clone()]), (t.c(), [x, y])];
        for (d, pc) in edges {
            let m = distance_matrix(2, std::slice::from_ref(d)).unwrap();
            // the residual is affine in ρ: its only root is R²
            let f0 = cm_sphere_residual(&m, &pc, &Rational::zero()).unwrap();
            let f1 = cm_sphere_residual(&m, &pc, &rat(1, 1)).unwrap();
            prop_assert!(!(&f1 - &f0).is_zero());
            prop_assert_eq!(-&f0 / (&f1 - &f0), r2.clone());
        }
    }

    #[test]
    fn circumcircle_points_and_interior_points(t in triangle(), m in rational(-8, 8, 11), al in rational(0, 1, 13), be in rational(0, 1, 13)) {
        let e = embed_triangle(&t).unwrap();
        let (a, b, c) = (q(t.a()), q(t.b()), q(t.c()));
        let r2 = q(&t.circumradius_sq());
        let [x, y, z] = e.distance_coords(&e.circumcircle_point(&m));
        prop_assert!(circumcircle_check(&a, &b, &c, &x, &y, &z).unwrap());
        prop_assert!(plane_system_residuals(&a, &b, &c, &x, &y, &z, &r2).iter().all(|r| r.is_zero()));

        prop_assume!(&al + &be < rat(1, 1) && al > Rational::zero() && be > Rational::zero());
        let p = e.barycentric(&al, &be);
        let (_, h) = orthocenter_cartesian_oracle(&t).unwrap();
        prop_assume!(p != h);
        let [x, y, z] = e.distance_coords(&p);
        let res = plane_system_residuals(&a, &b, &c, &x, &y, &z, &r2);
        prop_assert!(res.iter().any(|r| !r.is_zero()));
    }
}

#[test]
fn membership_determinant_is_first_polynomial() {
    let v = MPoly::var;
    let m = distance_matrix(3, &[v("C"), v("B"), v("A")]).unwrap();
    let det = cm_membership_residual(&m, &[v("X"), v("Y"), v("Z")]).unwrap();
    let k = det
        .proportional(&plane_system_polys()[0])
        .expect("proportional");
    assert!(!k.is_zero());
}

#[test]
fn collapsed_triangle_components() {
    // A = 0 with X = 0, Y = Z = B = C satisfies every equation for every ρ
    for r in [rat(1, 3), rat(5, 2)] {
        let b = rat(7, 4);
        let z = Rational::zero();
        let res = plane_system_residuals(&z, &b, &b, &z, &b, &b, &r);
        assert!(res.iter().all(|x| x.is_zero()));
    }
}
