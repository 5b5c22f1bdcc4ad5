use proptest::prelude::*;
use twisted_su::numeric::ddouble::DDouble;
use twisted_su::numeric::linalg::frobenius;
use twisted_su::operator::PointMap;
use twisted_su::rmatrix::{
    belavin_matrix, cg_affine, cg_twisted, jcg_affine, BelavinMode, Conservation, RFamily,
};
use twisted_su::space::BivariatePoly;
use twisted_su::special::{jacobi_theta1, kernel_g, KernelFamily, DEFAULT_TOL};
use twisted_su::verify::{affinization_identity_residual, hecke_residual, twist_consistency};
use twisted_su::Complex64;

fn cplx(re: std::ops::Range<f64>, im: std::ops::Range<f64>) -> impl Strategy<Value = Complex64> {
    (re, im).prop_map(|(a, b)| Complex64::new(a, b))
}

fn q_strategy() -> impl Strategy<Value = Complex64> {
    (0.6f64..1.8, -1.0f64..1.0)
        .prop_map(|(r, t)| Complex64::from_polar(r, t))
        .prop_filter("away from q = 1", |q| (q - 1.0).norm() > 0.2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn theta1_is_odd_and_antiperiodic(z in cplx(-0.5..0.5, -0.3..0.3), t in cplx(-0.3..0.3, 0.6..1.5)) {
        let a = jacobi_theta1(z, t, DEFAULT_TOL).unwrap();
        let b = jacobi_theta1(-z, t, DEFAULT_TOL).unwrap();
        let c = jacobi_theta1(z + 1.0, t, DEFAULT_TOL).unwrap();
        let s = a.norm().max(1e-300);
        prop_assert!((a + b).norm() <= 1e-12 * s);
        prop_assert!((a + c).norm() <= 1e-12 * s);
    }

    #[test]
    fn kernel_is_symmetric(z in cplx(0.05..0.45, -0.2..0.2), l in cplx(0.05..0.45, -0.2..0.2), tau1 in 0.8f64..2.0) {
        for fam in [KernelFamily::Trig { tau1: Complex64::new(tau1, 0.0) }, KernelFamily::Rational] {
            let a = kernel_g(fam, z, l, DEFAULT_TOL).unwrap();
            let b = kernel_g(fam, l, z, DEFAULT_TOL).unwrap();
            prop_assert!((a - b).norm() <= 1e-12 * a.norm());
        }
    }

    #[test]
    fn cg_families_are_homogeneous(n in 1usize..5, q in q_strategy(), lam in cplx(0.1..0.5, -0.1..0.1),
                                   al in cplx(-0.4..0.4, -0.05..0.05), be in cplx(-0.3..0.3, -0.05..0.05)) {
        let p = twisted_su::rmatrix::principal_root(q, n);
        let a = cg_affine(n, q, p, lam).unwrap();
        let t = cg_twisted(n, q, lam, al, be).unwrap();
        prop_assert_eq!(a.conservation_violation(Conservation::Integer), 0.0);
        prop_assert_eq!(t.conservation_violation(RFamily::CgTwisted.conservation()), 0.0);
    }

    #[test]
    fn jcg_never_raises_degree(n in 1usize..5, al in cplx(-0.4..0.4, -0.05..0.05), be in cplx(-0.3..0.3, -0.05..0.05),
                               kappa in cplx(0.2..0.8, -0.05..0.05), lam in cplx(0.1..0.5, -0.05..0.05)) {
        let m = jcg_affine(n, al, be, kappa, lam).unwrap();
        prop_assert_eq!(m.conservation_violation(Conservation::Lowering), 0.0);
    }

    #[test]
    fn belavin_is_modular_homogeneous(n in 1usize..4, t in cplx(-0.3..0.3, 0.6..1.5),
                                      kappa in cplx(0.2..0.6, -0.05..0.05), lam in cplx(0.1..0.45, -0.05..0.05)) {
        let m = belavin_matrix(n, t, kappa, lam, BelavinMode::ClosedForm, DEFAULT_TOL).unwrap();
        prop_assert_eq!(m.conservation_violation(Conservation::Modular), 0.0);
    }

    #[test]
    fn hecke_holds_for_any_p(n in 1usize..5, q in q_strategy(), p in cplx(0.5..1.5, -0.5..0.5)) {
        prop_assert!(hecke_residual(n, q, Some(p)).unwrap() <= 1e-12);
    }

    #[test]
    fn twist_routes_agree(n in 2usize..5, q in q_strategy(), lam in cplx(0.1..0.5, -0.05..0.05),
                          al in cplx(-0.4..0.4, -0.05..0.05), be in cplx(-0.3..0.3, -0.05..0.05)) {
        let (a, b) = twist_consistency(n, q, lam, al, be).unwrap();
        prop_assert!(a <= 1e-12 && b <= 1e-12);
    }

    #[test]
    fn affinization_identity(n in 1usize..5, be in cplx(-0.3..0.3, -0.05..0.05),
                             kappa in cplx(0.2..0.8, -0.05..0.05), lam in cplx(0.1..0.5, -0.05..0.05)) {
        prop_assert!(affinization_identity_residual(n, be, kappa, lam).unwrap() <= 1e-12);
    }

    #[test]
    fn point_maps_compose_in_order(s in prop::collection::vec(cplx(-1.0..1.0, -1.0..1.0), 4),
                                   z in prop::collection::vec(cplx(-1.0..1.0, -1.0..1.0), 2)) {
        let a = PointMap::swap_shift(s[0], s[1]);
        let b = PointMap::shift(vec![s[2], s[3]]);
        let lhs = a.then(&b).act(&z);
        let rhs = b.act(&a.act(&z));
        for (x, y) in lhs.iter().zip(&rhs) {
            prop_assert!((x - y).norm() <= 1e-14);
        }
    }

    #[test]
    fn divided_difference_inverts_multiplication(coeffs in prop::collection::vec(cplx(-2.0..2.0, -2.0..2.0), 6),
                                                 c in cplx(-1.0..1.0, -1.0..1.0)) {
        let f = BivariatePoly::from_coeffs(vec![coeffs[0..3].to_vec(), coeffs[3..6].to_vec()]);
        // (z₁ − z₂ − c)·f divided by the same factor gives back f
        let line = BivariatePoly::linear(Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0), -c);
        let g = (&line * &f).exact_divide(c).unwrap();
        let (rows, cols) = f.shape();
        for i in 0..rows.max(g.shape().0) {
            for j in 0..cols.max(g.shape().1) {
                prop_assert!((g.coeff(i, j) - f.coeff(i, j)).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn ddouble_sum_is_exact(a in -1e3f64..1e3, b in -1e-10f64..1e-10) {
        let s = DDouble::from_f64(a) + DDouble::from_f64(b);
        let back = s - DDouble::from_f64(a);
        prop_assert_eq!(back.to_f64(), b);
    }
}

#[test]
fn frobenius_of_identity() {
    let id = twisted_su::numeric::linalg::CMatrix::identity(4, 4);
    assert!((frobenius(&id) - 2.0).abs() < 1e-15);
}
