//! Jordan-Cremmer-Gervais matrices on the monomial basis, by exact
//! polynomial arithmetic.

use num_complex::Complex64;

use super::{RFamily, SpectralRMatrix};
use crate::error::{Error, Result};
use crate::numeric::linalg::CMatrix;
use crate::operator::{PointMap, SpectralParams};
use crate::space::BivariatePoly;

/// Coefficients this small outside `V ⊗ V` are treated as roundoff.
const LEAK_TOL: f64 = 1e-12;

fn check(kappa: Complex64) -> Result<()> {
    if kappa.norm() == 0.0 {
        return Err(Error::Domain("kappa must be nonzero".into()));
    }
    Ok(())
}

/// Matrix whose column `i·n + j` holds the coefficients of `op(z₁^i z₂^j)`.
fn monomial_matrix(
    n: usize,
    op: impl Fn(&BivariatePoly) -> Result<BivariatePoly>,
) -> Result<CMatrix> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    let mut m = CMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let out = op(&BivariatePoly::monomial(i, j))?;
            let (rows, cols) = out.shape();
            let scale = out.max_abs().max(1.0);
            for a in 0..rows {
                for b in 0..cols {
                    let v = out.coeff(a, b);
                    if a < n && b < n {
                        m[(a * n + b, i * n + j)] = v;
                    } else if v.norm() > LEAK_TOL * scale {
                        return Err(Error::Domain(format!(
                            "image of z1^{i} z2^{j} leaves the degree < {n} space"
                        )));
                    }
                }
            }
        }
    }
    Ok(m)
}

/// `−(1/κ) f(z₁−2β, z₂+2β) + [f(z₂, z₁) − f(z₁−2β, z₂+2β)] / (z₁ − z₂ − 2β)`
fn jcg_apply(f: &BivariatePoly, beta: Complex64, kappa: Complex64) -> Result<BivariatePoly> {
    let b = 2.0 * beta;
    let shifted = f.point_map(&PointMap::shift(vec![-b, b]))?;
    let swapped = f.point_map(&PointMap::swap())?;
    let dd = (&swapped - &shifted).exact_divide(b)?;
    Ok(&shifted.scale(-1.0 / kappa) + &dd)
}

/// `ℛ^r_{α,β}(λ) f = (1/λ) A − (1/κ) B + (A − B)/(z₁ − z₂ − 2(αλ+β))` with
/// `A = f(z₂ + 2αλ, z₁ − 2αλ)` and `B = f(z₁ − 2β, z₂ + 2β)`.
pub fn rational_twisted_apply(f: &BivariatePoly, sp: SpectralParams) -> Result<BivariatePoly> {
    let a_shift = 2.0 * sp.alpha * sp.lam;
    let b_shift = 2.0 * sp.beta;
    let a = f.point_map(&PointMap::swap_shift(a_shift, -a_shift))?;
    let b = f.point_map(&PointMap::shift(vec![-b_shift, b_shift]))?;
    let dd = (&a - &b).exact_divide(a_shift + b_shift)?;
    Ok(&(&a.scale(1.0 / sp.lam) - &b.scale(1.0 / sp.kappa)) + &dd)
}

/// The constant Jordanian matrix `R^r_β`.
pub fn jcg_matrix(n: usize, beta: Complex64, kappa: Complex64) -> Result<SpectralRMatrix> {
    check(kappa)?;
    let m = monomial_matrix(n, |f| jcg_apply(f, beta, kappa))?;
    Ok(SpectralRMatrix::new(
        n,
        m,
        RFamily::Jcg,
        vec![("beta", beta), ("kappa", kappa)],
    ))
}

/// The twisted rational operator on `V^r_n ⊗ V^r_n`.
pub fn jcg_affine(
    n: usize,
    alpha: Complex64,
    beta: Complex64,
    kappa: Complex64,
    lam: Complex64,
) -> Result<SpectralRMatrix> {
    check(kappa)?;
    if lam.norm() == 0.0 {
        return Err(Error::Domain("lambda must be nonzero".into()));
    }
    let sp = SpectralParams {
        lam,
        kappa,
        alpha,
        beta,
    };
    let m = monomial_matrix(n, |f| rational_twisted_apply(f, sp))?;
    Ok(SpectralRMatrix::new(
        n,
        m,
        RFamily::JcgAffine,
        vec![
            ("alpha", alpha),
            ("beta", beta),
            ("kappa", kappa),
            ("lambda", lam),
        ],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::linalg::{flip, frobenius};
    use crate::operator::twisted_su;
    use crate::rmatrix::Conservation;
    use crate::special::{KernelFamily, DEFAULT_TOL};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_input() {
        let kappa = c(0.7, 0.0);
        let m = jcg_matrix(2, c(0.3, 0.0), kappa).unwrap();
        assert!((m.entry(0, 0, 0, 0) - (-1.0 / kappa)).norm() < 1e-15);
        for r in 1..4 {
            assert_eq!(m.data[(r, 0)], c(0.0, 0.0));
        }
    }

    #[test]
    fn z1_input() {
        // −(1/κ)(z₁−2β) − 1
        let (beta, kappa) = (c(0.3, 0.0), c(0.7, 0.0));
        let m = jcg_matrix(2, beta, kappa).unwrap();
        assert!((m.entry(0, 0, 1, 0) - (2.0 * beta / kappa - 1.0)).norm() < 1e-15);
        assert!((m.entry(1, 0, 1, 0) - (-1.0 / kappa)).norm() < 1e-15);
        assert_eq!(m.entry(0, 1, 1, 0), c(0.0, 0.0));
    }

    // Hand expansion with β = 0, n = 2: the divided difference is
    // (f(z₂,z₁) − f(z₁,z₂))/(z₁ − z₂), which maps 1 ↦ 0, z₁ ↦ −1, z₂ ↦ 1,
    // z₁z₂ ↦ 0.
    #[test]
    fn untwisted_n2_by_hand() {
        let kappa = c(0.5, 0.0);
        let m = jcg_matrix(2, c(0.0, 0.0), kappa).unwrap();
        let mut want = CMatrix::identity(4, 4) * (-1.0 / kappa);
        want[(0, 2)] += -1.0;
        want[(0, 1)] += 1.0;
        assert!(frobenius(&(m.data - want)) < 1e-15);
    }

    #[test]
    fn affinization_identity() {
        for n in [2usize, 3, 4] {
            let (beta, kappa, lam) = (c(0.3, 0.1), c(0.7, -0.2), c(0.5, 0.05));
            let a = jcg_affine(n, c(0.0, 0.0), beta, kappa, lam).unwrap();
            let b = jcg_matrix(n, beta, kappa).unwrap();
            let d = a.data - flip(n) / lam - b.data;
            assert!(frobenius(&d) <= 1e-13, "n={n}");
        }
    }

    #[test]
    fn large_lambda_limit() {
        let (beta, kappa) = (c(0.3, 0.0), c(0.7, 0.0));
        let a = jcg_affine(3, c(0.0, 0.0), beta, kappa, c(1e8, 0.0)).unwrap();
        let b = jcg_matrix(3, beta, kappa).unwrap();
        assert!(frobenius(&(a.data - b.data)) <= 1e-6);
    }

    #[test]
    fn scalar_case() {
        let (kappa, lam) = (c(0.7, 0.0), c(0.4, 0.0));
        let a = jcg_affine(1, c(0.0, 0.0), c(0.0, 0.0), kappa, lam).unwrap();
        assert!((a.data[(0, 0)] - (1.0 / lam - 1.0 / kappa)).norm() < 1e-15);
    }

    #[test]
    fn degree_never_increases() {
        let a = jcg_affine(3, c(0.1, 0.0), c(0.3, 0.0), c(0.5, 0.0), c(0.3, 0.0)).unwrap();
        assert_eq!(a.conservation_violation(Conservation::Lowering), 0.0);
        // z₁ ↦ … + (2α + 2β/κ − 1)
        assert!((a.entry(0, 0, 1, 0) - c(0.4, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn exact_matches_pointwise_operator() {
        let sp = SpectralParams {
            lam: c(0.3, 0.0),
            kappa: c(0.5, 0.0),
            alpha: c(0.1, 0.0),
            beta: c(0.2, 0.0),
        };
        let op = twisted_su(KernelFamily::Rational, sp, DEFAULT_TOL).unwrap();
        let f = BivariatePoly::monomial(2, 1);
        let g = rational_twisted_apply(&f, sp).unwrap();
        let fe = |z: &[Complex64]| f.eval(z[0], z[1]);
        for (z1, z2) in [(c(0.1, 0.2), c(0.9, -0.1)), (c(0.6, 0.0), c(0.2, 0.15))] {
            let a = op.eval(&fe, &[z1, z2]).unwrap();
            assert!((a - g.eval(z1, z2)).norm() <= 1e-12 * a.norm());
        }
    }
}
