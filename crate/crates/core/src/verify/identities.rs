use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use super::draws::{draw_kappa, draw_lam, uniform_c};
use super::report::{params, timed, CheckReport, Residual};
use crate::error::{Error, Result};
use crate::numeric::linalg::{flip, frobenius, kron, max_abs, CMatrix};
use crate::rmatrix::{
    belavin_matrix, cg_affine, cg_constant, cg_twisted, homogeneous_twist, jcg_affine, jcg_matrix,
    principal_root, twist_matrix_f, BelavinMode,
};
use crate::space::{st_matrices, BasisFamily};
use crate::special::{
    constant_term_identity_residual, jacobi_theta1, jacobi_theta1_prime0, three_term_residual,
    KernelFamily,
};

pub const HECKE_THRESHOLD: f64 = 1e-12;
pub const BELAVIN_STRUCTURE_THRESHOLD: f64 = 1e-7;
pub const AFFINIZATION_THRESHOLD: f64 = 1e-12;
pub const THETA_IDENTITY_THRESHOLD: f64 = 1e-10;

/// `‖(Ř − q)(Ř + q⁻¹)‖ / ‖Ř‖²` with `Ř = P·R_CG`.
pub fn hecke_residual(n: usize, q: Complex64, p: Option<Complex64>) -> Result<f64> {
    let p = p.unwrap_or_else(|| principal_root(q, n.max(1)));
    let r = cg_constant(n, q, p)?;
    let rc = flip(n) * r.data;
    let id = CMatrix::identity(n * n, n * n);
    let prod = (&rc - &id * q) * (&rc + &id / q);
    let norm = frobenius(&rc);
    Ok(frobenius(&prod) / (norm * norm))
}

pub fn hecke_check(n: usize, q: Complex64, p: Option<Complex64>) -> Result<CheckReport> {
    timed(|| {
        let r = hecke_residual(n, q, p)?;
        let mut ps = params([("n", n.into()), ("q", q.into())]);
        if let Some(p) = p {
            ps.push(("p".into(), p.into()));
        }
        Ok(CheckReport::new(
            "hecke",
            ps,
            vec![Residual::new("hecke", 0.0, r)],
            HECKE_THRESHOLD,
        ))
    })
}

fn inv_unitary(m: &CMatrix) -> CMatrix {
    m.adjoint()
}

/// ℤₙ symmetry under `S⊗S` and `T⊗T`, the two λ quasi-periodicities and
/// `R(0) = ϑ₁'(0)P`, all on the weight-sum matrix.
pub fn belavin_structure_checks(
    n: usize,
    tau: Complex64,
    kappa: Complex64,
    lam: Complex64,
    tol: f64,
) -> Result<CheckReport> {
    timed(|| {
        let r = |l: Complex64| {
            Ok::<_, Error>(belavin_matrix(n, tau, kappa, l, BelavinMode::WeightSum, tol)?.data)
        };
        let rl = r(lam)?;
        let norm = frobenius(&rl);
        let (s, t) = st_matrices(n);
        let id = CMatrix::identity(n, n);
        let ss = kron(&s, &s);
        let tt = kron(&t, &t);
        let sym_s = frobenius(&(inv_unitary(&ss) * &rl * &ss - &rl)) / norm;
        let sym_t = frobenius(&(inv_unitary(&tt) * &rl * &tt - &rl)) / norm;
        let s1 = kron(&s, &id);
        let t1 = kron(&t, &id);
        let b1 = frobenius(&(r(lam + 1.0)? + inv_unitary(&s1) * &rl * &s1)) / norm;
        let xi = -kappa / n as f64 + tau / 2.0 + 0.5;
        let phase = (-2.0 * PI * Complex64::i() * (xi + lam)).exp();
        let b2 = frobenius(&(r(lam + tau)? - (&t1 * &rl * inv_unitary(&t1)) * phase)) / norm;
        let tp = jacobi_theta1_prime0(tau, tol)?;
        let init =
            frobenius(&(r(Complex64::new(0.0, 0.0))? - flip(n) * tp)) / (tp.norm() * n as f64);
        let ps = params([
            ("n", n.into()),
            ("tau", tau.into()),
            ("kappa", kappa.into()),
            ("lambda", lam.into()),
        ]);
        let res = vec![
            Residual::new("s-symmetry", 0.0, sym_s),
            Residual::new("t-symmetry", 1.0, sym_t),
            Residual::new("lambda+1", 2.0, b1),
            Residual::new("lambda+tau", 3.0, b2),
            Residual::new("initial", 4.0, init),
        ];
        Ok(CheckReport::new(
            "belavin-structure",
            ps,
            res,
            BELAVIN_STRUCTURE_THRESHOLD,
        ))
    })
}

/// Largest entrywise gap between the weight sum and `ϑ₁(λ)·` closed form,
/// relative to the largest weight-sum entry.
pub fn belavin_dual_residual(
    n: usize,
    tau: Complex64,
    kappa: Complex64,
    lam: Complex64,
    tol: f64,
) -> Result<f64> {
    let ws = belavin_matrix(n, tau, kappa, lam, BelavinMode::WeightSum, tol)?;
    let cf = belavin_matrix(n, tau, kappa, lam, BelavinMode::ClosedForm, tol)?;
    let th = jacobi_theta1(lam, tau, tol)?;
    Ok(max_abs(&(&ws.data - &cf.data * th)) / max_abs(&ws.data))
}

/// Entrywise distances from `cg_twisted` to the conjugation
/// `F(−λ)·R(λ)·F(λ)` and to the homogeneous twist of the affinized matrix,
/// relative to the largest entry.
pub fn twist_consistency(
    n: usize,
    q: Complex64,
    lam: Complex64,
    alpha: Complex64,
    beta: Complex64,
) -> Result<(f64, f64)> {
    let c2pi = Complex64::new(0.0, 2.0 * PI);
    let aff = cg_affine(n, q, principal_root(q, n), lam)?;
    let tw = cg_twisted(n, q, lam, alpha, beta)?;
    let conj = twist_matrix_f(n, alpha, beta, -lam, c2pi)
        * &aff.data
        * twist_matrix_f(n, alpha, beta, lam, c2pi);
    let hom = homogeneous_twist(&aff, alpha, beta, c2pi, lam)?;
    let scale = max_abs(&tw.data);
    Ok((
        max_abs(&(conj - &tw.data)) / scale,
        max_abs(&(hom.data - &tw.data)) / scale,
    ))
}

/// `‖R_JCG(0,β)(λ) − P/λ − R^r_β‖_F / max(1, ‖R_JCG(0,β)(λ)‖_F)`
pub fn affinization_identity_residual(
    n: usize,
    beta: Complex64,
    kappa: Complex64,
    lam: Complex64,
) -> Result<f64> {
    let a = jcg_affine(n, Complex64::new(0.0, 0.0), beta, kappa, lam)?;
    let b = jcg_matrix(n, beta, kappa)?;
    let scale = frobenius(&a.data).max(1.0);
    Ok(frobenius(&(&a.data - flip(n) / lam - b.data)) / scale)
}

pub fn affinization_check(
    n: usize,
    beta: Complex64,
    kappa: Complex64,
    lam: Complex64,
) -> Result<CheckReport> {
    timed(|| {
        let r = affinization_identity_residual(n, beta, kappa, lam)?;
        let ps = params([
            ("n", n.into()),
            ("beta", beta.into()),
            ("kappa", kappa.into()),
            ("lambda", lam.into()),
        ]);
        Ok(CheckReport::new(
            "affinization",
            ps,
            vec![Residual::new("affinization", 0.0, r)],
            AFFINIZATION_THRESHOLD,
        ))
    })
}

/// Three-term and constant-term identity residuals at `draws` seeded points.
pub fn three_term_check<R: Rng>(
    fam: KernelFamily,
    draws: usize,
    tol: f64,
    rng: &mut R,
) -> Result<CheckReport> {
    timed(|| {
        let mut res = Vec::with_capacity(2 * draws);
        for d in 0..draws {
            let mut pt = || uniform_c(rng, (-0.45, 0.45), (-0.15, 0.15));
            let (x, y, z, w) = (pt(), pt(), pt(), pt());
            res.push(Residual::new(
                "three-term",
                d as f64,
                three_term_residual(fam, x, y, z, w, tol)?,
            ));
            let u = uniform_c(rng, (0.05, 0.45), (-0.15, 0.15));
            let (lam, kappa) = (draw_lam(rng), draw_kappa(rng));
            if (lam - kappa).norm() < 0.02 {
                continue;
            }
            res.push(Residual::new(
                "constant-term",
                d as f64,
                constant_term_identity_residual(fam, u, lam, kappa, tol)?,
            ));
        }
        let ps = params([("family", fam.name().into()), ("draws", draws.into())]);
        Ok(CheckReport::new(
            "three-term",
            ps,
            res,
            THETA_IDENTITY_THRESHOLD,
        ))
    })
}

/// Worst relative residual of `ψ_a(z+1) = (−1)^{n−1}ψ_a(z)` and
/// `ψ_a(z+τ) = e^{−πinτ − 2πinz}ψ_a(z)` over `a`.
pub fn psi_quasi_periodicity_residual(
    n: usize,
    tau: Complex64,
    z: Complex64,
    tol: f64,
) -> Result<f64> {
    let fam = BasisFamily::EllipticPsi { n, tau, tol };
    fam.validate()?;
    let sign = if n.is_multiple_of(2) { -1.0 } else { 1.0 };
    let i = Complex64::i();
    let nf = n as f64;
    let factor = (-PI * i * nf * tau - 2.0 * PI * i * nf * z).exp();
    let mut worst = 0.0f64;
    for a in 0..n {
        let v = fam.eval(a, z)?;
        let v1 = fam.eval(a, z + 1.0)?;
        let vt = fam.eval(a, z + tau)?;
        worst = worst.max((v1 - sign * v).norm() / v.norm().max(v1.norm()));
        let rhs = factor * v;
        worst = worst.max((vt - rhs).norm() / vt.norm().max(rhs.norm()));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::DEFAULT_TOL;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hecke_examples() {
        assert_eq!(hecke_residual(1, c(1.7, 0.3), None).unwrap(), 0.0);
        assert!(hecke_residual(2, c(2.0, 0.0), None).unwrap() <= 1e-13);
        let q = Complex64::from_polar(1.0, 0.77);
        assert!(hecke_residual(4, q, None).unwrap() <= 1e-12);
        // the relation holds for any p
        assert!(hecke_residual(3, c(1.5, 0.0), Some(c(0.4, 0.9))).unwrap() <= 1e-12);
    }

    #[test]
    fn hecke_detects_wrong_eigenvalue() {
        // Ř built with q but tested against a different q
        let r = cg_constant(2, c(2.0, 0.0), principal_root(c(2.0, 0.0), 2)).unwrap();
        let rc = flip(2) * r.data;
        let id = CMatrix::identity(4, 4);
        let q = c(2.5, 0.0);
        let prod = (&rc - &id * q) * (&rc + &id / q);
        assert!(frobenius(&prod) / frobenius(&rc).powi(2) > 1e-2);
    }

    #[test]
    fn belavin_structure_example() {
        let r = belavin_structure_checks(2, c(0.0, 0.8), c(0.37, 0.0), c(0.19, 0.0), DEFAULT_TOL)
            .unwrap();
        assert!(r.passed, "{:?}", r.residuals);
        assert_eq!(r.residuals.len(), 5);
    }

    #[test]
    fn belavin_structure_scalar_case() {
        let r = belavin_structure_checks(1, c(0.1, 1.1), c(0.37, 0.0), c(0.19, 0.05), DEFAULT_TOL)
            .unwrap();
        assert!(r.worst() <= 1e-13, "{:?}", r.residuals);
    }

    // The (λ+τ) phase depends on κ through e^{2πiκ/n}: changing κ by Δ
    // multiplies R(λ+τ)/R(λ) by e^{2πiΔ/n} on each nonzero entry pair.
    #[test]
    fn xi_phase_follows_kappa() {
        let (n, tau, lam) = (2usize, c(0.0, 0.9), c(0.21, 0.0));
        let ratio = |kappa: Complex64| {
            let r0 = belavin_matrix(n, tau, kappa, lam, BelavinMode::WeightSum, DEFAULT_TOL)
                .unwrap()
                .data;
            let rt = belavin_matrix(
                n,
                tau,
                kappa,
                lam + tau,
                BelavinMode::WeightSum,
                DEFAULT_TOL,
            )
            .unwrap()
            .data;
            let t = st_matrices(n).1;
            let t1 = kron(&t, &CMatrix::identity(n, n));
            let conj = &t1 * r0 * t1.adjoint();
            // any entry with a large value
            let (idx, _) = conj
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
                .unwrap();
            rt.as_slice()[idx] / conj.as_slice()[idx]
        };
        let (k1, k2) = (c(0.31, 0.0), c(0.44, 0.0));
        let got = ratio(k2) / ratio(k1);
        let want = (2.0 * PI * Complex64::i() * (k2 - k1) / n as f64).exp();
        assert!((got - want).norm() <= 1e-8, "{got} {want}");
    }

    #[test]
    fn dual_routes_agree() {
        for n in [2usize, 3] {
            let r =
                belavin_dual_residual(n, c(0.0, 1.0), c(0.41, 0.02), c(0.27, -0.03), DEFAULT_TOL)
                    .unwrap();
            assert!(r <= 1e-8, "n={n} {r}");
        }
    }

    #[test]
    fn twist_routes() {
        for n in [2usize, 3, 4] {
            let (a, b) =
                twist_consistency(n, c(1.3, 0.4), c(0.27, 0.02), c(0.3, -0.1), c(0.12, 0.05))
                    .unwrap();
            assert!(a <= 1e-12 && b <= 1e-12, "n={n} {a} {b}");
        }
    }

    #[test]
    fn affinization_examples() {
        assert!(
            affinization_identity_residual(2, c(0.3, 0.0), c(0.7, 0.0), c(0.5, 0.0)).unwrap()
                <= 1e-13
        );
        assert!(
            affinization_identity_residual(1, c(0.0, 0.0), c(0.7, 0.0), c(0.5, 0.0)).unwrap()
                <= 1e-15
        );
        assert!(matches!(
            affinization_identity_residual(2, c(0.3, 0.0), c(0.7, 0.0), c(0.0, 0.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn theta_identities_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for fam in [
            KernelFamily::Elliptic { tau: c(0.1, 1.0) },
            KernelFamily::Trig { tau1: c(1.0, 0.0) },
            KernelFamily::Rational,
        ] {
            let r = three_term_check(fam, 10, DEFAULT_TOL, &mut rng).unwrap();
            assert!(r.passed, "{fam:?} {}", r.worst());
        }
    }

    #[test]
    fn psi_periodicity() {
        for n in [1usize, 2, 3] {
            assert!(
                psi_quasi_periodicity_residual(n, c(0.2, 0.9), c(0.13, 0.04), DEFAULT_TOL).unwrap()
                    <= 1e-10
            );
        }
    }
}
