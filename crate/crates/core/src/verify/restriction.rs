use num_complex::Complex64;
use rand::Rng;

use super::report::{params, timed, CheckReport, Residual};
use crate::error::Result;
use crate::numeric::linalg::align_scalar;
use crate::operator::{restrict_to_basis, restriction_grid, twisted_su, SpectralParams};
use crate::rmatrix::{belavin_matrix, cg_trig, jcg_affine, BelavinMode};
use crate::space::{BasisFamily, MEMBERSHIP_THRESHOLD};
use crate::special::KernelFamily;

/// Which explicit table a restriction is compared against.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TableFamily {
    /// Closed-form Belavin matrix; the twist is fixed to `α = 1/2n`, `β = κ/2n`.
    Elliptic { tau: Complex64 },
    /// Trigonometric CG table at period `τ₁`.
    Trig { tau1: Complex64 },
    /// Affinized JCG matrix on monomials.
    Rational,
}

impl TableFamily {
    pub fn name(&self) -> &'static str {
        match self {
            TableFamily::Elliptic { .. } => "elliptic",
            TableFamily::Trig { .. } => "trig",
            TableFamily::Rational => "rational",
        }
    }

    pub fn threshold(&self) -> f64 {
        match self {
            TableFamily::Elliptic { .. } => 1e-5,
            _ => 1e-6,
        }
    }

    fn kernel(&self) -> KernelFamily {
        match *self {
            TableFamily::Elliptic { tau } => KernelFamily::Elliptic { tau },
            TableFamily::Trig { tau1 } => KernelFamily::Trig { tau1 },
            TableFamily::Rational => KernelFamily::Rational,
        }
    }

    fn basis(&self, n: usize, tol: f64) -> BasisFamily {
        match *self {
            TableFamily::Elliptic { tau } => BasisFamily::EllipticPsi { n, tau, tol },
            TableFamily::Trig { tau1 } => BasisFamily::TrigPhi { n, tau1 },
            TableFamily::Rational => BasisFamily::Monomial { n },
        }
    }
}

/// Sample points used for a restriction on `V ⊗ V`.
fn grid_size(n: usize) -> usize {
    4 * n * n + 8
}

/// Restrict the twisted operator to `V ⊗ V`, align it with the explicit
/// table by one least-squares scalar and report the aligned residual and
/// the membership residual of the restriction.
pub fn table_vs_restriction<R: Rng>(
    n: usize,
    family: TableFamily,
    sp: SpectralParams,
    tol: f64,
    rng: &mut R,
) -> Result<CheckReport> {
    timed(|| {
        let sp = match family {
            TableFamily::Elliptic { .. } => SpectralParams {
                alpha: Complex64::new(1.0 / (2 * n) as f64, 0.0),
                beta: sp.kappa / (2 * n) as f64,
                ..sp
            },
            _ => sp,
        };
        let table = match family {
            TableFamily::Elliptic { tau } => {
                belavin_matrix(n, tau, sp.kappa, sp.lam, BelavinMode::ClosedForm, tol)?
            }
            TableFamily::Trig { tau1 } => cg_trig(n, tau1, sp.kappa, sp.lam, sp.alpha, sp.beta)?,
            TableFamily::Rational => jcg_affine(n, sp.alpha, sp.beta, sp.kappa, sp.lam)?,
        };
        let op = twisted_su(family.kernel(), sp, tol)?;
        let grid = restriction_grid(&op, grid_size(n), rng)?;
        let (m, membership) = restrict_to_basis(&op, &family.basis(n, tol), &grid)?;
        let (scalar, aligned) = align_scalar(&m, &table.data);
        let mut ps = params([
            ("family", family.name().into()),
            ("n", n.into()),
            ("kappa", sp.kappa.into()),
            ("lambda", sp.lam.into()),
            ("alpha", sp.alpha.into()),
            ("beta", sp.beta.into()),
        ]);
        match family {
            TableFamily::Elliptic { tau } => ps.push(("tau".into(), tau.into())),
            TableFamily::Trig { tau1 } => ps.push(("tau1".into(), tau1.into())),
            TableFamily::Rational => {}
        }
        let res = vec![
            Residual::new("aligned", 0.0, aligned),
            Residual::new("membership", 1.0, membership),
        ];
        let mut report = CheckReport::new("table-vs-restriction", ps, res, family.threshold());
        report.scalars = vec![scalar];
        Ok(report)
    })
}

/// How far the twisted operator is from preserving `V ⊗ V`: the worst
/// relative expansion residual of its restriction.
pub fn invariance_check<R: Rng>(
    kernel: KernelFamily,
    basis: BasisFamily,
    sp: SpectralParams,
    tol: f64,
    rng: &mut R,
) -> Result<CheckReport> {
    timed(|| {
        let op = twisted_su(kernel, sp, tol)?;
        let grid = restriction_grid(&op, grid_size(basis.dim()), rng)?;
        let (_, membership) = restrict_to_basis(&op, &basis, &grid)?;
        let ps = params([
            ("family", kernel.name().into()),
            ("n", basis.dim().into()),
            ("kappa", sp.kappa.into()),
            ("lambda", sp.lam.into()),
            ("alpha", sp.alpha.into()),
            ("beta", sp.beta.into()),
        ]);
        Ok(CheckReport::new(
            "invariance",
            ps,
            vec![Residual::new("membership", 0.0, membership)],
            MEMBERSHIP_THRESHOLD,
        ))
    })
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

    fn sp() -> SpectralParams {
        SpectralParams {
            lam: c(0.27, 0.03),
            kappa: c(0.41, -0.02),
            alpha: c(0.2, 0.0),
            beta: c(0.13, 0.01),
        }
    }

    #[test]
    fn trig_restriction_is_the_table() {
        for tau1 in [c(1.0, 0.0), c(1.7, 0.2)] {
            let r = table_vs_restriction(
                2,
                TableFamily::Trig { tau1 },
                sp(),
                DEFAULT_TOL,
                &mut ChaCha8Rng::seed_from_u64(1),
            )
            .unwrap();
            assert!(r.passed, "{tau1} {:?}", r.residuals);
        }
    }

    #[test]
    fn elliptic_restriction_is_the_closed_form() {
        let r = table_vs_restriction(
            2,
            TableFamily::Elliptic { tau: c(0.1, 1.0) },
            sp(),
            DEFAULT_TOL,
            &mut ChaCha8Rng::seed_from_u64(2),
        )
        .unwrap();
        assert!(r.passed, "{:?}", r.residuals);
        assert!((r.scalars[0] - 1.0).norm() <= 1e-6, "{}", r.scalars[0]);
    }

    #[test]
    fn rational_restriction_is_near_exact() {
        let r = table_vs_restriction(
            2,
            TableFamily::Rational,
            sp(),
            DEFAULT_TOL,
            &mut ChaCha8Rng::seed_from_u64(3),
        )
        .unwrap();
        assert!(r.residuals[0].value <= 1e-8, "{:?}", r.residuals);
    }

    #[test]
    fn untwisted_elliptic_leaks() {
        for n in [2usize, 3] {
            let tau = c(0.0, 1.0);
            let r = invariance_check(
                KernelFamily::Elliptic { tau },
                BasisFamily::EllipticPsi {
                    n,
                    tau,
                    tol: DEFAULT_TOL,
                },
                SpectralParams::untwisted(c(0.27, 0.0), c(0.41, 0.0)),
                DEFAULT_TOL,
                &mut ChaCha8Rng::seed_from_u64(4),
            )
            .unwrap();
            assert!(!r.passed && r.worst() >= 1e-2, "n={n} {}", r.worst());
        }
    }

    #[test]
    fn twisted_elliptic_is_invariant() {
        let (n, tau, kappa) = (2usize, c(0.0, 1.0), c(0.41, 0.0));
        let sp = SpectralParams {
            lam: c(0.27, 0.0),
            kappa,
            alpha: c(0.25, 0.0),
            beta: kappa / 4.0,
        };
        let r = invariance_check(
            KernelFamily::Elliptic { tau },
            BasisFamily::EllipticPsi {
                n,
                tau,
                tol: DEFAULT_TOL,
            },
            sp,
            DEFAULT_TOL,
            &mut ChaCha8Rng::seed_from_u64(5),
        )
        .unwrap();
        assert!(r.passed, "{}", r.worst());
    }
}
