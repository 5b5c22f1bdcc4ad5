use num_complex::Complex64;
use rand::Rng;

use super::draws::draw_lam_pair;
use super::report::{params, timed, CheckReport, Param, Residual};
use crate::error::Result;
use crate::numeric::linalg::{frobenius, CMatrix, ZERO};
use crate::operator::{
    twisted_su, ybe_grid, ybe_operators, ybe_residual_functional, ybe_test_functions,
    SpectralParams, RESIDUAL_FLOOR,
};
use crate::rmatrix::{build_family, RFamily, RParams, SpectralRMatrix};
use crate::space::BasisFamily;
use crate::special::KernelFamily;

pub const YBE_MATRIX_THRESHOLD: f64 = 1e-9;
pub const YBE_FUNCTIONAL_THRESHOLD: f64 = 1e-8;

/// Embed an `n² × n²` matrix acting on tensor slots `a < b` of `(Cⁿ)^{⊗3}`,
/// identity on the remaining slot. Product index is `x₀n² + x₁n + x₂`.
pub fn embed(r: &CMatrix, n: usize, a: usize, b: usize) -> CMatrix {
    assert!(a < b && b < 3);
    let t = 3 - a - b;
    let n3 = n * n * n;
    let digits = |x: usize| [x / (n * n), (x / n) % n, x % n];
    let mut out = CMatrix::zeros(n3, n3);
    for row in 0..n3 {
        let o = digits(row);
        for col in 0..n3 {
            let i = digits(col);
            if o[t] != i[t] {
                continue;
            }
            let v = r[(o[a] * n + o[b], i[a] * n + i[b])];
            if v != ZERO {
                out[(row, col)] = v;
            }
        }
    }
    out
}

/// `‖R₁₂(λ₁−λ₂)R₁₃(λ₁)R₂₃(λ₂) − R₂₃(λ₂)R₁₃(λ₁)R₁₂(λ₁−λ₂)‖ / max(‖LHS‖, ‖RHS‖)`
pub fn ybe_residual_matrix(
    builder: &dyn Fn(Complex64) -> Result<SpectralRMatrix>,
    lam1: Complex64,
    lam2: Complex64,
) -> Result<f64> {
    let a = builder(lam1 - lam2)?;
    let b = builder(lam1)?;
    let c = builder(lam2)?;
    let n = a.n;
    let r12 = embed(&a.data, n, 0, 1);
    let r13 = embed(&b.data, n, 0, 2);
    let r23 = embed(&c.data, n, 1, 2);
    let lhs = &r12 * &r13 * &r23;
    let rhs = &r23 * &r13 * &r12;
    let den = frobenius(&lhs).max(frobenius(&rhs)).max(RESIDUAL_FLOOR);
    Ok(frobenius(&(lhs - rhs)) / den)
}

/// Matrix YBE for one family at fixed parameters and `draws` seeded
/// `(λ₁, λ₂)` pairs.
pub fn ybe_matrix_check<R: Rng>(
    family: RFamily,
    n: usize,
    pr: &RParams,
    draws: usize,
    tol: f64,
    rng: &mut R,
) -> Result<CheckReport> {
    timed(|| {
        let builder = |l: Complex64| build_family(family, n, &pr.with_lam(l), tol);
        let mut res = Vec::with_capacity(draws);
        let mut lams = Vec::with_capacity(draws);
        for d in 0..draws {
            let (l1, l2) = draw_lam_pair(rng);
            res.push(Residual::new(
                "ybe",
                d as f64,
                ybe_residual_matrix(&builder, l1, l2)?,
            ));
            lams.push((l1, l2));
        }
        let mut ps = params([
            ("family", family.name().into()),
            ("n", n.into()),
            ("q", pr.q.into()),
            ("tau", pr.tau.into()),
            ("kappa", pr.kappa.into()),
            ("alpha", pr.alpha.into()),
            ("beta", pr.beta.into()),
        ]);
        if let Some(p) = pr.p {
            ps.push(("p".into(), Param::Complex(p)));
        }
        ps.push((
            "lambda1".into(),
            Param::List(lams.iter().flat_map(|l| [l.0.re, l.0.im]).collect()),
        ));
        ps.push((
            "lambda2".into(),
            Param::List(lams.iter().flat_map(|l| [l.1.re, l.1.im]).collect()),
        ));
        Ok(CheckReport::new("ybe", ps, res, YBE_MATRIX_THRESHOLD))
    })
}

/// Basis used for product test functions in the functional YBE.
fn test_basis(fam: KernelFamily, tol: f64) -> BasisFamily {
    match fam {
        KernelFamily::Elliptic { tau } => BasisFamily::EllipticPsi { n: 2, tau, tol },
        KernelFamily::Trig { tau1 } => BasisFamily::TrigPhi { n: 2, tau1 },
        KernelFamily::Rational => BasisFamily::Monomial { n: 3 },
    }
}

/// Functional YBE for the twisted operator of one kernel family: `draws`
/// seeded `(λ₁, λ₂)` pairs, `points` sample points and five test functions.
pub fn ybe_functional_check<R: Rng>(
    fam: KernelFamily,
    kappa: Complex64,
    alpha: Complex64,
    beta: Complex64,
    draws: usize,
    points: usize,
    tol: f64,
    rng: &mut R,
) -> Result<CheckReport> {
    timed(|| {
        let sp = SpectralParams {
            lam: kappa,
            kappa,
            alpha,
            beta,
        };
        let builder = |l: Complex64| twisted_su(fam, sp.with_lam(l), tol);
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let testfns = ybe_test_functions(
            &test_basis(fam, tol),
            &[[0, 1, 1], [1, 0, 0], [1, 1, 0]],
            &[
                [c(0.3, 0.0), c(-0.2, 0.1), c(0.1, 0.0)],
                [c(-0.5, 0.2), c(0.4, 0.0), c(0.25, -0.1)],
            ],
        );
        let mut res = Vec::with_capacity(draws);
        for d in 0..draws {
            let (l1, l2) = draw_lam_pair(rng);
            let (lhs, rhs) = ybe_operators(&builder, l1, l2)?;
            let grid = ybe_grid(&lhs, &rhs, points, rng)?;
            res.push(Residual::new(
                "ybe-functional",
                d as f64,
                ybe_residual_functional(&builder, l1, l2, &testfns, &grid)?,
            ));
        }
        let ps = params([
            ("family", fam.name().into()),
            ("kappa", kappa.into()),
            ("alpha", alpha.into()),
            ("beta", beta.into()),
            ("points", points.into()),
            ("test_functions", testfns.len().into()),
        ]);
        Ok(CheckReport::new(
            "ybe-functional",
            ps,
            res,
            YBE_FUNCTIONAL_THRESHOLD,
        ))
    })
}
