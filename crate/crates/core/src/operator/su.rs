//! Shibukawa-Ueno operators, their twists, restriction to finite
//! dimensional subspaces, and the functional Yang-Baxter residual.

use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;

use super::function_op::{CoeffFn, FunctionOperator, OperatorTerm};
use super::point_map::PointMap;
use crate::error::{Error, Result};
use crate::numeric::linalg::CMatrix;
use crate::space::{BasisFamily, Expander, PoleLocus, SampleGrid, POLE_DELTA};
use crate::special::{Kernel, KernelFamily, POLE_GUARD};

/// Spectral parameter `λ`, the constant `κ` and the twist `(α, β)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralParams {
    pub lam: Complex64,
    pub kappa: Complex64,
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl SpectralParams {
    pub fn untwisted(lam: Complex64, kappa: Complex64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        SpectralParams {
            lam,
            kappa,
            alpha: zero,
            beta: zero,
        }
    }

    pub fn with_lam(self, lam: Complex64) -> Self {
        SpectralParams { lam, ..self }
    }
}

fn check_spectral(kernel: &Kernel, sp: &SpectralParams) -> Result<()> {
    if sp.kappa.norm() == 0.0 {
        return Err(Error::Domain("kappa must be nonzero".into()));
    }
    for (name, v) in [("lambda", sp.lam), ("kappa", sp.kappa)] {
        if kernel.theta(v)?.norm() < POLE_GUARD {
            return Err(Error::Pole(format!("theta vanishes at {name} = {v}")));
        }
    }
    Ok(())
}

/// `G(z₁ − z₂ − 2(αλ+β), λ) f(z₂ + 2αλ, z₁ − 2αλ) − G(z₁ − z₂ − 2(αλ+β), κ) f(z₁ − 2β, z₂ + 2β)`
pub fn twisted_su_with_kernel(kernel: &Kernel, sp: SpectralParams) -> Result<FunctionOperator> {
    check_spectral(kernel, &sp)?;
    let shift = 2.0 * (sp.alpha * sp.lam + sp.beta);
    let locus = PoleLocus::difference(2, 0, 1, shift, kernel.zeros());
    let k1 = kernel.clone();
    let lam = sp.lam;
    let c1: CoeffFn = Arc::new(move |z| k1.g(z[0] - z[1] - shift, lam));
    let k2 = kernel.clone();
    let kappa = sp.kappa;
    let c2: CoeffFn = Arc::new(move |z| Ok(-k2.g(z[0] - z[1] - shift, kappa)?));
    let a = 2.0 * sp.alpha * sp.lam;
    let b = 2.0 * sp.beta;
    FunctionOperator::new(
        2,
        vec![
            OperatorTerm {
                coeff: c1,
                map: PointMap::swap_shift(a, -a),
                loci: vec![locus.clone()],
            },
            OperatorTerm {
                coeff: c2,
                map: PointMap::shift(vec![-b, b]),
                loci: vec![locus],
            },
        ],
    )
}

/// The twisted operator `ℛ^θ_{α,β}(λ)` for one of the kernel families.
pub fn twisted_su(fam: KernelFamily, sp: SpectralParams, tol: f64) -> Result<FunctionOperator> {
    twisted_su_with_kernel(&Kernel::new(fam, tol)?, sp)
}

/// `ℛ^θ(λ) = G(z₁−z₂, λ) P − G(z₁−z₂, κ)`
pub fn su_operator(
    fam: KernelFamily,
    lam: Complex64,
    kappa: Complex64,
    tol: f64,
) -> Result<FunctionOperator> {
    twisted_su(fam, SpectralParams::untwisted(lam, kappa), tol)
}

/// `F(μ(−λ)) · R · F(μ(λ))` with `F(μ) f = f(z₁ + μ, z₂ − μ)` and
/// `μ(λ) = αλ − β`, built by composition.
pub fn twist_operator(
    base: &FunctionOperator,
    alpha: Complex64,
    beta: Complex64,
    lam: Complex64,
) -> Result<FunctionOperator> {
    let left = FunctionOperator::opposite_shift(-alpha * lam - beta);
    let right = FunctionOperator::opposite_shift(alpha * lam - beta);
    FunctionOperator::compose(&FunctionOperator::compose(&left, base)?, &right)
}

/// A grid of `count` two-variable points away from the operator's poles.
pub fn restriction_grid<R: Rng>(
    op: &FunctionOperator,
    count: usize,
    rng: &mut R,
) -> Result<SampleGrid> {
    SampleGrid::random(op.arity(), count, &op.loci(), POLE_DELTA, rng)
}

/// Matrix of `op` on `V ⊗ V` (row `k·n + l`, column `i·n + j`) by least
/// squares, and the largest relative expansion residual.
pub fn restrict_to_basis(
    op: &FunctionOperator,
    fam: &BasisFamily,
    grid: &SampleGrid,
) -> Result<(CMatrix, f64)> {
    if op.arity() != 2 || grid.arity() != 2 {
        return Err(Error::ArityMismatch {
            left: 2,
            right: if op.arity() != 2 {
                op.arity()
            } else {
                grid.arity()
            },
        });
    }
    let n = fam.dim();
    let ex = Expander::new(fam, grid)?;
    let mut m = CMatrix::zeros(n * n, n * n);
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            // basis errors cannot occur here: indices are in range and the
            // family was validated by the expander
            let f = |z: &[Complex64]| {
                fam.eval(i, z[0]).unwrap_or(Complex64::new(f64::NAN, 0.0))
                    * fam.eval(j, z[1]).unwrap_or(Complex64::new(f64::NAN, 0.0))
            };
            let vals = op.apply(&f, grid)?;
            let (c, r) = ex.expand(&vals);
            worst = worst.max(if r.is_nan() { f64::INFINITY } else { r });
            for (row, v) in c.into_iter().enumerate() {
                m[(row, i * n + j)] = v;
            }
        }
    }
    Ok((m, worst))
}

/// `R₁₂(λ₁−λ₂) R₁₃(λ₁) R₂₃(λ₂)` and `R₂₃(λ₂) R₁₃(λ₁) R₁₂(λ₁−λ₂)`.
pub fn ybe_operators(
    builder: &dyn Fn(Complex64) -> Result<FunctionOperator>,
    lam1: Complex64,
    lam2: Complex64,
) -> Result<(FunctionOperator, FunctionOperator)> {
    let r12 = builder(lam1 - lam2)?.lift(1, 2)?;
    let r13 = builder(lam1)?.lift(1, 3)?;
    let r23 = builder(lam2)?.lift(2, 3)?;
    let lhs = FunctionOperator::compose(&FunctionOperator::compose(&r12, &r13)?, &r23)?;
    let rhs = FunctionOperator::compose(&FunctionOperator::compose(&r23, &r13)?, &r12)?;
    Ok((lhs, rhs))
}

/// A three-variable grid away from every pole of both sides of the YBE.
pub fn ybe_grid<R: Rng>(
    lhs: &FunctionOperator,
    rhs: &FunctionOperator,
    count: usize,
    rng: &mut R,
) -> Result<SampleGrid> {
    let mut loci = lhs.loci();
    for l in rhs.loci() {
        if !loci.contains(&l) {
            loci.push(l);
        }
    }
    SampleGrid::random(3, count, &loci, POLE_DELTA, rng)
}

/// Denominator floor for relative residuals.
pub const RESIDUAL_FLOOR: f64 = 1e-30;

pub type TestFn = Arc<dyn Fn(&[Complex64]) -> Complex64 + Send + Sync>;

/// `max |LHS·f − RHS·f| / max(|LHS·f|, |RHS·f|)` over test functions and points.
pub fn ybe_residual_functional(
    builder: &dyn Fn(Complex64) -> Result<FunctionOperator>,
    lam1: Complex64,
    lam2: Complex64,
    testfns: &[TestFn],
    grid: &SampleGrid,
) -> Result<f64> {
    let (lhs, rhs) = ybe_operators(builder, lam1, lam2)?;
    let mut worst = 0.0f64;
    for f in testfns {
        let a = lhs.apply(f.as_ref(), grid)?;
        let b = rhs.apply(f.as_ref(), grid)?;
        for (x, y) in a.iter().zip(&b) {
            let den = x.norm().max(y.norm()).max(RESIDUAL_FLOOR);
            worst = worst.max((x - y).norm() / den);
        }
    }
    Ok(worst)
}

/// Products `f_a(z₁) f_b(z₂) f_c(z₃)` of basis functions plus exponentials
/// `e^{c·z}` with the given exponent vectors.
pub fn ybe_test_functions(
    fam: &BasisFamily,
    triples: &[[usize; 3]],
    exponents: &[[Complex64; 3]],
) -> Vec<TestFn> {
    let mut out: Vec<TestFn> = Vec::new();
    for &[a, b, c] in triples {
        let fam = *fam;
        out.push(Arc::new(move |z: &[Complex64]| {
            let e = |i, x| fam.eval(i, x).unwrap_or(Complex64::new(f64::NAN, 0.0));
            e(a, z[0]) * e(b, z[1]) * e(c, z[2])
        }));
    }
    for &cs in exponents {
        out.push(Arc::new(move |z: &[Complex64]| {
            (cs[0] * z[0] + cs[1] * z[1] + cs[2] * z[2]).exp()
        }));
    }
    out
}
