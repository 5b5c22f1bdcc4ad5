//! Cremmer-Gervais matrices: constant, affinized and twisted.

use num_complex::Complex64;

use super::{Conservation, RFamily, SpectralRMatrix};
use crate::error::{Error, Result};
use crate::numeric::dense::Dense;
use crate::numeric::field::{sgn, Field};
use crate::numeric::linalg::{CMatrix, ZERO};

fn check_nonzero(name: &str, x: Complex64) -> Result<()> {
    if x.norm() == 0.0 || !x.is_finite() {
        return Err(Error::Domain(format!(
            "{name} must be finite and nonzero, got {x}"
        )));
    }
    Ok(())
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    Ok(())
}

/// Principal `n`-th root `exp(log q / n)`.
pub fn principal_root(q: Complex64, n: usize) -> Complex64 {
    (q.ln() / n as f64).exp()
}

fn table<F: Field>(n: usize, entry: impl Fn(i64, i64, i64, i64) -> F) -> Dense<F> {
    let nn = n * n;
    let mut out = Dense::zeros(nn, nn);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let Some(l) = (i + j).checked_sub(k).filter(|&l| l < n) else {
                    continue;
                };
                out.set(
                    k * n + l,
                    i * n + j,
                    entry(i as i64, j as i64, k as i64, l as i64),
                );
            }
        }
    }
    out
}

/// The constant table, before the `p^{2(j−k)}` factor.
fn cg_constant_case<F: Field>(q: F, i: i64, j: i64, k: i64) -> F {
    if i == k && i >= j {
        q
    } else if i == k {
        F::one() / q
    } else if i < k && k < j {
        -q.hat()
    } else if j <= k && k < i {
        q.hat()
    } else {
        F::zero()
    }
}

pub fn cg_constant_table<F: Field>(n: usize, q: F, p: F) -> Dense<F> {
    table(n, |i, j, k, _| {
        p.powi(2 * (j - k) as i32) * cg_constant_case(q, i, j, k)
    })
}

pub fn cg_affine_table<F: Field>(n: usize, q: F, p: F, eta: F) -> Dense<F> {
    table(n, |i, j, k, l| {
        let v = if i == j && j == k {
            (q / eta).hat()
        } else if i == k && k != l {
            -eta.hat() * q.powi(sgn(i - j))
        } else if i.min(j) < k && k < i.max(j) {
            F::from_i64(sgn(j - i) as i64) * eta.hat() * q.hat()
        } else if j == k && k != l {
            q.hat() * eta.powi(sgn(j - i))
        } else {
            F::zero()
        };
        p.powi(2 * (j - k) as i32) * v
    })
}

/// Entries `ζ^{2(i−k)} γ^{2(j−k)}` times the affinized table.
pub fn cg_twisted_table<F: Field>(n: usize, q: F, p: F, eta: F, zeta: F, gamma: F) -> Dense<F> {
    let mut t = cg_affine_table(n, q, p, eta);
    for i in 0..n as i64 {
        for j in 0..n as i64 {
            for k in 0..n as i64 {
                let l = i + j - k;
                if !(0..n as i64).contains(&l) {
                    continue;
                }
                let (r, c) = ((k * n as i64 + l) as usize, (i * n as i64 + j) as usize);
                let f = zeta.powi(2 * (i - k) as i32) * gamma.powi(2 * (j - k) as i32);
                t.set(r, c, f * t.get(r, c));
            }
        }
    }
    t
}

/// The twisted table representing `ℛ^t_{α,β}(λ)` with period `τ₁` on the
/// `φ_k(z/τ₁)` basis: `q = e^{πiκ/τ₁}`, `p = e^{πiκ/(nτ₁)}`, `η = e^{πiλ/τ₁}`,
/// `ζ = e^{2πiαλ/τ₁}`, `γ = e^{2πi(β − κ/2n)/τ₁}`.
pub fn cg_trig_table<F: Field>(n: usize, tau1: F, kappa: F, lam: F, alpha: F, beta: F) -> Dense<F> {
    let ipi = F::i_pi();
    let two = F::from_i64(2);
    let nf = F::from_i64(n as i64);
    let q = (ipi * kappa / tau1).exp();
    let p = (ipi * kappa / (nf * tau1)).exp();
    let eta = (ipi * lam / tau1).exp();
    let zeta = (two * ipi * alpha * lam / tau1).exp();
    let gamma = (two * ipi * (beta - kappa / (two * nf)) / tau1).exp();
    cg_twisted_table(n, q, p, eta, zeta, gamma)
}

pub fn cg_constant(n: usize, q: Complex64, p: Complex64) -> Result<SpectralRMatrix> {
    check_n(n)?;
    check_nonzero("q", q)?;
    check_nonzero("p", p)?;
    Ok(SpectralRMatrix::new(
        n,
        cg_constant_table(n, q, p).to_cmatrix(),
        RFamily::CgConstant,
        vec![("q", q), ("p", p)],
    ))
}

fn eta_of(lam: Complex64) -> Complex64 {
    (Complex64::i() * std::f64::consts::PI * lam).exp()
}

pub fn cg_affine(n: usize, q: Complex64, p: Complex64, lam: Complex64) -> Result<SpectralRMatrix> {
    check_n(n)?;
    check_nonzero("q", q)?;
    check_nonzero("p", p)?;
    let eta = eta_of(lam);
    check_nonzero("eta", eta)?;
    Ok(SpectralRMatrix::new(
        n,
        cg_affine_table(n, q, p, eta).to_cmatrix(),
        RFamily::CgAffine,
        vec![("q", q), ("p", p), ("lambda", lam), ("eta", eta)],
    ))
}

/// Two-parameter twisted family with an explicit `p`.
pub fn cg_twisted_with_p(
    n: usize,
    q: Complex64,
    p: Complex64,
    lam: Complex64,
    alpha: Complex64,
    beta: Complex64,
) -> Result<SpectralRMatrix> {
    check_n(n)?;
    check_nonzero("q", q)?;
    check_nonzero("p", p)?;
    let two_pi_i = 2.0 * std::f64::consts::PI * Complex64::i();
    let eta = eta_of(lam);
    let zeta = (two_pi_i * alpha * lam).exp();
    let gamma = (two_pi_i * beta).exp();
    for (name, v) in [("eta", eta), ("zeta", zeta), ("gamma", gamma)] {
        check_nonzero(name, v)?;
    }
    Ok(SpectralRMatrix::new(
        n,
        cg_twisted_table(n, q, p, eta, zeta, gamma).to_cmatrix(),
        RFamily::CgTwisted,
        vec![
            ("q", q),
            ("p", p),
            ("lambda", lam),
            ("alpha", alpha),
            ("beta", beta),
            ("eta", eta),
            ("zeta", zeta),
            ("gamma", gamma),
        ],
    ))
}

/// Twisted family with `p` the principal `n`-th root of `q`.
pub fn cg_twisted(
    n: usize,
    q: Complex64,
    lam: Complex64,
    alpha: Complex64,
    beta: Complex64,
) -> Result<SpectralRMatrix> {
    check_n(n)?;
    check_nonzero("q", q)?;
    cg_twisted_with_p(n, q, principal_root(q, n), lam, alpha, beta)
}

/// The trigonometric table at period `τ₁` (see [`cg_trig_table`]).
pub fn cg_trig(
    n: usize,
    tau1: Complex64,
    kappa: Complex64,
    lam: Complex64,
    alpha: Complex64,
    beta: Complex64,
) -> Result<SpectralRMatrix> {
    check_n(n)?;
    check_nonzero("tau1", tau1)?;
    let m = cg_trig_table(n, tau1, kappa, lam, alpha, beta).to_cmatrix();
    if m.iter().any(|z| !z.is_finite()) {
        return Err(Error::Domain("trigonometric table overflowed".into()));
    }
    Ok(SpectralRMatrix::new(
        n,
        m,
        RFamily::CgTwisted,
        vec![
            ("tau1", tau1),
            ("kappa", kappa),
            ("lambda", lam),
            ("alpha", alpha),
            ("beta", beta),
        ],
    ))
}

/// `B(μ) ⊗ B(μ)⁻¹` at `μ = αλ − β`: diagonal `exp(c(αλ−β)(i−j))` at `(i, j)`.
pub fn twist_matrix_f(
    n: usize,
    alpha: Complex64,
    beta: Complex64,
    lam: Complex64,
    c: Complex64,
) -> CMatrix {
    let mu = alpha * lam - beta;
    CMatrix::from_fn(n * n, n * n, |r, col| {
        if r == col {
            let (i, j) = ((r / n) as f64, (r % n) as f64);
            (c * mu * (i - j)).exp()
        } else {
            ZERO
        }
    })
}

/// Relative size above which an off-pattern entry makes a matrix inhomogeneous.
pub const HOMOGENEITY_TOL: f64 = 1e-12;

/// Multiply entries by `exp{2c[αλ(i−k) − β(k−j)]}`.
pub fn homogeneous_twist(
    r: &SpectralRMatrix,
    alpha: Complex64,
    beta: Complex64,
    c: Complex64,
    lam: Complex64,
) -> Result<SpectralRMatrix> {
    let n = r.n;
    let scale = crate::numeric::linalg::max_abs(&r.data).max(f64::MIN_POSITIVE);
    let mut out = r.data.clone();
    for k in 0..n {
        for l in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let v = r.entry(k, l, i, j);
                    if !Conservation::Integer.allows(n, k, l, i, j) {
                        if v.norm() > HOMOGENEITY_TOL * scale {
                            return Err(Error::NotHomogeneous {
                                k,
                                l,
                                i,
                                j,
                                magnitude: v.norm(),
                            });
                        }
                        continue;
                    }
                    let (ik, kj) = (i as f64 - k as f64, k as f64 - j as f64);
                    let f = (2.0 * c * (alpha * lam * ik - beta * kj)).exp();
                    out[(k * n + l, i * n + j)] = v * f;
                }
            }
        }
    }
    let mut params = r.params.clone();
    params.extend([("alpha", alpha), ("beta", beta), ("c", c), ("lambda", lam)]);
    Ok(SpectralRMatrix::new(n, out, RFamily::CgTwisted, params))
}
