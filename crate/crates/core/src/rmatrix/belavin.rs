//! Belavin's elliptic R-matrix, by the weight sum over `ℤₙ × ℤₙ` and by the
//! closed-form entries.

use num_complex::Complex64;
use num_rational::Rational64;

use super::{RFamily, SpectralRMatrix};
use crate::error::{Error, Result};
use crate::numeric::linalg::CMatrix;
use crate::space::st_matrices;
use crate::special::theta::theta_char_peak;
use crate::special::{jacobi_theta1_prime0, theta_char, theta_char_deriv0, ThetaChar, POLE_GUARD};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BelavinMode {
    /// `Σ_α w_α(λ) I_α ⊗ I_α⁻¹`
    WeightSum,
    /// Entries from theta functions at `nτ`.
    ClosedForm,
}

/// `θ_ch(z, τ)`, rejected when it cancels to below `POLE_GUARD` times its
/// largest series term.
fn guarded_theta(
    ch: ThetaChar,
    z: Complex64,
    tau: Complex64,
    tol: f64,
    what: &str,
) -> Result<Complex64> {
    let v = theta_char(ch, z, tau, tol)?;
    if v.norm() <= POLE_GUARD * theta_char_peak(ch, z, tau) {
        return Err(Error::Pole(format!("{what} vanishes")));
    }
    Ok(v)
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    Ok(())
}

/// `w[α₁][α₂] = ϑ₁'(0) θ_{½+α₂/n, ½−α₁/n}(λ − κ/n) / (n θ_{½+α₂/n, ½−α₁/n}(−κ/n))`
pub fn belavin_weights(
    n: usize,
    tau: Complex64,
    kappa: Complex64,
    lam: Complex64,
    tol: f64,
) -> Result<CMatrix> {
    check_n(n)?;
    let tp = jacobi_theta1_prime0(tau, tol)?;
    let nf = n as f64;
    let half = Rational64::new(1, 2);
    let mut w = CMatrix::zeros(n, n);
    for a1 in 0..n {
        for a2 in 0..n {
            let ch = ThetaChar::new(
                half + Rational64::new(a2 as i64, n as i64),
                half - Rational64::new(a1 as i64, n as i64),
            );
            let num = theta_char(ch, lam - kappa / nf, tau, tol)?;
            let den = guarded_theta(ch, -kappa / nf, tau, tol, "weight denominator theta")?;
            w[(a1, a2)] = tp * num / (nf * den);
        }
    }
    Ok(w)
}

fn closed_char(num: i64, n: usize) -> ThetaChar {
    ThetaChar::new(
        Rational64::new(num, n as i64) + Rational64::new(1, 2),
        Rational64::new(1, 2),
    )
}

pub fn belavin_matrix(
    n: usize,
    tau: Complex64,
    kappa: Complex64,
    lam: Complex64,
    mode: BelavinMode,
    tol: f64,
) -> Result<SpectralRMatrix> {
    check_n(n)?;
    let nn = n * n;
    let data = match mode {
        BelavinMode::WeightSum => {
            let w = belavin_weights(n, tau, kappa, lam, tol)?;
            let (s, t) = st_matrices(n);
            let mut r = CMatrix::zeros(nn, nn);
            for a1 in 0..n {
                for a2 in 0..n {
                    let ia = s.pow(a1 as u32) * t.pow(a2 as u32);
                    // I_α is unitary
                    let inv = ia.adjoint();
                    r += ia.kronecker(&inv) * w[(a1, a2)];
                }
            }
            r
        }
        BelavinMode::ClosedForm => {
            let ntau = tau * n as f64;
            let tp = theta_char_deriv0(closed_char(0, 1), ntau, tol)?;
            let mut r = CMatrix::zeros(nn, nn);
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let l = (i + j + n - k) % n;
                        let d = |a: usize, b: usize| a as i64 - b as i64;
                        let num = theta_char(closed_char(d(i, j), n), lam - kappa, ntau, tol)?;
                        let d1 = guarded_theta(
                            closed_char(d(i, k), n),
                            -kappa,
                            ntau,
                            tol,
                            "closed-form theta at -kappa",
                        )?;
                        let d2 = guarded_theta(
                            closed_char(d(k, j), n),
                            lam,
                            ntau,
                            tol,
                            "closed-form theta at lambda",
                        )?;
                        r[(k * n + l, i * n + j)] = tp * num / (d1 * d2);
                    }
                }
            }
            r
        }
    };
    let family = match mode {
        BelavinMode::WeightSum => RFamily::BelavinWeightSum,
        BelavinMode::ClosedForm => RFamily::BelavinClosedForm,
    };
    Ok(SpectralRMatrix::new(
        n,
        data,
        family,
        vec![("tau", tau), ("kappa", kappa), ("lambda", lam)],
    ))
}
