//! The finite-dimensional function spaces the R-operators preserve.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::numeric::field::binomial;
use crate::numeric::linalg::{CMatrix, ONE, ZERO};
use crate::special::theta::{
    check_tau, check_tol, peak_index, rat, sum_bands, theta_char, ThetaChar,
};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BasisFamily {
    /// `ψ_a(z) = Σ_{m ≡ a (n)} exp(πi (m − (n−1)/2)² τ/n + 2πi (m − (n−1)/2) z)`
    EllipticPsi {
        n: usize,
        tau: Complex64,
        tol: f64,
    },
    /// `ψ̃_a = e^{−πi (a − (n−1)/2)² τ/n} ψ_a`
    EllipticPsiTilde {
        n: usize,
        tau: Complex64,
        tol: f64,
    },
    /// `φ_k(z) = e^{2πi (k − (n−1)/2) z / τ₁}`
    TrigPhi {
        n: usize,
        tau1: Complex64,
    },
    /// `φ̃_k(z) = (τ₁/2πi)^k e^{−πi (n−1) z/τ₁} (e^{2πi z/τ₁} − 1)^k`
    TrigPhiTilde {
        n: usize,
        tau1: Complex64,
    },
    Monomial {
        n: usize,
    },
}

impl BasisFamily {
    pub fn dim(&self) -> usize {
        match *self {
            BasisFamily::EllipticPsi { n, .. }
            | BasisFamily::EllipticPsiTilde { n, .. }
            | BasisFamily::TrigPhi { n, .. }
            | BasisFamily::TrigPhiTilde { n, .. }
            | BasisFamily::Monomial { n } => n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim() == 0 {
            return Err(Error::Domain("basis dimension must be positive".into()));
        }
        match *self {
            BasisFamily::EllipticPsi { tau, tol, .. }
            | BasisFamily::EllipticPsiTilde { tau, tol, .. } => {
                check_tau(tau)?;
                check_tol(tol)
            }
            BasisFamily::TrigPhi { tau1, .. } | BasisFamily::TrigPhiTilde { tau1, .. } => {
                if tau1.norm() == 0.0 || !tau1.is_finite() {
                    Err(Error::Domain("tau1 must be a finite nonzero number".into()))
                } else {
                    Ok(())
                }
            }
            BasisFamily::Monomial { .. } => Ok(()),
        }
    }

    pub fn eval(&self, index: usize, z: Complex64) -> Result<Complex64> {
        basis_eval(self, index, z)
    }
}

/// Characteristic shift `c = (2a − n + 1)/(2n)`, so that `ψ_a(z) = θ_{c,0}(nz, nτ)`.
pub fn psi_shift(n: usize, a: usize) -> Rational64 {
    Rational64::new(2 * a as i64 - n as i64 + 1, 2 * n as i64)
}

/// `e^w − 1` without cancellation for small `w`.
fn cexpm1(w: Complex64) -> Complex64 {
    let (s, c) = w.im.sin_cos();
    let half = (0.5 * w.im).sin();
    let re = w.re.exp_m1() * c - 2.0 * half * half;
    Complex64::new(re, w.re.exp() * s)
}

pub fn basis_eval(fam: &BasisFamily, index: usize, z: Complex64) -> Result<Complex64> {
    fam.validate()?;
    let n = fam.dim();
    if index >= n {
        return Err(Error::Index { index, n });
    }
    let mid = (n as f64 - 1.0) / 2.0;
    let k = index as f64;
    match *fam {
        BasisFamily::EllipticPsi { tau, tol, .. } => {
            let ch = ThetaChar::new(psi_shift(n, index), Rational64::from_integer(0));
            theta_char(ch, n as f64 * z, n as f64 * tau, tol)
        }
        BasisFamily::EllipticPsiTilde { tau, tol, .. } => {
            // the Gaussian prefactor is folded into each term
            let c = rat(psi_shift(n, index));
            let (nz, ntau) = (n as f64 * z, n as f64 * tau);
            let center = peak_index(c, nz, ntau);
            sum_bands(center, tol, |m| {
                let x = m as f64 + c;
                (I * PI * ((x * x - c * c) * ntau + 2.0 * x * nz)).exp()
            })
        }
        BasisFamily::TrigPhi { tau1, .. } => Ok((2.0 * PI * I * (k - mid) * z / tau1).exp()),
        BasisFamily::TrigPhiTilde { tau1, .. } => {
            let w = 2.0 * PI * I * z / tau1;
            let pref = tau1 / (2.0 * PI * I);
            Ok(pref.powi(index as i32)
                * (-PI * I * 2.0 * mid * z / tau1).exp()
                * cexpm1(w).powi(index as i32))
        }
        BasisFamily::Monomial { .. } => Ok(z.powi(index as i32)),
    }
}

/// The clock and shift matrices: `S = diag(ω^a)`, `T e_a = e_{a−1}`.
pub fn st_matrices(n: usize) -> (CMatrix, CMatrix) {
    let omega = Complex64::from_polar(1.0, 2.0 * PI / n as f64);
    let s = CMatrix::from_fn(
        n,
        n,
        |r, c| if r == c { omega.powi(r as i32) } else { ZERO },
    );
    let t = CMatrix::from_fn(n, n, |r, c| if r == (c + n - 1) % n { ONE } else { ZERO });
    (s, t)
}

/// Coefficients of `φ̃_k` in `{φ_l}`: entry `(l, k)` is
/// `(−1)^{k−l} (τ₁/2πi)^k C(k, l)`.
pub fn phi_tilde_coefficients(n: usize, tau1: Complex64) -> CMatrix {
    let t = tau1 / (2.0 * PI * I);
    CMatrix::from_fn(n, n, |l, k| {
        if l > k {
            ZERO
        } else {
            let sign = if (k - l) % 2 == 0 { 1.0 } else { -1.0 };
            sign * binomial(k as u32, l as u32) as f64 * t.powi(k as i32)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::DEFAULT_TOL;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Direct sum over `m ≡ a (mod n)` in a wide fixed window.
    fn psi_brute(n: usize, a: usize, z: Complex64, tau: Complex64) -> Complex64 {
        let mid = (n as f64 - 1.0) / 2.0;
        (-40i64..=40)
            .map(|m| {
                let x = (m * n as i64 + a as i64) as f64 - mid;
                (I * PI * (x * x * tau / n as f64 + 2.0 * x * z)).exp()
            })
            .sum()
    }

    #[test]
    fn monomial() {
        let f = BasisFamily::Monomial { n: 4 };
        for k in 0..4 {
            let v = f.eval(k, c(2.0, 0.0)).unwrap();
            assert_eq!(v, c(2f64.powi(k as i32), 0.0));
        }
        assert!(matches!(
            f.eval(4, c(1.0, 0.0)),
            Err(Error::Index { index: 4, n: 4 })
        ));
    }

    #[test]
    fn psi_matches_direct_sum() {
        for n in [1usize, 2, 3, 4] {
            let tau = c(0.15, 0.9);
            let fam = BasisFamily::EllipticPsi {
                n,
                tau,
                tol: DEFAULT_TOL,
            };
            for a in 0..n {
                let z = c(0.37, -0.12);
                let v = fam.eval(a, z).unwrap();
                let r = psi_brute(n, a, z, tau);
                assert!((v - r).norm() <= 1e-13 * r.norm(), "n={n} a={a}");
            }
        }
    }

    #[test]
    fn psi_quasi_periodicity() {
        for n in [2usize, 3] {
            let tau = c(0.1, 1.1);
            let fam = BasisFamily::EllipticPsi {
                n,
                tau,
                tol: DEFAULT_TOL,
            };
            let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
            for a in 0..n {
                let z = c(0.21, 0.07);
                let v = fam.eval(a, z).unwrap();
                let v1 = fam.eval(a, z + 1.0).unwrap();
                assert!((v1 - sign * v).norm() <= 1e-12 * v.norm());
                let vt = fam.eval(a, z + tau).unwrap();
                let f = (-PI * I * n as f64 * tau - 2.0 * PI * I * n as f64 * z).exp();
                assert!((vt - f * v).norm() <= 1e-10 * vt.norm());
            }
        }
    }

    #[test]
    fn psi_tilde_is_rescaled_psi() {
        let (n, tau) = (3usize, c(0.0, 2.0));
        let p = BasisFamily::EllipticPsi {
            n,
            tau,
            tol: DEFAULT_TOL,
        };
        let pt = BasisFamily::EllipticPsiTilde {
            n,
            tau,
            tol: DEFAULT_TOL,
        };
        for a in 0..n {
            let z = c(0.4, 0.1);
            let s = a as f64 - 1.0;
            let g = (-PI * I * s * s * tau / n as f64).exp();
            let lhs = pt.eval(a, z).unwrap();
            let rhs = g * p.eval(a, z).unwrap();
            assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm());
        }
    }

    #[test]
    fn psi_tilde_tends_to_phi() {
        let n = 3usize;
        let z = c(0.3, 0.15);
        for a in 0..n {
            let target = BasisFamily::TrigPhi {
                n,
                tau1: c(1.0, 0.0),
            }
            .eval(a, z)
            .unwrap();
            let mut last = f64::INFINITY;
            for v in [3.0, 6.0, 12.0] {
                let fam = BasisFamily::EllipticPsiTilde {
                    n,
                    tau: c(0.0, v),
                    tol: DEFAULT_TOL,
                };
                let d = (fam.eval(a, z).unwrap() - target).norm();
                assert!(d < last, "a={a} v={v}");
                last = d;
            }
        }
    }

    #[test]
    fn s_action_is_diagonal() {
        // (S ψ_a)(z) := e^{πi(n−1)/n} ψ_a(z + 1/n) = ω^a ψ_a(z)
        for n in [2usize, 3] {
            let fam = BasisFamily::EllipticPsi {
                n,
                tau: c(0.0, 0.9),
                tol: DEFAULT_TOL,
            };
            let (s, _) = st_matrices(n);
            let z = c(0.17, 0.05);
            for a in 0..n {
                let pre = (PI * I * (n as f64 - 1.0) / n as f64).exp();
                let lhs = pre * fam.eval(a, z + 1.0 / n as f64).unwrap();
                let rhs = s[(a, a)] * fam.eval(a, z).unwrap();
                assert!((lhs - rhs).norm() <= 1e-8 * rhs.norm());
            }
        }
    }

    #[test]
    fn st_relations() {
        let (s, t) = st_matrices(1);
        assert_eq!(s[(0, 0)], ONE);
        assert_eq!(t[(0, 0)], ONE);
        let (s, t) = st_matrices(2);
        assert!((s[(1, 1)] + ONE).norm() < 1e-15);
        assert_eq!(t[(0, 1)], ONE);
        assert_eq!(t[(1, 0)], ONE);
        for n in [2usize, 3, 5] {
            let (s, t) = st_matrices(n);
            let omega = Complex64::from_polar(1.0, 2.0 * PI / n as f64);
            let d = &t * &s - &s * &t * omega;
            assert!(d.norm() < 1e-12);
            let id = CMatrix::identity(n, n);
            assert!((s.pow(n as u32) - &id).norm() < 1e-12);
            assert!((t.pow(n as u32) - &id).norm() < 1e-12);
        }
    }

    #[test]
    fn phi_tilde_is_the_binomial_combination() {
        let (n, tau1) = (4usize, c(3.0, 0.5));
        let coef = phi_tilde_coefficients(n, tau1);
        let phi = BasisFamily::TrigPhi { n, tau1 };
        let pt = BasisFamily::TrigPhiTilde { n, tau1 };
        let z = c(0.4, -0.1);
        for k in 0..n {
            let direct = pt.eval(k, z).unwrap();
            let sum: Complex64 = (0..n).map(|l| coef[(l, k)] * phi.eval(l, z).unwrap()).sum();
            assert!((direct - sum).norm() <= 1e-12 * direct.norm().max(1.0));
        }
    }

    #[test]
    fn phi_tilde_tends_to_monomial() {
        // Taylor: (τ₁/2πi)(e^{πiz/τ₁} − e^{−πiz/τ₁}) = z − (π²/6τ₁²) z³ + …
        let z = c(0.7, 0.0);
        for t in [1e2, 1e3] {
            let fam = BasisFamily::TrigPhiTilde {
                n: 2,
                tau1: c(t, 0.0),
            };
            let v = fam.eval(1, z).unwrap();
            let predicted = PI * PI / (6.0 * t * t) * 0.343;
            assert!(((v - z).norm() - predicted).abs() <= 1e-3 * predicted);
        }
    }
}
