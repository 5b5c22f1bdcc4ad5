//! The kernel `G_θ(z, λ) = θ'(0) θ(z+λ) / (θ(z) θ(λ))` for the elliptic,
//! trigonometric and rational choices of `θ`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::theta::{check_tau, check_tol, jacobi_theta1, jacobi_theta1_prime0};
use crate::error::{Error, Result};

/// `|θ(·)|` below this is treated as a pole of the kernel.
pub const POLE_GUARD: f64 = 1e-12;

/// Modular data for the elliptic and trigonometric families.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModularParams {
    pub tau: Complex64,
    pub tau1: Complex64,
    pub tol: f64,
}

impl ModularParams {
    pub fn new(tau: Complex64, tau1: Complex64, tol: f64) -> Result<Self> {
        check_tau(tau)?;
        check_tol(tol)?;
        if tau1.norm() == 0.0 || !tau1.is_finite() {
            return Err(Error::Domain("tau1 must be a finite nonzero number".into()));
        }
        Ok(ModularParams { tau, tau1, tol })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum KernelFamily {
    /// `θ(z) = ϑ₁(z, τ)`
    Elliptic { tau: Complex64 },
    /// `θ(z) = sin(πz/τ₁)`
    Trig { tau1: Complex64 },
    /// `θ(z) = z`
    Rational,
}

impl KernelFamily {
    pub fn validate(&self) -> Result<()> {
        match *self {
            KernelFamily::Elliptic { tau } => check_tau(tau),
            KernelFamily::Trig { tau1 } => {
                if tau1.norm() == 0.0 || !tau1.is_finite() {
                    Err(Error::Domain("tau1 must be a finite nonzero number".into()))
                } else {
                    Ok(())
                }
            }
            KernelFamily::Rational => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            KernelFamily::Elliptic { .. } => "elliptic",
            KernelFamily::Trig { .. } => "trig",
            KernelFamily::Rational => "rational",
        }
    }

    /// Zero set of `θ`.
    pub fn zeros(&self) -> Lattice {
        match *self {
            KernelFamily::Elliptic { tau } => Lattice::Plane { tau },
            KernelFamily::Trig { tau1 } => Lattice::Line { period: tau1 },
            KernelFamily::Rational => Lattice::Origin,
        }
    }
}

/// A discrete set of poles: `{0}`, `period·ℤ` or `ℤ + τℤ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Lattice {
    Origin,
    Line { period: Complex64 },
    Plane { tau: Complex64 },
}

impl Lattice {
    /// Distance from `u` to the nearest lattice point.
    pub fn distance(&self, u: Complex64) -> f64 {
        match *self {
            Lattice::Origin => u.norm(),
            Lattice::Line { period } => {
                let k = (u / period).re.round();
                (-1..=1)
                    .map(|d| (u - (k + d as f64) * period).norm())
                    .fold(f64::INFINITY, f64::min)
            }
            Lattice::Plane { tau } => {
                let y = u.im / tau.im;
                let x = u.re - y * tau.re;
                let (mx, my) = (x.round(), y.round());
                let mut best = f64::INFINITY;
                for dx in -1..=1 {
                    for dy in -1..=1 {
                        let p = Complex64::new(mx + dx as f64, 0.0) + (my + dy as f64) * tau;
                        best = best.min((u - p).norm());
                    }
                }
                best
            }
        }
    }
}

type ThetaFn = dyn Fn(Complex64) -> Result<Complex64> + Send + Sync;

/// A `θ` together with its cached `θ'(0)`; evaluates `G_θ`.
#[derive(Clone)]
pub struct Kernel {
    theta: Arc<ThetaFn>,
    prime0: Complex64,
    zeros: Lattice,
    label: String,
}

impl fmt::Debug for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Kernel")
            .field("label", &self.label)
            .field("prime0", &self.prime0)
            .finish()
    }
}

impl Kernel {
    pub fn new(family: KernelFamily, tol: f64) -> Result<Self> {
        family.validate()?;
        check_tol(tol)?;
        let (theta, prime0): (Arc<ThetaFn>, Complex64) = match family {
            KernelFamily::Elliptic { tau } => (
                Arc::new(move |z| jacobi_theta1(z, tau, tol)),
                jacobi_theta1_prime0(tau, tol)?,
            ),
            KernelFamily::Trig { tau1 } => (
                Arc::new(move |z: Complex64| Ok((PI * z / tau1).sin())),
                PI / tau1,
            ),
            KernelFamily::Rational => (Arc::new(Ok), Complex64::new(1.0, 0.0)),
        };
        Ok(Kernel {
            theta,
            prime0,
            zeros: family.zeros(),
            label: family.name().to_string(),
        })
    }

    /// A kernel from an arbitrary `θ`; used for negative controls.
    pub fn custom(
        label: &str,
        theta: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
        prime0: Complex64,
        zeros: Lattice,
    ) -> Self {
        Kernel {
            theta: Arc::new(move |z| Ok(theta(z))),
            prime0,
            zeros,
            label: label.to_string(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn theta(&self, z: Complex64) -> Result<Complex64> {
        (self.theta)(z)
    }

    pub fn prime0(&self) -> Complex64 {
        self.prime0
    }

    pub fn zeros(&self) -> Lattice {
        self.zeros
    }

    /// `G_θ(z, λ)`; `PoleError` when `θ(z)` or `θ(λ)` is below the guard.
    pub fn g(&self, z: Complex64, lam: Complex64) -> Result<Complex64> {
        let tz = self.theta(z)?;
        let tl = self.theta(lam)?;
        if tz.norm() < POLE_GUARD || tl.norm() < POLE_GUARD {
            return Err(Error::Pole(format!(
                "theta vanishes at kernel arguments z = {z}, lambda = {lam}"
            )));
        }
        let tzl = self.theta(z + lam)?;
        Ok(self.prime0 * tzl / (tz * tl))
    }
}

/// `G_θ(z, λ)` for one of the three families.
pub fn kernel_g(fam: KernelFamily, z: Complex64, lam: Complex64, tol: f64) -> Result<Complex64> {
    Kernel::new(fam, tol)?.g(z, lam)
}

/// `|Σ_cyc θ(x+y)θ(x−y)θ(z+w)θ(z−w)|` over cyclic permutations of
/// `(y, z, w)`, relative to the largest summand.
pub fn three_term_residual(
    fam: KernelFamily,
    x: Complex64,
    y: Complex64,
    z: Complex64,
    w: Complex64,
    tol: f64,
) -> Result<f64> {
    let k = Kernel::new(fam, tol)?;
    let t = |u: Complex64| k.theta(u);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut scale = 0.0f64;
    for (a, b, c) in [(y, z, w), (z, w, y), (w, y, z)] {
        let s = t(x + a)? * t(x - a)? * t(b + c)? * t(b - c)?;
        scale = scale.max(s.norm());
        sum += s;
    }
    Ok(if scale > 0.0 {
        sum.norm() / scale
    } else {
        sum.norm()
    })
}

/// `|G(z,λ)G(−z,λ) − G(z,κ)G(−z,κ) − G(κ,λ)G(−κ,λ)|` relative to the
/// largest of the three products.
pub fn constant_term_identity_residual(
    fam: KernelFamily,
    z: Complex64,
    lam: Complex64,
    kappa: Complex64,
    tol: f64,
) -> Result<f64> {
    let k = Kernel::new(fam, tol)?;
    let a = k.g(z, lam)? * k.g(-z, lam)?;
    let b = k.g(z, kappa)? * k.g(-z, kappa)?;
    let c = k.g(kappa, lam)? * k.g(-kappa, lam)?;
    let scale = a.norm().max(b.norm()).max(c.norm());
    let r = (a - b - c).norm();
    Ok(if scale > 0.0 { r / scale } else { r })
}
