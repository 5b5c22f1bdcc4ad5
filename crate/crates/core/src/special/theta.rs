//! Theta functions of rational characteristic.
//!
//! `θ_{a,b}(z, τ) = Σ_m exp(πi (m+a)² τ + 2πi (m+a)(z+b))`
//!
//! The summand magnitude is a Gaussian in `m`, so the series is summed in
//! symmetric bands around its peak until the newest band is negligible
//! against the largest term seen so far.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Band cap before giving up.
pub const MAX_BANDS: i64 = 10_000;
/// Smallest `Im τ` accepted; below this the series converges too slowly.
pub const MIN_IM_TAU: f64 = 0.05;
pub const DEFAULT_TOL: f64 = 1e-16;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Characteristic `(a, b)` held as exact rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ThetaChar {
    pub a: Rational64,
    pub b: Rational64,
}

impl ThetaChar {
    pub fn new(a: Rational64, b: Rational64) -> Self {
        ThetaChar { a, b }
    }

    /// `(a_num/a_den, b_num/b_den)`
    pub fn from_ratios(a: (i64, i64), b: (i64, i64)) -> Self {
        ThetaChar {
            a: Rational64::new(a.0, a.1),
            b: Rational64::new(b.0, b.1),
        }
    }

    /// The characteristic `(1/2, 1/2)`, for which `θ_{½,½} = −ϑ₁`.
    pub fn half_half() -> Self {
        Self::from_ratios((1, 2), (1, 2))
    }
}

pub(crate) fn check_tau(tau: Complex64) -> Result<()> {
    if !tau.is_finite() || !(tau.im >= MIN_IM_TAU) {
        return Err(Error::Domain(format!(
            "Im(tau) must be at least {MIN_IM_TAU}, got tau = {tau}"
        )));
    }
    Ok(())
}

pub(crate) fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol < 1e-3) {
        return Err(Error::Domain(format!(
            "tol must lie in (0, 1e-3), got {tol}"
        )));
    }
    Ok(())
}

pub(crate) fn rat(r: Rational64) -> f64 {
    r.to_f64()
        .expect("rational with i64 parts is representable")
}

/// Sum `Σ_m term(m)` outward from `center` in symmetric bands.
pub(crate) fn sum_bands(
    center: i64,
    tol: f64,
    term: impl Fn(i64) -> Complex64,
) -> Result<Complex64> {
    let first = term(center);
    let mut sum = first;
    let mut running = first.norm();
    for band in 1..=MAX_BANDS {
        let lo = term(center - band);
        let hi = term(center + band);
        sum += lo + hi;
        let band_max = lo.norm().max(hi.norm());
        running = running.max(band_max);
        if band_max < tol * running || (running == 0.0 && band > 64) {
            if !sum.is_finite() {
                return Err(Error::Domain("theta series overflowed".into()));
            }
            return Ok(sum);
        }
    }
    Err(Error::NonConvergent {
        what: "theta series",
        terms: MAX_BANDS as usize,
    })
}

/// Index at which `|exp(πi x² τ + 2πi x w)|` peaks, with `x = m + a`.
pub(crate) fn peak_index(a: f64, w: Complex64, tau: Complex64) -> i64 {
    let x_star = -w.im / tau.im;
    let m = (x_star - a).round();
    if m.is_finite() {
        m.clamp(-1e15, 1e15) as i64
    } else {
        0
    }
}

/// `θ_{a,b}(z, τ)` summed to relative tolerance `tol`.
pub fn theta_char(ch: ThetaChar, z: Complex64, tau: Complex64, tol: f64) -> Result<Complex64> {
    check_tau(tau)?;
    check_tol(tol)?;
    let a = rat(ch.a);
    let w = z + rat(ch.b);
    let center = peak_index(a, w, tau);
    sum_bands(center, tol, |m| {
        let x = m as f64 + a;
        (I * PI * (x * x * tau + 2.0 * x * w)).exp()
    })
}

/// Magnitude of the largest term of the `θ_{a,b}(z, τ)` series, the scale
/// against which a cancelling sum counts as a zero.
pub(crate) fn theta_char_peak(ch: ThetaChar, z: Complex64, tau: Complex64) -> f64 {
    let a = rat(ch.a);
    let w = z + rat(ch.b);
    let center = peak_index(a, w, tau);
    (center - 1..=center + 1)
        .map(|m| {
            let x = m as f64 + a;
            (I * PI * (x * x * tau + 2.0 * x * w)).exp().norm()
        })
        .fold(0.0, f64::max)
}

/// `d/dz θ_{a,b}(z, τ)` at `z = 0`, from the term-wise differentiated series.
pub fn theta_char_deriv0(ch: ThetaChar, tau: Complex64, tol: f64) -> Result<Complex64> {
    check_tau(tau)?;
    check_tol(tol)?;
    let a = rat(ch.a);
    let w = Complex64::new(rat(ch.b), 0.0);
    let center = peak_index(a, w, tau);
    sum_bands(center, tol, |m| {
        let x = m as f64 + a;
        2.0 * PI * I * x * (I * PI * (x * x * tau + 2.0 * x * w)).exp()
    })
}

/// Jacobi's `ϑ₁(z, τ) = −θ_{½,½}(z, τ)`.
pub fn jacobi_theta1(z: Complex64, tau: Complex64, tol: f64) -> Result<Complex64> {
    Ok(-theta_char(ThetaChar::half_half(), z, tau, tol)?)
}

/// `ϑ₁'(0, τ)`.
pub fn jacobi_theta1_prime0(tau: Complex64, tol: f64) -> Result<Complex64> {
    Ok(-theta_char_deriv0(ThetaChar::half_half(), tau, tol)?)
}
