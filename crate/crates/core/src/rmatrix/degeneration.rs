//! Change-of-basis matrices for the elliptic → trigonometric and
//! trigonometric → rational limits.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::numeric::dense::Dense;
use crate::numeric::field::{binomial, Field};
use crate::numeric::linalg::{CMatrix, ZERO};

/// `G_ab = δ_ab e^{−πi (a − (n−1)/2)² τ/n}`
pub fn degeneration_g(n: usize, tau: Complex64) -> CMatrix {
    let mid = (n as f64 - 1.0) / 2.0;
    CMatrix::from_fn(n, n, |a, b| {
        if a == b {
            let s = a as f64 - mid;
            (-PI * Complex64::i() * s * s * tau / n as f64).exp()
        } else {
            ZERO
        }
    })
}

/// Binomial orientation of the change of basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HOrientation {
    /// `H_ab = t^b (−1)^{b−a} C(b, a)`: column `b` expands `φ̃_b` in `{φ_a}`.
    Expansion,
    /// `H_ab = t^b (−1)^{b−a} C(a, b)`.
    Transposed,
}

fn choose(orient: HOrientation, a: usize, b: usize) -> i64 {
    match orient {
        HOrientation::Expansion => binomial(b as u32, a as u32),
        HOrientation::Transposed => binomial(a as u32, b as u32),
    }
}

/// `t = τ₁/2πi`, in the field `F`.
pub fn h_scale<F: Field>(tau1: F) -> F {
    tau1 / (F::from_i64(2) * F::i_pi())
}

pub fn h_oriented<F: Field>(n: usize, t: F, orient: HOrientation) -> Dense<F> {
    Dense::from_fn(n, n, |a, b| {
        let sign = if (a + b) % 2 == 0 { 1 } else { -1 };
        F::from_i64(sign * choose(orient, a, b)) * t.powi(b as i32)
    })
}

/// Exact inverse: `H = U·D` with `D = diag(t^b)` and `U⁻¹` the unsigned
/// binomial matrix, so `H⁻¹_ab = t^{−a} C(·,·)`.
pub fn h_inverse_oriented<F: Field>(n: usize, t: F, orient: HOrientation) -> Dense<F> {
    Dense::from_fn(n, n, |a, b| {
        F::from_i64(choose(orient, a, b)) * t.powi(-(a as i32))
    })
}

/// `H_ab = (τ₁/2πi)^b (−1)^{b−a} C(b, a)`, so that column `b` holds the
/// coefficients of `φ̃_b` in `{φ_a}`.
pub fn degeneration_h(n: usize, tau1: Complex64) -> CMatrix {
    h_oriented(n, h_scale(tau1), HOrientation::Expansion).to_cmatrix()
}

pub fn degeneration_h_inverse(n: usize, tau1: Complex64) -> CMatrix {
    h_inverse_oriented(n, h_scale(tau1), HOrientation::Expansion).to_cmatrix()
}
