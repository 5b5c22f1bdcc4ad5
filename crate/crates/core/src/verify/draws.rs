//! Seeded parameter draws, kept away from the poles and degenerate points
//! of the constructors.

use num_complex::Complex64;
use rand::Rng;

pub fn uniform_c<R: Rng>(rng: &mut R, re: (f64, f64), im: (f64, f64)) -> Complex64 {
    Complex64::new(rng.random_range(re.0..=re.1), rng.random_range(im.0..=im.1))
}

/// `Re τ ∈ [−0.3, 0.3]`, `Im τ ∈ [0.6, 1.5]`.
pub fn draw_tau<R: Rng>(rng: &mut R) -> Complex64 {
    uniform_c(rng, (-0.3, 0.3), (0.6, 1.5))
}

pub fn draw_kappa<R: Rng>(rng: &mut R) -> Complex64 {
    uniform_c(rng, (0.2, 0.6), (-0.05, 0.05))
}

pub fn draw_lam<R: Rng>(rng: &mut R) -> Complex64 {
    uniform_c(rng, (0.1, 0.45), (-0.05, 0.05))
}

/// `(λ₁, λ₂)` with `λ₁ − λ₂` bounded away from zero.
pub fn draw_lam_pair<R: Rng>(rng: &mut R) -> (Complex64, Complex64) {
    (
        uniform_c(rng, (0.3, 0.6), (-0.05, 0.05)),
        uniform_c(rng, (0.05, 0.2), (-0.05, 0.05)),
    )
}

/// `|q| ∈ [0.6, 1.8]`, `arg q ∈ [−1, 1]`, away from `q = ±1`.
pub fn draw_q<R: Rng>(rng: &mut R) -> Complex64 {
    loop {
        let q = Complex64::from_polar(rng.random_range(0.6..=1.8), rng.random_range(-1.0..=1.0));
        if (q - 1.0).norm() > 0.2 {
            return q;
        }
    }
}

/// `(α, β)` with small real and imaginary parts.
pub fn draw_twist<R: Rng>(rng: &mut R) -> (Complex64, Complex64) {
    (
        uniform_c(rng, (-0.4, 0.4), (-0.05, 0.05)),
        uniform_c(rng, (-0.3, 0.3), (-0.05, 0.05)),
    )
}
