use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use super::ddouble::{DComplex, DDouble};

/// Complex scalar field the matrix tables are generic over.
pub trait Field:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(k: i64) -> Self;
    fn from_c64(z: Complex64) -> Self;
    fn to_c64(self) -> Complex64;
    fn powi(self, k: i32) -> Self;
    fn exp(self) -> Self;
    /// `πi`
    fn i_pi() -> Self;

    /// `x - 1/x`
    fn hat(self) -> Self {
        self - Self::one() / self
    }
}

impl Field for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(k: i64) -> Self {
        Complex64::new(k as f64, 0.0)
    }
    fn from_c64(z: Complex64) -> Self {
        z
    }
    fn to_c64(self) -> Complex64 {
        self
    }
    fn powi(self, k: i32) -> Self {
        Complex64::powi(&self, k)
    }
    fn exp(self) -> Self {
        Complex64::exp(self)
    }
    fn i_pi() -> Self {
        Complex64::new(0.0, std::f64::consts::PI)
    }
}

impl Field for DComplex {
    fn zero() -> Self {
        DComplex::ZERO
    }
    fn one() -> Self {
        DComplex::ONE
    }
    fn from_i64(k: i64) -> Self {
        DComplex::from_c64(Complex64::new(k as f64, 0.0))
    }
    fn from_c64(z: Complex64) -> Self {
        DComplex::from_c64(z)
    }
    fn to_c64(self) -> Complex64 {
        DComplex::to_c64(self)
    }
    fn exp(self) -> Self {
        DComplex::exp(self)
    }
    fn i_pi() -> Self {
        DComplex::new(DDouble::ZERO, DDouble::PI)
    }
    fn powi(self, k: i32) -> Self {
        let mut base = if k < 0 { DComplex::ONE / self } else { self };
        let mut e = k.unsigned_abs();
        let mut acc = DComplex::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

/// Binomial coefficient as an exact integer.
pub fn binomial(n: u32, k: u32) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i64 / (i + 1) as i64;
    }
    acc
}

/// Sign of an integer as -1, 0 or 1.
pub fn sgn(x: i64) -> i32 {
    x.signum() as i32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(20, 10), 184_756);
    }

    #[test]
    fn powi_agrees_between_fields() {
        let z = Complex64::new(0.7, -0.4);
        for k in [-5, -1, 0, 1, 3, 8] {
            let a = Field::powi(z, k);
            let b = Field::powi(DComplex::from_c64(z), k).to_c64();
            assert!((a - b).norm() <= 1e-14 * a.norm());
        }
    }

    #[test]
    fn hat_of_unit_circle_point_is_imaginary() {
        let q = Complex64::from_polar(1.0, 0.4);
        let h = q.hat();
        assert!(h.re.abs() < 1e-15);
        assert!((h.im - 2.0 * 0.4f64.sin()).abs() < 1e-15);
    }
}
