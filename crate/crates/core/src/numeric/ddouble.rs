//! Double-double arithmetic.
//!
//! A value is the unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`, giving
//! roughly 32 significant decimal digits. Only the operations needed by the
//! degeneration sweeps are provided: field arithmetic, `exp`, `sin`, `cos`
//! and a complex wrapper. The error-free transformations follow Dekker and
//! Knuth; multiplication uses a fused multiply-add.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

#[derive(Clone, Copy, Default, PartialEq)]
pub struct DDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DDouble {
    pub const ZERO: DDouble = DDouble { hi: 0.0, lo: 0.0 };
    pub const ONE: DDouble = DDouble { hi: 1.0, lo: 0.0 };
    pub const PI: DDouble = DDouble {
        hi: std::f64::consts::PI,
        lo: 1.224_646_799_147_353_2e-16,
    };
    pub const LN_2: DDouble = DDouble {
        hi: std::f64::consts::LN_2,
        lo: 2.319_046_813_846_299_6e-17,
    };

    pub const fn from_f64(x: f64) -> Self {
        DDouble { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    /// Multiply by an exact power of two.
    pub fn ldexp(self, k: i32) -> Self {
        let s = 2f64.powi(k);
        DDouble {
            hi: self.hi * s,
            lo: self.lo * s,
        }
    }

    pub fn recip(self) -> Self {
        DDouble::ONE / self
    }

    pub fn powi(self, k: i32) -> Self {
        let mut base = if k < 0 { self.recip() } else { self };
        let mut e = k.unsigned_abs();
        let mut acc = DDouble::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn exp(self) -> Self {
        if self.hi == 0.0 && self.lo == 0.0 {
            return DDouble::ONE;
        }
        if self.hi > 709.0 {
            return DDouble::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return DDouble::ZERO;
        }
        // x = k ln2 + r, then exp(r) = exp(r / 2^10)^(2^10)
        let k = (self.hi / std::f64::consts::LN_2).round();
        let r = self - DDouble::LN_2 * DDouble::from_f64(k);
        let s = r.ldexp(-10);
        // carry expm1 through the squarings: (1+e)^2 = 1 + e(e+2)
        let mut term = s;
        let mut em1 = s;
        for i in 2..=20 {
            term = term * s / DDouble::from_f64(i as f64);
            em1 = em1 + term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        for _ in 0..10 {
            em1 = em1 * (em1 + DDouble::from_f64(2.0));
        }
        (DDouble::ONE + em1).ldexp(k as i32)
    }

    /// Returns `(sin x, cos x)`.
    pub fn sin_cos(self) -> (Self, Self) {
        let two_pi = DDouble::PI.ldexp(1);
        let k = (self.hi / two_pi.hi).round();
        let r = self - two_pi * DDouble::from_f64(k);
        // halve three times, Taylor, then double-angle back up
        let y = r.ldexp(-3);
        let y2 = y * y;
        let mut s = y;
        let mut c = DDouble::ONE;
        let mut ts = y;
        let mut tc = DDouble::ONE;
        for i in 1..=16 {
            let f = i as f64;
            ts = -ts * y2 / DDouble::from_f64((2.0 * f) * (2.0 * f + 1.0));
            tc = -tc * y2 / DDouble::from_f64((2.0 * f - 1.0) * (2.0 * f));
            s = s + ts;
            c = c + tc;
            if ts.hi.abs() < 1e-36 && tc.hi.abs() < 1e-36 {
                break;
            }
        }
        for _ in 0..3 {
            let s2 = (s * c).ldexp(1);
            let c2 = (c * c).ldexp(1) - DDouble::ONE;
            s = s2;
            c = c2;
        }
        (s, c)
    }
}

impl From<f64> for DDouble {
    fn from(x: f64) -> Self {
        DDouble::from_f64(x)
    }
}

impl fmt::Debug for DDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DDouble({:e} + {:e})", self.hi, self.lo)
    }
}

impl Add for DDouble {
    type Output = DDouble;
    fn add(self, b: DDouble) -> DDouble {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        DDouble { hi, lo }
    }
}

impl Neg for DDouble {
    type Output = DDouble;
    fn neg(self) -> DDouble {
        DDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DDouble {
    type Output = DDouble;
    fn sub(self, b: DDouble) -> DDouble {
        self + (-b)
    }
}

impl Mul for DDouble {
    type Output = DDouble;
    fn mul(self, b: DDouble) -> DDouble {
        let (p1, p2) = two_prod(self.hi, b.hi);
        let p2 = p2 + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p1, p2);
        DDouble { hi, lo }
    }
}

impl Div for DDouble {
    type Output = DDouble;
    fn div(self, b: DDouble) -> DDouble {
        // long division: three correction steps
        let q1 = self.hi / b.hi;
        let r = self - b * DDouble::from_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * DDouble::from_f64(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        DDouble { hi: q1, lo: q2 } + DDouble::from_f64(q3)
    }
}

/// Complex number with double-double parts.
#[derive(Clone, Copy, Default, PartialEq, Debug)]
pub struct DComplex {
    pub re: DDouble,
    pub im: DDouble,
}

impl DComplex {
    pub const ZERO: DComplex = DComplex {
        re: DDouble::ZERO,
        im: DDouble::ZERO,
    };
    pub const ONE: DComplex = DComplex {
        re: DDouble::ONE,
        im: DDouble::ZERO,
    };
    pub const I: DComplex = DComplex {
        re: DDouble::ZERO,
        im: DDouble::ONE,
    };

    pub fn new(re: DDouble, im: DDouble) -> Self {
        DComplex { re, im }
    }

    pub fn from_c64(z: Complex64) -> Self {
        DComplex {
            re: z.re.into(),
            im: z.im.into(),
        }
    }

    pub fn from_real(x: DDouble) -> Self {
        DComplex {
            re: x,
            im: DDouble::ZERO,
        }
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn conj(self) -> Self {
        DComplex {
            re: self.re,
            im: -self.im,
        }
    }

    pub fn norm_sqr(self) -> DDouble {
        self.re * self.re + self.im * self.im
    }

    pub fn scale(self, s: DDouble) -> Self {
        DComplex {
            re: self.re * s,
            im: self.im * s,
        }
    }

    pub fn exp(self) -> Self {
        let m = self.re.exp();
        let (s, c) = self.im.sin_cos();
        DComplex {
            re: m * c,
            im: m * s,
        }
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl Add for DComplex {
    type Output = DComplex;
    fn add(self, b: DComplex) -> DComplex {
        DComplex {
            re: self.re + b.re,
            im: self.im + b.im,
        }
    }
}

impl Sub for DComplex {
    type Output = DComplex;
    fn sub(self, b: DComplex) -> DComplex {
        DComplex {
            re: self.re - b.re,
            im: self.im - b.im,
        }
    }
}

impl Neg for DComplex {
    type Output = DComplex;
    fn neg(self) -> DComplex {
        DComplex {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Mul for DComplex {
    type Output = DComplex;
    fn mul(self, b: DComplex) -> DComplex {
        DComplex {
            re: self.re * b.re - self.im * b.im,
            im: self.re * b.im + self.im * b.re,
        }
    }
}

impl Div for DComplex {
    type Output = DComplex;
    fn div(self, b: DComplex) -> DComplex {
        let d = b.norm_sqr();
        let num = self * b.conj();
        DComplex {
            re: num.re / d,
            im: num.im / d,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dd(hi: f64, lo: f64) -> DDouble {
        DDouble { hi, lo }
    }

    fn close(a: DDouble, b: DDouble, tol: f64) -> bool {
        let d = (a - b).abs().to_f64();
        d <= tol * b.abs().to_f64().max(1e-300)
    }

    #[test]
    fn division_is_double_double_accurate() {
        let seventh = DDouble::ONE / DDouble::from_f64(7.0);
        assert!(seventh.lo != 0.0);
        let back = seventh * DDouble::from_f64(7.0) - DDouble::ONE;
        assert!(back.to_f64().abs() < 1e-31);
    }

    // reference (hi, lo) pairs from a 50-digit mpmath evaluation
    #[test]
    fn exp_matches_reference() {
        let e = DDouble::from_f64(1e-4).exp();
        assert!(close(
            e,
            dd(1.000_100_005_000_166_7, -4.325_932_211_872_079e-17),
            1e-30
        ));
        let one = DDouble::ONE.exp();
        assert!(close(
            one,
            dd(std::f64::consts::E, 1.445_646_891_729_250_2e-16),
            1e-30
        ));
        let m = DDouble::from_f64(-3.7).exp();
        assert!(close(
            m,
            dd(0.024_723_526_470_339_388, -1.294_857_794_723_138e-18),
            1e-30
        ));
    }

    #[test]
    fn sin_cos_match_reference() {
        let (s, c) = DDouble::PI.ldexp(-2).sin_cos();
        let r = dd(std::f64::consts::FRAC_1_SQRT_2, -4.833_646_656_726_457e-17);
        assert!(close(s, r, 1e-30), "{s:?}");
        assert!(close(c, r, 1e-30), "{c:?}");
        let (s, c) = DDouble::from_f64(2.5).sin_cos();
        assert!(close(
            s,
            dd(0.598_472_144_103_956_5, -5.521_403_334_082_375e-17),
            1e-30
        ));
        assert!(close(
            c,
            dd(-0.801_143_615_546_933_7, -1.867_474_270_508_555_3e-17),
            1e-30
        ));
    }

    #[test]
    fn complex_exp_of_pure_imaginary_has_unit_modulus() {
        let z = DComplex::new(DDouble::ZERO, DDouble::from_f64(0.37));
        let w = z.exp();
        assert!((w.norm_sqr() - DDouble::ONE).abs().to_f64() < 1e-31);
        let x = DComplex::new(DDouble::from_f64(0.3), DDouble::from_f64(-1.1)).exp();
        let y = num_complex::Complex64::new(0.3, -1.1).exp();
        assert!((x.to_c64() - y).norm() < 1e-15);
    }

    #[test]
    fn powi_handles_negative_exponents() {
        let x = DDouble::from_f64(1.5);
        let p = x.powi(-3) * x.powi(3);
        assert!((p - DDouble::ONE).abs().to_f64() < 1e-31);
    }
}
