//! Dense complex linear algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Frobenius norm.
pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// The flip `e_i ⊗ e_j ↦ e_j ⊗ e_i` on `C^n ⊗ C^n`, row index `k*n + l`.
pub fn flip(n: usize) -> CMatrix {
    let mut p = CMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            p[(j * n + i, i * n + j)] = ONE;
        }
    }
    p
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Least-squares scalar `c` minimising `‖a − c·b‖_F`, and the relative
/// residual `‖a − c·b‖_F / ‖a‖_F`.
pub fn align_scalar(a: &CMatrix, b: &CMatrix) -> (Complex64, f64) {
    let num: Complex64 = b.iter().zip(a.iter()).map(|(x, y)| x.conj() * y).sum();
    let den: f64 = b.iter().map(|x| x.norm_sqr()).sum();
    let c = if den > 0.0 { num / den } else { ZERO };
    let diff = a - b * c;
    let na = frobenius(a);
    let r = if na > 0.0 {
        frobenius(&diff) / na
    } else {
        frobenius(&diff)
    };
    (c, r)
}

/// An SVD-backed least-squares solver for a fixed design matrix.
pub struct LeastSquares {
    svd: nalgebra::SVD<Complex64, nalgebra::Dyn, nalgebra::Dyn>,
    design: CMatrix,
    condition: f64,
}

impl LeastSquares {
    pub const MAX_CONDITION: f64 = 1e12;

    pub fn new(design: CMatrix) -> Result<Self> {
        let svd = design.clone().svd(true, true);
        let s = &svd.singular_values;
        let smax = s.iter().cloned().fold(0.0, f64::max);
        let smin = s.iter().cloned().fold(f64::INFINITY, f64::min);
        let condition = if smin > 0.0 {
            smax / smin
        } else {
            f64::INFINITY
        };
        if !(condition <= Self::MAX_CONDITION) {
            return Err(Error::RankDeficient { condition });
        }
        Ok(LeastSquares {
            svd,
            design,
            condition,
        })
    }

    pub fn condition(&self) -> f64 {
        self.condition
    }

    /// Coefficients and the relative residual `‖A c − b‖ / ‖b‖`.
    pub fn solve(&self, rhs: &[Complex64]) -> (Vec<Complex64>, f64) {
        let b = CVector::from_column_slice(rhs);
        let c = self
            .svd
            .solve(&b, 0.0)
            .expect("svd computed with both singular vector sets");
        let fit = &self.design * &c;
        let nb = b.norm();
        let r = (fit - &b).norm();
        let residual = if nb > 0.0 { r / nb } else { r };
        (c.iter().cloned().collect(), residual)
    }
}
