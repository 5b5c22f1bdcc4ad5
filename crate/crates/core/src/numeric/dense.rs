//! A minimal row-major dense matrix over any [`Field`], for the code paths
//! that run in double-double.

use std::ops::Mul;

use super::field::Field;
use super::linalg::CMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct Dense<F> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<F>,
}

impl<F: Field> Dense<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Dense {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Dense { rows, cols, data }
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn kron(&self, o: &Dense<F>) -> Dense<F> {
        Dense::from_fn(self.rows * o.rows, self.cols * o.cols, |r, c| {
            self.get(r / o.rows, c / o.cols) * o.get(r % o.rows, c % o.cols)
        })
    }

    pub fn to_cmatrix(&self) -> CMatrix {
        CMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c).to_c64())
    }
}

impl<F: Field> Mul for &Dense<F> {
    type Output = Dense<F>;
    fn mul(self, o: &Dense<F>) -> Dense<F> {
        assert_eq!(self.cols, o.rows, "dimension mismatch in dense product");
        let mut out = Dense::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                for c in 0..o.cols {
                    let i = r * o.cols + c;
                    out.data[i] = out.data[i] + a * o.get(k, c);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::DComplex;
    use num_complex::Complex64;

    #[test]
    fn product_and_kron_match_nalgebra() {
        let a = Dense::from_fn(2, 3, |r, c| Complex64::new(r as f64 + 0.5, c as f64 - 1.0));
        let b = Dense::from_fn(3, 2, |r, c| Complex64::new((r * c) as f64, 0.25));
        let p = (&a * &b).to_cmatrix();
        assert!((p - a.to_cmatrix() * b.to_cmatrix()).norm() < 1e-14);
        let k = a.kron(&b).to_cmatrix();
        assert!((k - a.to_cmatrix().kronecker(&b.to_cmatrix())).norm() < 1e-14);
    }

    #[test]
    fn works_over_double_double() {
        let a = Dense::from_fn(2, 2, |r, c| {
            DComplex::from_c64(Complex64::new((r + 2 * c) as f64, 1.0))
        });
        let id = Dense::from_fn(2, 2, |r, c| {
            if r == c {
                DComplex::ONE
            } else {
                DComplex::ZERO
            }
        });
        assert_eq!(&a * &id, a);
    }
}
