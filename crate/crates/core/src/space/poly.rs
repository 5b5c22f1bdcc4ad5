//! Polynomials in `z₁, z₂` with complex coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::PointMap;

/// Relative size below which the remainder of a division counts as zero.
pub const DIVISIBILITY_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `Σ coeffs[i][j] z₁^i z₂^j`. Rows and columns are trimmed of exact zeros,
/// so the zero polynomial has no rows.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct BivariatePoly {
    coeffs: Vec<Vec<Complex64>>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        BivariatePoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::from_coeffs(vec![vec![c]])
    }

    /// `z₁^i z₂^j`
    pub fn monomial(i: usize, j: usize) -> Self {
        let mut coeffs = vec![vec![ZERO; j + 1]; i + 1];
        coeffs[i][j] = Complex64::new(1.0, 0.0);
        Self::from_coeffs(coeffs)
    }

    /// `a z₁ + b z₂ + c`
    pub fn linear(a: Complex64, b: Complex64, c: Complex64) -> Self {
        Self::from_coeffs(vec![vec![c, b], vec![a, ZERO]])
    }

    pub fn from_coeffs(coeffs: Vec<Vec<Complex64>>) -> Self {
        let cols = coeffs.iter().map(Vec::len).max().unwrap_or(0);
        let mut c: Vec<Vec<Complex64>> = coeffs
            .into_iter()
            .map(|mut r| {
                r.resize(cols, ZERO);
                r
            })
            .collect();
        trim(&mut c);
        BivariatePoly { coeffs: c }
    }

    pub fn coeff(&self, i: usize, j: usize) -> Complex64 {
        self.coeffs
            .get(i)
            .and_then(|r| r.get(j))
            .copied()
            .unwrap_or(ZERO)
    }

    /// `(deg_{z₁} + 1, deg_{z₂} + 1)`; `(0, 0)` for the zero polynomial.
    pub fn shape(&self) -> (usize, usize) {
        (self.coeffs.len(), self.coeffs.first().map_or(0, Vec::len))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs
            .iter()
            .flatten()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    pub fn eval(&self, z1: Complex64, z2: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, row| {
            acc * z1 + row.iter().rev().fold(ZERO, |a, c| a * z2 + c)
        })
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .map(|r| r.iter().map(|c| c * s).collect())
                .collect(),
        )
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::constant(Complex64::new(1.0, 0.0)), |acc, _| {
            &acc * self
        })
    }

    /// `p ∘ φ` for a two-variable swap-and-shift map.
    pub fn point_map(&self, map: &PointMap) -> Result<Self> {
        if map.arity() != 2 {
            return Err(Error::ArityMismatch {
                left: 2,
                right: map.arity(),
            });
        }
        let one = Complex64::new(1.0, 0.0);
        let var = |slot: usize, s: Complex64| {
            if map.perm()[slot] == 0 {
                Self::linear(one, ZERO, s)
            } else {
                Self::linear(ZERO, one, s)
            }
        };
        let x = var(0, map.shifts()[0]);
        let y = var(1, map.shifts()[1]);
        let (rows, cols) = self.shape();
        let xp: Vec<_> = (0..rows).map(|i| x.pow(i)).collect();
        let yp: Vec<_> = (0..cols).map(|j| y.pow(j)).collect();
        let mut out = Self::zero();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if *c != ZERO {
                    out = &out + &(&xp[i] * &yp[j]).scale(*c);
                }
            }
        }
        Ok(out)
    }

    /// The quotient `q` with `q·(z₁ − z₂ − c) = p`.
    pub fn exact_divide(&self, c: Complex64) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        // synthetic division in z₁ by (z₁ − r), r = z₂ + c
        let r = Self::linear(ZERO, Complex64::new(1.0, 0.0), c);
        let rows: Vec<Self> = self
            .coeffs
            .iter()
            .map(|row| Self::from_coeffs(vec![row.clone()]))
            .collect();
        let d = rows.len() - 1;
        let mut q = vec![Self::zero(); d];
        let mut carry = Self::zero();
        for k in (0..=d).rev() {
            let v = &rows[k] + &(&r * &carry);
            if k == 0 {
                let scale = self.max_abs().max(1.0);
                let rem = v.max_abs();
                if rem > DIVISIBILITY_TOL * scale {
                    return Err(Error::NotDivisible { remainder: rem });
                }
            } else {
                q[k - 1] = v.clone();
                carry = v;
            }
        }
        let coeffs = q
            .into_iter()
            .map(|p| p.coeffs.into_iter().next().unwrap_or_default())
            .collect();
        Ok(Self::from_coeffs(coeffs))
    }
}

fn trim(c: &mut Vec<Vec<Complex64>>) {
    while c.last().is_some_and(|r| r.iter().all(|x| *x == ZERO)) {
        c.pop();
    }
    let cols = c
        .iter()
        .map(|r| r.iter().rposition(|x| *x != ZERO).map_or(0, |p| p + 1))
        .max()
        .unwrap_or(0);
    for r in c.iter_mut() {
        r.truncate(cols);
    }
}

impl Add for &BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, o: &BivariatePoly) -> BivariatePoly {
        let (r1, c1) = self.shape();
        let (r2, c2) = o.shape();
        let (rows, cols) = (r1.max(r2), c1.max(c2));
        let coeffs = (0..rows)
            .map(|i| {
                (0..cols)
                    .map(|j| self.coeff(i, j) + o.coeff(i, j))
                    .collect()
            })
            .collect();
        BivariatePoly::from_coeffs(coeffs)
    }
}

impl Sub for &BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, o: &BivariatePoly) -> BivariatePoly {
        self + &(-o)
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, o: &BivariatePoly) -> BivariatePoly {
        if self.is_zero() || o.is_zero() {
            return BivariatePoly::zero();
        }
        let (r1, c1) = self.shape();
        let (r2, c2) = o.shape();
        let mut out = vec![vec![ZERO; c1 + c2 - 1]; r1 + r2 - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, x) in a.iter().enumerate() {
                for (k, b) in o.coeffs.iter().enumerate() {
                    for (l, y) in b.iter().enumerate() {
                        out[i + k][j + l] += x * y;
                    }
                }
            }
        }
        BivariatePoly::from_coeffs(out)
    }
}
