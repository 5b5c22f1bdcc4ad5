//! Explicit R-matrices on `Cⁿ ⊗ Cⁿ`, the matrix-level twists and the
//! degeneration change-of-basis matrices.
//!
//! Index convention throughout: row `k·n + l` (output), column `i·n + j`
//! (input), entry `R^{kl}_{ij}`, with every index in `0..n`.

pub mod belavin;
pub mod cg;
pub mod degeneration;
pub mod jcg;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::linalg::{max_abs, CMatrix};

pub use belavin::{belavin_matrix, belavin_weights, BelavinMode};
pub use cg::{
    cg_affine, cg_affine_table, cg_constant, cg_constant_table, cg_trig, cg_trig_table, cg_twisted,
    cg_twisted_table, cg_twisted_with_p, homogeneous_twist, principal_root, twist_matrix_f,
};
pub use degeneration::{degeneration_g, degeneration_h, degeneration_h_inverse, HOrientation};
pub use jcg::{jcg_affine, jcg_matrix, rational_twisted_apply};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RFamily {
    CgConstant,
    CgAffine,
    CgTwisted,
    BelavinWeightSum,
    BelavinClosedForm,
    Jcg,
    JcgAffine,
    Restriction,
}

impl RFamily {
    /// Families with an explicit constructor, in a fixed order.
    pub const BUILDABLE: [RFamily; 7] = [
        RFamily::CgConstant,
        RFamily::CgAffine,
        RFamily::CgTwisted,
        RFamily::BelavinWeightSum,
        RFamily::BelavinClosedForm,
        RFamily::Jcg,
        RFamily::JcgAffine,
    ];

    /// Inverse of [`RFamily::name`]; `belavin` is accepted for the weight sum.
    pub fn from_name(s: &str) -> Option<RFamily> {
        if s == "belavin" {
            return Some(RFamily::BelavinWeightSum);
        }
        Self::BUILDABLE.into_iter().find(|f| f.name() == s)
    }

    pub fn name(&self) -> &'static str {
        match self {
            RFamily::CgConstant => "cg",
            RFamily::CgAffine => "cg-affine",
            RFamily::CgTwisted => "cg-twisted",
            RFamily::BelavinWeightSum => "belavin-weights",
            RFamily::BelavinClosedForm => "belavin-closed",
            RFamily::Jcg => "jcg",
            RFamily::JcgAffine => "jcg-affine",
            RFamily::Restriction => "restriction",
        }
    }

    /// Weight conservation the family obeys.
    pub fn conservation(&self) -> Conservation {
        match self {
            RFamily::BelavinWeightSum | RFamily::BelavinClosedForm => Conservation::Modular,
            RFamily::Jcg | RFamily::JcgAffine => Conservation::Lowering,
            RFamily::Restriction => Conservation::None,
            _ => Conservation::Integer,
        }
    }
}

/// Which index sums must agree for an entry to be nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conservation {
    /// `i + j = k + l`
    Integer,
    /// `i + j ≡ k + l (mod n)`
    Modular,
    /// `k + l ≤ i + j`
    Lowering,
    None,
}

impl Conservation {
    pub fn allows(&self, n: usize, k: usize, l: usize, i: usize, j: usize) -> bool {
        match self {
            Conservation::Integer => i + j == k + l,
            Conservation::Modular => (i + j) % n == (k + l) % n,
            Conservation::Lowering => k + l <= i + j,
            Conservation::None => true,
        }
    }
}

/// Parameters shared by the explicit constructors. Each family reads only
/// the ones it needs; `p = None` means the principal root `q^{1/n}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RParams {
    pub q: Complex64,
    pub p: Option<Complex64>,
    pub tau: Complex64,
    pub kappa: Complex64,
    pub lam: Complex64,
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl Default for RParams {
    fn default() -> Self {
        let zero = Complex64::new(0.0, 0.0);
        RParams {
            q: Complex64::new(2.0, 0.0),
            p: None,
            tau: Complex64::new(0.0, 1.0),
            kappa: Complex64::new(0.41, 0.0),
            lam: Complex64::new(0.3, 0.0),
            alpha: zero,
            beta: zero,
        }
    }
}

impl RParams {
    pub fn with_lam(self, lam: Complex64) -> Self {
        RParams { lam, ..self }
    }
}

/// Build any explicit family from a parameter record.
pub fn build_family(family: RFamily, n: usize, pr: &RParams, tol: f64) -> Result<SpectralRMatrix> {
    let p = || pr.p.unwrap_or_else(|| principal_root(pr.q, n.max(1)));
    match family {
        RFamily::CgConstant => cg_constant(n, pr.q, p()),
        RFamily::CgAffine => cg_affine(n, pr.q, p(), pr.lam),
        RFamily::CgTwisted => cg_twisted_with_p(n, pr.q, p(), pr.lam, pr.alpha, pr.beta),
        RFamily::BelavinWeightSum => {
            belavin_matrix(n, pr.tau, pr.kappa, pr.lam, BelavinMode::WeightSum, tol)
        }
        RFamily::BelavinClosedForm => {
            belavin_matrix(n, pr.tau, pr.kappa, pr.lam, BelavinMode::ClosedForm, tol)
        }
        RFamily::Jcg => jcg_matrix(n, pr.beta, pr.kappa),
        RFamily::JcgAffine => jcg_affine(n, pr.alpha, pr.beta, pr.kappa, pr.lam),
        RFamily::Restriction => Err(Error::Domain(
            "restrictions have no explicit constructor".into(),
        )),
    }
}

/// An `n² × n²` R-matrix with its family and parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralRMatrix {
    pub n: usize,
    pub data: CMatrix,
    pub family: RFamily,
    pub params: Vec<(&'static str, Complex64)>,
}

impl SpectralRMatrix {
    pub fn new(
        n: usize,
        data: CMatrix,
        family: RFamily,
        params: Vec<(&'static str, Complex64)>,
    ) -> Self {
        debug_assert_eq!(data.nrows(), n * n);
        debug_assert_eq!(data.ncols(), n * n);
        SpectralRMatrix {
            n,
            data,
            family,
            params,
        }
    }

    /// `R^{kl}_{ij}`
    pub fn entry(&self, k: usize, l: usize, i: usize, j: usize) -> Complex64 {
        self.data[(k * self.n + l, i * self.n + j)]
    }

    /// Largest entry violating the family's conservation law, relative to
    /// the largest entry overall.
    pub fn conservation_violation(&self, law: Conservation) -> f64 {
        let n = self.n;
        let scale = max_abs(&self.data).max(f64::MIN_POSITIVE);
        let mut worst = 0.0f64;
        for k in 0..n {
            for l in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if !law.allows(n, k, l, i, j) {
                            worst = worst.max(self.entry(k, l, i, j).norm() / scale);
                        }
                    }
                }
            }
        }
        worst
    }
}
