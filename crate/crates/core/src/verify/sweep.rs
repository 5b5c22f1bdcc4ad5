//! The elliptic → trigonometric and trigonometric → rational limits,
//! sampled along a sweep of the degenerating parameter.

use num_complex::Complex64;

use super::report::{params, timed, CheckReport, Residual};
use crate::error::{Error, Result};
use crate::numeric::ddouble::DComplex;
use crate::numeric::linalg::{align_scalar, max_abs, CMatrix};
use crate::rmatrix::degeneration::{h_inverse_oriented, h_oriented, h_scale, HOrientation};
use crate::rmatrix::{
    belavin_matrix, cg_trig_table, cg_twisted, degeneration_g, jcg_affine, BelavinMode,
};

/// Largest conjugation entry magnitude allowed before the sweep refuses.
pub const OVERFLOW_LIMIT: f64 = 1e140;
/// Residuals at or below this are treated as converged roundoff.
pub const ROUNDOFF_FLOOR: f64 = 1e-13;
pub const BELAVIN_CG_FINAL: f64 = 1e-4;
pub const CG_JCG_FINAL: f64 = 1e-3;
/// Accepted range of log-log slopes for an `O(1/τ₁)` decay.
pub const SLOPE_RANGE: (f64, f64) = (-1.2, -0.8);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepPath {
    /// `Im τ → ∞`, Belavin to `R_CG(1/2n, 0)`.
    BelavinToCg,
    /// `τ₁ → ∞`, twisted CG to twisted JCG.
    CgToJcg,
}

impl SweepPath {
    pub fn name(&self) -> &'static str {
        match self {
            SweepPath::BelavinToCg => "belavin-cg",
            SweepPath::CgToJcg => "cg-jcg",
        }
    }

    pub fn from_name(s: &str) -> Option<SweepPath> {
        [SweepPath::BelavinToCg, SweepPath::CgToJcg]
            .into_iter()
            .find(|p| p.name() == s)
    }

    pub fn final_threshold(&self) -> f64 {
        match self {
            SweepPath::BelavinToCg => BELAVIN_CG_FINAL,
            SweepPath::CgToJcg => CG_JCG_FINAL,
        }
    }
}

/// Sweep values are `Im τ` for [`SweepPath::BelavinToCg`] (with `Re τ = 0`)
/// and real `τ₁` for [`SweepPath::CgToJcg`]. The Belavin path ignores
/// `alpha` and `beta`; its limit fixes the twist.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub path: SweepPath,
    pub values: Vec<f64>,
    pub n: usize,
    pub kappa: Complex64,
    pub lam: Complex64,
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Domain("n must be positive".into()));
        }
        if self.values.len() < 3 {
            return Err(Error::Domain("a sweep needs at least 3 values".into()));
        }
        if self.values.iter().any(|v| !v.is_finite() || *v <= 0.0) {
            return Err(Error::Domain(
                "sweep values must be finite and positive".into(),
            ));
        }
        if self.values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Domain(
                "sweep values must be strictly increasing".into(),
            ));
        }
        Ok(())
    }
}

fn guard(m: &CMatrix) -> Result<()> {
    let big = max_abs(m);
    if !big.is_finite() || big > OVERFLOW_LIMIT {
        return Err(Error::OverflowGuard { magnitude: big });
    }
    Ok(())
}

/// `(G⊗G)⁻¹ R_B(λ; iv) (G⊗G)` against `R_CG(1/2n, 0)(λ)` with `q = e^{πiκ}`:
/// the alignment scalar and the aligned relative residual.
pub fn belavin_cg_point(
    n: usize,
    im_tau: f64,
    kappa: Complex64,
    lam: Complex64,
    tol: f64,
) -> Result<(Complex64, f64)> {
    let tau = Complex64::new(0.0, im_tau);
    // |G_aa| = e^{π v s_a²/n} with s_a = a − (n−1)/2; the conjugation
    // multiplies entries by ratios of products of two of these
    let s_max = (n as f64 - 1.0) / 2.0;
    let log_ratio = 2.0 * std::f64::consts::PI * im_tau * s_max * s_max / n as f64;
    if log_ratio > OVERFLOW_LIMIT.ln() {
        return Err(Error::OverflowGuard {
            magnitude: log_ratio.exp(),
        });
    }
    let g = degeneration_g(n, tau);
    let gd: Vec<Complex64> = (0..n * n)
        .map(|r| g[(r / n, r / n)] * g[(r % n, r % n)])
        .collect();
    let r = belavin_matrix(n, tau, kappa, lam, BelavinMode::ClosedForm, tol)?;
    let x = CMatrix::from_fn(n * n, n * n, |row, col| {
        r.data[(row, col)] * gd[col] / gd[row]
    });
    guard(&x)?;
    let q = (Complex64::i() * std::f64::consts::PI * kappa).exp();
    let target = cg_twisted(
        n,
        q,
        lam,
        Complex64::new(1.0 / (2 * n) as f64, 0.0),
        Complex64::new(0.0, 0.0),
    )?;
    Ok(align_scalar(&x, &target.data))
}

/// [`cg_jcg_point`] with a chosen binomial orientation of `H`.
pub fn cg_jcg_point_oriented(
    n: usize,
    tau1: f64,
    kappa: Complex64,
    lam: Complex64,
    alpha: Complex64,
    beta: Complex64,
    orient: HOrientation,
) -> Result<(Complex64, f64)> {
    let d = DComplex::from_c64;
    let t1 = d(Complex64::new(tau1, 0.0));
    let table = cg_trig_table(n, t1, d(kappa), d(lam), d(alpha), d(beta));
    let t = h_scale(t1);
    let h = h_oriented(n, t, orient);
    let hi = h_inverse_oriented(n, t, orient);
    let x = &(&hi.kron(&hi) * &table) * &h.kron(&h);
    let x = x.to_cmatrix();
    guard(&x)?;
    let target = jcg_affine(n, alpha, beta, kappa, lam)?;
    Ok(align_scalar(&x, &target.data))
}

/// `(H⊗H)⁻¹ R_CG(α,β)(λ; τ₁) (H⊗H)` against `R_JCG(α,β)(λ)`, evaluated in
/// double-double: the alignment scalar and aligned relative residual.
pub fn cg_jcg_point(
    n: usize,
    tau1: f64,
    kappa: Complex64,
    lam: Complex64,
    alpha: Complex64,
    beta: Complex64,
) -> Result<(Complex64, f64)> {
    cg_jcg_point_oriented(n, tau1, kappa, lam, alpha, beta, HOrientation::Expansion)
}

fn strictly_decreasing(r: &[f64]) -> bool {
    r.windows(2)
        .all(|w| w[1] < w[0] || (w[0] <= ROUNDOFF_FLOOR && w[1] <= ROUNDOFF_FLOOR))
}

/// Rate fitted from the first two points; every later point must sit
/// within a factor 10 of the extrapolation (or of the roundoff floor).
fn exponential_rate(v: &[f64], r: &[f64]) -> (f64, bool) {
    if r[0] <= ROUNDOFF_FLOOR {
        return (f64::NAN, true);
    }
    if r[1] <= 0.0 {
        return (f64::INFINITY, true);
    }
    let k = -(r[1] / r[0]).ln() / (v[1] - v[0]);
    let ok = k > 0.0
        && (2..r.len())
            .all(|j| r[j] <= 10.0 * (r[1] * (-k * (v[j] - v[1])).exp()).max(ROUNDOFF_FLOOR));
    (k, ok)
}

/// Consecutive log-log slopes over pairs above the roundoff floor.
fn loglog_slopes(v: &[f64], r: &[f64]) -> Vec<f64> {
    (1..r.len())
        .filter(|&j| r[j - 1] > ROUNDOFF_FLOOR && r[j] > ROUNDOFF_FLOOR)
        .map(|j| (r[j] / r[j - 1]).ln() / (v[j] / v[j - 1]).ln())
        .collect()
}

/// Residuals along the sweep. Passes iff they decrease strictly, the decay
/// matches the path's rate model and the last one is within the path's
/// final threshold.
pub fn degeneration_sweep(spec: &SweepSpec, tol: f64) -> Result<CheckReport> {
    spec.validate()?;
    timed(|| {
        let mut res = Vec::with_capacity(spec.values.len());
        let mut scalars = Vec::with_capacity(spec.values.len());
        for &v in &spec.values {
            let (c, r) = match spec.path {
                SweepPath::BelavinToCg => belavin_cg_point(spec.n, v, spec.kappa, spec.lam, tol)?,
                SweepPath::CgToJcg => {
                    cg_jcg_point(spec.n, v, spec.kappa, spec.lam, spec.alpha, spec.beta)?
                }
            };
            res.push(Residual::new("residual", v, r));
            scalars.push(c);
        }
        let rs: Vec<f64> = res.iter().map(|r| r.value).collect();
        let decreasing = strictly_decreasing(&rs);
        let mut diagnostics = vec![("decreasing".to_string(), if decreasing { 1.0 } else { 0.0 })];
        let rate_ok = match spec.path {
            SweepPath::BelavinToCg => {
                let (k, ok) = exponential_rate(&spec.values, &rs);
                diagnostics.push(("rate".into(), k));
                ok
            }
            SweepPath::CgToJcg => {
                let slopes = loglog_slopes(&spec.values, &rs);
                for (i, s) in slopes.iter().enumerate() {
                    diagnostics.push((format!("slope_{}", i + 1), *s));
                }
                slopes
                    .iter()
                    .all(|s| (SLOPE_RANGE.0..=SLOPE_RANGE.1).contains(s))
            }
        };
        diagnostics.push(("rate_ok".into(), if rate_ok { 1.0 } else { 0.0 }));
        let threshold = spec.path.final_threshold();
        let last = *rs.last().unwrap_or(&f64::NAN);
        let mut ps = params([
            ("path", spec.path.name().into()),
            ("n", spec.n.into()),
            ("kappa", spec.kappa.into()),
            ("lambda", spec.lam.into()),
        ]);
        if spec.path == SweepPath::CgToJcg {
            ps.push(("alpha".into(), spec.alpha.into()));
            ps.push(("beta".into(), spec.beta.into()));
        }
        ps.push(("sweep".into(), spec.values.clone().into()));
        let mut report = CheckReport::new("degenerate", ps, res, threshold);
        report.passed = decreasing && rate_ok && last.is_finite() && last <= threshold;
        report.scalars = scalars;
        report.diagnostics = diagnostics;
        Ok(report)
    })
}
