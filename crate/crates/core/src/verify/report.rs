use std::time::Instant;

use num_complex::Complex64;

use crate::error::Result;

/// A parameter value recorded in a report.
#[derive(Clone, Debug, PartialEq)]
pub enum Param {
    Int(i64),
    Real(f64),
    Complex(Complex64),
    Text(String),
    List(Vec<f64>),
}

impl From<usize> for Param {
    fn from(v: usize) -> Self {
        Param::Int(v as i64)
    }
}

impl From<f64> for Param {
    fn from(v: f64) -> Self {
        Param::Real(v)
    }
}

impl From<Complex64> for Param {
    fn from(v: Complex64) -> Self {
        Param::Complex(v)
    }
}

impl From<&str> for Param {
    fn from(v: &str) -> Self {
        Param::Text(v.to_string())
    }
}

impl From<Vec<f64>> for Param {
    fn from(v: Vec<f64>) -> Self {
        Param::List(v)
    }
}

/// One residual, keyed by a sweep value or draw index `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub label: String,
    pub x: f64,
    pub value: f64,
}

impl Residual {
    pub fn new(label: impl Into<String>, x: f64, value: f64) -> Self {
        Residual {
            label: label.into(),
            x,
            value,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub check: String,
    pub params: Vec<(String, Param)>,
    pub residuals: Vec<Residual>,
    pub threshold: f64,
    pub passed: bool,
    pub seconds: f64,
    /// Fitted alignment scalars, one per residual where applicable.
    pub scalars: Vec<Complex64>,
    /// Derived quantities such as fitted rates.
    pub diagnostics: Vec<(String, f64)>,
}

impl CheckReport {
    /// Passes iff every residual is finite and at most `threshold`.
    pub fn new(
        check: &str,
        params: Vec<(String, Param)>,
        residuals: Vec<Residual>,
        threshold: f64,
    ) -> Self {
        let passed = residuals
            .iter()
            .all(|r| r.value.is_finite() && r.value <= threshold);
        CheckReport {
            check: check.to_string(),
            params,
            residuals,
            threshold,
            passed,
            seconds: 0.0,
            scalars: Vec::new(),
            diagnostics: Vec::new(),
        }
    }

    /// Largest residual; NaN if any is NaN.
    pub fn worst(&self) -> f64 {
        self.residuals.iter().fold(0.0f64, |m, r| {
            if r.value.is_nan() || m.is_nan() {
                f64::NAN
            } else {
                m.max(r.value)
            }
        })
    }

    pub fn param(&self, name: &str) -> Option<&Param> {
        self.params.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }
}

/// Shorthand for building a parameter record.
pub fn params<const N: usize>(items: [(&str, Param); N]) -> Vec<(String, Param)> {
    items.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Run a check and stamp its wall time.
pub(crate) fn timed(f: impl FnOnce() -> Result<CheckReport>) -> Result<CheckReport> {
    let start = Instant::now();
    let mut r = f()?;
    r.seconds = start.elapsed().as_secs_f64();
    Ok(r)
}
