use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use twisted_su::Complex64;

/// Build R-matrices, run identity checks and degeneration sweeps.
#[derive(Parser, Debug, Clone)]
#[command(name = "tsu", version)]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Output format; the default depends on the subcommand.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Series truncation tolerance.
    #[arg(long, global = true, default_value_t = twisted_su::special::DEFAULT_TOL)]
    pub tol: f64,

    /// Record wall time in reports. Off by default so output is reproducible.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Evaluate θ_{a,b}(z | τ).
    Theta(ThetaArgs),
    /// Evaluate the kernel G(z, λ) of one family.
    Kernel(KernelArgs),
    /// Tabulate basis functions.
    Basis(BasisArgs),
    /// Build an explicit R-matrix.
    Build(BuildArgs),
    /// Run one identity check.
    Check(CheckArgs),
    /// Sweep a degeneration path.
    Degenerate(DegenerateArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ThetaArgs {
    /// Characteristic a, as an integer, fraction or decimal.
    #[arg(long, value_parser = parse_ratio)]
    pub a: (i64, i64),
    #[arg(long, value_parser = parse_ratio)]
    pub b: (i64, i64),
    #[arg(long, value_parser = parse_complex)]
    pub z: Complex64,
    #[arg(long, value_parser = parse_complex, default_value = "i")]
    pub tau: Complex64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelName {
    Elliptic,
    Trig,
    Rational,
}

#[derive(Args, Debug, Clone)]
pub struct KernelArgs {
    #[arg(long, value_enum)]
    pub family: KernelName,
    #[arg(long, value_parser = parse_complex)]
    pub z: Complex64,
    #[arg(long, value_parser = parse_complex)]
    pub lambda: Complex64,
    #[arg(long, value_parser = parse_complex, default_value = "i")]
    pub tau: Complex64,
    #[arg(long, value_parser = parse_complex, default_value = "1")]
    pub tau1: Complex64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisName {
    Psi,
    Psitilde,
    Phi,
    Phitilde,
    Mono,
}

#[derive(Args, Debug, Clone)]
pub struct BasisArgs {
    #[arg(long, value_enum)]
    pub family: BasisName,
    #[arg(long)]
    pub n: usize,
    /// A single basis index; all of them when omitted.
    #[arg(long)]
    pub index: Option<usize>,
    /// Comma-separated sample points.
    #[arg(long, value_parser = parse_complex, value_delimiter = ',', required = true)]
    pub z: Vec<Complex64>,
    #[arg(long, value_parser = parse_complex, default_value = "i")]
    pub tau: Complex64,
    #[arg(long, value_parser = parse_complex, default_value = "1")]
    pub tau1: Complex64,
}

/// Parameters shared by `build` and the matrix checks.
#[derive(Args, Debug, Clone)]
pub struct MatrixParams {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, value_parser = parse_complex, default_value = "2")]
    pub q: Complex64,
    /// n-th root of q; the principal root when omitted.
    #[arg(long, value_parser = parse_complex)]
    pub p: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, default_value = "i")]
    pub tau: Complex64,
    #[arg(long, value_parser = parse_complex, default_value = "1")]
    pub tau1: Complex64,
    #[arg(long, value_parser = parse_complex, default_value = "0.41")]
    pub kappa: Complex64,
    #[arg(long, value_parser = parse_complex, default_value = "0.3")]
    pub lambda: Complex64,
    #[arg(long, value_parser = parse_complex, default_value = "0")]
    pub alpha: Complex64,
    #[arg(long, value_parser = parse_complex, default_value = "0")]
    pub beta: Complex64,
}

#[derive(Args, Debug, Clone)]
pub struct BuildArgs {
    #[arg(long)]
    pub family: String,
    #[command(flatten)]
    pub params: MatrixParams,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TestName {
    Ybe,
    YbeFunctional,
    Hecke,
    BelavinStructure,
    Affinization,
    TableVsRestriction,
    ThreeTerm,
    Invariance,
}

#[derive(Args, Debug, Clone)]
pub struct CheckArgs {
    #[arg(long, value_enum)]
    pub test: TestName,
    /// Matrix family for `ybe`, kernel family for the operator checks.
    #[arg(long)]
    pub family: Option<String>,
    #[command(flatten)]
    pub params: MatrixParams,
    /// Number of seeded draws.
    #[arg(long)]
    pub draws: Option<usize>,
    /// Sample points per draw for `ybe-functional`.
    #[arg(long, default_value_t = 24)]
    pub points: usize,
    /// Basis for `invariance`; the family's natural basis when omitted.
    #[arg(long, value_enum)]
    pub basis: Option<BasisName>,
}

#[derive(Args, Debug, Clone)]
pub struct DegenerateArgs {
    #[arg(long)]
    pub path: String,
    /// Comma-separated values of Im τ (belavin-cg) or τ₁ (cg-jcg).
    #[arg(long, value_delimiter = ',', required = true)]
    pub sweep: Vec<f64>,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, value_parser = parse_complex, default_value = "0.41")]
    pub kappa: Complex64,
    #[arg(long, value_parser = parse_complex, default_value = "0.3")]
    pub lambda: Complex64,
    #[arg(long, value_parser = parse_complex, default_value = "0.2")]
    pub alpha: Complex64,
    #[arg(long, value_parser = parse_complex, default_value = "0.13")]
    pub beta: Complex64,
}

/// Accepts `0.3`, `1.2i`, `0.3+1.2i`, `-i` and the like.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let z = Complex64::from_str(s.trim()).map_err(|e| format!("bad complex number {s:?}: {e}"))?;
    if z.is_finite() {
        Ok(z)
    } else {
        Err(format!("complex number {s:?} is not finite"))
    }
}

/// `3`, `-1/2` or a terminating decimal such as `0.25`, as `(num, den)`.
pub fn parse_ratio(s: &str) -> Result<(i64, i64), String> {
    let bad = || format!("bad rational {s:?}");
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let num: i64 = a.trim().parse().map_err(|_| bad())?;
        let den: i64 = b.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok((num, den));
    }
    match s.split_once('.') {
        None => Ok((s.parse().map_err(|_| bad())?, 1)),
        Some((int, frac)) => {
            if frac.is_empty() || frac.len() > 15 || !frac.bytes().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let den = 10i64.pow(frac.len() as u32);
            let neg = int.starts_with('-');
            let whole: i64 = match int.trim_start_matches(['-', '+']) {
                "" => 0,
                w => w.parse().map_err(|_| bad())?,
            };
            let f: i64 = frac.parse().map_err(|_| bad())?;
            let num = whole
                .checked_mul(den)
                .and_then(|v| v.checked_add(f))
                .ok_or_else(bad)?;
            Ok((if neg { -num } else { num }, den))
        }
    }
}
