use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twisted_su::operator::SpectralParams;
use twisted_su::rmatrix::{build_family, RFamily, RParams};
use twisted_su::space::BasisFamily;
use twisted_su::special::{kernel_g, theta_char, KernelFamily, ThetaChar};
use twisted_su::verify::{
    affinization_check, belavin_structure_checks, degeneration_sweep, hecke_check,
    invariance_check, table_vs_restriction, three_term_check, ybe_functional_check,
    ybe_matrix_check, CheckReport, SweepPath, SweepSpec, TableFamily,
};
use twisted_su::Complex64;

use crate::args::{
    BasisArgs, BasisName, CheckArgs, CliConfig, Command, DegenerateArgs, Format, KernelArgs,
    KernelName, MatrixParams, TestName, ThetaArgs,
};
use crate::output::{serialize_matrix, serialize_report, Cell, Table};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] twisted_su::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_numerical() => EXIT_NUMERICAL,
            CliError::Io(_) => EXIT_NUMERICAL,
            _ => EXIT_INPUT,
        }
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

/// Execute one command, writing results to `out`. Returns whether every
/// invoked check passed; commands without a check always pass.
pub fn run(config: &CliConfig, out: &mut dyn Write) -> Result<bool, CliError> {
    let tol = config.tol;
    if !(tol > 0.0 && tol < 1e-3) {
        return usage(format!("--tol must lie in (0, 1e-3), got {tol}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let fmt = |default| config.format.unwrap_or(default);
    let (text, passed) = match &config.command {
        Command::Theta(a) => (theta(a, tol)?.render(fmt(Format::Json)), true),
        Command::Kernel(a) => (kernel(a, tol)?.render(fmt(Format::Json)), true),
        Command::Basis(a) => (basis(a, tol)?.render(fmt(Format::Csv)), true),
        Command::Build(a) => {
            let family = match RFamily::from_name(&a.family) {
                Some(f) => f,
                None => return usage(format!("unknown family {:?}", a.family)),
            };
            let m = build_family(family, a.params.n, &rparams(&a.params), tol)?;
            (serialize_matrix(&m, fmt(Format::Json)), true)
        }
        Command::Check(a) => {
            let r = check(a, tol, &mut rng)?;
            (
                serialize_report(&r, fmt(Format::Json), config.timing),
                r.passed,
            )
        }
        Command::Degenerate(a) => {
            let r = degenerate(a, tol)?;
            (
                serialize_report(&r, fmt(Format::Json), config.timing),
                r.passed,
            )
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(passed)
}

/// Parse `args` (program name first), run, and map the outcome to an exit
/// code. Diagnostics go to `err`.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                return EXIT_INPUT;
            }
            let _ = out.write_all(text.as_bytes());
            return EXIT_PASS;
        }
    };
    match run(&config, out) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_CHECK_FAILED,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn rparams(p: &MatrixParams) -> RParams {
    RParams {
        q: p.q,
        p: p.p,
        tau: p.tau,
        kappa: p.kappa,
        lam: p.lambda,
        alpha: p.alpha,
        beta: p.beta,
    }
}

fn spectral(p: &MatrixParams) -> SpectralParams {
    SpectralParams {
        lam: p.lambda,
        kappa: p.kappa,
        alpha: p.alpha,
        beta: p.beta,
    }
}

fn kernel_family(name: KernelName, tau: Complex64, tau1: Complex64) -> KernelFamily {
    match name {
        KernelName::Elliptic => KernelFamily::Elliptic { tau },
        KernelName::Trig => KernelFamily::Trig { tau1 },
        KernelName::Rational => KernelFamily::Rational,
    }
}

fn basis_family(
    name: BasisName,
    n: usize,
    tau: Complex64,
    tau1: Complex64,
    tol: f64,
) -> BasisFamily {
    match name {
        BasisName::Psi => BasisFamily::EllipticPsi { n, tau, tol },
        BasisName::Psitilde => BasisFamily::EllipticPsiTilde { n, tau, tol },
        BasisName::Phi => BasisFamily::TrigPhi { n, tau1 },
        BasisName::Phitilde => BasisFamily::TrigPhiTilde { n, tau1 },
        BasisName::Mono => BasisFamily::Monomial { n },
    }
}

fn theta(a: &ThetaArgs, tol: f64) -> Result<Table, CliError> {
    let v = theta_char(ThetaChar::from_ratios(a.a, a.b), a.z, a.tau, tol)?;
    let ratio = |(p, q): (i64, i64)| Cell::Text(format!("{p}/{q}"));
    Ok(Table {
        columns: vec!["a", "b", "z", "tau", "value"],
        rows: vec![vec![
            ratio(a.a),
            ratio(a.b),
            Cell::Complex(a.z),
            Cell::Complex(a.tau),
            Cell::Complex(v),
        ]],
    })
}

fn kernel(a: &KernelArgs, tol: f64) -> Result<Table, CliError> {
    let fam = kernel_family(a.family, a.tau, a.tau1);
    let v = kernel_g(fam, a.z, a.lambda, tol)?;
    Ok(Table {
        columns: vec!["family", "z", "lambda", "value"],
        rows: vec![vec![
            Cell::Text(fam.name().into()),
            Cell::Complex(a.z),
            Cell::Complex(a.lambda),
            Cell::Complex(v),
        ]],
    })
}

fn basis(a: &BasisArgs, tol: f64) -> Result<Table, CliError> {
    let fam = basis_family(a.family, a.n, a.tau, a.tau1, tol);
    fam.validate()?;
    let indices: Vec<usize> = match a.index {
        Some(i) if i >= a.n => return usage(format!("--index {i} out of range for --n {}", a.n)),
        Some(i) => vec![i],
        None => (0..a.n).collect(),
    };
    let mut rows = Vec::new();
    for &z in &a.z {
        for &i in &indices {
            rows.push(vec![
                Cell::Int(i as i64),
                Cell::Complex(z),
                Cell::Complex(fam.eval(i, z)?),
            ]);
        }
    }
    Ok(Table {
        columns: vec!["index", "z", "value"],
        rows,
    })
}

fn kernel_name(family: &Option<String>) -> Result<KernelName, CliError> {
    match family.as_deref() {
        Some("elliptic") => Ok(KernelName::Elliptic),
        Some("trig") => Ok(KernelName::Trig),
        Some("rational") => Ok(KernelName::Rational),
        Some(other) => usage(format!(
            "unknown kernel family {other:?}; expected elliptic, trig or rational"
        )),
        None => usage("--family is required for this test"),
    }
}

fn natural_basis(k: KernelName) -> BasisName {
    match k {
        KernelName::Elliptic => BasisName::Psi,
        KernelName::Trig => BasisName::Phi,
        KernelName::Rational => BasisName::Mono,
    }
}

fn check(a: &CheckArgs, tol: f64, rng: &mut ChaCha8Rng) -> Result<CheckReport, CliError> {
    let p = &a.params;
    let draws = |default: usize| a.draws.unwrap_or(default);
    let kfam = || Ok::<_, CliError>(kernel_family(kernel_name(&a.family)?, p.tau, p.tau1));
    let r = match a.test {
        TestName::Ybe => {
            let name = a.family.as_deref().unwrap_or("belavin");
            let family = match RFamily::from_name(name) {
                Some(f) => f,
                None => return usage(format!("unknown family {name:?}")),
            };
            ybe_matrix_check(family, p.n, &rparams(p), draws(10), tol, rng)?
        }
        TestName::YbeFunctional => ybe_functional_check(
            kfam()?,
            p.kappa,
            p.alpha,
            p.beta,
            draws(3),
            a.points,
            tol,
            rng,
        )?,
        TestName::Hecke => hecke_check(p.n, p.q, p.p)?,
        TestName::BelavinStructure => belavin_structure_checks(p.n, p.tau, p.kappa, p.lambda, tol)?,
        TestName::Affinization => affinization_check(p.n, p.beta, p.kappa, p.lambda)?,
        TestName::TableVsRestriction => {
            let family = match kernel_name(&a.family)? {
                KernelName::Elliptic => TableFamily::Elliptic { tau: p.tau },
                KernelName::Trig => TableFamily::Trig { tau1: p.tau1 },
                KernelName::Rational => TableFamily::Rational,
            };
            table_vs_restriction(p.n, family, spectral(p), tol, rng)?
        }
        TestName::ThreeTerm => three_term_check(kfam()?, draws(100), tol, rng)?,
        TestName::Invariance => {
            let k = kernel_name(&a.family)?;
            let b = basis_family(a.basis.unwrap_or(natural_basis(k)), p.n, p.tau, p.tau1, tol);
            invariance_check(kfam()?, b, spectral(p), tol, rng)?
        }
    };
    Ok(r)
}

fn degenerate(a: &DegenerateArgs, tol: f64) -> Result<CheckReport, CliError> {
    let path = match SweepPath::from_name(&a.path) {
        Some(p) => p,
        None => {
            return usage(format!(
                "unknown path {:?}; expected belavin-cg or cg-jcg",
                a.path
            ))
        }
    };
    let spec = SweepSpec {
        path,
        values: a.sweep.clone(),
        n: a.n,
        kappa: a.kappa,
        lam: a.lambda,
        alpha: a.alpha,
        beta: a.beta,
    };
    Ok(degeneration_sweep(&spec, tol)?)
}
