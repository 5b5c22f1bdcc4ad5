//! Output formats. Every float is printed with 17 significant digits so a
//! given build prints identical bytes on every run and JSON round-trips.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;
use twisted_su::numeric::CMatrix;
use twisted_su::rmatrix::SpectralRMatrix;
use twisted_su::verify::{CheckReport, Param};
use twisted_su::Complex64;

use crate::args::Format;

pub const RMAT_SCHEMA: &str = "rmat/1";
pub const CHECK_SCHEMA: &str = "check/1";
pub const CONVENTION: &str = "row=k*n+l (out), col=i*n+j (in)";

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// `re±imi`, readable back by the complex flag parser.
pub fn fmt_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{sign}{}i", fmt_f64(z.re), fmt_f64(z.im.abs()))
}

/// A float as a raw JSON number; non-finite values become `null`.
struct Num(f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            RawValue::from_string(fmt_f64(self.0))
                .map_err(serde::ser::Error::custom)?
                .serialize(s)
        } else {
            s.serialize_none()
        }
    }
}

/// `[re, im]`
struct Cx(Complex64);

impl Serialize for Cx {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (Num(self.0.re), Num(self.0.im)).serialize(s)
    }
}

/// An ordered list of pairs written as a JSON object.
struct Pairs<'a, T>(&'a [(String, T)], fn(&T) -> ParamJson<'_>);

impl<T> Serialize for Pairs<'_, T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            m.serialize_entry(k, &(self.1)(v))?;
        }
        m.end()
    }
}

enum ParamJson<'a> {
    Int(i64),
    Real(f64),
    Complex(Complex64),
    Text(&'a str),
    List(&'a [f64]),
}

impl Serialize for ParamJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match *self {
            ParamJson::Int(v) => s.serialize_i64(v),
            ParamJson::Real(v) => Num(v).serialize(s),
            ParamJson::Complex(v) => Cx(v).serialize(s),
            ParamJson::Text(v) => s.serialize_str(v),
            ParamJson::List(v) => {
                let mut q = s.serialize_seq(Some(v.len()))?;
                for x in v {
                    q.serialize_element(&Num(*x))?;
                }
                q.end()
            }
        }
    }
}

fn param_json(p: &Param) -> ParamJson<'_> {
    match p {
        Param::Int(v) => ParamJson::Int(*v),
        Param::Real(v) => ParamJson::Real(*v),
        Param::Complex(v) => ParamJson::Complex(*v),
        Param::Text(v) => ParamJson::Text(v),
        Param::List(v) => ParamJson::List(v),
    }
}

fn complex_json(z: &Complex64) -> ParamJson<'_> {
    ParamJson::Complex(*z)
}

fn real_json(x: &f64) -> ParamJson<'_> {
    ParamJson::Real(*x)
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("output values always serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct RmatDoc<'a> {
    schema: &'static str,
    family: &'a str,
    n: usize,
    params: Pairs<'a, Complex64>,
    convention: &'static str,
    entries: Vec<Vec<Cx>>,
}

fn owned_params(m: &SpectralRMatrix) -> Vec<(String, Complex64)> {
    m.params.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// rmat/1 JSON, CSV rows `k,l,i,j,re,im` of the nonzero entries in
/// lexicographic order (no header), or an aligned table.
pub fn serialize_matrix(m: &SpectralRMatrix, format: Format) -> String {
    let n = m.n;
    match format {
        Format::Json => {
            let params = owned_params(m);
            let d = &m.data;
            to_json(&RmatDoc {
                schema: RMAT_SCHEMA,
                family: m.family.name(),
                n,
                params: Pairs(&params, complex_json),
                convention: CONVENTION,
                entries: (0..d.nrows())
                    .map(|r| (0..d.ncols()).map(|c| Cx(d[(r, c)])).collect())
                    .collect(),
            })
        }
        Format::Csv => {
            let mut out = String::new();
            for_nonzero(m, |k, l, i, j, v| {
                let _ = writeln!(out, "{k},{l},{i},{j},{},{}", fmt_f64(v.re), fmt_f64(v.im));
            });
            out
        }
        Format::Pretty => {
            let mut out = format!("{} n={n}", m.family.name());
            for (k, v) in &m.params {
                let _ = write!(out, " {k}={}", short_complex(*v));
            }
            out.push('\n');
            for_nonzero(m, |k, l, i, j, v| {
                let _ = writeln!(out, "  R[{k}{l},{i}{j}] = {}", short_complex(v));
            });
            out
        }
    }
}

fn for_nonzero(m: &SpectralRMatrix, mut f: impl FnMut(usize, usize, usize, usize, Complex64)) {
    let n = m.n;
    for k in 0..n {
        for l in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let v = m.entry(k, l, i, j);
                    if v.re != 0.0 || v.im != 0.0 {
                        f(k, l, i, j, v);
                    }
                }
            }
        }
    }
}

fn short_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:.6e}{sign}{:.6e}i", z.re, z.im.abs())
}

/// A matrix read back from rmat/1 JSON.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedMatrix {
    pub family: String,
    pub n: usize,
    pub params: BTreeMap<String, Complex64>,
    pub data: CMatrix,
}

#[derive(Deserialize)]
struct RmatIn {
    schema: String,
    family: String,
    n: usize,
    params: BTreeMap<String, [f64; 2]>,
    entries: Vec<Vec<[f64; 2]>>,
}

pub fn parse_matrix(json: &str) -> Result<ParsedMatrix, String> {
    let doc: RmatIn = serde_json::from_str(json).map_err(|e| e.to_string())?;
    if doc.schema != RMAT_SCHEMA {
        return Err(format!("unexpected schema {:?}", doc.schema));
    }
    let dim = doc.n * doc.n;
    if doc.entries.len() != dim || doc.entries.iter().any(|r| r.len() != dim) {
        return Err(format!("entries must be {dim} x {dim}"));
    }
    let data = CMatrix::from_fn(dim, dim, |r, c| {
        let [re, im] = doc.entries[r][c];
        Complex64::new(re, im)
    });
    Ok(ParsedMatrix {
        family: doc.family,
        n: doc.n,
        params: doc
            .params
            .into_iter()
            .map(|(k, [re, im])| (k, Complex64::new(re, im)))
            .collect(),
        data,
    })
}

#[derive(Serialize)]
struct CheckDoc<'a> {
    schema: &'static str,
    check: &'a str,
    params: Pairs<'a, Param>,
    residuals: Vec<(Num, Num)>,
    threshold: Num,
    passed: bool,
    seconds: Option<Num>,
    labels: Vec<&'a str>,
    scalars: Vec<Cx>,
    diagnostics: Pairs<'a, f64>,
}

/// check/1 JSON. `seconds` is `null` unless timing was requested.
pub fn report_json(r: &CheckReport, timing: bool) -> String {
    to_json(&CheckDoc {
        schema: CHECK_SCHEMA,
        check: &r.check,
        params: Pairs(&r.params, param_json),
        residuals: r
            .residuals
            .iter()
            .map(|x| (Num(x.x), Num(x.value)))
            .collect(),
        threshold: Num(r.threshold),
        passed: r.passed,
        seconds: timing.then_some(Num(r.seconds)),
        labels: r.residuals.iter().map(|x| x.label.as_str()).collect(),
        scalars: r.scalars.iter().map(|z| Cx(*z)).collect(),
        diagnostics: Pairs(&r.diagnostics, real_json),
    })
}

/// Sweeps as `sweep_value,residual,scalar_estimate`; other checks as
/// `label,x,residual`.
pub fn report_csv(r: &CheckReport) -> String {
    let mut out = String::new();
    if r.check == "degenerate" {
        out.push_str("sweep_value,residual,scalar_estimate\n");
        for (k, x) in r.residuals.iter().enumerate() {
            let s = r
                .scalars
                .get(k)
                .map(|z| fmt_complex(*z))
                .unwrap_or_default();
            let _ = writeln!(out, "{},{},{s}", fmt_f64(x.x), fmt_f64(x.value));
        }
    } else {
        out.push_str("label,x,residual\n");
        for x in &r.residuals {
            let _ = writeln!(out, "{},{},{}", x.label, fmt_f64(x.x), fmt_f64(x.value));
        }
    }
    out
}

fn param_text(p: &Param) -> String {
    match p {
        Param::Int(v) => v.to_string(),
        Param::Real(v) => format!("{v}"),
        Param::Complex(v) => format!("{v}"),
        Param::Text(v) => v.clone(),
        Param::List(v) => format!("{} values", v.len()),
    }
}

pub fn report_pretty(r: &CheckReport, timing: bool) -> String {
    let mut out = format!(
        "{} {}  (worst {:.3e}, threshold {:.1e})\n",
        r.check,
        if r.passed { "PASS" } else { "FAIL" },
        r.worst(),
        r.threshold
    );
    let ps: Vec<String> = r
        .params
        .iter()
        .map(|(k, v)| format!("{k}={}", param_text(v)))
        .collect();
    let _ = writeln!(out, "  {}", ps.join(" "));
    for (k, x) in r.residuals.iter().enumerate() {
        let _ = write!(
            out,
            "  {:<16} {:>12} {:>12.3e}",
            x.label,
            format!("{}", x.x),
            x.value
        );
        if let Some(z) = r.scalars.get(k) {
            let _ = write!(out, "  scalar {}", short_complex(*z));
        }
        out.push('\n');
    }
    for (k, v) in &r.diagnostics {
        let _ = writeln!(out, "  {k} = {v}");
    }
    if timing {
        let _ = writeln!(out, "  {:.3}s", r.seconds);
    }
    out
}

pub fn serialize_report(r: &CheckReport, format: Format, timing: bool) -> String {
    match format {
        Format::Json => report_json(r, timing),
        Format::Csv => report_csv(r),
        Format::Pretty => report_pretty(r, timing),
    }
}

/// One value in a tabulation.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Complex(Complex64),
    Text(String),
}

/// Rows of named values, used for `theta`, `kernel` and `basis`.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

struct RowJson<'a>(&'a [&'static str], &'a [Cell]);

impl Serialize for RowJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0.iter().zip(self.1) {
            match v {
                Cell::Int(x) => m.serialize_entry(k, x)?,
                Cell::Complex(z) => m.serialize_entry(k, &Cx(*z))?,
                Cell::Text(t) => m.serialize_entry(k, t)?,
            }
        }
        m.end()
    }
}

impl Table {
    /// JSON array of objects; CSV with `_re`/`_im` column pairs for
    /// complex values; or aligned text.
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(
                &self
                    .rows
                    .iter()
                    .map(|r| RowJson(&self.columns, r))
                    .collect::<Vec<_>>(),
            ),
            Format::Csv => {
                let mut head = Vec::new();
                if let Some(first) = self.rows.first() {
                    for (k, v) in self.columns.iter().zip(first) {
                        match v {
                            Cell::Complex(_) => {
                                head.push(format!("{k}_re"));
                                head.push(format!("{k}_im"));
                            }
                            _ => head.push(k.to_string()),
                        }
                    }
                }
                let mut out = head.join(",");
                out.push('\n');
                for r in &self.rows {
                    let cells: Vec<String> = r
                        .iter()
                        .map(|c| match c {
                            Cell::Int(x) => x.to_string(),
                            Cell::Complex(z) => format!("{},{}", fmt_f64(z.re), fmt_f64(z.im)),
                            Cell::Text(t) => t.clone(),
                        })
                        .collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
                out
            }
            Format::Pretty => {
                let mut out = String::new();
                for r in &self.rows {
                    let cells: Vec<String> = self
                        .columns
                        .iter()
                        .zip(r)
                        .map(|(k, c)| match c {
                            Cell::Int(x) => format!("{k}={x}"),
                            Cell::Complex(z) => format!("{k}={}", short_complex(*z)),
                            Cell::Text(t) => format!("{k}={t}"),
                        })
                        .collect();
                    out.push_str(&cells.join("  "));
                    out.push('\n');
                }
                out
            }
        }
    }
}
