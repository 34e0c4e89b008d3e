//! Command-line front end for `posgeom`.
//!
//! [`run`] returns the text to print and the exit status so the binary and
//! the tests share one code path.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use posgeom::algebra::{parse_poly_in, parse_rat, FactoredRatFn, MPoly, Rat, RatMatrix, UPoly};
use posgeom::canonical::{
    canonical_form, canonical_form_via_triangulation, default_facet_names, dual_volume_function,
    toric_amplitude, universal_adjoint, verify_form, verify_positive_geometry, warren_adjoint,
    CanonicalFormResult, VerificationReport,
};
use posgeom::forms::{parse_form, pullback_curve, CurveParam, RatForm};
use posgeom::io::{parse_polypol_json, parse_polytope_json, rat_strings, vertices_to_json, IoError};
use posgeom::polypol::{
    adjoint_curve, canonical_form_polypol, residual_arrangement, validate_polypol, verify_polypol_geometry,
    IrrationalIntersection, PolypolCanonicalForm, QuasiRegularPolypol, XYZ,
};
use posgeom::polytope::{chart_vars, Polytope};
use posgeom::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "posgeom",
    version,
    about = "Exact canonical forms of polytopes and polypols"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    /// Shorthand for `--format latex`.
    #[arg(long, global = true)]
    pub latex: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Vertices of a polytope and the facets through each.
    Vertices { input: PathBuf },
    /// Canonical form of a polytope.
    Canonical {
        input: PathBuf,
        /// Sum simplex forms over a triangulation instead of the vertex formula.
        #[arg(long)]
        triangulate: bool,
        /// Check the residue recursion and append the report.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        chart: ChartArgs,
    },
    /// Toric amplitude in facet variables.
    Amplitude {
        input: PathBuf,
        /// Comma-separated facet variable names.
        #[arg(long, value_delimiter = ',')]
        names: Option<Vec<String>>,
    },
    /// Homogeneous adjoint, or the universal adjoint with `--universal`.
    Adjoint {
        input: PathBuf,
        #[arg(long)]
        universal: bool,
        #[arg(long, value_delimiter = ',')]
        names: Option<Vec<String>>,
    },
    /// Dual volume function, or its value at a point.
    Dualvol {
        input: PathBuf,
        /// Comma-separated coordinates `y1,...,yd`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        at: Option<Vec<String>>,
    },
    /// Residue of a form along a line or curve, read from a JSON file with
    /// keys `form`, `along` and optionally `param`.
    Residue { input: PathBuf },
    /// Residue checks for a polytope or a polypol file.
    Verify {
        input: PathBuf,
        /// Check this form instead of the computed canonical form; use the
        /// chart `y1,...,yd` for polytopes and `x, y` for polypols.
        #[arg(long)]
        form: Option<String>,
    },
    /// Adjoint curve of a polypol.
    PolypolAdjoint {
        input: PathBuf,
        #[command(flatten)]
        transform: TransformArgs,
    },
    /// Canonical form of a quasi-regular polypol.
    PolypolCanonical {
        input: PathBuf,
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        transform: TransformArgs,
        /// Negate the form.
        #[arg(long)]
        flip_orientation: bool,
    },
}

#[derive(Args, Debug, Default)]
pub struct ChartArgs {
    /// Comma-separated names for the chart coordinates (default `y1,...,yd`).
    #[arg(long, value_delimiter = ',')]
    pub vars: Option<Vec<String>>,
    /// Negate the form.
    #[arg(long)]
    pub flip_orientation: bool,
}

#[derive(Args, Debug, Default)]
pub struct TransformArgs {
    /// Nine rationals, row-major, applied as `X = M·x` before computing.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub chart_matrix: Option<Vec<String>>,
}

/// What a run prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Debug)]
enum Failure {
    Parse(String),
    Domain(String),
    Verify(String, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        if e.is_parse() {
            Failure::Parse(e.to_string())
        } else if e.is_verification() {
            Failure::Verify(String::new(), e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

macro_rules! impl_failure_from {
    ($($t:ty),*) => {
        $(impl From<$t> for Failure {
            fn from(e: $t) -> Failure {
                Error::from(e).into()
            }
        })*
    };
}

impl_failure_from!(
    posgeom::AlgebraError,
    posgeom::FormError,
    posgeom::PolytopeError,
    posgeom::CanonicalError,
    posgeom::PolypolError,
    IoError
);

type Run = Result<String, Failure>;

pub fn run(cli: &Cli) -> Outcome {
    let format = if cli.latex { Format::Latex } else { cli.format };
    let result = match &cli.command {
        Command::Vertices { input } => vertices(input, format),
        Command::Canonical {
            input,
            triangulate,
            verify,
            chart,
        } => canonical(input, *triangulate, *verify, chart, format),
        Command::Amplitude { input, names } => amplitude(input, names.as_deref(), format),
        Command::Adjoint {
            input,
            universal,
            names,
        } => adjoint(input, *universal, names.as_deref(), format),
        Command::Dualvol { input, at } => dualvol(input, at.as_deref(), format),
        Command::Residue { input } => residue(input, format),
        Command::Verify { input, form } => verify(input, form.as_deref(), format),
        Command::PolypolAdjoint { input, transform } => polypol_adjoint(input, transform, format),
        Command::PolypolCanonical {
            input,
            verify,
            transform,
            flip_orientation,
        } => polypol_canonical(input, *verify, transform, *flip_orientation, format),
    };
    match result {
        Ok(stdout) => Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        },
        Err(Failure::Parse(msg)) => Outcome {
            stdout: String::new(),
            stderr: format!("parse error: {msg}\n"),
            code: EXIT_PARSE,
        },
        Err(Failure::Domain(msg)) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            code: EXIT_DOMAIN,
        },
        Err(Failure::Verify(stdout, msg)) => Outcome {
            stdout,
            stderr: format!("verification failed: {msg}\n"),
            code: EXIT_VERIFY,
        },
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn load_polytope(path: &PathBuf) -> Result<Polytope, Failure> {
    Ok(parse_polytope_json(&read(path)?)?)
}

fn json_out(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json");
    s.push('\n');
    s
}

fn display_math(body: &str) -> String {
    format!("\\[\n{body}\n\\]\n")
}

fn rats(items: &[String]) -> Result<Vec<Rat>, Failure> {
    items
        .iter()
        .map(|s| parse_rat(s.trim()).map_err(|_| Failure::Parse(format!("invalid number {s:?}"))))
        .collect()
}

fn rename_ratfn(r: &FactoredRatFn, from: &[String], to: &[String]) -> Result<FactoredRatFn, Failure> {
    let subs: Vec<(&str, MPoly)> = from
        .iter()
        .zip(to)
        .map(|(a, b)| (a.as_str(), MPoly::var(to, b)))
        .collect();
    Ok(r.substitute(&subs)?.with_vars(to)?)
}

fn report_text(report: &VerificationReport) -> String {
    let mut out = String::new();
    for c in &report.checks {
        let _ = writeln!(
            out,
            "  {} stratum {:?} dim {} sign {:+}{}",
            if c.passed { "ok  " } else { "FAIL" },
            c.stratum,
            c.dim,
            c.sign,
            if c.detail.is_empty() {
                String::new()
            } else {
                format!(": {}", c.detail)
            }
        );
    }
    let _ = writeln!(
        out,
        "verification: {} ({} checks)",
        if report.passed() { "passed" } else { "FAILED" },
        report.checks.len()
    );
    out
}

fn report_json(report: &VerificationReport) -> Value {
    json!({
        "passed": report.passed(),
        "checks": report.checks.iter().map(|c| json!({
            "stratum": c.stratum,
            "dim": c.dim,
            "sign": c.sign,
            "passed": c.passed,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
    })
}

/// Appends the report in the requested format; a failed report turns the
/// whole run into a verification failure that still prints its output.
fn with_report(mut out: String, mut value: Value, report: &VerificationReport, format: Format) -> Run {
    match format {
        Format::Json => {
            value["verification"] = report_json(report);
            out = json_out(value);
        }
        Format::Text => out.push_str(&report_text(report)),
        Format::Latex => {
            let _ = writeln!(
                out,
                "% verification: {}",
                if report.passed() { "passed" } else { "FAILED" }
            );
        }
    }
    match report.first_failure() {
        None => Ok(out),
        Some(c) => Err(Failure::Verify(
            out,
            format!("stratum {:?}: {}", c.stratum, c.detail),
        )),
    }
}

fn vertices(input: &PathBuf, format: Format) -> Run {
    let p = load_polytope(input)?;
    Ok(match format {
        Format::Json => json_out(vertices_to_json(&p)),
        Format::Text => {
            let mut out = String::new();
            for (v, inc) in p.vertices().iter().zip(p.incidence()) {
                let coords: Vec<String> = v.iter().map(|r| r.to_string()).collect();
                let _ = writeln!(out, "({})  facets {:?}", coords.join(", "), inc);
            }
            out
        }
        Format::Latex => {
            let rows: Vec<String> = p
                .vertices()
                .iter()
                .map(|v| {
                    let c: Vec<String> = v.iter().map(latex_rat).collect();
                    format!("({})", c.join(", "))
                })
                .collect();
            display_math(&rows.join(",\\quad "))
        }
    })
}

fn latex_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.to_string()
    } else {
        let sign = if r < &Rat::from_integer(0.into()) { "-" } else { "" };
        format!("{sign}\\frac{{{}}}{{{}}}", r.numer().magnitude(), r.denom())
    }
}

fn canonical(input: &PathBuf, triangulate: bool, verify: bool, chart: &ChartArgs, format: Format) -> Run {
    let p = load_polytope(input)?;
    let r = if triangulate {
        canonical_form_via_triangulation(&p)?
    } else {
        canonical_form(&p)?
    };
    let report = if verify {
        Some(verify_form(&p, &r.form)?)
    } else {
        None
    };
    let default_vars = chart_vars(p.dim());
    let vars = match &chart.vars {
        Some(v) if v.len() != p.dim() => {
            return Err(Failure::Parse(format!(
                "--vars needs {} names, got {}",
                p.dim(),
                v.len()
            )))
        }
        Some(v) => v.clone(),
        None => default_vars.clone(),
    };
    let mut coeff = rename_ratfn(r.coeff(), &default_vars, &vars)?;
    if chart.flip_orientation {
        coeff = coeff.neg();
    }
    let form = RatForm::new(&vars, coeff)?;
    let shown = CanonicalFormResult {
        numerator: form.coeff().numerator().clone(),
        denominator_factors: form
            .coeff()
            .factors()
            .iter()
            .flat_map(|(f, e)| std::iter::repeat_n(f.clone(), *e as usize))
            .collect(),
        form,
    };
    let value = json!({
        "vars": vars,
        "form": shown.form.to_string(),
        "numerator": shown.numerator.to_string(),
        "denominator_factors": shown.denominator_factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
    });
    let out = match format {
        Format::Json => json_out(value.clone()),
        Format::Latex => display_math(&shown.form.to_latex()),
        Format::Text => {
            let mut out = format!("{}\n", shown.form);
            let _ = writeln!(out, "numerator: {}", shown.numerator);
            let _ = writeln!(out, "denominator factors:");
            for f in &shown.denominator_factors {
                let _ = writeln!(out, "  {f}");
            }
            out
        }
    };
    match report {
        Some(rep) => with_report(out, value, &rep, format),
        None => Ok(out),
    }
}

fn facet_names(p: &Polytope, names: Option<&[String]>) -> Vec<String> {
    names
        .map(<[String]>::to_vec)
        .unwrap_or_else(|| default_facet_names(p.num_facets()))
}

fn amplitude(input: &PathBuf, names: Option<&[String]>, format: Format) -> Run {
    let p = load_polytope(input)?;
    let names = facet_names(&p, names);
    let amp = toric_amplitude(&p, &names)?;
    Ok(match format {
        Format::Text => format!("{amp}\n"),
        Format::Latex => display_math(&amp.to_latex()),
        Format::Json => json_out(json!({
            "names": names,
            "amplitude": amp.to_string(),
            "terms": amp.vertex_terms.iter().map(|(c, fs)| json!({
                "coefficient": c.to_string(),
                "facets": fs.iter().map(|&i| names[i].clone()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
    })
}

fn emit_poly(p: &MPoly, key: &str, format: Format) -> String {
    match format {
        Format::Text => format!("{p}\n"),
        Format::Latex => display_math(&p.to_latex()),
        Format::Json => json_out(json!({ "vars": p.vars(), key: p.to_string() })),
    }
}

fn adjoint(input: &PathBuf, universal: bool, names: Option<&[String]>, format: Format) -> Run {
    let p = load_polytope(input)?;
    let poly = if universal {
        universal_adjoint(&p, &facet_names(&p, names))?.polynomial
    } else {
        warren_adjoint(&p)?.polynomial
    };
    Ok(emit_poly(&poly, "adjoint", format))
}

fn dualvol(input: &PathBuf, at: Option<&[String]>, format: Format) -> Run {
    let p = load_polytope(input)?;
    let f = dual_volume_function(&p)?;
    let Some(at) = at else {
        return Ok(match format {
            Format::Text => format!("{f}\n"),
            Format::Latex => display_math(&f.to_latex()),
            Format::Json => json_out(json!({ "vars": f.vars(), "dual_volume": f.to_string() })),
        });
    };
    let y = rats(at)?;
    if y.len() != p.dim() {
        return Err(Failure::Parse(format!(
            "--at needs {} coordinates, got {}",
            p.dim(),
            y.len()
        )));
    }
    let v = f
        .eval(&y)
        .ok_or_else(|| Failure::Domain("the point lies on a facet hyperplane".into()))?;
    Ok(match format {
        Format::Text => format!("{v}\n"),
        Format::Latex => display_math(&latex_rat(&v)),
        Format::Json => json_out(json!({ "at": rat_strings(&y), "dual_volume": v.to_string() })),
    })
}

fn upoly_t(s: &str) -> Result<UPoly, Failure> {
    Ok(parse_poly_in(s, &["t"])?.to_upoly()?)
}

fn residue(input: &PathBuf, format: Format) -> Run {
    let raw: Value =
        serde_json::from_str(&read(input)?).map_err(|e| Failure::Parse(format!("invalid JSON: {e}")))?;
    let field = |k: &str| {
        raw.get(k)
            .and_then(Value::as_str)
            .ok_or_else(|| Failure::Parse(format!("missing string field {k:?}")))
    };
    let omega = parse_form(field("form")?)?;
    let along = parse_poly_in(field("along")?, omega.vars())?;
    let param = match raw.get("param") {
        None | Some(Value::Null) => None,
        Some(Value::Array(a)) if a.len() == 3 && a.iter().all(Value::is_string) => {
            Some([0, 1, 2].map(|i| a[i].as_str().expect("string").to_string()))
        }
        Some(_) => return Err(Failure::Parse("param must be three strings".into())),
    };
    if along.degree() == 1 {
        let r = omega.residue_along_linear(&along)?;
        return Ok(match format {
            Format::Text => format!("{}\nchart: {}\n", r.form, r.chart),
            Format::Latex => display_math(&r.form.to_latex()),
            Format::Json => json_out(json!({ "residue": r.form.to_string(), "chart": r.chart.to_string() })),
        });
    }
    let eta = omega.residue_along_curve(&along)?;
    let Some([r, s, h]) = &param else {
        return Ok(match format {
            Format::Json => json_out(json!({ "residue": eta.to_string() })),
            _ => format!("{eta}\n"),
        });
    };
    let phi = CurveParam::new(upoly_t(r)?, upoly_t(s)?, upoly_t(h)?);
    let pulled = pullback_curve(&eta, &phi, "t")?;
    let poles = pulled.rational_poles()?;
    let residues = poles
        .iter()
        .map(|q| Ok((q.to_string(), pulled.residue_at(q)?.to_string())))
        .collect::<Result<Vec<_>, Failure>>()?;
    Ok(match format {
        Format::Latex => display_math(&pulled.to_latex()),
        Format::Json => json_out(json!({
            "residue": eta.to_string(),
            "pullback": pulled.to_string(),
            "poles": residues.iter().map(|(q, r)| json!({ "at": q, "residue": r })).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut out = format!("{eta}\npullback: {pulled}\n");
            for (q, r) in residues {
                let _ = writeln!(out, "  Res_{{t = {q}}} = {r}");
            }
            out
        }
    })
}

fn verify(input: &PathBuf, form: Option<&str>, format: Format) -> Run {
    let text = read(input)?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("invalid JSON: {e}")))?;
    let form = form.map(parse_form).transpose()?;
    if value.get("curves").is_some() {
        let (q, irr) = parse_polypol_json(&text)?.into_quasi_regular()?;
        let omega = match form {
            Some(w) => w,
            None => canonical_form_polypol(&q, &irr)?.form,
        };
        let report = verify_polypol_geometry(&q, &omega)?;
        let v = json!({ "form": omega.to_string() });
        with_report(format!("{omega}\n"), v, &report, format)
    } else if value.get("U").is_some() {
        let p = parse_polytope_json(&text)?;
        let report = match form {
            Some(w) => verify_form(&p, &w)?,
            None => verify_positive_geometry(&p)?,
        };
        let v = json!({ "facets": p.num_facets(), "vertices": p.vertices().len() });
        let head = format!(
            "polytope with {} facets and {} vertices\n",
            p.num_facets(),
            p.vertices().len()
        );
        with_report(head, v, &report, format)
    } else {
        Err(Failure::Parse(
            "expected a polytope (\"U\", \"z\") or a polypol (\"curves\") file".into(),
        ))
    }
}

fn chart_matrix(t: &TransformArgs) -> Result<Option<RatMatrix>, Failure> {
    let Some(items) = &t.chart_matrix else {
        return Ok(None);
    };
    let v = rats(items)?;
    if v.len() != 9 {
        return Err(Failure::Parse(format!(
            "--chart-matrix needs 9 numbers, got {}",
            v.len()
        )));
    }
    let m = RatMatrix::new(3, 3, v);
    if m.det()? == Rat::from_integer(0.into()) {
        return Err(Failure::Domain("--chart-matrix is singular".into()));
    }
    Ok(Some(m))
}

fn polypol_adjoint(input: &PathBuf, t: &TransformArgs, format: Format) -> Run {
    let raw = parse_polypol_json(&read(input)?)?;
    let mut p = validate_polypol(raw.curves, raw.vertices)?;
    if let Some(m) = chart_matrix(t)? {
        p = p.transform(&m)?;
    }
    let arr = residual_arrangement(&p, &raw.irrational)?;
    let adj = adjoint_curve(&p, &raw.irrational)?;
    Ok(match format {
        Format::Latex => display_math(&adj.to_latex()),
        Format::Json => json_out(json!({
            "adjoint": adj.to_string(),
            "residual_points": arr.points.iter().map(|r| rat_strings(&r.point)).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut out = format!("{adj}\n");
            for r in &arr.points {
                let c: Vec<String> = r.point.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(out, "  residual point ({})", c.join(" : "));
            }
            out
        }
    })
}

fn load_quasi_regular(
    input: &PathBuf,
    t: &TransformArgs,
) -> Result<(QuasiRegularPolypol, Vec<IrrationalIntersection>), Failure> {
    let (mut q, irr) = parse_polypol_json(&read(input)?)?.into_quasi_regular()?;
    if let Some(m) = chart_matrix(t)? {
        q = q.transform(&m)?;
    }
    Ok((q, irr))
}

fn polypol_canonical(input: &PathBuf, verify: bool, t: &TransformArgs, flip: bool, format: Format) -> Run {
    let (q, irr) = load_quasi_regular(input, t)?;
    let c: PolypolCanonicalForm = canonical_form_polypol(&q, &irr)?;
    let report = if verify {
        Some(verify_polypol_geometry(&q, &c.form)?)
    } else {
        None
    };
    let (form, alpha) = if flip {
        (c.form.neg(), -c.alpha.clone())
    } else {
        (c.form.clone(), c.alpha.clone())
    };
    let value = json!({
        "form": form.to_string(),
        "alpha": alpha.to_string(),
        "adjoint": c.adjoint.to_string(),
        "vars": XYZ,
    });
    let out = match format {
        Format::Json => json_out(value.clone()),
        Format::Latex => display_math(&form.to_latex()),
        Format::Text => format!("{form}\nalpha: {alpha}\nadjoint: {}\n", c.adjoint),
    };
    match report {
        Some(rep) => with_report(out, value, &rep, format),
        None => Ok(out),
    }
}
