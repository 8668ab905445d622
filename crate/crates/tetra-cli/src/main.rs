//! `tetra`: membership checks, the origin-derivative interpolation
//! solver, orbit canonicalization, automorphism arithmetic, the
//! mu-synthesis criterion and the randomized verification suites, all over
//! JSON on stdin/stdout.
//!
//! Exit codes: 0 success (or clean verification), 1 negative mathematical
//! verdict, 2 malformed input.  Complex numbers on the wire are `[re, im]`
//! arrays; every float is printed with 17 significant digits.

use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use tetrablock::autgroup::TetraAutomorphism;
use tetrablock::foliation::{canonical_radius, normalizing_automorphism};
use tetrablock::membership::{classify_with, ClassifyOptions, MembershipReport};
use tetrablock::numerics::{DiscAutomorphism, Matrix2};
use tetrablock::oracle::{
    cross_validate_with, invariance_suite_with, CrossValidateOptions, InvarianceOptions,
    SuiteReport,
};
use tetrablock::schwarz::{self, interpolant, wedge_term, TangentTarget};
use tetrablock::TetraPoint;

#[derive(Parser)]
#[command(
    name = "tetra",
    version,
    about = "Function theory of the tetrablock domain: membership, interpolation, \
             automorphisms, orbits, and verification suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Base tolerance scale for the verification suites
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Margin band treated as borderline in membership reports
    #[arg(long, global = true, default_value_t = 1e-6)]
    boundary_band: f64,
    /// Angular resolution of the definitional sampling grid
    #[arg(long, global = true, default_value_t = 200)]
    grid: usize,
    /// Sample count for the verification suites
    #[arg(long, global = true, default_value_t = 10_000)]
    samples: usize,
    /// Seed for all randomized suites
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Compact JSON output (the default)
    #[arg(long, global = true)]
    json: bool,
    /// Pretty-printed JSON output
    #[arg(long, global = true, conflicts_with = "json")]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a point `{"x": [[re,im],[re,im],[re,im]]}` against the
    /// five membership characterizations
    Check,
    /// Solve the interpolation problem for `{"y": [[re,im] x3]}`
    Schwarz {
        /// Interpolant samples on the circle of radius 0.9
        #[arg(long, default_value_t = 16)]
        lambda_samples: usize,
        /// Also emit samples of the matricial lift
        #[arg(long)]
        emit_f: bool,
    },
    /// Canonical orbit radius and a normalizing automorphism for a point
    Canonical,
    /// Automorphism operations on wire-form group elements
    Aut {
        #[command(subcommand)]
        action: AutAction,
    },
    /// Mu-synthesis feasibility for `{"a": [[re,im] x4], "b": [[re,im] x4]}`
    /// (row-major matrices)
    Mu,
    /// Run the randomized verification suites
    Verify {
        /// Suite to run: cross-validate, invariance, or all
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Subcommand)]
enum AutAction {
    /// Apply `{"automorphism": {...}, "x": [[re,im] x3]}`
    Apply,
    /// Compose `{"g": {...}, "h": {...}}` (the result applies h first)
    Compose,
    /// Invert `{"automorphism": {...}}`
    Inverse,
}

type WireComplex = [f64; 2];

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PointPayload {
    x: [WireComplex; 3],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TargetPayload {
    y: [WireComplex; 3],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MuPayload {
    a: [WireComplex; 4],
    b: [WireComplex; 4],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WireDisc {
    omega: WireComplex,
    alpha: WireComplex,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WireAutomorphism {
    upsilon: WireDisc,
    chi: WireDisc,
    flip: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ApplyPayload {
    automorphism: WireAutomorphism,
    x: [WireComplex; 3],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComposePayload {
    g: WireAutomorphism,
    h: WireAutomorphism,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InversePayload {
    automorphism: WireAutomorphism,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::Check => cmd_check(cli),
        Command::Schwarz {
            lambda_samples,
            emit_f,
        } => cmd_schwarz(cli, *lambda_samples, *emit_f),
        Command::Canonical => cmd_canonical(cli),
        Command::Aut { action } => cmd_aut(cli, action),
        Command::Mu => cmd_mu(cli),
        Command::Verify { suite } => cmd_verify(cli, suite),
    }
}

fn cmd_check(cli: &Cli) -> Result<ExitCode, String> {
    let payload: PointPayload = read_payload()?;
    let x = point(&payload.x)?;
    let opts = ClassifyOptions {
        grid_size: cli.grid,
        boundary_band: cli.boundary_band,
        ..ClassifyOptions::default()
    };
    let report = classify_with(&x, &opts);
    let member = report.is_member();
    emit(cli, &json!({ "point": point_json(&x), "report": report_json(&report) }))?;
    Ok(if member { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_schwarz(cli: &Cli, lambda_samples: usize, emit_f: bool) -> Result<ExitCode, String> {
    let payload: TargetPayload = read_payload()?;
    let y = TangentTarget::new(
        complex(&payload.y[0])?,
        complex(&payload.y[1])?,
        complex(&payload.y[2])?,
    );
    let norm = schwarz::indicatrix_norm(&y);
    if !schwarz::is_feasible(&y) {
        emit(cli, &json!({ "feasible": false, "indicatrix_norm": norm }))?;
        return Ok(ExitCode::from(1));
    }
    let sol = interpolant(&y).map_err(|e| e.to_string())?;
    let lambdas: Vec<Complex64> = (0..lambda_samples.max(1))
        .map(|k| {
            Complex64::from_polar(
                0.9,
                std::f64::consts::TAU * k as f64 / lambda_samples.max(1) as f64,
            )
        })
        .collect();
    let mut phi_samples = Vec::new();
    for &lam in &lambdas {
        let p = sol.phi(lam).map_err(|e| e.to_string())?;
        phi_samples.push(json!({ "lambda": complex_json(lam), "phi": point_json(&p) }));
    }
    let mut out = json!({
        "feasible": true,
        "indicatrix_norm": norm,
        "c": complex_json(sol.c()),
        "flipped": sol.is_flipped(),
        "degenerate": sol.is_degenerate(),
        "zeta": sol.matricial().map_or(Value::Null, |m| json!(m.zeta)),
        "xi": sol.matricial().map_or(Value::Null, |m| complex_json(m.xi)),
        "phi_samples": phi_samples,
    });
    if emit_f {
        let mut f_samples = Vec::new();
        if !sol.is_degenerate() {
            for &lam in &lambdas {
                let f = sol.lift(lam).map_err(|e| e.to_string())?;
                f_samples.push(json!({ "lambda": complex_json(lam), "f": matrix_json(&f) }));
            }
        }
        out["f_samples"] = Value::Array(f_samples);
    }
    emit(cli, &out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_canonical(cli: &Cli) -> Result<ExitCode, String> {
    let payload: PointPayload = read_payload()?;
    let x = point(&payload.x)?;
    let r = canonical_radius(&x).map_err(|e| e.to_string())?;
    let h = normalizing_automorphism(&x).map_err(|e| e.to_string())?;
    let image = h.apply(&x).map_err(|e| e.to_string())?;
    emit(
        cli,
        &json!({
            "r": r,
            "automorphism": automorphism_json(&h),
            "image": point_json(&image),
        }),
    )?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_aut(cli: &Cli, action: &AutAction) -> Result<ExitCode, String> {
    match action {
        AutAction::Apply => {
            let payload: ApplyPayload = read_payload()?;
            let g = automorphism(&payload.automorphism)?;
            let x = point(&payload.x)?;
            let image = g.apply(&x).map_err(|e| e.to_string())?;
            emit(cli, &json!({ "result": point_json(&image) }))?;
        }
        AutAction::Compose => {
            let payload: ComposePayload = read_payload()?;
            let g = automorphism(&payload.g)?;
            let h = automorphism(&payload.h)?;
            emit(cli, &json!({ "result": automorphism_json(&g.compose(&h)) }))?;
        }
        AutAction::Inverse => {
            let payload: InversePayload = read_payload()?;
            let g = automorphism(&payload.automorphism)?;
            emit(cli, &json!({ "result": automorphism_json(&g.inverse()) }))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_mu(cli: &Cli) -> Result<ExitCode, String> {
    let payload: MuPayload = read_payload()?;
    let a = matrix(&payload.a)?;
    let b = matrix(&payload.b)?;
    let feasible = schwarz::mu_feasible(&a, &b).map_err(|e| e.to_string())?;
    let wedge = wedge_term(&a, &b);
    emit(
        cli,
        &json!({
            "feasible": feasible,
            "wedge": complex_json(wedge),
            "target": [complex_json(b.a11), complex_json(b.a22), complex_json(wedge)],
        }),
    )?;
    Ok(if feasible { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_verify(cli: &Cli, suite: &str) -> Result<ExitCode, String> {
    let cross_opts = CrossValidateOptions {
        count: cli.samples,
        seed: cli.seed,
        boundary_band: cli.boundary_band,
        grid_size: cli.grid,
        ..CrossValidateOptions::default()
    };
    let inv_opts = InvarianceOptions {
        count: cli.samples,
        seed: cli.seed,
        tol_scale: cli.tol / 1e-9,
    };
    let (out, clean) = match suite {
        "cross-validate" => {
            let r = cross_validate_with(&cross_opts);
            (suite_json(&r), r.clean())
        }
        "invariance" => {
            let r = invariance_suite_with(&inv_opts);
            (suite_json(&r), r.clean())
        }
        "all" => {
            let a = cross_validate_with(&cross_opts);
            let b = invariance_suite_with(&inv_opts);
            let clean = a.clean() && b.clean();
            (
                json!({ "suites": [suite_json(&a), suite_json(&b)], "clean": clean }),
                clean,
            )
        }
        other => return Err(format!("unknown suite '{other}'")),
    };
    emit(cli, &out)?;
    Ok(if clean { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn read_payload<T: DeserializeOwned>() -> Result<T, String> {
    let mut buf = String::new();
    io::stdin()
        .read_to_string(&mut buf)
        .map_err(|e| format!("cannot read stdin: {e}"))?;
    serde_json::from_str(&buf).map_err(|e| format!("malformed input: {e}"))
}

fn complex(w: &WireComplex) -> Result<Complex64, String> {
    if !w[0].is_finite() || !w[1].is_finite() {
        return Err("complex components must be finite".into());
    }
    Ok(Complex64::new(w[0], w[1]))
}

fn point(x: &[WireComplex; 3]) -> Result<TetraPoint, String> {
    Ok(TetraPoint::new(
        complex(&x[0])?,
        complex(&x[1])?,
        complex(&x[2])?,
    ))
}

fn matrix(m: &[WireComplex; 4]) -> Result<Matrix2, String> {
    Ok(Matrix2::new(
        complex(&m[0])?,
        complex(&m[1])?,
        complex(&m[2])?,
        complex(&m[3])?,
    ))
}

fn automorphism(w: &WireAutomorphism) -> Result<TetraAutomorphism, String> {
    let upsilon = DiscAutomorphism::new(complex(&w.upsilon.omega)?, complex(&w.upsilon.alpha)?)
        .map_err(|e| e.to_string())?;
    let chi = DiscAutomorphism::new(complex(&w.chi.omega)?, complex(&w.chi.alpha)?)
        .map_err(|e| e.to_string())?;
    Ok(TetraAutomorphism::new(upsilon, chi, w.flip))
}

fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn point_json(x: &TetraPoint) -> Value {
    json!([complex_json(x.x1), complex_json(x.x2), complex_json(x.x3)])
}

fn matrix_json(m: &Matrix2) -> Value {
    json!([
        complex_json(m.a11),
        complex_json(m.a12),
        complex_json(m.a21),
        complex_json(m.a22)
    ])
}

fn automorphism_json(g: &TetraAutomorphism) -> Value {
    json!({
        "upsilon": { "omega": complex_json(g.upsilon.omega()), "alpha": complex_json(g.upsilon.alpha()) },
        "chi": { "omega": complex_json(g.chi.omega()), "alpha": complex_json(g.chi.alpha()) },
        "flip": g.flip,
    })
}

fn report_json(r: &MembershipReport) -> Value {
    json!({
        "verdicts": {
            "definition": r.definition,
            "inequality": r.inequality,
            "lft": r.lft,
            "symmetric": r.symmetric,
            "beta": r.beta,
        },
        "margins": {
            "definition": r.margin_definition,
            "inequality": r.margin_inequality,
            "lft": r.margin_lft,
            "symmetric": r.margin_symmetric,
            "beta": r.margin_beta,
        },
        "min_modulus": r.min_modulus,
        "consensus": r.consensus,
        "borderline": r.borderline,
        "member": r.is_member(),
    })
}

fn suite_json(r: &SuiteReport) -> Value {
    json!({
        "suite": r.suite,
        "samples_run": r.samples_run,
        "seed": r.seed,
        "clean": r.clean(),
        "worst_deviation": finite_or_null(r.worst_deviation),
        "borderline_skipped": r.borderline_skipped,
        "property_worst": r
            .property_worst
            .iter()
            .map(|(name, worst)| json!({ "property": name, "worst": finite_or_null(*worst) }))
            .collect::<Vec<_>>(),
        "disagreements": r
            .disagreements
            .iter()
            .map(|d| {
                json!({
                    "index": d.index,
                    "point": point_json(&d.point),
                    "verdicts": d.verdicts.iter().map(|(n, v)| json!({ "name": n, "verdict": v })).collect::<Vec<_>>(),
                    "margins": d.margins.iter().map(|(n, m)| json!({ "name": n, "margin": finite_or_null(*m) })).collect::<Vec<_>>(),
                    "deviation": finite_or_null(d.deviation),
                    "note": d.note,
                })
            })
            .collect::<Vec<_>>(),
        "elapsed_secs": r.elapsed_secs,
    })
}

fn finite_or_null(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::Null
    }
}

/// Serializes with every float printed as `{:.16e}` (17 significant
/// digits), so output round-trips exactly and is locale independent.
fn emit(cli: &Cli, value: &Value) -> Result<(), String> {
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    let result = if cli.pretty {
        let mut ser =
            serde_json::Serializer::with_formatter(&mut lock, SciPretty(Default::default()));
        serde::Serialize::serialize(value, &mut ser)
    } else {
        let mut ser = serde_json::Serializer::with_formatter(&mut lock, SciCompact);
        serde::Serialize::serialize(value, &mut ser)
    };
    result.map_err(|e| format!("cannot write output: {e}"))?;
    writeln!(lock).map_err(|e| format!("cannot write output: {e}"))?;
    Ok(())
}

struct SciCompact;

impl serde_json::ser::Formatter for SciCompact {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

struct SciPretty<'a>(serde_json::ser::PrettyFormatter<'a>);

impl serde_json::ser::Formatter for SciPretty<'_> {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn begin_array<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.0.begin_array(writer)
    }

    fn end_array<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.0.end_array(writer)
    }

    fn begin_array_value<W>(&mut self, writer: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.0.begin_array_value(writer, first)
    }

    fn end_array_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.0.end_array_value(writer)
    }

    fn begin_object<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.0.begin_object(writer)
    }

    fn end_object<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.0.end_object(writer)
    }

    fn begin_object_key<W>(&mut self, writer: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.0.begin_object_key(writer, first)
    }

    fn begin_object_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.0.begin_object_value(writer)
    }

    fn end_object_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.0.end_object_value(writer)
    }
}
