//! The `analyze`, `verify` and `nf` commands. Each builds a JSON report;
//! the binary turns the outcome into an exit code.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_complex::Complex64;
use serde_json::{json, Value};
use thiserror::Error;

use crate::curve::{
    closed_point_spectrum, count_range, parse_curve, CountCache, CurveError, CurveModel, Spectrum,
};
use crate::explicit::{explicit_formula_sides, lefschetz_check, prime_counting_report, ExplicitError};
use crate::graded::{graded_fourier_pp, local_fourier, pushforward_standard, GradedError, GradedFunction};
use crate::number_field::{self as nf, NumberFieldError};
use crate::par::Execution;
use crate::poly::{fmt_rat, rat_pow, Rational};
use crate::sample::Sampler;
use crate::scalar::HalfPowerScalar as S;
use crate::torus::{
    inverse_mellin, involution_pullback, mellin, poisson_residue_check, residue_at, residue_report,
    standard_global, torus_fourier_local, TorusPoint, TorusRational,
};
use crate::zeta::{self, ZetaData, ZetaError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable that takes precedence over `--cache`.
pub const CACHE_ENV: &str = "ZETALAB_CACHE";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error(transparent)]
    NumberField(#[from] NumberFieldError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Explicit(#[from] ExplicitError),
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "UsageError",
            CliError::Parse(_) => "ParseError",
            CliError::Curve(e) => match e {
                CurveError::Parse(_) => "ParseError",
                CurveError::InvalidCurve(_) => "InvalidCurve",
                CurveError::Field(_) => "FieldError",
                CurveError::InconsistentCounts(_) => "CountsInconsistent",
                CurveError::Io(_) => "IoError",
            },
            CliError::Zeta(ZetaError::CountsInconsistent { .. }) => "CountsInconsistent",
            CliError::Zeta(_) => "ZetaError",
            CliError::NumberField(e) => match e {
                NumberFieldError::InvalidDiscriminant(_) => "InvalidDiscriminant",
                NumberFieldError::InvalidArgument(_) => "InvalidArgument",
                NumberFieldError::PoleError(_) => "PoleError",
            },
            CliError::Graded(_) => "SpaceMismatch",
            CliError::Explicit(_) => "NeedMoreCounts",
            CliError::Write { .. } => "IoError",
        }
    }

    /// Inconsistent counts are a failed identity; everything else is a usage,
    /// input or environment problem.
    pub fn exit_code(&self) -> i32 {
        match self.kind() {
            "CountsInconsistent" => EXIT_CHECK_FAILED,
            _ => EXIT_USAGE,
        }
    }

    pub fn to_json(&self, command: &str) -> Value {
        json!({
            "tool": tool(),
            "command": command,
            "ok": false,
            "error": {"kind": self.kind(), "message": self.to_string()},
        })
    }
}

fn tool() -> Value {
    json!({"name": env!("CARGO_PKG_NAME"), "version": env!("CARGO_PKG_VERSION")})
}

/// `ZETALAB_CACHE` wins over the flag; no cache when neither is set.
pub fn resolve_cache(flag: Option<PathBuf>) -> Option<PathBuf> {
    match std::env::var_os(CACHE_ENV) {
        Some(dir) if !dir.is_empty() => Some(PathBuf::from(dir)),
        _ => flag,
    }
}

pub fn exit_code_for(report: &Value) -> i32 {
    if report["ok"].as_bool() == Some(true) {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports are plain JSON");
    s.push('\n');
    s
}

pub fn write_report(report: &Value, out: Option<&Path>) -> Result<(), CliError> {
    let text = render(report);
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Write {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

// ---- JSON encodings ----

pub fn rat_json(r: &Rational) -> Value {
    Value::String(fmt_rat(r))
}

pub fn scalar_json(s: &S) -> Value {
    json!({"a": fmt_rat(s.a()), "b": fmt_rat(s.b()), "q": s.q()})
}

fn ints_json<T: ToString>(v: &[T]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn rats_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rat_json).collect())
}

pub fn graded_json(f: &GradedFunction) -> Value {
    let support: Vec<Value> = f
        .support()
        .iter()
        .map(|(n, v)| json!([n, scalar_json(v)]))
        .collect();
    let (a, b) = f.tail();
    json!({
        "space": f.space().as_str(),
        "support": support,
        "threshold": f.threshold(),
        "tail": {"a": scalar_json(a), "b": scalar_json(b), "q": f.q()},
    })
}

pub fn torus_json(r: &TorusRational) -> Value {
    let num: Vec<Value> = r
        .numerator()
        .terms()
        .map(|(k, c)| json!([k, scalar_json(c)]))
        .collect();
    let (e1, e2) = r.poles();
    json!({"numerator": num, "pole_at_one": e1, "pole_at_q_inv": e2, "q": r.q()})
}

fn complex_json(c: Complex64) -> Value {
    json!({"re": c.re, "im": c.im})
}

// ---- checks ----

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub lhs: Value,
    pub rhs: Value,
    pub tolerance: Value,
    pub detail: Option<Value>,
}

impl Check {
    pub fn exact(name: impl Into<String>, ok: bool, lhs: Value, rhs: Value) -> Self {
        Check {
            name: name.into(),
            ok,
            lhs,
            rhs,
            tolerance: Value::String("exact".into()),
            detail: None,
        }
    }

    /// Passes when `err <= tol`.
    pub fn within(name: impl Into<String>, err: f64, tol: f64, lhs: Value, rhs: Value) -> Self {
        Check {
            name: name.into(),
            ok: err <= tol,
            lhs,
            rhs,
            tolerance: json!(tol),
            detail: Some(json!({"error": err})),
        }
    }

    /// Merges `detail`'s fields into the existing detail object.
    pub fn with_detail(mut self, detail: Value) -> Self {
        match (&mut self.detail, detail) {
            (Some(Value::Object(old)), Value::Object(new)) => old.extend(new),
            (slot, detail) => *slot = Some(detail),
        }
        self
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "name": self.name,
            "ok": self.ok,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "tolerance": self.tolerance,
        });
        if let Some(d) = &self.detail {
            v["detail"] = d.clone();
        }
        v
    }
}

impl Check {
    pub fn is_exact(&self) -> bool {
        self.tolerance == "exact"
    }
}

/// Serialized checks, a summary, and whether every check passed.
fn checks_section(checks: &[Check]) -> (Value, Value, bool) {
    let passed = checks.iter().filter(|c| c.ok).count();
    let numeric_failed = checks.iter().filter(|c| !c.ok && !c.is_exact()).count();
    (
        Value::Array(checks.iter().map(Check::to_json).collect()),
        json!({
            "total": checks.len(),
            "passed": passed,
            "failed": checks.len() - passed,
            "numeric_failed": numeric_failed,
        }),
        passed == checks.len(),
    )
}

// ---- curve plumbing ----

pub fn load_curve(path: &Path) -> Result<CurveModel, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_curve(&text)?)
}

struct Counts {
    values: Vec<u64>,
    cache_hits: u32,
    seconds: f64,
}

fn gather_counts(
    curve: &CurveModel,
    max: u32,
    cache: Option<&Path>,
    exec: Execution,
) -> Result<Counts, CliError> {
    let start = Instant::now();
    let (values, cache_hits) = match cache {
        Some(dir) => {
            let (table, hits) = CountCache::new(dir).fill(curve, max, exec)?;
            (table.prefix(max).expect("filled"), hits)
        }
        None => (count_range(curve, max, exec)?, 0),
    };
    Ok(Counts {
        values,
        cache_hits,
        seconds: start.elapsed().as_secs_f64(),
    })
}

fn curve_json(curve: &CurveModel) -> Value {
    json!({
        "id": curve.id(),
        "name": curve.name(),
        "model": curve.kind().as_str(),
        "p": curve.base().p(),
        "k": curve.base().k(),
        "q": curve.q(),
        "genus": curve.genus(),
        "canonical": curve.canonical(),
    })
}

fn zeta_json(z: &ZetaData) -> Value {
    let (h, res0, res1) = zeta::class_number_and_residues(z);
    json!({
        "P": ints_json(z.numerator()),
        "h": h.to_string(),
        "residues": {
            "s0": {"coeff": rat_json(&res0.coeff), "unit": "1/ln q", "value": res0.to_f64(z.q())},
            "s1": {"coeff": rat_json(&res1.coeff), "unit": "1/ln q", "value": res1.to_f64(z.q())},
        },
    })
}

fn fit(curve: &CurveModel, counts: &[u64]) -> Result<ZetaData, CliError> {
    let g = curve.genus();
    Ok(zeta::fit_numerator(curve.q(), g, &counts[..2 * g as usize])?)
}

// ---- analyze ----

#[derive(Debug, Clone)]
pub struct AnalyzeArgs {
    pub curve: PathBuf,
    pub max_degree: u32,
    pub cache: Option<PathBuf>,
    pub exec: Execution,
}

pub fn analyze(args: &AnalyzeArgs) -> Result<Value, CliError> {
    let start = Instant::now();
    let curve = load_curve(&args.curve)?;
    let g = curve.genus();
    let m = args.max_degree;
    if m < 2 * g + 3 {
        return Err(CliError::Usage(format!(
            "--max-degree must be at least 2g + 3 = {} for genus {g}",
            2 * g + 3
        )));
    }
    let counts = gather_counts(&curve, m, args.cache.as_deref(), args.exec)?;
    let spectrum = closed_point_spectrum(&counts.values)?;
    let z = fit(&curve, &counts.values)?;
    let checks = zeta_checks(&z, &counts.values, &spectrum);
    // the exit status follows the exact identities; numeric checks are
    // reported alongside and counted in the summary
    let (checks_v, summary, _) = checks_section(&checks);
    let ok = checks.iter().filter(|c| c.is_exact()).all(|c| c.ok);
    Ok(json!({
        "tool": tool(),
        "command": "analyze",
        "curve": curve_json(&curve),
        "counts": {
            "max_degree": m,
            "N": counts.values,
            "closed_points": spectrum.closed_points,
            "effective_divisors": ints_json(&spectrum.effective_divisors),
        },
        "zeta": zeta_json(&z),
        "checks": checks_v,
        "summary": summary,
        "ok": ok,
        "timings": {
            "count_seconds": counts.seconds,
            "total_seconds": start.elapsed().as_secs_f64(),
            "cache_hits": counts.cache_hits,
        },
    }))
}

/// Every identity of the zeta core on one fitted curve.
pub fn zeta_checks(z: &ZetaData, counts: &[u64], spectrum: &Spectrum) -> Vec<Check> {
    let g = z.genus() as usize;
    let q = z.q_rat();
    let m_max = counts.len();
    let mut checks = Vec::new();

    // functional equation
    let p = z.numerator();
    let mirrored: Vec<Rational> = (0..=2 * g).map(|i| Rational::from(p[2 * g - i].clone())).collect();
    let expected: Vec<Rational> = (0..=2 * g)
        .map(|i| rat_pow(&q, g as i64 - i as i64) * Rational::from(p[i].clone()))
        .collect();
    let fe = zeta::functional_equation_check(z);
    checks.push(Check::exact(
        "functional_equation_symmetry",
        fe.symmetric && mirrored == expected,
        rats_json(&mirrored),
        rats_json(&expected),
    ));
    checks.push(
        Check::within(
            "riemann_hypothesis_root_moduli",
            fe.max_deviation,
            1e-9,
            json!(fe.root_moduli),
            json!((z.q() as f64).sqrt()),
        ),
    );

    // residues two ways
    let (h, res0, res1) = zeta::class_number_and_residues(z);
    let (l0, l1) = zeta::residues_by_laurent(z);
    checks.push(Check::exact("residue_s0", res0 == l0, rat_json(&res0.coeff), rat_json(&l0.coeff)));
    checks.push(Check::exact("residue_s1", res1 == l1, rat_json(&res1.coeff), rat_json(&l1.coeff)));
    if g == 1 {
        checks.push(Check::exact(
            "class_number_equals_rational_points",
            h == counts[0].into(),
            json!(h.to_string()),
            json!(counts[0].to_string()),
        ));
    }

    // effective divisors two ways, and the Riemann–Roch tail
    let series = zeta::series_coefficients(z, m_max);
    checks.push(Check::exact(
        "effective_divisors_series_vs_euler_product",
        series == spectrum.effective_divisors,
        ints_json(&series),
        ints_json(&spectrum.effective_divisors),
    ));
    let tail_from = (2 * g).saturating_sub(1);
    let tail_series: Vec<Rational> = (tail_from..=m_max).map(|n| Rational::from(series[n].clone())).collect();
    let tail_closed: Vec<Rational> = (tail_from..=m_max).map(|n| zeta::riemann_roch_tail(z, n)).collect();
    checks.push(
        Check::exact(
            "riemann_roch_tail",
            tail_series == tail_closed,
            rats_json(&tail_series),
            rats_json(&tail_closed),
        )
        .with_detail(json!({"from_degree": tail_from})),
    );

    // counts beyond the fitting range
    let extra: Vec<(u32, u64)> = (2 * g + 1..=m_max).map(|m| (m as u32, counts[m - 1])).collect();
    let lef = lefschetz_check(z, &extra);
    checks.push(
        Check::exact(
            "predicted_counts",
            lef.ok,
            ints_json(&lef.entries.iter().map(|e| e.predicted.clone()).collect::<Vec<_>>()),
            ints_json(&lef.entries.iter().map(|e| e.observed).collect::<Vec<_>>()),
        )
        .with_detail(json!({"degrees": extra.iter().map(|e| e.0).collect::<Vec<_>>()})),
    );
    let weil: Vec<bool> = counts
        .iter()
        .enumerate()
        .map(|(i, &n)| zeta::within_weil_bound(z.q(), z.genus(), i as u32 + 1, n))
        .collect();
    checks.push(Check::exact(
        "weil_bound",
        weil.iter().all(|&b| b),
        json!(counts),
        json!(format!("|N_m - q^m - 1| <= {} q^(m/2)", 2 * g)),
    ));

    // principal parts and the Tate–Iwasawa decomposition
    let pp = zeta::principal_parts_check(z);
    checks.push(
        Check::exact(
            "principal_parts",
            pp.ok,
            rats_json(&pp.entire_part.0),
            json!({"max_degree": (2 * g as i64 - 2).max(0)}),
        )
        .with_detail(json!({"remainder_zero": pp.remainder_zero})),
    );
    checks.extend(tate_iwasawa_checks(z));

    // prime counting at the largest degree
    let pnt = prime_counting_report(spectrum, z.q(), z.genus(), m_max);
    checks.push(
        Check::within(
            "prime_counting_degree_ratio",
            (pnt.degree_ratio - 1.0).abs(),
            pnt.bound,
            json!(pnt.degree_ratio),
            json!(1.0),
        )
        .with_detail(json!({
            "m": pnt.m,
            "pi": pnt.pi,
            "raw_ratio": pnt.raw_ratio,
            "n_over_ln_n": pnt.n_over_ln_n,
        })),
    );
    checks
}

fn tate_iwasawa_checks(z: &ZetaData) -> Vec<Check> {
    let g = 2 * z.genus() as usize;
    [g, g + 5, g + 10]
        .into_iter()
        .map(|n| {
            let rep = zeta::tate_iwasawa_decomposition(z, n);
            let total: Vec<Rational> = (0..=n)
                .map(|i| rep.terms.iter().map(|t| t[i].clone()).sum())
                .collect();
            Check::exact(format!("tate_iwasawa N={n}"), rep.ok, rats_json(&rep.lhs), rats_json(&total))
                .with_detail(json!({"terms": rep.terms.iter().map(|t| rats_json(t)).collect::<Vec<_>>()}))
        })
        .collect()
}

// ---- verify ----

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Poisson,
    Explicit,
    Diagram,
    TateIwasawa,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "poisson" => Ok(Suite::Poisson),
            "explicit" => Ok(Suite::Explicit),
            "diagram" => Ok(Suite::Diagram),
            "tate-iwasawa" => Ok(Suite::TateIwasawa),
            "all" => Ok(Suite::All),
            other => Err(CliError::Usage(format!(
                "unknown suite {other:?}; expected poisson, explicit, diagram, tate-iwasawa or all"
            ))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Poisson => "poisson",
            Suite::Explicit => "explicit",
            Suite::Diagram => "diagram",
            Suite::TateIwasawa => "tate-iwasawa",
            Suite::All => "all",
        }
    }

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

#[derive(Debug, Clone)]
pub struct VerifyArgs {
    pub curve: PathBuf,
    pub suite: String,
    pub seed: u64,
    pub cache: Option<PathBuf>,
    pub exec: Execution,
}

/// Degree range of the random explicit-formula test functions.
pub const EXPLICIT_REACH: i64 = 6;

pub fn verify(args: &VerifyArgs) -> Result<Value, CliError> {
    let start = Instant::now();
    let suite = Suite::parse(&args.suite)?;
    let curve = load_curve(&args.curve)?;
    let max = (2 * curve.genus()).max(EXPLICIT_REACH as u32);
    let counts = gather_counts(&curve, max, args.cache.as_deref(), args.exec)?;
    let spectrum = closed_point_spectrum(&counts.values)?;
    let z = fit(&curve, &counts.values)?;
    let mut sampler = Sampler::new(args.seed);
    let mut checks = Vec::new();
    if suite.includes(Suite::Poisson) {
        checks.extend(poisson_suite(&z));
    }
    if suite.includes(Suite::Explicit) {
        checks.extend(explicit_suite(&z, &spectrum, &mut sampler)?);
    }
    if suite.includes(Suite::Diagram) {
        checks.extend(diagram_suite(&z, &mut sampler)?);
    }
    if suite.includes(Suite::TateIwasawa) {
        checks.extend(tate_iwasawa_checks(&z));
        let pp = zeta::principal_parts_check(&z);
        checks.push(Check::exact(
            "principal_parts",
            pp.ok,
            rats_json(&pp.entire_part.0),
            json!({"max_degree": (2 * z.genus() as i64 - 2).max(0)}),
        ));
    }
    let (checks_v, summary, ok) = checks_section(&checks);
    Ok(json!({
        "tool": tool(),
        "command": "verify",
        "suite": suite.as_str(),
        "seed": args.seed,
        "curve": curve_json(&curve),
        "counts": {"max_degree": max, "N": counts.values},
        "zeta": zeta_json(&z),
        "checks": checks_v,
        "summary": summary,
        "ok": ok,
        "timings": {
            "count_seconds": counts.seconds,
            "total_seconds": start.elapsed().as_secs_f64(),
            "cache_hits": counts.cache_hits,
        },
    }))
}

/// The `d ∈ [-5, 5]`, `shift ∈ [-3, 3]` grid.
pub fn poisson_suite(z: &ZetaData) -> Vec<Check> {
    let mut out = Vec::new();
    for d in -5..=5 {
        for shift in -3..=3 {
            let rep = poisson_residue_check(z, d, shift);
            out.push(
                Check::exact(
                    format!("poisson d={d} shift={shift}"),
                    rep.ok,
                    json!([scalar_json(&rep.lhs.0), scalar_json(&rep.lhs.1)]),
                    json!([scalar_json(&rep.rhs.0), scalar_json(&rep.rhs.1)]),
                )
                .with_detail(json!({
                    "rhs_weight": rat_json(&rat_pow(&z.q_rat(), -shift)),
                    "unweighted_equal": rep.literal_ok,
                })),
            );
        }
    }
    out
}

pub fn explicit_suite(
    z: &ZetaData,
    spectrum: &Spectrum,
    sampler: &mut Sampler,
) -> Result<Vec<Check>, CliError> {
    (0..20)
        .map(|i| {
            let f = sampler.finite(EXPLICIT_REACH);
            let rep = explicit_formula_sides(&f, z, spectrum)?;
            Ok(Check::exact(
                format!("explicit_formula #{i}"),
                rep.ok,
                scalar_json(&rep.lhs),
                scalar_json(&rep.rhs),
            )
            .with_detail(json!({"f": graded_json(&f)})))
        })
        .collect()
}

/// Local Fourier parameters exercised by the involution checks.
pub const LOCAL_GRID_Q: [u64; 5] = [2, 3, 4, 5, 9];
pub const LOCAL_GRID_K: [i64; 6] = [-2, -1, 0, 1, 2, 3];

pub fn diagram_suite(z: &ZetaData, sampler: &mut Sampler) -> Result<Vec<Check>, CliError> {
    let q = z.q();
    let g = z.genus() as i64;
    let qr = z.q_rat();
    let mut out = Vec::new();

    for d in -5..=5 {
        // i*(z^d Z) = q^{1-g-d} z^{2-2g-d} Z
        let weight = S::rational(rat_pow(&qr, 1 - g - d));
        let lhs = involution_pullback(&standard_global(z, d));
        let rhs = standard_global(z, 2 - 2 * g - d).scale(&weight);
        out.push(Check::exact(format!("involution_standard d={d}"), lhs == rhs, torus_json(&lhs), torus_json(&rhs)));
        let lhs = graded_fourier_pp(&pushforward_standard(z, d), q)?;
        let rhs = pushforward_standard(z, 2 - 2 * g - d).scale(&weight);
        out.push(Check::exact(format!("graded_fourier_standard d={d}"), lhs == rhs, graded_json(&lhs), graded_json(&rhs)));
    }

    for i in 0..20 {
        for (label, f) in [("D", sampler.finite(5)), ("D_plus", sampler.d_plus())] {
            let qx = LOCAL_GRID_Q[sampler.int(0, 4) as usize];
            let k = sampler.int(-2, 3);
            let lhs = mellin(&local_fourier(&f, qx, k)?, qx);
            let rhs = torus_fourier_local(&mellin(&f, qx), qx, k)?;
            out.push(
                Check::exact(format!("mellin_local_fourier {label} #{i}"), lhs == rhs, torus_json(&lhs), torus_json(&rhs))
                    .with_detail(json!({"f": graded_json(&f), "q_x": qx, "k_x": k})),
            );
        }
        for (label, f) in [("D", sampler.finite(5)), ("D_plus", sampler.d_plus()), ("D_plus_plus", sampler.d_plus_plus(q))] {
            let lhs = mellin(&graded_fourier_pp(&f, q)?, q);
            let rhs = involution_pullback(&mellin(&f, q));
            out.push(
                Check::exact(format!("mellin_graded_fourier {label} #{i}"), lhs == rhs, torus_json(&lhs), torus_json(&rhs))
                    .with_detail(json!({"f": graded_json(&f)})),
            );
        }
        let f = sampler.finite(5);
        let lhs = graded_fourier_pp(&f, q)?;
        let pointwise = GradedFunction::finite(
            f.support().iter().map(|(&n, v)| (-n, v.scale(&rat_pow(&qr, -n)))),
        );
        out.push(Check::exact(
            format!("graded_fourier_pointwise #{i}"),
            lhs == pointwise,
            graded_json(&lhs),
            graded_json(&pointwise),
        ));
        let f = sampler.d_plus_plus(q);
        let ff = graded_fourier_pp(&graded_fourier_pp(&f, q)?, q)?;
        out.push(Check::exact(format!("graded_fourier_involution #{i}"), ff == f, graded_json(&ff), graded_json(&f)));
    }

    for i in 0..50 {
        for (label, f) in [("D", sampler.finite(5)), ("D_plus", sampler.d_plus()), ("D_plus_plus", sampler.d_plus_plus(q))] {
            let back = inverse_mellin(&mellin(&f, q));
            out.push(Check::exact(format!("mellin_round_trip {label} #{i}"), back == f, graded_json(&back), graded_json(&f)));
        }
        let f = sampler.d_plus();
        for qx in LOCAL_GRID_Q {
            for k in LOCAL_GRID_K {
                let ff = local_fourier(&local_fourier(&f, qx, k)?, qx, k)?;
                out.push(Check::exact(
                    format!("local_fourier_involution #{i} q_x={qx} k_x={k}"),
                    ff == f,
                    graded_json(&ff),
                    graded_json(&f),
                ));
            }
        }
    }

    for i in 0..100 {
        let r = sampler.torus(q);
        let rep = residue_report(&r);
        let values: Vec<Value> = rep.residues.values().map(scalar_json).collect();
        out.push(
            Check::exact(format!("residue_sum #{i}"), rep.sum.is_zero(), scalar_json(&rep.sum), scalar_json(&S::zero()))
                .with_detail(json!({"R": torus_json(&r), "residues_0_1_qinv_inf": values})),
        );
    }
    for i in 0..20 {
        // i*(dz/z) = -dz/z, so res_{i(P)}(i*(R dz/z)) = -res_{i(P)}((i*R) dz/z)
        let r = sampler.torus(q);
        let pulled = involution_pullback(&r);
        let lhs: Vec<S> = TorusPoint::ALL.iter().map(|&p| residue_at(&r, p)).collect();
        let rhs: Vec<S> = TorusPoint::ALL.iter().map(|&p| -residue_at(&pulled, p.image())).collect();
        out.push(Check::exact(
            format!("residue_involution #{i}"),
            lhs == rhs,
            Value::Array(lhs.iter().map(scalar_json).collect()),
            Value::Array(rhs.iter().map(scalar_json).collect()),
        ));
    }
    Ok(out)
}

// ---- number fields ----

#[derive(Debug, Clone, Default)]
pub struct NfArgs {
    pub disc: Option<i64>,
    pub riemann: Option<String>,
    pub battery: bool,
    pub trunc: Option<usize>,
}

/// Parses `2`, `0.5+7i`, `-1.5-0.5i` or `3i`.
pub fn parse_complex(text: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::Usage(format!("cannot parse complex number {text:?}"));
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(body) = t.strip_suffix('i') {
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(i, c)| (c == '+' || c == '-') && !body[..i].ends_with(['e', 'E']))
            .map(|(i, _)| i)
            .last();
        let (re, im) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            other => other,
        };
        let re: f64 = re.parse().map_err(|_| bad())?;
        let im: f64 = im.parse().map_err(|_| bad())?;
        Ok(Complex64::new(re, im))
    } else {
        Ok(Complex64::new(t.parse().map_err(|_| bad())?, 0.0))
    }
}

pub const NF_TOLERANCE: f64 = 1e-10;
pub const XI_TOLERANCE: f64 = 1e-9;
pub const GAUSSIAN_TOLERANCE: f64 = 1e-8;
/// Terms of `L(1, χ)` in the analytic class number cross-check.
pub const ANALYTIC_TERMS: u64 = 1_000_000;

pub const BATTERY_DISCRIMINANTS: [i64; 8] = [3, 4, 7, 8, 11, 15, 20, 23];

pub fn xi_sample() -> Vec<Complex64> {
    [
        (2.0, 0.0),
        (3.0, 0.0),
        (0.5, 7.0),
        (0.25, 0.0),
        (0.5, 14.134725),
        (1.5, 2.0),
        (-1.5, 0.5),
        (0.8, -3.0),
        (4.0, 1.0),
        (0.3, 20.0),
    ]
    .iter()
    .map(|&(re, im)| Complex64::new(re, im))
    .collect()
}

pub fn gaussian_sample() -> Vec<(f64, u32, Complex64)> {
    vec![
        (1.0, 0, Complex64::new(1.0, 0.0)),
        (1.0, 1, Complex64::new(2.0, 0.0)),
        (2.5, 0, Complex64::new(0.7, 3.0)),
        (0.5, 2, Complex64::new(-1.0, 2.0)),
    ]
}

pub fn discriminant_checks(d: i64, trunc: Option<usize>) -> Result<(Value, Vec<Check>), CliError> {
    let (h, forms) = nf::class_number_bqf(d)?;
    let w = nf::unit_count(d);
    let mut checks = Vec::new();
    let analytic = nf::analytic_class_number(d, ANALYTIC_TERMS)?;
    checks.push(
        Check::within(
            "class_number_analytic",
            (analytic - h as f64).abs() / h as f64,
            1e-2,
            json!(h),
            json!(analytic),
        )
        .with_detail(json!({"terms": ANALYTIC_TERMS, "relative": true})),
    );
    let by_character = nf::ideal_counts(d, 30)?;
    let by_forms = nf::ideal_counts_by_forms(d, 30)?;
    checks.push(Check::exact(
        "ideal_counts_character_vs_forms",
        by_character == by_forms,
        json!(by_character),
        json!(by_forms),
    ));
    for y in [1.0, 0.5, 2.0, 1.0 / (d as f64).sqrt()] {
        let rep = nf::theta_checks(d, y, trunc)?;
        checks.push(
            Check::within(format!("theta y={y}"), rep.rel_err, NF_TOLERANCE, json!(rep.theta), json!(rep.transformed))
                .with_detail(json!({"truncation": rep.truncation, "tail_bound": rep.tail_bound, "relative": true})),
        );
    }
    let rep = nf::residue_identity_check(d, trunc)?;
    checks.push(
        Check::within("residue_identity", rep.abs_err, NF_TOLERANCE, json!(rep.lhs), json!(rep.rhs))
            .with_detail(json!({"truncation": rep.truncation, "tail_bound": rep.tail_bound})),
    );
    let field = json!({
        "D": d,
        "h": h,
        "w": w,
        "forms": forms.iter().map(|&(a, b, c)| json!([a, b, c])).collect::<Vec<_>>(),
        "ideal_counts": by_character,
    });
    Ok((field, checks))
}

fn xi_check(s: Complex64, trunc: Option<usize>) -> Result<(Value, Check), CliError> {
    let v = nf::riemann_xi(s, trunc)?;
    let w = nf::riemann_xi(1.0 - s, trunc)?;
    let n = trunc.unwrap_or(nf::XI_DEFAULT_TRUNCATION);
    let value = json!({"s": complex_json(s), "xi": complex_json(v), "tail_bound": nf::xi_tail_bound(s, n)});
    let check = Check::within(
        format!("xi_functional_equation s={s}"),
        (v - w).norm(),
        XI_TOLERANCE,
        complex_json(v),
        complex_json(w),
    );
    Ok((value, check))
}

fn gaussian_check_list(a: f64, n: u32, s: Complex64) -> Result<Vec<Check>, CliError> {
    let rep = nf::gaussian_checks(a, n, s)?;
    let tag = format!("a={a} n={n} s={s}");
    let mut out = vec![
        Check::within(format!("gaussian_fourier {tag}"), rep.fourier_sup_err, GAUSSIAN_TOLERANCE, json!(rep.fourier_sup_err), json!(0.0))
            .with_detail(json!({"grid": "[-5, 5] step 0.05", "norm": "sup"})),
        Check::within(
            format!("gaussian_mellin {tag}"),
            rep.mellin_rel_err,
            GAUSSIAN_TOLERANCE,
            complex_json(rep.mellin_numeric),
            complex_json(rep.mellin_expected),
        )
        .with_detail(json!({"closed_form": "(1/2) a^(-n-s/2) Gamma(s/2+n)", "relative": true})),
    ];
    for (t, lhs, rhs, err) in rep.poisson {
        out.push(Check::within(format!("gaussian_poisson t={t}"), err, NF_TOLERANCE, json!(lhs), json!(rhs)));
    }
    Ok(out)
}

pub fn number_field(args: &NfArgs) -> Result<Value, CliError> {
    let start = Instant::now();
    let modes = usize::from(args.disc.is_some()) + usize::from(args.riemann.is_some()) + usize::from(args.battery);
    if modes != 1 {
        return Err(CliError::Usage("give exactly one of --disc, --riemann, --battery".into()));
    }
    let mut report = json!({"tool": tool(), "command": "nf"});
    let mut checks = Vec::new();
    if let Some(d) = args.disc {
        let (field, c) = discriminant_checks(d, args.trunc)?;
        report["field"] = field;
        checks.extend(c);
    } else if let Some(s) = &args.riemann {
        let s = parse_complex(s)?;
        let (value, c) = xi_check(s, args.trunc)?;
        report["xi"] = value;
        checks.push(c);
    } else {
        let mut fields = Vec::new();
        for d in BATTERY_DISCRIMINANTS {
            let (field, c) = discriminant_checks(d, args.trunc)?;
            fields.push(field);
            checks.extend(c);
        }
        report["fields"] = Value::Array(fields);
        let xi2 = nf::riemann_xi(Complex64::new(2.0, 0.0), args.trunc)?;
        checks.push(Check::within(
            "xi(2) = pi/6",
            (xi2 - PI / 6.0).norm(),
            XI_TOLERANCE,
            complex_json(xi2),
            json!(PI / 6.0),
        ));
        let mut values = Vec::new();
        for s in xi_sample() {
            let (v, c) = xi_check(s, args.trunc)?;
            values.push(v);
            checks.push(c);
        }
        report["xi"] = Value::Array(values);
        for (a, n, s) in gaussian_sample() {
            checks.extend(gaussian_check_list(a, n, s)?);
        }
    }
    let (checks_v, summary, ok) = checks_section(&checks);
    report["checks"] = checks_v;
    report["summary"] = summary;
    report["ok"] = json!(ok);
    report["timings"] = json!({"total_seconds": start.elapsed().as_secs_f64()});
    Ok(report)
}
