//! Renderers for the four commands.
//!
//! Output is deterministic: identical queries produce byte-identical bytes.
//! `latex` differs from `text` only where a polynomial is printed (`formula`
//! and the surfaceless `table`); value reports have no formula content and
//! render identically under both.

use std::fmt::Write as _;

use serde_json::{json, Value};

use chern_count_core::surface_eval;
use chern_count_core::{
    selftest, Ampleness, AmplenessReport, CountTarget, EngineError, FormalPolynomial, FormatStyle,
    SurfaceKind, SurfaceSpec, TwoPointEngine,
};

use crate::CliError;

/// Output format of the `formula`, `eval` and `table` commands.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub(crate) enum Format {
    /// Plain text.
    #[default]
    Text,
    /// LaTeX markup for polynomials (elsewhere identical to text).
    Latex,
    /// One JSON object, on one line.
    Json,
}

/// The flattened polynomial behind a target's formula (one-point formulas
/// are already flat).
fn polynomial(engine: &mut TwoPointEngine, target: CountTarget) -> Result<FormalPolynomial, CliError> {
    Ok(match target {
        CountTarget::Single(s) => {
            engine.one_point_mut().n_singularity(s).map_err(CliError::engine)?.to_polynomial()
        }
        CountTarget::NodePair(s) => engine.n_pair(s).map_err(CliError::engine)?.flatten(),
    })
}

/// Terms in display order, coefficients as exact decimal strings.
fn terms_json(poly: &FormalPolynomial) -> Value {
    Value::Array(
        poly.terms()
            .map(|((c1, x1, x2), coeff)| {
                json!({"c1": c1, "x1": x1, "x2": x2, "coeff": coeff.to_string()})
            })
            .collect(),
    )
}

fn json_line(root: &Value) -> String {
    let mut line = serde_json::to_string(root).expect("JSON trees built here always serialize");
    line.push('\n');
    line
}

pub(crate) fn formula(
    engine: &mut TwoPointEngine,
    target: CountTarget,
    format: Format,
) -> Result<String, CliError> {
    let poly = polynomial(engine, target)?;
    Ok(match format {
        Format::Text => format!("{}\n", poly.format(FormatStyle::Text)),
        Format::Latex => format!("{}\n", poly.format(FormatStyle::Latex)),
        Format::Json => json_line(&json!({"target": target.to_string(), "terms": terms_json(&poly)})),
    })
}

fn surface_label(surface: &SurfaceSpec) -> String {
    match *surface.kind() {
        SurfaceKind::ProjectivePlane { degree } => format!("{} (degree {degree})", surface.name()),
        SurfaceKind::P1CrossP1 { a, b } => format!("{} (bidegree {a},{b})", surface.name()),
        SurfaceKind::Custom => format!("{} (custom)", surface.name()),
    }
}

fn geometry_line(surface: &SurfaceSpec) -> String {
    let g = surface.geometry();
    format!("geometry: c1^2 = {}, c1 x1 = {}, x1^2 = {}, x2 = {}", g.c1_sq, g.c1_x1, g.x1_sq, g.x2)
}

fn surface_json(surface: &SurfaceSpec) -> Value {
    let g = surface.geometry();
    let mut root = json!({
        "name": surface.name(),
        "geometry": {
            "c1_sq": g.c1_sq.to_string(),
            "c1_x1": g.c1_x1.to_string(),
            "x1_sq": g.x1_sq.to_string(),
            "x2": g.x2.to_string(),
        },
    });
    match *surface.kind() {
        SurfaceKind::ProjectivePlane { degree } => root["degree"] = json!(degree),
        SurfaceKind::P1CrossP1 { a, b } => {
            root["a"] = json!(a);
            root["b"] = json!(b);
        }
        SurfaceKind::Custom => {}
    }
    root
}

fn ampleness_phrase(report: &AmplenessReport) -> String {
    let status = match report.status {
        Ampleness::Satisfied => "satisfied",
        Ampleness::NotSatisfied => "not satisfied",
        Ampleness::Unknown => "unknown for custom geometry",
    };
    format!("requires order {}, {status}", report.required)
}

fn ampleness_json(report: &AmplenessReport) -> Value {
    json!({"required": report.required, "satisfied": report.status.is_satisfied()})
}

fn points_reason(e: &EngineError) -> &'static str {
    match e {
        EngineError::NonIntegralEulerCharacteristic => "non-integral Euler characteristic",
        EngineError::NonIntegralSectionCount => "non-integral section count",
        EngineError::EmptyLinearSystem => "empty linear system",
        _ => "unavailable",
    }
}

pub(crate) fn eval(
    engine: &mut TwoPointEngine,
    target: CountTarget,
    surface: &SurfaceSpec,
    format: Format,
) -> Result<String, CliError> {
    let report = surface_eval::count(engine, target, surface).map_err(CliError::engine)?;
    // Informational only: a geometry on which Riemann-Roch misbehaves still
    // gets its count, with the point report marked unknown.
    let points = surface_eval::expected_point_count(target, surface.geometry());
    Ok(match format {
        Format::Text | Format::Latex => {
            let mut out = String::new();
            let _ = writeln!(out, "target: {target}");
            let _ = writeln!(out, "surface: {}", surface_label(surface));
            let _ = writeln!(out, "{}", geometry_line(surface));
            let _ = writeln!(out, "count: {}", report.value);
            let _ = writeln!(out, "ampleness: {}", ampleness_phrase(&report.ampleness));
            match &points {
                Ok(p) => {
                    let _ = writeln!(out, "points: {p}");
                }
                Err(e) => {
                    let _ = writeln!(out, "points: unknown ({})", points_reason(e));
                }
            }
            out
        }
        Format::Json => json_line(&json!({
            "target": target.to_string(),
            "surface": surface_json(surface),
            "count": report.value.to_string(),
            "ampleness": ampleness_json(&report.ampleness),
            "points": points.as_ref().ok().map(|p| p.to_string()),
            "points_note": points.as_ref().err().map(points_reason),
        })),
    })
}

fn ampleness_marker(report: &AmplenessReport) -> &'static str {
    match report.status {
        Ampleness::Satisfied => "ample: yes",
        Ampleness::NotSatisfied => "ample: no",
        Ampleness::Unknown => "ample: ?",
    }
}

fn section_rows(
    targets: &[CountTarget],
    single: bool,
    mut row: impl FnMut(CountTarget) -> Result<String, CliError>,
) -> Result<Option<String>, CliError> {
    let mut rows = String::new();
    for &t in targets.iter().filter(|t| matches!(t, CountTarget::Single(_)) == single) {
        rows.push_str(&row(t)?);
    }
    Ok((!rows.is_empty()).then_some(rows))
}

pub(crate) fn table(
    engine: &mut TwoPointEngine,
    surface: Option<&SurfaceSpec>,
    max_codim: Option<u32>,
    format: Format,
) -> Result<String, CliError> {
    let targets: Vec<CountTarget> = CountTarget::TABLE
        .into_iter()
        .filter(|t| max_codim.map_or(true, |c| t.codimension() <= c))
        .collect();

    if format == Format::Json {
        let mut entries = Vec::new();
        for &t in &targets {
            entries.push(match surface {
                None => json!({"target": t.to_string(), "terms": terms_json(&polynomial(engine, t)?)}),
                Some(surface) => {
                    let report = surface_eval::count(engine, t, surface).map_err(CliError::engine)?;
                    json!({
                        "target": t.to_string(),
                        "count": report.value.to_string(),
                        "ampleness": ampleness_json(&report.ampleness),
                    })
                }
            });
        }
        let root = match surface {
            None => json!({"table": entries}),
            Some(surface) => json!({"surface": surface_json(surface), "table": entries}),
        };
        return Ok(json_line(&root));
    }

    let style = if format == Format::Latex { FormatStyle::Latex } else { FormatStyle::Text };
    let mut out = String::new();
    if let Some(surface) = surface {
        let _ = writeln!(out, "surface: {}", surface_label(surface));
        let _ = writeln!(out, "{}", geometry_line(surface));
        let _ = writeln!(out);
    }
    let header_pair = if surface.is_some() {
        ("one-point counts", "node + singularity counts")
    } else {
        ("one-point formulas", "node + singularity formulas")
    };
    let mut sections = Vec::new();
    for single in [true, false] {
        let rows = section_rows(&targets, single, |t| {
            Ok(match surface {
                None => format!("  {:<6}  {}\n", t.to_string(), polynomial(engine, t)?.format(style)),
                Some(surface) => {
                    let report = surface_eval::count(engine, t, surface).map_err(CliError::engine)?;
                    format!(
                        "  {:<6}  {:>14}  {}\n",
                        t.to_string(),
                        report.value.to_string(),
                        ampleness_marker(&report.ampleness),
                    )
                }
            })
        })?;
        if let Some(rows) = rows {
            let header = if single { header_pair.0 } else { header_pair.1 };
            sections.push(format!("{header}\n{rows}"));
        }
    }
    if sections.is_empty() {
        let _ = writeln!(out, "(no targets within the codimension bound)");
    } else {
        out.push_str(&sections.join("\n"));
    }
    Ok(out)
}

/// Render the verification suite: one line per check, a summary line, and
/// whether everything passed.
pub(crate) fn selftest() -> (String, bool) {
    let reports = selftest::run_all();
    let mut out = String::new();
    for r in &reports {
        if r.passed {
            let _ = writeln!(out, "{} ... PASS", r.name);
        } else {
            let _ = writeln!(out, "{} ... FAIL — {}", r.name, r.detail);
        }
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    let _ = writeln!(out, "self-test: {passed} of {} checks passed", reports.len());
    (out, selftest::all_passed(&reports))
}

/// Error rendering for stderr: an `{"error": ...}` object under JSON, a
/// plain `error:` line otherwise.
pub(crate) fn error_text(format: Format, err: &CliError) -> String {
    match format {
        Format::Json => json_line(&json!({"error": {"kind": err.kind(), "message": err.message()}})),
        Format::Text | Format::Latex => format!("error: {}\n", err.message()),
    }
}
