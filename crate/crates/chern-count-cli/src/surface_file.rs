//! Loading a surface description from a JSON file (`--geometry-file`).
//!
//! # Layout
//!
//! ```json
//! {
//!   "name": "quintic-in-p3",
//!   "params": {},
//!   "geometry": {"c1_sq": 5, "c1_x1": -5, "x1_sq": 45, "x2": 55}
//! }
//! ```
//!
//! The four Chern numbers are required integers: `c1_sq` is the
//! self-intersection of the polarization, `c1_x1` its pairing with the
//! cotangent class, `x1_sq` and `x2` the Chern numbers of the cotangent
//! bundle.  `params` is optional and must be empty for a custom surface.
//!
//! The reserved names `"p2"` and `"p1xp1"` describe the built-in presets
//! instead: `params` then carries `{"degree": d}` respectively
//! `{"a": .., "b": ..}`, and the stated geometry must agree with the
//! preset's own — a mismatch means the file is stale or hand-mangled, and
//! is an error rather than a silent override.

use std::fs;
use std::path::Path;

use serde_json::{Map, Value};

use chern_count_core::{SurfaceGeometry, SurfaceSpec};

use crate::CliError;

fn bad(path: &Path, message: impl core::fmt::Display) -> CliError {
    CliError::new("surface-file", format!("{}: {message}", path.display()))
}

/// Strict object access: every present key must be in `allowed`.
fn as_object<'v>(
    v: &'v Value,
    what: &str,
    allowed: &[&str],
    path: &Path,
) -> Result<&'v Map<String, Value>, CliError> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad(path, format_args!("{what} must be a JSON object")))?;
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(bad(path, format_args!("{what} has an unknown field {key:?}")));
        }
    }
    Ok(obj)
}

fn integer_field(obj: &Map<String, Value>, field: &str, what: &str, path: &Path) -> Result<i64, CliError> {
    obj.get(field)
        .ok_or_else(|| bad(path, format_args!("{what} is missing {field:?}")))?
        .as_i64()
        .ok_or_else(|| bad(path, format_args!("{what} field {field:?} must be an integer")))
}

fn preset_param(params: Option<&Value>, fields: &[&str], name: &str, path: &Path) -> Result<Vec<u32>, CliError> {
    let what = format!("\"params\" for the {name} preset");
    let obj = params
        .ok_or_else(|| bad(path, format_args!("the {name} preset requires a \"params\" object")))?;
    let obj = as_object(obj, &what, fields, path)?;
    fields
        .iter()
        .map(|field| {
            let n = obj
                .get(*field)
                .ok_or_else(|| bad(path, format_args!("{what} is missing {field:?}")))?
                .as_u64()
                .ok_or_else(|| bad(path, format_args!("{what} field {field:?} must be a nonnegative integer")))?;
            u32::try_from(n).map_err(|_| bad(path, format_args!("{what} field {field:?} is out of range")))
        })
        .collect()
}

/// Load and validate a surface description.
pub(crate) fn load(path: &Path) -> Result<SurfaceSpec, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::new("io", format!("cannot read surface file {}: {e}", path.display())))?;
    let root: Value = serde_json::from_str(&text).map_err(|e| bad(path, format_args!("not valid JSON: {e}")))?;
    let root = as_object(&root, "the surface description", &["name", "params", "geometry"], path)?;

    let name = root
        .get("name")
        .and_then(Value::as_str)
        .ok_or_else(|| bad(path, "the surface description needs a string field \"name\""))?;

    let geometry = root
        .get("geometry")
        .ok_or_else(|| bad(path, "the surface description needs a \"geometry\" object"))?;
    let geometry = as_object(geometry, "\"geometry\"", &["c1_sq", "c1_x1", "x1_sq", "x2"], path)?;
    let geometry = SurfaceGeometry::from_integers(
        integer_field(geometry, "c1_sq", "\"geometry\"", path)?,
        integer_field(geometry, "c1_x1", "\"geometry\"", path)?,
        integer_field(geometry, "x1_sq", "\"geometry\"", path)?,
        integer_field(geometry, "x2", "\"geometry\"", path)?,
    );

    let spec = match name {
        "p2" => {
            let params = preset_param(root.get("params"), &["degree"], "p2", path)?;
            SurfaceSpec::projective_plane(params[0])
        }
        "p1xp1" => {
            let params = preset_param(root.get("params"), &["a", "b"], "p1xp1", path)?;
            SurfaceSpec::p1_cross_p1(params[0], params[1])
        }
        _ => {
            if let Some(params) = root.get("params") {
                let params = as_object(params, "\"params\"", &[], path)?;
                debug_assert!(params.is_empty(), "no keys are allowed, so none can be present");
            }
            return Ok(SurfaceSpec::custom(name.to_string(), geometry));
        }
    };
    if spec.geometry() != &geometry {
        return Err(bad(
            path,
            format_args!(
                "the stated geometry does not match the {name} preset's own Chern numbers; \
                 fix the file or rename the surface"
            ),
        ));
    }
    Ok(spec)
}
