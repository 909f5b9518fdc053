//! Optional write-through persistence of engine results.
//!
//! Pointed to by the `CHERN_COUNT_CACHE` environment variable.  On every
//! engine-running command the file (if it exists) seeds both memo tables
//! before computing, and the grown tables are written back afterwards —
//! first to a sibling temporary file, then renamed into place.
//!
//! # Layout
//!
//! ```json
//! {
//!   "one_point": [
//!     {"tag": "PA2", "n1": 0, "m1": 0, "m2": 0, "theta": 0,
//!      "value": {"c1_sq": "12", "c1_x1": "12", "x1_sq": "2", "x2": "2"}}
//!   ],
//!   "two_point": [
//!     {"tag": "A1A1", "n1": 0, "m1": 0, "m2": 0, "theta": 0,
//!      "extrapolated": false,
//!      "quad": [["9", "6", "0", "3"], ["6", "4", "0", "2"],
//!               ["0", "0", "0", "0"], ["3", "2", "0", "1"]],
//!      "lin": {"c1_sq": "-42", "c1_x1": "-39", "x1_sq": "-6", "x2": "-7"}}
//!   ]
//! }
//! ```
//!
//! Coefficients are exact rationals rendered as `"p"` or `"p/q"` strings;
//! matrix rows and columns follow the fixed basis order
//! `(c1^2, c1 x1, x1^2, x2)`.  The `extrapolated` flag marks entries outside
//! the closure needed to derive the published tables; it is informational
//! and recomputed on every store.
//!
//! # Strictness
//!
//! A file that exists but does not parse — malformed JSON, unknown fields,
//! out-of-domain keys, malformed numbers — is reported as an error, never
//! skipped: a silently half-read cache would poison every later value.  The
//! values themselves are trusted as written; editing them by hand falsifies
//! later computations, which is why the self-test never touches the cache.

use std::env;
use std::fs;
use std::io::ErrorKind;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use chern_count_core::{
    Monomial2, OnePointClass, Rational, StratumKey, StratumTag, TwoPointClass, TwoPointEngine,
    TwoPointKey, TwoPointTag,
};

use crate::CliError;

/// Name of the environment variable holding the cache file path.
pub(crate) const CACHE_ENV_VAR: &str = "CHERN_COUNT_CACHE";

/// Cache configuration for one invocation: a file path, or disabled.
pub(crate) struct CacheState {
    path: Option<PathBuf>,
}

fn corrupt(message: impl Into<String>) -> CliError {
    CliError::new("cache", message)
}

fn io_error(action: &str, path: &Path, e: std::io::Error) -> CliError {
    CliError::new("io", format!("cannot {action} {}: {e}", path.display()))
}

const BASIS_KEYS: [&str; 4] = ["c1_sq", "c1_x1", "x1_sq", "x2"];

fn rational_to_json(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn rational_from_json(v: &Value, context: &str) -> Result<Rational, CliError> {
    let s = v.as_str().ok_or_else(|| corrupt(format!("{context}: expected a string coefficient")))?;
    s.parse()
        .map_err(|_| corrupt(format!("{context}: {s:?} is not an exact rational (\"p\" or \"p/q\")")))
}

fn class_to_json(class: &OnePointClass) -> Value {
    let mut obj = Map::new();
    for m in Monomial2::ALL {
        obj.insert(String::from(BASIS_KEYS[m.index()]), rational_to_json(class.coeff(m)));
    }
    Value::Object(obj)
}

fn class_from_json(v: &Value, context: &str) -> Result<OnePointClass, CliError> {
    let obj = as_object(v, context, &BASIS_KEYS)?;
    let mut coeffs = [Rational::default(), Rational::default(), Rational::default(), Rational::default()];
    for m in Monomial2::ALL {
        let key = BASIS_KEYS[m.index()];
        let entry = obj.get(key).ok_or_else(|| corrupt(format!("{context}: missing {key:?}")))?;
        coeffs[m.index()] = rational_from_json(entry, context)?;
    }
    Ok(OnePointClass::from_coeffs(coeffs))
}

fn quad_to_json(quad: &[[Rational; 4]; 4]) -> Value {
    Value::Array(
        quad.iter()
            .map(|row| Value::Array(row.iter().map(rational_to_json).collect()))
            .collect(),
    )
}

fn quad_from_json(v: &Value, context: &str) -> Result<[[Rational; 4]; 4], CliError> {
    let rows = v.as_array().ok_or_else(|| corrupt(format!("{context}: expected a 4x4 array")))?;
    if rows.len() != 4 {
        return Err(corrupt(format!("{context}: expected 4 rows, found {}", rows.len())));
    }
    let mut quad: [[Rational; 4]; 4] = Default::default();
    for (i, row) in rows.iter().enumerate() {
        let entries = row.as_array().ok_or_else(|| corrupt(format!("{context}: row {i} is not an array")))?;
        if entries.len() != 4 {
            return Err(corrupt(format!("{context}: row {i} has {} entries, expected 4", entries.len())));
        }
        for (j, entry) in entries.iter().enumerate() {
            quad[i][j] = rational_from_json(entry, context)?;
        }
    }
    Ok(quad)
}

/// Strict object access: every present key must be in `allowed`.
fn as_object<'v>(v: &'v Value, context: &str, allowed: &[&str]) -> Result<&'v Map<String, Value>, CliError> {
    let obj = v.as_object().ok_or_else(|| corrupt(format!("{context}: expected an object")))?;
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(corrupt(format!("{context}: unknown field {key:?}")));
        }
    }
    Ok(obj)
}

fn index_field(obj: &Map<String, Value>, field: &str, context: &str) -> Result<u32, CliError> {
    let v = obj.get(field).ok_or_else(|| corrupt(format!("{context}: missing {field:?}")))?;
    let n = v.as_u64().ok_or_else(|| corrupt(format!("{context}: {field} must be a nonnegative integer")))?;
    u32::try_from(n).map_err(|_| corrupt(format!("{context}: {field} = {n} is out of range")))
}

fn tag_field<'o>(obj: &'o Map<String, Value>, context: &str) -> Result<&'o str, CliError> {
    obj.get("tag")
        .and_then(Value::as_str)
        .ok_or_else(|| corrupt(format!("{context}: missing string field \"tag\"")))
}

impl CacheState {
    /// Read the configuration from the environment.  An unset or empty
    /// variable disables the cache.
    pub(crate) fn from_env() -> CacheState {
        let path = env::var_os(CACHE_ENV_VAR).filter(|v| !v.is_empty()).map(PathBuf::from);
        CacheState { path }
    }

    /// Seed both memo tables from the cache file.  A missing file is a
    /// fresh cache and seeds nothing; an unreadable or malformed one is an
    /// error.
    pub(crate) fn seed(&self, engine: &mut TwoPointEngine) -> Result<(), CliError> {
        let Some(path) = &self.path else { return Ok(()) };
        let text = match fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(()),
            Err(e) => return Err(io_error("read cache file", path, e)),
        };
        let root: Value = serde_json::from_str(&text)
            .map_err(|e| corrupt(format!("cache file {} is not valid JSON: {e}", path.display())))?;
        let root = as_object(&root, &format!("cache file {}", path.display()), &["one_point", "two_point"])?;

        if let Some(entries) = root.get("one_point") {
            let entries = entries
                .as_array()
                .ok_or_else(|| corrupt("cache field \"one_point\" must be an array"))?;
            for (i, entry) in entries.iter().enumerate() {
                let context = format!("one_point[{i}]");
                let obj = as_object(entry, &context, &["tag", "n1", "m1", "m2", "theta", "value"])?;
                let tag_name = tag_field(obj, &context)?;
                let tag = StratumTag::ALL
                    .into_iter()
                    .find(|t| t.name() == tag_name)
                    .ok_or_else(|| corrupt(format!("{context}: unknown stratum tag {tag_name:?}")))?;
                let key = StratumKey::new(
                    tag,
                    index_field(obj, "n1", &context)?,
                    index_field(obj, "m1", &context)?,
                    index_field(obj, "m2", &context)?,
                    index_field(obj, "theta", &context)?,
                )
                .map_err(|e| corrupt(format!("{context}: {e}")))?;
                let value = obj.get("value").ok_or_else(|| corrupt(format!("{context}: missing \"value\"")))?;
                engine.one_point_mut().seed_memo(key, class_from_json(value, &context)?);
            }
        }

        if let Some(entries) = root.get("two_point") {
            let entries = entries
                .as_array()
                .ok_or_else(|| corrupt("cache field \"two_point\" must be an array"))?;
            for (i, entry) in entries.iter().enumerate() {
                let context = format!("two_point[{i}]");
                let obj = as_object(
                    entry,
                    &context,
                    &["tag", "n1", "m1", "m2", "theta", "quad", "lin", "extrapolated"],
                )?;
                let tag_name = tag_field(obj, &context)?;
                let tag = TwoPointTag::ALL
                    .into_iter()
                    .find(|t| t.name() == tag_name)
                    .ok_or_else(|| corrupt(format!("{context}: unknown two-point tag {tag_name:?}")))?;
                let key = TwoPointKey::new(
                    tag,
                    index_field(obj, "n1", &context)?,
                    index_field(obj, "m1", &context)?,
                    index_field(obj, "m2", &context)?,
                    index_field(obj, "theta", &context)?,
                )
                .map_err(|e| corrupt(format!("{context}: {e}")))?;
                if !obj
                    .get("extrapolated")
                    .ok_or_else(|| corrupt(format!("{context}: missing \"extrapolated\"")))?
                    .is_boolean()
                {
                    return Err(corrupt(format!("{context}: \"extrapolated\" must be a boolean")));
                }
                let quad = obj.get("quad").ok_or_else(|| corrupt(format!("{context}: missing \"quad\"")))?;
                let lin = obj.get("lin").ok_or_else(|| corrupt(format!("{context}: missing \"lin\"")))?;
                let value = TwoPointClass::from_parts(
                    quad_from_json(quad, &context)?,
                    class_from_json(lin, &context)?,
                );
                engine.seed_memo(key, value);
            }
        }
        Ok(())
    }

    /// Write both memo tables back, recomputing the `extrapolated` flags.
    pub(crate) fn store(&self, engine: &mut TwoPointEngine) -> Result<(), CliError> {
        let Some(path) = &self.path else { return Ok(()) };
        let theorem_keys = engine.theorem_key_set().clone();
        let one_point: Vec<Value> = engine
            .one_point()
            .memo_entries()
            .map(|(k, v)| {
                json!({
                    "tag": k.tag().name(),
                    "n1": k.n1(), "m1": k.m1(), "m2": k.m2(), "theta": k.theta(),
                    "value": class_to_json(v),
                })
            })
            .collect();
        let two_point: Vec<Value> = engine
            .memo_entries()
            .map(|(k, v)| {
                json!({
                    "tag": k.tag().name(),
                    "n1": k.n1(), "m1": k.m1(), "m2": k.m2(), "theta": k.theta(),
                    "extrapolated": !theorem_keys.contains(&k),
                    "quad": quad_to_json(v.quad()),
                    "lin": class_to_json(v.lin()),
                })
            })
            .collect();
        let root = json!({"one_point": one_point, "two_point": two_point});
        let mut text =
            serde_json::to_string_pretty(&root).expect("JSON trees built here always serialize");
        text.push('\n');
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, text).map_err(|e| io_error("write cache file", &tmp, e))?;
        fs::rename(&tmp, path).map_err(|e| io_error("replace cache file", path, e))
    }
}
