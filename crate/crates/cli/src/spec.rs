//! JSON descriptions of bundles and free algebras.
//!
//! A bundle file looks like
//!
//! ```json
//! {
//!   "base": { "generators": [{ "name": "u", "degree": 4 }], "relations": [] },
//!   "rank": 2,
//!   "chern": ["0", "u"],
//!   "fibre": "z"
//! }
//! ```
//!
//! `chern` lists `c_2, c_4, ...` as polynomials in the base generators;
//! missing trailing classes are zero. `relations` are polynomials set to
//! zero, each with a pure-power leading monomial. `fibre` names the
//! projective class and defaults to `z`.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use mmm_core::algebra::{parse_polynomial, GeneratorTable};
use mmm_core::gysin::BundleSpec;
use mmm_core::RingPresentation;
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecError {
    pub field: String,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.field, self.message)
        }
    }
}

impl std::error::Error for SpecError {}

fn err(field: impl Into<String>, message: impl Into<String>) -> SpecError {
    SpecError {
        field: field.into(),
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<Value, SpecError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| err("", format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        err(
            "",
            format!(
                "{}: invalid JSON at line {} column {}: {e}",
                path.display(),
                e.line(),
                e.column()
            ),
        )
    })
}

fn field<'a>(value: &'a Value, path: &str, key: &str) -> Result<&'a Value, SpecError> {
    value
        .get(key)
        .ok_or_else(|| err(join(path, key), "missing"))
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn as_u32(value: &Value, path: &str) -> Result<u32, SpecError> {
    value
        .as_u64()
        .and_then(|v| u32::try_from(v).ok())
        .ok_or_else(|| {
            err(
                path,
                format!("expected a non-negative integer, found {value}"),
            )
        })
}

fn as_str<'a>(value: &'a Value, path: &str) -> Result<&'a str, SpecError> {
    value
        .as_str()
        .ok_or_else(|| err(path, format!("expected a string, found {value}")))
}

fn as_array<'a>(value: &'a Value, path: &str) -> Result<&'a Vec<Value>, SpecError> {
    value
        .as_array()
        .ok_or_else(|| err(path, format!("expected an array, found {value}")))
}

fn generators(value: &Value, path: &str) -> Result<Arc<GeneratorTable>, SpecError> {
    let list = as_array(field(value, path, "generators")?, &join(path, "generators"))?;
    let mut pairs = Vec::with_capacity(list.len());
    for (i, g) in list.iter().enumerate() {
        let at = format!("{}[{i}]", join(path, "generators"));
        let name = as_str(field(g, &at, "name")?, &join(&at, "name"))?;
        let degree = as_u32(field(g, &at, "degree")?, &join(&at, "degree"))?;
        if degree == 0 {
            return Err(err(join(&at, "degree"), "generators need positive degree"));
        }
        pairs.push((name.to_string(), degree));
    }
    GeneratorTable::from_pairs(pairs)
        .map(Arc::new)
        .map_err(|e| err(join(path, "generators"), e.to_string()))
}

fn ring(value: &Value, path: &str) -> Result<RingPresentation, SpecError> {
    let table = generators(value, path)?;
    let relations = match value.get("relations") {
        None => Vec::new(),
        Some(r) => {
            let at = join(path, "relations");
            as_array(r, &at)?
                .iter()
                .enumerate()
                .map(|(i, text)| {
                    let here = format!("{at}[{i}]");
                    parse_polynomial(as_str(text, &here)?, &table)
                        .map_err(|e| err(here, e.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    RingPresentation::from_relations(table, &relations)
        .map_err(|e| err(join(path, "relations"), e.to_string()))
}

/// A bundle over a finitely presented base, projectivized along `fibre`.
#[derive(Debug, Clone)]
pub struct BundleFile {
    pub spec: BundleSpec,
    pub fibre: String,
}

pub fn parse_bundle_value(value: &Value) -> Result<BundleFile, SpecError> {
    let base = ring(field(value, "", "base")?, "base")?;
    let rank = as_u32(field(value, "", "rank")?, "rank")?;
    if rank == 0 {
        return Err(err("rank", "must be positive"));
    }
    let chern = match value.get("chern") {
        None => Vec::new(),
        Some(c) => as_array(c, "chern")?
            .iter()
            .enumerate()
            .map(|(i, text)| {
                let here = format!("chern[{i}]");
                let p = parse_polynomial(as_str(text, &here)?, base.table())
                    .map_err(|e| err(&here, e.to_string()))?;
                let expected = 2 * (i as u32 + 1);
                match p.homogeneous_degree() {
                    Some(d) if d != expected && !p.is_zero() => Err(err(
                        here,
                        format!("c_{expected} must have degree {expected}, found {d}"),
                    )),
                    None if !p.is_zero() => Err(err(here, "not homogeneous")),
                    _ => Ok(p),
                }
            })
            .collect::<Result<Vec<_>, _>>()?,
    };
    let fibre = match value.get("fibre") {
        None => "z".to_string(),
        Some(f) => as_str(f, "fibre")?.to_string(),
    };
    if base.table().position(&fibre).is_some() {
        return Err(err(
            "fibre",
            format!("`{fibre}` is already a base generator"),
        ));
    }
    let spec = BundleSpec::new(base, rank, chern).map_err(|e| err("chern", e.to_string()))?;
    Ok(BundleFile { spec, fibre })
}

pub fn parse_bundle(path: &Path) -> Result<BundleFile, SpecError> {
    parse_bundle_value(&read(path)?)
}

/// A free graded-commutative algebra: `{"generators": [...]}`.
pub fn parse_algebra_value(value: &Value) -> Result<RingPresentation, SpecError> {
    Ok(RingPresentation::free(generators(value, "")?))
}

pub fn parse_algebra(path: &Path) -> Result<RingPresentation, SpecError> {
    parse_algebra_value(&read(path)?)
}
