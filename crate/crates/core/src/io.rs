//! UTF-8 JSON input for spaces, group elements and matrices.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::Value;

use crate::clifford::CliffordElem;
use crate::error::{Error, Result};
use crate::gpin::GPinElem;
use crate::quadspace::{Isometry, QuadSpace};
use crate::scalars::{Field, Matrix, Scalar, Vector};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn scalar(field: Field, v: &Value) -> Result<Scalar> {
    match v {
        Value::Number(n) => field.parse(&n.to_string()),
        Value::String(s) => field.parse(s),
        other => Err(parse_err(format!("expected a number or string, got {other}"))),
    }
}

fn vector(field: Field, v: &Value) -> Result<Vector> {
    v.as_array().ok_or_else(|| parse_err("expected an array of scalars"))?.iter().map(|c| scalar(field, c)).collect()
}

fn rows(field: Field, v: &Value) -> Result<Matrix> {
    let rows: Vec<Vector> = v
        .as_array()
        .ok_or_else(|| parse_err("expected an array of rows"))?
        .iter()
        .map(|r| vector(field, r))
        .collect::<Result<_>>()?;
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(parse_err("matrix must be square and nonempty"));
    }
    Ok(Matrix::from_rows(field, rows))
}

/// `{"field": "Q" | "Fp:p", "gram": [[...], ...]}`; entries are integers or
/// `"a/b"` strings.
pub fn parse_space(json: &str) -> Result<Arc<QuadSpace>> {
    let v: Value = serde_json::from_str(json).map_err(|e| parse_err(e.to_string()))?;
    let field: Field = v
        .get("field")
        .and_then(Value::as_str)
        .ok_or_else(|| parse_err("missing string field 'field'"))?
        .parse()?;
    let gram = rows(field, v.get("gram").ok_or_else(|| parse_err("missing 'gram'"))?)?;
    Ok(Arc::new(QuadSpace::new(gram)?))
}

pub fn space_to_json(space: &QuadSpace) -> Value {
    let gram = space.gram();
    let n = space.dim();
    let rows: Vec<Vec<String>> = (0..n).map(|i| (0..n).map(|j| gram[(i, j)].to_string()).collect()).collect();
    serde_json::json!({ "field": space.field().to_string(), "gram": rows })
}

/// Either a blade map `{"mask": "coefficient", ...}` (masks over the
/// orthogonal frame, as emitted by the CLI), or
/// `{"vectors": [[...], ...], "scale": z}` for `z v_1 ... v_m` with vectors
/// in original coordinates.
pub fn parse_element(space: &Arc<QuadSpace>, json: &str) -> Result<GPinElem> {
    let v: Value = serde_json::from_str(json).map_err(|e| parse_err(e.to_string()))?;
    let field = space.field();
    let obj = v.as_object().ok_or_else(|| parse_err("element must be a JSON object"))?;
    if let Some(vectors) = obj.get("vectors") {
        let scale = obj.get("scale").map(|z| scalar(field, z)).transpose()?.unwrap_or_else(|| field.one());
        let frame: Vec<Vector> = vectors
            .as_array()
            .ok_or_else(|| parse_err("'vectors' must be an array"))?
            .iter()
            .map(|w| vector(field, w).and_then(|w| space.to_frame(&w)))
            .collect::<Result<_>>()?;
        return GPinElem::from_vectors(space, &frame, &scale);
    }
    let terms = obj.get("terms").and_then(Value::as_object).unwrap_or(obj);
    let map: BTreeMap<String, String> = terms
        .iter()
        .map(|(k, c)| match c {
            Value::String(s) => Ok((k.clone(), s.clone())),
            Value::Number(n) => Ok((k.clone(), n.to_string())),
            other => Err(parse_err(format!("bad coefficient {other}"))),
        })
        .collect::<Result<_>>()?;
    GPinElem::membership(&CliffordElem::from_json_map(space, &map)?)
}

pub fn element_to_json(g: &GPinElem) -> Value {
    serde_json::json!(g.value().to_json_map())
}

/// An isometry in original coordinates: `[[...], ...]` or `{"matrix": [[...], ...]}`.
pub fn parse_isometry(space: &Arc<QuadSpace>, json: &str) -> Result<Isometry> {
    let v: Value = serde_json::from_str(json).map_err(|e| parse_err(e.to_string()))?;
    let m = rows(space.field(), v.get("matrix").unwrap_or(&v))?;
    if m.rows() != space.dim() {
        return Err(Error::DimensionMismatch { expected: space.dim(), got: m.rows() });
    }
    Isometry::from_original(space, &m)
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    let rows: Vec<Vec<String>> = (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect()).collect();
    serde_json::json!(rows)
}
