//! The matrix file format consumed and produced by the CLI.
//!
//! A matrix is a JSON object
//! `{"field": "Q" | "GF", "p": prime (GF only), "rows": m, "cols": n,
//!   "entries": [["a", "a/b", ...], ...]}`
//! with every entry an exact decimal string. Parsing is strict: malformed
//! rationals, wrong row/column counts and composite moduli are rejected.

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{is_prime_u64, Field, Scalar};

#[derive(Debug, Serialize)]
struct MatrixFile {
    field: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<u64>,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

/// Serialize a matrix to the canonical JSON form (pretty-printed, stable key
/// order).
pub fn matrix_to_json(m: &Matrix) -> String {
    serde_json::to_string_pretty(&matrix_file(m)).expect("matrix serializes")
}

pub(crate) fn matrix_to_value(m: &Matrix) -> Value {
    serde_json::to_value(matrix_file(m)).expect("matrix serializes")
}

fn matrix_file(m: &Matrix) -> MatrixFile {
    let (field, p) = match m.field() {
        Field::Q => ("Q", None),
        Field::Gf(p) => ("GF", Some(p)),
    };
    MatrixFile {
        field,
        p,
        rows: m.rows(),
        cols: m.cols(),
        entries: (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
            .collect(),
    }
}

/// Parse a matrix from its JSON representation.
pub fn matrix_from_json(text: &str) -> Result<Matrix> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    matrix_from_value(&value)
}

pub fn matrix_from_value(value: &Value) -> Result<Matrix> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("matrix file must be a JSON object".into()))?;
    let field_name = obj
        .get("field")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("missing or non-string `field`".into()))?;
    let field = match field_name {
        "Q" => {
            if obj.contains_key("p") {
                return Err(Error::Parse("`p` is only valid for GF matrices".into()));
            }
            Field::Q
        }
        "GF" => {
            let p = obj
                .get("p")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse("GF matrix requires a positive integer `p`".into()))?;
            if !is_prime_u64(p) {
                return Err(Error::Parse(format!("modulus {p} is not prime")));
            }
            Field::Gf(p)
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown field `{other}` (expected \"Q\" or \"GF\")"
            )))
        }
    };
    let rows = read_dim(obj, "rows")?;
    let cols = read_dim(obj, "cols")?;
    let entries = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing `entries` array".into()))?;
    if entries.len() != rows {
        return Err(Error::Parse(format!(
            "expected {rows} entry rows, found {}",
            entries.len()
        )));
    }
    let mut parsed: Vec<Vec<Scalar>> = Vec::with_capacity(rows);
    for (i, row) in entries.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse(format!("entry row {i} is not an array")))?;
        if row.len() != cols {
            return Err(Error::Parse(format!(
                "row {i}: expected {cols} entries, found {}",
                row.len()
            )));
        }
        let mut out = Vec::with_capacity(cols);
        for (j, cell) in row.iter().enumerate() {
            let text = cell
                .as_str()
                .ok_or_else(|| Error::Parse(format!("entry ({i},{j}) is not a string")))?;
            out.push(
                field
                    .parse(text)
                    .map_err(|e| Error::Parse(format!("entry ({i},{j}): {e}")))?,
            );
        }
        parsed.push(out);
    }
    if rows == 0 || cols == 0 {
        return Ok(Matrix::zeros(field, rows, cols));
    }
    Matrix::from_rows(field, parsed)
}

fn read_dim(obj: &serde_json::Map<String, Value>, key: &str) -> Result<usize> {
    obj.get(key)
        .and_then(Value::as_u64)
        .map(|v| v as usize)
        .ok_or_else(|| Error::Parse(format!("missing or invalid `{key}`")))
}
