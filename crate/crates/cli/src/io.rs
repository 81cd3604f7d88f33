//! Reading inputs: algebra files (or catalog specs), posets, matrices and sequences.

use std::path::Path;

use serde_json::Value;
use workbench_core::json::{self, FieldTag};
use workbench_core::{Algebra, Error, Matrix, Rational, Result};
use workbench_incidence::{Poset, PosetJson};

/// Input problems are reported with the path and, for JSON syntax errors, line and column.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn read_json(path: &str) -> std::result::Result<Value, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| InputError(format!("{path}:{}:{}: {e}", e.line(), e.column())))
}

fn in_context<T>(path: &str, r: Result<T>) -> std::result::Result<T, InputError> {
    r.map_err(|e| InputError(format!("{path}: {e}")))
}

/// A path to an algebra file, or a catalog spec such as `sl2` or `NF(3)` when no such file exists.
pub fn load_algebra(arg: &str) -> std::result::Result<(Algebra<Rational>, FieldTag), InputError> {
    if arg == "-" {
        let mut text = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut text).map_err(|e| InputError(format!("stdin: {e}")))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| InputError(format!("stdin:{}:{}: {e}", e.line(), e.column())))?;
        return in_context("stdin", json::from_value(&v));
    }
    if Path::new(arg).exists() {
        let v = read_json(arg)?;
        return in_context(arg, json::from_value(&v));
    }
    if arg.ends_with(".json") {
        return Err(InputError(format!("{arg}: no such file")));
    }
    in_context(arg, workbench_kantor::catalog_get(arg).map(|a| (a, FieldTag::Q)))
}

pub fn load_rational_algebra(arg: &str) -> std::result::Result<Algebra<Rational>, InputError> {
    let (a, tag) = load_algebra(arg)?;
    if tag != FieldTag::Q {
        return Err(InputError(format!("{arg}: this command works over Q, the file says {tag}")));
    }
    Ok(a)
}

/// A poset file, or `chain(n)`, `antichain(n)`, `crown`.
pub fn load_poset(arg: &str) -> std::result::Result<Poset, InputError> {
    if Path::new(arg).exists() {
        let v = read_json(arg)?;
        let pj: PosetJson = serde_json::from_value(v).map_err(|e| InputError(format!("{arg}: {e}")))?;
        return in_context(arg, Poset::from_json(&pj));
    }
    let (name, args) = in_context(arg, workbench_core::catalog::parse_spec(arg))?;
    let size = || -> std::result::Result<usize, InputError> {
        args.first()
            .filter(|a| a.is_integer())
            .and_then(|a| a.numer().to_string().parse().ok())
            .ok_or_else(|| InputError(format!("{arg}: expected an integer size")))
    };
    match name.as_str() {
        "chain" => Ok(Poset::chain(size()?)),
        "antichain" => Ok(Poset::antichain(size()?)),
        "crown" => Ok(Poset::crown()),
        _ => Err(InputError(format!("{arg}: no such file or poset"))),
    }
}

pub fn scalar(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) => n.to_string().parse(),
        _ => Err(Error::Parse(format!("expected a rational, got {v}"))),
    }
}

pub fn vector(v: &Value) -> Result<Vec<Rational>> {
    v.as_array().ok_or_else(|| Error::Parse("expected a list of rationals".into()))?.iter().map(scalar).collect()
}

pub fn matrix(v: &Value) -> Result<Matrix<Rational>> {
    let rows = v.as_array().ok_or_else(|| Error::Parse("expected a matrix (list of rows)".into()))?;
    Matrix::from_rows(rows.iter().map(vector).collect::<Result<_>>()?)
}

pub fn matrix_list(v: &Value, key: &str) -> Result<Vec<Matrix<Rational>>> {
    let list = v.get(key).unwrap_or(v).as_array().ok_or_else(|| Error::Parse(format!("expected a list of matrices or {{\"{key}\": [..]}}")))?;
    list.iter().map(matrix).collect()
}

pub fn load_matrix(path: &str) -> std::result::Result<Matrix<Rational>, InputError> {
    let v = read_json(path)?;
    in_context(path, matrix(&v))
}

pub fn load_with<T>(path: &str, f: impl Fn(&Value) -> Result<T>) -> std::result::Result<T, InputError> {
    let v = read_json(path)?;
    in_context(path, f(&v))
}

/// `u` as a basis index or a comma-separated coefficient list.
pub fn parse_element(s: &str, dim: usize) -> Result<Vec<Rational>> {
    if !s.contains(',') {
        if let Ok(i) = s.trim().parse::<usize>() {
            if i >= dim {
                return Err(Error::InvalidParam(format!("basis index {i} out of range for dim {dim}")));
            }
            return Ok(workbench_core::basis_vector(dim, i));
        }
    }
    let v: Vec<Rational> = s.split(',').map(|x| x.trim().parse()).collect::<Result<_>>()?;
    if v.len() != dim {
        return Err(Error::InvalidParam(format!("element has {} coefficients, dim is {dim}", v.len())));
    }
    Ok(v)
}
