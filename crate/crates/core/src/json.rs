//! Algebra file format.
//!
//! ```json
//! {"name":"NF(2)","field":"Q","dim":2,
//!  "ops":[{"name":"mul","arity":2,"table":[{"args":[0,0],"out":[[1,"1"]]}]}],
//!  "unit":0,"u":1,"form":[["1","0"],["0","1"]]}
//! ```
//! Indices are 0-based and coefficients are exact rational strings. `unit` and `u` may also
//! be given as full coefficient lists.

use serde_json::{json, Map, Value};

use crate::algebra::{basis_vector, Algebra, Operation};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Rational, Ring};
use crate::tensor::StructureTensor;

/// Scalar field named in a file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldTag {
    Q,
    Gf(u64),
}

impl FieldTag {
    pub fn parse(s: &str) -> Result<Self> {
        if s == "Q" {
            return Ok(FieldTag::Q);
        }
        if let Some(p) = s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
            let p: u64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad field `{s}`")))?;
            if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
                return Err(Error::Parse(format!("`{s}`: {p} is not prime")));
            }
            return Ok(FieldTag::Gf(p));
        }
        Err(Error::Parse(format!("unknown field `{s}`")))
    }
}

impl std::fmt::Display for FieldTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldTag::Q => write!(f, "Q"),
            FieldTag::Gf(p) => write!(f, "GF({p})"),
        }
    }
}

fn scalar(v: &Value, ctx: &str) -> Result<Rational> {
    match v {
        Value::String(s) => s.parse().map_err(|e| Error::Parse(format!("{ctx}: {e}"))),
        Value::Number(n) => n
            .as_i64()
            .map(Rational::integer)
            .ok_or_else(|| Error::Parse(format!("{ctx}: non-integer number, use a \"p/q\" string"))),
        _ => Err(Error::Parse(format!("{ctx}: expected a rational string"))),
    }
}

fn index(v: &Value, dim: usize, ctx: &str) -> Result<usize> {
    let i = v.as_u64().ok_or_else(|| Error::Parse(format!("{ctx}: expected an index")))? as usize;
    if i >= dim {
        return Err(Error::Parse(format!("{ctx}: index {i} out of range for dim {dim}")));
    }
    Ok(i)
}

fn vector_or_index(v: &Value, dim: usize, ctx: &str) -> Result<Vec<Rational>> {
    match v {
        Value::Array(xs) => {
            if xs.len() != dim {
                return Err(Error::Parse(format!("{ctx}: expected {dim} coefficients")));
            }
            xs.iter().map(|x| scalar(x, ctx)).collect()
        }
        _ => Ok(basis_vector(dim, index(v, dim, ctx)?)),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Parse(format!("missing field `{key}`")))
}

/// Parses an algebra file; coefficients are kept rational and the field tag returned alongside.
pub fn from_value(v: &Value) -> Result<(Algebra<Rational>, FieldTag)> {
    let obj = v.as_object().ok_or_else(|| Error::Parse("top level must be an object".into()))?;
    let name = field(obj, "name")?.as_str().ok_or_else(|| Error::Parse("`name` must be a string".into()))?;
    let tag = FieldTag::parse(obj.get("field").and_then(Value::as_str).unwrap_or("Q"))?;
    let dim = field(obj, "dim")?.as_u64().ok_or_else(|| Error::Parse("`dim` must be a positive integer".into()))? as usize;
    if dim == 0 {
        return Err(Error::Parse("`dim` must be positive".into()));
    }
    let mut alg = Algebra::new(name, dim);
    let ops = field(obj, "ops")?.as_array().ok_or_else(|| Error::Parse("`ops` must be a list".into()))?;
    for (oi, op) in ops.iter().enumerate() {
        let ctx = format!("ops[{oi}]");
        let op = op.as_object().ok_or_else(|| Error::Parse(format!("{ctx}: expected an object")))?;
        let oname = field(op, "name")?.as_str().ok_or_else(|| Error::Parse(format!("{ctx}: bad name")))?;
        let arity = field(op, "arity")?.as_u64().ok_or_else(|| Error::Parse(format!("{ctx}: bad arity")))? as usize;
        if arity == 0 || arity > 8 {
            return Err(Error::Parse(format!("{ctx}: arity {arity} not supported")));
        }
        let mut t = StructureTensor::zero(dim, arity);
        let table = field(op, "table")?.as_array().ok_or_else(|| Error::Parse(format!("{ctx}: `table` must be a list")))?;
        for (ei, entry) in table.iter().enumerate() {
            let ctx = format!("{ctx}.table[{ei}]");
            let args = entry.get("args").and_then(Value::as_array).ok_or_else(|| Error::Parse(format!("{ctx}: bad args")))?;
            if args.len() != arity {
                return Err(Error::Parse(format!("{ctx}: expected {arity} args")));
            }
            let args: Vec<usize> = args.iter().map(|a| index(a, dim, &ctx)).collect::<Result<_>>()?;
            let out = entry.get("out").and_then(Value::as_array).ok_or_else(|| Error::Parse(format!("{ctx}: bad out")))?;
            for pair in out {
                let pair = pair.as_array().filter(|p| p.len() == 2).ok_or_else(|| Error::Parse(format!("{ctx}: out entries are [k, \"p/q\"]")))?;
                let k = index(&pair[0], dim, &ctx)?;
                t.add_entry(&args, k, &scalar(&pair[1], &ctx)?);
            }
        }
        alg.ops.push(Operation { name: oname.to_string(), tensor: t });
    }
    if let Some(u) = obj.get("unit") {
        alg.unit = Some(vector_or_index(u, dim, "unit")?);
    }
    if let Some(u) = obj.get("u") {
        alg.u = Some(vector_or_index(u, dim, "u")?);
    }
    if let Some(f) = obj.get("form") {
        let rows = f.as_array().ok_or_else(|| Error::Parse("`form` must be a matrix".into()))?;
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .filter(|r| r.len() == dim)
                    .ok_or_else(|| Error::Parse("`form` rows must have length dim".into()))?
                    .iter()
                    .map(|x| scalar(x, "form"))
                    .collect()
            })
            .collect::<Result<_>>()?;
        if rows.len() != dim {
            return Err(Error::Parse("`form` must be dim x dim".into()));
        }
        alg.form = Some(Matrix::from_rows(rows)?);
    }
    Ok((alg, tag))
}

pub fn from_str(s: &str) -> Result<(Algebra<Rational>, FieldTag)> {
    let v: Value = serde_json::from_str(s)?;
    from_value(&v)
}

fn designated<R: Ring>(v: &[R]) -> Value {
    let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
    if nz.len() == 1 && v[nz[0]].is_one() {
        json!(nz[0])
    } else {
        Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
    }
}

pub fn to_value<R: Ring>(a: &Algebra<R>, tag: FieldTag) -> Value {
    let ops: Vec<Value> = a
        .ops
        .iter()
        .map(|o| {
            let table: Vec<Value> = o
                .tensor
                .entries()
                .map(|(args, out)| {
                    json!({
                        "args": args,
                        "out": out.iter().map(|(k, c)| json!([k, c.to_string()])).collect::<Vec<_>>(),
                    })
                })
                .collect();
            json!({"name": o.name, "arity": o.tensor.arity(), "table": table})
        })
        .collect();
    let mut obj = Map::new();
    obj.insert("name".into(), json!(a.name));
    obj.insert("field".into(), json!(tag.to_string()));
    obj.insert("dim".into(), json!(a.dim));
    obj.insert("ops".into(), Value::Array(ops));
    if let Some(u) = &a.unit {
        obj.insert("unit".into(), designated(u));
    }
    if let Some(u) = &a.u {
        obj.insert("u".into(), designated(u));
    }
    if let Some(g) = &a.form {
        let rows: Vec<Value> =
            g.to_rows().iter().map(|r| Value::Array(r.iter().map(|x| Value::String(x.to_string())).collect())).collect();
        obj.insert("form".into(), Value::Array(rows));
    }
    Value::Object(obj)
}

pub fn to_string<R: Ring>(a: &Algebra<R>, tag: FieldTag) -> String {
    serde_json::to_string_pretty(&to_value(a, tag)).expect("json values serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn roundtrip_catalog() {
        for spec in ["NF(3)", "sl2", "tp4", "M8", "ternaryJordan(3)", "matrix(2)"] {
            let a = catalog::get_spec(spec).unwrap();
            let s = to_string(&a, FieldTag::Q);
            let (b, tag) = from_str(&s).unwrap();
            assert_eq!(tag, FieldTag::Q);
            assert_eq!(a, b, "{spec}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(from_str(r#"{"name":"x","dim":2,"ops":[{"name":"mul","arity":2,"table":[{"args":[0,2],"out":[]}]}]}"#).is_err());
        assert!(from_str(r#"{"name":"x","field":"GF(4)","dim":1,"ops":[]}"#).is_err());
        assert!(from_str("{").is_err());
        let (a, tag) = from_str(r#"{"name":"x","field":"GF(3)","dim":1,"ops":[{"name":"mul","arity":2,"table":[{"args":[0,0],"out":[[0,"2"]]}]}],"unit":[ "1/2" ]}"#).unwrap();
        assert_eq!(tag, FieldTag::Gf(3));
        assert_eq!(a.unit, Some(vec![crate::scalar::q(1, 2)]));
    }
}
