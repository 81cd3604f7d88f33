use serde::Serialize;
use serde_json::Value;
use workbench_core::{Algebra, Error, Matrix, RatFunc, Rational, Result, Ring, StructureTensor};

/// Invertible `n x n` matrix over `Q(t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub g: Matrix<RatFunc>,
}

impl Certificate {
    pub fn new(g: Matrix<RatFunc>) -> Result<Self> {
        if !g.is_square() {
            return Err(Error::Dimension("certificate must be square".into()));
        }
        if g.det()?.is_zero() {
            return Err(Error::Precondition("certificate is singular over Q(t)".into()));
        }
        Ok(Certificate { g })
    }
    pub fn dim(&self) -> usize {
        self.g.rows()
    }
    /// `t^k I`.
    pub fn scalar(n: usize, k: i64) -> Self {
        Certificate { g: Matrix::identity(n).scale(&RatFunc::t_pow(k)) }
    }
    /// `diag(t^k_0, .., t^k_(n-1))`.
    pub fn diagonal(ks: &[i64]) -> Self {
        Certificate { g: Matrix::diag(&ks.iter().map(|&k| RatFunc::t_pow(k)).collect::<Vec<_>>()) }
    }
    /// `self` after `o`: the matrix product `self.g * o.g`.
    pub fn then(&self, o: &Self) -> Result<Self> {
        Certificate::new(self.g.mul(&o.g)?)
    }
    /// Value at `t = a`.
    pub fn at(&self, a: &Rational) -> Result<Matrix<Rational>> {
        self.g.try_map(|x| x.eval(a))
    }

    /// Matrix of strings in `t` (or `{"g": [[..]]}`); numbers are accepted as constants.
    pub fn from_json(v: &Value) -> Result<Self> {
        let rows = v.get("g").unwrap_or(v).as_array().ok_or_else(|| Error::Parse("certificate must be a matrix".into()))?;
        let rows = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.as_array()
                    .ok_or_else(|| Error::Parse(format!("certificate row {i} is not an array")))?
                    .iter()
                    .map(|x| match x {
                        Value::String(s) => RatFunc::parse(s),
                        Value::Number(n) => RatFunc::parse(&n.to_string()),
                        _ => Err(Error::Parse(format!("bad certificate entry in row {i}"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Certificate::new(Matrix::from_rows(rows)?)
    }
    pub fn to_json(&self) -> Value {
        Value::Array(self.g.to_rows().iter().map(|r| Value::Array(r.iter().map(|x| Value::String(fmt_ratfunc(x))).collect())).collect())
    }
}

pub fn fmt_ratfunc(x: &RatFunc) -> String {
    if x.denom().degree() == Some(0) {
        format!("{}", x.numer())
    } else {
        format!("({})/({})", x.numer(), x.denom())
    }
}

/// One nonzero structure constant of a transformed operation.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Entry {
    pub op: String,
    pub args: Vec<usize>,
    pub out: usize,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegenerationReport {
    /// Nonzero constants of `g * mu`.
    pub transformed: Vec<Entry>,
    pub limit_exists: bool,
    /// Constants with a pole at `t = 0`.
    pub poles: Vec<Entry>,
    pub equals_target: bool,
    /// Constants where the limit differs from the target.
    pub differences: Vec<Entry>,
    #[serde(skip)]
    pub limit: Option<Algebra<Rational>>,
}

impl DegenerationReport {
    pub fn holds(&self) -> bool {
        self.limit_exists && self.equals_target
    }
}

/// Computes `(g * mu)(x, ..) = g mu(g^-1 x, ..)` for every operation of `a` and compares the
/// value at `t = 0` with the same-named operation of `b`.
pub fn degeneration_verify(a: &Algebra<Rational>, b: &Algebra<Rational>, cert: &Certificate) -> Result<DegenerationReport> {
    if a.dim != b.dim || cert.dim() != a.dim {
        return Err(Error::Dimension(format!("dimensions {}, {} and certificate {}", a.dim, b.dim, cert.dim())));
    }
    let at = a.map(|c| RatFunc::constant(c.clone())).change_basis(&cert.g)?;
    let mut transformed = Vec::new();
    let mut poles = Vec::new();
    let mut differences = Vec::new();
    let mut limit = Algebra::new(format!("lim {}", a.name), a.dim);
    for op in &at.ops {
        for (args, out) in op.tensor.entries() {
            for (k, c) in out {
                let e = Entry { op: op.name.clone(), args: args.clone(), out: *k, value: fmt_ratfunc(c) };
                if c.has_pole_at_zero() {
                    poles.push(e.clone());
                }
                transformed.push(e);
            }
        }
        let lim = op.tensor.try_map(|c| if c.has_pole_at_zero() { Ok(Rational::zero()) } else { c.eval(&Rational::zero()) })?;
        limit.ops.push(workbench_core::Operation { name: op.name.clone(), tensor: lim });
    }
    let limit_exists = poles.is_empty();
    for op in &limit.ops {
        let zero = StructureTensor::zero(b.dim, op.tensor.arity());
        let target = b.op(&op.name).unwrap_or(&zero);
        if target.arity() != op.tensor.arity() {
            return Err(Error::Dimension(format!("operation `{}` has different arity in the target", op.name)));
        }
        for flat in 0..op.tensor.table_len() {
            let args = op.tensor.unindex(flat);
            let (x, y) = (op.tensor.get_dense(&args), target.get_dense(&args));
            for k in 0..b.dim {
                if x[k] != y[k] {
                    differences.push(Entry { op: op.name.clone(), args: args.clone(), out: k, value: x[k].to_string() });
                }
            }
        }
    }
    for op in &b.ops {
        if a.op(&op.name).is_none() && !op.tensor.is_zero() {
            differences.push(Entry { op: op.name.clone(), args: vec![], out: 0, value: "missing in source".into() });
        }
    }
    let equals_target = limit_exists && differences.is_empty();
    Ok(DegenerationReport { transformed, limit_exists, poles, equals_target, differences, limit: limit_exists.then_some(limit) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use workbench_core::catalog;

    #[test]
    fn parses_json() {
        let v: Value = serde_json::from_str(r#"[["t^-1", 0], ["0", "(t^2+1)/t"]]"#).unwrap();
        let c = Certificate::from_json(&v).unwrap();
        assert_eq!(c.g.get(0, 0), &RatFunc::t_pow(-1));
        assert_eq!(Certificate::from_json(&c.to_json()).unwrap(), c);
        let sing: Value = serde_json::from_str(r#"[["t", "t"], ["1", "1"]]"#).unwrap();
        assert!(Certificate::from_json(&sing).is_err());
    }

    #[test]
    fn nf2_homogeneity() {
        let nf2 = catalog::null_filiform(2);
        let r = degeneration_verify(&nf2, &nf2, &Certificate::diagonal(&[-1, -2])).unwrap();
        assert!(r.holds());
    }
}
