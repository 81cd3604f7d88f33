//! Customary identities: sums of products of `<x, y> = {x, y} - (D(x) y - x D(y))` and `D(x)` factors.

use serde::Serialize;
use workbench_core::{Algebra, Error, Rational, Result, Ring, StructureTensor};
use workbench_identity::{check_identity, parse_identity, Identity, Witness};

use crate::family::{check_poisson_family, d_map, Kind};

/// One summand: `coef * <x_s0, x_s1> ... <x_s(2i-2), x_s(2i-1)> D(x_s(2i)) ... D(x_s(m-1))`.
#[derive(Clone, Debug, PartialEq)]
pub struct CustomaryTerm {
    pub coef: Rational,
    pub sigma: Vec<usize>,
    pub pairs: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CustomaryIdentity {
    pub m: usize,
    pub terms: Vec<CustomaryTerm>,
}

impl CustomaryIdentity {
    pub fn new(m: usize) -> Self {
        CustomaryIdentity { m, terms: Vec::new() }
    }
    pub fn term(mut self, coef: i64, sigma: &[usize], pairs: usize) -> Result<Self> {
        let mut seen = vec![false; self.m];
        if sigma.len() != self.m || 2 * pairs > self.m || sigma.iter().any(|&s| s >= self.m || std::mem::replace(&mut seen[s], true)) {
            return Err(Error::InvalidParam(format!("bad customary term {sigma:?} with {pairs} pairs")));
        }
        self.terms.push(CustomaryTerm { coef: Rational::integer(coef), sigma: sigma.to_vec(), pairs });
        Ok(self)
    }
    /// As an identity in variables `x1..xm`, with `<,>` written `angle(,)`.
    pub fn to_identity(&self) -> Result<Identity> {
        if self.terms.is_empty() {
            return parse_identity("0");
        }
        let x = |s: usize| format!("x{}", s + 1);
        let mut parts = Vec::new();
        for t in &self.terms {
            let mut f: Vec<String> = (0..t.pairs).map(|k| format!("angle({}, {})", x(t.sigma[2 * k]), x(t.sigma[2 * k + 1]))).collect();
            f.extend(t.sigma[2 * t.pairs..].iter().map(|&s| format!("D({})", x(s))));
            parts.push(format!("({})*{}", t.coef, f.join("*")));
        }
        parse_identity(&parts.join(" + "))
    }
}

/// `<x, y>` as a tensor.
pub fn angle_bracket(p: &Algebra<Rational>) -> Result<StructureTensor<Rational>> {
    let n = p.dim;
    let br = p.op_result("bracket")?;
    let mul = p.op_result("mul")?;
    let d = d_map(p)?.map(|t| t.to_matrix());
    let mut t = StructureTensor::zero(n, 2);
    for i in 0..n {
        for j in 0..n {
            let mut v = br.get_dense(&[i, j]);
            if let Some(d) = &d {
                let ei = workbench_core::basis_vector(n, i);
                let ej = workbench_core::basis_vector(n, j);
                let a = mul.apply(&[&d.col(i), &ej]);
                let b = mul.apply(&[&ei, &d.col(j)]);
                for k in 0..n {
                    v[k] = v[k].sub(&a[k]).add(&b[k]);
                }
            }
            t.set_dense(&[i, j], &v);
        }
    }
    Ok(t)
}

#[derive(Clone, Debug, Serialize)]
pub struct CustomaryReport {
    pub holds: bool,
    pub witness: Option<Witness<Rational>>,
}

/// Evaluates a multilinear identity in `mul`, `angle` and `D` on all basis tuples.
pub fn customary_check(p: &Algebra<Rational>, g: &Identity) -> Result<CustomaryReport> {
    if p.unit.is_none() {
        return Err(Error::Precondition("customary identities need a unit".into()));
    }
    if !g.is_multilinear() {
        return Err(Error::Precondition("customary identity must be multilinear".into()));
    }
    if !check_poisson_family(p, Kind::Generalized)?.holds {
        return Err(Error::Precondition("not a generalized Poisson pair".into()));
    }
    let a = crate::family::with_d(p)?.with_op("angle", angle_bracket(p)?)?;
    let r = check_identity(&a, g)?;
    Ok(CustomaryReport { holds: r.holds, witness: r.witness })
}
