//! Incidence algebras and the brackets `B(f, g)(x, y) = sigma(x, y) [f, g](x, y)`.

use std::collections::BTreeMap;

use serde::Serialize;
use workbench_core::{Algebra, Error, Field, Rational, Result, Ring, StructureTensor};
use workbench_poisson::{check_poisson_family, Kind};

use crate::poset::Poset;

/// `sigma` on strict pairs `x < y` (element indices).
pub type SigmaMap<F> = BTreeMap<(usize, usize), F>;

pub fn basis_index(p: &Poset, x: usize, y: usize) -> Option<usize> {
    p.intervals().iter().position(|&iv| iv == (x, y))
}

/// Basis `e_xy` (`x <= y`, lexicographic), `e_xy e_uv = delta_yu e_xv`, unit `sum e_xx`.
pub fn incidence_algebra<F: Ring>(p: &Poset) -> Algebra<F> {
    let iv = p.intervals();
    let d = iv.len();
    let mut t = StructureTensor::zero(d, 2);
    for (a, &(x, y)) in iv.iter().enumerate() {
        for (b, &(u, v)) in iv.iter().enumerate() {
            if y == u {
                let c = iv.iter().position(|&w| w == (x, v)).expect("transitive");
                t.add_entry(&[a, b], c, &F::one());
            }
        }
    }
    let mut alg = Algebra::binary(format!("I({})", p.labels.join(",")), t);
    let mut unit = vec![F::zero(); d];
    for (a, &(x, y)) in iv.iter().enumerate() {
        if x == y {
            unit[a] = F::one();
        }
    }
    alg.unit = Some(unit);
    alg
}

fn check_total<F: Ring>(p: &Poset, sigma: &SigmaMap<F>) -> Result<()> {
    for (x, y) in p.strict_pairs() {
        if !sigma.contains_key(&(x, y)) {
            return Err(Error::InvalidParam(format!("sigma undefined on {}<{}", p.labels[x], p.labels[y])));
        }
    }
    if let Some(((x, y), _)) = sigma.iter().find(|((x, y), _)| !p.lt(*x, *y)) {
        return Err(Error::InvalidParam(format!("sigma given on a non-strict pair ({x},{y})")));
    }
    Ok(())
}

pub fn sigma_bracket<F: Ring>(p: &Poset, sigma: &SigmaMap<F>) -> Result<StructureTensor<F>> {
    check_total(p, sigma)?;
    let iv = p.intervals();
    let d = iv.len();
    let mut t = StructureTensor::zero(d, 2);
    let idx = |x: usize, y: usize| iv.iter().position(|&w| w == (x, y)).expect("interval");
    for (a, &(x, y)) in iv.iter().enumerate() {
        for (b, &(u, v)) in iv.iter().enumerate() {
            // [e_xy, e_uv] = delta_yu e_xv - delta_vx e_uy; only strict targets survive
            if y == u && x != v {
                t.add_entry(&[a, b], idx(x, v), &sigma[&(x, v)]);
            }
            if v == x && u != y {
                t.add_entry(&[a, b], idx(u, y), &sigma[&(u, y)].neg());
            }
        }
    }
    Ok(t)
}

pub fn poisson_pair<F: Field>(p: &Poset, sigma: &SigmaMap<F>) -> Result<Algebra<F>> {
    let a = incidence_algebra::<F>(p);
    let br = sigma_bracket(p, sigma)?;
    a.with_op("bracket", br)
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub constant: bool,
    pub chain: Option<Vec<String>>,
}

/// Whether `sigma` is constant on every maximal chain.
pub fn chain_constant_check<F: Field>(p: &Poset, sigma: &SigmaMap<F>) -> Result<ChainReport> {
    check_total(p, sigma)?;
    for c in p.maximal_chains() {
        let mut vals = Vec::new();
        for (i, &x) in c.iter().enumerate() {
            for &y in &c[i + 1..] {
                vals.push(&sigma[&(x, y)]);
            }
        }
        if vals.windows(2).any(|w| w[0] != w[1]) {
            return Ok(ChainReport { constant: false, chain: Some(c.iter().map(|&i| p.labels[i].clone()).collect()) });
        }
    }
    Ok(ChainReport { constant: true, chain: None })
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivReport {
    pub chain_constant: bool,
    pub poisson: bool,
    pub agree: bool,
    pub chain: Option<Vec<String>>,
    /// First Poisson requirement that failed.
    pub failed: Option<String>,
}

pub fn poisson_sigma_equiv_test<F: Field>(p: &Poset, sigma: &SigmaMap<F>) -> Result<EquivReport> {
    let ch = chain_constant_check(p, sigma)?;
    let rep = check_poisson_family(&poisson_pair(p, sigma)?, Kind::Poisson)?;
    let failed = rep.preconditions.iter().chain(&rep.axioms).find(|r| !r.holds).map(|r| r.name.clone());
    Ok(EquivReport { chain_constant: ch.constant, poisson: rep.holds, agree: ch.constant == rep.holds, chain: ch.chain, failed })
}

/// Reads `{"a<b": value}` into a map over element indices.
pub fn sigma_from_json(p: &Poset, v: &serde_json::Value) -> Result<SigmaMap<Rational>> {
    let obj = v.as_object().ok_or_else(|| Error::Parse("sigma must be an object".into()))?;
    let mut out = SigmaMap::new();
    for (k, val) in obj {
        let (a, b) = k.split_once('<').ok_or_else(|| Error::Parse(format!("bad sigma key `{k}`")))?;
        let find = |s: &str| p.labels.iter().position(|l| l == s.trim()).ok_or_else(|| Error::Parse(format!("unknown element `{s}`")));
        let q: Rational = match val {
            serde_json::Value::String(s) => s.parse()?,
            serde_json::Value::Number(n) => n.to_string().parse()?,
            _ => return Err(Error::Parse(format!("bad sigma value for `{k}`"))),
        };
        out.insert((find(a)?, find(b)?), q);
    }
    Ok(out)
}
