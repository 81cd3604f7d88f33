//! Splitting into multihomogeneous parts and full linearization.

use std::collections::BTreeMap;

use workbench_core::catalog::permutations_with_sign;
use workbench_core::{Error, Rational, Result, Ring};

use crate::term::{Identity, Term};

/// Multilinear identities equivalent to the input (in characteristic 0 or large enough).
#[derive(Clone, Debug)]
pub struct Polarized {
    pub identities: Vec<Identity>,
    /// Substituting all copies of a variable back gives `scaling[i]` times the i-th component.
    pub scalings: Vec<Rational>,
}

/// Multihomogeneous components, keyed by degree vector.
pub fn homogeneous_components(id: &Identity) -> Vec<Identity> {
    let mut parts: BTreeMap<Vec<usize>, Identity> = BTreeMap::new();
    for (t, c) in &id.terms {
        let d = id.term_degrees(t);
        parts.entry(d).or_insert_with(|| Identity::new(id.vars.clone())).add_term(t.clone(), c);
    }
    parts.into_values().filter(|p| !p.is_zero()).collect()
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

fn linearize_var(id: &Identity, v: usize, d: usize) -> Identity {
    let mut vars = id.vars.clone();
    let fresh: Vec<usize> = (0..d)
        .map(|k| {
            vars.push(format!("{}_{}", id.vars[v], k + 1));
            vars.len() - 1
        })
        .collect();
    let perms = permutations_with_sign(d);
    let mut out = Identity::new(vars);
    for (t, c) in &id.terms {
        for (p, _) in &perms {
            let subst: Vec<usize> = p.iter().map(|&i| fresh[i]).collect();
            let mut next = 0;
            let nt: Term = t.substitute_occurrences(v, &subst, &mut next);
            out.add_term(nt, c);
        }
    }
    out
}

/// Full polarization. Refuses when `0 < characteristic <= total degree` and the input is not
/// already multilinear.
pub fn polarize(id: &Identity, characteristic: u64) -> Result<Polarized> {
    if id.is_multilinear() {
        return Ok(Polarized { identities: vec![id.compact()], scalings: vec![Rational::one()] });
    }
    let deg = id.total_degree() as u64;
    if characteristic != 0 && characteristic <= deg {
        return Err(Error::Unsupported(format!(
            "cannot linearize an identity of degree {deg} in characteristic {characteristic}"
        )));
    }
    let mut identities = Vec::new();
    let mut scalings = Vec::new();
    for comp in homogeneous_components(id) {
        let degs = comp.term_degrees(comp.terms.keys().next().expect("nonzero component"));
        let mut cur = comp;
        let mut scale = 1i64;
        for (v, &d) in degs.iter().enumerate() {
            if d >= 2 {
                cur = linearize_var(&cur, v, d);
                scale *= factorial(d);
            }
        }
        let cur = cur.compact();
        if !cur.is_zero() {
            identities.push(cur);
            scalings.push(Rational::integer(scale));
        }
    }
    Ok(Polarized { identities, scalings })
}
