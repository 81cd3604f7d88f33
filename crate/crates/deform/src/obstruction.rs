use serde::Serialize;
use workbench_core::structure::{annihilator, delta_derivation_space, derived_series, power_filtration};
use workbench_core::{Algebra, Rational, Result, Ring};

/// Invariants that can only grow (or only shrink) along a degeneration.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct InvariantProfile {
    pub dim: usize,
    /// `dim A^k` for `k = 1, 2, ..` until zero or stable.
    pub power_dims: Vec<usize>,
    pub derived_dims: Vec<usize>,
    pub annihilator_dim: usize,
    pub der_dim: usize,
    pub nilpotent: bool,
    pub solvable: bool,
    pub commutative: bool,
    pub anticommutative: bool,
    /// `n^2 - dim Der`; informational only.
    pub orbit_dim: usize,
}

pub fn invariant_profile(a: &Algebra<Rational>) -> Result<InvariantProfile> {
    let t = a.product()?;
    let pw: Vec<usize> = power_filtration(t).iter().map(|s| s.dim()).collect();
    let ds: Vec<usize> = derived_series(t).iter().map(|s| s.dim()).collect();
    let der = delta_derivation_space(t, &Rational::one()).dim();
    Ok(InvariantProfile {
        dim: a.dim,
        nilpotent: *pw.last().expect("nonempty") == 0,
        solvable: *ds.last().expect("nonempty") == 0,
        power_dims: pw,
        derived_dims: ds,
        annihilator_dim: annihilator(t, true, true).dim(),
        der_dim: der,
        commutative: t.has_symmetry(false),
        anticommutative: t.has_symmetry(true),
        orbit_dim: a.dim * a.dim - der,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Violation {
    pub rule: String,
    pub detail: String,
}

fn at(v: &[usize], k: usize) -> usize {
    *v.get(k).unwrap_or_else(|| v.last().expect("nonempty"))
}

/// Necessary conditions for `a` to degenerate to `b`; an empty list proves nothing.
/// With `distinct`, `a` and `b` are claimed non-isomorphic and `Der` must grow strictly.
pub fn degeneration_obstruction(a: &Algebra<Rational>, b: &Algebra<Rational>, distinct: bool) -> Result<Vec<Violation>> {
    let mut out = Vec::new();
    let v = |rule: &str, detail: String| Violation { rule: rule.into(), detail };
    if a.dim != b.dim {
        out.push(v("dim A = dim B", format!("{} != {}", a.dim, b.dim)));
        return Ok(out);
    }
    let (pa, pb) = (invariant_profile(a)?, invariant_profile(b)?);
    for k in 0..pa.power_dims.len().max(pb.power_dims.len()) {
        let (x, y) = (at(&pa.power_dims, k), at(&pb.power_dims, k));
        if x < y {
            out.push(v("dim A^k >= dim B^k", format!("k = {}: {x} < {y}", k + 1)));
        }
    }
    if pa.annihilator_dim > pb.annihilator_dim {
        out.push(v("dim Ann(A) <= dim Ann(B)", format!("{} > {}", pa.annihilator_dim, pb.annihilator_dim)));
    }
    if pa.der_dim > pb.der_dim || (distinct && pa.der_dim == pb.der_dim) {
        let rel = if distinct { "<" } else { "<=" };
        out.push(v(&format!("dim Der(A) {rel} dim Der(B)"), format!("{} vs {}", pa.der_dim, pb.der_dim)));
    }
    if pa.commutative && !pb.commutative {
        out.push(v("commutativity is inherited", "B is not commutative".into()));
    }
    if pa.anticommutative && !pb.anticommutative {
        out.push(v("anticommutativity is inherited", "B is not anticommutative".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use workbench_core::catalog;

    #[test]
    fn abelian_to_sl2_is_blocked() {
        let r = degeneration_obstruction(&catalog::abelian(3), &catalog::sl2(), true).unwrap();
        assert!(r.iter().any(|x| x.rule.starts_with("dim A^k") && x.detail == "k = 2: 0 < 3"));
        assert!(degeneration_obstruction(&catalog::sl2(), &catalog::abelian(3), true).unwrap().is_empty());
    }
}
