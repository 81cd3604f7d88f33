//! Transposed structures: the ½-derivation link and the space of compatible products.

use serde::Serialize;
use workbench_core::structure::delta_derivation_space;
use workbench_core::{basis_vector, q, Algebra, Echelon, Error, Poly, Rational, Result, Ring, StructureTensor, Subspace};
use workbench_identity::{check_variety, project_op};

use crate::family::{check_poisson_family, Kind};

#[derive(Clone, Debug, Serialize)]
pub struct LinkReport {
    pub holds: bool,
    /// For each basis `z`, coordinates of `R_z` in the basis of ½-derivations.
    pub certificates: Vec<Option<Vec<String>>>,
    /// First basis index whose `R_z` is not a ½-derivation.
    pub witness: Option<usize>,
    pub half_derivation_dim: usize,
}

/// Right multiplications `R_z` of `mul` against the ½-derivations of `bracket`.
pub fn half_derivation_link_test(p: &Algebra<Rational>) -> Result<LinkReport> {
    let fam = check_poisson_family(p, Kind::Transposed)?;
    if !fam.holds {
        let failed: Vec<&str> = fam.preconditions.iter().chain(&fam.axioms).filter(|r| !r.holds).map(|r| r.name.as_str()).collect();
        return Err(Error::Precondition(format!("not a transposed pair: {}", failed.join(", "))));
    }
    let mul = p.op_result("mul")?;
    let half = delta_derivation_space(p.op_result("bracket")?, &q(1, 2));
    let mut certificates = Vec::with_capacity(p.dim);
    let mut witness = None;
    for z in 0..p.dim {
        let rz = mul.slot_operator(0, &[&basis_vector(p.dim, z)]);
        let c = half.coordinates(rz.flat());
        if c.is_none() && witness.is_none() {
            witness = Some(z);
        }
        certificates.push(c.map(|v| v.iter().map(|x| x.to_string()).collect()));
    }
    Ok(LinkReport { holds: witness.is_none(), certificates, witness, half_derivation_dim: half.dim() })
}

/// Commutative products compatible with a Lie bracket, with the associativity obstructions.
#[derive(Clone, Debug)]
pub struct CompatibleSpace {
    pub n: usize,
    /// Products as flattened structure constants, index `(i*n + j)*n + k`.
    pub space: Subspace<Rational>,
    /// Quadratic polynomials in the coordinates `x0, x1, ..` of the basis of `space`.
    pub obstructions: Vec<Poly>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompatibleReport {
    pub dim: usize,
    pub basis: Vec<Vec<String>>,
    pub obstructions: Vec<String>,
}

impl CompatibleSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
    pub fn product(&self, coords: &[Rational]) -> StructureTensor<Rational> {
        let n = self.n;
        let mut t = StructureTensor::zero(n, 2);
        for (c, b) in coords.iter().zip(self.space.basis()) {
            for (f, v) in b.iter().enumerate() {
                if !v.is_zero() {
                    t.add_entry(&[f / (n * n), (f / n) % n], f % n, &c.mul(v));
                }
            }
        }
        t
    }
    pub fn coordinates(&self, t: &StructureTensor<Rational>) -> Option<Vec<Rational>> {
        self.space.coordinates(&flatten(t))
    }
    pub fn obstructions_vanish(&self, coords: &[Rational]) -> bool {
        self.obstructions.iter().all(|p| p.eval(coords).is_zero())
    }
    pub fn report(&self) -> CompatibleReport {
        CompatibleReport {
            dim: self.dim(),
            basis: self.space.basis().iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect(),
            obstructions: self.obstructions.iter().map(|p| p.to_string()).collect(),
        }
    }
}

fn flatten(t: &StructureTensor<Rational>) -> Vec<Rational> {
    let n = t.dim();
    let mut v = vec![Rational::zero(); n * n * n];
    for (args, vals) in t.entries() {
        for (k, c) in vals {
            v[(args[0] * n + args[1]) * n + k] = c.clone();
        }
    }
    v
}

/// The bracket of `l`: the operation `bracket` if present, otherwise the main operation.
fn lie_bracket(l: &Algebra<Rational>) -> Result<Algebra<Rational>> {
    let br = if l.op("bracket").is_some() { project_op(l, "bracket")? } else { Algebra::binary(l.name.clone(), l.main()?.clone()) };
    if !check_variety(&br, "lie")?.holds {
        return Err(Error::Precondition(format!("`{}` is not a Lie algebra", l.name)));
    }
    Ok(br)
}

/// Commutative `.` with `2 z.[x,y] = [z.x, y] + [x, z.y]`, plus associativity as polynomials.
pub fn transposed_compatible_space(l: &Algebra<Rational>) -> Result<CompatibleSpace> {
    let br = lie_bracket(l)?;
    let b = br.product()?;
    let n = br.dim;
    let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
    let mut e = Echelon::new(n * n * n);
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                e.add_sparse(vec![(idx(i, j, k), Rational::one()), (idx(j, i, k), Rational::one().neg())]);
            }
        }
    }
    let two = Rational::integer(2);
    for z in 0..n {
        for x in 0..n {
            for y in 0..n {
                // one row per output coordinate k
                let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
                for (m, c) in b.get(&[x, y]) {
                    for (k, row) in rows.iter_mut().enumerate() {
                        row.push((idx(z, *m, k), two.mul(c)));
                    }
                }
                for p in 0..n {
                    for (k, c) in b.get(&[p, y]) {
                        rows[*k].push((idx(z, x, p), c.neg()));
                    }
                    for (k, c) in b.get(&[x, p]) {
                        rows[*k].push((idx(z, y, p), c.neg()));
                    }
                }
                for row in rows {
                    e.add_sparse(combine(row));
                }
            }
        }
    }
    let space = e.nullspace();
    let obstructions = associativity_obstructions(n, &space);
    Ok(CompatibleSpace { n, space, obstructions })
}

fn combine(mut row: Vec<(usize, Rational)>) -> Vec<(usize, Rational)> {
    row.sort_by_key(|(i, _)| *i);
    let mut out: Vec<(usize, Rational)> = Vec::new();
    for (i, c) in row {
        match out.last_mut() {
            Some((j, d)) if *j == i => *d = d.add(&c),
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

fn associativity_obstructions(n: usize, space: &Subspace<Rational>) -> Vec<Poly> {
    let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
    let c: Vec<Poly> = (0..n * n * n)
        .map(|f| {
            space.basis().iter().enumerate().fold(Poly::zero(), |acc, (s, b)| {
                if b[f].is_zero() {
                    acc
                } else {
                    acc.add(&Poly::var(s).mul(&Poly::constant(b[f].clone())))
                }
            })
        })
        .collect();
    let mut out: Vec<Poly> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut p = Poly::zero();
                    for m in 0..n {
                        p = p.add(&c[idx(i, j, m)].mul(&c[idx(m, k, l)]));
                        p = p.sub(&c[idx(j, k, m)].mul(&c[idx(i, m, l)]));
                    }
                    if !p.is_zero() && !out.contains(&p) && !out.contains(&p.neg()) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}
