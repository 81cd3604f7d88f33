//! Central extensions `A + V` with `(x + v)(y + w) = xy + theta(x, y)` and `V` annihilating.

use serde::Serialize;
use workbench_core::structure::annihilator;
use workbench_core::{basis_vector, Algebra, Echelon, Error, Matrix, Poly, Rational, Result, Ring, StructureTensor, Subspace};
use workbench_identity::{polarize, variety, Compiled, Identity};

/// `theta(e_i, e_j) = sum_k m_k[i][j] v_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cocycle {
    pub m: Vec<Matrix<Rational>>,
}

impl Cocycle {
    pub fn zero(n: usize, s: usize) -> Self {
        Cocycle { m: vec![Matrix::zeros(n, n); s] }
    }
    pub fn n(&self) -> usize {
        self.m.first().map_or(0, |m| m.rows())
    }
    pub fn s(&self) -> usize {
        self.m.len()
    }
    /// Coordinates `k n^2 + i n + j`, as used by [`CocycleSpace`].
    pub fn from_flat(n: usize, s: usize, v: &[Rational]) -> Result<Self> {
        if v.len() != s * n * n {
            return Err(Error::Dimension(format!("cocycle vector of length {} for n = {n}, s = {s}", v.len())));
        }
        Ok(Cocycle { m: v.chunks(n * n).map(|c| Matrix::from_flat(n, n, c.to_vec())).collect() })
    }
    pub fn flat(&self) -> Vec<Rational> {
        self.m.iter().flat_map(|m| m.flat().to_vec()).collect()
    }
    /// The coboundary `theta_f(x, y) = f(xy)` for `f: A -> V` given as an `s x n` matrix.
    pub fn coboundary(a: &Algebra<Rational>, f: &Matrix<Rational>) -> Result<Self> {
        let t = a.product()?;
        let n = a.dim;
        if f.cols() != n {
            return Err(Error::Dimension("f must have one column per basis vector".into()));
        }
        let m = (0..f.rows())
            .map(|k| Matrix::from_fn(n, n, |i, j| t.get(&[i, j]).iter().fold(Rational::zero(), |acc, (r, c)| acc.add(&c.mul(f.get(k, *r))))))
            .collect();
        Ok(Cocycle { m })
    }
}

#[derive(Clone, Debug)]
pub struct Extension {
    pub algebra: Algebra<Rational>,
    /// `Ann(theta) ∩ Ann(A) = 0`, equivalently `Ann(A_theta) = V`.
    pub annihilator_component_free: bool,
    /// The components of `theta` are independent modulo coboundaries.
    pub components_independent: bool,
}

/// Basis `e_0..e_(n-1), v_0..v_(s-1)`.
pub fn central_extension(a: &Algebra<Rational>, theta: &Cocycle) -> Result<Extension> {
    let n = a.dim;
    let s = theta.s();
    if theta.m.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Err(Error::Dimension(format!("cocycle matrices must be {n}x{n}")));
    }
    let t = a.product()?;
    let mut e = StructureTensor::zero(n + s, 2);
    for i in 0..n {
        for j in 0..n {
            for (k, c) in t.get(&[i, j]) {
                e.add_entry(&[i, j], *k, c);
            }
            for (k, m) in theta.m.iter().enumerate() {
                e.add_entry(&[i, j], n + k, m.get(i, j));
            }
        }
    }
    let alg = Algebra::binary(format!("{}_theta", a.name), e);
    let ann = annihilator(alg.product()?, true, true);
    let v_part = Subspace::from_vectors(n + s, &(n..n + s).map(|k| basis_vector(n + s, k)).collect::<Vec<_>>());
    let annihilator_component_free = ann.dim() == s && ann.is_subspace_of(&v_part);
    let b2 = coboundary_space(a, 1)?;
    let mut ech = Echelon::new(n * n);
    for b in b2.basis() {
        ech.add_dense(b);
    }
    let base = ech.rank();
    for m in &theta.m {
        ech.add_dense(m.flat());
    }
    let components_independent = ech.rank() == base + s;
    Ok(Extension { algebra: alg, annihilator_component_free, components_independent })
}

/// Identities of a list of varieties, written as names separated by spaces, commas or `+`.
fn identities_of(spec: &str) -> Result<Vec<Identity>> {
    let mut out = Vec::new();
    let names: Vec<&str> = spec.split(|c: char| c == ',' || c == '+' || c.is_whitespace()).filter(|x| !x.is_empty()).collect();
    if names.is_empty() {
        return Err(Error::InvalidParam("no variety given".into()));
    }
    for name in names {
        let v = variety(name, 2)?;
        if !v.predicates.is_empty() {
            return Err(Error::Unsupported(format!("`{name}` is not defined by identities alone")));
        }
        for id in &v.identities {
            if id.total_degree() < 2 {
                return Err(Error::Precondition(format!("`{name}` has an identity of degree below 2")));
            }
            out.extend(polarize(id, 0)?.identities);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct CocycleSpace {
    pub n: usize,
    pub s: usize,
    pub z2: Subspace<Rational>,
    pub b2: Subspace<Rational>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CocycleSummary {
    pub n: usize,
    pub s: usize,
    pub z2_dim: usize,
    pub b2_dim: usize,
    pub h2_dim: usize,
    pub z2_basis: Vec<Vec<String>>,
    /// Cocycles completing a basis of `B2` to one of `Z2`.
    pub h2_representatives: Vec<Vec<String>>,
}

impl CocycleSpace {
    pub fn h2_dim(&self) -> usize {
        self.z2.dim() - self.b2.dim()
    }
    pub fn h2_representatives(&self) -> Vec<Vec<Rational>> {
        let mut ech = Echelon::new(self.z2.ambient());
        for b in self.b2.basis() {
            ech.add_dense(b);
        }
        self.z2.basis().iter().filter(|z| ech.add_dense(z)).cloned().collect()
    }
    pub fn summary(&self) -> CocycleSummary {
        let strs = |v: &[Vec<Rational>]| v.iter().map(|x| x.iter().map(|c| c.to_string()).collect()).collect();
        CocycleSummary {
            n: self.n,
            s: self.s,
            z2_dim: self.z2.dim(),
            b2_dim: self.b2.dim(),
            h2_dim: self.h2_dim(),
            z2_basis: strs(self.z2.basis()),
            h2_representatives: strs(&self.h2_representatives()),
        }
    }
}

/// `s` copies of a one-coordinate space, coordinate blocks of size `n^2`.
fn repeat(one: &Subspace<Rational>, s: usize) -> Subspace<Rational> {
    let m = one.ambient();
    let mut vs = Vec::new();
    for k in 0..s {
        for b in one.basis() {
            let mut v = vec![Rational::zero(); s * m];
            v[k * m..(k + 1) * m].clone_from_slice(b);
            vs.push(v);
        }
    }
    Subspace::from_vectors(s * m, &vs)
}

fn coboundary_space(a: &Algebra<Rational>, s: usize) -> Result<Subspace<Rational>> {
    let n = a.dim;
    let vs = (0..n)
        .map(|r| {
            let mut f = Matrix::zeros(1, n);
            f.set(0, r, Rational::one());
            Ok(Cocycle::coboundary(a, &f)?.flat())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(repeat(&Subspace::from_vectors(n * n, &vs), s))
}

/// `Z2`: cocycles whose extension satisfies the identities; `B2`: coboundaries.
///
/// With `V` annihilating, `theta` enters every product of degree at least 2 only at the
/// outermost multiplication, so the conditions are linear. They are obtained by evaluating the
/// multilinear identities on `A_theta` with indeterminate `theta` over basis tuples of `A`.
pub fn cocycle_space(a: &Algebra<Rational>, varieties: &str, s: usize) -> Result<CocycleSpace> {
    let n = a.dim;
    let ids = identities_of(varieties)?;
    let t = a.product()?;
    let mut e = StructureTensor::zero(n + 1, 2);
    for i in 0..n {
        for j in 0..n {
            for (k, c) in t.get(&[i, j]) {
                e.add_entry(&[i, j], *k, &Poly::constant(c.clone()));
            }
            e.add_entry(&[i, j], n, &Poly::var(i * n + j));
        }
    }
    let ext = Algebra::binary("A_theta", e);
    let basis: Vec<Vec<Poly>> = (0..n).map(|i| basis_vector(n + 1, i)).collect();
    let mut ech = Echelon::new(n * n);
    for id in &ids {
        let c = Compiled::new(&ext, id, |q| Ok(Poly::constant(q.clone())))?;
        let k = c.num_vars;
        let mut tuple = vec![0usize; k];
        'scan: loop {
            let vals: Vec<Vec<Poly>> = tuple.iter().map(|&i| basis[i].clone()).collect();
            let out = c.eval(&vals);
            if out[..n].iter().any(|p| !p.is_zero()) {
                return Err(Error::Precondition(format!("{} does not satisfy `{id}`", a.name)));
            }
            let mut row = vec![Rational::zero(); n * n];
            for (mono, coef) in out[n].terms() {
                let v = mono.iter().position(|&d| d > 0).filter(|_| mono.iter().map(|&d| d as u32).sum::<u32>() == 1).ok_or_else(|| Error::Precondition("cocycle condition is not linear".into()))?;
                row[v] = coef.clone();
            }
            ech.add_dense(&row);
            let mut p = k;
            loop {
                if p == 0 {
                    break 'scan;
                }
                p -= 1;
                tuple[p] += 1;
                if tuple[p] < n {
                    break;
                }
                tuple[p] = 0;
            }
        }
    }
    Ok(CocycleSpace { n, s, z2: repeat(&ech.nullspace(), s), b2: coboundary_space(a, s)? })
}

/// For `theta = theta_f`, the basis change `x -> x - f(x)`, `v -> v` taking `A_theta` to the
/// split extension.
pub fn split_isomorphism(f: &Matrix<Rational>) -> Matrix<Rational> {
    let (s, n) = (f.rows(), f.cols());
    Matrix::from_fn(n + s, n + s, |i, j| {
        if i == j {
            Rational::one()
        } else if i >= n && j < n {
            f.get(i - n, j).neg()
        } else {
            Rational::zero()
        }
    })
}
