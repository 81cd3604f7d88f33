//! Structural invariants: powers, derived series, annihilators, gradings, characteristic
//! sequences, multiplicative bases and the standard embedding of a ternary algebra.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{basis_vector, Algebra};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix, Subspace};
use crate::poly::Poly;
use crate::scalar::{Field, Rational, Ring};
use crate::tensor::StructureTensor;

/// `span{ x y : x in U, y in V }`.
pub fn product_span<F: Field>(t: &StructureTensor<F>, u: &Subspace<F>, v: &Subspace<F>) -> Subspace<F> {
    let n = t.dim();
    let mut e = Echelon::new(n);
    for x in u.basis() {
        for y in v.basis() {
            if e.is_full() {
                break;
            }
            e.add_dense(&t.apply(&[x, y]));
        }
    }
    e.row_space()
}

/// `{D : D(mu(x_1..x_k)) = delta * sum_s mu(x_1,..,D x_s,..,x_k)}` as flattened row-major
/// `n x n` matrices (`D e_j = sum_i D[i][j] e_i`).
pub fn delta_derivation_space<F: Field>(t: &StructureTensor<F>, delta: &F) -> Subspace<F> {
    let n = t.dim();
    let k = t.arity();
    let mut e = Echelon::new(n * n);
    for flat in 0..t.table_len() {
        let args = t.unindex(flat);
        // row per output coordinate r, accumulated sparsely
        let mut rows: Vec<std::collections::BTreeMap<usize, F>> = vec![Default::default(); n];
        for (s, c) in t.get_flat(flat) {
            for (r, row) in rows.iter_mut().enumerate() {
                let ent = row.entry(r * n + s).or_insert_with(F::zero);
                *ent = ent.add(c);
            }
        }
        for slot in 0..k {
            let mut a = args.clone();
            for j in 0..n {
                a[slot] = j;
                for (r, c) in t.get(&a) {
                    let ent = rows[*r].entry(j * n + args[slot]).or_insert_with(F::zero);
                    *ent = ent.sub(&delta.mul(c));
                }
            }
        }
        for row in rows {
            e.add_sparse(row.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
    }
    e.nullspace()
}

/// Dimensions of `A^1 = A, A^k = sum_{i+j=k} A^i A^j`, ending at zero or where it stabilizes.
pub fn power_filtration<F: Field>(t: &StructureTensor<F>) -> Vec<Subspace<F>> {
    let n = t.dim();
    let mut pw: Vec<Subspace<F>> = vec![Subspace::full(n)];
    loop {
        let k = pw.len() + 1;
        let mut acc = Subspace::zero(n);
        for i in 1..k {
            let j = k - i;
            acc = acc.sum(&product_span(t, &pw[i - 1], &pw[j - 1]));
        }
        let stop = acc.is_zero() || acc == *pw.last().unwrap();
        pw.push(acc);
        if stop {
            return pw;
        }
    }
}

pub fn derived_series<F: Field>(t: &StructureTensor<F>) -> Vec<Subspace<F>> {
    let mut s = vec![Subspace::full(t.dim())];
    loop {
        let last = s.last().unwrap();
        let next = product_span(t, last, last);
        let stop = next.is_zero() || next == *last;
        s.push(next);
        if stop {
            return s;
        }
    }
}

/// `{z : z e_i = 0}` (left) or `{z : e_i z = 0}` (right) for every basis `e_i`.
pub fn annihilator<F: Field>(t: &StructureTensor<F>, left: bool, right: bool) -> Subspace<F> {
    let n = t.dim();
    let mut e = Echelon::new(n);
    for i in 0..n {
        for k in 0..n {
            // coefficient of e_k in z e_i (resp. e_i z), linear in z
            if left {
                e.add_dense(&(0..n).map(|z| t.coeff(&[z, i], k)).collect::<Vec<_>>());
            }
            if right {
                e.add_dense(&(0..n).map(|z| t.coeff(&[i, z], k)).collect::<Vec<_>>());
            }
        }
    }
    e.nullspace()
}

/// `{z : z x = x z}`.
pub fn commutative_center<F: Field>(t: &StructureTensor<F>) -> Subspace<F> {
    let n = t.dim();
    let mut e = Echelon::new(n);
    for i in 0..n {
        for k in 0..n {
            e.add_dense(&(0..n).map(|z| t.coeff(&[z, i], k).sub(&t.coeff(&[i, z], k))).collect::<Vec<_>>());
        }
    }
    e.nullspace()
}

/// First basis tuple whose product leaves the degree `sum of degrees` (mod `modulus`, 0 for Z).
pub fn grading_violation<F: Field>(t: &StructureTensor<F>, degrees: &[i64], modulus: i64) -> Option<Vec<usize>> {
    let norm = |d: i64| if modulus == 0 { d } else { d.rem_euclid(modulus) };
    for (args, out) in t.entries() {
        let d: i64 = args.iter().map(|&a| degrees[a]).sum();
        if out.iter().any(|(k, _)| norm(degrees[*k]) != norm(d)) {
            return Some(args);
        }
    }
    None
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct StructureReport {
    pub dim: usize,
    pub power_dims: Vec<usize>,
    pub nilpotent: bool,
    /// Least `k` with `A^k = 0`.
    pub nilpotency_index: Option<usize>,
    pub derived_dims: Vec<usize>,
    pub solvable: bool,
    pub solvability_index: Option<usize>,
    pub left_annihilator_dim: usize,
    pub right_annihilator_dim: usize,
    pub annihilator_dim: usize,
    pub center_dim: usize,
    pub commutative_center_dim: usize,
    pub commutative: bool,
    pub anticommutative: bool,
    pub grading_ok: Option<bool>,
}

pub fn structure_report<F: Field>(a: &Algebra<F>, grading: Option<(&[i64], i64)>) -> Result<StructureReport> {
    let t = a.product()?;
    let pw = power_filtration(t);
    let ds = derived_series(t);
    let nilpotent = pw.last().unwrap().is_zero();
    let solvable = ds.last().unwrap().is_zero();
    let ann = annihilator(t, true, true);
    let grading_ok = match grading {
        Some((d, m)) => {
            if d.len() != a.dim {
                return Err(Error::Dimension("grading has wrong length".into()));
            }
            Some(grading_violation(t, d, m).is_none())
        }
        None => None,
    };
    Ok(StructureReport {
        dim: a.dim,
        power_dims: pw.iter().map(|s| s.dim()).collect(),
        nilpotent,
        nilpotency_index: nilpotent.then_some(pw.len()),
        derived_dims: ds.iter().map(|s| s.dim()).collect(),
        solvable,
        solvability_index: solvable.then_some(ds.len() - 1),
        left_annihilator_dim: annihilator(t, true, false).dim(),
        right_annihilator_dim: annihilator(t, false, true).dim(),
        annihilator_dim: ann.dim(),
        center_dim: ann.dim(),
        commutative_center_dim: commutative_center(t).dim(),
        commutative: t.has_symmetry(false),
        anticommutative: t.has_symmetry(true),
        grading_ok,
    })
}

/// Block sizes (weakly decreasing) of a nilpotent operator from the ranks of its powers,
/// `ranks[p] = rank M^p` with `ranks[0] = n`.
pub fn jordan_type(ranks: &[usize]) -> Vec<usize> {
    // number of blocks of size >= p is ranks[p-1] - ranks[p]
    let mut sizes = Vec::new();
    let maxp = ranks.len() - 1;
    for p in (1..=maxp).rev() {
        let at_least_p = ranks[p - 1] - ranks[p];
        let at_least_next = if p < maxp { ranks[p] - ranks[p + 1] } else { 0 };
        for _ in 0..at_least_p - at_least_next {
            sizes.push(p);
        }
    }
    sizes
}

fn power_ranks<R: Ring>(m: &Matrix<R>, rank: impl Fn(&Matrix<R>) -> usize) -> Vec<usize> {
    let n = m.rows();
    let mut ranks = vec![n];
    let mut p = Matrix::identity(n);
    while *ranks.last().unwrap() > 0 {
        p = p.mul(m).unwrap();
        let r = rank(&p);
        if r == *ranks.last().unwrap() {
            break;
        }
        ranks.push(r);
    }
    ranks
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CharacteristicSequence {
    pub sequence: Vec<usize>,
    /// Element outside `A^2` whose right multiplication has this Jordan type.
    pub witness: Vec<Rational>,
}

/// Jordan type of `R_x` at a generic `x`, plus a rational witness attaining it.
pub fn characteristic_sequence(a: &Algebra<Rational>) -> Result<CharacteristicSequence> {
    let rep = structure_report(a, None)?;
    if !rep.nilpotent {
        return Err(Error::Precondition("characteristic sequence needs a nilpotent algebra".into()));
    }
    let n = a.dim;
    if rep.power_dims.get(1).copied().unwrap_or(0) == n {
        return Err(Error::Precondition("A \\ A^2 is empty".into()));
    }
    let t = a.product()?;
    let tp = t.map(|c| Poly::constant(c.clone()));
    let x: Vec<Poly> = (0..n).map(Poly::var).collect();
    let rx = tp.slot_operator(0, &[&x]);
    let generic = power_ranks(&rx, |m| m.rank_bareiss());
    let sequence = jordan_type(&generic);
    let a2 = power_filtration(t).get(1).cloned().unwrap_or_else(|| Subspace::zero(n));
    let mut candidates: Vec<Vec<Rational>> = (0..n).map(|i| basis_vector(n, i)).collect();
    candidates.push(vec![Rational::one(); n]);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..64 {
        candidates.push((0..n).map(|_| Rational::integer(rng.gen_range(-9..=9))).collect());
    }
    for c in candidates {
        if a2.contains(&c) {
            continue;
        }
        let ranks = power_ranks(&a.right_mult(&c), |m| m.rank());
        if ranks == generic {
            return Ok(CharacteristicSequence { sequence, witness: c });
        }
    }
    Err(Error::Precondition("no rational witness found for the generic Jordan type".into()))
}

/// First basis tuple whose product is not a multiple of a single basis vector.
pub fn multiplicative_basis_violation<R: Ring>(a: &Algebra<R>) -> Option<(String, Vec<usize>)> {
    for o in &a.ops {
        for (args, out) in o.tensor.entries() {
            if out.len() > 1 {
                return Some((o.name.clone(), args));
            }
        }
    }
    None
}

#[derive(Clone, Debug)]
pub struct StandardEmbedding {
    /// Basis of the span of `ad(x,y)` as matrices.
    pub ad_basis: Vec<Matrix<Rational>>,
    /// Pairs `(i,j)` with `ad_basis[k] = ad(e_i, e_j)`.
    pub ad_pairs: Vec<(usize, usize)>,
    pub algebra: Algebra<Rational>,
    /// Whether the `ad`-part product agrees with the matrix commutator.
    pub commutator_consistent: bool,
}

/// `L + T` with `L = span{ad(x,y)}`, `ad(x,y)z = [x,y,z]`, and product
/// `(ad(x,y),z)(ad(u,v),w) = (ad([x,y,u],v) + ad(u,[x,y,v]) + ad(z,w), [x,y,w] - [u,v,z])`.
pub fn standard_embedding(tern: &Algebra<Rational>) -> Result<StandardEmbedding> {
    let t = tern.main()?;
    if t.arity() != 3 {
        return Err(Error::Precondition("standard embedding needs a ternary algebra".into()));
    }
    let n = t.dim();
    let ad = |x: &[Rational], y: &[Rational]| t.slot_operator(2, &[x, y]);
    let mut e = Echelon::new(n * n);
    let mut ad_basis = Vec::new();
    let mut ad_pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let m = ad(&basis_vector(n, i), &basis_vector(n, j));
            if e.add_dense(m.flat()) {
                ad_basis.push(m);
                ad_pairs.push((i, j));
            }
        }
    }
    let l = ad_basis.len();
    let dim = l + n;
    let coords_matrix = Matrix::from_cols(&ad_basis.iter().map(|m| m.flat().to_vec()).collect::<Vec<_>>());
    let to_l = |m: &Matrix<Rational>| -> Result<Vec<Rational>> {
        if l == 0 {
            return if m.is_zero() { Ok(Vec::new()) } else { Err(Error::Inconsistent) };
        }
        Ok(coords_matrix.as_ref().map_err(|_| Error::Inconsistent)?.solve(m.flat())?.0)
    };
    let mut prod = StructureTensor::zero(dim, 2);
    let mut consistent = true;
    for a in 0..l {
        let (x, y) = (basis_vector(n, ad_pairs[a].0), basis_vector(n, ad_pairs[a].1));
        for b in 0..l {
            let (u, v) = (basis_vector(n, ad_pairs[b].0), basis_vector(n, ad_pairs[b].1));
            let xyu = t.apply(&[&x, &y, &u]);
            let xyv = t.apply(&[&x, &y, &v]);
            let m = ad(&xyu, &v).add(&ad(&u, &xyv));
            if m != ad_basis[a].commutator(&ad_basis[b]) {
                consistent = false;
            }
            let c = to_l(&m)?;
            for (k, cv) in c.iter().enumerate() {
                prod.add_entry(&[a, b], k, cv);
            }
        }
        for w in 0..n {
            let col = ad_basis[a].col(w);
            for (k, cv) in col.iter().enumerate() {
                prod.add_entry(&[a, l + w], l + k, cv);
                prod.add_entry(&[l + w, a], l + k, &cv.neg());
            }
        }
    }
    for z in 0..n {
        for w in 0..n {
            let c = to_l(&ad(&basis_vector(n, z), &basis_vector(n, w)))?;
            for (k, cv) in c.iter().enumerate() {
                prod.add_entry(&[l + z, l + w], k, cv);
            }
        }
    }
    let algebra = Algebra::binary(format!("embedding({})", tern.name), prod);
    Ok(StandardEmbedding { ad_basis, ad_pairs, algebra, commutator_consistent: consistent })
}
