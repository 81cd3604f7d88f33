//! Derivations, delta-derivations, centroid, generalized and quasi-derivations, f-Leibniz
//! derivations and commuting maps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use workbench_core::structure::delta_derivation_space;
use workbench_core::{basis_vector, Algebra, Error, Field, Matrix, Poly, Rational, Result, Ring, StructureTensor, Subspace};

use crate::space::{flatten, OperatorSpace, Side, SystemBuilder, TupleOperatorSpace};

fn pick_op<'a, F: Ring>(a: &'a Algebra<F>, op: Option<&str>) -> Result<&'a StructureTensor<F>> {
    match op {
        Some(name) => a.op_result(name),
        None => a.main(),
    }
}

/// `{D : D(mu(x..)) = delta * sum_i mu(.., D x_i, ..)}` on the named (or main) operation.
pub fn derivation_space<F: Field>(a: &Algebra<F>, delta: &F, op: Option<&str>) -> Result<OperatorSpace<F>> {
    let t = pick_op(a, op)?;
    if t.arity() > 2 && !delta.is_one() {
        return Err(Error::Precondition(format!("delta = {delta} is only supported for binary operations")));
    }
    let tag = if delta.is_one() { "der".to_string() } else { format!("delta-der({delta})") };
    Ok(OperatorSpace::new(a.dim, tag, delta_derivation_space(t, delta)))
}

/// `{phi : phi(mu(x..)) = mu(.., phi(x_i), ..)}` for every slot `i`.
pub fn centroid<F: Field>(a: &Algebra<F>, op: Option<&str>) -> Result<OperatorSpace<F>> {
    let t = pick_op(a, op)?;
    let mut b = SystemBuilder::new(a.dim, 1);
    for slot in 0..t.arity() {
        b.add_relation(t, &[(F::one(), Side::Outer { mat: 0 }), (F::one().neg(), Side::Slot { slot, mat: 0 })]);
    }
    Ok(OperatorSpace::new(a.dim, "centroid", b.solve()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GenMode {
    /// `(D_0, .., D_m)` with `sum_i mu(.., D_{i-1} x_i, ..) = D_m(mu(x..))`.
    Full,
    /// `(d, f)` with `sum_i mu(.., d x_i, ..) = f(mu(x..))`.
    Quasi,
}

fn stack<F: Field>(parts: &[Vec<F>]) -> Vec<F> {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}

/// Generalized (full) or quasi-derivations with the trivial subspace built from derivations
/// and the centroid.
pub fn generalized_derivation_space<F: Field>(a: &Algebra<F>, mode: GenMode, op: Option<&str>) -> Result<TupleOperatorSpace<F>> {
    let t = pick_op(a, op)?;
    let m = t.arity();
    let n = a.dim;
    let nn = n * n;
    let der = delta_derivation_space(t, &F::one());
    let cent = {
        let mut b = SystemBuilder::new(n, 1);
        for slot in 0..m {
            b.add_relation(t, &[(F::one(), Side::Outer { mat: 0 }), (F::one().neg(), Side::Slot { slot, mat: 0 })]);
        }
        b.solve()
    };
    let zero = vec![F::zero(); nn];
    let (mats, terms, trivial_vecs, tag) = match mode {
        GenMode::Full => {
            let mut terms: Vec<(F, Side)> = (0..m).map(|i| (F::one(), Side::Slot { slot: i, mat: i })).collect();
            terms.push((F::one().neg(), Side::Outer { mat: m }));
            let mut triv = Vec::new();
            for d in der.basis() {
                triv.push(stack(&vec![d.clone(); m + 1]));
            }
            // (phi_1, .., phi_m, sum phi_i) with each phi_i central
            for i in 0..m {
                for c in cent.basis() {
                    let mut parts = vec![zero.clone(); m + 1];
                    parts[i] = c.clone();
                    parts[m] = c.clone();
                    triv.push(stack(&parts));
                }
            }
            (m + 1, terms, triv, "generalized")
        }
        GenMode::Quasi => {
            let mut terms: Vec<(F, Side)> = (0..m).map(|i| (F::one(), Side::Slot { slot: i, mat: 0 })).collect();
            terms.push((F::one().neg(), Side::Outer { mat: 1 }));
            let mut triv = Vec::new();
            for d in der.basis() {
                triv.push(stack(&[d.clone(), d.clone()]));
            }
            let mf = F::from_i64(m as i64);
            for c in cent.basis() {
                let scaled: Vec<F> = c.iter().map(|x| x.mul(&mf)).collect();
                triv.push(stack(&[c.clone(), scaled]));
            }
            (2, terms, triv, "quasi")
        }
    };
    let mut b = SystemBuilder::new(n, mats);
    b.add_relation(t, &terms);
    let space = b.solve();
    let trivial = Subspace::from_vectors(mats * nn, &trivial_vecs);
    debug_assert!(trivial.is_subspace_of(&space));
    Ok(TupleOperatorSpace { n, m: mats, tag: tag.into(), space, trivial })
}

/// `{phi : [phi(x), y] + [phi(y), x] = 0}` with `[a, b] = ab - ba`.
pub fn commuting_map_space<F: Field>(a: &Algebra<F>) -> Result<OperatorSpace<F>> {
    if F::characteristic() == 2 {
        return Err(Error::Unsupported("commuting maps are computed in polarized form, which needs characteristic other than 2".into()));
    }
    let t = a.product()?;
    let n = a.dim;
    let comm = |i: usize, j: usize| -> Vec<F> {
        let mut v = t.get_dense(&[i, j]);
        for (k, c) in t.get(&[j, i]) {
            v[*k] = v[*k].sub(c);
        }
        v
    };
    let table: Vec<Vec<Vec<F>>> = (0..n).map(|s| (0..n).map(|j| comm(s, j)).collect()).collect();
    let mut b = SystemBuilder::new(n, 1);
    for i in 0..n {
        for j in i..n {
            // sum_s phi[s][i] [e_s, e_j] + phi[s][j] [e_s, e_i]
            for r in 0..n {
                let mut row = Vec::new();
                for s in 0..n {
                    let c1 = &table[s][j][r];
                    if !c1.is_zero() {
                        row.push((s * n + i, c1.clone()));
                    }
                    let c2 = &table[s][i][r];
                    if !c2.is_zero() {
                        row.push((s * n + j, c2.clone()));
                    }
                }
                merge_add(&mut row);
                b.add_equation(row);
            }
        }
    }
    Ok(OperatorSpace::new(n, "commuting", b.solve()))
}

fn merge_add<F: Field>(row: &mut Vec<(usize, F)>) {
    row.sort_by_key(|x| x.0);
    let mut out: Vec<(usize, F)> = Vec::with_capacity(row.len());
    for (c, v) in row.drain(..) {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv = lv.add(&v),
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    *row = out;
}

/// Full binary bracketing of leaves `0..k` in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bracketing {
    Leaf(usize),
    Node(Box<Bracketing>, Box<Bracketing>),
}

impl Bracketing {
    fn all_from(lo: usize, hi: usize) -> Vec<Bracketing> {
        if hi - lo == 1 {
            return vec![Bracketing::Leaf(lo)];
        }
        let mut out = Vec::new();
        for mid in lo + 1..hi {
            for l in Self::all_from(lo, mid) {
                for r in Self::all_from(mid, hi) {
                    out.push(Bracketing::Node(Box::new(l.clone()), Box::new(r)));
                }
            }
        }
        out
    }
    /// All Catalan(k-1) bracketings.
    pub fn all(k: usize) -> Vec<Bracketing> {
        Self::all_from(0, k)
    }
    /// `((x_1 x_2) x_3) .. x_k`.
    pub fn left(k: usize) -> Bracketing {
        (1..k).fold(Bracketing::Leaf(0), |acc, i| Bracketing::Node(Box::new(acc), Box::new(Bracketing::Leaf(i))))
    }
    /// `x_1 (x_2 (.. x_k))`.
    pub fn right(k: usize) -> Bracketing {
        (0..k - 1).rev().fold(Bracketing::Leaf(k - 1), |acc, i| Bracketing::Node(Box::new(Bracketing::Leaf(i)), Box::new(acc)))
    }
    fn eval<F: Field>(&self, t: &StructureTensor<F>, xs: &[Vec<F>]) -> Vec<F> {
        match self {
            Bracketing::Leaf(i) => xs[*i].clone(),
            Bracketing::Node(l, r) => t.apply(&[&l.eval(t, xs), &r.eval(t, xs)]),
        }
    }
    /// The k-ary operation obtained by composing a binary one along this bracketing.
    pub fn compose<F: Field>(&self, t: &StructureTensor<F>, k: usize) -> StructureTensor<F> {
        let n = t.dim();
        let mut out = StructureTensor::zero(n, k);
        for flat in 0..out.table_len() {
            let args = out.unindex(flat);
            let xs: Vec<Vec<F>> = args.iter().map(|&i| basis_vector(n, i)).collect();
            out.set_dense(&args, &self.eval(t, &xs));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Arrangement {
    Left,
    Right,
    All,
}

impl std::str::FromStr for Arrangement {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Arrangement::Left),
            "right" => Ok(Arrangement::Right),
            "all" => Ok(Arrangement::All),
            _ => Err(Error::InvalidParam(format!("arrangement must be left, right or all, not `{s}`"))),
        }
    }
}

pub const DEFAULT_MAX_LEIBNIZ_ORDER: usize = 5;

#[derive(Clone, Debug)]
pub struct LeibnizReport<F> {
    pub space: OperatorSpace<F>,
    pub invertible_exists: bool,
    /// An invertible element of the space when one was found.
    pub invertible_witness: Option<Matrix<F>>,
}

/// Maps `d` with `d([x_1..x_k]_f) = sum_i [x_1, .., d(x_i), .., x_k]_f` for the chosen bracketings.
pub fn leibniz_derivation_space(a: &Algebra<Rational>, k: usize, arr: Arrangement, max_k: usize) -> Result<LeibnizReport<Rational>> {
    if k < 2 {
        return Err(Error::InvalidParam("order must be at least 2".into()));
    }
    if k > max_k {
        return Err(Error::Unsupported(format!("order {k} exceeds the limit {max_k}")));
    }
    let t = a.product()?;
    let shapes = match arr {
        Arrangement::Left => vec![Bracketing::left(k)],
        Arrangement::Right => vec![Bracketing::right(k)],
        Arrangement::All => Bracketing::all(k),
    };
    let n = a.dim;
    let mut space = Subspace::full(n * n);
    for s in &shapes {
        let comp = s.compose(t, k);
        space = space.intersect(&delta_derivation_space(&comp, &Rational::one()));
    }
    let space = OperatorSpace::new(n, format!("leibder({k},{arr:?})").to_lowercase(), space);
    let (invertible_exists, invertible_witness) = generic_invertible(&space)?;
    Ok(LeibnizReport { space, invertible_exists, invertible_witness })
}

/// Whether a generic combination of the basis has nonzero determinant: random points first,
/// then an exact symbolic determinant when every sample is singular.
pub fn generic_invertible(space: &OperatorSpace<Rational>) -> Result<(bool, Option<Matrix<Rational>>)> {
    let ms = space.matrices();
    let n = space.n;
    if ms.is_empty() {
        return Ok((false, None));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x1e1b);
    for _ in 0..8 {
        let mut acc = Matrix::zeros(n, n);
        for m in &ms {
            acc = acc.add(&m.scale(&Rational::integer(rng.gen_range(-50..=50))));
        }
        if !acc.det()?.is_zero() {
            return Ok((true, Some(acc)));
        }
    }
    let mut g: Matrix<Poly> = Matrix::zeros(n, n);
    for (v, m) in ms.iter().enumerate() {
        g = g.add(&m.map(|c| Poly::var(v).scale(c)));
    }
    Ok((!g.det_bareiss()?.is_zero(), None))
}

/// Flattened identity matrix.
pub fn identity_flat<F: Field>(n: usize) -> Vec<F> {
    flatten(&Matrix::identity(n))
}
