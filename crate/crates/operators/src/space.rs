//! Spaces of linear maps and of tuples of linear maps, and the linear-system builder behind them.

use std::collections::BTreeMap;

use serde::Serialize;
use workbench_core::{Echelon, Field, Matrix, StructureTensor, Subspace};

/// Subspace of `End(A)`; matrices are flattened row-major (`D e_j = sum_i D[i][j] e_i`).
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorSpace<F> {
    pub n: usize,
    pub tag: String,
    pub space: Subspace<F>,
}

pub fn flatten<F: Field>(m: &Matrix<F>) -> Vec<F> {
    m.flat().to_vec()
}

pub fn unflatten<F: Field>(n: usize, v: &[F]) -> Matrix<F> {
    Matrix::from_flat(n, n, v.to_vec())
}

impl<F: Field> OperatorSpace<F> {
    pub fn new(n: usize, tag: impl Into<String>, space: Subspace<F>) -> Self {
        OperatorSpace { n, tag: tag.into(), space }
    }
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
    pub fn matrices(&self) -> Vec<Matrix<F>> {
        self.space.basis().iter().map(|v| unflatten(self.n, v)).collect()
    }
    pub fn contains(&self, m: &Matrix<F>) -> bool {
        self.space.contains(m.flat())
    }
    pub fn is_subspace_of(&self, o: &Self) -> bool {
        self.space.is_subspace_of(&o.space)
    }
    /// Whether the commutator of any two basis elements stays in the space.
    pub fn is_lie_closed(&self) -> bool {
        let ms = self.matrices();
        ms.iter().enumerate().all(|(i, a)| ms[i + 1..].iter().all(|b| self.contains(&a.commutator(b))))
    }
    /// `span{[A, B] : A, B in the space}`.
    pub fn commutator_span(&self) -> Subspace<F> {
        let ms = self.matrices();
        let mut vs = Vec::new();
        for i in 0..ms.len() {
            for j in i + 1..ms.len() {
                vs.push(flatten(&ms[i].commutator(&ms[j])));
            }
        }
        Subspace::from_vectors(self.n * self.n, &vs)
    }
    /// `{P D P^-1}`: the space for the algebra after `change_basis(P)`.
    pub fn conjugate(&self, p: &Matrix<F>) -> workbench_core::Result<Self> {
        let pi = p.inverse()?;
        let vs: Vec<Vec<F>> = self.matrices().iter().map(|d| Ok(flatten(&p.mul(d)?.mul(&pi)?))).collect::<workbench_core::Result<_>>()?;
        Ok(OperatorSpace::new(self.n, self.tag.clone(), Subspace::from_vectors(self.n * self.n, &vs)))
    }
    pub fn report(&self) -> SpaceReport {
        SpaceReport { tag: self.tag.clone(), n: self.n, dim: self.dim(), basis: self.matrices().iter().map(matrix_strings).collect() }
    }
}

pub fn matrix_strings<F: Field>(m: &Matrix<F>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SpaceReport {
    pub tag: String,
    pub n: usize,
    pub dim: usize,
    pub basis: Vec<Vec<Vec<String>>>,
}

/// Subspace of `End(A)^m` with a designated trivial part.
#[derive(Clone, Debug)]
pub struct TupleOperatorSpace<F> {
    pub n: usize,
    pub m: usize,
    pub tag: String,
    pub space: Subspace<F>,
    pub trivial: Subspace<F>,
}

impl<F: Field> TupleOperatorSpace<F> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
    pub fn quotient_dim(&self) -> usize {
        self.space.dim() - self.trivial.dim()
    }
    /// Image of coordinate `i` (0-based).
    pub fn projection(&self, i: usize) -> Subspace<F> {
        let nn = self.n * self.n;
        let vs: Vec<Vec<F>> = self.space.basis().iter().map(|v| v[i * nn..(i + 1) * nn].to_vec()).collect();
        Subspace::from_vectors(nn, &vs)
    }
    /// Coordinate-`i` image of the trivial part.
    pub fn trivial_projection(&self, i: usize) -> Subspace<F> {
        let nn = self.n * self.n;
        let vs: Vec<Vec<F>> = self.trivial.basis().iter().map(|v| v[i * nn..(i + 1) * nn].to_vec()).collect();
        Subspace::from_vectors(nn, &vs)
    }
}

/// One side of a relation: either `c * M(mu(x))` or `c * mu(.., M(x_slot), ..)`.
#[derive(Clone, Copy, Debug)]
pub enum Side {
    Outer { mat: usize },
    Slot { slot: usize, mat: usize },
}

/// Accumulates the linear equations `sum_terms c * side = 0` over all basis tuples, in the
/// entries of `mats` unknown `n x n` matrices.
pub struct SystemBuilder<F> {
    n: usize,
    pub mats: usize,
    echelon: Echelon<F>,
}

impl<F: Field> SystemBuilder<F> {
    pub fn new(n: usize, mats: usize) -> Self {
        SystemBuilder { n, mats, echelon: Echelon::new(mats * n * n) }
    }

    pub fn add_relation(&mut self, t: &StructureTensor<F>, terms: &[(F, Side)]) {
        let n = self.n;
        let nn = n * n;
        for flat in 0..t.table_len() {
            let args = t.unindex(flat);
            let mut rows: Vec<BTreeMap<usize, F>> = vec![BTreeMap::new(); n];
            for (c, side) in terms {
                match *side {
                    Side::Outer { mat } => {
                        for (s, v) in t.get_flat(flat) {
                            let cv = c.mul(v);
                            for (r, row) in rows.iter_mut().enumerate() {
                                let e = row.entry(mat * nn + r * n + s).or_insert_with(F::zero);
                                *e = e.add(&cv);
                            }
                        }
                    }
                    Side::Slot { slot, mat } => {
                        let mut a = args.clone();
                        for j in 0..n {
                            a[slot] = j;
                            for (r, v) in t.get(&a) {
                                let e = rows[*r].entry(mat * nn + j * n + args[slot]).or_insert_with(F::zero);
                                *e = e.add(&c.mul(v));
                            }
                        }
                    }
                }
            }
            for row in rows {
                if self.echelon.is_full() {
                    return;
                }
                self.echelon.add_sparse(row.into_iter().filter(|(_, v)| !v.is_zero()).collect());
            }
        }
    }

    /// Adds a raw equation on the flattened unknowns.
    pub fn add_equation(&mut self, row: Vec<(usize, F)>) {
        self.echelon.add_sparse(row);
    }

    pub fn solve(&self) -> Subspace<F> {
        self.echelon.nullspace()
    }
}
