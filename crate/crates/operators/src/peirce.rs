//! Peirce decomposition relative to an idempotent.

use serde::Serialize;
use workbench_core::{Algebra, Error, Field, Matrix, Result, Subspace};
use workbench_identity::check_variety;

/// `A_11, A_12, A_21, A_22` with `A_ij = {x : e x = (2-i) x, x e = (2-j) x}`.
#[derive(Clone, Debug)]
pub struct Peirce<F> {
    pub parts: [Subspace<F>; 4],
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PeirceDims {
    pub a11: usize,
    pub a12: usize,
    pub a21: usize,
    pub a22: usize,
}

impl<F: Field> Peirce<F> {
    pub fn dims(&self) -> PeirceDims {
        let d: Vec<usize> = self.parts.iter().map(|p| p.dim()).collect();
        PeirceDims { a11: d[0], a12: d[1], a21: d[2], a22: d[3] }
    }
    /// Component `(i, j)` with `i, j` in `{1, 2}`.
    pub fn part(&self, i: usize, j: usize) -> &Subspace<F> {
        &self.parts[(i - 1) * 2 + (j - 1)]
    }
}

fn eigenspace<F: Field>(m: &Matrix<F>, lambda: &F) -> Subspace<F> {
    let n = m.rows();
    m.sub(&Matrix::identity(n).scale(lambda)).nullspace()
}

pub fn peirce_decompose<F: Field>(a: &Algebra<F>, e: &[F]) -> Result<Peirce<F>> {
    if e.iter().all(|x| x.is_zero()) {
        return Err(Error::Precondition("the idempotent must be nonzero".into()));
    }
    if a.mul(e, e) != e {
        return Err(Error::Precondition("e is not idempotent".into()));
    }
    if !check_variety(a, "alternative")?.holds {
        return Err(Error::Precondition("Peirce decomposition needs an alternative algebra".into()));
    }
    let l = a.left_mult(e);
    let r = a.right_mult(e);
    let (one, zero) = (F::one(), F::zero());
    let (l1, l0, r1, r0) = (eigenspace(&l, &one), eigenspace(&l, &zero), eigenspace(&r, &one), eigenspace(&r, &zero));
    let parts = [l1.intersect(&r1), l1.intersect(&r0), l0.intersect(&r1), l0.intersect(&r0)];
    let total: usize = parts.iter().map(|p| p.dim()).sum();
    if total != a.dim {
        return Err(Error::Precondition(format!("the Peirce components span only {total} of {} dimensions", a.dim)));
    }
    Ok(Peirce { parts })
}
