//! Symmetrized and commutator algebras.

use workbench_core::{Algebra, Operation, Result, Ring, StructureTensor};

fn transposed<R: Ring>(t: &StructureTensor<R>) -> StructureTensor<R> {
    let mut out = StructureTensor::zero(t.dim(), 2);
    for (args, vals) in t.entries() {
        for (k, c) in vals {
            out.add_entry(&[args[1], args[0]], *k, c);
        }
    }
    out
}

fn combine<R: Ring>(a: &Algebra<R>, sign: i64, tag: &str) -> Result<Algebra<R>> {
    let t = a.product()?;
    let tt = transposed(t).scale(&R::from_i64(sign));
    let mut b = Algebra::new(format!("{tag}({})", a.name), a.dim);
    b.ops.push(Operation { name: "mul".into(), tensor: t.add(&tt) });
    Ok(b)
}

/// `x o y = xy + yx`, without a factor 1/2.
pub fn plus<R: Ring>(a: &Algebra<R>) -> Result<Algebra<R>> {
    combine(a, 1, "plus")
}

/// `[x, y] = xy - yx`.
pub fn minus<R: Ring>(a: &Algebra<R>) -> Result<Algebra<R>> {
    combine(a, -1, "minus")
}
