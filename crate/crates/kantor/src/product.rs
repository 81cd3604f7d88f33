//! The Kantor product of multiplications and the algebras U(n).

use workbench_core::{catalog, Algebra, Error, Field, Matrix, Rational, Result, Ring, StructureTensor};

/// `[[A, B]](x, y) = A(u, B(x, y)) - B(A(u, x), y) - B(x, A(u, y))`.
pub fn kantor_product<F: Field>(a: &StructureTensor<F>, b: &StructureTensor<F>, u: &[F]) -> Result<StructureTensor<F>> {
    let n = a.dim();
    if b.dim() != n || u.len() != n || a.arity() != 2 || b.arity() != 2 {
        return Err(Error::Dimension("Kantor product needs two binary operations and u on the same space".into()));
    }
    if u.iter().all(|c| c.is_zero()) {
        return Err(Error::Precondition("u must be nonzero".into()));
    }
    let lu = a.slot_operator(1, &[u]);
    let mut out = StructureTensor::zero(n, 2);
    for i in 0..n {
        for j in 0..n {
            let bij = b.get_dense(&[i, j]);
            let mut v = a.apply(&[u, &bij]);
            let uxi = lu.col(i);
            let uyj = lu.col(j);
            let ej: Vec<F> = workbench_core::basis_vector(n, j);
            let ei: Vec<F> = workbench_core::basis_vector(n, i);
            let t1 = b.apply(&[&uxi, &ej]);
            let t2 = b.apply(&[&ei, &uyj]);
            for k in 0..n {
                v[k] = v[k].sub(&t1[k]).sub(&t2[k]);
            }
            out.set_dense(&[i, j], &v);
        }
    }
    Ok(out)
}

/// Kantor square of the operation `op` (default: the binary product).
pub fn kantor_square<F: Field>(a: &Algebra<F>, op: Option<&str>, u: &[F]) -> Result<Algebra<F>> {
    let t = match op {
        Some(name) => a.op_result(name)?,
        None => a.product()?,
    };
    Ok(Algebra::binary(format!("kantor-square({})", a.name), kantor_product(t, t, u)?))
}

/// Index of the basis multiplication `alpha_{ij}^k` (`alpha_{ij}^k(v_i, v_j) = v_k`), 0-based.
pub fn alpha_index(n: usize, i: usize, j: usize, k: usize) -> usize {
    (i * n + j) * n + k
}

fn alpha(n: usize, idx: usize) -> StructureTensor<Rational> {
    let (ij, k) = (idx / n, idx % n);
    let mut t = StructureTensor::zero(n, 2);
    t.add_entry(&[ij / n, ij % n], k, &Rational::one());
    t
}

/// U(n) in the basis of the `alpha_{ij}^k`, with product the Kantor product for `u = v_{u_index}`.
pub fn build_u(n: usize, u_index: usize) -> Result<Algebra<Rational>> {
    if n == 0 || u_index >= n {
        return Err(Error::InvalidParam(format!("U({n}): u index {u_index} out of range")));
    }
    let d = n * n * n;
    let u = workbench_core::basis_vector(n, u_index);
    let basis: Vec<StructureTensor<Rational>> = (0..d).map(|i| alpha(n, i)).collect();
    let mut t = StructureTensor::zero(d, 2);
    for p in 0..d {
        for q in 0..d {
            let c = kantor_product(&basis[p], &basis[q], &u)?;
            for (args, vals) in c.entries() {
                for (k, v) in vals {
                    t.add_entry(&[p, q], alpha_index(n, args[0], args[1], *k), v);
                }
            }
        }
    }
    Ok(Algebra::binary(format!("U({n})"), t))
}

/// `e_1..e_8` in alpha coordinates (columns of the change of basis).
pub fn u2_e_vectors() -> Vec<Vec<Rational>> {
    let a = |i: usize, j: usize, k: usize| alpha_index(2, i - 1, j - 1, k - 1);
    let spec: [&[(usize, i64)]; 8] = [
        &[(a(1, 1, 1), 1), (a(1, 2, 2), -1), (a(2, 1, 2), -1)],
        &[(a(1, 1, 2), 1)],
        &[(a(2, 2, 2), 1), (a(1, 2, 1), -1), (a(2, 1, 1), -1)],
        &[(a(2, 2, 1), 1)],
        &[(a(1, 1, 1), 2), (a(1, 2, 2), 1), (a(2, 1, 2), 1)],
        &[(a(2, 2, 2), 2), (a(1, 2, 1), 1), (a(2, 1, 1), 1)],
        &[(a(1, 2, 1), 1), (a(2, 1, 1), -1)],
        &[(a(1, 2, 2), 1), (a(2, 1, 2), -1)],
    ];
    spec.iter()
        .map(|terms| {
            let mut v = vec![Rational::zero(); 8];
            for &(i, c) in *terms {
                v[i] = Rational::integer(c);
            }
            v
        })
        .collect()
}

/// Multiplication table of U(2) in the e-basis: `U2E_TABLE[i][j] = (c, k)` means
/// `e_{i+1} e_{j+1} = c e_k` (`c = 0` for zero).
pub const U2E_TABLE: [[(i64, usize); 8]; 8] = [
    [(-1, 1), (-3, 2), (1, 3), (3, 4), (-1, 5), (1, 6), (1, 7), (-1, 8)],
    [(3, 2), (0, 0), (2, 1), (1, 3), (0, 0), (-1, 5), (1, 8), (0, 0)],
    [(-2, 3), (-1, 1), (-3, 4), (0, 0), (1, 6), (0, 0), (0, 0), (-1, 7)],
    [(0, 0); 8],
    [(-2, 1), (-3, 2), (-1, 3), (0, 0), (-2, 5), (-1, 6), (-1, 7), (-2, 8)],
    [(2, 3), (1, 1), (3, 4), (0, 0), (-1, 6), (0, 0), (0, 0), (1, 7)],
    [(2, 3), (1, 1), (3, 4), (0, 0), (-1, 6), (0, 0), (0, 0), (1, 7)],
    [(0, 0), (1, 2), (-1, 3), (-2, 4), (0, 0), (-1, 6), (-1, 7), (0, 0)],
];

pub fn u2e_table_tensor() -> StructureTensor<Rational> {
    let mut t = StructureTensor::zero(8, 2);
    for (i, row) in U2E_TABLE.iter().enumerate() {
        for (j, &(c, k)) in row.iter().enumerate() {
            if c != 0 {
                t.add_entry(&[i, j], k - 1, &Rational::integer(c));
            }
        }
    }
    t
}

/// U(2) in the e-basis, for the first `u = v_1, v_2` that reproduces [`U2E_TABLE`].
/// Returns the algebra and the 0-based index of `u`.
pub fn u2_e_basis() -> Result<(Algebra<Rational>, usize)> {
    let s = Matrix::from_cols(&u2_e_vectors())?;
    let target = u2e_table_tensor();
    for ui in 0..2 {
        let u2 = build_u(2, ui)?;
        let mut e = u2.in_basis(&s)?;
        if e.product()? == &target {
            e.name = "U2e".into();
            return Ok((e, ui));
        }
    }
    Err(Error::Inconsistent)
}

/// `W_2 = span{e_1..e_6}` and `S_2 = span{e_1..e_4}` as subalgebras of U2e.
pub fn u2_subalgebra(k: usize) -> Result<Algebra<Rational>> {
    let (u2e, _) = u2_e_basis()?;
    let basis: Vec<Vec<Rational>> = (0..k).map(|i| workbench_core::basis_vector(8, i)).collect();
    let mut s = u2e.subalgebra(&basis)?;
    s.name = match k {
        6 => "W2".into(),
        4 => "S2".into(),
        _ => format!("U2e[1..{k}]"),
    };
    Ok(s)
}

/// Core catalog plus `U2e`, `W2`, `S2` and `U(n)`.
pub fn catalog_get(spec: &str) -> Result<Algebra<Rational>> {
    let (name, args) = catalog::parse_spec(spec)?;
    match name.as_str() {
        "U2e" => Ok(u2_e_basis()?.0),
        "W2" => u2_subalgebra(6),
        "S2" => u2_subalgebra(4),
        "U" => {
            let n = args.first().and_then(|a| a.to_string().parse::<usize>().ok()).ok_or_else(|| Error::InvalidParam("U(n)".into()))?;
            build_u(n, 0)
        }
        _ => catalog::get(&name, &args),
    }
}

pub const EXTRA_NAMES: &[&str] = &["U2e", "W2", "S2", "U(n)"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unital_commutative_square_is_negated() {
        // Q[x]/(x^2) with unit e0
        let mut t = StructureTensor::zero(2, 2);
        t.add_entry(&[0, 0], 0, &Rational::one());
        t.add_entry(&[0, 1], 1, &Rational::one());
        t.add_entry(&[1, 0], 1, &Rational::one());
        let a = Algebra::binary("dual", t.clone());
        let sq = kantor_square(&a, None, &workbench_core::basis_vector(2, 0)).unwrap();
        assert_eq!(sq.product().unwrap(), &t.scale(&Rational::integer(-1)));
    }

    #[test]
    fn u2_e_basis_examples() {
        let (e, _) = u2_e_basis().unwrap();
        let b = |i: usize| workbench_core::basis_vector::<Rational>(8, i - 1);
        assert_eq!(e.mul(&b(2), &b(3)), b(1).iter().map(|x| x.mul(&Rational::integer(2))).collect::<Vec<_>>());
        assert_eq!(e.mul(&b(1), &b(1)), b(1).iter().map(|x| x.neg()).collect::<Vec<_>>());
        for j in 1..=8 {
            assert!(e.mul(&b(4), &b(j)).iter().all(|x| x.is_zero()));
        }
    }
}
