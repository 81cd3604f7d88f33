//! Conservativity as a linear system, terminal verdicts, quasi-units and Jacobi elements.
//!
//! For an operation `T` and an element `a` write `[L_a, T](x, y) = a T(x, y) - T(ax, y) - T(x, ay)`.
//! An algebra is conservative when some multiplication `*` satisfies
//! `[L_b, [L_a, mu]] = -[L_{a*b}, mu]` for all `a, b`, and terminal when `a*b = 2/3 ab + 1/3 ba` works.
//! With the other nesting order `[L_a, [L_b, mu]]` the solution `*` is transposed; feasibility is the
//! same but the terminal candidate becomes `2/3 ba + 1/3 ab`.

use serde::Serialize;
use workbench_core::{basis_vector, q, Algebra, Error, Matrix, Rational, Result, Ring, StructureTensor, Subspace};
use workbench_identity::{check_identity, parse_identity, TERMINAL};

use crate::product::alpha_index;

/// `[L_a, T]` for the product `mu`.
pub fn l_bracket(mu: &StructureTensor<Rational>, a: &[Rational], t: &StructureTensor<Rational>) -> StructureTensor<Rational> {
    let n = mu.dim();
    let la = mu.slot_operator(1, &[a]);
    let mut out = StructureTensor::zero(n, 2);
    for i in 0..n {
        let ei = basis_vector(n, i);
        let ai = la.col(i);
        for j in 0..n {
            let ej = basis_vector(n, j);
            let aj = la.col(j);
            let mut v = mu.apply(&[a, &t.get_dense(&[i, j])]);
            let t1 = t.apply(&[&ai, &ej]);
            let t2 = t.apply(&[&ei, &aj]);
            for k in 0..n {
                v[k] = v[k].sub(&t1[k]).sub(&t2[k]);
            }
            out.set_dense(&[i, j], &v);
        }
    }
    out
}

fn flat(t: &StructureTensor<Rational>) -> Vec<Rational> {
    let n = t.dim();
    (0..t.table_len()).flat_map(|f| {
        let mut v = vec![Rational::zero(); n];
        for (k, c) in t.get_flat(f) {
            v[*k] = c.clone();
        }
        v
    }).collect()
}

/// Matrix of `c -> [L_c, mu]`, one column per basis element.
fn derivation_defect_matrix(mu: &StructureTensor<Rational>) -> Matrix<Rational> {
    let n = mu.dim();
    let cols: Vec<Vec<Rational>> = (0..n).map(|k| flat(&l_bracket(mu, &basis_vector(n, k), mu))).collect();
    Matrix::from_cols(&cols).expect("nonempty")
}

fn product_of(a: &Algebra<Rational>) -> Result<&StructureTensor<Rational>> {
    let mu = a.product()?;
    if mu.arity() != 2 {
        return Err(Error::Precondition("needs a binary product".into()));
    }
    Ok(mu)
}

/// `2/3 xy + 1/3 yx`.
pub fn terminal_star(mu: &StructureTensor<Rational>) -> StructureTensor<Rational> {
    let n = mu.dim();
    let mut s = StructureTensor::zero(n, 2);
    for i in 0..n {
        for j in 0..n {
            let xy = mu.get_dense(&[i, j]);
            let yx = mu.get_dense(&[j, i]);
            let v: Vec<Rational> = xy.iter().zip(&yx).map(|(p, r)| p.mul(&q(2, 3)).add(&r.mul(&q(1, 3)))).collect();
            s.set_dense(&[i, j], &v);
        }
    }
    s
}

/// `[L_{e_j}, [L_{e_i}, mu]]`, the left side for `e_i * e_j`.
fn double_bracket(mu: &StructureTensor<Rational>, i: usize, j: usize) -> StructureTensor<Rational> {
    let n = mu.dim();
    l_bracket(mu, &basis_vector(n, j), &l_bracket(mu, &basis_vector(n, i), mu))
}

fn transpose(t: &StructureTensor<Rational>) -> StructureTensor<Rational> {
    let mut o = StructureTensor::zero(t.dim(), 2);
    for (args, vals) in t.entries() {
        for (k, v) in vals {
            o.add_entry(&[args[1], args[0]], *k, v);
        }
    }
    o
}

/// Whether `star` satisfies `[L_b, [L_a, mu]] = -[L_{a*b}, mu]` on all basis pairs.
pub fn satisfies_conservative(a: &Algebra<Rational>, star: &StructureTensor<Rational>) -> Result<bool> {
    let mu = product_of(a)?;
    let n = a.dim;
    for i in 0..n {
        for j in 0..n {
            let lhs = double_bracket(mu, i, j);
            let rhs = l_bracket(mu, &star.get_dense(&[i, j]), mu);
            if !lhs.add(&rhs).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConservativityReport {
    pub algebra: String,
    pub dim: usize,
    pub feasible: bool,
    /// One solution `*`, as `[i][j] -> coordinates of e_i * e_j`.
    pub particular: Option<Vec<Vec<Vec<String>>>>,
    /// Dimension of the affine solution space in the `n^3` unknowns.
    pub solution_dim: Option<usize>,
    pub jacobi_dim: usize,
    /// `2/3 xy + 1/3 yx` solves the system.
    pub terminal: bool,
    /// The terminal identity holds as a polynomial identity.
    pub terminal_identity: bool,
    /// `2/3 xy + 1/3 yx` solves the system with the nesting order `[L_a, [L_b, mu]]`.
    pub terminal_other_order: bool,
}

pub fn conservativity_test(a: &Algebra<Rational>) -> Result<ConservativityReport> {
    let mu = product_of(a)?;
    let n = a.dim;
    let m = derivation_defect_matrix(mu);
    let jacobi = m.nullspace();
    let mut part = Vec::with_capacity(n);
    let mut feasible = true;
    'outer: for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let lhs = double_bracket(mu, i, j);
            let b: Vec<Rational> = flat(&lhs).iter().map(|x| x.neg()).collect();
            match m.solve(&b) {
                Ok((x, _)) => row.push(x.iter().map(|c| c.to_string()).collect()),
                Err(Error::Inconsistent) => {
                    feasible = false;
                    break 'outer;
                }
                Err(e) => return Err(e),
            }
        }
        part.push(row);
    }
    let star = terminal_star(mu);
    let terminal = satisfies_conservative(a, &star)?;
    let terminal_other_order = satisfies_conservative(a, &transpose(&star))?;
    let id = parse_identity(TERMINAL)?;
    let terminal_identity = check_identity(a, &id)?.holds;
    Ok(ConservativityReport {
        algebra: a.name.clone(),
        dim: n,
        feasible,
        particular: feasible.then_some(part),
        solution_dim: feasible.then_some(n * n * jacobi.dim()),
        jacobi_dim: jacobi.dim(),
        terminal,
        terminal_identity,
        terminal_other_order,
    })
}

/// `{a : a(xy) = (ax)y + x(ay)}`.
pub fn jacobi_element_space(a: &Algebra<Rational>) -> Result<Subspace<Rational>> {
    Ok(derivation_defect_matrix(product_of(a)?).nullspace())
}

/// Quasi-units `e(xy) = (ex)y + x(ey) - xy`: an affine space, `None` when empty.
/// Its direction is the space of Jacobi elements.
pub fn quasi_unit_space(a: &Algebra<Rational>) -> Result<Option<(Vec<Rational>, Subspace<Rational>)>> {
    let mu = product_of(a)?;
    let b: Vec<Rational> = flat(mu).iter().map(|x| x.neg()).collect();
    match derivation_defect_matrix(mu).solve(&b) {
        Ok(s) => Ok(Some(s)),
        Err(Error::Inconsistent) => Ok(None),
        Err(e) => Err(e),
    }
}

/// The multiplication `A * B (x, y) = -B(u, A(x, y))` on U(n), `u = v_{u_index}`.
pub fn u_candidate_star(n: usize, u_index: usize) -> StructureTensor<Rational> {
    let d = n * n * n;
    let split = |p: usize| (p / (n * n), (p / n) % n, p % n);
    let mut t = StructureTensor::zero(d, 2);
    for p in 0..d {
        let (i1, j1, k1) = split(p);
        for qd in 0..d {
            let (i2, j2, k2) = split(qd);
            // B(u, A(x, y)) is nonzero only for x = v_i1, y = v_j1, where it is B(u, v_k1).
            if i2 == u_index && j2 == k1 {
                t.add_entry(&[p, qd], alpha_index(n, i1, j1, k2), &Rational::integer(-1));
            }
        }
    }
    t
}
