//! Built-in algebras, addressed as `name(arg, ...)`.

use crate::algebra::{basis_vector, Algebra};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Rational, Ring};
use crate::tensor::StructureTensor;

type T = StructureTensor<Rational>;

fn r(v: i64) -> Rational {
    Rational::integer(v)
}

pub const NAMES: &[&str] = &[
    "abelian(n)",
    "NF(n)",
    "filiform1p(n,theta)",
    "R(n1,...,nk)",
    "R-printed(n1,...,nk)",
    "sl2",
    "heis3",
    "matrix(n)",
    "uppertri(n)",
    "quaternions",
    "octonions",
    "M7",
    "M8",
    "ternaryJordan(n[,d1,...,dn])",
    "ternaryCD2",
    "ternaryCD3",
    "A_n(n)",
    "D(d)",
    "A_alpha(n,alpha)",
    "tp4",
    "tp4-printed",
    "transposed2",
];

/// Splits `name(a, b, ...)` into the name and its rational arguments.
pub fn parse_spec(spec: &str) -> Result<(String, Vec<Rational>)> {
    let spec = spec.trim();
    match spec.find('(') {
        None => Ok((spec.to_string(), Vec::new())),
        Some(p) => {
            if !spec.ends_with(')') {
                return Err(Error::Parse(format!("missing `)` in `{spec}`")));
            }
            let name = spec[..p].trim().to_string();
            let inner = &spec[p + 1..spec.len() - 1];
            let args = if inner.trim().is_empty() {
                Vec::new()
            } else {
                inner.split(',').map(|s| s.trim().parse::<Rational>()).collect::<Result<_>>()?
            };
            Ok((name, args))
        }
    }
}

pub fn get_spec(spec: &str) -> Result<Algebra<Rational>> {
    let (name, args) = parse_spec(spec)?;
    get(&name, &args)
}

fn int_arg(name: &str, args: &[Rational], i: usize, min: i64) -> Result<usize> {
    let a = args.get(i).ok_or_else(|| Error::InvalidParam(format!("{name}: missing argument {}", i + 1)))?;
    if !a.is_integer() {
        return Err(Error::InvalidParam(format!("{name}: argument {} must be an integer", i + 1)));
    }
    let v = a.numer().to_string().parse::<i64>().map_err(|_| Error::InvalidParam(format!("{name}: argument too large")))?;
    if v < min {
        return Err(Error::InvalidParam(format!("{name}: argument {} must be at least {min}", i + 1)));
    }
    Ok(v as usize)
}

fn arity_check(name: &str, args: &[Rational], n: usize) -> Result<()> {
    if args.len() != n {
        return Err(Error::InvalidParam(format!("{name}: expected {n} arguments, got {}", args.len())));
    }
    Ok(())
}

pub fn get(name: &str, args: &[Rational]) -> Result<Algebra<Rational>> {
    match name {
        "abelian" => {
            arity_check(name, args, 1)?;
            Ok(abelian(int_arg(name, args, 0, 1)?))
        }
        "NF" => {
            arity_check(name, args, 1)?;
            Ok(null_filiform(int_arg(name, args, 0, 1)?))
        }
        "filiform1p" => {
            arity_check(name, args, 2)?;
            filiform1p(int_arg(name, args, 0, 3)?, args[1].clone())
        }
        "R" | "R-printed" => {
            if args.is_empty() {
                return Err(Error::InvalidParam("R: need at least one block size".into()));
            }
            let ns = (0..args.len()).map(|i| int_arg(name, args, i, 1)).collect::<Result<Vec<_>>>()?;
            solvable_r(&ns, name == "R-printed")
        }
        "sl2" => Ok(sl2()),
        "heis3" => Ok(heis3()),
        "matrix" => {
            arity_check(name, args, 1)?;
            Ok(matrix_algebra(int_arg(name, args, 0, 1)?))
        }
        "uppertri" => {
            arity_check(name, args, 1)?;
            Ok(upper_triangular(int_arg(name, args, 0, 1)?))
        }
        "quaternions" => Ok(cayley_dickson(2)),
        "octonions" => Ok(cayley_dickson(3)),
        "M7" => Ok(m7()),
        "M8" => Ok(m8()),
        "ternaryJordan" => {
            let n = int_arg(name, args, 0, 1)?;
            let form = if args.len() == 1 {
                Matrix::identity(n)
            } else if args.len() == n + 1 {
                Matrix::diag(&args[1..])
            } else {
                return Err(Error::InvalidParam("ternaryJordan: give n and optionally n diagonal form entries".into()));
            };
            ternary_jordan(&form)
        }
        "ternaryCD2" => Ok(ternary_cd(2)),
        "ternaryCD3" => Ok(ternary_cd(3)),
        "A_n" => {
            arity_check(name, args, 1)?;
            Ok(filippov_a(int_arg(name, args, 0, 2)?))
        }
        "D" => {
            arity_check(name, args, 1)?;
            Ok(filippov_d(int_arg(name, args, 0, 3)?))
        }
        "A_alpha" => {
            arity_check(name, args, 2)?;
            Ok(one_dim_nary(int_arg(name, args, 0, 2)?, args[1].clone()))
        }
        "tp4" => Ok(tp4()),
        "tp4-printed" => Ok(tp4_printed()),
        "transposed2" => Ok(transposed2()),
        _ => Err(Error::UnknownAlgebra(name.to_string())),
    }
}

pub fn abelian(n: usize) -> Algebra<Rational> {
    Algebra::binary(format!("abelian({n})"), T::zero(n, 2))
}

/// `e_i e_0 = e_{i+1}`.
pub fn null_filiform(n: usize) -> Algebra<Rational> {
    let mut t = T::zero(n, 2);
    for i in 0..n.saturating_sub(1) {
        t.add_entry(&[i, 0], i + 1, &r(1));
    }
    Algebra::binary(format!("NF({n})"), t)
}

/// `e_0 e_1 = theta e_{n-1}`, `e_i e_0 = e_{i+1}` for `1 <= i <= n-2`.
pub fn filiform1p(n: usize, theta: Rational) -> Result<Algebra<Rational>> {
    if n < 3 {
        return Err(Error::InvalidParam("filiform1p needs n >= 3".into()));
    }
    let mut t = T::zero(n, 2);
    t.add_entry(&[0, 1], n - 1, &theta);
    for i in 1..n - 1 {
        t.add_entry(&[i, 0], i + 1, &r(1));
    }
    Ok(Algebra::binary(format!("filiform1p({n},{theta})"), t))
}

fn anti(t: &mut T, a: usize, b: usize, k: usize, c: &Rational) {
    t.add_entry(&[a, b], k, c);
    t.add_entry(&[b, a], k, &c.neg());
}

/// Solvable Leibniz algebra on `e_1..e_{n+1}, h, x_1..x_{k+1}` built from block sizes
/// `n_1 >= ... >= n_k`. With `printed_ranges`, the `x_1` and `x_{j+2}` actions on later
/// blocks stop one short of the block top; otherwise they cover the whole block.
pub fn solvable_r(ns: &[usize], printed_ranges: bool) -> Result<Algebra<Rational>> {
    if ns.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidParam("R: block sizes must be weakly decreasing".into()));
    }
    let n: usize = ns.iter().sum();
    let k = ns.len();
    let dim = n + k + 3;
    let e = |i: usize| i - 1;
    let h = n + 1;
    let x = |i: usize| n + 1 + i;
    let mut t = T::zero(dim, 2);
    t.add_entry(&[e(1), e(1)], h, &r(1));
    t.add_entry(&[h, x(1)], h, &r(2));
    for i in 2..=ns[0] {
        anti(&mut t, e(i), e(1), e(i + 1), &r(1));
    }
    anti(&mut t, e(1), x(1), e(1), &r(1));
    for i in 3..=ns[0] + 1 {
        anti(&mut t, e(i), x(1), e(i), &r(i as i64 - 2));
    }
    for i in 2..=ns[0] + 1 {
        anti(&mut t, e(i), x(2), e(i), &r(1));
    }
    let mut offset = ns[0];
    for j in 1..k {
        let nj = ns[j];
        for i in 2..=nj {
            anti(&mut t, e(offset + i), e(1), e(offset + 1 + i), &r(1));
        }
        let top = if printed_ranges { nj } else { nj + 1 };
        for i in 2..=top {
            anti(&mut t, e(offset + i), x(1), e(offset + i), &r(i as i64 - 2));
            anti(&mut t, e(offset + i), x(j + 2), e(offset + i), &r(1));
        }
        offset += nj;
    }
    let label: Vec<String> = ns.iter().map(|v| v.to_string()).collect();
    let name = if printed_ranges { "R-printed" } else { "R" };
    Ok(Algebra::binary(format!("{name}({})", label.join(",")), t))
}

/// Basis `e, f, h`.
pub fn sl2() -> Algebra<Rational> {
    let mut t = T::zero(3, 2);
    anti(&mut t, 0, 1, 2, &r(1));
    anti(&mut t, 2, 0, 0, &r(2));
    anti(&mut t, 2, 1, 1, &r(-2));
    Algebra::binary("sl2", t)
}

pub fn heis3() -> Algebra<Rational> {
    let mut t = T::zero(3, 2);
    anti(&mut t, 0, 1, 2, &r(1));
    Algebra::binary("heis3", t)
}

/// Full matrix algebra, basis `E_ij` in row-major order.
pub fn matrix_algebra(n: usize) -> Algebra<Rational> {
    let idx = |i: usize, j: usize| i * n + j;
    let mut t = T::zero(n * n, 2);
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                t.add_entry(&[idx(i, j), idx(j, l)], idx(i, l), &r(1));
            }
        }
    }
    let mut a = Algebra::binary(format!("matrix({n})"), t);
    let mut unit = vec![Rational::zero(); n * n];
    for i in 0..n {
        unit[idx(i, i)] = r(1);
    }
    a.unit = Some(unit);
    a
}

/// Position of `E_ij`, `i <= j`, in the row-major list of upper triangular units.
pub fn uppertri_index(n: usize, i: usize, j: usize) -> usize {
    (0..i).map(|a| n - a).sum::<usize>() + (j - i)
}

pub fn upper_triangular(n: usize) -> Algebra<Rational> {
    let dim = n * (n + 1) / 2;
    let idx = |i, j| uppertri_index(n, i, j);
    let mut t = T::zero(dim, 2);
    for i in 0..n {
        for j in i..n {
            for l in j..n {
                t.add_entry(&[idx(i, j), idx(j, l)], idx(i, l), &r(1));
            }
        }
    }
    let mut a = Algebra::binary(format!("uppertri({n})"), t);
    let mut unit = vec![Rational::zero(); dim];
    for i in 0..n {
        unit[idx(i, i)] = r(1);
    }
    a.unit = Some(unit);
    a
}

fn cd_conj(a: &[Rational]) -> Vec<Rational> {
    let mut v: Vec<Rational> = a.iter().map(|x| x.neg()).collect();
    v[0] = a[0].clone();
    v
}

/// Doubling product `(a,b)(c,d) = (ac - conj(d) b, d a + b conj(c))`.
fn cd_mul(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let n = x.len();
    if n == 1 {
        return vec![x[0].mul(&y[0])];
    }
    let h = n / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = cd_mul(a, c);
    let dbar_b = cd_mul(&cd_conj(d), b);
    let da = cd_mul(d, a);
    let b_cbar = cd_mul(b, &cd_conj(c));
    let mut out: Vec<Rational> = ac.iter().zip(&dbar_b).map(|(p, q)| p.sub(q)).collect();
    out.extend(da.iter().zip(&b_cbar).map(|(p, q)| p.add(q)));
    out
}

/// Conjugation on a Cayley–Dickson algebra in its standard basis.
pub fn cd_conjugate(x: &[Rational]) -> Vec<Rational> {
    cd_conj(x)
}

/// Cayley–Dickson algebra of dimension `2^steps` over Q (2: quaternions, 3: octonions).
pub fn cayley_dickson(steps: u32) -> Algebra<Rational> {
    let n = 1usize << steps;
    let mut t = T::zero(n, 2);
    for i in 0..n {
        for j in 0..n {
            let p = cd_mul(&basis_vector(n, i), &basis_vector(n, j));
            t.set_dense(&[i, j], &p);
        }
    }
    let name = match steps {
        2 => "quaternions".to_string(),
        3 => "octonions".to_string(),
        s => format!("cayley-dickson({s})"),
    };
    let mut a = Algebra::binary(name, t);
    a.unit = Some(basis_vector(n, 0));
    a.form = Some(Matrix::identity(n));
    a
}

/// Imaginary octonions under the commutator.
pub fn m7() -> Algebra<Rational> {
    let o = cayley_dickson(3);
    let mut t = T::zero(7, 2);
    for i in 0..7 {
        for j in 0..7 {
            let a = o.basis(i + 1);
            let b = o.basis(j + 1);
            let c: Vec<Rational> = o.mul(&a, &b).iter().zip(o.mul(&b, &a)).map(|(p, q)| p.sub(&q)).collect();
            assert!(c[0].is_zero());
            t.set_dense(&[i, j], &c[1..]);
        }
    }
    Algebra::binary("M7", t)
}

/// Ternary `[x,y,z] = (x conj(y)) z - <y,z> x + <x,z> y - <x,y> z` on the octonions.
pub fn m8() -> Algebra<Rational> {
    let o = cayley_dickson(3);
    let mut t = T::zero(8, 3);
    for i in 0..8 {
        for j in 0..8 {
            for k in 0..8 {
                let x = o.basis(i);
                let y = o.basis(j);
                let z = o.basis(k);
                let mut v = o.mul(&o.mul(&x, &cd_conj(&y)), &z);
                if j == k {
                    v[i] = v[i].sub(&r(1));
                }
                if i == k {
                    v[j] = v[j].add(&r(1));
                }
                if i == j {
                    v[k] = v[k].sub(&r(1));
                }
                t.set_dense(&[i, j, k], &v);
            }
        }
    }
    let mut a = Algebra::new("M8", 8);
    a.ops.push(crate::algebra::Operation { name: "bracket".into(), tensor: t });
    a.form = Some(Matrix::identity(8));
    a
}

/// Ternary `(y,z)x + (x,z)y + (x,y)z` for a symmetric form.
pub fn ternary_jordan(form: &Matrix<Rational>) -> Result<Algebra<Rational>> {
    if !form.is_square() || !form.is_symmetric() {
        return Err(Error::InvalidParam("ternaryJordan: form must be symmetric".into()));
    }
    let n = form.rows();
    let mut t = T::zero(n, 3);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                t.add_entry(&[i, j, k], i, form.get(j, k));
                t.add_entry(&[i, j, k], j, form.get(i, k));
                t.add_entry(&[i, j, k], k, form.get(i, j));
            }
        }
    }
    let mut a = Algebra::new(format!("ternaryJordan({n})"), n);
    a.ops.push(crate::algebra::Operation { name: "mul".into(), tensor: t });
    a.form = Some(form.clone());
    Ok(a)
}

/// Ternary `(x conj(y)) z` on quaternions (2) or octonions (3).
pub fn ternary_cd(steps: u32) -> Algebra<Rational> {
    let o = cayley_dickson(steps);
    let n = o.dim;
    let mut t = T::zero(n, 3);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = o.mul(&o.mul(&o.basis(i), &cd_conj(&o.basis(j))), &o.basis(k));
                t.set_dense(&[i, j, k], &v);
            }
        }
    }
    let mut a = Algebra::new(format!("ternaryCD{steps}"), n);
    a.ops.push(crate::algebra::Operation { name: "mul".into(), tensor: t });
    a
}

/// Heap's algorithm over permutations with their signs.
pub fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut odd = false;
    out.push((p.clone(), odd));
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            odd = !odd;
            out.push((p.clone(), odd));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

fn set_alternating(t: &mut T, args: &[usize], k: usize, c: &Rational) {
    for (perm, odd) in permutations_with_sign(args.len()) {
        let a: Vec<usize> = perm.iter().map(|&p| args[p]).collect();
        t.add_entry(&a, k, &if odd { c.neg() } else { c.clone() });
    }
}

fn bracket_algebra(name: String, t: T) -> Algebra<Rational> {
    let mut a = Algebra::new(name, t.dim());
    a.ops.push(crate::algebra::Operation { name: "bracket".into(), tensor: t });
    a
}

/// `n`-ary anticommutative algebra of dimension `n` with `[e_1,...,e_n] = e_1`.
pub fn filippov_a(n: usize) -> Algebra<Rational> {
    let mut t = T::zero(n, n);
    let args: Vec<usize> = (0..n).collect();
    set_alternating(&mut t, &args, 0, &r(1));
    bracket_algebra(format!("A_n({n})"), t)
}

/// `(d-1)`-ary algebra of dimension `d` with `[e_1,..,^e_i,..,e_d] = (-1)^{d-1+i+1} e_i`.
pub fn filippov_d(d: usize) -> Algebra<Rational> {
    let n = d - 1;
    let mut t = T::zero(d, n);
    for i in 1..=d {
        let args: Vec<usize> = (1..=d).filter(|&j| j != i).map(|j| j - 1).collect();
        let sign = if (n + i + 1) % 2 == 0 { r(1) } else { r(-1) };
        set_alternating(&mut t, &args, i - 1, &sign);
    }
    bracket_algebra(format!("D({d})"), t)
}

/// One-dimensional `n`-ary algebra `[v,...,v] = alpha v`.
pub fn one_dim_nary(n: usize, alpha: Rational) -> Algebra<Rational> {
    let mut t = T::zero(1, n);
    t.add_entry(&vec![0; n], 0, &alpha);
    let mut a = Algebra::new(format!("A_alpha({n},{alpha})"), 1);
    a.ops.push(crate::algebra::Operation { name: "mul".into(), tensor: t });
    a
}

/// `Q[x,y]/(x^2,y^2)` on `1, x, y, xy`.
fn dual_numbers_2() -> T {
    let mut m = T::zero(4, 2);
    for a in 0..4usize {
        for b in 0..4usize {
            // basis index encodes the exponent bits: 1 = x, 2 = y
            if a & b == 0 {
                m.add_entry(&[a, b], a | b, &r(1));
            }
        }
    }
    m
}

/// Poisson pair on `Q[x,y]/(x^2,y^2)` with `{x,y} = xy`.
pub fn tp4() -> Algebra<Rational> {
    let mut br = T::zero(4, 2);
    anti(&mut br, 1, 2, 3, &r(1));
    let mut a = Algebra::binary("tp4", dual_numbers_2()).with_op("bracket", br).expect("same dim");
    a.unit = Some(basis_vector(4, 0));
    a
}

/// Same product with `{x,y} = 1, {x,xy} = x, {y,xy} = -y`; this bracket violates the Leibniz rule.
pub fn tp4_printed() -> Algebra<Rational> {
    let mut br = T::zero(4, 2);
    anti(&mut br, 1, 2, 0, &r(1));
    anti(&mut br, 1, 3, 1, &r(1));
    anti(&mut br, 2, 3, 2, &r(-1));
    let mut a = Algebra::binary("tp4-printed", dual_numbers_2()).with_op("bracket", br).expect("same dim");
    a.unit = Some(basis_vector(4, 0));
    a
}

/// Two-dimensional transposed Poisson pair: `e_0` unit, `e_1 e_1 = 0`, `[e_0,e_1] = e_1`.
pub fn transposed2() -> Algebra<Rational> {
    let mut m = T::zero(2, 2);
    m.add_entry(&[0, 0], 0, &r(1));
    m.add_entry(&[0, 1], 1, &r(1));
    m.add_entry(&[1, 0], 1, &r(1));
    let mut br = T::zero(2, 2);
    anti(&mut br, 0, 1, 1, &r(1));
    let mut a = Algebra::binary("transposed2", m).with_op("bracket", br).expect("same dim");
    a.unit = Some(basis_vector(2, 0));
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nf3_table() {
        let a = null_filiform(3);
        let t = a.product().unwrap();
        assert_eq!(t.get(&[0, 0]), &[(1, r(1))]);
        assert_eq!(t.get(&[1, 0]), &[(2, r(1))]);
        let nonzero = t.entries().count();
        assert_eq!(nonzero, 2);
    }

    #[test]
    fn d4_signs() {
        let a = filippov_d(4);
        let t = a.main().unwrap();
        // [e1,e2,e3] = (-1)^(3+4+1) e4
        assert_eq!(t.get(&[0, 1, 2]), &[(3, r(1))]);
        assert_eq!(t.get(&[1, 0, 2]), &[(3, r(-1))]);
        // [e2,e3,e4] = (-1)^(3+1+1) e1
        assert_eq!(t.get(&[1, 2, 3]), &[(0, r(-1))]);
        assert!(t.has_symmetry(true));
    }

    #[test]
    fn octonion_basics() {
        let o = cayley_dickson(3);
        for i in 1..8 {
            let sq = o.mul(&o.basis(i), &o.basis(i));
            assert_eq!(sq, {
                let mut v = vec![Rational::zero(); 8];
                v[0] = r(-1);
                v
            });
        }
        // norm multiplicativity on a sample pair
        let x: Vec<Rational> = (1..=8).map(r).collect();
        let y: Vec<Rational> = (0..8).map(|i| r(3 - i)).collect();
        let n = |v: &[Rational]| v.iter().fold(Rational::zero(), |acc, c| acc.add(&c.mul(c)));
        assert_eq!(n(&o.mul(&x, &y)), n(&x).mul(&n(&y)));
        assert!(m7().product().unwrap().has_symmetry(true));
    }

    #[test]
    fn m8_is_alternating() {
        assert!(m8().main().unwrap().has_symmetry(true));
    }

    #[test]
    fn specs_parse() {
        assert_eq!(get_spec("NF(3)").unwrap().dim, 3);
        assert_eq!(get_spec("R(2,1)").unwrap().dim, 3 + 2 + 3);
        assert_eq!(get_spec("filiform1p(4, 1/2)").unwrap().dim, 4);
        assert!(matches!(get_spec("nope"), Err(Error::UnknownAlgebra(_))));
        assert!(get_spec("NF(0)").is_err());
        assert_eq!(get_spec("D(4)").unwrap().main().unwrap().arity(), 3);
        assert_eq!(get_spec("uppertri(3)").unwrap().dim, 6);
    }

    #[test]
    fn heap_signs() {
        let perms = permutations_with_sign(4);
        assert_eq!(perms.len(), 24);
        let odd = perms.iter().filter(|p| p.1).count();
        assert_eq!(odd, 12);
    }
}
