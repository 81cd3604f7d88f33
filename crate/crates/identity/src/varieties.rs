//! The variety catalog and membership checks.

use serde::Serialize;
use workbench_core::structure::delta_derivation_space;
use workbench_core::{Algebra, Echelon, Error, Field, Matrix, Result, Ring, StructureTensor};

use crate::eval::{check_identity, Witness};
use crate::parser::parse_identity;
use crate::term::{Identity, OpSym, Term};

/// Kebab-case names accepted by [`variety`]. `k-lie` takes any arity `k >= 2`.
pub const VARIETY_NAMES: &[&str] = &[
    "minus-one-one",
    "alternative",
    "antiassociative",
    "assosymmetric",
    "bicommutative",
    "binary-lie",
    "cd",
    "dual-mock-lie",
    "jordan",
    "left-symmetric",
    "leibniz",
    "malcev",
    "noncommutative-jordan",
    "novikov",
    "right-alternative",
    "right-commutative",
    "symmetric-leibniz",
    "terminal",
    "tortkara",
    "weakly-associative",
    "zinbiel",
    "lie",
    "associative",
    "commutative",
    "anticommutative",
    "flexible",
    "mock-lie",
    "almost-jordan",
    "cd-anticommutative",
    "commutative-cd",
    "n-lie",
    "nary-leibniz",
    "nary-commutative",
    "nary-jordan",
    "hom-leibniz-3",
];

const ANTICOMM: &str = "x*y + y*x";
const COMM: &str = "x*y - y*x";
const JACOBI: &str = "(x*y)*z + (y*z)*x + (z*x)*y";
const JORDAN: &str = "((x*x)*y)*x - (x*x)*(y*x)";
const CD: [&str; 3] = [
    "((x*y)*a)*b - ((x*y)*b)*a = ((x*a)*b - (x*b)*a)*y + x*((y*a)*b - (y*b)*a)",
    "(a*(x*y))*b - a*((x*y)*b) = ((a*x)*b - a*(x*b))*y + x*((a*y)*b - a*(y*b))",
    "a*(b*(x*y)) - b*(a*(x*y)) = (a*(b*x) - b*(a*x))*y + x*(a*(b*y) - b*(a*y))",
];
/// Written with `a*b` standing for the left multiplication order used in the identity.
pub const TERMINAL: &str = "3*(b*(a*(x*y) - (a*x)*y - x*(a*y)) - a*((b*x)*y) + (a*(b*x))*y + (b*x)*(a*y) \
     - a*(x*(b*y)) + (a*x)*(b*y) + x*(a*(b*y))) \
     = -((2*a*b + b*a)*(x*y)) + ((2*a*b + b*a)*x)*y + x*((2*a*b + b*a)*y)";

fn binary_sources(name: &str) -> Option<Vec<&'static str>> {
    Some(match name {
        "minus-one-one" => vec!["(x*y)*y - x*(y*y)", "(x,y,z) + (z,x,y) + (y,z,x)"],
        "alternative" => vec!["(x,y,z) + (y,x,z)", "(x,y,z) + (x,z,y)"],
        "antiassociative" => vec!["(x*y)*z + x*(y*z)"],
        "assosymmetric" => vec!["(x,y,z) - (y,x,z)", "(x,y,z) - (x,z,y)"],
        "bicommutative" => vec!["x*(y*z) - y*(x*z)", "(x*y)*z - (x*z)*y"],
        "binary-lie" => vec![ANTICOMM, "((x*y)*y)*x - ((x*y)*x)*y"],
        "cd" => CD.to_vec(),
        "dual-mock-lie" => vec![ANTICOMM, "(x*y)*z + x*(y*z)"],
        "jordan" => vec![COMM, JORDAN],
        "left-symmetric" => vec!["(x,y,z) - (y,x,z)"],
        "leibniz" => vec!["(x*y)*z = (x*z)*y + x*(y*z)"],
        "malcev" => vec![ANTICOMM, "(x*y)*(x*z) + (y*(x*z))*x + ((x*z)*x)*y = ((x*y)*z + (y*z)*x + (z*x)*y)*x"],
        "noncommutative-jordan" => vec!["(x*y)*x - x*(y*x)", JORDAN],
        "novikov" => vec!["(x*y)*z - (x*z)*y", "(x,y,z) - (y,x,z)"],
        "right-alternative" => vec!["(x,y,z) + (x,z,y)"],
        "right-commutative" => vec!["(x*y)*z - (x*z)*y"],
        "symmetric-leibniz" => vec!["x*(y*z) = (x*y)*z + y*(x*z)", "(x*y)*z = (x*z)*y + x*(y*z)"],
        "terminal" => vec![TERMINAL],
        "tortkara" => vec![ANTICOMM, "(x*y)*(z*y) = ((x*y)*z + (y*z)*x + (z*x)*y)*y"],
        "weakly-associative" => vec!["(x*y)*z - x*(y*z) + (y*z)*x - y*(z*x) = (y*x)*z - y*(x*z)"],
        "zinbiel" => vec!["(x*y)*z = x*((y*z) + (z*y))"],
        "lie" => vec![ANTICOMM, JACOBI],
        "associative" => vec!["(x,y,z)"],
        "commutative" => vec![COMM],
        "anticommutative" => vec![ANTICOMM],
        "flexible" => vec!["(x*y)*x - x*(y*x)"],
        "mock-lie" => vec![COMM, JACOBI],
        "almost-jordan" => vec![COMM, "2*((y*x)*x)*x + y*((x*x)*x) = 3*((y*(x*x))*x)"],
        "cd-anticommutative" => {
            vec![ANTICOMM, "((x*y)*a)*b - ((x*y)*b)*a - ((x*a)*b)*y + ((x*b)*a)*y + ((y*a)*b)*x - ((y*b)*a)*x"]
        }
        "commutative-cd" => vec![COMM, CD[0], CD[1], CD[2]],
        _ => return None,
    })
}

/// Extra checks beyond plain identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Predicate {
    /// Every `[R_a, R_b]` is a derivation (with `R_a(w) = [w, a_2..a_n]`).
    CommutatorsAreDerivations,
    /// The unary operation `phi` is an invertible homomorphism of the ternary bracket.
    PhiAutomorphism,
}

#[derive(Clone, Debug)]
pub struct Variety {
    pub name: String,
    pub identities: Vec<Identity>,
    pub predicates: Vec<Predicate>,
}

fn var_names(prefix: &str, n: usize, start: usize) -> Vec<String> {
    (start..start + n).map(|i| format!("{prefix}{i}")).collect()
}

fn bracket(args: Vec<Term>) -> Term {
    Term::App(OpSym::Bracket(args.len()), args)
}

/// Adjacent-transposition identities: `[.., x_i, x_{i+1}, ..] - sign [.., x_{i+1}, x_i, ..]`.
fn symmetry_identities(n: usize, sign: i64) -> Vec<Identity> {
    (0..n - 1)
        .map(|i| {
            let mut id = Identity::new(var_names("x", n, 1));
            let args: Vec<Term> = (0..n).map(Term::Var).collect();
            let mut sw = args.clone();
            sw.swap(i, i + 1);
            id.add_term(bracket(args), &workbench_core::Rational::one());
            id.add_term(bracket(sw), &workbench_core::Rational::integer(-sign));
            id
        })
        .collect()
}

/// `[[x_1..x_n], y_2..y_n] = sum_i [x_1, .., [x_i, y_2..y_n], .., x_n]`.
pub fn nary_leibniz_identity(n: usize) -> Identity {
    let mut vars = var_names("x", n, 1);
    vars.extend(var_names("y", n - 1, 2));
    let mut id = Identity::new(vars);
    let xs: Vec<Term> = (0..n).map(Term::Var).collect();
    let ys: Vec<Term> = (n..2 * n - 1).map(Term::Var).collect();
    let one = workbench_core::Rational::one();
    let mut lhs = vec![bracket(xs.clone())];
    lhs.extend(ys.iter().cloned());
    id.add_term(bracket(lhs), &one);
    for i in 0..n {
        let mut inner = vec![xs[i].clone()];
        inner.extend(ys.iter().cloned());
        let mut args = xs.clone();
        args[i] = bracket(inner);
        id.add_term(bracket(args), &one.neg());
    }
    id
}

const HOM_LEIBNIZ_3: &str = "[phi(x1),phi(x2),[y1,y2,y3]] = [[x1,x2,y1],phi(y2),phi(y3)] \
     + [phi(y1),[x1,x2,y2],phi(y3)] + [phi(y1),phi(y2),[x1,x2,y3]]";
const PHI_HOM: &str = "phi([x,y,z]) = [phi(x),phi(y),phi(z)]";

fn parse_all(srcs: &[&str]) -> Vec<Identity> {
    srcs.iter().map(|s| parse_identity(s).expect("catalog identities parse")).collect()
}

/// Looks up a variety. `arity` is the arity of the algebra's main operation and fixes `n` for
/// the n-ary families.
pub fn variety(name: &str, arity: usize) -> Result<Variety> {
    let mk = |identities, predicates| Ok(Variety { name: name.to_string(), identities, predicates });
    if let Some(srcs) = binary_sources(name) {
        return mk(parse_all(&srcs), vec![]);
    }
    let lie_arity = name.strip_suffix("-lie").and_then(|k| if k == "n" { Some(arity) } else { k.parse().ok() });
    if let Some(n) = lie_arity {
        if n < 2 {
            return Err(Error::InvalidParam(format!("`{name}`: arity must be at least 2")));
        }
        let mut ids = symmetry_identities(n, -1);
        ids.push(nary_leibniz_identity(n));
        return mk(ids, vec![]);
    }
    let need = |min: usize| -> Result<()> {
        if arity < min {
            return Err(Error::Precondition(format!("`{name}` needs an operation of arity at least {min}, got {arity}")));
        }
        Ok(())
    };
    match name {
        "nary-leibniz" => {
            need(2)?;
            mk(vec![nary_leibniz_identity(arity)], vec![])
        }
        "nary-commutative" => {
            need(2)?;
            mk(symmetry_identities(arity, 1), vec![])
        }
        "nary-jordan" => {
            need(2)?;
            mk(symmetry_identities(arity, 1), vec![Predicate::CommutatorsAreDerivations])
        }
        "hom-leibniz-3" => mk(parse_all(&[HOM_LEIBNIZ_3]), vec![Predicate::PhiAutomorphism]),
        _ => Err(Error::UnknownAlgebra(format!("unknown variety `{name}`"))),
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Failure<F> {
    /// Defining identity (or predicate) that failed.
    pub identity: String,
    pub witness: Option<Witness<F>>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct VarietyReport<F> {
    pub variety: String,
    pub holds: bool,
    pub failures: Vec<Failure<F>>,
}

/// The single operation an identity over `[..]` / `*` addresses: `mul` or the unique op of
/// arity at least 2.
fn main_arity<F: Ring>(a: &Algebra<F>) -> usize {
    a.main().map(|t| t.arity()).unwrap_or(0)
}

/// `R_a = w -> [w, a_2..a_n]` for basis tuples `a`; returns a basis of their span.
fn right_operator_span<F: Field>(t: &StructureTensor<F>) -> Vec<Matrix<F>> {
    let n = t.dim();
    let k = t.arity();
    let mut e = Echelon::new(n * n);
    let mut out = Vec::new();
    let basis: Vec<Vec<F>> = (0..n).map(|i| workbench_core::basis_vector(n, i)).collect();
    let mut tuple = vec![0usize; k - 1];
    loop {
        let fixed: Vec<&[F]> = tuple.iter().map(|&i| basis[i].as_slice()).collect();
        let m = t.slot_operator(0, &fixed);
        if e.add_dense(m.flat()) {
            out.push(m);
        }
        let mut s = k - 1;
        loop {
            if s == 0 {
                return out;
            }
            s -= 1;
            tuple[s] += 1;
            if tuple[s] < n {
                break;
            }
            tuple[s] = 0;
        }
    }
}

/// First pair of spanning right operators whose commutator is not a derivation.
pub fn commutator_derivation_violation<F: Field>(t: &StructureTensor<F>) -> Option<(usize, usize)> {
    let der = delta_derivation_space(t, &F::one());
    let rs = right_operator_span(t);
    for i in 0..rs.len() {
        for j in i + 1..rs.len() {
            if !der.contains(rs[i].commutator(&rs[j]).flat()) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Checks every defining identity and predicate; all failures are collected.
pub fn check_variety<F: Field>(a: &Algebra<F>, name: &str) -> Result<VarietyReport<F>> {
    let v = variety(name, main_arity(a))?;
    let mut failures = Vec::new();
    if v.predicates.contains(&Predicate::PhiAutomorphism) {
        let phi = a
            .op("phi")
            .filter(|t| t.arity() == 1)
            .ok_or_else(|| Error::Precondition("hom-leibniz-3 needs a unary operation `phi`".into()))?;
        if phi.to_matrix().rank() < a.dim {
            return Err(Error::Precondition("`phi` is not invertible".into()));
        }
        let hom = parse_identity(PHI_HOM)?;
        if let Some(w) = check_identity(a, &hom)?.witness {
            return Err(Error::Precondition(format!("`phi` is not a homomorphism of the bracket: tuple {:?}", w.tuple)));
        }
    }
    for id in &v.identities {
        let r = check_identity(a, id)?;
        if !r.holds {
            failures.push(Failure { identity: id.to_string(), witness: r.witness });
        }
    }
    if v.predicates.contains(&Predicate::CommutatorsAreDerivations) {
        let t = a.main()?;
        if commutator_derivation_violation(t).is_some() {
            failures.push(Failure { identity: "[R_a, R_b] is a derivation".into(), witness: None });
        }
    }
    Ok(VarietyReport { variety: v.name, holds: failures.is_empty(), failures })
}

/// Keeps only operation `op`, renamed `mul`.
pub fn project_op<R: Ring>(a: &Algebra<R>, op: &str) -> Result<Algebra<R>> {
    let t = a.op_result(op)?.clone();
    let mut b = Algebra::new(format!("{}[{op}]", a.name), a.dim);
    b.ops.push(workbench_core::Operation { name: "mul".into(), tensor: t });
    b.unit = a.unit.clone();
    b.u = a.u.clone();
    b.form = a.form.clone();
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use workbench_core::catalog;

    #[test]
    fn every_variety_builds() {
        for name in VARIETY_NAMES {
            let v = variety(name, 3).unwrap();
            assert!(!v.identities.is_empty(), "{name}");
        }
        assert!(variety("sagle", 2).is_err());
    }

    #[test]
    fn nf_is_leibniz_sl2_is_lie() {
        let nf = catalog::null_filiform(4);
        assert!(check_variety(&nf, "leibniz").unwrap().holds);
        assert!(!check_variety(&nf, "lie").unwrap().holds);
        assert!(check_variety(&catalog::sl2(), "lie").unwrap().holds);
    }

    #[test]
    fn ternary_examples() {
        let m8 = catalog::m8();
        assert!(!check_variety(&m8, "3-lie").unwrap().holds);
        let a4 = catalog::filippov_a(3);
        assert!(check_variety(&a4, "n-lie").unwrap().holds);
        let form = Matrix::identity(3);
        let tj = catalog::ternary_jordan(&form).unwrap();
        assert!(check_variety(&tj, "nary-jordan").unwrap().holds);
    }

    #[test]
    fn hom_leibniz_with_identity_phi() {
        let a = catalog::filippov_a(3);
        let phi = StructureTensor::from_matrix(&Matrix::identity(3));
        let a = a.with_op("phi", phi).unwrap();
        assert!(check_variety(&a, "hom-leibniz-3").unwrap().holds);
        let b = catalog::filippov_a(3);
        assert!(check_variety(&b, "hom-leibniz-3").is_err());
    }
}
