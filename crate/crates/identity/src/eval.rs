//! Evaluating identities on algebras.

use serde::Serialize;
use workbench_core::{basis_vector, Algebra, Error, Field, Poly, Rational, Result, Ring, StructureTensor};

use crate::polarize::polarize;
use crate::term::{Identity, OpSym, Term};

/// Chooses the algebra operation a symbol refers to.
pub fn resolve<'a, R: Ring>(a: &'a Algebra<R>, op: &OpSym) -> Result<&'a StructureTensor<R>> {
    let by_arity = |k: usize, preferred: &str| -> Result<&'a StructureTensor<R>> {
        if let Some(t) = a.op(preferred).filter(|t| t.arity() == k) {
            return Ok(t);
        }
        let c: Vec<_> = a.ops.iter().filter(|o| o.tensor.arity() == k).collect();
        match c.as_slice() {
            [o] => Ok(&o.tensor),
            [] => Err(Error::Precondition(format!("`{}` has no operation of arity {k}", a.name))),
            _ => Err(Error::Precondition(format!("`{}` has several operations of arity {k} and none named `{preferred}`", a.name))),
        }
    };
    match op {
        OpSym::Star => by_arity(2, "mul"),
        OpSym::Bracket(k) => by_arity(*k, "bracket"),
        OpSym::Named(name, k) => {
            let t = a.op_result(name)?;
            if t.arity() != *k {
                return Err(Error::Precondition(format!("`{name}` has arity {}, used with {k} arguments", t.arity())));
            }
            Ok(t)
        }
    }
}

#[derive(Clone, Debug)]
enum CTerm {
    Var(usize),
    App(usize, Vec<CTerm>),
}

/// An identity bound to the operations of one algebra.
#[derive(Clone, Debug)]
pub struct Compiled<R> {
    tensors: Vec<StructureTensor<R>>,
    terms: Vec<(R, CTerm)>,
    pub num_vars: usize,
    dim: usize,
}

fn compile_term<R: Ring>(t: &Term, a: &Algebra<R>, ops: &mut Vec<OpSym>, tensors: &mut Vec<StructureTensor<R>>) -> Result<CTerm> {
    Ok(match t {
        Term::Var(v) => CTerm::Var(*v),
        Term::App(op, args) => {
            let idx = match ops.iter().position(|o| o == op) {
                Some(i) => i,
                None => {
                    tensors.push(resolve(a, op)?.clone());
                    ops.push(op.clone());
                    ops.len() - 1
                }
            };
            CTerm::App(idx, args.iter().map(|x| compile_term(x, a, ops, tensors)).collect::<Result<_>>()?)
        }
    })
}

impl<R: Ring> Compiled<R> {
    pub fn new(a: &Algebra<R>, id: &Identity, coef: impl Fn(&Rational) -> Result<R>) -> Result<Self> {
        let mut ops = Vec::new();
        let mut tensors = Vec::new();
        let mut terms = Vec::new();
        for (t, c) in &id.terms {
            terms.push((coef(c)?, compile_term(t, a, &mut ops, &mut tensors)?));
        }
        Ok(Compiled { tensors, terms, num_vars: id.num_vars(), dim: a.dim })
    }

    fn eval_term(&self, t: &CTerm, vals: &[Vec<R>]) -> Vec<R> {
        match t {
            CTerm::Var(v) => vals[*v].clone(),
            CTerm::App(op, args) => {
                let vs: Vec<Vec<R>> = args.iter().map(|a| self.eval_term(a, vals)).collect();
                let refs: Vec<&[R]> = vs.iter().map(|v| v.as_slice()).collect();
                self.tensors[*op].apply(&refs)
            }
        }
    }

    /// Value of the identity polynomial at the given elements.
    pub fn eval(&self, vals: &[Vec<R>]) -> Vec<R> {
        assert_eq!(vals.len(), self.num_vars, "one value per variable");
        let mut out = vec![R::zero(); self.dim];
        for (c, t) in &self.terms {
            let v = self.eval_term(t, vals);
            for (o, x) in out.iter_mut().zip(&v) {
                o.add_mul(c, x);
            }
        }
        out
    }

    /// First basis tuple (odometer order, last variable fastest) with a nonzero value.
    pub fn scan_basis(&self) -> Option<(Vec<usize>, Vec<R>)> {
        let n = self.dim;
        let k = self.num_vars;
        let basis: Vec<Vec<R>> = (0..n).map(|i| basis_vector(n, i)).collect();
        let mut tuple = vec![0usize; k];
        loop {
            let vals: Vec<Vec<R>> = tuple.iter().map(|&i| basis[i].clone()).collect();
            let v = self.eval(&vals);
            if v.iter().any(|x| !x.is_zero()) {
                return Some((tuple, v));
            }
            let mut s = k;
            loop {
                if s == 0 {
                    return None;
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
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Witness<F> {
    /// The multilinear identity that failed.
    pub identity: String,
    pub vars: Vec<String>,
    /// Basis indices assigned to `vars`.
    pub tuple: Vec<usize>,
    pub defect: Vec<F>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CheckReport<F> {
    pub holds: bool,
    pub witness: Option<Witness<F>>,
}

/// Exact check: polarize, then scan every basis tuple.
pub fn check_identity<F: Field>(a: &Algebra<F>, id: &Identity) -> Result<CheckReport<F>> {
    let pol = polarize(id, F::characteristic())?;
    for lin in &pol.identities {
        let c = Compiled::new(a, lin, |q| F::from_rational(q))?;
        if let Some((tuple, defect)) = c.scan_basis() {
            return Ok(CheckReport {
                holds: false,
                witness: Some(Witness { identity: lin.to_string(), vars: lin.vars.clone(), tuple, defect }),
            });
        }
    }
    Ok(CheckReport { holds: true, witness: None })
}

/// Evaluates an identity at given elements without polarizing.
pub fn eval_identity<F: Field>(a: &Algebra<F>, id: &Identity, vals: &[Vec<F>]) -> Result<Vec<F>> {
    let c = Compiled::new(a, id, |q| F::from_rational(q))?;
    Ok(c.eval(vals))
}

/// Evaluation at generic points: each variable is `sum_i X_{v,i} e_i` with independent
/// indeterminates; the identity holds over an infinite field iff every coordinate vanishes.
pub fn check_symbolic(a: &Algebra<Rational>, id: &Identity) -> Result<bool> {
    let ap = a.map(|c| Poly::constant(c.clone()));
    let c = Compiled::new(&ap, id, |q| Ok(Poly::constant(q.clone())))?;
    let n = a.dim;
    let vals: Vec<Vec<Poly>> = (0..id.num_vars()).map(|v| (0..n).map(|i| Poly::var(v * n + i)).collect()).collect();
    Ok(c.eval(&vals).iter().all(|p| p.is_zero()))
}
