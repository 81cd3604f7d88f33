//! Algebras: named operations on a common space, with optional distinguished data.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Field, Rational, Ring};
use crate::tensor::StructureTensor;

#[derive(Clone, PartialEq, Debug)]
pub struct Operation<R> {
    pub name: String,
    pub tensor: StructureTensor<R>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct Algebra<R> {
    pub name: String,
    pub dim: usize,
    pub ops: Vec<Operation<R>>,
    pub unit: Option<Vec<R>>,
    pub u: Option<Vec<R>>,
    pub form: Option<Matrix<R>>,
}

pub type Element<R> = Vec<R>;

pub fn basis_vector<R: Ring>(n: usize, i: usize) -> Vec<R> {
    let mut v = vec![R::zero(); n];
    v[i] = R::one();
    v
}

impl<R: Ring> Algebra<R> {
    pub fn new(name: impl Into<String>, dim: usize) -> Self {
        Algebra { name: name.into(), dim, ops: Vec::new(), unit: None, u: None, form: None }
    }
    /// Single binary operation called `mul`.
    pub fn binary(name: impl Into<String>, t: StructureTensor<R>) -> Self {
        let mut a = Self::new(name, t.dim());
        a.ops.push(Operation { name: "mul".into(), tensor: t });
        a
    }
    pub fn with_op(mut self, name: impl Into<String>, t: StructureTensor<R>) -> Result<Self> {
        if t.dim() != self.dim {
            return Err(Error::Dimension(format!("operation of dim {} on algebra of dim {}", t.dim(), self.dim)));
        }
        let name = name.into();
        self.ops.retain(|o| o.name != name);
        self.ops.push(Operation { name, tensor: t });
        Ok(self)
    }
    pub fn op(&self, name: &str) -> Option<&StructureTensor<R>> {
        self.ops.iter().find(|o| o.name == name).map(|o| &o.tensor)
    }
    pub fn op_result(&self, name: &str) -> Result<&StructureTensor<R>> {
        self.op(name).ok_or_else(|| Error::Precondition(format!("algebra `{}` has no operation `{name}`", self.name)))
    }
    /// The main operation: `mul` if present, else the only operation of arity at least 2.
    pub fn main(&self) -> Result<&StructureTensor<R>> {
        if let Some(t) = self.op("mul") {
            return Ok(t);
        }
        let cands: Vec<_> = self.ops.iter().filter(|o| o.tensor.arity() >= 2).collect();
        match cands.as_slice() {
            [o] => Ok(&o.tensor),
            [] => Err(Error::Precondition(format!("algebra `{}` has no product", self.name))),
            _ => Err(Error::Precondition(format!("algebra `{}` has several products and no `mul`", self.name))),
        }
    }
    /// The main operation, required to be binary.
    pub fn product(&self) -> Result<&StructureTensor<R>> {
        let t = self.main()?;
        if t.arity() != 2 {
            return Err(Error::Precondition(format!("algebra `{}` is not binary", self.name)));
        }
        Ok(t)
    }
    pub fn mul(&self, x: &[R], y: &[R]) -> Vec<R> {
        self.product().expect("binary algebra").apply(&[x, y])
    }
    pub fn basis(&self, i: usize) -> Vec<R> {
        basis_vector(self.dim, i)
    }
    /// Left multiplication `L_x` for a binary algebra.
    pub fn left_mult(&self, x: &[R]) -> Matrix<R> {
        self.product().expect("binary algebra").slot_operator(1, &[x])
    }
    /// Right multiplication `R_x` for a binary algebra.
    pub fn right_mult(&self, x: &[R]) -> Matrix<R> {
        self.product().expect("binary algebra").slot_operator(0, &[x])
    }
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S + Copy) -> Algebra<S> {
        Algebra {
            name: self.name.clone(),
            dim: self.dim,
            ops: self.ops.iter().map(|o| Operation { name: o.name.clone(), tensor: o.tensor.map(f) }).collect(),
            unit: self.unit.as_ref().map(|v| v.iter().map(f).collect()),
            u: self.u.as_ref().map(|v| v.iter().map(f).collect()),
            form: self.form.as_ref().map(|m| m.map(f)),
        }
    }
    pub fn try_map<S: Ring>(&self, f: impl Fn(&R) -> Result<S> + Copy) -> Result<Algebra<S>> {
        Ok(Algebra {
            name: self.name.clone(),
            dim: self.dim,
            ops: self
                .ops
                .iter()
                .map(|o| Ok(Operation { name: o.name.clone(), tensor: o.tensor.try_map(f)? }))
                .collect::<Result<_>>()?,
            unit: self.unit.as_ref().map(|v| v.iter().map(f).collect::<Result<_>>()).transpose()?,
            u: self.u.as_ref().map(|v| v.iter().map(f).collect::<Result<_>>()).transpose()?,
            form: self.form.as_ref().map(|m| m.try_map(f)).transpose()?,
        })
    }
    /// Same data with the bilinear form `(x, y)`, if any, evaluated.
    pub fn form_eval(&self, x: &[R], y: &[R]) -> Option<R> {
        let g = self.form.as_ref()?;
        let gy = g.mul_vec(y);
        let mut acc = R::zero();
        for (a, b) in x.iter().zip(&gy) {
            acc.add_mul(a, b);
        }
        Some(acc)
    }
}

impl<F: Field> Algebra<F> {
    /// Transported structure `(P*mu)(x..) = P mu(P^-1 x, ..)` for every operation.
    pub fn change_basis(&self, p: &Matrix<F>) -> Result<Self> {
        if p.rows() != self.dim || p.cols() != self.dim {
            return Err(Error::Dimension(format!("basis change of size {}x{} on dim {}", p.rows(), p.cols(), self.dim)));
        }
        let pinv = p.inverse()?;
        self.change_basis_with(p, &pinv)
    }
    /// Rewrites the algebra in the basis given by the columns of `s`.
    pub fn in_basis(&self, s: &Matrix<F>) -> Result<Self> {
        let sinv = s.inverse()?;
        self.change_basis_with(&sinv, s)
    }
    fn change_basis_with(&self, p: &Matrix<F>, pinv: &Matrix<F>) -> Result<Self> {
        let n = self.dim;
        let cols: Vec<Vec<F>> = (0..n).map(|j| pinv.col(j)).collect();
        let mut ops = Vec::with_capacity(self.ops.len());
        for o in &self.ops {
            let t = &o.tensor;
            let mut nt = StructureTensor::zero(n, t.arity());
            for flat in 0..t.table_len() {
                let args = nt.unindex(flat);
                let vs: Vec<&[F]> = args.iter().map(|&a| cols[a].as_slice()).collect();
                let out = t.apply(&vs);
                nt.set_dense(&args, &p.mul_vec(&out));
            }
            ops.push(Operation { name: o.name.clone(), tensor: nt });
        }
        let form = match &self.form {
            Some(g) => Some(pinv.transpose().mul(g)?.mul(pinv)?),
            None => None,
        };
        Ok(Algebra {
            name: self.name.clone(),
            dim: n,
            ops,
            unit: self.unit.as_ref().map(|v| p.mul_vec(v)),
            u: self.u.as_ref().map(|v| p.mul_vec(v)),
            form,
        })
    }
    /// Subalgebra spanned by `basis` (given in ambient coordinates), expressed in that basis.
    pub fn subalgebra(&self, basis: &[Vec<F>]) -> Result<Self> {
        let k = basis.len();
        let sp = crate::linalg::Subspace::from_vectors(self.dim, basis);
        if sp.dim() != k {
            return Err(Error::InvalidParam("subalgebra spanning set is dependent".into()));
        }
        let m = Matrix::from_cols(basis)?;
        let mut ops = Vec::new();
        for o in &self.ops {
            let t = &o.tensor;
            let mut nt = StructureTensor::zero(k, t.arity());
            for flat in 0..nt.table_len() {
                let args = nt.unindex(flat);
                let vs: Vec<&[F]> = args.iter().map(|&a| basis[a].as_slice()).collect();
                let out = t.apply(&vs);
                let coords = solve_in_span(&m, &out).ok_or_else(|| {
                    Error::Precondition(format!("span is not closed under `{}` at {args:?}", o.name))
                })?;
                nt.set_dense(&args, &coords);
            }
            ops.push(Operation { name: o.name.clone(), tensor: nt });
        }
        Ok(Algebra { name: format!("{}-sub", self.name), dim: k, ops, unit: None, u: None, form: None })
    }
}

fn solve_in_span<F: Field>(m: &Matrix<F>, v: &[F]) -> Option<Vec<F>> {
    m.solve(v).ok().map(|(x, _)| x)
}

/// Embeds a rational algebra into any field of characteristic 0 or p.
pub fn to_field<F: Field>(a: &Algebra<Rational>) -> Result<Algebra<F>> {
    a.try_map(|x| F::from_rational(x))
}
