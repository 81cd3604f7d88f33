//! Sparse multiplication tables of arbitrary arity.

use crate::error::{Error, Result};
use crate::scalar::Ring;

/// Sparse output vector: sorted `(basis index, nonzero coefficient)` pairs.
pub type SparseVec<R> = Vec<(usize, R)>;

/// Arity-`m` multilinear map on an `n`-dimensional space, one sparse output per basis tuple.
/// Arity 1 is allowed and stores a linear endomorphism.
#[derive(Clone, PartialEq, Debug)]
pub struct StructureTensor<R> {
    dim: usize,
    arity: usize,
    table: Vec<SparseVec<R>>,
}

pub fn sparse_from_dense<R: Ring>(v: &[R]) -> SparseVec<R> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn dense_from_sparse<R: Ring>(n: usize, v: &[(usize, R)]) -> Vec<R> {
    let mut d = vec![R::zero(); n];
    for (i, x) in v {
        d[*i].add_assign(x);
    }
    d
}

impl<R: Ring> StructureTensor<R> {
    pub fn zero(dim: usize, arity: usize) -> Self {
        let size = dim.checked_pow(arity as u32).expect("table size overflow");
        StructureTensor { dim, arity, table: vec![Vec::new(); size] }
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn arity(&self) -> usize {
        self.arity
    }
    pub fn index(&self, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        args.iter().fold(0, |acc, &a| {
            debug_assert!(a < self.dim);
            acc * self.dim + a
        })
    }
    pub fn unindex(&self, mut flat: usize) -> Vec<usize> {
        let mut args = vec![0; self.arity];
        for s in (0..self.arity).rev() {
            args[s] = flat % self.dim;
            flat /= self.dim;
        }
        args
    }
    pub fn get(&self, args: &[usize]) -> &[(usize, R)] {
        &self.table[self.index(args)]
    }
    pub fn get_flat(&self, flat: usize) -> &[(usize, R)] {
        &self.table[flat]
    }
    pub fn get_dense(&self, args: &[usize]) -> Vec<R> {
        dense_from_sparse(self.dim, self.get(args))
    }
    /// Coefficient of `e_k` in the product of basis vectors `args`.
    pub fn coeff(&self, args: &[usize], k: usize) -> R {
        self.get(args).iter().find(|(i, _)| *i == k).map_or_else(R::zero, |(_, v)| v.clone())
    }
    pub fn set(&mut self, args: &[usize], out: &[(usize, R)]) -> Result<()> {
        if args.len() != self.arity || args.iter().any(|&a| a >= self.dim) {
            return Err(Error::Dimension(format!("bad argument tuple {args:?}")));
        }
        if out.iter().any(|(k, _)| *k >= self.dim) {
            return Err(Error::Dimension("output index out of range".into()));
        }
        let i = self.index(args);
        let dense = dense_from_sparse(self.dim, out);
        self.table[i] = sparse_from_dense(&dense);
        Ok(())
    }
    pub fn set_dense(&mut self, args: &[usize], out: &[R]) {
        let i = self.index(args);
        self.table[i] = sparse_from_dense(out);
    }
    /// Adds `c * e_k` to the product of `args`.
    pub fn add_entry(&mut self, args: &[usize], k: usize, c: &R) {
        if c.is_zero() {
            return;
        }
        let i = self.index(args);
        let row = &mut self.table[i];
        match row.binary_search_by_key(&k, |x| x.0) {
            Ok(p) => {
                let v = row[p].1.add(c);
                if v.is_zero() {
                    row.remove(p);
                } else {
                    row[p].1 = v;
                }
            }
            Err(p) => row.insert(p, (k, c.clone())),
        }
    }
    /// Nonzero entries as `(args, output)`.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, &[(usize, R)])> + '_ {
        self.table.iter().enumerate().filter(|(_, v)| !v.is_empty()).map(|(i, v)| (self.unindex(i), v.as_slice()))
    }
    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|v| v.is_empty())
    }
    pub fn table_len(&self) -> usize {
        self.table.len()
    }
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> StructureTensor<S> {
        StructureTensor {
            dim: self.dim,
            arity: self.arity,
            table: self
                .table
                .iter()
                .map(|v| v.iter().map(|(k, x)| (*k, f(x))).filter(|(_, x)| !x.is_zero()).collect())
                .collect(),
        }
    }
    pub fn try_map<S: Ring>(&self, f: impl Fn(&R) -> Result<S>) -> Result<StructureTensor<S>> {
        let mut table = Vec::with_capacity(self.table.len());
        for v in &self.table {
            let mut row = Vec::with_capacity(v.len());
            for (k, x) in v {
                let y = f(x)?;
                if !y.is_zero() {
                    row.push((*k, y));
                }
            }
            table.push(row);
        }
        Ok(StructureTensor { dim: self.dim, arity: self.arity, table })
    }
    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.dim, self.arity), (o.dim, o.arity));
        let mut r = self.clone();
        for (i, v) in o.table.iter().enumerate() {
            for (k, c) in v {
                let args = o.unindex(i);
                r.add_entry(&args, *k, c);
            }
        }
        r
    }
    pub fn scale(&self, s: &R) -> Self {
        self.map(|x| x.mul(s))
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&R::one().neg()))
    }
    /// Multilinear evaluation on dense vectors; iterates over the product of supports.
    pub fn apply(&self, args: &[&[R]]) -> Vec<R> {
        assert_eq!(args.len(), self.arity, "arity mismatch");
        let supports: Vec<Vec<usize>> =
            args.iter().map(|v| v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect()).collect();
        let mut out = vec![R::zero(); self.dim];
        if supports.iter().any(|s| s.is_empty()) {
            return out;
        }
        let m = self.arity;
        let mut pos = vec![0usize; m];
        // coefficient prefix products avoid recomputation along the odometer
        loop {
            let mut flat = 0;
            let mut coef = R::one();
            for s in 0..m {
                let i = supports[s][pos[s]];
                flat = flat * self.dim + i;
                coef = coef.mul(&args[s][i]);
            }
            for (k, c) in &self.table[flat] {
                out[*k].add_mul(&coef, c);
            }
            let mut s = m;
            loop {
                if s == 0 {
                    return out;
                }
                s -= 1;
                pos[s] += 1;
                if pos[s] < supports[s].len() {
                    break;
                }
                pos[s] = 0;
            }
        }
    }
    /// Multiplication operator in slot `slot` with the other slots fixed to `fixed`
    /// (`fixed` has `arity - 1` vectors). Column `j` is the image of `e_j`.
    pub fn slot_operator(&self, slot: usize, fixed: &[&[R]]) -> crate::linalg::Matrix<R> {
        assert_eq!(fixed.len() + 1, self.arity);
        let n = self.dim;
        let mut m = crate::linalg::Matrix::zeros(n, n);
        let mut basis = vec![R::zero(); n];
        for j in 0..n {
            basis[j] = R::one();
            let mut args: Vec<&[R]> = fixed.to_vec();
            args.insert(slot, &basis);
            let col = self.apply(&args);
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
            basis[j] = R::zero();
        }
        m
    }
    /// Matrix of an arity-1 tensor.
    pub fn to_matrix(&self) -> crate::linalg::Matrix<R> {
        assert_eq!(self.arity, 1);
        let n = self.dim;
        let mut m = crate::linalg::Matrix::zeros(n, n);
        for j in 0..n {
            for (i, v) in &self.table[j] {
                m.set(*i, j, v.clone());
            }
        }
        m
    }
    pub fn from_matrix(m: &crate::linalg::Matrix<R>) -> Self {
        let n = m.rows();
        let mut t = Self::zero(n, 1);
        for j in 0..n {
            t.table[j] = sparse_from_dense(&m.col(j));
        }
        t
    }
    /// Whether the table is symmetric (`sign = 1`) or alternating (`sign = -1`) under
    /// every transposition of adjacent slots, and vanishes on repeated arguments when alternating.
    pub fn has_symmetry(&self, alternating: bool) -> bool {
        for flat in 0..self.table.len() {
            let args = self.unindex(flat);
            for s in 0..self.arity.saturating_sub(1) {
                let mut sw = args.clone();
                sw.swap(s, s + 1);
                let other = self.get(&sw);
                let mine = &self.table[flat];
                if alternating {
                    if args[s] == args[s + 1] && !mine.is_empty() {
                        return false;
                    }
                    let neg: Vec<(usize, R)> = other.iter().map(|(k, v)| (*k, v.neg())).collect();
                    if *mine != neg {
                        return false;
                    }
                } else if mine != other {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn index_roundtrip() {
        let t = StructureTensor::<Rational>::zero(3, 3);
        for f in 0..27 {
            assert_eq!(t.index(&t.unindex(f)), f);
        }
        assert_eq!(t.index(&[1, 0, 2]), 11);
    }

    #[test]
    fn entries_normalized() {
        let mut t = StructureTensor::<Rational>::zero(2, 2);
        t.add_entry(&[0, 1], 1, &Rational::one());
        t.add_entry(&[0, 1], 1, &Rational::integer(-1));
        assert!(t.is_zero());
        t.set(&[1, 1], &[(0, Rational::zero()), (1, Rational::integer(2))]).unwrap();
        assert_eq!(t.get(&[1, 1]), &[(1, Rational::integer(2))]);
        assert!(t.set(&[2, 0], &[]).is_err());
    }

    #[test]
    fn apply_bilinear() {
        let mut t = StructureTensor::<Rational>::zero(2, 2);
        t.add_entry(&[0, 0], 1, &Rational::one());
        let x = [Rational::integer(3), Rational::integer(5)];
        let y = [Rational::integer(2), Rational::zero()];
        assert_eq!(t.apply(&[&x, &y]), vec![Rational::zero(), Rational::integer(6)]);
    }
}
