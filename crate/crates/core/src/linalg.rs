//! Exact linear algebra over fields, plus fraction-free elimination over rings.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{ExactDiv, Field, Ring};

/// Dense row-major matrix. As a linear map, column `j` is the image of `e_j`.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![R::zero(); rows * cols] }
    }
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = R::one();
        }
        m
    }
    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }
    pub fn from_cols(cols: &[Vec<R>]) -> Result<Self> {
        Ok(Self::from_rows(cols.to_vec())?.transpose())
    }
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }
    pub fn diag(d: &[R]) -> Self {
        let n = d.len();
        Self::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { R::zero() })
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn col(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
    /// Entries in row-major order.
    pub fn flat(&self) -> &[R] {
        &self.data
    }
    pub fn from_flat(rows: usize, cols: usize, data: Vec<R>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!("{}x{} * {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * o.cols + j;
                        out.data[idx].add_mul(a, b);
                    }
                }
            }
        }
        Ok(out)
    }
    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = R::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc.add_mul(a, b);
                }
                acc
            })
            .collect()
    }
    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() }
    }
    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() }
    }
    pub fn scale(&self, s: &R) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul(s)).collect() }
    }
    /// Matrix commutator `AB - BA`.
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).unwrap().sub(&o.mul(self).unwrap())
    }
    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self).unwrap();
        }
        acc
    }
    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
    pub fn try_map<S: Ring>(&self, f: impl Fn(&R) -> Result<S>) -> Result<Matrix<S>> {
        Ok(Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect::<Result<_>>()? })
    }
    /// Elementary matrix `E_ij`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.set(i, j, R::one());
        m
    }
}

impl<R: ExactDiv> Matrix<R> {
    /// Rank by fraction-free (Bareiss) elimination.
    pub fn rank_bareiss(&self) -> usize {
        bareiss(self.clone()).0
    }
    /// Determinant by Bareiss elimination.
    pub fn det_bareiss(&self) -> Result<R> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of non-square matrix".into()));
        }
        let (rank, det) = bareiss(self.clone());
        Ok(if rank == self.rows { det } else { R::zero() })
    }
}

/// Returns (rank, signed last pivot). Rows and columns with pivots are searched in order.
fn bareiss<R: ExactDiv>(mut m: Matrix<R>) -> (usize, R) {
    let (rows, cols) = (m.rows, m.cols);
    let mut prev = R::one();
    let mut sign = false;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
            sign = !sign;
        }
        let piv = m.get(r, c).clone();
        for i in r + 1..rows {
            let a = m.get(i, c).clone();
            for j in c + 1..cols {
                let v = piv.mul(m.get(i, j)).sub(&a.mul(m.get(r, j)));
                let v = v.div_exact(&prev).expect("Bareiss division is exact");
                m.set(i, j, v);
            }
            m.set(i, c, R::zero());
        }
        prev = piv;
        r += 1;
    }
    (r, if sign { prev.neg() } else { prev })
}

impl<F: Field> Matrix<F> {
    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        for i in 0..self.rows {
            e.add_dense(self.row(i));
        }
        e.rank()
    }
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&i| !a.get(i, c).is_zero()).ok_or(Error::Singular)?;
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                    inv.data.swap(p * n + j, c * n + j);
                }
            }
            let pinv = a.get(c, c).inv()?;
            for j in 0..n {
                a.data[c * n + j] = a.data[c * n + j].mul(&pinv);
                inv.data[c * n + j] = inv.data[c * n + j].mul(&pinv);
            }
            for i in 0..n {
                if i == c {
                    continue;
                }
                let f = a.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(i, j).sub(&f.mul(a.get(c, j)));
                    a.set(i, j, v);
                    let w = inv.get(i, j).sub(&f.mul(inv.get(c, j)));
                    inv.set(i, j, w);
                }
            }
        }
        Ok(inv)
    }
    pub fn det(&self) -> Result<F> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else { return Ok(F::zero()) };
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                }
                det = det.neg();
            }
            let piv = a.get(c, c).clone();
            det = det.mul(&piv);
            let pinv = piv.inv()?;
            for i in c + 1..n {
                let f = a.get(i, c).mul(&pinv);
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = a.get(i, j).sub(&f.mul(a.get(c, j)));
                    a.set(i, j, v);
                }
            }
        }
        Ok(det)
    }
    /// Right nullspace `{v : M v = 0}` in canonical form.
    pub fn nullspace(&self) -> Subspace<F> {
        let mut e = Echelon::new(self.cols);
        for i in 0..self.rows {
            e.add_dense(self.row(i));
        }
        e.nullspace()
    }
    /// One solution of `M v = b` plus the nullspace.
    pub fn solve(&self, b: &[F]) -> Result<(Vec<F>, Subspace<F>)> {
        if b.len() != self.rows {
            return Err(Error::Dimension("right-hand side length".into()));
        }
        let mut e = Echelon::new(self.cols + 1);
        for i in 0..self.rows {
            let mut row = self.row(i).to_vec();
            row.push(b[i].neg());
            e.add_dense(&row);
        }
        e.solve_affine()
    }
}

pub type SparseRow<F> = Vec<(usize, F)>;

/// Incremental row echelon form over a field. Pivot rows are normalized to a leading 1.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow<F>>,
}

fn axpy<F: Field>(row: &SparseRow<F>, f: &F, piv: &SparseRow<F>) -> SparseRow<F> {
    // row - f * piv, both sorted by column
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < piv.len() {
        let ci = row.get(i).map_or(usize::MAX, |x| x.0);
        let cj = piv.get(j).map_or(usize::MAX, |x| x.0);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, piv[j].1.mul(f).neg()));
            j += 1;
        } else {
            let v = row[i].1.sub(&piv[j].1.mul(f));
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, pivots: BTreeMap::new() }
    }
    pub fn ncols(&self) -> usize {
        self.ncols
    }
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.ncols
    }
    pub fn add_dense(&mut self, row: &[F]) -> bool {
        let sparse = row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect();
        self.add_sparse(sparse)
    }
    /// Reduces `row` against the current pivots.
    pub fn reduce(&self, mut row: SparseRow<F>) -> SparseRow<F> {
        row.sort_by_key(|x| x.0);
        let mut k = 0;
        while k < row.len() {
            let (c, v) = (row[k].0, row[k].1.clone());
            if let Some(p) = self.pivots.get(&c) {
                let head: SparseRow<F> = row[..k].to_vec();
                let tail: SparseRow<F> = row[k..].to_vec();
                let mut red = axpy(&tail, &v, p);
                let mut nr = head;
                nr.append(&mut red);
                row = nr;
            } else {
                k += 1;
            }
        }
        row
    }
    /// Adds a sparse row (entries need not be sorted); returns whether it was independent.
    pub fn add_sparse(&mut self, row: SparseRow<F>) -> bool {
        if self.is_full() {
            return false;
        }
        let row: SparseRow<F> = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let row = self.reduce(row);
        let Some((lead, lv)) = row.first().cloned() else { return false };
        let inv = lv.inv().expect("nonzero pivot");
        let row: SparseRow<F> = row.into_iter().map(|(c, v)| (c, v.mul(&inv))).collect();
        self.pivots.insert(lead, row);
        true
    }
    pub fn contains(&self, row: SparseRow<F>) -> bool {
        self.reduce(row).is_empty()
    }
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }
    /// Fully reduced echelon rows, sorted by pivot column.
    pub fn rref(&self) -> Vec<SparseRow<F>> {
        let mut rows: BTreeMap<usize, SparseRow<F>> = BTreeMap::new();
        for (&c, r) in self.pivots.iter().rev() {
            let mut r = r.clone();
            // eliminate entries at later pivot columns using already reduced rows
            let mut k = 1;
            while k < r.len() {
                let (cc, v) = (r[k].0, r[k].1.clone());
                if let Some(p) = rows.get(&cc) {
                    let head = r[..k].to_vec();
                    let tail = r[k..].to_vec();
                    let mut red = axpy(&tail, &v, p);
                    let mut nr = head;
                    nr.append(&mut red);
                    r = nr;
                } else {
                    k += 1;
                }
            }
            rows.insert(c, r);
        }
        rows.into_values().collect()
    }
    /// The row space as a canonical subspace.
    pub fn row_space(&self) -> Subspace<F> {
        let n = self.ncols;
        let rows = self
            .rref()
            .into_iter()
            .map(|r| {
                let mut d = vec![F::zero(); n];
                for (c, v) in r {
                    d[c] = v;
                }
                d
            })
            .collect();
        Subspace { ambient: n, rows }
    }
    /// `{v : row . v = 0 for every row}`.
    pub fn nullspace(&self) -> Subspace<F> {
        let n = self.ncols;
        let rref = self.rref();
        let piv: Vec<usize> = rref.iter().map(|r| r[0].0).collect();
        let mut is_piv = vec![false; n];
        for &p in &piv {
            is_piv[p] = true;
        }
        let mut basis = Vec::new();
        for f in (0..n).filter(|&c| !is_piv[c]) {
            let mut v = vec![F::zero(); n];
            v[f] = F::one();
            for r in &rref {
                if let Some((_, x)) = r.iter().find(|(c, _)| *c == f) {
                    v[r[0].0] = x.neg();
                }
            }
            basis.push(v);
        }
        Subspace::from_vectors(n, &basis)
    }
    /// Treats the last column as the negated right-hand side: rows encode `a.v + c = 0`.
    /// Returns a particular solution and the homogeneous solution space.
    pub fn solve_affine(&self) -> Result<(Vec<F>, Subspace<F>)> {
        let n = self.ncols - 1;
        if self.pivots.contains_key(&n) {
            return Err(Error::Inconsistent);
        }
        let rref = self.rref();
        let mut part = vec![F::zero(); n];
        for r in &rref {
            if let Some((_, c)) = r.iter().find(|(c, _)| *c == n) {
                part[r[0].0] = c.neg();
            }
        }
        let mut hom = Echelon::new(n);
        for r in &rref {
            hom.add_sparse(r.iter().filter(|(c, _)| *c < n).cloned().collect());
        }
        Ok((part, hom.nullspace()))
    }
}

/// Subspace of `F^n` stored as reduced row echelon rows; equality is equality of subspaces.
#[derive(Clone, PartialEq, Debug)]
pub struct Subspace<F> {
    ambient: usize,
    rows: Vec<Vec<F>>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new() }
    }
    pub fn full(ambient: usize) -> Self {
        Self::from_vectors(ambient, &Matrix::<F>::identity(ambient).to_rows())
    }
    pub fn from_vectors(ambient: usize, vs: &[Vec<F>]) -> Self {
        let mut e = Echelon::new(ambient);
        for v in vs {
            assert_eq!(v.len(), ambient, "vector length");
            e.add_dense(v);
        }
        e.row_space()
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn basis(&self) -> &[Vec<F>] {
        &self.rows
    }
    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }
    fn echelon(&self) -> Echelon<F> {
        let mut e = Echelon::new(self.ambient);
        for r in &self.rows {
            e.add_dense(r);
        }
        e
    }
    pub fn contains(&self, v: &[F]) -> bool {
        let e = self.echelon();
        e.contains(v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect())
    }
    pub fn is_subspace_of(&self, o: &Self) -> bool {
        self.rows.iter().all(|r| o.contains(r))
    }
    pub fn sum(&self, o: &Self) -> Self {
        let mut vs = self.rows.clone();
        vs.extend(o.rows.iter().cloned());
        Self::from_vectors(self.ambient, &vs)
    }
    /// Linear equations cutting out the subspace: `{w : w . v = 0 for v in self}`.
    pub fn annihilator(&self) -> Self {
        self.echelon().nullspace()
    }
    pub fn intersect(&self, o: &Self) -> Self {
        let mut e = Echelon::new(self.ambient);
        for r in self.annihilator().rows.iter().chain(o.annihilator().rows.iter()) {
            e.add_dense(r);
        }
        e.nullspace()
    }
    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        // rows are in RREF: coordinate i is the entry of v at pivot column i
        let piv: Vec<usize> = self.rows.iter().map(|r| r.iter().position(|x| !x.is_zero()).unwrap()).collect();
        let coords: Vec<F> = piv.iter().map(|&p| v[p].clone()).collect();
        let mut recon = vec![F::zero(); self.ambient];
        for (c, r) in coords.iter().zip(&self.rows) {
            for (k, x) in r.iter().enumerate() {
                recon[k].add_mul(c, x);
            }
        }
        (recon == v).then_some(coords)
    }
    /// Image under a linear map given as a matrix acting on column vectors.
    pub fn image(&self, m: &Matrix<F>) -> Self {
        let vs: Vec<Vec<F>> = self.rows.iter().map(|r| m.mul_vec(r)).collect();
        Self::from_vectors(m.rows(), &vs)
    }
}
