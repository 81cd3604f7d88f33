//! Higher derivations truncated at a finite order, their group law, inner higher derivations
//! and the maps built from higher transitive maps on incidence algebras.

use serde::Serialize;
use workbench_core::{basis_vector, Algebra, Error, Matrix, Rational, Result, Ring};
use workbench_identity::check_variety;

use crate::poset::Poset;

pub const DEFAULT_ORDER: usize = 4;

/// `d_0 = id, d_1, .., d_N` as matrices acting on coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct HigherDerivationSeq {
    pub d: Vec<Matrix<Rational>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HdReport {
    pub holds: bool,
    /// `(n, r, s)`: order and basis indices of the first violation.
    pub violation: Option<(usize, usize, usize)>,
}

impl HigherDerivationSeq {
    pub fn new(d: Vec<Matrix<Rational>>) -> Result<Self> {
        let first = d.first().ok_or_else(|| Error::InvalidParam("empty sequence".into()))?;
        let n = first.rows();
        if d.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Dimension("all maps must be square of one size".into()));
        }
        if *first != Matrix::identity(n) {
            return Err(Error::Precondition("d_0 must be the identity".into()));
        }
        Ok(HigherDerivationSeq { d })
    }
    /// `epsilon`: identity followed by zeros.
    pub fn identity(n: usize, order: usize) -> Self {
        let mut d = vec![Matrix::identity(n)];
        d.extend((0..order).map(|_| Matrix::zeros(n, n)));
        HigherDerivationSeq { d }
    }
    /// `(id, d, d^2/2!, .., d^N/N!)`.
    pub fn exponential(d1: &Matrix<Rational>, order: usize) -> Self {
        let n = d1.rows();
        let mut d = vec![Matrix::identity(n)];
        for k in 1..=order {
            let next = d[k - 1].mul(d1).expect("square").scale(&Rational::new(1, k as i64).expect("nonzero"));
            d.push(next);
        }
        HigherDerivationSeq { d }
    }
    pub fn order(&self) -> usize {
        self.d.len() - 1
    }
    pub fn dim(&self) -> usize {
        self.d[0].rows()
    }

    /// `(self * o)_n = sum_{i+j=n} self_i o_j` (apply `o_j` first).
    pub fn compose(&self, o: &Self) -> Result<Self> {
        if self.order() != o.order() || self.dim() != o.dim() {
            return Err(Error::Dimension("sequences of different order or size".into()));
        }
        let d = (0..=self.order())
            .map(|k| {
                (0..=k).try_fold(Matrix::zeros(self.dim(), self.dim()), |acc, i| Ok(acc.add(&self.d[i].mul(&o.d[k - i])?)))
            })
            .collect::<Result<_>>()?;
        Ok(HigherDerivationSeq { d })
    }

    /// Solves `self * e = epsilon` term by term.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.dim();
        let mut e = vec![Matrix::identity(n)];
        for k in 1..=self.order() {
            let mut s = Matrix::zeros(n, n);
            for i in 1..=k {
                s = s.add(&self.d[i].mul(&e[k - i])?);
            }
            e.push(s.scale(&Rational::integer(-1)));
        }
        Ok(HigherDerivationSeq { d: e })
    }
}

fn mul_matrix(a: &Algebra<Rational>, left: &[Rational], right: &[Rational]) -> Matrix<Rational> {
    // x -> left * x * right
    let n = a.dim;
    let cols: Vec<Vec<Rational>> = (0..n).map(|j| a.mul(&a.mul(left, &basis_vector(n, j)), right)).collect();
    Matrix::from_cols(&cols).expect("square")
}

fn power(a: &Algebra<Rational>, r: &[Rational], l: usize) -> Result<Vec<Rational>> {
    let unit = a.unit.clone().ok_or_else(|| Error::Precondition("powers need a unit".into()))?;
    Ok((0..l).fold(unit, |acc, _| a.mul(&acc, r)))
}

/// `[r, k]`: zero unless `k | n`, and `x -> r^l x - r^(l-1) x r` for `n = k l`.
pub fn inner_rk(a: &Algebra<Rational>, r: &[Rational], k: usize, order: usize) -> Result<HigherDerivationSeq> {
    if k == 0 {
        return Err(Error::InvalidParam("k must be positive".into()));
    }
    let n = a.dim;
    let unit = a.unit.clone().ok_or_else(|| Error::Precondition("inner higher derivations need a unit".into()))?;
    let mut d = vec![Matrix::identity(n)];
    for m in 1..=order {
        if m % k != 0 {
            d.push(Matrix::zeros(n, n));
            continue;
        }
        let l = m / k;
        let rl = power(a, r, l)?;
        let rl1 = power(a, r, l - 1)?;
        d.push(mul_matrix(a, &rl, &unit).sub(&mul_matrix(a, &rl1, r)));
    }
    Ok(HigherDerivationSeq { d })
}

/// `Delta_r = [r_1, 1] * [r_2, 2] * .. * [r_N, N]`.
pub fn inner(a: &Algebra<Rational>, rs: &[Vec<Rational>], order: usize) -> Result<HigherDerivationSeq> {
    let mut acc = HigherDerivationSeq::identity(a.dim, order);
    for (k, r) in rs.iter().enumerate().take(order) {
        acc = acc.compose(&inner_rk(a, r, k + 1, order)?)?;
    }
    Ok(acc)
}

/// `d_n(rs) = sum_{i+j=n} d_i(r) d_j(s)` on basis pairs, `1 <= n <= N`.
pub fn higher_derivation_check(a: &Algebra<Rational>, d: &HigherDerivationSeq) -> Result<HdReport> {
    let n = a.dim;
    if d.dim() != n {
        return Err(Error::Dimension("sequence size differs from algebra dimension".into()));
    }
    if d.d[0] != Matrix::identity(n) {
        return Err(Error::Precondition("d_0 must be the identity".into()));
    }
    if !check_variety(a, "associative")?.holds {
        return Err(Error::Precondition("higher derivations are checked on associative algebras".into()));
    }
    let cols: Vec<Vec<Vec<Rational>>> = d.d.iter().map(|m| (0..n).map(|j| m.col(j)).collect()).collect();
    for k in 1..=d.order() {
        for r in 0..n {
            for s in 0..n {
                let lhs = d.d[k].mul_vec(&a.mul(&basis_vector(n, r), &basis_vector(n, s)));
                let mut rhs = vec![Rational::zero(); n];
                for i in 0..=k {
                    let p = a.mul(&cols[i][r], &cols[k - i][s]);
                    for (x, y) in rhs.iter_mut().zip(&p) {
                        *x = x.add(y);
                    }
                }
                if lhs != rhs {
                    return Ok(HdReport { holds: false, violation: Some((k, r, s)) });
                }
            }
        }
    }
    Ok(HdReport { holds: true, violation: None })
}

/// Values `sigma_n(x, y)` for `n = 0..N`, indexed by the intervals of the poset.
#[derive(Clone, Debug, PartialEq)]
pub struct HigherTransitiveMap {
    pub values: Vec<Vec<Rational>>,
}

impl HigherTransitiveMap {
    /// `sigma(x, y) = g(y) / g(x)` for power series `g(x) = 1 + sum_n g_n(x) t^n`.
    pub fn from_potential(p: &Poset, g: &[Vec<Rational>], order: usize) -> Self {
        let inv: Vec<Vec<Rational>> = g.iter().map(|s| series_inverse(s, order)).collect();
        let iv = p.intervals();
        let mut values = vec![vec![Rational::zero(); iv.len()]; order + 1];
        for (c, &(x, y)) in iv.iter().enumerate() {
            let prod = series_mul(&inv[x], &g[y], order);
            for n in 0..=order {
                values[n][c] = prod[n].clone();
            }
        }
        HigherTransitiveMap { values }
    }

    pub fn trivial(p: &Poset, order: usize) -> Self {
        let m = p.intervals().len();
        let mut values = vec![vec![Rational::zero(); m]; order + 1];
        values[0] = vec![Rational::one(); m];
        HigherTransitiveMap { values }
    }

    /// First `(n, x, z, y)` violating the defining conditions.
    pub fn violation(&self, p: &Poset) -> Option<(usize, usize, usize, usize)> {
        let iv = p.intervals();
        let at = |x: usize, y: usize| iv.iter().position(|&w| w == (x, y)).expect("interval");
        let order = self.values.len() - 1;
        if self.values[0].iter().any(|v| *v != Rational::one()) {
            return Some((0, 0, 0, 0));
        }
        for &(x, y) in &iv {
            for z in 0..p.len() {
                if !(p.leq(x, z) && p.leq(z, y)) {
                    continue;
                }
                for n in 1..=order {
                    let mut s = Rational::zero();
                    for i in 0..=n {
                        s = s.add(&self.values[i][at(x, z)].mul(&self.values[n - i][at(z, y)]));
                    }
                    if s != self.values[n][at(x, y)] {
                        return Some((n, x, z, y));
                    }
                }
            }
        }
        None
    }

    /// `tilde sigma_n (alpha) = sum sigma_n(x, y) alpha_xy e_xy`: diagonal in the `e_xy` basis.
    pub fn tilde(&self, p: &Poset) -> Result<HigherDerivationSeq> {
        if let Some(v) = self.violation(p) {
            return Err(Error::Precondition(format!("not a higher transitive map at {v:?}")));
        }
        Ok(HigherDerivationSeq { d: self.values.iter().map(|v| Matrix::diag(v)).collect() })
    }
}

fn series_mul(a: &[Rational], b: &[Rational], order: usize) -> Vec<Rational> {
    (0..=order)
        .map(|n| (0..=n).fold(Rational::zero(), |acc, i| acc.add(&a.get(i).cloned().unwrap_or_else(Rational::zero).mul(&b.get(n - i).cloned().unwrap_or_else(Rational::zero)))))
        .collect()
}

/// Inverse of a series with constant term 1.
fn series_inverse(a: &[Rational], order: usize) -> Vec<Rational> {
    let mut b = vec![Rational::one()];
    for n in 1..=order {
        let s = (1..=n).fold(Rational::zero(), |acc, i| acc.add(&a.get(i).cloned().unwrap_or_else(Rational::zero).mul(&b[n - i])));
        b.push(s.neg());
    }
    b
}

/// Checks `d = Delta_rho * tilde sigma` up to the truncation order.
pub fn hd_factorization_verify(
    p: &Poset,
    a: &Algebra<Rational>,
    d: &HigherDerivationSeq,
    rho: &[Vec<Rational>],
    sigma: &HigherTransitiveMap,
) -> Result<bool> {
    let st = sigma.tilde(p)?;
    let f = inner(a, rho, d.order())?.compose(&st)?;
    Ok(f == *d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use workbench_core::catalog;

    #[test]
    fn series_inverse_works() {
        let a = vec![Rational::one(), Rational::integer(2), Rational::integer(-1)];
        let b = series_inverse(&a, 4);
        let p = series_mul(&a, &b, 4);
        assert_eq!(p[0], Rational::one());
        assert!(p[1..].iter().all(|x| x.is_zero()));
    }

    #[test]
    fn identity_is_neutral() {
        let t2 = catalog::upper_triangular(2);
        let e12 = basis_vector(3, 1);
        let d = inner(&t2, &[e12], 3).unwrap();
        let eps = HigherDerivationSeq::identity(3, 3);
        assert_eq!(d.compose(&eps).unwrap(), d);
        assert_eq!(eps.compose(&d).unwrap(), d);
    }
}
