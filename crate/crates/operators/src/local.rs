//! Local derivations: refutation by sampling and the generic-point space.
//!
//! For a point `x` let `M(x)` be the matrix with columns `D_i x` over a basis of derivations.
//! The generic space is `{phi : phi(x) in colspan M(x)}` over the function field. Every
//! `(r+1)`-minor of `M(x)` or of `[M(x) | phi x]` is a homogeneous polynomial of degree `r+1`
//! in the coordinates of `x`, and a homogeneous polynomial of degree `d` vanishing on all
//! nonnegative integer points with coordinate sum `d` is zero. Evaluating on that lattice
//! therefore decides both the generic rank and the generic space exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use workbench_core::{Algebra, Echelon, Error, Matrix, Rational, Result, Ring, Subspace};

use crate::derivations::derivation_space;
use crate::space::OperatorSpace;

pub const SAMPLE_SEED: u64 = 0x10ca1;
pub const RANDOM_SAMPLES: usize = 64;

/// Outcome of testing one map.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict")]
pub enum LocalVerdict {
    /// `phi(x)` is not of the form `D x` for any derivation `D`.
    No { witness: Vec<String>, stage: String },
    /// Passed the structured and random samples and the generic-point condition.
    GenericYes { seed: u64, samples: usize },
}

pub struct LocalContext {
    pub n: usize,
    pub der: OperatorSpace<Rational>,
    ders: Vec<Matrix<Rational>>,
}

fn lattice_points(n: usize, d: usize) -> Vec<Vec<i64>> {
    fn rec(n: usize, left: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n - 1 {
            cur.push(left as i64);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in 0..=left {
            cur.push(v as i64);
            rec(n, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

fn to_q(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::integer(x)).collect()
}

impl LocalContext {
    pub fn new(a: &Algebra<Rational>) -> Result<Self> {
        let der = derivation_space(a, &Rational::one(), None)?;
        let ders = der.matrices();
        Ok(LocalContext { n: a.dim, der, ders })
    }

    fn orbit(&self, x: &[Rational]) -> Subspace<Rational> {
        let vs: Vec<Vec<Rational>> = self.ders.iter().map(|d| d.mul_vec(x)).collect();
        Subspace::from_vectors(self.n, &vs)
    }

    fn structured_points(&self) -> Vec<Vec<Rational>> {
        let n = self.n;
        let mut pts = Vec::new();
        for i in 0..n {
            pts.push(workbench_core::basis_vector(n, i));
        }
        for i in 0..n {
            for j in i + 1..n {
                let mut v = vec![Rational::zero(); n];
                v[i] = Rational::one();
                v[j] = Rational::one();
                pts.push(v);
            }
        }
        pts
    }

    fn random_points(&self) -> Vec<Vec<Rational>> {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        (0..RANDOM_SAMPLES).map(|_| (0..self.n).map(|_| Rational::integer(rng.gen_range(-9..=9))).collect()).collect()
    }

    /// Generic rank of `M(x)` and the lattice it was certified on.
    pub fn generic_rank(&self) -> (usize, Vec<Vec<Rational>>) {
        let mut r = self.random_points().iter().map(|x| self.orbit(x).dim()).max().unwrap_or(0);
        loop {
            let pts: Vec<Vec<Rational>> = lattice_points(self.n, r + 1).iter().map(|p| to_q(p)).collect();
            let top = pts.iter().map(|x| self.orbit(x).dim()).max().unwrap_or(0);
            if top <= r {
                return (r, pts);
            }
            r = top;
        }
    }

    /// `{phi : phi(x) in span{D x} for generic x}`, exact.
    pub fn generic_space(&self) -> OperatorSpace<Rational> {
        let n = self.n;
        let (r, pts) = self.generic_rank();
        let mut e = Echelon::new(n * n);
        for x in &pts {
            let orb = self.orbit(x);
            if orb.dim() < r {
                continue;
            }
            for w in orb.annihilator().basis() {
                // sum_{k,s} w_k phi[k][s] x_s = 0
                let mut row = Vec::new();
                for (k, wk) in w.iter().enumerate() {
                    if wk.is_zero() {
                        continue;
                    }
                    for (s, xs) in x.iter().enumerate() {
                        if !xs.is_zero() {
                            row.push((k * n + s, wk.mul(xs)));
                        }
                    }
                }
                e.add_sparse(row);
            }
        }
        OperatorSpace::new(n, "locder-generic", e.nullspace())
    }

    /// Structured points, then seeded random points, then the certifying lattice.
    pub fn test(&self, phi: &Matrix<Rational>) -> Result<LocalVerdict> {
        if phi.rows() != self.n || phi.cols() != self.n {
            return Err(Error::Dimension(format!("expected a {0}x{0} matrix", self.n)));
        }
        let fail = |x: &Vec<Rational>, stage: &str| LocalVerdict::No {
            witness: x.iter().map(|c| c.to_string()).collect(),
            stage: stage.to_string(),
        };
        let structured = self.structured_points();
        for x in &structured {
            if !self.orbit(x).contains(&phi.mul_vec(x)) {
                return Ok(fail(x, "structured"));
            }
        }
        let random = self.random_points();
        for x in &random {
            if !self.orbit(x).contains(&phi.mul_vec(x)) {
                return Ok(fail(x, "random"));
            }
        }
        let (r, pts) = self.generic_rank();
        for x in &pts {
            let orb = self.orbit(x);
            if orb.dim() == r && !orb.contains(&phi.mul_vec(x)) {
                return Ok(fail(x, "generic"));
            }
        }
        Ok(LocalVerdict::GenericYes { seed: SAMPLE_SEED, samples: structured.len() + random.len() + pts.len() })
    }
}

/// Antisymmetric matrices as a flattened subspace.
pub fn antisymmetric_space(n: usize) -> Subspace<Rational> {
    let mut vs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let m = Matrix::unit(n, i, j).sub(&Matrix::unit(n, j, i));
            vs.push(m.flat().to_vec());
        }
    }
    Subspace::from_vectors(n * n, &vs)
}
