//! Seeded random tables and basis changes for experiments and tests.

use rand::Rng;

use crate::algebra::Algebra;
use crate::linalg::Matrix;
use crate::scalar::{Rational, Ring};
use crate::tensor::StructureTensor;

/// Binary algebra whose structure constants are nonzero with probability `density`,
/// drawn uniformly from `[-bound, bound] \ {0}`.
pub fn random_binary(rng: &mut impl Rng, dim: usize, density: f64, bound: i64) -> Algebra<Rational> {
    let mut t = StructureTensor::zero(dim, 2);
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                if rng.gen_bool(density) {
                    let mut c = rng.gen_range(1..=bound);
                    if rng.gen_bool(0.5) {
                        c = -c;
                    }
                    t.add_entry(&[i, j], k, &Rational::integer(c));
                }
            }
        }
    }
    Algebra::binary(format!("random({dim})"), t)
}

/// Invertible matrix with entries in `[-bound, bound]`, resampled until the determinant is nonzero.
pub fn random_invertible(rng: &mut impl Rng, n: usize, bound: i64) -> Matrix<Rational> {
    loop {
        let data = (0..n * n).map(|_| Rational::integer(rng.gen_range(-bound..=bound))).collect();
        let m = Matrix::from_flat(n, n, data);
        if !m.det().map(|d| d.is_zero()).unwrap_or(true) {
            return m;
        }
    }
}
