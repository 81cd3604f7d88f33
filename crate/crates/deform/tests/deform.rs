use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use workbench_core::random::{random_binary, random_invertible};
use workbench_core::{basis_vector, catalog, Algebra, Field, Matrix, RatFunc, Rational, Ring, StructureTensor, Subspace};
use workbench_deform::*;
use workbench_identity::{check_variety, eval_identity, polarize, variety};

fn r(n: i64) -> Rational {
    Rational::integer(n)
}

#[test]
fn scalar_certificate_scales_by_t() {
    for a in [catalog::sl2(), catalog::heis3(), catalog::null_filiform(3), catalog::upper_triangular(2), catalog::cayley_dickson(2)] {
        let n = a.dim;
        let rep = degeneration_verify(&a, &catalog::abelian(n), &Certificate::scalar(n, -1)).unwrap();
        assert!(rep.holds(), "{}", a.name);
        // every constant is c t
        let mu = a.product().unwrap();
        let expected: usize = mu.entries().map(|(_, o)| o.len()).sum();
        assert_eq!(rep.transformed.len(), expected);
        for e in &rep.transformed {
            let c = mu.coeff(&e.args, e.out);
            assert_eq!(RatFunc::parse(&e.value).unwrap(), RatFunc::t().mul(&RatFunc::constant(c)));
        }
    }
}

#[test]
fn nf2_to_zero_by_diag_t_t3() {
    let nf2 = catalog::null_filiform(2);
    let rep = degeneration_verify(&nf2, &catalog::abelian(2), &Certificate::diagonal(&[1, 3])).unwrap();
    assert!(rep.holds());
    assert_eq!(rep.transformed.len(), 1);
    let e = &rep.transformed[0];
    assert_eq!((e.args.clone(), e.out), (vec![0, 0], 1));
    assert_eq!(RatFunc::parse(&e.value).unwrap(), RatFunc::t());
    // the inverse direction has a pole
    let back = degeneration_verify(&nf2, &catalog::abelian(2), &Certificate::diagonal(&[-1, -3])).unwrap();
    assert!(!back.limit_exists && back.poles.len() == 1);
    // right limit, wrong target
    let wrong = degeneration_verify(&nf2, &nf2, &Certificate::diagonal(&[1, 3])).unwrap();
    assert!(wrong.limit_exists && !wrong.equals_target);
}

#[test]
fn errors() {
    assert!(degeneration_verify(&catalog::sl2(), &catalog::abelian(2), &Certificate::scalar(3, -1)).is_err());
    let g = Matrix::from_rows(vec![vec![RatFunc::t(), RatFunc::t()], vec![RatFunc::one(), RatFunc::one()]]).unwrap();
    assert!(Certificate::new(g).is_err());
}

#[test]
fn certificates_compose() {
    let nf2 = catalog::null_filiform(2);
    let g = Certificate::diagonal(&[-1, -2]);
    let h = Certificate::diagonal(&[1, 3]);
    assert!(degeneration_verify(&nf2, &nf2, &g).unwrap().holds());
    assert!(degeneration_verify(&nf2, &catalog::abelian(2), &h).unwrap().holds());
    assert!(degeneration_verify(&nf2, &catalog::abelian(2), &h.then(&g).unwrap()).unwrap().holds());

    // sl2 contracts to a solvable algebra, which contracts to zero
    let sl2 = catalog::sl2();
    let g = Certificate::diagonal(&[0, -1, 0]);
    let rep = degeneration_verify(&sl2, &sl2, &g).unwrap();
    let solv = rep.limit.clone().unwrap();
    assert!(!rep.equals_target);
    assert!(degeneration_verify(&sl2, &solv, &g).unwrap().holds());
    let h = Certificate::scalar(3, -1);
    assert!(degeneration_verify(&solv, &catalog::abelian(3), &h).unwrap().holds());
    assert!(degeneration_verify(&sl2, &catalog::abelian(3), &h.then(&g).unwrap()).unwrap().holds());
    assert!(degeneration_obstruction(&sl2, &solv, true).unwrap().is_empty());
}

/// `diag(t^k) P (I + t E_ij)` with `P` constant.
fn random_certificate(rng: &mut impl Rng, n: usize) -> Certificate {
    let ks: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
    let p = random_invertible(rng, n, 2).map(|c| RatFunc::constant(c.clone()));
    let mut u = Matrix::identity(n);
    let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
    if i != j {
        u.set(i, j, RatFunc::t().mul(&RatFunc::constant(r(rng.gen_range(-2..=2)))));
    }
    Certificate::new(Certificate::diagonal(&ks).g.mul(&p).unwrap().mul(&u).unwrap()).unwrap()
}

#[test]
fn action_at_one_is_change_of_basis() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut done = 0;
    while done < 10 {
        let n = rng.gen_range(2..=3);
        let a = random_binary(&mut rng, n, 0.5, 3);
        let cert = random_certificate(&mut rng, n);
        let Ok(g1) = cert.at(&Rational::one()) else { continue };
        let Ok(b) = a.change_basis(&g1) else { continue };
        let at = a.map(|c| RatFunc::constant(c.clone())).change_basis(&cert.g).unwrap();
        let at1 = at.product().unwrap().try_map(|c| c.eval(&Rational::one()));
        let Ok(at1) = at1 else { continue };
        assert_eq!(&at1, b.product().unwrap());
        done += 1;
    }
}

/// Pairs `(A, lim g*A)` for random certificates with a limit.
fn certified_pairs(count: usize) -> Vec<(Algebra<Rational>, Algebra<Rational>, Certificate)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xdef);
    let pool = [catalog::sl2(), catalog::heis3(), catalog::null_filiform(3), catalog::upper_triangular(2), catalog::null_filiform(4)];
    let mut out = Vec::new();
    while out.len() < count {
        let a = if rng.gen_bool(0.5) {
            pool[rng.gen_range(0..pool.len())].clone()
        } else {
            random_binary(&mut rng, 3, 0.3, 2)
        };
        let n = a.dim;
        let cert = random_certificate(&mut rng, n);
        let rep = degeneration_verify(&a, &a, &cert).unwrap();
        if let Some(b) = rep.limit {
            assert!(degeneration_verify(&a, &b, &cert).unwrap().holds());
            out.push((a, b, cert));
        }
    }
    out
}

#[test]
fn obstructions_never_reject_certified_pairs() {
    let pairs = certified_pairs(20);
    let mut proper = 0;
    for (a, b, _) in &pairs {
        let v = degeneration_obstruction(a, b, false).unwrap();
        assert!(v.is_empty(), "{} -> {:?}: {v:?}", a.name, b.product().unwrap());
        if invariant_profile(a).unwrap() != invariant_profile(b).unwrap() {
            proper += 1;
        }
    }
    assert!(proper >= 5, "only {proper} proper degenerations");
}

#[test]
fn obstruction_examples() {
    let v = degeneration_obstruction(&catalog::abelian(3), &catalog::sl2(), false).unwrap();
    assert!(v.iter().any(|x| x.detail == "k = 2: 0 < 3"));
    assert!(degeneration_obstruction(&catalog::sl2(), &catalog::abelian(3), true).unwrap().is_empty());
    assert!(degeneration_obstruction(&catalog::null_filiform(3), &catalog::abelian(3), true).unwrap().is_empty());
    let p = invariant_profile(&catalog::null_filiform(3)).unwrap();
    assert_eq!(p.power_dims, vec![3, 2, 1, 0]);
    assert_eq!(p.annihilator_dim, 1);
    assert!(p.nilpotent && !p.commutative);
    // Der of a non-abelian algebra never reaches n^2
    assert!(!degeneration_obstruction(&catalog::abelian(3), &catalog::heis3(), true).unwrap().is_empty());
    assert!(degeneration_obstruction(&catalog::sl2(), &catalog::sl2(), true).unwrap().iter().any(|x| x.rule.contains("Der")));
    assert!(!degeneration_obstruction(&catalog::sl2(), &catalog::abelian(2), false).unwrap().is_empty());
}

/// `x Q[x] / x^(n+1)`: `e_i e_j = e_(i+j+1)`.
fn nil_powers(n: usize) -> Algebra<Rational> {
    let mut t = StructureTensor::zero(n, 2);
    for i in 0..n {
        for j in 0..n {
            if i + j + 1 < n {
                t.add_entry(&[i, j], i + j + 1, &Rational::one());
            }
        }
    }
    Algebra::binary("nil", t)
}

/// `Z2` by evaluating the identities on numeric extensions `A_E` for each elementary form `E`.
fn z2_oracle(a: &Algebra<Rational>, names: &[&str]) -> Subspace<Rational> {
    let n = a.dim;
    let ext = |m: Matrix<Rational>| central_extension(a, &Cocycle { m: vec![m] }).unwrap().algebra;
    let base = ext(Matrix::zeros(n, n));
    let mut cols = Vec::new();
    for ij in 0..n * n {
        let mut m = Matrix::zeros(n, n);
        m.set(ij / n, ij % n, Rational::one());
        let e = ext(m);
        let mut col = Vec::new();
        for name in names {
            for id in &variety(name, 2).unwrap().identities {
                for lin in polarize(id, 0).unwrap().identities {
                    let k = lin.num_vars();
                    for flat in 0..n.pow(k as u32) {
                        let vals: Vec<Vec<Rational>> = (0..k).map(|p| basis_vector(n + 1, flat / n.pow(p as u32) % n)).collect();
                        let d = eval_identity(&e, &lin, &vals).unwrap();
                        let d0 = eval_identity(&base, &lin, &vals).unwrap();
                        col.push(d[n].sub(&d0[n]));
                    }
                }
            }
        }
        cols.push(col);
    }
    let rows = cols[0].len();
    let m = Matrix::from_fn(rows, n * n, |i, j| cols[j][i].clone());
    m.nullspace()
}

#[test]
fn cocycle_spaces_match_oracle() {
    let cases: Vec<(Algebra<Rational>, &str)> = vec![
        (catalog::abelian(2), "lie"),
        (catalog::abelian(3), "associative"),
        (catalog::abelian(3), "commutative"),
        (catalog::heis3(), "lie"),
        (catalog::null_filiform(2), "leibniz"),
        (nil_powers(3), "commutative associative"),
        (nil_powers(3), "jordan"),
        (catalog::null_filiform(3), "leibniz"),
        (catalog::sl2(), "lie"),
        (catalog::heis3(), "malcev"),
    ];
    for (a, v) in cases {
        let names: Vec<&str> = v.split(' ').collect();
        let c = cocycle_space(&a, v, 1).unwrap();
        assert_eq!(c.z2, z2_oracle(&a, &names), "{} {v}", a.name);
        assert!(c.b2.is_subspace_of(&c.z2));
        let c2 = cocycle_space(&a, v, 2).unwrap();
        assert_eq!((c2.z2.dim(), c2.b2.dim()), (2 * c.z2.dim(), 2 * c.b2.dim()));
    }
    let n = 3;
    assert_eq!(cocycle_space(&catalog::abelian(n), "lie", 1).unwrap().z2.dim(), n * (n - 1) / 2);
    assert_eq!(cocycle_space(&catalog::abelian(n), "associative", 1).unwrap().z2.dim(), n * n);
    assert_eq!(cocycle_space(&catalog::abelian(n), "commutative", 1).unwrap().z2.dim(), n * (n + 1) / 2);
    let h = cocycle_space(&catalog::heis3(), "lie", 1).unwrap();
    assert_eq!((h.z2.dim(), h.b2.dim(), h.h2_dim()), (3, 1, 2));
    // sl2 has no nontrivial central extensions
    assert_eq!(cocycle_space(&catalog::sl2(), "lie", 1).unwrap().h2_dim(), 0);
}

#[test]
fn heisenberg_and_nf2_as_extensions() {
    let a = catalog::abelian(2);
    let c = cocycle_space(&a, "lie", 1).unwrap();
    assert_eq!((c.z2.dim(), c.b2.dim(), c.h2_dim()), (1, 0, 1));
    let z = &c.z2.basis()[0];
    let theta = Cocycle::from_flat(2, 1, &z.iter().map(|x| x.div(&z[1]).unwrap()).collect::<Vec<_>>()).unwrap();
    assert_eq!(theta.m[0].get(0, 1), &r(1));
    let e = central_extension(&a, &theta).unwrap();
    assert_eq!(e.algebra.product().unwrap(), catalog::heis3().product().unwrap());
    assert!(e.annihilator_component_free && e.components_independent);

    let a1 = catalog::abelian(1);
    let c = cocycle_space(&a1, "commutative associative", 1).unwrap();
    assert_eq!(c.z2.dim(), 1);
    let e = central_extension(&a1, &Cocycle { m: vec![Matrix::identity(1)] }).unwrap();
    assert_eq!(e.algebra.product().unwrap(), catalog::null_filiform(2).product().unwrap());

    let split = central_extension(&catalog::null_filiform(2), &Cocycle::zero(2, 1)).unwrap();
    assert!(!split.annihilator_component_free && !split.components_independent);
    assert!(cocycle_space(&catalog::sl2(), "associative", 1).is_err());
    assert!(cocycle_space(&a, "sagle", 1).is_err());
}

fn random_in(rng: &mut impl Rng, s: &Subspace<Rational>) -> Vec<Rational> {
    s.basis().iter().fold(vec![Rational::zero(); s.ambient()], |acc, b| {
        let c = r(rng.gen_range(-3..=3));
        acc.iter().zip(b).map(|(x, y)| x.add(&c.mul(y))).collect()
    })
}

#[test]
fn coboundaries_give_split_extensions() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for a in [catalog::heis3(), catalog::null_filiform(3), catalog::sl2(), catalog::upper_triangular(2)] {
        for s in 1..=2 {
            let n = a.dim;
            let f = Matrix::from_flat(s, n, (0..s * n).map(|_| r(rng.gen_range(-3..=3))).collect());
            let theta = Cocycle::coboundary(&a, &f).unwrap();
            let e = central_extension(&a, &theta).unwrap();
            let split = central_extension(&a, &Cocycle::zero(n, s)).unwrap();
            assert_eq!(e.algebra.change_basis(&split_isomorphism(&f)).unwrap().product().unwrap(), split.algebra.product().unwrap());
            if !f.is_zero() {
                assert!(!e.components_independent);
            }
        }
    }
}

#[test]
fn fifty_random_cocycles_per_variety() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x50);
    let candidates = [catalog::heis3(), nil_powers(3), catalog::null_filiform(3), catalog::null_filiform(2), catalog::abelian(2)];
    let varieties = [
        "lie", "leibniz", "associative", "commutative", "anticommutative", "jordan", "malcev", "zinbiel", "novikov",
        "alternative", "bicommutative", "left-symmetric", "binary-lie", "assosymmetric", "symmetric-leibniz",
    ];
    for v in varieties {
        let a = candidates.iter().find(|a| check_variety(*a, v).unwrap().holds).expect("abelian is in every variety");
        for k in 0..50 {
            let s = 1 + k % 2;
            let c = cocycle_space(a, v, s).unwrap();
            let theta = Cocycle::from_flat(a.dim, s, &random_in(&mut rng, &c.z2)).unwrap();
            let e = central_extension(a, &theta).unwrap();
            assert!(check_variety(&e.algebra, v).unwrap().holds, "{v} on {}", a.name);
        }
    }
}

#[test]
fn non_cocycles_fail() {
    // a form outside Z2 gives an extension outside the variety
    let a = catalog::heis3();
    let c = cocycle_space(&a, "lie", 1).unwrap();
    let mut m = Matrix::zeros(3, 3);
    m.set(0, 0, Rational::one());
    assert!(!c.z2.contains(m.flat()));
    let e = central_extension(&a, &Cocycle { m: vec![m] }).unwrap();
    assert!(!check_variety(&e.algebra, "lie").unwrap().holds);
}

mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn scalar_certificate_limit_is_zero(seed in any::<u64>(), n in 1usize..4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_binary(&mut rng, n, 0.5, 4);
            let rep = degeneration_verify(&a, &catalog::abelian(n), &Certificate::scalar(n, -1)).unwrap();
            prop_assert!(rep.holds());
            prop_assert!(degeneration_obstruction(&a, &catalog::abelian(n), false).unwrap().is_empty());
        }

        #[test]
        fn coboundaries_are_cocycles_for_commutative_algebras(seed in any::<u64>(), n in 1usize..4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_binary(&mut rng, n, 0.5, 4);
            let t = a.product().unwrap();
            let mut c = StructureTensor::zero(n, 2);
            for i in 0..n {
                for j in 0..n {
                    let v: Vec<Rational> = t.get_dense(&[i, j]).iter().zip(t.get_dense(&[j, i])).map(|(x, y)| x.add(&y)).collect();
                    c.set_dense(&[i, j], &v);
                }
            }
            let a = Algebra::binary("sym", c);
            let cs = cocycle_space(&a, "commutative", 1).unwrap();
            prop_assert!(cs.b2.is_subspace_of(&cs.z2));
            prop_assert_eq!(cs.z2.dim(), n * (n + 1) / 2);
        }
    }
}
