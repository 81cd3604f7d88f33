use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use workbench_core::{basis_vector, catalog, q, random, Algebra, Rational, Ring, StructureTensor};
use workbench_identity::parse_identity;
use workbench_poisson::*;

fn r(v: i64) -> Rational {
    Rational::integer(v)
}

/// `Q[t]/(t^k)` with the derivation `D(t) = p(t)` and `[x, y] = x D(y) - D(x) y`.
fn truncated_with_derivation(k: usize, p: &[i64]) -> Algebra<Rational> {
    let mut m = StructureTensor::zero(k, 2);
    for i in 0..k {
        for j in 0..k - i {
            m.add_entry(&[i, j], i + j, &r(1));
        }
    }
    // D(t^i) = i t^(i-1) p(t), p without constant term
    let mut d = vec![vec![Rational::zero(); k]; k];
    for i in 1..k {
        for (s, c) in p.iter().enumerate() {
            let deg = i - 1 + s + 1;
            if deg < k {
                d[i][deg] = d[i][deg].add(&r(i as i64 * c));
            }
        }
    }
    let mut br = StructureTensor::zero(k, 2);
    for x in 0..k {
        for y in 0..k {
            let a = m.apply(&[&basis_vector(k, x), &d[y]]);
            let b = m.apply(&[&d[x], &basis_vector(k, y)]);
            let v: Vec<Rational> = a.iter().zip(&b).map(|(u, w)| u.sub(w)).collect();
            br.set_dense(&[x, y], &v);
        }
    }
    let mut alg = Algebra::binary(format!("trunc{k}"), m).with_op("bracket", br).unwrap();
    alg.unit = Some(basis_vector(k, 0));
    alg
}

#[test]
fn tp4_is_poisson_not_transposed() {
    let a = catalog::tp4();
    for kind in [Kind::Poisson, Kind::Generic, Kind::Generalized] {
        assert!(check_poisson_family(&a, kind).unwrap().holds, "{kind}");
    }
    let t = check_poisson_family(&a, Kind::Transposed).unwrap();
    assert!(t.preconditions_hold && !t.holds);
    assert!(t.axioms[0].witness.is_some());
    assert!(half_derivation_link_test(&a).is_err());
    // the literal table breaks the Leibniz rule
    assert!(!check_poisson_family(&catalog::tp4_printed(), Kind::Poisson).unwrap().holds);
}

#[test]
fn dim2_transposed_pair() {
    let a = catalog::transposed2();
    let rep = check_poisson_family(&a, Kind::Transposed).unwrap();
    assert!(rep.holds, "{rep:?}");
    let link = half_derivation_link_test(&a).unwrap();
    assert!(link.holds);
    assert!(link.certificates.iter().all(|c| c.is_some()));
}

#[test]
fn generalized_requires_unit_and_missing_ops_error() {
    let mut a = catalog::tp4();
    a.unit = None;
    assert!(check_poisson_family(&a, Kind::Generalized).is_err());
    assert!(check_poisson_family(&catalog::sl2(), Kind::Poisson).is_err());
}

#[test]
fn contact_pair_is_generalized_with_nonzero_d() {
    let a = contact_example();
    assert!(!d_map(&a).unwrap().unwrap().is_zero());
    assert!(check_poisson_family(&a, Kind::Generalized).unwrap().holds);
    assert!(!check_poisson_family(&a, Kind::Poisson).unwrap().holds);
}

#[test]
fn jordan_bracket_from_generalized_pair() {
    // J(a, b) = G(a, b) - 1/2 (a D(b) - D(a) b) with D = 2 D_G is a Jordan bracket
    let g = contact_example();
    let mul = g.op_result("mul").unwrap();
    let dg = d_map(&g).unwrap().unwrap().to_matrix();
    let n = g.dim;
    let mut j = g.op_result("bracket").unwrap().clone();
    for x in 0..n {
        for y in 0..n {
            let d = |i: usize| dg.col(i).iter().map(|c| c.mul(&r(2))).collect::<Vec<_>>();
            let a = mul.apply(&[&basis_vector(n, x), &d(y)]);
            let b = mul.apply(&[&d(x), &basis_vector(n, y)]);
            for k in 0..n {
                j.add_entry(&[x, y], k, &a[k].sub(&b[k]).mul(&q(-1, 2)));
            }
        }
    }
    let jb = g.clone().with_op("bracket", j).unwrap();
    assert!(check_poisson_family(&jb, Kind::JordanBracket).unwrap().holds);
}

#[test]
fn compatible_spaces() {
    assert_eq!(transposed_compatible_space(&catalog::sl2()).unwrap().dim(), 0);
    for n in 1..=3 {
        let s = transposed_compatible_space(&catalog::abelian(n)).unwrap();
        assert_eq!(s.dim(), n * n * (n + 1) / 2);
        assert!(s.obstructions_vanish(&vec![Rational::zero(); s.dim()]));
    }
    let t2 = catalog::transposed2();
    let lie = Algebra::binary("r2", t2.op_result("bracket").unwrap().clone());
    let s = transposed_compatible_space(&lie).unwrap();
    let c = s.coordinates(t2.op_result("mul").unwrap()).expect("unital product is compatible");
    assert!(s.obstructions_vanish(&c));
    assert!(transposed_compatible_space(&catalog::abelian(2).with_op("bracket", catalog::null_filiform(2).product().unwrap().clone()).unwrap()).is_err());
}

#[test]
fn abelian_obstructions_are_associativity() {
    // a point of S is associative iff its obstructions vanish
    let s = transposed_compatible_space(&catalog::abelian(2)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let c: Vec<Rational> = (0..s.dim()).map(|_| r(rng.gen_range(-1..=1))).collect();
        let a = Algebra::binary("p", s.product(&c));
        let assoc = workbench_identity::check_variety(&a, "associative").unwrap().holds;
        assert_eq!(assoc, s.obstructions_vanish(&c));
    }
}

#[test]
fn customary_examples() {
    let a = catalog::tp4();
    let comm = parse_identity("angle(x1, x2)*angle(x3, x4) - angle(x3, x4)*angle(x1, x2)").unwrap();
    assert!(customary_check(&a, &comm).unwrap().holds);
    let anti = CustomaryIdentity::new(2).term(1, &[0, 1], 1).unwrap().term(1, &[1, 0], 1).unwrap();
    assert!(customary_check(&a, &anti.to_identity().unwrap()).unwrap().holds);
    let single = CustomaryIdentity::new(2).term(1, &[0, 1], 1).unwrap();
    let rep = customary_check(&a, &single.to_identity().unwrap()).unwrap();
    assert!(!rep.holds);
    assert_eq!(rep.witness.unwrap().tuple, vec![1, 2]);
    assert!(customary_check(&a, &parse_identity("angle(x, x)").unwrap()).is_err());
}

#[test]
fn customary_with_nonzero_d() {
    // <x, y> of the contact pair: {x,y} - D(x) y + x D(y) = 0 identically
    let a = contact_example();
    assert!(angle_bracket(&a).unwrap().is_zero());
    let dd = CustomaryIdentity::new(2).term(1, &[0, 1], 0).unwrap().term(-1, &[1, 0], 0).unwrap();
    assert!(customary_check(&a, &dd.to_identity().unwrap()).unwrap().holds);
}

#[test]
fn poisson_implies_generic_and_generalized() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut pairs = vec![catalog::tp4()];
    for _ in 0..6 {
        let p = random::random_invertible(&mut rng, 4, 2);
        pairs.push(catalog::tp4().change_basis(&p).unwrap());
    }
    for a in pairs {
        assert!(check_poisson_family(&a, Kind::Poisson).unwrap().holds);
        assert!(check_poisson_family(&a, Kind::Generic).unwrap().holds);
        assert!(d_map(&a).unwrap().unwrap().is_zero());
        assert!(check_poisson_family(&a, Kind::Generalized).unwrap().holds);
    }
}

#[test]
fn derivation_pairs_are_transposed_and_linked() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a);
    let mut count = 0;
    for k in 2..=4 {
        for _ in 0..4 {
            let p: Vec<i64> = (0..k - 1).map(|_| rng.gen_range(-2..=2)).collect();
            let a = truncated_with_derivation(k, &p);
            if a.op_result("bracket").unwrap().is_zero() {
                continue;
            }
            let a = a.change_basis(&random::random_invertible(&mut rng, k, 1)).unwrap();
            assert!(check_poisson_family(&a, Kind::Transposed).unwrap().holds);
            assert!(half_derivation_link_test(&a).unwrap().holds);
            count += 1;
        }
    }
    assert!(count >= 6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn verdicts_are_basis_independent(seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random::random_invertible(&mut rng, 2, 2);
        for a in [catalog::transposed2(), contact_example()] {
            let b = a.change_basis(&p).unwrap();
            for kind in [Kind::Poisson, Kind::Generic, Kind::Transposed, Kind::Generalized, Kind::JordanBracket] {
                prop_assert_eq!(check_poisson_family(&a, kind).unwrap().holds, check_poisson_family(&b, kind).unwrap().holds);
            }
        }
    }
}
