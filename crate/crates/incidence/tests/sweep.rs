use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use workbench_core::{Rational, Ring, StructureTensor};
use workbench_incidence::*;

#[test]
fn gf3_sweep_up_to_five() {
    let r = gf3_sweep(5).unwrap();
    assert_eq!(r.posets, 1 + 2 + 5 + 16 + 63 + 1);
    assert!(r.agree(), "{:?}", &r.mismatches[..r.mismatches.len().min(5)]);
    assert!(r.chain_constant > 0 && r.chain_constant < r.assignments);
}

#[test]
fn polynomial_route_matches_direct_field_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut posets: Vec<Poset> = (1..=4).flat_map(Poset::all_up_to_iso).collect();
    posets.push(Poset::crown());
    posets.push(Poset::chain(5));
    for p in posets {
        let f = SigmaForms::new(&p).unwrap();
        let m = f.pairs.len();
        let mut samples: Vec<Vec<i64>> = (0..3).map(|c| vec![c; m]).collect();
        samples.extend((0..3).map(|_| (0..m).map(|_| rng.gen_range(0..3)).collect()));
        for s in samples {
            let (c, q) = direct_verdicts(&p, &s).unwrap();
            assert_eq!((c, q), (f.chain_constant(&s), f.poisson(&s)), "{:?} {s:?}", p.covers());
        }
    }
}

/// Random sigma constant on chains: one value per class of pairs sharing a maximal chain.
fn chain_constant_sigma(p: &Poset, rng: &mut impl Rng) -> SigmaMap<Rational> {
    let pairs = p.strict_pairs();
    let mut class: Vec<usize> = (0..pairs.len()).collect();
    fn find(c: &mut Vec<usize>, i: usize) -> usize {
        if c[i] != i {
            let r = find(c, c[i]);
            c[i] = r;
        }
        c[i]
    }
    for ch in p.maximal_chains() {
        let ix: Vec<usize> = pairs.iter().enumerate().filter(|(_, (x, y))| ch.contains(x) && ch.contains(y)).map(|(i, _)| i).collect();
        for w in ix.windows(2) {
            let (a, b) = (find(&mut class, w[0]), find(&mut class, w[1]));
            class[a] = b;
        }
    }
    let vals: Vec<Rational> = (0..pairs.len()).map(|_| Rational::new(rng.gen_range(-5..=5), rng.gen_range(1..=3)).unwrap()).collect();
    pairs.iter().enumerate().map(|(i, &k)| (k, vals[find(&mut class, i)].clone())).collect()
}

#[test]
fn rational_sigma_on_random_posets() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x51);
    for k in 0..20 {
        let n = 3 + k % 5;
        let p = Poset::random(&mut rng, n, 0.4);
        let s = if k % 2 == 0 {
            chain_constant_sigma(&p, &mut rng)
        } else {
            p.strict_pairs().into_iter().map(|q| (q, Rational::integer(rng.gen_range(-3..=3)))).collect()
        };
        let r = poisson_sigma_equiv_test(&p, &s).unwrap();
        assert!(r.agree, "{:?} {:?}", p.covers(), r);
        if k % 2 == 0 {
            assert!(r.chain_constant && r.poisson);
        }
    }
}

#[test]
fn crown_examples() {
    let p = Poset::crown();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..5 {
        let s: SigmaMap<Rational> = p.strict_pairs().into_iter().map(|q| (q, Rational::new(rng.gen_range(-7..=7), rng.gen_range(1..=4)).unwrap())).collect();
        let r = poisson_sigma_equiv_test(&p, &s).unwrap();
        assert!(r.chain_constant && r.poisson);
    }
    // sigma(1,3) = 1, zero elsewhere: nonzero, and not a multiple of the commutator
    let s: SigmaMap<Rational> = p.strict_pairs().into_iter().map(|q| (q, if q == (0, 2) { Rational::one() } else { Rational::zero() })).collect();
    let b = sigma_bracket(&p, &s).unwrap();
    assert!(!b.is_zero());
    let ones: SigmaMap<Rational> = p.strict_pairs().into_iter().map(|q| (q, Rational::one())).collect();
    let comm = sigma_bracket(&p, &ones).unwrap();
    let scalar_multiple = |c: &Rational| b == comm.scale(c);
    assert!(!(-3..=3).any(|c| scalar_multiple(&Rational::integer(c))));
    assert!(poisson_sigma_equiv_test(&p, &s).unwrap().poisson);
}

#[test]
fn chain_sigma_one_is_the_commutator() {
    let p = Poset::chain(3);
    let a = incidence_algebra::<Rational>(&p);
    let mu = a.product().unwrap();
    let n = a.dim;
    let mut comm = StructureTensor::zero(n, 2);
    for i in 0..n {
        for j in 0..n {
            let v: Vec<Rational> = mu.get_dense(&[i, j]).iter().zip(mu.get_dense(&[j, i])).map(|(x, y)| x.sub(&y)).collect();
            comm.set_dense(&[i, j], &v);
        }
    }
    let ones: SigmaMap<Rational> = p.strict_pairs().into_iter().map(|q| (q, Rational::one())).collect();
    assert_eq!(sigma_bracket(&p, &ones).unwrap(), comm);
    let mut bad = ones.clone();
    bad.insert((1, 2), Rational::integer(2));
    let r = poisson_sigma_equiv_test(&p, &bad).unwrap();
    assert!(!r.chain_constant && !r.poisson && r.failed.is_some());
}
