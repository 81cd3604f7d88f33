//! One line per acceptance criterion. Exits nonzero when any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use workbench_core::random::{random_binary, random_invertible};
use workbench_core::{basis_vector, catalog, Algebra, Matrix, RatFunc, Rational, Ring, Subspace};
use workbench_deform::{central_extension, cocycle_space, degeneration_obstruction, degeneration_verify, invariant_profile, Certificate, Cocycle};
use workbench_identity::{check_variety, minus, plus};
use workbench_incidence::{
    gf3_sweep, hd_factorization_verify, higher_derivation_check, incidence_algebra, inner, HigherDerivationSeq, HigherTransitiveMap, Poset,
    DEFAULT_ORDER,
};
use workbench_kantor::{conservativity_test, kantor_product, kantor_square, u2_e_basis, u2_e_vectors, u2e_table_tensor, U2E_TABLE};
use workbench_operators::{antisymmetric_space, derivation_space, generalized_derivation_space, GenMode, LocalContext, LocalVerdict, OperatorSpace};
use workbench_poisson::{check_poisson_family, half_derivation_link_test, transposed_compatible_space, Kind};

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn r(v: i64) -> Rational {
    Rational::integer(v)
}

fn holds(a: &Algebra<Rational>, v: &str) -> bool {
    check_variety(a, v).unwrap().holds
}

// ---- 1

type Bil = Vec<Vec<Vec<Rational>>>;

fn bil_apply(b: &Bil, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let n = x.len();
    let mut out = vec![Rational::zero(); n];
    for i in 0..n {
        for j in 0..n {
            let c = x[i].mul(&y[j]);
            for k in 0..n {
                out[k] = out[k].add(&c.mul(&b[i][j][k]));
            }
        }
    }
    out
}

fn u2_table() -> Check {
    let es = u2_e_vectors();
    let bils: Vec<Bil> = es
        .iter()
        .map(|v| (0..2).map(|i| (0..2).map(|j| (0..2).map(|k| v[(i * 2 + j) * 2 + k].clone()).collect()).collect()).collect())
        .collect();
    let u = basis_vector::<Rational>(2, 0);
    let e = |i| basis_vector::<Rational>(2, i);
    let s = Matrix::from_cols(&es).unwrap();
    for a in 0..8 {
        for b in 0..8 {
            // [[A, B]](x, y) = A(u, B(x, y)) - B(A(u, x), y) - B(x, A(u, y))
            let mut flat = Vec::new();
            for i in 0..2 {
                for j in 0..2 {
                    let t0 = bil_apply(&bils[a], &u, &bil_apply(&bils[b], &e(i), &e(j)));
                    let t1 = bil_apply(&bils[b], &bil_apply(&bils[a], &u, &e(i)), &e(j));
                    let t2 = bil_apply(&bils[b], &e(i), &bil_apply(&bils[a], &u, &e(j)));
                    flat.extend((0..2).map(|k| t0[k].sub(&t1[k]).sub(&t2[k])));
                }
            }
            let (coords, _) = s.solve(&flat).map_err(|e| format!("e-vectors: {e}"))?;
            let (c, k) = U2E_TABLE[a][b];
            let mut want = vec![Rational::zero(); 8];
            if c != 0 {
                want[k - 1] = r(c);
            }
            ensure!(coords == want, "e{} e{} differs from the table", a + 1, b + 1);
        }
    }
    let (alg, ui) = u2_e_basis().map_err(|e| e.to_string())?;
    ensure!(ui == 0, "u = v{}", ui + 1);
    ensure!(alg.product().unwrap() == &u2e_table_tensor(), "library U(2) differs from the table");
    Ok(())
}

// ---- 2

fn m8_local() -> Check {
    let c = LocalContext::new(&catalog::m8()).unwrap();
    let g = c.generic_space();
    ensure!(g.dim() == 28, "dim {}", g.dim());
    ensure!(g.space == antisymmetric_space(8), "not the antisymmetric matrices");
    for i in 0..8 {
        for j in i..8 {
            let s = if i == j { Matrix::unit(8, i, i) } else { Matrix::unit(8, i, j).add(&Matrix::unit(8, j, i)) };
            match c.test(&s).unwrap() {
                LocalVerdict::No { witness, .. } => {
                    let x: Vec<Rational> = witness.iter().map(|w| w.parse().unwrap()).collect();
                    let orbit = Subspace::from_vectors(8, &c.der.matrices().iter().map(|d| d.mul_vec(&x)).collect::<Vec<_>>());
                    ensure!(!orbit.contains(&s.mul_vec(&x)), "witness for E{i}{j} does not refute");
                }
                v => return Err(format!("symmetric E{i}{j} accepted: {v:?}")),
            }
        }
    }
    Ok(())
}

// ---- 3

fn ternary_jordan() -> Check {
    for n in [3usize, 4] {
        let tj = catalog::get_spec(&format!("ternaryJordan({n})")).unwrap();
        ensure!(holds(&tj, "nary-jordan"), "n = {n} fails the n-ary Jordan identities");
        let d = derivation_space(&tj, &Rational::one(), None).unwrap();
        ensure!(d.dim() == n * (n - 1) / 2, "n = {n}: dim {}", d.dim());
        ensure!(d.space == antisymmetric_space(n), "n = {n}: not so(n)");
    }
    Ok(())
}

// ---- 4

fn octonion_squares() -> Check {
    let o = catalog::cayley_dickson(3);
    let one = basis_vector::<Rational>(8, 0);
    let mut us: Vec<(Vec<Rational>, bool)> = (0..8).map(|i| (basis_vector(8, i), i == 0)).collect();
    us.push((one.iter().map(|x| x.mul(&r(5))).collect(), true));
    let mut mixed = one.clone();
    mixed[3] = r(-1);
    us.push((mixed, false));
    for (u, in_span) in us {
        let sq = kantor_square(&o, None, &u).unwrap();
        ensure!(holds(&sq, "flexible"), "not flexible for u = {u:?}");
        ensure!(holds(&sq, "alternative") == in_span, "alternative verdict wrong for u = {u:?}");
    }
    Ok(())
}

// ---- 5

fn tp4_kantor() -> Check {
    let a = catalog::tp4();
    let mul = a.op_result("mul").unwrap().clone();
    let br = a.op_result("bracket").unwrap().clone();
    for i in 0..4 {
        let u = basis_vector::<Rational>(4, i);
        let bm = Algebra::binary("bm", kantor_product(&br, &mul, &u).unwrap());
        ensure!(bm.product().unwrap().is_zero(), "[[bracket, mul]] nonzero for u = e{i}");
        ensure!(holds(&bm, "associative") && holds(&bm, "commutative"), "u = e{i}");
        let mb = Algebra::binary("mb", kantor_product(&mul, &br, &u).unwrap());
        ensure!(holds(&mb, "lie"), "[[mul, bracket]] not Lie for u = e{i}");
        let s = mul.add(&br);
        let sq = Algebra::binary("sq", kantor_product(&s, &s, &u).unwrap());
        ensure!(holds(&sq, "noncommutative-jordan"), "square not noncommutative Jordan for u = e{i}");
    }
    Ok(())
}

// ---- 6

fn transposed_poisson() -> Check {
    let s = transposed_compatible_space(&catalog::sl2()).unwrap();
    ensure!(s.dim() == 0, "sl2 compatible space dim {}", s.dim());
    let t2 = catalog::transposed2();
    let rep = check_poisson_family(&t2, Kind::Transposed).unwrap();
    ensure!(rep.holds && rep.preconditions.iter().chain(&rep.axioms).all(|x| x.holds), "axioms fail: {rep:?}");
    let link = half_derivation_link_test(&t2).unwrap();
    ensure!(link.holds, "link test fails");
    Ok(())
}

// ---- 7

fn incidence_sweep() -> Check {
    let rep = gf3_sweep(5).unwrap();
    // 1 + 2 + 5 + 16 + 63 posets up to isomorphism, plus the crown
    ensure!(rep.posets == 88, "{} posets", rep.posets);
    ensure!(rep.agree(), "{} mismatches, first {:?}", rep.mismatches.len(), rep.mismatches.first());
    ensure!(rep.chain_constant > 0 && rep.chain_constant < rep.assignments, "degenerate sweep");
    Ok(())
}

// ---- 8

const N: usize = DEFAULT_ORDER;

fn random_elem(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| r(rng.gen_range(-2..=2))).collect()
}

fn random_sigma(rng: &mut impl Rng, p: &Poset) -> HigherTransitiveMap {
    let g: Vec<Vec<Rational>> = (0..p.len())
        .map(|_| std::iter::once(Rational::one()).chain((0..N).map(|_| r(rng.gen_range(-2..=2)))).collect())
        .collect();
    HigherTransitiveMap::from_potential(p, &g, N)
}

fn higher_derivations() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4d);
    let mut posets = vec![Poset::chain(2), Poset::chain(3)];
    while posets.len() < 4 {
        let p = Poset::random(&mut rng, 4, 0.5);
        if !p.strict_pairs().is_empty() && !posets.contains(&p) {
            posets.push(p);
        }
    }
    for p in &posets {
        let a = incidence_algebra::<Rational>(p);
        let is_hd = |d: &HigherDerivationSeq| higher_derivation_check(&a, d).unwrap().holds;
        let eps = HigherDerivationSeq::identity(a.dim, N);
        let draw = |rng: &mut ChaCha8Rng| {
            let rho: Vec<Vec<Rational>> = (0..N).map(|_| random_elem(rng, a.dim)).collect();
            let sigma = random_sigma(rng, p);
            let st = sigma.tilde(p).unwrap();
            (inner(&a, &rho, N).unwrap().compose(&st).unwrap(), rho, sigma, st)
        };
        for _ in 0..3 {
            let (d1, rho, sigma, st) = draw(&mut rng);
            let (d2, ..) = draw(&mut rng);
            let (d3, ..) = draw(&mut rng);
            ensure!(is_hd(&d1) && is_hd(&d2) && is_hd(&st), "random sequence is not a higher derivation");
            let c = d1.compose(&d2).unwrap();
            ensure!(is_hd(&c), "product not closed");
            ensure!(c.d[1] == d1.d[1].add(&d2.d[1]), "first term not additive");
            ensure!(c.compose(&d3).unwrap() == d1.compose(&d2.compose(&d3).unwrap()).unwrap(), "not associative");
            ensure!(d1.compose(&eps).unwrap() == d1 && eps.compose(&d1).unwrap() == d1, "identity fails");
            let inv = d1.inverse().unwrap();
            ensure!(is_hd(&inv), "inverse not a higher derivation");
            ensure!(d1.compose(&inv).unwrap() == eps && inv.compose(&d1).unwrap() == eps, "inverse fails");
            ensure!(hd_factorization_verify(p, &a, &d1, &rho, &sigma).unwrap(), "factorization fails");
        }
        // factorial sequences of derivations
        let der = derivation_space(&a, &Rational::one(), None).unwrap();
        for m in der.matrices() {
            ensure!(is_hd(&HigherDerivationSeq::exponential(&m, N)), "exponential of a derivation fails");
        }
    }
    Ok(())
}

// ---- 9

fn generalized() -> Check {
    let m7 = generalized_derivation_space(&catalog::m7(), GenMode::Full, None).unwrap();
    ensure!(m7.m == 3 && m7.quotient_dim() == 0, "M7: length {} quotient {}", m7.m, m7.quotient_dim());
    let m8 = generalized_derivation_space(&catalog::m8(), GenMode::Full, None).unwrap();
    ensure!(m8.m == 4 && m8.quotient_dim() == 0, "M8: length {} quotient {}", m8.m, m8.quotient_dim());
    let d4 = generalized_derivation_space(&catalog::filippov_d(4), GenMode::Full, None).unwrap();
    let p = OperatorSpace::new(4, "gder", d4.projection(0));
    // the designated space is [GDer, GDer] inside sl(A); the projection itself is gl_4
    let sl = p.commutator_span();
    ensure!(sl.dim() == 15, "[GDer, GDer] of D(4) has dim {}", sl.dim());
    ensure!(p.dim() == 16, "first projection of D(4) has dim {}", p.dim());
    Ok(())
}

// ---- 10

fn containments() -> Check {
    let mut pool: Vec<Algebra<Rational>> = vec![
        catalog::abelian(3),
        catalog::null_filiform(3),
        catalog::null_filiform(4),
        catalog::get_spec("filiform1p(4,2)").unwrap(),
        catalog::get_spec("R(2,1)").unwrap(),
        catalog::sl2(),
        catalog::heis3(),
        catalog::matrix_algebra(2),
        catalog::upper_triangular(2),
        catalog::upper_triangular(3),
        catalog::cayley_dickson(2),
        catalog::cayley_dickson(3),
        catalog::m7(),
        catalog::get_spec("D(3)").unwrap(),
        catalog::get_spec("A_alpha(3,2)").unwrap(),
    ];
    let tp4 = catalog::tp4();
    pool.push(Algebra::binary("tp4 mul", tp4.op_result("mul").unwrap().clone()));
    pool.push(Algebra::binary("tp4 bracket", tp4.op_result("bracket").unwrap().clone()));
    for base in [catalog::matrix_algebra(2), catalog::upper_triangular(3), catalog::cayley_dickson(2), catalog::cayley_dickson(3)] {
        pool.push(plus(&base).unwrap());
        pool.push(minus(&base).unwrap());
    }
    let web: &[(&str, &[&str])] = &[
        ("lie", &["malcev", "binary-lie"]),
        ("malcev", &["binary-lie"]),
        ("associative", &["assosymmetric", "alternative", "weakly-associative"]),
        ("jordan", &["almost-jordan"]),
    ];
    let mut exercised = 0;
    for a in &pool {
        if a.main().map(|t| t.arity()).unwrap_or(0) != 2 {
            continue;
        }
        for (from, tos) in web {
            if holds(a, from) {
                exercised += 1;
                for to in *tos {
                    ensure!(holds(a, to), "{} is {from} but not {to}", a.name);
                }
            }
        }
        if holds(a, "associative") {
            ensure!(holds(&minus(a).unwrap(), "lie"), "A- of {} not Lie", a.name);
            ensure!(holds(&plus(a).unwrap(), "jordan"), "A+ of {} not Jordan", a.name);
        }
        if holds(a, "alternative") {
            ensure!(holds(&minus(a).unwrap(), "malcev"), "A- of {} not Malcev", a.name);
            ensure!(holds(&plus(a).unwrap(), "jordan"), "A+ of {} not Jordan", a.name);
        }
    }
    ensure!(exercised >= 20, "only {exercised} implications exercised");
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e4);
    for k in 0..200 {
        let a = random_binary(&mut rng, 1 + k % 3, 0.35, 2);
        let rep = conservativity_test(&a).unwrap();
        ensure!(rep.terminal == rep.terminal_identity, "routes disagree on {:?}", a.product().unwrap());
    }
    Ok(())
}

// ---- 11

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

fn deformations() -> Check {
    for a in [catalog::sl2(), catalog::heis3(), catalog::null_filiform(3), catalog::cayley_dickson(2)] {
        ensure!(degeneration_verify(&a, &catalog::abelian(a.dim), &Certificate::scalar(a.dim, -1)).unwrap().holds(), "t^-1 I on {}", a.name);
    }
    ensure!(
        degeneration_verify(&catalog::null_filiform(2), &catalog::abelian(2), &Certificate::diagonal(&[1, 3])).unwrap().holds(),
        "diag(t, t^3) on NF(2)"
    );

    let mut rng = ChaCha8Rng::seed_from_u64(0xdef);
    let pool = [catalog::sl2(), catalog::heis3(), catalog::null_filiform(3), catalog::upper_triangular(2), catalog::null_filiform(4)];
    let mut verified = 0;
    while verified < 20 {
        let a = if rng.gen_bool(0.5) { pool[rng.gen_range(0..pool.len())].clone() } else { random_binary(&mut rng, 3, 0.3, 2) };
        let cert = random_certificate(&mut rng, a.dim);
        let Some(b) = degeneration_verify(&a, &a, &cert).unwrap().limit else { continue };
        ensure!(degeneration_verify(&a, &b, &cert).unwrap().holds(), "limit does not verify");
        let v = degeneration_obstruction(&a, &b, false).unwrap();
        ensure!(v.is_empty(), "verified pair rejected: {v:?}");
        if invariant_profile(&a).unwrap() != invariant_profile(&b).unwrap() {
            let strict = degeneration_obstruction(&a, &b, true).unwrap();
            ensure!(strict.is_empty(), "proper verified pair rejected: {strict:?}");
        }
        verified += 1;
    }

    let ab2 = catalog::abelian(2);
    let c = cocycle_space(&ab2, "lie", 1).unwrap();
    ensure!((c.z2.dim(), c.b2.dim(), c.h2_dim()) == (1, 0, 1), "(Z2, B2, H2) = ({}, {}, {})", c.z2.dim(), c.b2.dim(), c.h2_dim());
    let z = &c.z2.basis()[0];
    let theta = Cocycle::from_flat(2, 1, z).unwrap();
    let e = central_extension(&ab2, &theta).unwrap();
    let g = Matrix::diag(&[Rational::one(), Rational::one(), z[1].clone()]);
    let h = e.algebra.change_basis(&g).unwrap();
    ensure!(h.product().unwrap() == catalog::heis3().product().unwrap(), "extension is not the Heisenberg algebra");

    let candidates = [catalog::heis3(), catalog::null_filiform(3), catalog::null_filiform(2), catalog::abelian(2)];
    let varieties = ["lie", "leibniz", "associative", "commutative", "anticommutative", "malcev", "zinbiel", "novikov", "alternative", "binary-lie"];
    for v in varieties {
        let a = candidates.iter().find(|a| holds(a, v)).ok_or(format!("no candidate in {v}"))?;
        for k in 0..50 {
            let s = 1 + k % 2;
            let c = cocycle_space(a, v, s).unwrap();
            let coeffs = c.z2.basis().iter().fold(vec![Rational::zero(); c.z2.ambient()], |acc, b| {
                let t = r(rng.gen_range(-3..=3));
                acc.iter().zip(b).map(|(x, y)| x.add(&t.mul(y))).collect()
            });
            let e = central_extension(a, &Cocycle::from_flat(a.dim, s, &coeffs).unwrap()).unwrap();
            ensure!(holds(&e.algebra, v), "extension of {} leaves {v}", a.name);
        }
    }
    Ok(())
}

fn run(f: fn() -> Check) -> (Check, Duration) {
    let start = Instant::now();
    let res = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(r) => r,
        Err(e) => Err(e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or("panic".into())),
    };
    (res, start.elapsed())
}

fn main() -> ExitCode {
    std::panic::set_hook(Box::new(|_| {}));
    let criteria: [(fn() -> Check, u64); 11] = [
        (u2_table, 1),
        (m8_local, 60),
        (ternary_jordan, 10),
        (octonion_squares, 10),
        (tp4_kantor, 5),
        (transposed_poisson, 5),
        (incidence_sweep, 120),
        (higher_derivations, 30),
        (generalized, 60),
        (containments, 120),
        (deformations, 60),
    ];
    let mut all = true;
    for (k, (f, limit)) in criteria.into_iter().enumerate() {
        let (mut res, t) = run(f);
        if res.is_ok() && t > Duration::from_secs(limit) {
            res = Err(format!("took {:.2} s, limit {limit} s", t.as_secs_f64()));
        }
        match &res {
            Ok(()) => println!("criterion {}: PASS ({:.2} s)", k + 1, t.as_secs_f64()),
            Err(e) => println!("criterion {}: FAIL ({:.2} s): {e}", k + 1, t.as_secs_f64()),
        }
        all &= res.is_ok();
    }
    // the remaining criterion is covered by the eleven above
    println!("criterion 12: {}", if all { "PASS" } else { "FAIL" });
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
