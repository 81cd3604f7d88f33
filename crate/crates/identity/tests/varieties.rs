use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use workbench_core::random::{random_binary, random_invertible};
use workbench_core::{catalog, Algebra, Rational};
use workbench_identity::{check_identity, check_variety, minus, parse_identity, plus};

fn holds(a: &Algebra<Rational>, v: &str) -> bool {
    check_variety(a, v).unwrap().holds
}

fn binary_pool() -> Vec<Algebra<Rational>> {
    let mut pool = vec![
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
    ];
    for base in [catalog::matrix_algebra(2), catalog::upper_triangular(3), catalog::cayley_dickson(2), catalog::cayley_dickson(3)] {
        pool.push(plus(&base).unwrap());
        pool.push(minus(&base).unwrap());
    }
    pool
}

#[test]
fn containments_over_catalog() {
    let implications: &[(&str, &[&str])] = &[
        ("lie", &["malcev", "binary-lie", "symmetric-leibniz", "cd-anticommutative"]),
        ("malcev", &["binary-lie"]),
        ("associative", &["alternative", "noncommutative-jordan", "weakly-associative", "assosymmetric"]),
        ("jordan", &["almost-jordan", "noncommutative-jordan"]),
    ];
    let mut exercised = 0;
    for a in binary_pool() {
        for (from, tos) in implications {
            if holds(&a, from) {
                exercised += 1;
                for to in *tos {
                    assert!(holds(&a, to), "{} is {from} but not {to}", a.name);
                }
            }
        }
    }
    assert!(exercised >= 10);
}

#[test]
fn functor_laws() {
    for a in [catalog::matrix_algebra(2), catalog::upper_triangular(3), catalog::cayley_dickson(2)] {
        assert!(holds(&a, "associative"));
        assert!(holds(&minus(&a).unwrap(), "lie"), "{}", a.name);
        assert!(holds(&plus(&a).unwrap(), "commutative-cd"), "{}", a.name);
    }
    let o = catalog::cayley_dickson(3);
    assert!(holds(&o, "alternative"));
    assert!(!holds(&o, "associative"));
    assert!(holds(&plus(&o).unwrap(), "jordan"));
}

#[test]
fn octonion_commutator_is_malcev() {
    let o = minus(&catalog::cayley_dickson(3)).unwrap();
    assert!(holds(&o, "malcev"));
    assert!(!holds(&o, "lie"));
    assert!(holds(&catalog::m7(), "malcev"));
}

#[test]
fn ternary_catalog() {
    let r = check_variety(&catalog::m8(), "3-lie").unwrap();
    assert!(!r.holds);
    assert!(r.failures[0].witness.is_some());
    for n in [3, 4] {
        let tj = catalog::get_spec(&format!("ternaryJordan({n})")).unwrap();
        assert!(holds(&tj, "nary-jordan"), "n = {n}");
    }
    assert!(holds(&catalog::filippov_d(4), "n-lie"));
    assert!(holds(&catalog::filippov_a(4), "4-lie"));
}

#[test]
fn spec_parse_examples() {
    let z = parse_identity("(x*y)*z = x*((y*z)+(z*y))").unwrap();
    assert_eq!(z.terms.len(), 3);
    let e = parse_identity("[x,y]*[z,w").unwrap_err().to_string();
    assert!(e.contains("column 11"), "{e}");
    let nf = catalog::null_filiform(3);
    let r = check_identity(&nf, &parse_identity("x*y - y*x").unwrap()).unwrap();
    assert_eq!(r.witness.unwrap().tuple, vec![0, 1]);
}

#[test]
fn solvable_leibniz_table_ranges() {
    for spec in ["R(2)", "R(3)", "R(2,1)", "R(2,2)", "R(3,2)", "R(3,1,1)", "R(2,2,2)"] {
        assert!(holds(&catalog::get_spec(spec).unwrap(), "leibniz"), "{spec}");
    }
    assert!(!holds(&catalog::get_spec("R-printed(2,2)").unwrap(), "leibniz"));
    assert!(!holds(&catalog::get_spec("R-printed(3,2)").unwrap(), "leibniz"));
}

#[test]
fn catalog_entries_satisfy_their_varieties() {
    assert!(holds(&catalog::null_filiform(5), "leibniz"));
    assert!(holds(&catalog::sl2(), "lie"));
    assert!(holds(&catalog::heis3(), "lie"));
    assert!(holds(&catalog::cayley_dickson(3), "alternative"));
}

const CHECKED: &[&str] =
    &["lie", "leibniz", "associative", "jordan", "malcev", "zinbiel", "novikov", "flexible", "terminal", "cd"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn verdicts_are_basis_independent(seed in 0u64..100_000, which in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = match which {
            0 => random_binary(&mut rng, 1 + (seed % 3) as usize, 0.2, 2),
            1 => binary_pool()[(seed % 13) as usize].clone(),
            _ => minus(&random_binary(&mut rng, 3, 0.3, 2)).unwrap(),
        };
        prop_assume!(a.dim <= 4);
        let p = random_invertible(&mut rng, a.dim, 2);
        let b = a.change_basis(&p).unwrap();
        for v in CHECKED {
            prop_assert_eq!(holds(&a, v), holds(&b, v), "{} {}", a.name, v);
        }
    }
}
