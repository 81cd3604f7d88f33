//! Exhaustive GF(3) comparison of chain-constancy and the Poisson axioms.
//!
//! For a fixed poset the Poisson conditions on the pair `(I(P), B_sigma)` are polynomial in the
//! values of `sigma`: the Leibniz rule is linear and the Jacobi identity quadratic. The axioms are
//! evaluated once with `sigma` as indeterminates, through the same identity engine, and the
//! resulting integer polynomials are then reduced mod 3 for every assignment.

use serde::Serialize;
use workbench_core::{basis_vector, Algebra, Error, Poly, Result, Ring};
use workbench_identity::{parse_identity, Compiled};
use workbench_poisson::family::{JACOBI, LEIBNIZ_RULE};

use crate::algebra::{incidence_algebra, sigma_bracket, SigmaMap};
use crate::poset::Poset;

const P: i64 = 3;

/// Integer polynomial reduced mod 3: `(coef, variables with multiplicity)`.
#[derive(Clone, Debug, PartialEq)]
struct ModForm(Vec<(i64, Vec<usize>)>);

impl ModForm {
    fn from_poly(p: &Poly) -> Result<Self> {
        let mut terms = Vec::new();
        for (mono, c) in p.terms() {
            if !c.is_integer() {
                return Err(Error::Precondition("non-integral axiom polynomial".into()));
            }
            let c = c.numer().to_string().parse::<i64>().map_err(|_| Error::Precondition("coefficient overflow".into()))?.rem_euclid(P);
            if c == 0 {
                continue;
            }
            let vars = mono.iter().enumerate().flat_map(|(v, e)| std::iter::repeat(v).take(*e as usize)).collect();
            terms.push((c, vars));
        }
        Ok(ModForm(terms))
    }
    fn vanishes(&self, s: &[i64]) -> bool {
        self.0.iter().map(|(c, vs)| vs.iter().fold(*c, |acc, &v| acc * s[v] % P)).sum::<i64>() % P == 0
    }
}

/// The Poisson axioms of `(I(P), B_sigma)` as polynomials in the strict-pair values.
pub struct SigmaForms {
    pub pairs: Vec<(usize, usize)>,
    forms: Vec<ModForm>,
    chains: Vec<Vec<usize>>,
}

const ANTICOMMUTATIVE: &str = "[x, y] + [y, x] = 0";

impl SigmaForms {
    pub fn new(p: &Poset) -> Result<Self> {
        let pairs = p.strict_pairs();
        let sigma: SigmaMap<Poly> = pairs.iter().enumerate().map(|(s, &k)| (k, Poly::var(s))).collect();
        let a = incidence_algebra::<Poly>(p);
        let a: Algebra<Poly> = a.with_op("bracket", sigma_bracket(p, &sigma)?)?;
        let n = a.dim;
        let basis: Vec<Vec<Poly>> = (0..n).map(|i| basis_vector(n, i)).collect();
        let mut forms: Vec<ModForm> = Vec::new();
        for text in [ANTICOMMUTATIVE, LEIBNIZ_RULE, JACOBI] {
            let c = Compiled::new(&a, &parse_identity(text)?, |q| Ok(Poly::constant(q.clone())))?;
            let k = c.num_vars;
            let mut tuple = vec![0usize; k];
            'scan: loop {
                let vals: Vec<Vec<Poly>> = tuple.iter().map(|&i| basis[i].clone()).collect();
                for coord in c.eval(&vals) {
                    if !coord.is_zero() {
                        let f = ModForm::from_poly(&coord)?;
                        if !f.0.is_empty() && !forms.contains(&f) {
                            forms.push(f);
                        }
                    }
                }
                let mut s = k;
                loop {
                    if s == 0 {
                        break 'scan;
                    }
                    s -= 1;
                    tuple[s] += 1;
                    if tuple[s] < n {
                        break;
                    }
                    tuple[s] = 0;
                }
            }
        }
        let chains = p
            .maximal_chains()
            .iter()
            .map(|c| {
                let mut ix = Vec::new();
                for (i, &x) in c.iter().enumerate() {
                    for &y in &c[i + 1..] {
                        ix.push(pairs.iter().position(|&w| w == (x, y)).expect("strict pair"));
                    }
                }
                ix
            })
            .collect();
        Ok(SigmaForms { pairs, forms, chains })
    }

    pub fn num_forms(&self) -> usize {
        self.forms.len()
    }

    /// Poisson verdict over GF(3) for the assignment `s` (values `0..3` indexed like `pairs`).
    pub fn poisson(&self, s: &[i64]) -> bool {
        self.forms.iter().all(|f| f.vanishes(s))
    }

    pub fn chain_constant(&self, s: &[i64]) -> bool {
        self.chains.iter().all(|c| c.windows(2).all(|w| s[w[0]] == s[w[1]]))
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepReport {
    pub posets: usize,
    pub assignments: u64,
    pub chain_constant: u64,
    pub poisson: u64,
    /// `(poset covers, assignment)` where the two verdicts differ.
    pub mismatches: Vec<(Vec<(String, String)>, Vec<i64>)>,
}

impl SweepReport {
    pub fn agree(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Every GF(3) assignment on one poset.
pub fn sweep_poset(p: &Poset, report: &mut SweepReport) -> Result<()> {
    let f = SigmaForms::new(p)?;
    let m = f.pairs.len();
    let mut s = vec![0i64; m];
    report.posets += 1;
    loop {
        let c = f.chain_constant(&s);
        let q = f.poisson(&s);
        report.assignments += 1;
        report.chain_constant += c as u64;
        report.poisson += q as u64;
        if c != q {
            let covers = p.covers().iter().map(|&(a, b)| (p.labels[a].clone(), p.labels[b].clone())).collect();
            report.mismatches.push((covers, s.clone()));
        }
        let mut k = m;
        loop {
            if k == 0 {
                return Ok(());
            }
            k -= 1;
            s[k] += 1;
            if s[k] < P {
                break;
            }
            s[k] = 0;
        }
    }
}

/// All posets with `1..=max_n` elements up to isomorphism, plus the crown.
pub fn gf3_sweep(max_n: usize) -> Result<SweepReport> {
    let mut report = SweepReport::default();
    for n in 1..=max_n {
        for p in Poset::all_up_to_iso(n) {
            sweep_poset(&p, &mut report)?;
        }
    }
    sweep_poset(&Poset::crown(), &mut report)?;
    Ok(report)
}

/// Same verdicts through the generic field checks, for cross-validation.
pub fn direct_verdicts(p: &Poset, s: &[i64]) -> Result<(bool, bool)> {
    type F3 = workbench_core::Fp<3>;
    let sigma: SigmaMap<F3> = p.strict_pairs().into_iter().zip(s).map(|(k, &v)| (k, F3::new(v))).collect();
    let r = crate::algebra::poisson_sigma_equiv_test(p, &sigma)?;
    Ok((r.chain_constant, r.poisson))
}
