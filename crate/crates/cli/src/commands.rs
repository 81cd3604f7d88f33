use serde::Serialize;
use serde_json::{json, Map, Value};
use workbench_core::algebra::to_field;
use workbench_core::json::{to_value, FieldTag};
use workbench_core::{catalog, Algebra, Error, Fp, Matrix, Rational, Ring};
use workbench_deform::{central_extension, cocycle_space, degeneration_obstruction, degeneration_verify, Certificate, Cocycle};
use workbench_identity::{check_identity, check_variety, eval_identity, parse_identity, project_op, VARIETY_NAMES};
use workbench_incidence::{
    hd_factorization_verify, higher_derivation_check, incidence_algebra, inner, poisson_pair, poisson_sigma_equiv_test, sigma_from_json,
    HigherDerivationSeq, HigherTransitiveMap, Poset,
};
use workbench_kantor::{conservativity_test, jacobi_element_space, kantor_product, kantor_square, quasi_unit_space, u2_e_basis};
use workbench_operators::{
    centroid, derivation_space, generalized_derivation_space, leibniz_derivation_space, Arrangement, GenMode, LocalContext, LocalVerdict,
    OperatorSpace,
};
use workbench_poisson::{check_poisson_family, customary_check, half_derivation_link_test, transposed_compatible_space, Kind};

use crate::io::{self, InputError};
use crate::*;

/// What a command produced: an optional verdict, a report object and a text rendering.
pub struct Outcome {
    verdict: Option<bool>,
    report: Map<String, Value>,
    text: String,
}

enum Failure {
    Input(String),
    Compute(Error),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.0)
    }
}
impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

type Res = std::result::Result<Outcome, Failure>;

fn to_map(v: impl Serialize) -> Map<String, Value> {
    match serde_json::to_value(v).expect("reports serialize") {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other);
            m
        }
    }
}

fn outcome(verdict: Option<bool>, report: Map<String, Value>, text: impl Into<String>) -> Res {
    Ok(Outcome { verdict, report, text: text.into() })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn algebra_outcome(a: &Algebra<Rational>, tag: FieldTag) -> Res {
    let Value::Object(m) = to_value(a, tag) else { unreachable!("algebras serialize to objects") };
    json_outcome(m)
}

/// Reports whose human form is the JSON document itself.
fn json_outcome(m: Map<String, Value>) -> Res {
    let mut doc = Map::new();
    doc.insert("schema".into(), json!("1"));
    doc.extend(m.clone());
    let text = serde_json::to_string_pretty(&doc).expect("json");
    outcome(None, m, text)
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(s: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

pub fn run(cli: &Cli) -> u8 {
    let (name, res) = dispatch(&cli.cmd);
    match res {
        Ok(o) => {
            if cli.json {
                let mut m = Map::new();
                m.insert("schema".into(), json!("1"));
                m.insert("command".into(), json!(name));
                if let Some(v) = o.verdict {
                    m.insert("verdict".into(), json!(v));
                }
                for (k, v) in o.report {
                    m.entry(k).or_insert(v);
                }
                emit(&serde_json::to_string_pretty(&Value::Object(m)).expect("json"));
            } else {
                emit(&o.text);
            }
            match o.verdict {
                Some(false) => 1,
                _ => 0,
            }
        }
        Err(f) => {
            let msg = match f {
                Failure::Input(s) => s,
                Failure::Compute(e) => e.to_string(),
            };
            if cli.json {
                emit(&serde_json::to_string_pretty(&json!({"schema": "1", "command": name, "error": msg})).expect("json"));
            }
            eprintln!("error: {msg}");
            2
        }
    }
}

fn dispatch(cmd: &Cmd) -> (&'static str, Res) {
    match cmd {
        Cmd::Catalog(CatalogCmd::List) => ("catalog list", catalog_list()),
        Cmd::Catalog(CatalogCmd::Get { spec }) => ("catalog get", catalog_get(spec)),
        Cmd::Variety(VarietyCmd::Check { algebra, variety, op }) => ("variety check", variety_check(algebra, variety, op.as_deref())),
        Cmd::Variety(VarietyCmd::List) => ("variety list", outcome(None, to_map(json!({"varieties": VARIETY_NAMES})), VARIETY_NAMES.join("\n"))),
        Cmd::Identity(IdentityCmd::Eval { algebra, identity, at }) => ("identity eval", identity_eval(algebra, identity, at.as_deref())),
        Cmd::Der(DerCmd::Space { algebra, delta, op, local_generic }) => ("der space", der_space(algebra, delta, op.as_deref(), *local_generic)),
        Cmd::Der(DerCmd::Local { algebra, matrix }) => ("der local", der_local(algebra, matrix)),
        Cmd::Der(DerCmd::Leibniz { algebra, k, arrangement, max_k }) => ("der leibniz", der_leibniz(algebra, *k, arrangement, *max_k)),
        Cmd::Der(DerCmd::Generalized { algebra, mode }) => ("der generalized", der_generalized(algebra, mode)),
        Cmd::Kantor(KantorCmd::Product { a, b, u }) => ("kantor product", kantor_prod(a, b, u)),
        Cmd::Kantor(KantorCmd::Square { algebra, u, op, check }) => ("kantor square", kantor_sq(algebra, u, op.as_deref(), check)),
        Cmd::Kantor(KantorCmd::U2) => ("kantor u2", kantor_u2()),
        Cmd::Conservative(AlgebraArg { algebra }) => ("conservative", conservative(algebra)),
        Cmd::Poisson(PoissonCmd::Check { algebra, kind, link }) => ("poisson check", poisson_check(algebra, kind, *link)),
        Cmd::Poisson(PoissonCmd::TpsSpace { algebra }) => ("poisson tps-space", tps_space(algebra)),
        Cmd::Poisson(PoissonCmd::Customary { algebra, identity }) => ("poisson customary", customary(algebra, identity)),
        Cmd::Incidence(IncidenceCmd::Build { poset, sigma }) => ("incidence build", incidence_build(poset, sigma.as_deref())),
        Cmd::Incidence(IncidenceCmd::PoissonEquiv { poset, sigma }) => ("incidence poisson-equiv", poisson_equiv(poset, sigma)),
        Cmd::Incidence(IncidenceCmd::HdCheck { poset, seq, rho, sigma_map }) => {
            ("incidence hd-check", hd_check(poset, seq, rho.as_deref(), sigma_map.as_deref()))
        }
        Cmd::Incidence(IncidenceCmd::HdCompose { poset, seq, with, inverse, inner, order }) => {
            ("incidence hd-compose", hd_compose(poset, seq.as_deref(), with.as_deref(), *inverse, inner.as_deref(), *order))
        }
        Cmd::Degen(DegenCmd::Verify { from, to, cert, distinct }) => ("degen verify", degen_verify(from, to, cert, *distinct)),
        Cmd::Degen(DegenCmd::Obstruct { from, to, distinct }) => ("degen obstruct", degen_obstruct(from, to, *distinct)),
        Cmd::Ext(ExtCmd::Cocycles { algebra, variety, s }) => ("ext cocycles", ext_cocycles(algebra, variety, *s)),
        Cmd::Ext(ExtCmd::Build { algebra, cocycle }) => ("ext build", ext_build(algebra, cocycle)),
    }
}

fn catalog_list() -> Res {
    let names: Vec<&str> = catalog::NAMES.iter().chain(workbench_kantor::EXTRA_NAMES).copied().collect();
    outcome(None, to_map(json!({ "algebras": names })), names.join("\n"))
}

fn catalog_get(spec: &str) -> Res {
    let a = workbench_kantor::catalog_get(spec)?;
    algebra_outcome(&a, FieldTag::Q)
}

/// Runs `$body` with `$b` bound to the algebra over the field named by `$tag`.
macro_rules! over_field {
    ($tag:expr, $a:expr, |$b:ident| $body:expr) => {
        match $tag {
            FieldTag::Q => {
                let $b = $a.clone();
                $body
            }
            FieldTag::Gf(2) => {
                let $b = to_field::<Fp<2>>(&$a)?;
                $body
            }
            FieldTag::Gf(3) => {
                let $b = to_field::<Fp<3>>(&$a)?;
                $body
            }
            FieldTag::Gf(5) => {
                let $b = to_field::<Fp<5>>(&$a)?;
                $body
            }
            FieldTag::Gf(7) => {
                let $b = to_field::<Fp<7>>(&$a)?;
                $body
            }
            FieldTag::Gf(11) => {
                let $b = to_field::<Fp<11>>(&$a)?;
                $body
            }
            FieldTag::Gf(13) => {
                let $b = to_field::<Fp<13>>(&$a)?;
                $body
            }
            FieldTag::Gf(p) => Err(Failure::Compute(Error::Unsupported(format!("GF({p}); supported primes are 2, 3, 5, 7, 11, 13")))),
        }
    };
}

fn variety_check(path: &str, variety: &str, op: Option<&str>) -> Res {
    let (a, tag) = io::load_algebra(path)?;
    let a = match op {
        Some(o) => project_op(&a, o)?,
        None => a,
    };
    over_field!(tag, a, |b| {
        let r = check_variety(&b, variety)?;
        let mut text = format!("{} in {}: {}", a.name, variety, yes_no(r.holds));
        for f in &r.failures {
            text.push_str(&format!("\n  fails {}", f.identity));
            if let Some(w) = &f.witness {
                text.push_str(&format!(" at basis tuple {:?}", w.tuple));
            }
        }
        outcome(Some(r.holds), to_map(&r), text)
    })
}

fn identity_eval(path: &str, text: &str, at: Option<&str>) -> Res {
    let (a, tag) = io::load_algebra(path)?;
    let id = parse_identity(text)?;
    over_field!(tag, a, |b| {
        match at {
            Some(at) => {
                let idx: Vec<usize> = at
                    .split(',')
                    .map(|s| s.trim().parse().map_err(|_| Error::Parse(format!("bad basis index `{s}`"))))
                    .collect::<std::result::Result<_, Error>>()?;
                if idx.len() != id.num_vars() || idx.iter().any(|&i| i >= b.dim) {
                    return Err(Failure::Compute(Error::InvalidParam(format!("need {} basis indices below {}", id.num_vars(), b.dim))));
                }
                let vals: Vec<Vec<_>> = idx.iter().map(|&i| workbench_core::basis_vector(b.dim, i)).collect();
                let v = eval_identity(&b, &id, &vals)?;
                let strs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                let zero = v.iter().all(|x| x.is_zero());
                outcome(Some(zero), to_map(json!({"identity": id.to_string(), "at": idx, "value": strs})), format!("value: [{}]", strs.join(", ")))
            }
            None => {
                let r = check_identity(&b, &id)?;
                let text = match &r.witness {
                    None => format!("{} holds", id),
                    Some(w) => format!("{} fails: {} at basis tuple {:?}", id, w.identity, w.tuple),
                };
                outcome(Some(r.holds), to_map(&r), text)
            }
        }
    })
}

fn space_text(s: &OperatorSpace<Rational>) -> String {
    format!("{}: dim {}", s.tag, s.dim())
}

fn der_space(path: &str, delta: &str, op: Option<&str>, local_generic: bool) -> Res {
    let a = io::load_rational_algebra(path)?;
    let s = if local_generic { LocalContext::new(&a)?.generic_space() } else { derivation_space(&a, &delta.parse::<Rational>()?, op)? };
    let mut m = to_map(s.report());
    m.insert("antisymmetric".into(), json!(s.space == workbench_operators::antisymmetric_space(a.dim)));
    m.insert("lie_closed".into(), json!(s.is_lie_closed()));
    outcome(None, m, space_text(&s))
}

fn der_local(path: &str, matrix: &str) -> Res {
    let a = io::load_rational_algebra(path)?;
    let phi = io::load_matrix(matrix)?;
    let v = LocalContext::new(&a)?.test(&phi)?;
    let (holds, text) = match &v {
        LocalVerdict::No { witness, stage } => (false, format!("not local: witness x = [{}] ({stage})", witness.join(", "))),
        LocalVerdict::GenericYes { seed, samples } => (true, format!("local at the generic point and {samples} samples (seed {seed})")),
    };
    outcome(Some(holds), to_map(&v), text)
}

fn der_leibniz(path: &str, k: usize, arrangement: &str, max_k: usize) -> Res {
    let a = io::load_rational_algebra(path)?;
    let arr: Arrangement = arrangement.parse()?;
    let r = leibniz_derivation_space(&a, k, arr, max_k)?;
    let mut m = to_map(r.space.report());
    m.insert("invertible_exists".into(), json!(r.invertible_exists));
    if let Some(w) = &r.invertible_witness {
        m.insert("invertible_witness".into(), json!(workbench_operators::space::matrix_strings(w)));
    }
    let text = format!("{}, invertible element: {}", space_text(&r.space), yes_no(r.invertible_exists));
    outcome(None, m, text)
}

fn der_generalized(path: &str, mode: &str) -> Res {
    let a = io::load_rational_algebra(path)?;
    let mode = match mode {
        "full" => GenMode::Full,
        "quasi" => GenMode::Quasi,
        _ => return Err(Failure::Compute(Error::InvalidParam(format!("mode must be full or quasi, not `{mode}`")))),
    };
    let s = generalized_derivation_space(&a, mode, None)?;
    let proj: Vec<usize> = (0..s.m).map(|i| s.projection(i).dim()).collect();
    let first = OperatorSpace::new(s.n, "first", s.projection(0));
    let m = to_map(json!({
        "tuple_length": s.m,
        "dim": s.dim(),
        "trivial_dim": s.trivial.dim(),
        "quotient_dim": s.quotient_dim(),
        "projection_dims": proj,
        "first_projection_commutator_dim": first.commutator_span().dim(),
        "der_dim": derivation_space(&a, &Rational::one(), None)?.dim(),
        "centroid_dim": centroid(&a, None)?.dim(),
    }));
    let text = format!(
        "{} tuples of length {}: dim {}, trivial {}, quotient {}; projections {:?}; [P1, P1] dim {}",
        s.tag,
        s.m,
        s.dim(),
        s.trivial.dim(),
        s.quotient_dim(),
        proj,
        first.commutator_span().dim()
    );
    outcome(None, m, text)
}

fn kantor_prod(a: &str, b: &str, u: &str) -> Res {
    let a = io::load_rational_algebra(a)?;
    let b = io::load_rational_algebra(b)?;
    if a.dim != b.dim {
        return Err(Failure::Compute(Error::Dimension("algebras of different dimension".into())));
    }
    let u = io::parse_element(u, a.dim)?;
    let t = kantor_product(a.main()?, b.main()?, &u)?;
    algebra_outcome(&Algebra::binary(format!("[[{}, {}]]", a.name, b.name), t), FieldTag::Q)
}

fn kantor_sq(path: &str, u: &str, op: Option<&str>, checks: &[String]) -> Res {
    let a = io::load_rational_algebra(path)?;
    let u = io::parse_element(u, a.dim)?;
    let sq = kantor_square(&a, op, &u)?;
    if checks.is_empty() {
        return algebra_outcome(&sq, FieldTag::Q);
    }
    let mut results = Map::new();
    let mut text = Vec::new();
    let mut all = true;
    for v in checks {
        let h = check_variety(&sq, v)?.holds;
        all &= h;
        results.insert(v.clone(), json!(h));
        text.push(format!("{v}: {}", yes_no(h)));
    }
    let Value::Object(mut m) = to_value(&sq, FieldTag::Q) else { unreachable!() };
    m.insert("checks".into(), Value::Object(results));
    outcome(Some(all), m, text.join("\n"))
}

fn kantor_u2() -> Res {
    match u2_e_basis() {
        Ok((a, u)) => {
            let Value::Object(mut m) = to_value(&a, FieldTag::Q) else { unreachable!() };
            m.insert("u_index".into(), json!(u));
            m.insert("matches_table".into(), json!(true));
            outcome(Some(true), m, format!("U(2) in the e-basis matches all 64 stored products (u = v{})", u + 1))
        }
        Err(Error::Inconsistent) => outcome(Some(false), to_map(json!({"matches_table": false})), "U(2) does not match the stored table"),
        Err(e) => Err(e.into()),
    }
}

fn conservative(path: &str) -> Res {
    let a = io::load_rational_algebra(path)?;
    let r = conservativity_test(&a)?;
    let mut m = to_map(&r);
    m.insert("jacobi_elements".into(), json!(jacobi_element_space(&a)?.basis().iter().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()));
    let qu = quasi_unit_space(&a)?;
    m.insert("quasi_units".into(), match &qu {
        None => Value::Null,
        Some((p, s)) => json!({"particular": p.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "direction_dim": s.dim()}),
    });
    let text = format!(
        "{}: conservative system {}{}; Jacobi elements dim {}; terminal {}",
        r.algebra,
        if r.feasible { "feasible" } else { "infeasible" },
        r.solution_dim.map(|d| format!(", solution dim {d}")).unwrap_or_default(),
        r.jacobi_dim,
        yes_no(r.terminal)
    );
    outcome(Some(r.feasible), m, text)
}

fn poisson_check(path: &str, kind: &str, link: bool) -> Res {
    let (a, tag) = io::load_algebra(path)?;
    let kind: Kind = kind.parse()?;
    let (holds, mut m, mut text) = over_field!(tag, a, |b| {
        let r = check_poisson_family(&b, kind)?;
        let mut text = format!("{} is {}: {}", a.name, kind, yes_no(r.holds));
        for x in r.preconditions.iter().chain(&r.axioms).filter(|x| !x.holds) {
            text.push_str(&format!("\n  fails {}", x.name));
        }
        Ok::<_, Failure>((r.holds, to_map(&r), text))
    })?;
    let mut verdict = holds;
    if link {
        if tag != FieldTag::Q {
            return Err(Failure::Compute(Error::Unsupported("the link test runs over Q".into())));
        }
        let l = half_derivation_link_test(&a)?;
        verdict &= l.holds;
        text.push_str(&format!("\nright multiplications are ½-derivations: {}", yes_no(l.holds)));
        m.insert("link".into(), serde_json::to_value(&l).expect("json"));
    }
    outcome(Some(verdict), m, text)
}

fn tps_space(path: &str) -> Res {
    let a = io::load_rational_algebra(path)?;
    let s = transposed_compatible_space(&a)?;
    let r = s.report();
    let text = format!("compatible commutative products: dim {}", s.dim());
    outcome(None, to_map(&r), text)
}

fn customary(path: &str, text: &str) -> Res {
    let a = io::load_rational_algebra(path)?;
    let id = parse_identity(text)?;
    let r = customary_check(&a, &id)?;
    let t = match &r.witness {
        None => "holds".to_string(),
        Some(w) => format!("fails at basis tuple {:?}", w.tuple),
    };
    outcome(Some(r.holds), to_map(&r), t)
}

fn load_sigma(p: &Poset, path: &str) -> std::result::Result<workbench_incidence::SigmaMap<Rational>, Failure> {
    Ok(io::load_with(path, |v| sigma_from_json(p, v))?)
}

fn incidence_build(poset: &str, sigma: Option<&str>) -> Res {
    let p = io::load_poset(poset)?;
    let a = match sigma {
        Some(s) => poisson_pair(&p, &load_sigma(&p, s)?)?,
        None => incidence_algebra(&p),
    };
    let Value::Object(mut m) = to_value(&a, FieldTag::Q) else { unreachable!() };
    let basis: Vec<String> = p.intervals().iter().map(|&(x, y)| format!("e{}{}", p.labels[x], p.labels[y])).collect();
    m.insert("basis".into(), json!(basis));
    json_outcome(m)
}

fn poisson_equiv(poset: &str, sigma: &str) -> Res {
    let p = io::load_poset(poset)?;
    let s = load_sigma(&p, sigma)?;
    let r = poisson_sigma_equiv_test(&p, &s)?;
    let text = format!(
        "constant on maximal chains: {}; Poisson: {}; agree: {}",
        yes_no(r.chain_constant),
        yes_no(r.poisson),
        yes_no(r.agree)
    );
    outcome(Some(r.agree), to_map(&r), text)
}

fn seq_strings(d: &HigherDerivationSeq) -> Value {
    json!(d.d.iter().map(workbench_operators::space::matrix_strings).collect::<Vec<_>>())
}

fn load_seq(path: &str) -> std::result::Result<HigherDerivationSeq, Failure> {
    let ms = io::load_with(path, |v| io::matrix_list(v, "d"))?;
    Ok(HigherDerivationSeq::new(ms)?)
}

/// `{"x<=y": [s_0, .., s_N]}` over all intervals.
fn load_transitive(p: &Poset, path: &str) -> std::result::Result<HigherTransitiveMap, Failure> {
    let v = io::read_json(path)?;
    let obj = v.as_object().ok_or_else(|| Failure::Input(format!("{path}: expected an object keyed by \"x<=y\"")))?;
    let iv = p.intervals();
    let mut cols: Vec<Option<Vec<Rational>>> = vec![None; iv.len()];
    for (k, val) in obj {
        let (x, y) = k.split_once("<=").ok_or_else(|| Failure::Input(format!("{path}: bad key `{k}`")))?;
        let find = |s: &str| p.labels.iter().position(|l| l == s.trim());
        let pos = match (find(x), find(y)) {
            (Some(a), Some(b)) => iv.iter().position(|&w| w == (a, b)),
            _ => None,
        }
        .ok_or_else(|| Failure::Input(format!("{path}: `{k}` is not an interval")))?;
        cols[pos] = Some(io::vector(val).map_err(|e| Failure::Input(format!("{path}: {e}")))?);
    }
    let cols: Vec<Vec<Rational>> = cols.into_iter().collect::<Option<_>>().ok_or_else(|| Failure::Input(format!("{path}: every interval needs values")))?;
    let len = cols[0].len();
    if cols.iter().any(|c| c.len() != len) {
        return Err(Failure::Input(format!("{path}: all value lists must have the same length")));
    }
    Ok(HigherTransitiveMap { values: (0..len).map(|n| cols.iter().map(|c| c[n].clone()).collect()).collect() })
}

fn hd_check(poset: &str, seq: &str, rho: Option<&str>, sigma_map: Option<&str>) -> Res {
    let p = io::load_poset(poset)?;
    let a = incidence_algebra::<Rational>(&p);
    let d = load_seq(seq)?;
    let r = higher_derivation_check(&a, &d)?;
    let mut m = to_map(&r);
    let mut verdict = r.holds;
    let mut text = match r.violation {
        None => format!("higher derivation of order {}: yes", d.order()),
        Some((n, x, y)) => format!("higher derivation: no, fails at order {n} on basis pair ({x}, {y})"),
    };
    match (rho, sigma_map) {
        (Some(rho), Some(sm)) => {
            let rho: Vec<Vec<Rational>> = io::load_with(rho, |v| v.as_array().ok_or_else(|| Error::Parse("expected a list of elements".into()))?.iter().map(io::vector).collect())?;
            let s = load_transitive(&p, sm)?;
            let f = hd_factorization_verify(&p, &a, &d, &rho, &s)?;
            verdict &= f;
            m.insert("factorization".into(), json!(f));
            text.push_str(&format!("\nfactorization Delta_rho * sigma~: {}", yes_no(f)));
        }
        (None, None) => {}
        _ => return Err(Failure::Compute(Error::InvalidParam("--rho and --sigma-map go together".into()))),
    }
    outcome(Some(verdict), m, text)
}

fn hd_compose(poset: &str, seq: Option<&str>, with: Option<&str>, inverse: bool, inner_path: Option<&str>, order: usize) -> Res {
    let p = io::load_poset(poset)?;
    let a = incidence_algebra::<Rational>(&p);
    let d = match (seq, inner_path) {
        (Some(s), None) => load_seq(s)?,
        (None, Some(r)) => {
            let rs: Vec<Vec<Rational>> = io::load_with(r, |v| v.as_array().ok_or_else(|| Error::Parse("expected a list of elements".into()))?.iter().map(io::vector).collect())?;
            inner(&a, &rs, order)?
        }
        _ => return Err(Failure::Compute(Error::InvalidParam("give exactly one of --seq and --inner".into()))),
    };
    let d = match with {
        Some(w) => d.compose(&load_seq(w)?)?,
        None => d,
    };
    let d = if inverse { d.inverse()? } else { d };
    let hd = higher_derivation_check(&a, &d)?;
    let m = to_map(json!({"d": seq_strings(&d), "order": d.order(), "higher_derivation": hd.holds}));
    json_outcome(m)
}

fn degen_verify(from: &str, to: &str, cert: &str, distinct: bool) -> Res {
    let a = io::load_rational_algebra(from)?;
    let b = io::load_rational_algebra(to)?;
    let g = io::load_with(cert, Certificate::from_json)?;
    let r = degeneration_verify(&a, &b, &g)?;
    let obs = degeneration_obstruction(&a, &b, distinct)?;
    let mut m = to_map(&r);
    m.insert("obstructions".into(), serde_json::to_value(&obs).expect("json"));
    let text = format!(
        "limit exists: {}; limit equals target: {}{}",
        yes_no(r.limit_exists),
        yes_no(r.equals_target),
        if obs.is_empty() { String::new() } else { format!("; {} necessary conditions fail", obs.len()) }
    );
    outcome(Some(r.holds()), m, text)
}

fn degen_obstruct(from: &str, to: &str, distinct: bool) -> Res {
    let a = io::load_rational_algebra(from)?;
    let b = io::load_rational_algebra(to)?;
    let obs = degeneration_obstruction(&a, &b, distinct)?;
    let mut text: Vec<String> = obs.iter().map(|v| format!("{}: {}", v.rule, v.detail)).collect();
    if text.is_empty() {
        text.push("no obstruction found (this does not prove a degeneration)".into());
    }
    let m = to_map(json!({
        "violations": obs,
        "from": workbench_deform::invariant_profile(&a)?,
        "to": workbench_deform::invariant_profile(&b)?,
    }));
    outcome(Some(obs.is_empty()), m, text.join("\n"))
}

fn ext_cocycles(path: &str, variety: &str, s: usize) -> Res {
    let a = io::load_rational_algebra(path)?;
    let c = cocycle_space(&a, variety, s)?;
    let text = format!("Z2 dim {}, B2 dim {}, H2 dim {}", c.z2.dim(), c.b2.dim(), c.h2_dim());
    outcome(None, to_map(c.summary()), text)
}

fn ext_build(path: &str, cocycle: &str) -> Res {
    let a = io::load_rational_algebra(path)?;
    let ms: Vec<Matrix<Rational>> = io::load_with(cocycle, |v| io::matrix_list(v, "theta"))?;
    let e = central_extension(&a, &Cocycle { m: ms })?;
    let Value::Object(mut m) = to_value(&e.algebra, FieldTag::Q) else { unreachable!() };
    m.insert("annihilator_component_free".into(), json!(e.annihilator_component_free));
    m.insert("components_independent".into(), json!(e.components_independent));
    json_outcome(m)
}
