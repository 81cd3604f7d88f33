//! Axiom checks for Poisson-type pairs `(mul, bracket)`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use workbench_core::{Algebra, Error, Field, Rational, Result, Ring, StructureTensor};
use workbench_identity::{check_identity, check_variety, parse_identity, project_op, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Poisson,
    Generic,
    Transposed,
    Generalized,
    JordanBracket,
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "poisson" => Kind::Poisson,
            "generic" => Kind::Generic,
            "transposed" => Kind::Transposed,
            "generalized" => Kind::Generalized,
            "jordan-bracket" => Kind::JordanBracket,
            _ => return Err(Error::InvalidParam(format!("unknown kind `{s}`"))),
        })
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Poisson => "poisson",
            Kind::Generic => "generic",
            Kind::Transposed => "transposed",
            Kind::Generalized => "generalized",
            Kind::JordanBracket => "jordan-bracket",
        })
    }
}

pub const LEIBNIZ_RULE: &str = "[x, y*z] = [x, y]*z + y*[x, z]";
pub const JACOBI: &str = "[x, [y, z]] = [[x, y], z] + [y, [x, z]]";
pub const TRANSPOSED_RULE: &str = "2*z*[x, y] = [z*x, y] + [x, z*y]";
pub const LEIBNIZ_WITH_D: &str = "[x, y*z] = [x, y]*z + y*[x, z] - D(x)*y*z";
pub const JACOBI_WITH_D: &str = "[x, [y, z]] = [[x, y], z] + [y, [x, z]] + D(x)*[y, z] + D(y)*[z, x] + D(z)*[x, y]";

#[derive(Clone, Debug, Serialize)]
pub struct AxiomResult<F> {
    pub name: String,
    pub holds: bool,
    pub witness: Option<Witness<F>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport<F> {
    pub kind: Kind,
    /// Preconditions and axioms all hold.
    pub holds: bool,
    pub preconditions_hold: bool,
    pub preconditions: Vec<AxiomResult<F>>,
    pub axioms: Vec<AxiomResult<F>>,
}

/// `D(a) = {a, 1}` as a matrix tensor, when the pair has a unit.
pub fn d_map<F: Field>(p: &Algebra<F>) -> Result<Option<StructureTensor<F>>> {
    let br = p.op_result("bracket")?;
    Ok(p.unit.as_ref().map(|u| StructureTensor::from_matrix(&br.slot_operator(0, &[u]))))
}

/// The pair with `D` attached as the unary operation `D` (zero without a unit).
pub fn with_d<F: Field>(p: &Algebra<F>) -> Result<Algebra<F>> {
    let d = d_map(p)?.unwrap_or_else(|| StructureTensor::zero(p.dim, 1));
    p.clone().with_op("D", d)
}

fn variety_check<F: Field>(p: &Algebra<F>, op: &str, variety: &str) -> Result<AxiomResult<F>> {
    let r = check_variety(&project_op(p, op)?, variety)?;
    Ok(AxiomResult {
        name: format!("{op}: {variety}"),
        holds: r.holds,
        witness: r.failures.into_iter().next().and_then(|f| f.witness),
    })
}

fn axiom<F: Field>(p: &Algebra<F>, name: &str, text: &str) -> Result<AxiomResult<F>> {
    let r = check_identity(p, &parse_identity(text)?)?;
    Ok(AxiomResult { name: name.into(), holds: r.holds, witness: r.witness })
}

fn nonzero<F: Field>(p: &Algebra<F>, op: &str) -> Result<AxiomResult<F>> {
    Ok(AxiomResult { name: format!("{op}: nonzero"), holds: !p.op_result(op)?.is_zero(), witness: None })
}

/// Preconditions: `mul` associative, and commutative except for `poisson`, where
/// noncommutative associative algebras (incidence algebras) are allowed; `bracket`
/// anticommutative, and Lie for `poisson` and `transposed`.
pub fn check_poisson_family<F: Field>(p: &Algebra<F>, kind: Kind) -> Result<FamilyReport<F>> {
    for op in ["mul", "bracket"] {
        let t = p.op_result(op)?;
        if t.arity() != 2 {
            return Err(Error::Precondition(format!("`{op}` must be binary")));
        }
    }
    if matches!(kind, Kind::Generalized | Kind::JordanBracket) && p.unit.is_none() {
        return Err(Error::Precondition(format!("{kind} pairs need a unit")));
    }
    let a = with_d(p)?;
    let mut pre = vec![variety_check(&a, "mul", "associative")?];
    if kind != Kind::Poisson {
        pre.push(variety_check(&a, "mul", "commutative")?);
    }
    pre.push(variety_check(&a, "bracket", "anticommutative")?);
    match kind {
        Kind::Poisson => pre.push(variety_check(&a, "bracket", "lie")?),
        Kind::Transposed => {
            pre.push(variety_check(&a, "bracket", "lie")?);
            pre.push(nonzero(&a, "mul")?);
            pre.push(nonzero(&a, "bracket")?);
        }
        _ => {}
    }
    let axioms = match kind {
        Kind::Poisson | Kind::Generic => vec![axiom(&a, "leibniz rule", LEIBNIZ_RULE)?],
        Kind::Transposed => vec![axiom(&a, "transposed rule", TRANSPOSED_RULE)?],
        Kind::Generalized => vec![axiom(&a, "leibniz rule with D", LEIBNIZ_WITH_D)?, axiom(&a, "jacobi", JACOBI)?],
        Kind::JordanBracket => {
            vec![axiom(&a, "leibniz rule with D", LEIBNIZ_WITH_D)?, axiom(&a, "jacobi with D", JACOBI_WITH_D)?]
        }
    };
    let preconditions_hold = pre.iter().all(|r| r.holds);
    Ok(FamilyReport {
        kind,
        holds: preconditions_hold && axioms.iter().all(|r| r.holds),
        preconditions_hold,
        preconditions: pre,
        axioms,
    })
}

/// A generalized pair with nonzero `D`: `Q[t]/(t^2)` with the derivation `D t = t` and
/// `{a, b} = D(a) b - a D(b)`.
pub fn contact_example() -> Algebra<Rational> {
    let one = Rational::one();
    let mut m = StructureTensor::zero(2, 2);
    m.add_entry(&[0, 0], 0, &one);
    m.add_entry(&[0, 1], 1, &one);
    m.add_entry(&[1, 0], 1, &one);
    let mut br = StructureTensor::zero(2, 2);
    br.add_entry(&[1, 0], 1, &one);
    br.add_entry(&[0, 1], 1, &one.neg());
    let mut a = Algebra::binary("contact2", m).with_op("bracket", br).expect("same dim");
    a.unit = Some(workbench_core::basis_vector(2, 0));
    a
}
