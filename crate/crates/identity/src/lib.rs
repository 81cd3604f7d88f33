//! Non-associative polynomial identities: parsing, linearization, exact checking and a
//! catalog of varieties.

pub mod eval;
pub mod functors;
pub mod parser;
pub mod polarize;
pub mod term;
pub mod varieties;

pub use eval::{check_identity, check_symbolic, eval_identity, CheckReport, Compiled, Witness};
pub use functors::{minus, plus};
pub use parser::{parse_identity, parse_with_vars};
pub use polarize::{polarize, Polarized};
pub use term::{Identity, OpSym, Term};
pub use varieties::{check_variety, project_op, variety, Variety, VarietyReport, TERMINAL, VARIETY_NAMES};
