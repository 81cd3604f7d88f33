//! Finite posets, incidence algebras, sigma-brackets and higher derivations.

pub mod algebra;
pub mod higher;
pub mod poset;
pub mod sweep;

pub use algebra::{
    basis_index, chain_constant_check, incidence_algebra, poisson_pair, poisson_sigma_equiv_test, sigma_bracket,
    sigma_from_json, ChainReport, EquivReport, SigmaMap,
};
pub use higher::{
    hd_factorization_verify, higher_derivation_check, inner, inner_rk, HdReport, HigherDerivationSeq, HigherTransitiveMap,
    DEFAULT_ORDER,
};
pub use poset::{Poset, PosetJson};
pub use sweep::{direct_verdicts, gf3_sweep, sweep_poset, SigmaForms, SweepReport};
