//! Poisson, generic, generalized and transposed Poisson pairs.

pub mod customary;
pub mod family;
pub mod transposed;

pub use customary::{angle_bracket, customary_check, CustomaryIdentity, CustomaryReport, CustomaryTerm};
pub use family::{check_poisson_family, contact_example, d_map, with_d, AxiomResult, FamilyReport, Kind};
pub use transposed::{half_derivation_link_test, transposed_compatible_space, CompatibleReport, CompatibleSpace, LinkReport};
