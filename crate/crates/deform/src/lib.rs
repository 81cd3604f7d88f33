//! Degenerations certified by basis changes over `Q(t)`, necessary conditions for them, and
//! cocycle spaces for central extensions.

pub mod degeneration;
pub mod extension;
pub mod obstruction;

pub use degeneration::{degeneration_verify, Certificate, DegenerationReport};
pub use extension::{central_extension, cocycle_space, split_isomorphism, Cocycle, CocycleSpace, Extension};
pub use obstruction::{degeneration_obstruction, invariant_profile, InvariantProfile, Violation};
