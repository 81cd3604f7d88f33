//! Spaces of derivation-type operators.

pub mod derivations;
pub mod local;
pub mod peirce;
pub mod space;

pub use derivations::{
    centroid, commuting_map_space, derivation_space, generalized_derivation_space, leibniz_derivation_space, Arrangement, Bracketing,
    GenMode, LeibnizReport,
};
pub use local::{antisymmetric_space, LocalContext, LocalVerdict};
pub use peirce::{peirce_decompose, Peirce, PeirceDims};
pub use space::{OperatorSpace, SpaceReport, TupleOperatorSpace};
pub use workbench_core::structure::delta_derivation_space;
