//! Kantor products of multiplications, the algebras U(n) and conservativity.

pub mod conservative;
pub mod product;

pub use conservative::{
    conservativity_test, jacobi_element_space, l_bracket, quasi_unit_space, satisfies_conservative, terminal_star,
    u_candidate_star, ConservativityReport,
};
pub use product::{
    alpha_index, build_u, catalog_get, kantor_product, kantor_square, u2_e_basis, u2_e_vectors, u2_subalgebra,
    u2e_table_tensor, EXTRA_NAMES, U2E_TABLE,
};
