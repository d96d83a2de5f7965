//! Para-unitary matrix route: Butson-Hadamard factors, exact Laurent
//! products and the GBF matrices read off from them.

mod bh;
mod builders;
mod check;
mod extract;
mod laurent;

pub use bh::{unitary_constant, weighted_bh_sum, BhMatrix, WeightLayout};
pub use builders::{
    build_diag_pair_matrix, build_hadamard_pair_matrix, build_pu_matrix, build_triple_matrix, chain_product,
    component_matrices, recombine,
};
pub use check::{check_recipe, RecipeCheck};
pub use extract::{
    closed_form_matrix, extract_chain, extract_gbf_matrix, extracted_matrix, identity_failures,
    matrix_identities_check, qam_phases, GbfMatrix, VgbfMatrix,
};
pub use laurent::{is_paraunitary, LaurentMatrix, LaurentPoly, ParaunitaryCheck};
