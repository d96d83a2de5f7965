use serde::Serialize;

use crate::algebra::{Permutation, Z4};
use crate::constructions::{ConstructionSpec, Recipe, Side};
use crate::error::Result;

use super::builders::{build_pu_matrix, component_matrices, recombine};
use super::extract::{closed_form_matrix, extracted_matrix};
use super::laurent::is_paraunitary;

/// Results of every matrix-route check on one recipe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecipeCheck {
    pub paraunitary: bool,
    pub constant: Option<i64>,
    /// the product equals the weighted sum of its unit-entry components
    pub decomposition_exact: bool,
    pub closed_form_matches_extraction: bool,
    /// row 0 is the last-side pair, column 0 the first-side pair
    pub row_matches_construction: bool,
    pub column_matches_construction: bool,
}

impl RecipeCheck {
    pub fn passed(&self) -> bool {
        self.paraunitary
            && self.decomposition_exact
            && self.closed_form_matches_extraction
            && self.row_matches_construction
            && self.column_matches_construction
    }
}

pub fn check_recipe(recipe: &Recipe) -> Result<RecipeCheck> {
    let product = build_pu_matrix(recipe)?;
    let pu = is_paraunitary(&product);
    let decomposition_exact = recombine(&component_matrices(recipe)?)? == product;
    let closed = closed_form_matrix(recipe)?;
    let closed_form_matches_extraction = closed == extracted_matrix(recipe)?;
    let m = recipe.m();
    let built = |side: Side| {
        ConstructionSpec {
            recipe: recipe.with_side(side),
            pi: Permutation::identity(m),
            base_c: vec![Z4::ZERO; m + 1],
            c_prime: Z4::ZERO,
        }
        .build()
        .map(|b| (b.f, b.g))
    };
    Ok(RecipeCheck {
        paraunitary: pu.paraunitary,
        constant: pu.constant,
        decomposition_exact,
        closed_form_matches_extraction,
        row_matches_construction: built(Side::Last)? == closed.row(0),
        column_matches_construction: built(Side::First)? == closed.column(0),
    })
}
