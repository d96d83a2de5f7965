//! Exact base arithmetic: residues mod 4, Gaussian integers, generalized
//! Boolean functions and mixed-radix digits.

mod gaussian;
mod gbf;
mod permutation;
mod radix;
mod z4;

pub use gaussian::GaussianInt;
pub use gbf::{Gbf, Vgbf};
pub use permutation::Permutation;
pub use radix::MixedRadix;
pub use z4::Z4;
