//! Construction, verification and enumeration of Golay complementary pairs
//! over `4^q`-QAM constellations, with exact arithmetic throughout.

pub mod algebra;
pub mod constructions;
pub mod enumeration;
pub mod error;
pub mod golay;
pub mod io;
pub mod offsets;
pub mod pmepr;
pub mod pu;
pub mod sampling;

pub use error::{Error, Result};
