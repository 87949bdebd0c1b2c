//! Parameterized constructions of the worked examples.

pub mod families;
pub mod make;

pub use families::*;
pub use make::{make, GallerySpec};
