//! Exact verification of multiplier Hopf algebras, partial comodule coalgebras,
//! and their smash coproducts.

pub mod algebra;
pub mod cli;
pub mod coaction;
pub mod bundle;
pub mod construct;
pub mod error;
pub mod exact;
pub mod gallery;
pub mod mhopf;
pub mod multiplier;
pub mod report;
pub mod smash;
pub mod window;

pub use error::{Error, Result};
