pub mod abelian;
pub mod bundles;
pub mod cli;
pub mod error;
pub mod foldmap;
pub mod graphs;
pub mod gysin;
pub mod homology;
pub mod pop;
mod text;

pub use error::{Error, Result};
