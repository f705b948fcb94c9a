//! Exact continuous cohomology of profinite groups presented by towers of
//! finite quotients, with coefficients in towers of discrete modules, and the
//! two E2-terms of the descent spectral sequence in a chain-complex model.
//!
//! Everything here is exact integer arithmetic over `alloc`; file formats and
//! the command line live in the `prodesc` crate.
#![no_std]
extern crate alloc;

mod error;
mod lattice;
mod reduce;

pub mod catalog;
pub mod descent;
pub mod fgab;
pub mod gmod;
pub mod groups;
pub mod int;
pub mod matrix;
pub mod smith;
pub mod towers;

pub use error::Error;
pub use fgab::{FgAbGroup, Homomorphism};
pub use int::Int;
pub use matrix::Matrix;
