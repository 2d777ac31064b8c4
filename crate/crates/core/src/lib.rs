//! Exact computer algebra for commutative algebras in the tensor category
//! Ver4+ over fields of characteristic two.

pub mod cat;
pub mod dalgebra;
pub mod dmodules;
pub mod error;
pub mod field;
pub mod groups;
pub mod linalg;
pub mod points;
pub mod spectra;

pub use error::{Error, Result};
pub use field::{BaseField, Fe};
