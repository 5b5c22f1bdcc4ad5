//! Twisted Shibukawa-Ueno R-operators and their finite-dimensional
//! representations.
//!
//! The crate builds the elliptic (Belavin), trigonometric (twisted affinized
//! Cremmer-Gervais) and rational (twisted affinized Jordan-Cremmer-Gervais)
//! R-matrices two ways, as explicit coefficient tables and as restrictions
//! of operators on function spaces, and checks the identities relating them.

pub mod error;
pub mod numeric;
pub mod operator;
pub mod rmatrix;
pub mod space;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
