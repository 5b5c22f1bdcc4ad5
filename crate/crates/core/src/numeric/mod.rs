//! Numeric building blocks shared by the other modules.

pub mod ddouble;
pub mod dense;
pub mod field;
pub mod linalg;

pub use ddouble::{DComplex, DDouble};
pub use dense::Dense;
pub use field::Field;
pub use linalg::{CMatrix, CVector};
