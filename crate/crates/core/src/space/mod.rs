//! Representation spaces, sampling grids, least-squares expansion and exact
//! polynomial arithmetic for the rational case.

pub mod basis;
pub mod expand;
pub mod grid;
pub mod poly;

pub use basis::{basis_eval, phi_tilde_coefficients, psi_shift, st_matrices, BasisFamily};
pub use expand::{expand_in_basis, product_design, Expander, MEMBERSHIP_THRESHOLD};
pub use grid::{PoleLocus, SampleGrid, POLE_DELTA};
pub use poly::BivariatePoly;
