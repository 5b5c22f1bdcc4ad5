//! Quantitative checks: Yang-Baxter residuals, Hecke and Belavin structure,
//! twist and affinization identities, table-vs-restriction comparisons and
//! the two degeneration sweeps.

pub mod draws;
pub mod identities;
pub mod report;
pub mod restriction;
pub mod sweep;
pub mod ybe;

pub use identities::{
    affinization_check, affinization_identity_residual, belavin_dual_residual,
    belavin_structure_checks, hecke_check, hecke_residual, psi_quasi_periodicity_residual,
    three_term_check, twist_consistency, AFFINIZATION_THRESHOLD, BELAVIN_STRUCTURE_THRESHOLD,
    HECKE_THRESHOLD, THETA_IDENTITY_THRESHOLD,
};
pub use report::{params, CheckReport, Param, Residual};
pub use restriction::{invariance_check, table_vs_restriction, TableFamily};
pub use sweep::{
    belavin_cg_point, cg_jcg_point, cg_jcg_point_oriented, degeneration_sweep, SweepPath,
    SweepSpec, BELAVIN_CG_FINAL, CG_JCG_FINAL, OVERFLOW_LIMIT, ROUNDOFF_FLOOR, SLOPE_RANGE,
};
pub use ybe::{
    embed, ybe_functional_check, ybe_matrix_check, ybe_residual_matrix, YBE_FUNCTIONAL_THRESHOLD,
    YBE_MATRIX_THRESHOLD,
};
