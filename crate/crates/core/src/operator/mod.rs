//! Operators on functions of two or three variables: sums of coefficient
//! functions times swap-and-shift pull-backs.

pub mod function_op;
pub mod point_map;
pub mod su;

pub use function_op::{CoeffFn, FunctionOperator, OperatorTerm};
pub use point_map::PointMap;
pub use su::{
    restrict_to_basis, restriction_grid, su_operator, twist_operator, twisted_su,
    twisted_su_with_kernel, ybe_grid, ybe_operators, ybe_residual_functional, ybe_test_functions,
    SpectralParams, TestFn, RESIDUAL_FLOOR,
};
