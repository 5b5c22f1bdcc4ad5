//! Theta functions, the kernels `G_θ` and the theta identities.

pub mod kernel;
pub mod theta;

pub use kernel::{
    constant_term_identity_residual, kernel_g, three_term_residual, Kernel, KernelFamily, Lattice,
    ModularParams, POLE_GUARD,
};
pub use theta::{
    jacobi_theta1, jacobi_theta1_prime0, theta_char, theta_char_deriv0, ThetaChar, DEFAULT_TOL,
};
