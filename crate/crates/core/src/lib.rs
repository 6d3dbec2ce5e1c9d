//! Eigenvalues of the Laplacian in the unit disk with frequently alternating
//! Dirichlet and Neumann boundary conditions: the limiting Robin problem,
//! two-parameter asymptotics, boundary-layer functions, and a direct solver.

// NaN-rejecting `!(x > 0.0)` guards and full-precision quadrature constants are deliberate
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod asymptotics;
pub mod boundary_layer;
pub mod direct_solver;
pub mod error;
pub mod limiting;
pub mod quadrature;
pub mod roots;
pub mod specfun;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use asymptotics::{
    eigenvalue_gap, eigenvalue_series, lambda0_of_mu, params_from_geometry, AsymptoticEigenvalue, GapPrediction,
    PerturbationParams,
};
pub use direct_solver::{
    find_eigenvalue, sigma_min_scan, DirectEigenResult, Layout, Reflection, SolverConfig, SymmetryClass,
};
pub use error::{Error, Result};
pub use limiting::{
    degenerate_a, limiting_spectrum, robin_roots, DegeneracyCertificate, LimitingEigenvalue, RobinRoot,
};
pub use specfun::{bessel_j, bessel_j_prime, bessel_zero, ZeroIndex, ZeroKind};
