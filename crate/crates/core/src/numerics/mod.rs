//! Dense linear algebra kernels and a simplex LP solver.

mod eig;
mod lp;
mod matrix;

pub use eig::{
    hermitian_eig, lambda_max, lambda_min, power_iteration_norm, singular_values, spectral_norm,
    EigResult, DEFAULT_EIG_TOL,
};
pub use lp::{lp_solve, lp_solve_with_budget, LpProblem, LpSolution, Sense, DEFAULT_LP_BUDGET};
pub use matrix::{inner, vec_norm, ComplexMatrix};
