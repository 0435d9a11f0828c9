//! Exact integer linear algebra.

pub mod matrix;
pub mod poly;
pub mod snf;

pub use matrix::{det_cofactor, solve_rational, IntMatrix, IntVector};
pub use poly::{cyclotomic, orders_with_totient_at_most, totient, IntPolynomial};
pub use snf::{integer_kernel, rank, smith_normal_form, solve_linear_integer, LinearSolution, SnfResult};
