//! Exact rational Hermite interpolation over Q and GF(p).
//!
//! Given nodes u_i with Taylor data v_{i,0..n_i-1} and a numerator degree
//! bound k-1, find A/B with deg A <= k-1, deg B <= n-k whose Taylor
//! expansion at every u_i matches, or report that no such quotient exists
//! and which nodes are to blame.
//!
//! Three solvers agree on every input: [`solvers::solve_kernel`] (kernel of
//! the structured matrix), [`solvers::solve_eea`] (extended Euclid against
//! the Hermite interpolant) and [`solvers::solve_minors`] (signed maximal
//! minors). [`strata`] classifies inputs by kernel dimension.

pub mod error;
pub mod field;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod problem;
pub mod solvers;
pub mod strata;
pub mod verify;

pub use error::{Error, Result};
pub use field::{FieldConfig, Scalar};
pub use linalg::{ExactMatrix, MinorVector};
pub use poly::{Degree, Poly};
pub use problem::{HermiteData, RationalSolution};
pub use solvers::{solve_eea, solve_kernel, solve_minors, Classification, MinimalSolution};
pub use strata::{classify_by_rank, stratum_equations, StratumReport};
