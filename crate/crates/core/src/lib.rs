//! Exact counts and full asymptotic expansions for tree varieties whose
//! generating function satisfies `T(z) = zeta(z) exp(T(z))`.
//!
//! The pipeline is: exact counts ([`counts`]), the variety's `zeta`
//! ([`variety`]), the singularity `rho` with `zeta(rho) = 1/e` ([`solver`]),
//! then the Puiseux coefficients `t_n` and asymptotic coefficients `tau_l`
//! ([`expansion`]). [`combinatorics`] holds the exact rational kernels and
//! [`precision`] the high-precision reals and truncated series.

pub mod combinatorics;
pub mod counts;
pub mod expansion;
pub mod precision;
pub mod solver;
pub mod variety;

pub use counts::{counts, CountSequence, Variety};
pub use expansion::{
    estimate_count, error_table, puiseux_coeffs, tau_coeffs, Analysis, AnalysisConfig, AsymptoticExpansion, Error,
    ErrorTable, ExpansionError, PuiseuxExpansion,
};
pub use precision::{HpReal, Precision};
pub use solver::{solve_rho, RhoResult, SolverError};
pub use variety::{zeta_derivatives, zeta_series, VarietySpec};
