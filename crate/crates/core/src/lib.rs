//! Inclusion-exclusion polynomials.
//!
//! - [`polyarith`]: dense integer polynomials and binomial-factor arithmetic.
//! - [`iep`]: parameter sets and three independent constructions of `Q_rho`.
//! - [`ternary`]: O(1)-memory coefficient streams for three parameters.
//! - [`analyzer`]: batch scans over residue classes, flatness and height bounds,
//!   plus the full verification suite.

pub mod analyzer;
pub mod arith;
pub mod error;
pub mod iep;
pub mod polyarith;
pub mod ternary;

pub use error::{Error, Result};
pub use iep::{
    compute, compute_division, compute_product, compute_series, divisor_set,
    negation_identity_check, order2_coefficient, order_of, phi_degree, representable, validate,
    DivisorSet, Method, Rho, DEFAULT_DEGREE_CAP,
};
pub use polyarith::IntPoly;
pub use ternary::{CoeffSummary, Decomposition, TernaryContext};
