//! Exact integer and rational linear algebra: vectors, Hermite and Smith
//! normal forms, and sublattices of ℤⁿ.
//!
//! Nothing in this module uses floating point.

mod lattice;
pub mod normal_form;
mod vector;

pub use lattice::{
    gram_schmidt, hnf, orthogonal_lattice, project_out, rank, saturated_span, solve_right,
    Lattice, QuotientInvariants,
};
pub use vector::{frac_part, IntVector, RationalVector};
