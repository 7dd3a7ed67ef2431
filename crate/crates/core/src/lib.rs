//! Exact computer algebra for iterated residues at infinity.
//!
//! The crate computes multivariate Laurent expansions of rational integrands
//! in the domain z_1 << ... << z_k with exact rational coefficients, and uses
//! them for Thom series of Morin singularities, equivariant multidegrees and
//! fixed-point sums, finite jet calculus, and degree-positivity certificates
//! for projective hypersurfaces.

pub mod equivariant;
pub mod ggl;
pub mod jets;
pub mod json;
pub mod laurent;
pub mod rational;
pub mod ring;
pub mod thom;

pub use laurent::{
    coefficient_at, coefficient_window, expand_inverse_linear, iterated_residue,
    iterated_residue_checked, series_inverse, vanishing_predicates, AlgebraError, LaurentSeries,
    LinearForm, ResidueProblem,
};
pub use rational::{rat_from_str, rat_to_string, Int, Rat};
pub use ring::{Mono, Poly, Ring, Symbol};
