//! First eigenvalue of the Robin Laplacian with a negative boundary parameter.
//!
//! The crate computes `lambda(alpha, Omega)` for
//!
//! * balls and spherical shells in any dimension `n >= 2`, from the explicit
//!   modified-Bessel eigenfunctions ([`radial`]),
//! * planar convex polygons, with a P1 finite element discretization of the
//!   Rayleigh quotient ([`fem`]),
//!
//! and checks, polygon by polygon, that the disc with the same perimeter has a
//! larger first eigenvalue. The comparison is carried out by transplanting the
//! disc eigenfunction onto the level sets of the distance to the boundary
//! ([`dearrange`]), which only needs the perimeter and area of the inner
//! parallel bodies ([`geometry`]).
//!
//! With the default `parallel` feature, batch work (corpus sweeps, refinement
//! levels, property cases) runs on the rayon thread pool; without it the same
//! code paths run sequentially. Results are identical either way.

pub mod corpus;
pub mod dearrange;
pub mod error;
pub mod exec;
pub mod fem;
pub mod geometry;
pub mod harness;
pub mod quadrature;
pub mod radial;
pub mod report;
pub mod specialfn;

pub use error::{Error, Result};
pub use geometry::ConvexPolygon;
