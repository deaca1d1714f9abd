//! Dilation surfaces as polygon gluings.
//!
//! A dilation surface is built from convex polygons whose edges are glued in
//! pairs by maps of the form z ↦ a·z + b with a a positive real. Directions
//! are globally well defined on such a surface, so every angle θ carries an
//! oriented foliation by straight lines. This crate models the surfaces,
//! traces their foliations, detects flat and hyperbolic cylinders, computes
//! Delaunay decompositions and geodesic triangulations, and decides
//! membership in Veech groups at desk scale.
//!
//! Everything is exact-first: surfaces built from rational data are traced
//! and classified in exact rational arithmetic, floats only enter through
//! angle reports and bisection tolerances.

pub mod aiet;
pub mod builders;
pub mod cylinder;
pub mod delaunay;
pub mod flow;
pub mod geom;
pub mod real;
pub mod surface;
pub mod veech;

pub use geom::{DirectionVec, Mat2, PlaneVec, PosAffineMap};
pub use real::Real;
pub use surface::{DilationSurface, EdgeRef, SurfacePoint, ValidationReport};
