//! Exact integer arithmetic for conic bundles on rational elliptic surfaces.
//!
//! A rational elliptic surface over an algebraically closed field is the
//! blowup of the plane at the nine base points of a cubic pencil. This crate
//! works purely with the numerics of that presentation and provides:
//!
//! - the rank-10 intersection lattice with adjunction and Riemann-Roch
//!   arithmetic ([`ns_lattice`]),
//! - Kodaira fiber graphs with exact component multiplicities and fiber
//!   configuration bookkeeping ([`kodaira`]),
//! - declarative surface models: a proximity forest of nine base points plus
//!   named negative curves, validated against the declared fiber
//!   configuration ([`surface_model`]),
//! - conic class detection, the five-type classification of singular
//!   conic-bundle fibers, and exhaustive fiber/bundle enumeration over a
//!   model ([`conic_bundles`]),
//! - criteria deciding which conic-bundle fiber types a given Kodaira
//!   configuration admits ([`admissibility`]),
//! - construction of conic classes from plane pencils of lines or conics
//!   supported on the cubic pencil's base locus ([`construction`]).
//!
//! Bundled worked surfaces live in [`corpus`]; the `resconic` binary wraps
//! everything behind a small command line ([`cli`]).
//!
//! All arithmetic is exact. Divisor classes carry arbitrary-precision
//! integer coefficients and no floating point appears anywhere.

pub mod admissibility;
pub mod cli;
pub mod conic_bundles;
pub mod construction;
pub mod corpus;
pub mod kodaira;
pub mod ns_lattice;
pub mod surface_model;

pub use admissibility::{admits, A2Verdict, AdmissibilityReport};
pub use conic_bundles::{ConicBundle, ConicClass, FiberType, SingularConicFiber};
pub use construction::{conic_class_from_pencil, PencilKind, PlanePencil};
pub use kodaira::{build_fiber_graph, FiberConfiguration, FiberGraph, KodairaType};
pub use ns_lattice::DivisorClass;
pub use surface_model::{CurveRole, NamedCurve, SurfaceModel};
