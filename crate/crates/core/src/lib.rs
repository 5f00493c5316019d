//! Point configurations on spheres and related compact metric spaces.
//!
//! The crate computes and optimizes the two classical quality measures of an
//! N-point configuration: the separation distance `δ` (smallest pairwise
//! distance) and the mesh norm `η` (covering radius), together with their
//! quotient `γ = η/δ`, the mesh-separation ratio. On top of those
//! diagnostics it provides Riesz s-energy evaluation with analytic gradients
//! and Hessians, gauge-aware stability analysis, multi-start Riemannian
//! minimization with continuation in `s`, exact constructions of the named
//! extremal configurations (bipyramid, square-base pyramids, icosahedron,
//! 600-cell), and an exact-rational model of packings on the 1/3 Cantor set
//! whose mesh ratio is unbounded.
//!
//! All distances are chordal (Euclidean) throughout; spheres are unit
//! spheres `S^n ⊂ R^{n+1}`.

pub mod acceptance;
pub mod cantor;
pub mod catalog;
pub mod config;
pub mod covering;
pub mod error;
pub mod geom;
pub mod optimize;
pub mod riesz;
pub mod rng;

pub use config::{ContactGraph, Configuration};
pub use covering::{DiagnosticsReport, MeshMethod, MeshResult};
pub use error::{Error, Result};
pub use riesz::{EnergyParams, EnergyReport, EnergyValue};
pub use optimize::{Init, MinimizeResult, MinimizeSpec, SweepRow};
