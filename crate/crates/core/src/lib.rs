//! Numerical algebraic geometry of smooth plane quartics.
//!
//! The library locates the Weierstrass points of a quartic curve as the
//! intersection of the curve with its Hessian, measures their weights two
//! independent ways (intersection multiplicity and tangent contact order),
//! decomposes them into orbits under a finite group of projective
//! automorphisms, and derives the Riemann–Hurwitz signature of the action.
//!
//! The built-in catalog covers the one-parameter quartic pencil
//! `x^4 + y^4 + z^4 + t(x^2y^2 + y^2z^2 + z^2x^2)` together with the Fermat,
//! Klein and Picard quartics, and [`verify`] runs the full self-check suite
//! over that catalog.

pub mod autgroup;
pub mod catalog;
pub mod config;
pub mod error;
pub mod polyalg;
pub mod projgeom;
pub mod report;
pub mod roots;
pub mod verify;
pub mod weierstrass;

pub use autgroup::{GroupTable, ProjMap};
pub use catalog::CurveId;
pub use config::Tolerances;
pub use error::Error;
pub use polyalg::{BiPoly, HomPoly3, UniPoly};
pub use projgeom::{IntersectionPoint, ProjLine, ProjPoint};
pub use report::{CurveReport, Signature, WeierstrassDatum};
pub use roots::RootCluster;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
