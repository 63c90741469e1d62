//! Loose triangulations of 3-manifolds, the hyperbolic relative handlebodies
//! built from them, and their doubles.
//!
//! * [`tri`] — face-pairing data, the TRI format, edge/vertex orbits, duality
//!   with special polyhedra.
//! * [`geometry`] — volumes, cusp shapes and valence certificates.
//! * [`homology`] — Smith normal form and the homology of doubles.
//! * [`census`] — canonical forms, isomorphism, automorphisms, enumeration.
//! * [`group`] — realizing a finite group as an automorphism group.

mod dsu;
pub mod census;
pub mod geometry;
pub mod group;
pub mod homology;
pub mod perm;
pub mod tri;

pub use perm::Perm4;
pub use tri::{FaceEnd, Triangulation};
