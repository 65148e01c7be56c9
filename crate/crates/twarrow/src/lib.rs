//! Combinatorics engine and proof-certificate verifier for scaled
//! simplicial subcomplexes, twisted-arrow models, and their horn
//! filtrations.

pub mod anodyne;
pub mod certs;
pub mod complex;
pub mod constructions;
pub mod nerve;
pub mod scaling;
pub mod suites;

pub use complex::{Ambient, ComplexError, Face, Label, Subcomplex, VertexMap};
pub use scaling::{ScaledComplex, ScalingMode};
