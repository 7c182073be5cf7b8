//! Finite, exact-rational approximations of iterated-function-system
//! attractors, and the machinery to interrogate their topology at a chosen
//! resolution: adjacency of cells, connected components, separation gaps,
//! contraction-sum criteria, clopen splits, arcs, window counts, and the
//! symbolic collapse quotient of the middle-third Cantor set.
//!
//! Everything is computed on arbitrary-precision rationals; touching
//! versus separated is always an exact decision, never a tolerance call.

pub mod attractor;
pub mod error;
pub mod geom;
pub mod hausdorff;
pub mod quotient;
pub mod rational;
pub mod textio;
pub mod topology;

pub use error::{Error, Result};
