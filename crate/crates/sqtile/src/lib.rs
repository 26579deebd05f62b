//! Exact computations on square-tiled surfaces.
//!
//! The crate builds origamis from explicit combinatorial families, extracts
//! their horizontal and vertical core-curve systems, and certifies the
//! algebraic degree of the trace field and of the stretch factor of the
//! associated Thurston-Veech multitwist, together with spin parity and
//! hyperellipticity.

pub mod error;
pub mod poly;

pub use error::{Error, Result};
pub mod linalg;
pub mod origami;
pub mod constructions;
pub mod certify;
pub mod realize;

pub use linalg::{IntMatrix, Inertia, SymIntMatrix};
pub use origami::{CurveSystem, Direction, Origami, Stratum};
pub use poly::IntPoly;
