//! Exact computations with affine vertex algebras at rational levels:
//! root data and level classification, the simple vacuum module of
//! affine sl2, associated varieties, and modular linear differential
//! equations for characters.

pub mod error;
pub mod level;
pub mod lie;
pub mod linalg;
pub mod mlde;
pub mod qseries;
pub mod rational;
pub mod variety;
pub mod vacuum;

pub use error::{Error, Result};
