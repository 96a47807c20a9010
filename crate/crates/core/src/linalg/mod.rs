//! Dense linear algebra over prime fields and over the rationals, plus an
//! exact kernel solver that lifts modular solutions p-adically.

pub mod dixon;
pub mod exact;
pub mod modp;

pub use dixon::{exact_kernel, SparseRow};
pub use modp::{DenseMatrix, Zp, M61, PRIMES};
