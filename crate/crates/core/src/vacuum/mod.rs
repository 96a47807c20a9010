//! The vacuum module of affine sl2: PBW basis, normal ordering,
//! contravariant form, singular vectors and characters.

pub mod algebra;
pub mod basis;
pub mod character;
pub mod gram;
pub mod ring;
pub mod simple;

pub use basis::{enumerate_basis, universal_dimensions, Gen, GradedComponent, PbwBasis, PbwMonomial};
pub use character::{admissible_character_theta, integrable_character_theta, simple_character, universal_character, vacuum_alpha};
pub use gram::{contravariant_gram, symbolic_gram, GramBlock, SymbolicGramBlock};
pub use simple::{analyze, graded_dim_simple, singular_vectors, SimpleQuotient, SingularVector};
