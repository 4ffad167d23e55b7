//! Exact synthesis of orthogonal dyadic and scaled dyadic matrices as
//! words over the Toffoli–Hadamard generators `(-1)_[a]`, `X_[a,b]`,
//! `K_[a,b,c,d]` and `I⊗H`.
//!
//! Three algorithms are provided: column-by-column ([`local`]), via
//! reflections of an embedded operator ([`householder`]), and a pattern
//! driven one for dimensions 2, 4 and 8 ([`global`]). Every result can be
//! checked exactly with [`GeneratorWord::evaluate`].

pub mod bench;
pub mod circuit;
pub mod cli;
pub mod dyadic;
pub mod error;
pub mod generator;
pub mod global;
pub mod householder;
pub mod local;
pub mod pattern;
pub mod rewrite;
mod rowops;

pub use dyadic::{DyadicVector, ScaledDyadicMatrix};
pub use error::{Result, SynthError};
pub use generator::{random_element, random_element_with_lde, Generator, GeneratorWord, Ring};
pub use pattern::{classify_pattern, BinaryPattern, PatternId, PatternLabel, Permutation};
