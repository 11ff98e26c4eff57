//! Lyndon words, their enumeration in linear delay time, and the classical
//! bijection onto monic irreducible polynomials over a prime field.
//!
//! The crate is organized bottom-up:
//!
//! - [`words`]: word and compressed-word types over an ordered alphabet,
//!   rotations, lexicographic order, and the brute-force oracles every other
//!   module is validated against.
//! - [`lyndon`]: Duval successor operators and an enumerator for the Lyndon
//!   words of exact length `n` that works on the run-length compressed
//!   representation, with update-count instrumentation.
//! - [`suffix`]: a suffix-tree based linear-time Lyndon membership test.
//! - [`field`]: arithmetic for `F_p` and `F_{p^n}`, irreducibility testing,
//!   normal bases, and minimal polynomials of extension elements.
//! - [`pipeline`]: the end-to-end enumerator that maps each Lyndon word of
//!   length `n` to a monic irreducible polynomial of degree `n` and its roots.

pub mod field;
pub mod lyndon;
pub mod pipeline;
pub mod suffix;
pub mod words;

pub use field::{ExtElement, ExtField, NormalBasis, Poly, PrimeField};
pub use lyndon::{count_lyndon, enumerate_all, LyndonEnumerator, UpdateTally};
pub use pipeline::{EnumConfig, EnumRecord, Mode, Pipeline, PipelineCtx, RootBasis};
pub use suffix::{SuffixTree, SymbolOrder};
pub use words::{Alphabet, CompressedWord, Symbol, Word};
