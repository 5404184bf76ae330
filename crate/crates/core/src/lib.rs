//! Periodic points of multidimensional subshifts of finite type.
//!
//! The crate is split along the lines of the problem:
//!
//! - [`sft`] holds the data model (alphabets, patterns, layered specs, Wang
//!   tilesets, torus configurations) and local validity checks.
//! - [`period`] searches tori, computes period lattices, builds strip graphs
//!   and answers strong / horizontal / one-vector period questions.
//! - [`tm`] models bounded nondeterministic Turing machines and compiles
//!   them to Wang tiles.
//! - [`constructions`] generates the structural tilesets (Robinson, Kari's
//!   deterministic variant, breaker / counter / copy layers) and the
//!   reflected Gray folding.
//! - [`render`] turns torus configurations into SVG or PPM images.

pub(crate) mod bits;
pub mod constructions;
pub mod period;
pub mod render;
pub mod sft;
pub mod tm;
