//! Alphabets, patterns, SFT specifications, Wang tilesets and torus
//! configurations.
//!
//! A [`SftSpec`] is a stack of one or more [`Layer`]s. Each layer has its own
//! alphabet and forbidden patterns; [`Link`]s restrict which symbol tuples may
//! sit on the same cell. A plain SFT is a spec with a single layer and no
//! links, and most of the API treats it that way. Layered specs come out of
//! [`product`] and keep the factors apart, so a superimposition of large
//! alphabets never has to be materialized as one alphabet.

mod alphabet;
mod block;
mod check;
mod error;
mod pattern;
mod spec;
mod text;
mod torus;
mod wang;

pub use alphabet::Alphabet;
pub use block::{apply_block_code, BlockCode};
pub use check::{check_deterministic, Determinism, DeterminismMode, LocalChecker};
pub use error::SftError;
pub use pattern::{pattern_occurs, IVec, Pattern};
pub use spec::{lift_dimension, product, Allowed, Layer, LayerProduct, Link, SftSpec};
pub(crate) use text::content_lines as text_lines;
pub use text::{parse_any, parse_sft, parse_torus, write_sft, write_torus, ParsedSpec};
pub use torus::{is_locally_valid, TorusConfig, Violation, ViolationKind};
pub use wang::{parse_wang, wang_to_sft, write_wang, WangTile, WangTileset};
