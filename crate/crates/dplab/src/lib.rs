//! File formats, planar embedding, canonical forms and corpus generation
//! around `dplab-core`.

pub mod canon;
pub mod corpus;
pub mod embedding;
pub mod formats;

pub use dplab_core as core;

pub use corpus::{corpus_generate, ClassFilter, CorpusSpec};
pub use embedding::{embed_planar, DEFAULT_EMBED_LIMIT};
pub use formats::{parse, parse_document, Format, FormatError, Parsed, RotationDocument};
