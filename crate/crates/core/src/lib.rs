//! Semantic frame parsing tailored to software-engineering text.
//!
//! The crate covers the whole pipeline: corpus ingestion, sentence
//! segmentation and a lexicon-driven frame tagger, catalog-based frame
//! tailoring, sample sizing and per-frame sampling, and the aggregation
//! used by the human evaluation studies.

pub mod catalog;
pub mod decorator;
pub mod error;
pub mod evaluation;
pub mod ingest;
pub mod lexicon;
pub mod model;
pub mod parser;
pub mod pipeline;
pub mod sampling;
pub mod text;

pub use catalog::{load_catalog, FrameStatus, TailoringCatalog, EXECUTION};
pub use decorator::{decorate, structure, Row, StructuredView};
pub use lexicon::{load_lexicon, FrameLexicon};
pub use model::{Document, FrameElement, FrameInstance, FrameSource, Sentence, SourceKind, Span};
pub use parser::{tag_frames, ParseResult};
