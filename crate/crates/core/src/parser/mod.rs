//! Parser front end: turns documents into sentences with evoked frames,
//! either through the built-in lexicon tagger or by importing output from
//! an external frame parser.

mod interchange;
mod tagger;

use serde::{Deserialize, Serialize};

use crate::lexicon::FrameLexicon;
use crate::model::{Document, FrameInstance, Sentence};
use crate::text::segment;

pub use interchange::{
    export_record, import_external, parse_record, ExternalParseRecord, ImportOptions,
    RecordReader,
};
pub use tagger::{assign_frame_elements, tag_frames};

/// A sentence with the frames evoked in it, sorted by target start.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseResult {
    pub sentence: Sentence,
    pub frames: Vec<FrameInstance>,
}

impl ParseResult {
    pub fn new(sentence: Sentence, mut frames: Vec<FrameInstance>) -> Self {
        frames.sort_by_key(|f| f.target.start());
        ParseResult { sentence, frames }
    }
}

/// Segments and tags a whole document.
pub fn parse_document(doc: &Document, lex: &FrameLexicon) -> Vec<ParseResult> {
    segment(doc)
        .iter()
        .map(|s| tag_frames(s, lex))
        .collect()
}
