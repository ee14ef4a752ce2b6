use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("empty span [{start}, {end})")]
    EmptySpan { start: usize, end: usize },
    #[error("span [{start}, {end}) exceeds sentence length {len}")]
    SpanOutOfBounds { start: usize, end: usize, len: usize },
    #[error("span [{start}, {end}) text {found:?} does not match sentence text {expected:?}")]
    SpanTextMismatch {
        start: usize,
        end: usize,
        expected: String,
        found: String,
    },
    #[error("frame name is empty")]
    EmptyFrameName,
    #[error("frame element name is empty")]
    EmptyElementName,
    #[error("element {element} of frame {frame} overlaps the target")]
    ElementOverlapsTarget { frame: String, element: String },
    #[error("elements {first} and {second} of frame {frame} overlap")]
    ElementsOverlap {
        frame: String,
        first: String,
        second: String,
    },
    #[error("tokens of sentence {sentence} are out of order or overlapping")]
    TokensOutOfOrder { sentence: String },
    #[error("malformed lexical unit {0:?}")]
    BadLexicalUnit(String),
    #[error("unknown source kind {0:?}")]
    UnknownSourceKind(String),
}

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("cannot read lexicon {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("malformed lexicon: {0}")]
    Malformed(String),
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("cannot read catalog file {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("malformed catalog ({file}:{line}): {message}")]
    Malformed {
        file: String,
        line: usize,
        message: String,
    },
}

impl CatalogError {
    pub(crate) fn malformed(file: &str, line: usize, message: impl Into<String>) -> Self {
        CatalogError::Malformed {
            file: file.to_string(),
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum RecordError {
    #[error("malformed record at line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("i/o error reading records: {0}")]
    Io(#[from] io::Error),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("frame index {index} out of range ({len} frames)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("frames {first} and {second} claim overlapping text")]
    Overlap { first: usize, second: usize },
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot read source {path}: {message}")]
    UnreadableSource { path: PathBuf, message: String },
    #[error("unknown source kind {0:?}")]
    UnknownSourceKind(String),
    #[error("duplicate document id {0:?}")]
    DuplicateDocument(String),
}

#[derive(Debug, Error, PartialEq)]
pub enum SamplingError {
    #[error("invalid sample spec: {0}")]
    InvalidSpec(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvaluationError {
    #[error("no assignment satisfies the constraints: {0}")]
    Infeasible(String),
    #[error("campaign incomplete: {0}")]
    IncompleteCampaign(String),
    #[error("evaluator {evaluator} has no judgment for gold item {item}")]
    MissingGoldJudgment { evaluator: String, item: String },
    #[error("judgment sets cover different items")]
    ItemSetMismatch,
    #[error("invalid campaign: {0}")]
    InvalidCampaign(String),
    #[error("campaign is closed")]
    CampaignClosed,
    #[error("verdict does not match campaign mode {0}")]
    ModeMismatch(String),
}
