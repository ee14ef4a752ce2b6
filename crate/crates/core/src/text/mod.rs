//! Text analysis: segmentation, tokenization, tagging, lemmatization.

mod lemma;
mod pos;
mod segment;
mod tokenize;
mod words;

pub use lemma::{known_verb_lemma, lemmatize};
pub use pos::{analyze, tag_parts_of_speech};
pub use segment::{segment, split_sentences};
pub use tokenize::tokenize;

pub(crate) use words::CLAUSE_CONJUNCTIONS;
