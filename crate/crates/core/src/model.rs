//! Core domain types shared across the toolkit.
//!
//! All offsets are character (not byte) offsets into the owning sentence
//! text, half-open `[start, end)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ModelError;

/// Returns the substring of `text` covering characters `[start, end)`.
pub fn char_slice(text: &str, start: usize, end: usize) -> Option<&str> {
    if start > end {
        return None;
    }
    let mut indices = text.char_indices().map(|(i, _)| i).chain(std::iter::once(text.len()));
    let from = indices.nth(start)?;
    if start == end {
        return Some(&text[from..from]);
    }
    let to = indices.nth(end - start - 1)?;
    Some(&text[from..to])
}

/// Character length of `text`.
pub fn char_len(text: &str) -> usize {
    text.chars().count()
}

/// A half-open character interval over a sentence, carrying a copy of the
/// covered text.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Span {
    start: usize,
    end: usize,
    text: String,
}

impl Span {
    /// Builds a span over `sentence`, checking bounds.
    pub fn new(sentence: &str, start: usize, end: usize) -> Result<Span, ModelError> {
        if start >= end {
            return Err(ModelError::EmptySpan { start, end });
        }
        let text = char_slice(sentence, start, end).ok_or(ModelError::SpanOutOfBounds {
            start,
            end,
            len: char_len(sentence),
        })?;
        Ok(Span {
            start,
            end,
            text: text.to_string(),
        })
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub fn overlaps(&self, other: &Span) -> bool {
        self.start < other.end && other.start < self.end
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    /// Re-checks this span against `sentence`: bounds and copied text.
    pub fn validate(&self, sentence: &str) -> Result<(), ModelError> {
        let fresh = Span::new(sentence, self.start, self.end)?;
        if fresh.text != self.text {
            return Err(ModelError::SpanTextMismatch {
                start: self.start,
                end: self.end,
                expected: fresh.text,
                found: self.text.clone(),
            });
        }
        Ok(())
    }
}

/// Prefix marking a frame element name carried over unchanged from the
/// pre-tailoring frame.
pub const PASS_THROUGH_PREFIX: &str = "orig:";

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FrameElement {
    pub name: String,
    pub span: Span,
    #[serde(default)]
    pub core: bool,
}

impl FrameElement {
    pub fn new(name: impl Into<String>, span: Span, core: bool) -> Result<Self, ModelError> {
        let name = name.into();
        if name.trim().is_empty() || name == PASS_THROUGH_PREFIX {
            return Err(ModelError::EmptyElementName);
        }
        Ok(FrameElement { name, span, core })
    }

    pub fn is_pass_through(&self) -> bool {
        self.name.starts_with(PASS_THROUGH_PREFIX)
    }
}

/// Where a frame instance came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameSource {
    Baseline,
    External,
    Decorated,
}

/// One evoked frame in a sentence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FrameInstance {
    pub frame: String,
    pub target: Span,
    pub elements: Vec<FrameElement>,
    pub source: FrameSource,
    pub sentence_id: String,
}

impl FrameInstance {
    /// Builds an instance, rejecting element spans that overlap the target
    /// or each other.
    pub fn new(
        frame: impl Into<String>,
        target: Span,
        elements: Vec<FrameElement>,
        source: FrameSource,
        sentence_id: impl Into<String>,
    ) -> Result<Self, ModelError> {
        let fi = FrameInstance {
            frame: frame.into(),
            target,
            elements,
            source,
            sentence_id: sentence_id.into(),
        };
        fi.check_structure()?;
        Ok(fi)
    }

    /// Structural invariants that do not need the lexicon.
    pub fn check_structure(&self) -> Result<(), ModelError> {
        if self.frame.trim().is_empty() {
            return Err(ModelError::EmptyFrameName);
        }
        for (i, fe) in self.elements.iter().enumerate() {
            if fe.name.trim().is_empty() {
                return Err(ModelError::EmptyElementName);
            }
            if fe.span.overlaps(&self.target) {
                return Err(ModelError::ElementOverlapsTarget {
                    frame: self.frame.clone(),
                    element: fe.name.clone(),
                });
            }
            for other in &self.elements[i + 1..] {
                if fe.span.overlaps(&other.span) {
                    return Err(ModelError::ElementsOverlap {
                        frame: self.frame.clone(),
                        first: fe.name.clone(),
                        second: other.name.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn element(&self, name: &str) -> Option<&FrameElement> {
        self.elements.iter().find(|fe| fe.name == name)
    }
}

/// Part of speech used by the tagger.
///
/// Fine-grained enough for chunking; [`Pos::lu_suffix`] maps it onto the
/// lexical-unit suffixes `v`, `n`, `a`, `adv`, `prep`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pos {
    Verb,
    Aux,
    Modal,
    Noun,
    Ident,
    Num,
    Pron,
    Adj,
    Adv,
    Prep,
    Det,
    Conj,
    Punct,
    Other,
}

impl Pos {
    pub fn lu_suffix(self) -> Option<LuPos> {
        match self {
            Pos::Verb | Pos::Aux | Pos::Modal => Some(LuPos::Verb),
            Pos::Noun | Pos::Ident | Pos::Num => Some(LuPos::Noun),
            Pos::Adj => Some(LuPos::Adj),
            Pos::Adv => Some(LuPos::Adv),
            Pos::Prep => Some(LuPos::Prep),
            _ => None,
        }
    }

    pub fn is_verbal(self) -> bool {
        matches!(self, Pos::Verb | Pos::Aux | Pos::Modal)
    }
}

/// Part-of-speech component of a lexical unit (`use.v`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LuPos {
    #[serde(rename = "v")]
    Verb,
    #[serde(rename = "n")]
    Noun,
    #[serde(rename = "a")]
    Adj,
    #[serde(rename = "adv")]
    Adv,
    #[serde(rename = "prep")]
    Prep,
}

impl LuPos {
    pub fn as_str(self) -> &'static str {
        match self {
            LuPos::Verb => "v",
            LuPos::Noun => "n",
            LuPos::Adj => "a",
            LuPos::Adv => "adv",
            LuPos::Prep => "prep",
        }
    }
}

impl FromStr for LuPos {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "v" => Ok(LuPos::Verb),
            "n" => Ok(LuPos::Noun),
            "a" => Ok(LuPos::Adj),
            "adv" => Ok(LuPos::Adv),
            "prep" => Ok(LuPos::Prep),
            other => Err(ModelError::BadLexicalUnit(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Token {
    pub span: Span,
    pub lemma: String,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub id: String,
    pub doc_id: String,
    pub index: usize,
    pub text: String,
    pub tokens: Vec<Token>,
}

impl Sentence {
    /// Checks that tokens are ordered, non-overlapping and inside the text.
    pub fn check_tokens(&self) -> Result<(), ModelError> {
        let mut last_end = 0;
        for tok in &self.tokens {
            tok.span.validate(&self.text)?;
            if tok.span.start() < last_end {
                return Err(ModelError::TokensOutOfOrder {
                    sentence: self.id.clone(),
                });
            }
            last_end = tok.span.end();
        }
        Ok(())
    }

    /// Indices of tokens overlapping `span`.
    pub fn tokens_in<'a>(&'a self, span: &'a Span) -> impl Iterator<Item = (usize, &'a Token)> + 'a {
        self.tokens
            .iter()
            .enumerate()
            .filter(move |(_, t)| t.span.overlaps(span))
    }
}

/// Kinds of software artifact a document can come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceKind {
    Issue,
    QaPost,
    BugReport,
    ApiDoc,
    PullRequest,
    VulnerabilityReport,
    MailingList,
    AppReview,
    Generic,
}

impl SourceKind {
    pub const ALL: [SourceKind; 9] = [
        SourceKind::Issue,
        SourceKind::QaPost,
        SourceKind::BugReport,
        SourceKind::ApiDoc,
        SourceKind::PullRequest,
        SourceKind::VulnerabilityReport,
        SourceKind::MailingList,
        SourceKind::AppReview,
        SourceKind::Generic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SourceKind::Issue => "issue",
            SourceKind::QaPost => "qa_post",
            SourceKind::BugReport => "bug_report",
            SourceKind::ApiDoc => "api_doc",
            SourceKind::PullRequest => "pull_request",
            SourceKind::VulnerabilityReport => "vulnerability_report",
            SourceKind::MailingList => "mailing_list",
            SourceKind::AppReview => "app_review",
            SourceKind::Generic => "generic",
        }
    }
}

impl fmt::Display for SourceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SourceKind {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SourceKind::ALL
            .iter()
            .copied()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| ModelError::UnknownSourceKind(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub source_kind: SourceKind,
    #[serde(rename = "text")]
    pub raw_text: String,
    #[serde(default)]
    pub metadata: BTreeMap<String, String>,
}
