//! Newline-delimited JSON interchange for parse results, the boundary to
//! external frame parsers.
//!
//! ```text
//! {"sentence":{"id":"s1","doc":"d1","text":"..."},
//!  "frames":[{"frame":"Using","target":{"start":9,"end":12,"text":"use"},
//!             "elements":[{"name":"Instrument","start":13,"end":37,"text":"..."}],
//!             "source":"external"}]}
//! ```
//!
//! Offsets are character-based and half-open.

use std::io::BufRead;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::RecordError;
use crate::lexicon::FrameLexicon;
use crate::model::{
    FrameElement, FrameInstance, FrameSource, Sentence, Span, PASS_THROUGH_PREFIX,
};
use crate::text::analyze;

use super::ParseResult;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordSentence {
    pub id: String,
    #[serde(default)]
    pub doc: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordSpan {
    pub start: usize,
    pub end: usize,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordElement {
    pub name: String,
    pub start: usize,
    pub end: usize,
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub core: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordFrame {
    pub frame: String,
    pub target: RecordSpan,
    #[serde(default)]
    pub elements: Vec<RecordElement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<FrameSource>,
}

/// One line of interchange JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExternalParseRecord {
    pub sentence: RecordSentence,
    #[serde(default)]
    pub frames: Vec<RecordFrame>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ImportOptions<'a> {
    /// Reject unknown fields, unknown frames and undeclared elements.
    pub strict: bool,
    /// Used to fill in missing `core` flags and, in strict mode, to check
    /// frame and element names.
    pub lexicon: Option<&'a FrameLexicon>,
}

const SENTENCE_KEYS: &[&str] = &["id", "doc", "index", "text"];
const FRAME_KEYS: &[&str] = &["frame", "target", "elements", "source"];
const SPAN_KEYS: &[&str] = &["start", "end", "text"];
const ELEMENT_KEYS: &[&str] = &["name", "start", "end", "text", "core"];

fn check_keys(value: &Value, allowed: &[&str], what: &str) -> Result<(), String> {
    if let Some(obj) = value.as_object() {
        if let Some(k) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(format!("unknown field {k:?} in {what}"));
        }
    }
    Ok(())
}

fn check_unknown_fields(value: &Value) -> Result<(), String> {
    check_keys(value, &["sentence", "frames"], "record")?;
    check_keys(&value["sentence"], SENTENCE_KEYS, "sentence")?;
    for frame in value["frames"].as_array().into_iter().flatten() {
        check_keys(frame, FRAME_KEYS, "frame")?;
        check_keys(&frame["target"], SPAN_KEYS, "target")?;
        for el in frame["elements"].as_array().into_iter().flatten() {
            check_keys(el, ELEMENT_KEYS, "element")?;
        }
    }
    Ok(())
}

fn record_to_result(rec: ExternalParseRecord, opts: &ImportOptions) -> Result<ParseResult, String> {
    let text = rec.sentence.text;
    let mut frames = Vec::with_capacity(rec.frames.len());
    for rf in rec.frames {
        let def = opts.lexicon.and_then(|l| l.get(&rf.frame));
        if opts.strict && opts.lexicon.is_some() && def.is_none() && rf.frame != "Execution" {
            return Err(format!("frame {:?} is not in the lexicon", rf.frame));
        }
        let target = Span::new(&text, rf.target.start, rf.target.end)
            .map_err(|e| format!("target of {}: {e}", rf.frame))?;
        if target.text() != rf.target.text {
            return Err(format!(
                "target text {:?} does not match sentence text {:?}",
                rf.target.text,
                target.text()
            ));
        }
        let mut elements = Vec::with_capacity(rf.elements.len());
        for re in rf.elements {
            let span = Span::new(&text, re.start, re.end)
                .map_err(|e| format!("element {} of {}: {e}", re.name, rf.frame))?;
            if span.text() != re.text {
                return Err(format!(
                    "element text {:?} does not match sentence text {:?}",
                    re.text,
                    span.text()
                ));
            }
            let declared = def.and_then(|d| d.element(&re.name));
            if opts.strict
                && def.is_some()
                && declared.is_none()
                && !re.name.starts_with(PASS_THROUGH_PREFIX)
            {
                return Err(format!("element {:?} is not declared by {}", re.name, rf.frame));
            }
            let core = re.core.unwrap_or_else(|| declared.is_some_and(|d| d.core));
            elements.push(FrameElement::new(re.name, span, core).map_err(|e| e.to_string())?);
        }
        let fi = FrameInstance::new(
            rf.frame,
            target,
            elements,
            rf.source.unwrap_or(FrameSource::External),
            rec.sentence.id.clone(),
        )
        .map_err(|e| e.to_string())?;
        frames.push(fi);
    }
    let sentence = Sentence {
        id: rec.sentence.id,
        doc_id: rec.sentence.doc,
        index: rec.sentence.index.unwrap_or(0),
        tokens: analyze(&text),
        text,
    };
    Ok(ParseResult::new(sentence, frames))
}

/// Parses one interchange line.
pub fn parse_record(line: &str, line_no: usize, opts: &ImportOptions) -> Result<ParseResult, RecordError> {
    let malformed = |message: String| RecordError::Malformed {
        line: line_no,
        message,
    };
    let value: Value = serde_json::from_str(line).map_err(|e| malformed(e.to_string()))?;
    if opts.strict {
        check_unknown_fields(&value).map_err(malformed)?;
    }
    let rec: ExternalParseRecord = serde_json::from_value(value).map_err(|e| malformed(e.to_string()))?;
    record_to_result(rec, opts).map_err(malformed)
}

/// Serializes a parse result as one interchange line (no trailing newline).
pub fn export_record(pr: &ParseResult) -> String {
    let rec = ExternalParseRecord {
        sentence: RecordSentence {
            id: pr.sentence.id.clone(),
            doc: pr.sentence.doc_id.clone(),
            index: Some(pr.sentence.index),
            text: pr.sentence.text.clone(),
        },
        frames: pr
            .frames
            .iter()
            .map(|f| RecordFrame {
                frame: f.frame.clone(),
                target: RecordSpan {
                    start: f.target.start(),
                    end: f.target.end(),
                    text: f.target.text().to_string(),
                },
                elements: f
                    .elements
                    .iter()
                    .map(|e| RecordElement {
                        name: e.name.clone(),
                        start: e.span.start(),
                        end: e.span.end(),
                        text: e.span.text().to_string(),
                        core: Some(e.core),
                    })
                    .collect(),
                source: Some(f.source),
            })
            .collect(),
    };
    serde_json::to_string(&rec).expect("record serializes")
}

/// Streams parse results from newline-delimited interchange JSON. Blank
/// lines are skipped.
pub struct RecordReader<'a, R> {
    lines: std::io::Lines<R>,
    line_no: usize,
    opts: ImportOptions<'a>,
}

impl<'a, R: BufRead> RecordReader<'a, R> {
    pub fn new(reader: R, opts: ImportOptions<'a>) -> Self {
        RecordReader {
            lines: reader.lines(),
            line_no: 0,
            opts,
        }
    }
}

impl<R: BufRead> Iterator for RecordReader<'_, R> {
    type Item = Result<ParseResult, RecordError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let line = match self.lines.next()? {
                Ok(l) => l,
                Err(e) => return Some(Err(e.into())),
            };
            self.line_no += 1;
            if line.trim().is_empty() {
                continue;
            }
            return Some(parse_record(&line, self.line_no, &self.opts));
        }
    }
}

/// Reads every record, preserving input order.
pub fn import_external<R: BufRead>(
    reader: R,
    opts: ImportOptions,
) -> Result<Vec<ParseResult>, RecordError> {
    RecordReader::new(reader, opts).collect()
}
