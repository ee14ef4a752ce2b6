//! Frame tailoring for software-engineering text, and the row-oriented
//! structured view of a decorated sentence.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::catalog::{FrameStatus, TailoringCatalog, EXECUTION};
use crate::error::StructureError;
use crate::model::{FrameElement, FrameInstance, FrameSource, Sentence, PASS_THROUGH_PREFIX};
use crate::parser::ParseResult;

/// Applies the catalog to every frame of a parse:
///
/// 1. frames whose status is invalid are dropped;
/// 2. frames whose target is a verb with an execution-verb lemma become
///    `Execution`, with elements renamed through the catalog's element map
///    (unmapped elements keep their name behind the `orig:` prefix);
/// 3. everything else passes through untouched.
pub fn decorate(pr: &ParseResult, cat: &TailoringCatalog) -> ParseResult {
    let frames = pr
        .frames
        .iter()
        .filter_map(|fi| decorate_frame(fi, &pr.sentence, cat))
        .collect();
    ParseResult {
        sentence: pr.sentence.clone(),
        frames,
    }
}

/// Decorates a single frame instance; `None` means it is dropped.
pub fn decorate_frame(fi: &FrameInstance, sentence: &Sentence, cat: &TailoringCatalog) -> Option<FrameInstance> {
    let status = cat.status(&fi.frame);
    if status == FrameStatus::Invalid {
        return None;
    }
    let eligible = !cat.remap_requires_listed_frame() || status == FrameStatus::RemapExecution;
    if fi.frame != EXECUTION && eligible && evoked_by_execution_verb(fi, sentence, cat) {
        return Some(remap(fi, cat));
    }
    Some(fi.clone())
}

fn evoked_by_execution_verb(fi: &FrameInstance, sentence: &Sentence, cat: &TailoringCatalog) -> bool {
    sentence
        .tokens_in(&fi.target)
        .any(|(_, t)| t.pos.is_verbal() && cat.is_execution_verb(&t.lemma))
}

fn remap(fi: &FrameInstance, cat: &TailoringCatalog) -> FrameInstance {
    let exec = cat.lexicon().get(EXECUTION);
    let mut elements: Vec<FrameElement> = Vec::with_capacity(fi.elements.len());
    for el in &fi.elements {
        let mapped = if el.is_pass_through() {
            None
        } else {
            cat.map_element(&fi.frame, &el.name)
                .filter(|m| !elements.iter().any(|e| e.name == *m))
        };
        let (name, core) = match mapped {
            Some(m) => (m.to_string(), exec.and_then(|d| d.element(m)).is_some_and(|d| d.core)),
            None if el.is_pass_through() => (el.name.clone(), el.core),
            None => (format!("{PASS_THROUGH_PREFIX}{}", el.name), el.core),
        };
        elements.push(FrameElement {
            name,
            span: el.span.clone(),
            core,
        });
    }
    FrameInstance {
        frame: EXECUTION.to_string(),
        target: fi.target.clone(),
        elements,
        source: FrameSource::Decorated,
        sentence_id: fi.sentence_id.clone(),
    }
}

/// One labeled segment of a structured view. `trailing` is the whitespace
/// that followed the segment in the sentence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub label: Option<String>,
    pub text: String,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub trailing: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredView {
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub leading: String,
    pub rows: Vec<Row>,
}

impl StructuredView {
    /// The original sentence text.
    pub fn reconstruct(&self) -> String {
        let mut out = self.leading.clone();
        for r in &self.rows {
            out.push_str(&r.text);
            out.push_str(&r.trailing);
        }
        out
    }

    /// Two-column plain text, labels left-aligned.
    pub fn to_text(&self) -> String {
        let width = self
            .rows
            .iter()
            .filter_map(|r| r.label.as_ref().map(|l| l.chars().count()))
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for r in &self.rows {
            let label = r.label.as_deref().unwrap_or("");
            let _ = writeln!(out, "{label:<width$}  {}", r.text);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("view serializes")
    }
}

/// Overlays the chosen frames of a parse onto its sentence. Target rows
/// are labeled with the frame name, element rows with `fe:<name>`, and the
/// remaining text is unlabeled.
pub fn structure(pr: &ParseResult, frame_indices: &[usize]) -> Result<StructuredView, StructureError> {
    // (start, end, label, frame index) in characters
    let mut segments: Vec<(usize, usize, String, usize)> = Vec::new();
    for &idx in frame_indices {
        let fi = pr.frames.get(idx).ok_or(StructureError::IndexOutOfRange {
            index: idx,
            len: pr.frames.len(),
        })?;
        segments.push((fi.target.start(), fi.target.end(), fi.frame.clone(), idx));
        for el in &fi.elements {
            segments.push((el.span.start(), el.span.end(), format!("fe:{}", el.name), idx));
        }
    }
    segments.sort_by_key(|s| (s.0, s.1));
    for w in segments.windows(2) {
        if w[1].0 < w[0].1 {
            return Err(StructureError::Overlap {
                first: w[0].3.min(w[1].3),
                second: w[0].3.max(w[1].3),
            });
        }
    }

    let chars: Vec<char> = pr.sentence.text.chars().collect();
    let slice = |a: usize, b: usize| chars[a..b].iter().collect::<String>();
    let mut view = StructuredView {
        leading: String::new(),
        rows: Vec::new(),
    };
    let push = |view: &mut StructuredView, label: Option<String>, raw: String| {
        let body = raw.trim_start();
        let lead = &raw[..raw.len() - body.len()];
        match view.rows.last_mut() {
            Some(prev) => prev.trailing.push_str(lead),
            None => view.leading.push_str(lead),
        }
        let text = body.trim_end();
        if text.is_empty() {
            return;
        }
        view.rows.push(Row {
            label,
            text: text.to_string(),
            trailing: body[text.len()..].to_string(),
        });
    };
    let mut cursor = 0;
    for (start, end, label, _) in segments {
        if cursor < start {
            push(&mut view, None, slice(cursor, start));
        }
        push(&mut view, Some(label), slice(start, end));
        cursor = end;
    }
    if cursor < chars.len() {
        push(&mut view, None, slice(cursor, chars.len()));
    }
    Ok(view)
}
