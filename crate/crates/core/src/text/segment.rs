//! Sentence segmentation for software-engineering prose.
//!
//! Fenced code blocks, inline code, URLs and stack-trace lines are
//! protected: no boundary is ever placed inside them. A fenced block or a
//! run of stack-trace lines becomes a sentence of its own.

use std::ops::Range;

use once_cell::sync::Lazy;
use regex::Regex;

use crate::model::{Document, Sentence};

use super::pos::analyze;
use super::words::ABBREVIATIONS;

static FENCED: Lazy<Regex> = Lazy::new(|| Regex::new(r"(?ms)^[ \t]*```.*?(?:^[ \t]*```[^\n]*$|\z)").unwrap());
static INLINE_CODE: Lazy<Regex> = Lazy::new(|| Regex::new(r"`[^`\n]+`").unwrap());
static URL: Lazy<Regex> =
    Lazy::new(|| Regex::new(r#"(?:(?:https?|ftp|file)://|www\.)[^\s<>"'`]*[^\s<>"'`.,;:!?)\]]"#).unwrap());
static STACK_LINE: Lazy<Regex> = Lazy::new(|| {
    Regex::new(r#"(?m)^[ \t]*(?:at [\p{L}_$][\w$.<>/\-]*\(.*\)|File ".*", line \d+.*)[ \t]*$"#)
        .unwrap()
});
static PARAGRAPH_BREAK: Lazy<Regex> = Lazy::new(|| Regex::new(r"\n[ \t]*\n").unwrap());
static BULLET: Lazy<Regex> = Lazy::new(|| Regex::new(r"\n[ \t]*(?:[-*•]|\d+[.)])[ \t]").unwrap());

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Region {
    Block,
    Inline,
}

fn protected_regions(text: &str) -> Vec<(Range<usize>, Region)> {
    let mut regions: Vec<(Range<usize>, Region)> = Vec::new();
    for m in FENCED.find_iter(text) {
        regions.push((m.range(), Region::Block));
    }
    // Group consecutive stack-trace lines into one block.
    let mut stack: Option<Range<usize>> = None;
    for m in STACK_LINE.find_iter(text) {
        if regions.iter().any(|(r, _)| r.start <= m.start() && m.end() <= r.end) {
            continue;
        }
        match &mut stack {
            Some(r) if text[r.end..m.start()].trim().is_empty() => r.end = m.end(),
            _ => {
                if let Some(r) = stack.take() {
                    regions.push((r, Region::Block));
                }
                stack = Some(m.range());
            }
        }
    }
    if let Some(r) = stack {
        regions.push((r, Region::Block));
    }
    for re in [&*INLINE_CODE, &*URL] {
        for m in re.find_iter(text) {
            let r = m.range();
            if !regions.iter().any(|(p, _)| p.start < r.end && r.start < p.end) {
                regions.push((r, Region::Inline));
            }
        }
    }
    regions.sort_by_key(|(r, _)| r.start);
    regions
}

fn inside(regions: &[(Range<usize>, Region)], pos: usize) -> bool {
    regions.iter().any(|(r, _)| r.start < pos && pos < r.end)
}

fn word_before(text: &str, dot: usize) -> &str {
    let head = &text[..dot];
    let start = head
        .char_indices()
        .rev()
        .find(|(_, c)| c.is_whitespace() || matches!(c, '(' | '"' | '['))
        .map(|(i, c)| i + c.len_utf8())
        .unwrap_or(0);
    &head[start..]
}

/// Byte offsets at which sentences end.
fn boundaries(text: &str) -> Vec<usize> {
    let regions = protected_regions(text);
    let mut cuts = Vec::new();
    for (r, kind) in &regions {
        if *kind == Region::Block {
            cuts.push(r.start);
            cuts.push(r.end);
        }
    }
    for m in PARAGRAPH_BREAK.find_iter(text).chain(BULLET.find_iter(text)) {
        if !inside(&regions, m.start()) {
            cuts.push(m.start());
        }
    }

    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < bytes.len() {
        let (pos, ch) = bytes[i];
        if !matches!(ch, '.' | '!' | '?') || inside(&regions, pos) || inside(&regions, pos + 1) {
            i += 1;
            continue;
        }
        // Absorb runs of terminators and closing quotes/brackets.
        let mut j = i;
        while j + 1 < bytes.len() && matches!(bytes[j + 1].1, '.' | '!' | '?' | '"' | '\'' | ')' | ']') {
            j += 1;
        }
        let end = bytes.get(j + 1).map_or(text.len(), |(p, _)| *p);
        let followed_by_space = bytes.get(j + 1).is_none_or(|(_, c)| c.is_whitespace());
        if !followed_by_space {
            i = j + 1;
            continue;
        }
        if ch == '.' && i == j {
            let word = word_before(text, pos).to_lowercase();
            let word = word.trim_end_matches('.');
            if ABBREVIATIONS.contains(word) {
                i = j + 1;
                continue;
            }
        }
        // A lowercase continuation means the period was not terminal.
        let next_visible = bytes[j + 1..].iter().find(|(_, c)| !c.is_whitespace()).map(|(_, c)| *c);
        if matches!(next_visible, Some(c) if c.is_lowercase()) {
            i = j + 1;
            continue;
        }
        cuts.push(end);
        i = j + 1;
    }
    cuts.sort_unstable();
    cuts.dedup();
    cuts
}

/// Splits raw text into trimmed, non-empty sentence strings.
pub fn split_sentences(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = 0;
    for cut in boundaries(text).into_iter().chain(std::iter::once(text.len())) {
        if cut <= start {
            continue;
        }
        let piece = text[start..cut].trim();
        if !piece.is_empty() {
            out.push(piece);
        }
        start = cut;
    }
    out
}

/// Segments a document into analyzed sentences.
pub fn segment(doc: &Document) -> Vec<Sentence> {
    split_sentences(&doc.raw_text)
        .into_iter()
        .enumerate()
        .map(|(index, text)| Sentence {
            id: format!("{}#{}", doc.id, index),
            doc_id: doc.id.clone(),
            index,
            text: text.to_string(),
            tokens: analyze(text),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SourceKind;

    fn doc(text: &str) -> Document {
        Document {
            id: "d1".into(),
            source_kind: SourceKind::Generic,
            raw_text: text.into(),
            metadata: Default::default(),
        }
    }

    #[test]
    fn two_terminated_clauses() {
        assert_eq!(split_sentences("It fails. See log."), ["It fails.", "See log."]);
    }

    #[test]
    fn empty_input() {
        assert!(segment(&doc("")).is_empty());
        assert!(segment(&doc("  \n\n ")).is_empty());
    }

    // Hand-checked fixture list, written before the splitter.
    #[test]
    fn fixture_list() {
        let cases: &[(&str, &[&str])] = &[
            ("e.g. java.io.File is fine.", &["e.g. java.io.File is fine."]),
            (
                "Use java.util.List, i.e. the interface. Then call add().",
                &["Use java.util.List, i.e. the interface.", "Then call add()."],
            ),
            (
                "See https://example.com/a.b?c=1. It works.",
                &["See https://example.com/a.b?c=1.", "It works."],
            ),
            (
                "Run `make test. Then` again. Done!",
                &["Run `make test. Then` again.", "Done!"],
            ),
            ("Why? Because it broke.", &["Why?", "Because it broke."]),
            ("Version 1.2.3 fixed it. Thanks.", &["Version 1.2.3 fixed it.", "Thanks."]),
            ("First para\n\nSecond para", &["First para", "Second para"]),
            ("Steps:\n- open it\n- close it", &["Steps:", "- open it", "- close it"]),
            ("He said \"stop.\" Then left.", &["He said \"stop.\"", "Then left."]),
        ];
        for (text, expected) in cases {
            assert_eq!(split_sentences(text), *expected, "{text:?}");
        }
    }

    #[test]
    fn fenced_block_is_one_unit() {
        let text = "Try this:\n```\nfoo(). bar(). Baz.\nQux.\n```\nIt crashes. Why?";
        let got = split_sentences(text);
        assert_eq!(got, ["Try this:", "```\nfoo(). bar(). Baz.\nQux.\n```", "It crashes.", "Why?"]);
    }

    #[test]
    fn stack_trace_lines_are_not_split() {
        let text = "It throws. Trace:\n  at com.foo.Bar.baz(Bar.java:10)\n  at com.foo.Main.main(Main.java:3)\nAny idea?";
        let got = split_sentences(text);
        assert_eq!(
            got,
            [
                "It throws.",
                "Trace:",
                "at com.foo.Bar.baz(Bar.java:10)\n  at com.foo.Main.main(Main.java:3)",
                "Any idea?"
            ]
        );
    }

    #[test]
    fn sentence_ids_and_tokens() {
        let sents = segment(&doc("It fails. See log."));
        assert_eq!(sents[1].id, "d1#1");
        assert_eq!(sents[1].index, 1);
        assert!(sents.iter().all(|s| s.check_tokens().is_ok()));
    }
}
