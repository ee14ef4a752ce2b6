//! Tokenizer aware of code-ish surface forms: dotted identifiers, command
//! flags, CamelCase names, inline code, URLs and paths stay whole.

use once_cell::sync::Lazy;
use regex::Regex;

use crate::model::Span;

static FENCED: Lazy<Regex> = Lazy::new(|| Regex::new(r"(?s)\A```.*?(?:```|\z)").unwrap());
static INLINE_CODE: Lazy<Regex> = Lazy::new(|| Regex::new(r"\A`[^`\n]+`").unwrap());
static URL: Lazy<Regex> = Lazy::new(|| {
    Regex::new(r#"\A(?:(?:https?|ftp|file)://|www\.)[^\s<>"'`]*[^\s<>"'`.,;:!?)\]]"#).unwrap()
});
static ABBREV: Lazy<Regex> =
    Lazy::new(|| Regex::new(r"\A(?i:e\.g\.|i\.e\.|etc\.|vs\.|cf\.|approx\.)").unwrap());
static FLAG: Lazy<Regex> = Lazy::new(|| Regex::new(r"\A--?\p{L}[\p{L}\p{N}_-]*(?:=\S+)?").unwrap());
static PATH: Lazy<Regex> = Lazy::new(|| Regex::new(r"\A(?:~|\.{1,2})?/[\p{L}\p{N}_.\-/]+").unwrap());
static WORD: Lazy<Regex> = Lazy::new(|| {
    Regex::new(
        r"\A[\p{L}_$][\p{L}\p{N}_$]*(?:(?:\.|::|->|-|/|#)[\p{L}\p{N}_$]+)*(?:\(\))?",
    )
    .unwrap()
});
static CONTRACTION: Lazy<Regex> = Lazy::new(|| Regex::new(r"\A\p{L}+?n't\b").unwrap());
static CLITIC: Lazy<Regex> = Lazy::new(|| Regex::new(r"\A'(?:m|s|re|ve|ll|d)\b").unwrap());
static NUMBER: Lazy<Regex> =
    Lazy::new(|| Regex::new(r"\A\p{N}+(?:[.,]\p{N}+)*(?:%|[\p{L}]+)?").unwrap());

/// Splits `text` into tokens, returning character spans and surface forms.
pub fn tokenize(text: &str) -> Vec<(Span, String)> {
    // Byte offset -> character offset.
    let mut char_at = vec![0usize; text.len() + 1];
    let mut ci = 0;
    for (bi, ch) in text.char_indices() {
        for slot in &mut char_at[bi..bi + ch.len_utf8()] {
            *slot = ci;
        }
        ci += 1;
    }
    char_at[text.len()] = ci;

    let mut out = Vec::new();
    let mut pos = 0;
    let mut prev: Option<char> = None;
    while pos < text.len() {
        let rest = &text[pos..];
        let ch = rest.chars().next().expect("non-empty rest");
        if ch.is_whitespace() {
            pos += ch.len_utf8();
            prev = Some(ch);
            continue;
        }
        let at_boundary = prev.is_none_or(|p| p.is_whitespace() || matches!(p, '(' | '[' | '"' | '\''));
        let len = [&FENCED, &INLINE_CODE, &URL]
            .iter()
            .find_map(|re| re.find(rest).map(|m| m.end()))
            .or_else(|| {
                if at_boundary {
                    ABBREV
                        .find(rest)
                        .or_else(|| FLAG.find(rest))
                        .or_else(|| PATH.find(rest))
                        .map(|m| m.end())
                } else {
                    None
                }
            })
            .or_else(|| {
                if matches!(prev, Some(p) if p.is_alphanumeric()) {
                    CLITIC.find(rest).map(|m| m.end())
                } else {
                    None
                }
            })
            .or_else(|| CONTRACTION.find(rest).map(|m| m.end()))
            .or_else(|| WORD.find(rest).map(|m| m.end()))
            .or_else(|| NUMBER.find(rest).map(|m| m.end()))
            .unwrap_or(ch.len_utf8());
        let surface = &rest[..len];
        let span = Span::new(text, char_at[pos], char_at[pos + len]).expect("token inside text");
        out.push((span, surface.to_string()));
        prev = surface.chars().last();
        pos += len;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surfaces(text: &str) -> Vec<String> {
        tokenize(text).into_iter().map(|(_, s)| s).collect()
    }

    #[test]
    fn dotted_identifier_is_one_token() {
        assert_eq!(surfaces("calling super.clone"), ["calling", "super.clone"]);
    }

    #[test]
    fn plain_words_and_punctuation() {
        assert_eq!(surfaces("run a benchmark?"), ["run", "a", "benchmark", "?"]);
    }

    #[test]
    fn flags_stay_whole() {
        assert_eq!(surfaces("use --force now"), ["use", "--force", "now"]);
        assert_eq!(surfaces("pass -v to it"), ["pass", "-v", "to", "it"]);
    }

    #[test]
    fn fixture_list() {
        let cases: &[(&str, &[&str])] = &[
            ("ImportError: No module", &["ImportError", ":", "No", "module"]),
            ("the band-width", &["the", "band-width"]),
            ("I'm trying", &["I", "'m", "trying"]),
            ("don't panic", &["don't", "panic"]),
            ("see https://example.com/a?b=1.", &["see", "https://example.com/a?b=1", "."]),
            ("call `foo.bar(x)` now", &["call", "`foo.bar(x)`", "now"]),
            ("e.g. java.io.File is fine.", &["e.g.", "java.io.File", "is", "fine", "."]),
            ("version 1.2.3 works", &["version", "1.2.3", "works"]),
            ("XBitHack and getValue()", &["XBitHack", "and", "getValue()"]),
            ("edit /etc/hosts today", &["edit", "/etc/hosts", "today"]),
            ("std::io::Error", &["std::io::Error"]),
        ];
        for (text, expected) in cases {
            assert_eq!(surfaces(text), *expected, "{text}");
        }
    }

    #[test]
    fn spans_are_character_offsets() {
        let toks = tokenize("café uses ünïcode");
        assert_eq!(toks[1].0.start(), 5);
        assert_eq!(toks[2].0.text(), "ünïcode");
        assert_eq!(toks[2].0.end(), 17);
    }

    #[test]
    fn empty_text() {
        assert!(tokenize("").is_empty());
        assert!(tokenize("   ").is_empty());
    }
}
