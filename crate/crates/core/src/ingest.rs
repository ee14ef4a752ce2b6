//! Reading local exports of software artifacts into documents.
//!
//! Supported inputs:
//!
//! * JSONL, either generic corpus records
//!   `{"id","source_kind","text","metadata"}` or exports whose text lives
//!   in `body` / `description`, optionally with a `comments` array (one
//!   document per comment);
//! * mbox mailing-list archives;
//! * CSV app reviews with header `id,app,rating,text`.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};

use once_cell::sync::Lazy;
use regex::Regex;
use serde::Deserialize;
use serde_json::{Map, Value};

use crate::error::IngestError;
use crate::model::{Document, SourceKind};

/// Minimum comment length for pull-request sources unless overridden.
pub const PULL_REQUEST_MIN_LENGTH: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    /// Chosen from the file extension: `.mbox`, `.csv`, else JSONL.
    #[default]
    Auto,
    Jsonl,
    Mbox,
    Csv,
}

/// One local source of documents.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct SourceDescriptor {
    pub path: PathBuf,
    #[serde(deserialize_with = "de_kind")]
    pub kind: SourceKind,
    #[serde(default)]
    pub format: InputFormat,
    /// Documents shorter than this (trimmed, in characters) are dropped.
    #[serde(default)]
    pub min_length: Option<usize>,
    /// Remove code blocks instead of keeping them fenced.
    #[serde(default)]
    pub drop_code: bool,
}

fn de_kind<'de, D: serde::Deserializer<'de>>(d: D) -> Result<SourceKind, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(|_| serde::de::Error::custom(format!("unknown source kind {s:?}")))
}

impl SourceDescriptor {
    pub fn new(path: impl Into<PathBuf>, kind: SourceKind) -> Self {
        SourceDescriptor {
            path: path.into(),
            kind,
            format: InputFormat::Auto,
            min_length: None,
            drop_code: false,
        }
    }

    fn effective_min_length(&self) -> usize {
        self.min_length.unwrap_or(match self.kind {
            SourceKind::PullRequest => PULL_REQUEST_MIN_LENGTH,
            _ => 0,
        })
    }

    fn effective_format(&self) -> InputFormat {
        if self.format != InputFormat::Auto {
            return self.format;
        }
        match self.path.extension().and_then(|e| e.to_str()) {
            Some("mbox") => InputFormat::Mbox,
            Some("csv") => InputFormat::Csv,
            _ => InputFormat::Jsonl,
        }
    }
}

#[derive(Debug, Deserialize)]
struct Manifest {
    #[serde(default, rename = "source")]
    sources: Vec<SourceDescriptor>,
}

fn unreadable(path: &Path, message: impl ToString) -> IngestError {
    IngestError::UnreadableSource {
        path: path.to_path_buf(),
        message: message.to_string(),
    }
}

/// Reads the sources listed in a TOML manifest (`[[source]]` tables with
/// `path`, `kind` and optional `format`, `min_length`, `drop_code`).
/// Relative paths resolve against the manifest's directory. Documents are
/// returned source by source, in manifest order.
pub fn ingest_manifest(path: impl AsRef<Path>) -> Result<Vec<Document>, IngestError> {
    ingest_all(&read_manifest(path)?)
}

/// The source descriptors of a manifest, paths resolved.
pub fn read_manifest(path: impl AsRef<Path>) -> Result<Vec<SourceDescriptor>, IngestError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| unreadable(path, e))?;
    let manifest: Manifest = toml::from_str(&text).map_err(|e| {
        let msg = e.to_string();
        match msg.find("unknown source kind") {
            Some(i) => IngestError::UnknownSourceKind(msg[i..].trim().to_string()),
            None => unreadable(path, msg),
        }
    })?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let sources: Vec<SourceDescriptor> = manifest
        .sources
        .into_iter()
        .map(|mut s| {
            if s.path.is_relative() {
                s.path = base.join(&s.path);
            }
            s
        })
        .collect();
    Ok(sources)
}

/// Ingests several sources, rejecting duplicate document ids.
pub fn ingest_all(sources: &[SourceDescriptor]) -> Result<Vec<Document>, IngestError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for src in sources {
        for doc in ingest(src)? {
            if !seen.insert(doc.id.clone()) {
                return Err(IngestError::DuplicateDocument(doc.id));
            }
            out.push(doc);
        }
    }
    Ok(out)
}

/// Reads one source into documents, applying quote stripping (mail),
/// markup reduction and the length filter.
pub fn ingest(src: &SourceDescriptor) -> Result<Vec<Document>, IngestError> {
    let bytes = fs::read(&src.path).map_err(|e| unreadable(&src.path, e))?;
    let mut docs = match src.effective_format() {
        InputFormat::Mbox => read_mbox(&bytes, src)?,
        InputFormat::Csv => read_csv(&bytes, src)?,
        InputFormat::Jsonl | InputFormat::Auto => read_jsonl(&bytes, src)?,
    };
    for doc in &mut docs {
        doc.raw_text = clean_text(&doc.raw_text, src.drop_code);
        doc.metadata
            .entry("origin".to_string())
            .or_insert_with(|| src.path.display().to_string());
    }
    Ok(filter_min_length(docs, src.effective_min_length()))
}

/// Keeps documents whose trimmed text has at least `n` characters.
pub fn filter_min_length(docs: Vec<Document>, n: usize) -> Vec<Document> {
    docs.into_iter()
        .filter(|d| d.raw_text.trim().chars().count() >= n)
        .collect()
}

static ATTRIBUTION: Lazy<Regex> =
    Lazy::new(|| Regex::new(r"^\s*On\s.*\bwrote:\s*$").unwrap());
static ATTRIBUTION_START: Lazy<Regex> = Lazy::new(|| Regex::new(r"^\s*On\s").unwrap());
static ATTRIBUTION_END: Lazy<Regex> = Lazy::new(|| Regex::new(r"\bwrote:\s*$").unwrap());

/// Removes quoted lines (first non-space character `>`) and "On ... wrote:"
/// attribution lines, including attributions wrapped over two lines.
pub fn strip_quotes(body: &str) -> String {
    let lines: Vec<&str> = body.lines().collect();
    let mut keep = vec![true; lines.len()];
    for (i, line) in lines.iter().enumerate() {
        if line.trim_start().starts_with('>') || ATTRIBUTION.is_match(line) {
            keep[i] = false;
        } else if ATTRIBUTION_START.is_match(line)
            && lines.get(i + 1).is_some_and(|next| ATTRIBUTION_END.is_match(next))
            && !lines[i + 1].trim_start().starts_with('>')
        {
            keep[i] = false;
            keep[i + 1] = false;
        }
    }
    let mut out: Vec<&str> = lines
        .iter()
        .zip(&keep)
        .filter(|(_, k)| **k)
        .map(|(l, _)| *l)
        .collect();
    while out.last().is_some_and(|l| l.trim().is_empty()) {
        out.pop();
    }
    out.join("\n")
}

static HTML_TAG: Lazy<Regex> = Lazy::new(|| {
    Regex::new(r"(?i)</?(?:p|pre|code|div|br|a|ul|ol|li|blockquote|h[1-6]|em|strong|b|i|span|table|tr|td)\b[^>]*>")
        .unwrap()
});
static PRE_BLOCK: Lazy<Regex> =
    Lazy::new(|| Regex::new(r"(?is)<pre\b[^>]*>(?:\s*<code\b[^>]*>)?(.*?)(?:</code>\s*)?</pre>").unwrap());
static INLINE_CODE: Lazy<Regex> = Lazy::new(|| Regex::new(r"(?is)<code\b[^>]*>(.*?)</code>").unwrap());
static BLOCK_BREAK: Lazy<Regex> =
    Lazy::new(|| Regex::new(r"(?i)<br\s*/?>|</(?:p|div|li|h[1-6]|blockquote|tr)>").unwrap());
static ANY_TAG: Lazy<Regex> = Lazy::new(|| Regex::new(r"<[^>]+>").unwrap());
static FENCED: Lazy<Regex> = Lazy::new(|| Regex::new(r"(?ms)^[ \t]*```.*?^[ \t]*```[^\n]*$\n?").unwrap());
static BLANK_RUNS: Lazy<Regex> = Lazy::new(|| Regex::new(r"\n[ \t]*(?:\n[ \t]*)+").unwrap());

fn decode_entities(s: &str) -> String {
    static ENTITY: Lazy<Regex> = Lazy::new(|| Regex::new(r"&(#x?[0-9a-fA-F]+|[a-z]+);").unwrap());
    ENTITY
        .replace_all(s, |c: &regex::Captures| {
            let e = &c[1];
            let decoded = match e {
                "lt" => Some('<'),
                "gt" => Some('>'),
                "amp" => Some('&'),
                "quot" => Some('"'),
                "apos" => Some('\''),
                "nbsp" => Some(' '),
                _ if e.starts_with("#x") => u32::from_str_radix(&e[2..], 16).ok().and_then(char::from_u32),
                _ if e.starts_with('#') => e[1..].parse().ok().and_then(char::from_u32),
                _ => None,
            };
            decoded.map_or_else(|| c[0].to_string(), |ch| ch.to_string())
        })
        .into_owned()
}

/// Reduces HTML to plain text. Code blocks become fenced blocks (or are
/// removed with `drop_code`); inline code becomes a backtick span.
pub fn html_to_text(html: &str, drop_code: bool) -> String {
    let text = PRE_BLOCK.replace_all(html, |c: &regex::Captures| {
        if drop_code {
            "\n".to_string()
        } else {
            let code = ANY_TAG.replace_all(&c[1], "");
            format!("\n\n```\n{}\n```\n\n", code.trim_matches('\n'))
        }
    });
    let text = INLINE_CODE.replace_all(&text, |c: &regex::Captures| {
        format!("`{}`", ANY_TAG.replace_all(&c[1], ""))
    });
    let text = BLOCK_BREAK.replace_all(&text, "\n\n");
    let text = ANY_TAG.replace_all(&text, "");
    let text = decode_entities(&text);
    BLANK_RUNS.replace_all(text.trim(), "\n\n").into_owned()
}

fn clean_text(text: &str, drop_code: bool) -> String {
    let text = if HTML_TAG.is_match(text) {
        html_to_text(text, drop_code)
    } else if drop_code {
        FENCED.replace_all(text, "").into_owned()
    } else {
        text.to_string()
    };
    text.trim().to_string()
}

fn scalar_string(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        Value::Bool(b) => Some(b.to_string()),
        _ => None,
    }
}

fn field_text(obj: &Map<String, Value>) -> Option<String> {
    ["text", "body", "description"]
        .iter()
        .find_map(|k| obj.get(*k).and_then(Value::as_str))
        .map(str::to_string)
}

fn metadata_from(obj: &Map<String, Value>, skip: &[&str]) -> BTreeMap<String, String> {
    obj.iter()
        .filter(|(k, _)| !skip.contains(&k.as_str()))
        .filter_map(|(k, v)| scalar_string(v).map(|s| (k.clone(), s)))
        .collect()
}

fn read_jsonl(bytes: &[u8], src: &SourceDescriptor) -> Result<Vec<Document>, IngestError> {
    let text = std::str::from_utf8(bytes).map_err(|e| unreadable(&src.path, e))?;
    let mut docs = Vec::new();
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let at = |m: String| unreadable(&src.path, format!("line {}: {m}", n + 1));
        let value: Value = serde_json::from_str(line).map_err(|e| at(e.to_string()))?;
        let obj = value.as_object().ok_or_else(|| at("expected a JSON object".into()))?;
        let id = obj
            .get("id")
            .and_then(scalar_string)
            .ok_or_else(|| at("record has no id".into()))?;
        let kind = match obj.get("source_kind").and_then(Value::as_str) {
            Some(k) => k
                .parse::<SourceKind>()
                .map_err(|_| IngestError::UnknownSourceKind(k.to_string()))?,
            None => src.kind,
        };
        let mut metadata = metadata_from(obj, &["id", "source_kind", "text", "body", "description", "comments", "metadata"]);
        if let Some(Value::Object(m)) = obj.get("metadata") {
            metadata.extend(metadata_from(m, &[]));
        }
        metadata.insert("record_id".into(), id.clone());

        if let Some(body) = field_text(obj) {
            docs.push(Document {
                id: id.clone(),
                source_kind: kind,
                raw_text: body,
                metadata: metadata.clone(),
            });
        }
        if let Some(Value::Array(comments)) = obj.get("comments") {
            for (i, c) in comments.iter().enumerate() {
                let (cid, body, extra) = match c {
                    Value::String(s) => (i.to_string(), Some(s.clone()), BTreeMap::new()),
                    Value::Object(co) => (
                        co.get("id").and_then(scalar_string).unwrap_or_else(|| i.to_string()),
                        field_text(co),
                        metadata_from(co, &["id", "text", "body", "description"]),
                    ),
                    _ => return Err(at(format!("comment {i} is neither a string nor an object"))),
                };
                let Some(body) = body else { continue };
                let mut meta = metadata.clone();
                meta.extend(extra);
                meta.insert("comment_id".into(), cid.clone());
                docs.push(Document {
                    id: format!("{id}/{cid}"),
                    source_kind: kind,
                    raw_text: body,
                    metadata: meta,
                });
            }
        }
    }
    Ok(docs)
}

/// Splits an mbox file at `From ` separator lines.
fn mbox_messages(text: &str) -> Vec<&str> {
    let mut starts = Vec::new();
    let mut offset = 0;
    let mut prev_blank = true;
    for line in text.split_inclusive('\n') {
        if prev_blank && line.starts_with("From ") {
            starts.push(offset);
        }
        prev_blank = line.trim().is_empty();
        offset += line.len();
    }
    starts
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            let end = starts.get(i + 1).copied().unwrap_or(text.len());
            let chunk = &text[s..end];
            // Drop the separator line itself.
            chunk.split_once('\n').map_or("", |(_, rest)| rest)
        })
        .collect()
}

fn plain_body(mail: &mailparse::ParsedMail) -> Option<String> {
    if mail.subparts.is_empty() {
        let ctype = mail.ctype.mimetype.to_ascii_lowercase();
        if ctype.starts_with("text/plain") || ctype.is_empty() {
            return mail.get_body().ok();
        }
        if ctype.starts_with("text/html") {
            return mail.get_body().ok().map(|b| html_to_text(&b, false));
        }
        return None;
    }
    mail.subparts
        .iter()
        .find_map(|p| (p.ctype.mimetype.eq_ignore_ascii_case("text/plain")).then(|| p.get_body().ok()).flatten())
        .or_else(|| mail.subparts.iter().find_map(plain_body))
}

fn read_mbox(bytes: &[u8], src: &SourceDescriptor) -> Result<Vec<Document>, IngestError> {
    use mailparse::MailHeaderMap;
    let text = String::from_utf8_lossy(bytes);
    let stem = src
        .path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("mbox")
        .to_string();
    let mut docs = Vec::new();
    for (i, raw) in mbox_messages(&text).into_iter().enumerate() {
        // mboxrd escaping of body lines that begin with "From ".
        let unescaped = raw.replace("\n>From ", "\nFrom ");
        let mail = mailparse::parse_mail(unescaped.as_bytes())
            .map_err(|e| unreadable(&src.path, format!("message {}: {e}", i + 1)))?;
        let headers = mail.get_headers();
        let mut metadata = BTreeMap::new();
        for (key, name) in [("subject", "Subject"), ("from", "From"), ("date", "Date"), ("message_id", "Message-ID"), ("in_reply_to", "In-Reply-To")] {
            if let Some(v) = headers.get_first_value(name) {
                metadata.insert(key.to_string(), v.trim().to_string());
            }
        }
        let id = metadata
            .get("message_id")
            .map(|m| m.trim_matches(|c| c == '<' || c == '>').to_string())
            .unwrap_or_else(|| format!("{stem}:{}", i + 1));
        let body = plain_body(&mail).unwrap_or_default();
        docs.push(Document {
            id,
            source_kind: src.kind,
            raw_text: strip_quotes(&body.replace("\r\n", "\n")),
            metadata,
        });
    }
    Ok(docs)
}

#[derive(Deserialize)]
struct ReviewRow {
    id: String,
    app: String,
    rating: String,
    text: String,
}

fn read_csv(bytes: &[u8], src: &SourceDescriptor) -> Result<Vec<Document>, IngestError> {
    let mut reader = csv::Reader::from_reader(bytes);
    let mut docs = Vec::new();
    for row in reader.deserialize::<ReviewRow>() {
        let row = row.map_err(|e| unreadable(&src.path, e))?;
        let metadata = BTreeMap::from([
            ("app".to_string(), row.app),
            ("rating".to_string(), row.rating),
            ("record_id".to_string(), row.id.clone()),
        ]);
        docs.push(Document {
            id: row.id,
            source_kind: src.kind,
            raw_text: row.text,
            metadata,
        });
    }
    Ok(docs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
        let p = dir.path().join(name);
        fs::write(&p, body).unwrap();
        p
    }

    #[test]
    fn quotes_are_removed() {
        assert_eq!(strip_quotes("> old text\nnew text"), "new text");
        assert_eq!(strip_quotes("no quotes\nhere"), "no quotes\nhere");
    }

    // Expected output checked by hand.
    #[test]
    fn nested_quotes_and_attribution() {
        let body = "Thanks, that fixed it.\n\nOn Tue, 3 Mar 2020, Bob Smith wrote:\n> Did you try -O2?\n>> It segfaults.\n>> Any idea?\n  > indented quote\nCheers";
        assert_eq!(strip_quotes(body), "Thanks, that fixed it.\n\nCheers");
    }

    #[test]
    fn wrapped_attribution() {
        let body = "Agreed.\nOn Tue, 3 Mar 2020 at 10:00, Bob Smith <bob@example.org>\nwrote:\n> x";
        assert_eq!(strip_quotes(body), "Agreed.");
    }

    #[test]
    fn strip_quotes_is_idempotent() {
        let body = "a\n> b\nOn x wrote:\nc\n";
        let once = strip_quotes(body);
        assert_eq!(strip_quotes(&once), once);
    }

    fn doc(text: &str) -> Document {
        Document {
            id: text.into(),
            source_kind: SourceKind::PullRequest,
            raw_text: text.into(),
            metadata: BTreeMap::new(),
        }
    }

    #[test]
    fn min_length_boundaries() {
        let fifty = "x".repeat(50);
        let docs = vec![doc("Looks good to me"), doc(&fifty), doc(&"y".repeat(49))];
        let kept = filter_min_length(docs.clone(), 50);
        assert_eq!(kept, vec![doc(&fifty)]);
        assert_eq!(filter_min_length(docs.clone(), 0), docs);
    }

    #[test]
    fn bug_reports_from_jsonl() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(
            &dir,
            "bugs.jsonl",
            "{\"id\":1,\"description\":\"Crash on start.\"}\n{\"id\":2,\"description\":\"Hangs.\"}\n\n{\"id\":3,\"description\":\"Leaks memory.\",\"product\":\"core\"}\n",
        );
        let docs = ingest(&SourceDescriptor::new(p, SourceKind::BugReport)).unwrap();
        assert_eq!(docs.len(), 3);
        assert!(docs.iter().all(|d| d.source_kind == SourceKind::BugReport));
        assert_eq!(docs[2].metadata["product"], "core");
    }

    #[test]
    fn pull_request_comments_are_filtered() {
        let dir = tempfile::tempdir().unwrap();
        let long = "This change moves the retry loop out of the request handler entirely.";
        let p = write(
            &dir,
            "prs.jsonl",
            &format!("{{\"id\":\"pr-7\",\"comments\":[{{\"id\":\"c1\",\"body\":\"Approved\"}},{{\"id\":\"c2\",\"body\":\"{long}\"}}]}}\n"),
        );
        let docs = ingest(&SourceDescriptor::new(p, SourceKind::PullRequest)).unwrap();
        assert_eq!(docs.len(), 1);
        assert_eq!(docs[0].id, "pr-7/c2");
        assert_eq!(docs[0].raw_text, long);
    }

    #[test]
    fn generic_records_keep_their_kind() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(
            &dir,
            "c.jsonl",
            "{\"id\":\"a\",\"source_kind\":\"api_doc\",\"text\":\"Returns a copy.\",\"metadata\":{\"class\":\"Object\"}}\n",
        );
        let docs = ingest(&SourceDescriptor::new(p, SourceKind::Generic)).unwrap();
        assert_eq!(docs[0].source_kind, SourceKind::ApiDoc);
        assert_eq!(docs[0].metadata["class"], "Object");
    }

    #[test]
    fn unknown_kind_in_record() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(&dir, "c.jsonl", "{\"id\":\"a\",\"source_kind\":\"tweet\",\"text\":\"x\"}\n");
        let err = ingest(&SourceDescriptor::new(p, SourceKind::Generic)).unwrap_err();
        assert!(matches!(err, IngestError::UnknownSourceKind(k) if k == "tweet"));
    }

    #[test]
    fn missing_file_is_unreadable() {
        let err = ingest(&SourceDescriptor::new("/nonexistent/x.jsonl", SourceKind::Issue)).unwrap_err();
        assert!(matches!(err, IngestError::UnreadableSource { .. }));
    }

    #[test]
    fn mbox_thread_drops_quoted_reply() {
        let dir = tempfile::tempdir().unwrap();
        let mbox = "From alice@example.org Mon Jan  1 00:00:00 2020\nFrom: Alice <alice@example.org>\nSubject: build fails\nMessage-ID: <m1@example.org>\n\nThe build fails on ARM.\n\nFrom bob@example.org Mon Jan  1 01:00:00 2020\nFrom: Bob <bob@example.org>\nSubject: Re: build fails\nMessage-ID: <m2@example.org>\n\nTry a clean checkout.\n\nOn Mon, Alice wrote:\n> The build fails on ARM.\n";
        let p = write(&dir, "dev.mbox", mbox);
        let docs = ingest(&SourceDescriptor::new(p, SourceKind::MailingList)).unwrap();
        assert_eq!(docs.len(), 2);
        assert_eq!(docs[1].id, "m2@example.org");
        assert_eq!(docs[1].raw_text, "Try a clean checkout.");
        assert_eq!(docs[0].metadata["subject"], "build fails");
    }

    #[test]
    fn app_reviews_from_csv() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(&dir, "r.csv", "id,app,rating,text\nr1,notes,2,\"Crashes whenever I rotate, please fix\"\n");
        let docs = ingest(&SourceDescriptor::new(p, SourceKind::AppReview)).unwrap();
        assert_eq!(docs[0].raw_text, "Crashes whenever I rotate, please fix");
        assert_eq!(docs[0].metadata["rating"], "2");
    }

    #[test]
    fn html_keeps_code_fenced() {
        let html = "<p>Call <code>foo()</code> first.</p><pre><code>x = 1 &lt; 2\n</code></pre><p>Then it works.</p>";
        assert_eq!(html_to_text(html, false), "Call `foo()` first.\n\n```\nx = 1 < 2\n```\n\nThen it works.");
        assert_eq!(html_to_text(html, true), "Call `foo()` first.\n\nThen it works.");
    }

    #[test]
    fn manifest_concatenates_in_order() {
        let dir = tempfile::tempdir().unwrap();
        write(&dir, "a.jsonl", "{\"id\":\"b1\",\"body\":\"Second source text.\"}\n");
        write(&dir, "b.csv", "id,app,rating,text\nr1,x,5,Works well.\n");
        let m = write(
            &dir,
            "corpus.toml",
            "[[source]]\npath = \"b.csv\"\nkind = \"app_review\"\n\n[[source]]\npath = \"a.jsonl\"\nkind = \"issue\"\n",
        );
        let docs = ingest_manifest(m).unwrap();
        let ids: Vec<_> = docs.iter().map(|d| d.id.as_str()).collect();
        assert_eq!(ids, ["r1", "b1"]);
    }

    #[test]
    fn manifest_with_unknown_kind() {
        let dir = tempfile::tempdir().unwrap();
        let m = write(&dir, "corpus.toml", "[[source]]\npath = \"x\"\nkind = \"blog\"\n");
        assert!(matches!(ingest_manifest(m), Err(IngestError::UnknownSourceKind(_))));
    }

    #[test]
    fn duplicate_ids_across_sources() {
        let dir = tempfile::tempdir().unwrap();
        let a = write(&dir, "a.jsonl", "{\"id\":\"x\",\"body\":\"one\"}\n");
        let b = write(&dir, "b.jsonl", "{\"id\":\"x\",\"body\":\"two\"}\n");
        let err = ingest_all(&[SourceDescriptor::new(a, SourceKind::Issue), SourceDescriptor::new(b, SourceKind::Issue)]);
        assert!(matches!(err, Err(IngestError::DuplicateDocument(_))));
    }
}
