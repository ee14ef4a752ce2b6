//! Order-preserving parallel processing of documents and record streams.

use std::io::{self, BufRead, Write};

use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};

use crate::catalog::TailoringCatalog;
use crate::decorator::decorate;
use crate::lexicon::FrameLexicon;
use crate::model::Document;
use crate::parser::{export_record, parse_document, ParseResult};
use crate::sampling::{frame_distribution, DistributionReport};

/// Lines processed per parallel round when streaming.
pub const DEFAULT_CHUNK: usize = 1024;

/// Builds a pool with `workers` threads; 0 lets rayon decide.
pub fn pool(workers: usize) -> ThreadPool {
    ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool")
}

/// Segments and tags documents on `workers` threads, in document order.
pub fn parse_documents(docs: &[Document], lex: &FrameLexicon, workers: usize) -> Vec<ParseResult> {
    pool(workers).install(|| {
        docs.par_iter()
            .map(|d| parse_document(d, lex))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    })
}

pub fn decorate_all(parses: &[ParseResult], cat: &TailoringCatalog, workers: usize) -> Vec<ParseResult> {
    pool(workers).install(|| parses.par_iter().map(|pr| decorate(pr, cat)).collect())
}

/// Output of [`run`]: decorated parses and their frame distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOutput {
    pub parses: Vec<ParseResult>,
    pub distribution: DistributionReport,
}

impl PipelineOutput {
    /// Interchange JSONL of the decorated parses.
    pub fn parses_jsonl(&self) -> String {
        self.parses.iter().map(|p| export_record(p) + "\n").collect()
    }
}

/// Parse, decorate and count frames over a set of documents.
pub fn run(docs: &[Document], cat: &TailoringCatalog, workers: usize) -> PipelineOutput {
    let parses = parse_documents(docs, cat.lexicon(), workers);
    let parses = decorate_all(&parses, cat, workers);
    let distribution = frame_distribution(&parses);
    PipelineOutput { parses, distribution }
}

#[derive(Debug)]
pub enum StreamError<E> {
    Io(io::Error),
    /// Failure processing the line with this 1-based number.
    Line(usize, E),
}

impl<E: std::fmt::Display> std::fmt::Display for StreamError<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StreamError::Io(e) => write!(f, "i/o error: {e}"),
            StreamError::Line(n, e) => write!(f, "line {n}: {e}"),
        }
    }
}

impl<E: std::fmt::Debug + std::fmt::Display> std::error::Error for StreamError<E> {}

/// Reads `reader` in chunks of `chunk` non-blank lines, applies `f` to the
/// lines of each chunk in parallel and writes the produced lines in input
/// order. Memory use is bounded by the chunk size. Returns the number of
/// input lines processed; stops at the first failing line.
pub fn map_lines<R, W, E, F>(
    reader: R,
    writer: &mut W,
    workers: usize,
    chunk: usize,
    f: F,
) -> Result<usize, StreamError<E>>
where
    R: BufRead,
    W: Write,
    E: Send,
    F: Fn(usize, &str) -> Result<Vec<String>, E> + Sync,
{
    let pool = pool(workers);
    let chunk = chunk.max(1);
    let mut lines = reader.lines().enumerate();
    let mut processed = 0;
    loop {
        let mut batch: Vec<(usize, String)> = Vec::with_capacity(chunk);
        for (i, line) in lines.by_ref() {
            let line = line.map_err(StreamError::Io)?;
            if line.trim().is_empty() {
                continue;
            }
            batch.push((i + 1, line));
            if batch.len() == chunk {
                break;
            }
        }
        if batch.is_empty() {
            return Ok(processed);
        }
        let results: Vec<Result<Vec<String>, (usize, E)>> = pool.install(|| {
            batch
                .par_iter()
                .map(|(n, l)| f(*n, l).map_err(|e| (*n, e)))
                .collect()
        });
        for r in results {
            let out = r.map_err(|(n, e)| StreamError::Line(n, e))?;
            for line in out {
                writer.write_all(line.as_bytes()).map_err(StreamError::Io)?;
                writer.write_all(b"\n").map_err(StreamError::Io)?;
            }
        }
        processed += batch.len();
    }
}
