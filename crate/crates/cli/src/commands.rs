use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufRead, BufReader};
use std::path::Path;
use std::sync::{Arc, Mutex};

use anyhow::{anyhow, bail, Context, Result};
use seframe::evaluation::{
    annotation_agreement, assign_batches, correctness_report, verify_assignment, BatchLimits, Campaign, Judgment,
    Mode,
};
use seframe::ingest::{ingest_all, read_manifest, SourceDescriptor};
use seframe::parser::{export_record, import_external, parse_document, parse_record, ImportOptions};
use seframe::pipeline::{map_lines, DEFAULT_CHUNK};
use seframe::sampling::{frame_distribution, sample_frames, sample_size, top_k, SampleSpec};
use seframe::{
    decorate, load_catalog, load_lexicon, structure, Document, FrameLexicon, ParseResult, SourceKind,
    TailoringCatalog,
};
use seframe_service::Store;

use crate::output::{write_all, Output};
use crate::{Cli, Command, ReportFormat, ViewFormat};

/// Bad flag values; exit status 1.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::error::Error for UsageError {}

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn lexicon(path: Option<&Path>) -> Result<FrameLexicon> {
    match path {
        Some(p) => load_lexicon(p).with_context(|| format!("loading lexicon {}", p.display())),
        None => Ok(FrameLexicon::bundled()),
    }
}

fn catalog(path: Option<&Path>, lex: &FrameLexicon) -> Result<TailoringCatalog> {
    match path {
        Some(p) => load_catalog(p, lex).with_context(|| format!("loading catalog {}", p.display())),
        None => TailoringCatalog::bundled_with_lexicon(lex).context("building the bundled catalog"),
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    let f = File::open(path).with_context(|| format!("cannot read {}", path.display()))?;
    Ok(BufReader::new(f))
}

fn read_parses(path: &Path, lex: &FrameLexicon) -> Result<Vec<ParseResult>> {
    let opts = ImportOptions {
        strict: false,
        lexicon: Some(lex),
    };
    import_external(open(path)?, opts).with_context(|| path.display().to_string())
}

/// Streams `input` line by line through `f` into `out`, in input order.
fn stream<F>(input: &Path, out: Option<&Path>, workers: usize, f: F) -> Result<()>
where
    F: Fn(usize, &str) -> Result<Vec<String>> + Sync,
{
    let mut sink = Output::open(out)?;
    map_lines(open(input)?, &mut sink, workers, DEFAULT_CHUNK, f)
        .map_err(|e| anyhow!("{}: {e:#}", input.display()))?;
    sink.commit()
}

pub fn run(cli: Cli) -> Result<()> {
    let lex = lexicon(cli.lexicon.as_deref())?;
    match cli.command {
        Command::Ingest {
            manifest,
            source,
            kind,
            drop_code,
            out,
        } => {
            let mut sources = match (manifest, source, kind) {
                (Some(m), _, _) => read_manifest(&m)?,
                (None, Some(src), Some(kind)) => {
                    let kind: SourceKind = kind.parse().map_err(|_| usage(format!("unknown source kind {kind:?}")))?;
                    vec![SourceDescriptor::new(src, kind)]
                }
                _ => return Err(usage("give --manifest, or --source with --kind")),
            };
            for s in &mut sources {
                s.drop_code |= drop_code;
            }
            let docs = ingest_all(&sources)?;
            let mut text = String::new();
            for d in &docs {
                text.push_str(&serde_json::to_string(d)?);
                text.push('\n');
            }
            write_all(out.as_deref(), &text)
        }
        Command::Parse {
            io,
            import_external,
            strict,
            workers,
        } => {
            if import_external {
                let opts = ImportOptions {
                    strict,
                    lexicon: Some(&lex),
                };
                stream(&io.input, io.out.as_deref(), workers.workers, |n, line| {
                    Ok(vec![export_record(&parse_record(line, n, &opts)?)])
                })
            } else {
                stream(&io.input, io.out.as_deref(), workers.workers, |_, line| {
                    let doc: Document = serde_json::from_str(line).context("not a document record")?;
                    Ok(parse_document(&doc, &lex).iter().map(export_record).collect())
                })
            }
        }
        Command::Decorate {
            io,
            catalog: path,
            strict_remap,
            workers,
        } => {
            let cat = catalog(path.as_deref(), &lex)?.with_remap_requires_listed_frame(strict_remap);
            let opts = ImportOptions {
                strict: false,
                lexicon: Some(cat.lexicon()),
            };
            stream(&io.input, io.out.as_deref(), workers.workers, |n, line| {
                let pr = parse_record(line, n, &opts)?;
                Ok(vec![export_record(&decorate(&pr, &cat))])
            })
        }
        Command::Distribution { io, top } => {
            let parses = read_parses(&io.input, &lex)?;
            let mut report = frame_distribution(&parses);
            if let Some(k) = top {
                report.entries.truncate(k);
            }
            write_all(io.out.as_deref(), &report.to_csv())
        }
        Command::SampleSize {
            population,
            confidence,
            margin,
            proportion,
        } => {
            let mut spec = SampleSpec::from_confidence(population, confidence, margin).map_err(|e| usage(e.to_string()))?;
            spec.proportion = proportion;
            let n = sample_size(&spec).map_err(|e| usage(e.to_string()))?;
            println!("{n}");
            Ok(())
        }
        Command::Sample {
            io,
            per_frame,
            frames,
            top,
            seed,
        } => {
            let parses = read_parses(&io.input, &lex)?;
            let report = frame_distribution(&parses);
            let frames = match (frames.is_empty(), top) {
                (false, _) => frames,
                (true, Some(k)) => top_k(&report, k),
                (true, None) => top_k(&report, usize::MAX),
            };
            let mut text = String::new();
            for entry in sample_frames(&frames, &parses, per_frame, seed) {
                text.push_str(&serde_json::to_string(&entry)?);
                text.push('\n');
            }
            write_all(io.out.as_deref(), &text)
        }
        Command::AssignBatches {
            evaluators,
            batches,
            per_batch,
            pair_limit,
            triple_limit,
            seed,
            out,
        } => {
            let limits = BatchLimits {
                per_batch,
                pair_limit,
                triple_limit,
            };
            let ids: Vec<String> = (0..batches).map(|b| format!("b{b}")).collect();
            let assignment = assign_batches(&evaluators, &ids, &limits, seed)?;
            let check = verify_assignment(&assignment, &limits);
            if !check.ok {
                bail!("assignment failed verification: {:?}", check.violations);
            }
            write_all(out.as_deref(), &(serde_json::to_string_pretty(&assignment)? + "\n"))
        }
        Command::Report {
            campaign,
            judgments,
            format,
            out,
        } => {
            let c: Campaign = serde_json::from_reader(open(&campaign)?)
                .with_context(|| format!("{} is not a campaign", campaign.display()))?;
            c.validate()?;
            let js = read_judgments(&judgments)?;
            let text = if c.mode == Mode::Annotation {
                let mut by: BTreeMap<&str, Vec<Judgment>> = BTreeMap::new();
                for j in &js {
                    by.entry(j.evaluator.as_str()).or_default().push(j.clone());
                }
                let pair: Vec<&Vec<Judgment>> = by.values().collect();
                if pair.len() != 2 {
                    bail!("annotation campaigns compare exactly two annotators, found {}", pair.len());
                }
                let a = annotation_agreement(pair[0], pair[1])?;
                match format {
                    ReportFormat::Json => serde_json::to_string_pretty(&a)? + "\n",
                    ReportFormat::Csv => format!("agreement,matching,total\n{:.6},{},{}\n", a.agreement, a.matching, a.total),
                }
            } else {
                let r = correctness_report(&c, &js)?;
                match format {
                    ReportFormat::Json => serde_json::to_string_pretty(&r)? + "\n",
                    ReportFormat::Csv => r.to_csv(),
                }
            };
            write_all(out.as_deref(), &text)
        }
        Command::Structure {
            io,
            sentence,
            frames,
            format,
        } => {
            let parses = read_parses(&io.input, &lex)?;
            let pr = parses
                .iter()
                .find(|p| p.sentence.id == sentence)
                .ok_or_else(|| anyhow!("no sentence {sentence:?} in {}", io.input.display()))?;
            let indices = if frames.is_empty() {
                let mut chosen = Vec::new();
                for i in 0..pr.frames.len() {
                    chosen.push(i);
                    if structure(pr, &chosen).is_err() {
                        chosen.pop();
                    }
                }
                chosen
            } else {
                frames
            };
            let view = structure(pr, &indices)?;
            let text = match format {
                ViewFormat::Text => view.to_text(),
                ViewFormat::Json => view.to_json() + "\n",
            };
            write_all(io.out.as_deref(), &text)
        }
        Command::Serve {
            journal,
            campaign,
            addr,
            static_dir,
            code_key,
            catalog: path,
        } => {
            if code_key.is_empty() {
                return Err(usage("the completion-code key must not be empty"));
            }
            let cat = catalog(path.as_deref(), &lex)?;
            let mut store = Store::open(&journal, code_key.into_bytes(), cat.lexicon().clone())?;
            for p in &campaign {
                let text = fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?;
                let c: Campaign = serde_json::from_str(&text).with_context(|| format!("{} is not a campaign", p.display()))?;
                store.add_campaign(c).with_context(|| p.display().to_string())?;
            }
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(async {
                let listener = tokio::net::TcpListener::bind(&addr)
                    .await
                    .with_context(|| format!("cannot listen on {addr}"))?;
                eprintln!("listening on http://{}", listener.local_addr()?);
                seframe_service::serve(listener, Arc::new(Mutex::new(store)), static_dir.as_deref()).await?;
                Ok(())
            })
        }
    }
}

fn read_judgments(path: &Path) -> Result<Vec<Judgment>> {
    let mut out = Vec::new();
    for (n, line) in open(path)?.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let j = serde_json::from_str(&line).with_context(|| format!("{} line {}", path.display(), n + 1))?;
        out.push(j);
    }
    Ok(out)
}
