#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use proptest::prelude::*;
use seframe::evaluation::{
    assign_batches, Batch, BatchLimits, Campaign, CampaignItem, GoldItem, Judgment, Mode, Verdict,
};
use seframe::text::analyze;
use seframe::{FrameElement, FrameInstance, FrameSource, ParseResult, Sentence, Span};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn sentence(id: &str, text: &str) -> Sentence {
    Sentence {
        id: id.into(),
        doc_id: id.into(),
        index: 0,
        text: text.into(),
        tokens: analyze(text),
    }
}

/// Cochran's formula with finite population correction, written out
/// independently of the library.
pub fn cochran_oracle(population: u64, z: f64, p: f64, e: f64) -> u64 {
    let n0 = z * z * p * (1.0 - p) / (e * e);
    let n = n0 / (1.0 + (n0 - 1.0) / population as f64);
    (n.floor() as u64).clamp(1.min(population), population)
}

/// Population and published sample for each dataset of the first study.
pub const PUBLISHED_SAMPLES: [(u64, u64); 4] = [(5981, 597), (3306, 552), (44554, 653), (4451, 577)];

pub const REMAP_FRAMES: [&str; 5] = ["Arriving", "Means", "Aggregate", "Request", "Leadership"];

pub const INVALID_FRAMES: [&str; 9] = [
    "Statement",
    "Type",
    "Placing",
    "Being_named",
    "Purpose",
    "Roadways",
    "Contingency",
    "Connectors",
    "Text",
];

fn tsv_rows(name: &str) -> Vec<Vec<String>> {
    fs::read_to_string(fixture(name))
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| l.split('\t').map(str::to_string).collect())
        .collect()
}

/// (frame, ratio) rows of the correctness study.
pub fn correctness_ratios() -> Vec<(String, u64)> {
    tsv_rows("correctness_ratios.tsv")
        .into_iter()
        .map(|r| (r[0].clone(), r[1].parse().unwrap()))
        .collect()
}

/// (frame, correct, incorrect, ratio) rows of the robustness study.
pub fn robustness_votes() -> Vec<(String, u64, u64, u64)> {
    tsv_rows("robustness_votes.tsv")
        .into_iter()
        .map(|r| (r[0].clone(), r[1].parse().unwrap(), r[2].parse().unwrap(), r[3].parse().unwrap()))
        .collect()
}

fn item(id: &str, frame: &str) -> CampaignItem {
    let s = sentence(id, "We run the tests");
    CampaignItem {
        id: id.into(),
        sentence_id: id.into(),
        text: s.text.clone(),
        frame: FrameInstance::new(frame, Span::new(&s.text, 3, 6).unwrap(), vec![], FrameSource::Decorated, id).unwrap(),
        original_frame: None,
    }
}

fn judgment(evaluator: &str, item: &str, verdict: Verdict, ts: u64) -> Judgment {
    Judgment {
        evaluator: evaluator.into(),
        item: item.into(),
        verdict,
        timestamp: ts,
    }
}

/// Synthesized correctness campaign: ten batches holding one sentence per
/// frame, three evaluators per batch, and votes arranged so that exactly
/// `ratio / 10` of each frame's sentences get a 2-of-3 majority. Per-frame
/// raw votes were never published; only the ratios constrain this fixture.
pub fn correctness_campaign(seed: u64) -> (Campaign, Vec<Judgment>) {
    let rows = correctness_ratios();
    let evaluators: Vec<String> = (0..10).map(|i| format!("e{i}")).collect();
    let batch_ids: Vec<String> = (0..10).map(|b| format!("b{b}")).collect();
    let assignment = assign_batches(&evaluators, &batch_ids, &BatchLimits::default(), seed).unwrap();
    let mut items = Vec::new();
    let mut batches = Vec::new();
    for (b, id) in batch_ids.iter().enumerate() {
        let mut ids = Vec::new();
        for (frame, _) in &rows {
            let iid = format!("{frame}-{b}");
            items.push(item(&iid, frame));
            ids.push(iid);
        }
        batches.push(Batch { id: id.clone(), items: ids });
    }
    let mut judgments = Vec::new();
    let mut ts = 0;
    for (b, ba) in assignment.batches.iter().enumerate() {
        for (frame, ratio) in &rows {
            let correct = (b as u64) < ratio / 10;
            let votes = match (correct, b % 2 == 0) {
                (true, true) => [Verdict::Correct, Verdict::Correct, Verdict::Incorrect],
                (true, false) => [Verdict::Correct, Verdict::Correct, Verdict::Correct],
                (false, true) => [Verdict::Incorrect, Verdict::IncorrectButOriginalBetter, Verdict::Correct],
                (false, false) => [Verdict::Incorrect, Verdict::Incorrect, Verdict::Incorrect],
            };
            for (e, v) in ba.evaluators.iter().zip(votes) {
                ts += 1;
                judgments.push(judgment(e, &format!("{frame}-{b}"), v, ts));
            }
        }
    }
    let campaign = Campaign {
        id: "correctness".into(),
        mode: Mode::Correctness,
        items,
        batches,
        assignments: assignment.by_evaluator(),
        gold: vec![],
    };
    (campaign, judgments)
}

/// Robustness campaign with one item per frame judged by twenty
/// evaluators, carrying the published vote counts, plus two gold items.
/// A twenty-first evaluator marks everything correct and must be dropped
/// by the gold check.
pub fn robustness_campaign() -> (Campaign, Vec<Judgment>) {
    let rows = robustness_votes();
    let evaluators: Vec<String> = (0..20).map(|i| format!("w{i:02}")).collect();
    let items: Vec<CampaignItem> = rows.iter().map(|(f, ..)| item(f, f)).collect();
    let gold = vec![
        GoldItem {
            item: item("gold-first", "Using"),
            expected: Verdict::Correct,
        },
        GoldItem {
            item: item("gold-last", "Roadways"),
            expected: Verdict::Incorrect,
        },
    ];
    let batch = Batch {
        id: "all".into(),
        items: items.iter().map(|i| i.id.clone()).collect(),
    };
    let mut assignments: BTreeMap<String, Vec<String>> =
        evaluators.iter().map(|e| (e.clone(), vec!["all".to_string()])).collect();
    assignments.insert("careless".into(), vec!["all".into()]);
    let mut judgments = Vec::new();
    let mut ts = 0;
    let mut push = |e: &str, i: &str, v: Verdict| {
        ts += 1;
        judgments.push(judgment(e, i, v, ts));
    };
    for e in &evaluators {
        push(e, "gold-first", Verdict::Correct);
    }
    for (frame, correct, _, _) in &rows {
        for (k, e) in evaluators.iter().enumerate() {
            let v = if (k as u64) < *correct { Verdict::Correct } else { Verdict::Incorrect };
            push(e, frame, v);
        }
    }
    for e in &evaluators {
        push(e, "gold-last", Verdict::Incorrect);
    }
    push("careless", "gold-first", Verdict::Correct);
    for (frame, ..) in &rows {
        push("careless", frame, Verdict::Correct);
    }
    push("careless", "gold-last", Verdict::Correct);
    let campaign = Campaign {
        id: "robustness".into(),
        mode: Mode::Robustness,
        items,
        batches: vec![batch],
        assignments,
        gold,
    };
    (campaign, judgments)
}

pub const CLONE_DIRECTIVE: &str = "By convention, the returned object should be obtained by calling super.clone";

pub const CLONE_DIRECTIVE_ROWS: [(Option<&str>, &str); 7] = [
    (None, "By convention,"),
    (Some("fe:Responsible_party"), "the returned object"),
    (Some("Being_obligated"), "should"),
    (Some("fe:Duty"), "be obtained"),
    (None, "by"),
    (Some("Execution"), "calling"),
    (Some("fe:Target"), "super.clone"),
];

const WORDS: &[&str] = &[
    "we", "run", "the", "tests", "get", "a", "result", "call", "calls", "method", "use", "build", "server",
    "string", "road", "type", "version", "should", "process", "data", "quickly", "in", "and", "calling",
    "returned", "request", "lead", "I", "config", "super.clone()", "fails", ",", "2.3",
];

const FRAME_NAMES: &[&str] = &[
    "Using", "Causation", "Possession", "Success_or_failure", "Desiring", "Gizmo", "Arriving", "Means",
    "Aggregate", "Request", "Leadership", "Statement", "Type", "Roadways", "Connectors", "Text",
    "Execution", "Unlisted_frame",
];

const ELEMENT_NAMES: &[&str] = &[
    "Agent", "Goal", "Theme", "Message", "Governed", "Speaker", "Time", "Purpose", "Target", "Executor",
    "orig:Manner", "Individuals", "Leader",
];

type RawFrame = (usize, usize, Vec<(usize, usize)>);

fn build(words: Vec<&str>, raw: Vec<RawFrame>) -> ParseResult {
    let text = words.join(" ");
    let s = sentence("s1", &text);
    let n = s.tokens.len();
    let frames = raw
        .into_iter()
        .map(|(f, t, els)| {
            let t = t % n;
            let mut used = vec![t];
            let mut names: Vec<&str> = Vec::new();
            let mut elements = Vec::new();
            for (e, tok) in els {
                let tok = tok % n;
                let name = ELEMENT_NAMES[e % ELEMENT_NAMES.len()];
                if used.contains(&tok) || names.contains(&name) {
                    continue;
                }
                used.push(tok);
                names.push(name);
                let sp = &s.tokens[tok].span;
                elements.push(FrameElement::new(name, Span::new(&text, sp.start(), sp.end()).unwrap(), e % 2 == 0).unwrap());
            }
            let ts = &s.tokens[t].span;
            FrameInstance::new(
                FRAME_NAMES[f % FRAME_NAMES.len()],
                Span::new(&text, ts.start(), ts.end()).unwrap(),
                elements,
                FrameSource::External,
                "s1",
            )
            .unwrap()
        })
        .collect();
    ParseResult::new(s, frames)
}

/// Random parses over a small vocabulary mixing execution verbs, nouns and
/// frames of every catalog status, with single-token targets and elements.
pub fn arb_parse_result() -> impl Strategy<Value = ParseResult> {
    let words = prop::collection::vec(prop::sample::select(WORDS), 1..12);
    let frame = (any::<usize>(), any::<usize>(), prop::collection::vec((any::<usize>(), any::<usize>()), 0..4));
    (words, prop::collection::vec(frame, 0..5)).prop_map(|(w, f)| build(w, f))
}

/// Idempotence, valid-frame identity, span preservation and removal of
/// invalid frames for one parse under one catalog.
pub fn check_decorator_algebra(pr: &ParseResult, cat: &seframe::TailoringCatalog) -> Result<(), String> {
    use seframe::{decorate, FrameStatus};
    let d = decorate(pr, cat);
    if decorate(&d, cat) != d {
        return Err(format!("not idempotent on {:?}", pr.sentence.text));
    }
    if let Some(f) = d.frames.iter().find(|f| cat.status(&f.frame) == FrameStatus::Invalid) {
        return Err(format!("invalid frame {} survived", f.frame));
    }
    if d.sentence != pr.sentence {
        return Err("sentence changed".into());
    }
    let kept: Vec<&FrameInstance> = pr
        .frames
        .iter()
        .filter(|f| cat.status(&f.frame) != FrameStatus::Invalid)
        .collect();
    if kept.len() != d.frames.len() {
        return Err(format!("expected {} frames, got {}", kept.len(), d.frames.len()));
    }
    for (a, b) in kept.iter().zip(&d.frames) {
        let spans = |f: &FrameInstance| f.elements.iter().map(|e| e.span.clone()).collect::<Vec<_>>();
        if a.target != b.target || spans(a) != spans(b) {
            return Err(format!("spans moved in {} -> {}", a.frame, b.frame));
        }
        let exec_lemma = pr
            .sentence
            .tokens
            .iter()
            .filter(|t| a.target.contains(&t.span))
            .any(|t| cat.is_execution_verb(&t.lemma));
        let identity_expected = cat.status(&a.frame) == FrameStatus::Valid
            && a.frame != seframe::EXECUTION
            && (cat.remap_requires_listed_frame() || !exec_lemma);
        if identity_expected && *a != b {
            return Err(format!("valid frame {} changed", a.frame));
        }
    }
    Ok(())
}
