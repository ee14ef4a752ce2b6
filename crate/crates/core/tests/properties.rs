mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use seframe::evaluation::{majority_correct, percent, Verdict};
use seframe::ingest::{filter_min_length, strip_quotes};
use seframe::parser::{export_record, parse_record, ImportOptions};
use seframe::sampling::{sample_per_frame, sample_size, Lcg64, SampleSpec};
use seframe::text::split_sentences;
use seframe::{structure, Document, FrameLexicon, SourceKind, TailoringCatalog};

use common::*;

fn spec(population: u64, margin: f64) -> SampleSpec {
    SampleSpec {
        population,
        z: 2.5758,
        proportion: 0.5,
        margin,
    }
}

fn verdict() -> impl Strategy<Value = Verdict> {
    prop_oneof![
        Just(Verdict::Correct),
        Just(Verdict::Incorrect),
        Just(Verdict::IncorrectButOriginalBetter),
    ]
}

proptest! {
    #[test]
    fn sample_size_is_bounded_and_matches_oracle(n in 0u64..2_000_000, margin in 0.01f64..0.2) {
        let s = sample_size(&spec(n, margin)).unwrap();
        prop_assert!(s <= n);
        prop_assert!(s >= 1.min(n));
        prop_assert_eq!(s, cochran_oracle(n, 2.5758, 0.5, margin));
    }

    #[test]
    fn sample_size_grows_with_population(n in 1u64..1_000_000, extra in 0u64..1000) {
        prop_assert!(sample_size(&spec(n, 0.05)).unwrap() <= sample_size(&spec(n + extra, 0.05)).unwrap());
    }

    #[test]
    fn extra_correct_vote_never_breaks_majority(votes in prop::collection::vec(verdict(), 0..6)) {
        let mut more = votes.clone();
        more.push(Verdict::Correct);
        prop_assert!(!majority_correct(&votes, 2) || majority_correct(&more, 2));
    }

    #[test]
    fn percent_rounds_half_up(total in 1u64..10_000, frac in 0.0f64..=1.0) {
        let correct = (total as f64 * frac) as u64;
        let p = percent(correct, total);
        prop_assert!(p <= 100);
        prop_assert_eq!(p, (100.0 * correct as f64 / total as f64 + 0.5 + 1e-9).floor() as u64);
    }

    #[test]
    fn decorator_algebra_holds(pr in arb_parse_result()) {
        check_decorator_algebra(&pr, &TailoringCatalog::bundled()).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn interchange_round_trips(pr in arb_parse_result()) {
        let line = export_record(&pr);
        let back = parse_record(&line, 1, &ImportOptions::default()).unwrap();
        prop_assert_eq!(back, pr);
    }

    #[test]
    fn structure_reconstructs_sentence(pr in arb_parse_result(), pick in prop::collection::vec(any::<usize>(), 0..3)) {
        let idx: Vec<usize> = if pr.frames.is_empty() {
            vec![]
        } else {
            let mut v: Vec<usize> = pick.iter().map(|i| i % pr.frames.len()).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        if let Ok(view) = structure(&pr, &idx) {
            prop_assert_eq!(view.reconstruct(), pr.sentence.text.clone());
            prop_assert!(view.rows.iter().all(|r| !r.text.trim().is_empty()));
        }
    }

    #[test]
    fn strip_quotes_is_idempotent(lines in prop::collection::vec("(> ?)?[a-z ]{0,12}", 0..8)) {
        let body = lines.join("\n");
        let once = strip_quotes(&body);
        prop_assert_eq!(strip_quotes(&once), once.clone());
        prop_assert!(once.lines().all(|l| !l.trim_start().starts_with('>')));
    }

    #[test]
    fn length_filter_keeps_an_ordered_subsequence(lens in prop::collection::vec(0usize..80, 0..20), n in 0usize..80) {
        let docs: Vec<Document> = lens
            .iter()
            .enumerate()
            .map(|(i, l)| Document {
                id: i.to_string(),
                source_kind: SourceKind::PullRequest,
                raw_text: "x".repeat(*l),
                metadata: BTreeMap::new(),
            })
            .collect();
        let kept = filter_min_length(docs.clone(), n);
        let expected: Vec<Document> = docs.into_iter().filter(|d| d.raw_text.len() >= n).collect();
        prop_assert_eq!(kept, expected);
    }

    #[test]
    fn code_tokens_are_never_split(
        words in prop::collection::vec(prop::sample::select(vec![
            "the", "call", "fails", "foo.bar()", "v1.2.3", "e.g.", "java.util.List", "x.y", "i.e.", "super.clone",
        ]), 1..12),
    ) {
        let text = format!("We saw that {}.", words.join(" "));
        let pieces = split_sentences(&text);
        for w in &words {
            if w.contains('.') && !w.ends_with('.') {
                prop_assert!(pieces.iter().any(|p| p.contains(w)), "{:?} split in {:?}", w, pieces);
            }
        }
    }

    #[test]
    fn lcg_below_stays_in_range(seed in any::<u64>(), bound in 1u64..1_000_000) {
        let mut rng = Lcg64::new(seed);
        for _ in 0..16 {
            prop_assert!(rng.below(bound) < bound);
        }
    }

    #[test]
    fn per_frame_sample_is_a_deterministic_subset(count in 0usize..40, n in 0usize..50, seed in any::<u64>()) {
        let parses: Vec<_> = (0..count)
            .map(|i| {
                let s = sentence(&format!("s{i}"), "We use tools");
                let pr = seframe::tag_frames(&s, &FrameLexicon::bundled());
                seframe::ParseResult::new(s, pr.frames)
            })
            .collect();
        let a = sample_per_frame("Using", &parses, n, seed);
        prop_assert_eq!(&a, &sample_per_frame("Using", &parses, n, seed));
        prop_assert_eq!(a.len(), n.min(count));
        let mut dedup = a.clone();
        dedup.sort();
        dedup.dedup();
        prop_assert_eq!(dedup.len(), a.len());
    }
}

#[test]
fn catalog_files_round_trip() {
    let cat = TailoringCatalog::bundled();
    let fe_map = cat.fe_map_tsv();
    let back = TailoringCatalog::parse(&cat.table_tsv(), &cat.verbs_txt(), Some(&fe_map), &FrameLexicon::bundled()).unwrap();
    assert_eq!(back, cat);
}

#[test]
fn lexicon_json_round_trips() {
    let lex = FrameLexicon::bundled();
    assert_eq!(FrameLexicon::from_json_str(&lex.to_json()).unwrap(), lex);
}
