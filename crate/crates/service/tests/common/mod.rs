#![allow(dead_code)]

use std::collections::BTreeMap;

use seframe::evaluation::{Batch, Campaign, CampaignItem, GoldItem, Mode, Verdict};
use seframe::{FrameInstance, FrameLexicon, FrameSource, Span};
use seframe_service::Store;

pub const KEY: &[u8] = b"test-key";

pub fn item(id: &str, frame: &str, original: Option<&str>) -> CampaignItem {
    let text = "We run the tests";
    CampaignItem {
        id: id.into(),
        sentence_id: id.into(),
        text: text.into(),
        frame: FrameInstance::new(
            frame,
            Span::new(text, 3, 6).unwrap(),
            vec![seframe::FrameElement::new("Target", Span::new(text, 7, 16).unwrap(), true).unwrap()],
            FrameSource::Decorated,
            id,
        )
        .unwrap(),
        original_frame: original.map(str::to_string),
    }
}

/// 20 tasks and two gold items, open to any evaluator.
pub fn robustness() -> Campaign {
    let items: Vec<CampaignItem> = (0..20).map(|i| item(&format!("t{i:02}"), "Using", None)).collect();
    Campaign {
        id: "rob".into(),
        mode: Mode::Robustness,
        batches: vec![Batch {
            id: "all".into(),
            items: items.iter().map(|i| i.id.clone()).collect(),
        }],
        items,
        assignments: BTreeMap::new(),
        gold: vec![
            GoldItem {
                item: item("gold-ok", "Using", None),
                expected: Verdict::Correct,
            },
            GoldItem {
                item: item("gold-bad", "Roadways", None),
                expected: Verdict::Incorrect,
            },
        ],
    }
}

/// Two batches, three assigned evaluators each; `c0` was tailored from
/// Leadership.
pub fn correctness() -> Campaign {
    Campaign {
        id: "cor".into(),
        mode: Mode::Correctness,
        items: vec![
            item("c0", "Execution", Some("Leadership")),
            item("c1", "Using", None),
        ],
        batches: vec![
            Batch {
                id: "b0".into(),
                items: vec!["c0".into()],
            },
            Batch {
                id: "b1".into(),
                items: vec!["c1".into()],
            },
        ],
        assignments: BTreeMap::from([
            ("e1".into(), vec!["b0".into(), "b1".into()]),
            ("e2".into(), vec!["b0".into(), "b1".into()]),
            ("e3".into(), vec!["b0".into(), "b1".into()]),
        ]),
        gold: vec![],
    }
}

pub fn store() -> Store {
    let mut s = Store::in_memory(KEY, lexicon());
    s.add_campaign(robustness()).unwrap();
    s.add_campaign(correctness()).unwrap();
    s
}

/// Lexicon including the Execution frame.
pub fn lexicon() -> FrameLexicon {
    seframe::TailoringCatalog::bundled().lexicon().clone()
}
