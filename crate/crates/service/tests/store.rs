mod common;

use seframe::evaluation::Verdict;
use seframe_service::code::completion_code;
use seframe_service::{ServiceError, Store, Submission};

use common::*;

fn sub(session: &str, item: &str, verdict: Verdict) -> Submission {
    Submission {
        session: session.into(),
        item: item.into(),
        verdict,
        follow_up: false,
    }
}

/// Answers every remaining task; gold items get `gold`, others `Correct`.
fn finish(store: &mut Store, campaign: &str, session: &str, gold: [Verdict; 2]) {
    loop {
        let task = match store.next_task(campaign, session) {
            Ok(t) => t,
            Err(ServiceError::NoTasksRemaining) => return,
            Err(e) => panic!("{e}"),
        };
        let v = match task.item.as_str() {
            "gold-ok" => gold[0].clone(),
            "gold-bad" => gold[1].clone(),
            _ => Verdict::Correct,
        };
        store.submit(sub(session, &task.item, v)).unwrap();
    }
}

#[test]
fn gold_items_open_and_close_the_sequence() {
    let mut s = store();
    let info = s.create_session("rob", "alice").unwrap();
    assert_eq!(info.total, 22);
    assert_eq!(s.next_task("rob", &info.session).unwrap().item, "gold-ok");
    for i in 0..21 {
        let t = s.next_task("rob", &info.session).unwrap();
        assert_eq!(t.position, i + 1);
        s.submit(sub(&info.session, &t.item, Verdict::Correct)).unwrap();
    }
    assert_eq!(s.next_task("rob", &info.session).unwrap().item, "gold-bad");
}

#[test]
fn exhausted_session_has_no_tasks() {
    let mut s = store();
    let info = s.create_session("rob", "alice").unwrap();
    finish(&mut s, "rob", &info.session, [Verdict::Correct, Verdict::Incorrect]);
    assert!(matches!(s.next_task("rob", &info.session), Err(ServiceError::NoTasksRemaining)));
}

#[test]
fn resubmission_is_idempotent_and_conflicts_are_rejected() {
    let mut s = store();
    let token = s.create_session("rob", "alice").unwrap().session;
    let ack = s.submit(sub(&token, "gold-ok", Verdict::Correct)).unwrap();
    assert_eq!(s.submit(sub(&token, "gold-ok", Verdict::Correct)).unwrap(), ack);
    assert!(matches!(
        s.submit(sub(&token, "gold-ok", Verdict::Incorrect)),
        Err(ServiceError::DuplicateConflicting(_))
    ));
    assert!(matches!(
        s.submit(sub(&token, "t05", Verdict::Correct)),
        Err(ServiceError::OutOfOrderSubmission { .. })
    ));
    assert_eq!(s.judgments("rob").len(), 0, "incomplete sessions do not count");
}

#[test]
fn wrong_mode_verdict_is_rejected() {
    let mut s = store();
    let token = s.create_session("rob", "alice").unwrap().session;
    assert!(matches!(
        s.submit(sub(&token, "gold-ok", Verdict::Valid)),
        Err(ServiceError::InvalidVerdict(_))
    ));
}

#[test]
fn completion_code_needs_a_complete_session() {
    let mut s = store();
    let a = s.create_session("rob", "alice").unwrap().session;
    let b = s.create_session("rob", "bob").unwrap().session;
    assert!(matches!(
        s.completion_code(&a),
        Err(ServiceError::IncompleteSession { judged: 0, total: 22 })
    ));
    finish(&mut s, "rob", &a, [Verdict::Correct, Verdict::Incorrect]);
    finish(&mut s, "rob", &b, [Verdict::Correct, Verdict::Incorrect]);
    let ca = s.completion_code(&a).unwrap();
    let cb = s.completion_code(&b).unwrap();
    assert_eq!(ca.len(), 12);
    assert_ne!(ca, cb);
    assert_eq!(ca, completion_code(KEY, "rob", "alice"));
    assert!(s.verify_code("rob", "alice", &ca));
    assert!(!s.verify_code("rob", "bob", &ca));
}

#[test]
fn gold_failure_excludes_evaluator_from_report() {
    let mut s = store();
    for (e, gold) in [
        ("alice", [Verdict::Correct, Verdict::Incorrect]),
        ("bob", [Verdict::Correct, Verdict::Incorrect]),
        ("mallory", [Verdict::Correct, Verdict::Correct]),
    ] {
        let t = s.create_session("rob", e).unwrap().session;
        finish(&mut s, "rob", &t, gold);
    }
    assert!(matches!(s.report("rob"), Err(ServiceError::CampaignOpen(_))));
    s.close_campaign("rob").unwrap();
    let r = s.report("rob").unwrap();
    assert_eq!(r.excluded_evaluators, ["mallory"]);
    assert_eq!(r.total, 40);
    assert!(r.frame("Roadways").is_none(), "gold items never reach the report");
}

#[test]
fn closed_campaign_refuses_work() {
    let mut s = store();
    let t = s.create_session("rob", "alice").unwrap().session;
    s.close_campaign("rob").unwrap();
    assert!(matches!(s.next_task("rob", &t), Err(ServiceError::CampaignClosed(_))));
    assert!(matches!(
        s.submit(sub(&t, "gold-ok", Verdict::Correct)),
        Err(ServiceError::CampaignClosed(_))
    ));
    assert!(matches!(s.create_session("rob", "bob"), Err(ServiceError::CampaignClosed(_))));
}

#[test]
fn incorrect_tailored_frame_gets_a_follow_up() {
    let mut s = store();
    let t = s.create_session("cor", "e1").unwrap().session;
    let task = s.next_task("cor", &t).unwrap();
    assert_eq!((task.item.as_str(), task.follow_up), ("c0", false));
    assert!(task.original_frame.is_none());
    s.submit(sub(&t, "c0", Verdict::Incorrect)).unwrap();
    let follow = s.next_task("cor", &t).unwrap();
    assert!(follow.follow_up);
    assert_eq!(follow.original_frame.unwrap().name, "Leadership");
    assert!(matches!(
        s.submit(sub(&t, "c1", Verdict::Correct)),
        Err(ServiceError::OutOfOrderSubmission { .. })
    ));
    s.submit(Submission {
        follow_up: true,
        ..sub(&t, "c0", Verdict::IncorrectButOriginalBetter)
    })
    .unwrap();
    let next = s.next_task("cor", &t).unwrap();
    assert_eq!((next.item.as_str(), next.follow_up), ("c1", false));
    s.submit(sub(&t, "c1", Verdict::Incorrect)).unwrap();
    assert!(s.session_info(&t).unwrap().complete, "untailored frames get no follow-up");
    let votes = s.judgments("cor");
    assert_eq!(votes.last().unwrap().verdict, Verdict::Incorrect);
    assert_eq!(votes[1].verdict, Verdict::IncorrectButOriginalBetter);
}

#[test]
fn unassigned_evaluator_cannot_join_correctness_campaign() {
    let mut s = store();
    assert!(matches!(
        s.create_session("cor", "stranger"),
        Err(ServiceError::UnknownEvaluator { .. })
    ));
}

#[test]
fn correctness_report_applies_majority() {
    let mut s = store();
    for (e, v0, v1) in [
        ("e1", Verdict::Correct, Verdict::Correct),
        ("e2", Verdict::Correct, Verdict::Incorrect),
        ("e3", Verdict::Incorrect, Verdict::Incorrect),
    ] {
        let t = s.create_session("cor", e).unwrap().session;
        s.submit(sub(&t, "c0", v0.clone())).unwrap();
        if v0 == Verdict::Incorrect {
            s.submit(Submission {
                follow_up: true,
                ..sub(&t, "c0", Verdict::Incorrect)
            })
            .unwrap();
        }
        s.submit(sub(&t, "c1", v1)).unwrap();
    }
    s.close_campaign("cor").unwrap();
    let r = s.report("cor").unwrap();
    assert_eq!((r.frame("Execution").unwrap().correct, r.frame("Using").unwrap().correct), (1, 0));
}

#[test]
fn journal_replay_restores_sessions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("journal.jsonl");
    let (token, before) = {
        let mut s = Store::open(&path, KEY, lexicon()).unwrap();
        s.add_campaign(robustness()).unwrap();
        let token = s.create_session("rob", "alice").unwrap().session;
        for _ in 0..5 {
            let t = s.next_task("rob", &token).unwrap();
            s.submit(sub(&token, &t.item, Verdict::Correct)).unwrap();
        }
        let ack = s.submit(sub(&token, "t02", Verdict::Correct)).unwrap();
        let next = s.next_task("rob", &token).unwrap();
        (token, (next, ack))
    };
    let mut s = Store::open(&path, KEY, lexicon()).unwrap();
    s.add_campaign(robustness()).unwrap();
    assert_eq!(s.next_task("rob", &token).unwrap(), before.0);
    assert_eq!(s.submit(sub(&token, "t02", Verdict::Correct)).unwrap(), before.1);
    assert_eq!(s.create_session("rob", "alice").unwrap().session, token);
    assert_eq!(s.session_info(&token).unwrap().judged, 5);
}
