//! Campaign, session and judgment state. Every change goes through an
//! [`Event`] that is journaled before it is applied, so replaying the
//! journal rebuilds the same state.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use seframe::evaluation::{correctness_report, Campaign, CampaignItem, CorrectnessReport, Judgment, Mode, Verdict};
use seframe::error::EvaluationError;
use seframe::{FrameInstance, FrameLexicon};
use serde::{Deserialize, Serialize};

use crate::code::{completion_code, verify_code};
use crate::journal::{Event, Journal, JournalError};

#[derive(Debug, thiserror::Error)]
pub enum ServiceError {
    #[error("unknown campaign {0}")]
    UnknownCampaign(String),
    #[error("unknown session {0}")]
    UnknownSession(String),
    #[error("evaluator {evaluator} is not assigned to campaign {campaign}")]
    UnknownEvaluator { campaign: String, evaluator: String },
    #[error("campaign {0} already exists with different content")]
    CampaignExists(String),
    #[error("campaign {0} is closed")]
    CampaignClosed(String),
    #[error("campaign {0} is still open")]
    CampaignOpen(String),
    #[error("no tasks remaining in this session")]
    NoTasksRemaining,
    #[error("{got} is not the current task (expected {expected})")]
    OutOfOrderSubmission { expected: String, got: String },
    #[error("{0} was already judged with a different verdict")]
    DuplicateConflicting(String),
    #[error("session incomplete: {judged} of {total} tasks judged")]
    IncompleteSession { judged: usize, total: usize },
    #[error("invalid verdict: {0}")]
    InvalidVerdict(String),
    #[error("invalid campaign: {0}")]
    InvalidCampaign(String),
    #[error(transparent)]
    Report(EvaluationError),
    #[error("journal write failed: {0}")]
    Journal(#[from] std::io::Error),
}

impl ServiceError {
    /// Stable identifier used in error payloads.
    pub fn code(&self) -> &'static str {
        match self {
            ServiceError::UnknownCampaign(_) => "unknown_campaign",
            ServiceError::UnknownSession(_) => "unknown_session",
            ServiceError::UnknownEvaluator { .. } => "unknown_evaluator",
            ServiceError::CampaignExists(_) => "campaign_exists",
            ServiceError::CampaignClosed(_) => "campaign_closed",
            ServiceError::CampaignOpen(_) => "campaign_open",
            ServiceError::NoTasksRemaining => "no_tasks_remaining",
            ServiceError::OutOfOrderSubmission { .. } => "out_of_order_submission",
            ServiceError::DuplicateConflicting(_) => "duplicate_conflicting",
            ServiceError::IncompleteSession { .. } => "incomplete_session",
            ServiceError::InvalidVerdict(_) => "invalid_verdict",
            ServiceError::InvalidCampaign(_) => "invalid_campaign",
            ServiceError::Report(_) => "report_unavailable",
            ServiceError::Journal(_) => "journal_error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanView {
    pub start: usize,
    pub end: usize,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementView {
    pub name: String,
    pub start: usize,
    pub end: usize,
    pub text: String,
    pub core: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameView {
    pub name: String,
    pub definition: String,
}

/// What an evaluator sees for one step. Gold items look like any other.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Task {
    pub session: String,
    pub campaign: String,
    pub mode: Mode,
    /// 1-based position in the session's sequence.
    pub position: usize,
    pub total: usize,
    pub item: String,
    pub text: String,
    pub frame: FrameView,
    pub target: SpanView,
    pub elements: Vec<ElementView>,
    /// Set on the question asked after an incorrect verdict: whether the
    /// frame shown in `original_frame` would have fit better.
    pub follow_up: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub original_frame: Option<FrameView>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionInfo {
    pub session: String,
    pub campaign: String,
    pub evaluator: String,
    pub total: usize,
    pub judged: usize,
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Submission {
    pub session: String,
    pub item: String,
    pub verdict: Verdict,
    #[serde(default)]
    pub follow_up: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ack {
    pub session: String,
    pub item: String,
    pub verdict: Verdict,
    pub follow_up: bool,
    /// Journal sequence number of the recorded judgment.
    pub sequence: u64,
}

#[derive(Debug, Clone)]
struct Step {
    item: String,
    follow_up: bool,
    ack: Ack,
}

#[derive(Debug, Clone)]
struct Session {
    campaign: String,
    evaluator: String,
    tasks: Vec<String>,
    steps: Vec<Step>,
}

#[derive(Debug, Clone)]
struct CampaignEntry {
    campaign: Campaign,
    closed: bool,
}

#[derive(Debug)]
pub struct Store {
    key: Vec<u8>,
    lexicon: FrameLexicon,
    campaigns: BTreeMap<String, CampaignEntry>,
    sessions: HashMap<String, Session>,
    by_evaluator: HashMap<(String, String), String>,
    judgments: Vec<(String, Judgment)>,
    sequence: u64,
    journal: Journal,
}

impl Store {
    pub fn in_memory(key: impl Into<Vec<u8>>, lexicon: FrameLexicon) -> Self {
        Store {
            key: key.into(),
            lexicon,
            campaigns: BTreeMap::new(),
            sessions: HashMap::new(),
            by_evaluator: HashMap::new(),
            judgments: Vec::new(),
            sequence: 0,
            journal: Journal::in_memory(),
        }
    }

    /// Opens the journal at `path` and replays it.
    pub fn open(path: impl AsRef<Path>, key: impl Into<Vec<u8>>, lexicon: FrameLexicon) -> Result<Self, JournalError> {
        let (journal, events) = Journal::open(path)?;
        let mut store = Store::in_memory(key, lexicon);
        store.journal = journal;
        for ev in events {
            store.apply(ev);
        }
        Ok(store)
    }

    fn commit(&mut self, ev: Event) -> Result<u64, ServiceError> {
        self.journal.append(&ev)?;
        Ok(self.apply(ev))
    }

    fn apply(&mut self, ev: Event) -> u64 {
        self.sequence += 1;
        let seq = self.sequence;
        match ev {
            Event::CampaignCreated { campaign } => {
                self.campaigns.insert(
                    campaign.id.clone(),
                    CampaignEntry {
                        campaign,
                        closed: false,
                    },
                );
            }
            Event::SessionCreated {
                session,
                campaign,
                evaluator,
                tasks,
            } => {
                self.by_evaluator
                    .insert((campaign.clone(), evaluator.clone()), session.clone());
                self.sessions.insert(
                    session,
                    Session {
                        campaign,
                        evaluator,
                        tasks,
                        steps: Vec::new(),
                    },
                );
            }
            Event::JudgmentRecorded {
                session,
                follow_up,
                judgment,
            } => {
                if let Some(s) = self.sessions.get_mut(&session) {
                    s.steps.push(Step {
                        item: judgment.item.clone(),
                        follow_up,
                        ack: Ack {
                            session: session.clone(),
                            item: judgment.item.clone(),
                            verdict: judgment.verdict.clone(),
                            follow_up,
                            sequence: seq,
                        },
                    });
                }
                self.judgments.push((session, judgment));
            }
            Event::CampaignClosed { campaign } => {
                if let Some(c) = self.campaigns.get_mut(&campaign) {
                    c.closed = true;
                }
            }
        }
        seq
    }

    pub fn campaign(&self, id: &str) -> Option<&Campaign> {
        self.campaigns.get(id).map(|c| &c.campaign)
    }

    pub fn campaign_ids(&self) -> Vec<String> {
        self.campaigns.keys().cloned().collect()
    }

    pub fn is_closed(&self, id: &str) -> bool {
        self.campaigns.get(id).is_some_and(|c| c.closed)
    }

    /// Registers a campaign. Adding an identical campaign again is a no-op.
    pub fn add_campaign(&mut self, campaign: Campaign) -> Result<(), ServiceError> {
        campaign
            .validate()
            .map_err(|e| ServiceError::InvalidCampaign(e.to_string()))?;
        if let Some(existing) = self.campaigns.get(&campaign.id) {
            return if existing.campaign == campaign {
                Ok(())
            } else {
                Err(ServiceError::CampaignExists(campaign.id))
            };
        }
        self.commit(Event::CampaignCreated { campaign })?;
        Ok(())
    }

    pub fn close_campaign(&mut self, id: &str) -> Result<(), ServiceError> {
        let entry = self
            .campaigns
            .get(id)
            .ok_or_else(|| ServiceError::UnknownCampaign(id.into()))?;
        if !entry.closed {
            self.commit(Event::CampaignClosed { campaign: id.into() })?;
        }
        Ok(())
    }

    fn open_campaign(&self, id: &str) -> Result<&Campaign, ServiceError> {
        let entry = self
            .campaigns
            .get(id)
            .ok_or_else(|| ServiceError::UnknownCampaign(id.into()))?;
        if entry.closed {
            return Err(ServiceError::CampaignClosed(id.into()));
        }
        Ok(&entry.campaign)
    }

    /// Starts a session for `evaluator`, or resumes their existing one.
    pub fn create_session(&mut self, campaign_id: &str, evaluator: &str) -> Result<SessionInfo, ServiceError> {
        let campaign = self.open_campaign(campaign_id)?;
        let key = (campaign_id.to_string(), evaluator.to_string());
        if let Some(token) = self.by_evaluator.get(&key) {
            return self.session_info(token);
        }
        let tasks = task_sequence(campaign, evaluator).ok_or_else(|| ServiceError::UnknownEvaluator {
            campaign: campaign_id.into(),
            evaluator: evaluator.into(),
        })?;
        let token = uuid::Uuid::new_v4().simple().to_string();
        self.commit(Event::SessionCreated {
            session: token.clone(),
            campaign: campaign_id.into(),
            evaluator: evaluator.into(),
            tasks,
        })?;
        self.session_info(&token)
    }

    fn session(&self, token: &str) -> Result<&Session, ServiceError> {
        self.sessions
            .get(token)
            .ok_or_else(|| ServiceError::UnknownSession(token.into()))
    }

    pub fn session_info(&self, token: &str) -> Result<SessionInfo, ServiceError> {
        let s = self.session(token)?;
        let judged = s.steps.iter().filter(|st| !st.follow_up).count();
        Ok(SessionInfo {
            session: token.into(),
            campaign: s.campaign.clone(),
            evaluator: s.evaluator.clone(),
            total: s.tasks.len(),
            judged,
            complete: self.current(s).is_none(),
        })
    }

    /// The step an evaluator must answer next: a follow-up after an
    /// incorrect verdict on a tailored frame, else the next unjudged item.
    fn current(&self, s: &Session) -> Option<(String, bool)> {
        let campaign = &self.campaigns[&s.campaign].campaign;
        if let Some(last) = s.steps.last() {
            if !last.follow_up && needs_follow_up(campaign, &last.item, &last.ack.verdict) {
                return Some((last.item.clone(), true));
            }
        }
        let judged = s.steps.iter().filter(|st| !st.follow_up).count();
        s.tasks.get(judged).map(|i| (i.clone(), false))
    }

    pub fn next_task(&self, campaign_id: &str, token: &str) -> Result<Task, ServiceError> {
        let s = self.session(token)?;
        if s.campaign != campaign_id {
            return Err(ServiceError::UnknownSession(token.into()));
        }
        let campaign = self.open_campaign(campaign_id)?;
        let (item_id, follow_up) = self.current(s).ok_or(ServiceError::NoTasksRemaining)?;
        let item = find_item(campaign, &item_id).expect("session tasks reference campaign items");
        let position = s.tasks.iter().position(|t| *t == item_id).unwrap_or(0) + 1;
        let original_frame = if follow_up {
            item.original_frame.as_ref().map(|f| self.frame_view(f))
        } else {
            None
        };
        Ok(Task {
            session: token.into(),
            campaign: campaign_id.into(),
            mode: campaign.mode,
            position,
            total: s.tasks.len(),
            item: item_id,
            text: item.text.clone(),
            frame: self.frame_view(&item.frame.frame),
            target: span_view(&item.frame),
            elements: item
                .frame
                .elements
                .iter()
                .map(|e| ElementView {
                    name: e.name.clone(),
                    start: e.span.start(),
                    end: e.span.end(),
                    text: e.span.text().to_string(),
                    core: e.core,
                })
                .collect(),
            follow_up,
            original_frame,
        })
    }

    fn frame_view(&self, name: &str) -> FrameView {
        FrameView {
            name: name.into(),
            definition: self
                .lexicon
                .get(name)
                .map(|d| d.definition.clone())
                .unwrap_or_default(),
        }
    }

    pub fn submit(&mut self, sub: Submission) -> Result<Ack, ServiceError> {
        let s = self.session(&sub.session)?;
        let campaign = self.open_campaign(&s.campaign)?;
        check_verdict(campaign.mode, &sub.verdict, sub.follow_up)?;
        if let Some(done) = s
            .steps
            .iter()
            .find(|st| st.item == sub.item && st.follow_up == sub.follow_up)
        {
            return if done.ack.verdict == sub.verdict {
                Ok(done.ack.clone())
            } else {
                Err(ServiceError::DuplicateConflicting(sub.item))
            };
        }
        let current = self.current(s);
        if current.as_ref() != Some(&(sub.item.clone(), sub.follow_up)) {
            let expected = match current {
                Some((i, true)) => format!("follow-up for {i}"),
                Some((i, false)) => i,
                None => "nothing".into(),
            };
            return Err(ServiceError::OutOfOrderSubmission { expected, got: sub.item });
        }
        let judgment = Judgment {
            evaluator: s.evaluator.clone(),
            item: sub.item,
            verdict: sub.verdict,
            timestamp: self.sequence + 1,
        };
        let session = sub.session;
        self.commit(Event::JudgmentRecorded {
            session: session.clone(),
            follow_up: sub.follow_up,
            judgment,
        })?;
        Ok(self.sessions[&session].steps.last().expect("step recorded").ack.clone())
    }

    pub fn completion_code(&self, token: &str) -> Result<String, ServiceError> {
        let info = self.session_info(token)?;
        if !info.complete {
            return Err(ServiceError::IncompleteSession {
                judged: info.judged,
                total: info.total,
            });
        }
        Ok(completion_code(&self.key, &info.campaign, &info.evaluator))
    }

    pub fn verify_code(&self, campaign: &str, evaluator: &str, code: &str) -> bool {
        verify_code(&self.key, campaign, evaluator, code)
    }

    /// Judgments of completed sessions in journal order. Abandoned
    /// sessions contribute nothing.
    pub fn judgments(&self, campaign_id: &str) -> Vec<Judgment> {
        let complete: BTreeSet<&str> = self
            .sessions
            .iter()
            .filter(|(_, s)| s.campaign == campaign_id && self.current(s).is_none())
            .map(|(t, _)| t.as_str())
            .collect();
        self.judgments
            .iter()
            .filter(|(t, _)| complete.contains(t.as_str()))
            .map(|(_, j)| j.clone())
            .collect()
    }

    pub fn report(&self, campaign_id: &str) -> Result<CorrectnessReport, ServiceError> {
        let entry = self
            .campaigns
            .get(campaign_id)
            .ok_or_else(|| ServiceError::UnknownCampaign(campaign_id.into()))?;
        if !entry.closed {
            return Err(ServiceError::CampaignOpen(campaign_id.into()));
        }
        correctness_report(&entry.campaign, &self.judgments(campaign_id)).map_err(ServiceError::Report)
    }
}

fn find_item<'a>(c: &'a Campaign, id: &str) -> Option<&'a CampaignItem> {
    c.item(id).or_else(|| c.gold_item(id).map(|g| &g.item))
}

fn span_view(f: &FrameInstance) -> SpanView {
    SpanView {
        start: f.target.start(),
        end: f.target.end(),
        text: f.target.text().to_string(),
    }
}

fn needs_follow_up(c: &Campaign, item: &str, verdict: &Verdict) -> bool {
    c.mode == Mode::Correctness
        && *verdict == Verdict::Incorrect
        && find_item(c, item).is_some_and(|i| i.original_frame.as_deref().is_some_and(|o| o != i.frame.frame))
}

fn check_verdict(mode: Mode, v: &Verdict, follow_up: bool) -> Result<(), ServiceError> {
    let ok = if follow_up {
        matches!(v, Verdict::Incorrect | Verdict::IncorrectButOriginalBetter)
    } else {
        v.allowed_in(mode) && *v != Verdict::IncorrectButOriginalBetter
    };
    if ok {
        Ok(())
    } else {
        Err(ServiceError::InvalidVerdict(format!(
            "{v:?} is not accepted in {} mode{}",
            mode.as_str(),
            if follow_up { " follow-ups" } else { "" }
        )))
    }
}

/// Correct gold items, then the items of the evaluator's batches in
/// assignment order, then incorrect gold items. In robustness mode an
/// unassigned evaluator gets every batch. `None` means the evaluator may
/// not take part.
pub fn task_sequence(c: &Campaign, evaluator: &str) -> Option<Vec<String>> {
    let batches: Vec<&str> = match c.assignments.get(evaluator) {
        Some(bs) => bs.iter().map(String::as_str).collect(),
        None if c.mode == Mode::Robustness => c.batches.iter().map(|b| b.id.as_str()).collect(),
        None => return None,
    };
    let mut seen = BTreeSet::new();
    let mut out: Vec<String> = c
        .gold
        .iter()
        .filter(|g| g.expected == Verdict::Correct)
        .map(|g| g.item.id.clone())
        .collect();
    for b in batches.iter().filter_map(|b| c.batch(b)) {
        for i in &b.items {
            if seen.insert(i.as_str()) {
                out.push(i.clone());
            }
        }
    }
    out.extend(
        c.gold
            .iter()
            .filter(|g| g.expected != Verdict::Correct)
            .map(|g| g.item.id.clone()),
    );
    Some(out)
}
