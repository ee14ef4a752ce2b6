//! Study protocols: judgments, batch assignment under overlap limits, gold
//! checks, majority-vote and raw-vote correctness reports, and annotator
//! agreement.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::EvaluationError;
use crate::model::FrameInstance;
use crate::sampling::Lcg64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Two annotators mark frames valid, invalid or needing modification.
    Annotation,
    /// Three evaluators per batch; a sentence is correct on a 2-of-3 vote.
    Correctness,
    /// Every evaluator judges every item; raw votes are reported.
    Robustness,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Annotation => "annotation",
            Mode::Correctness => "correctness",
            Mode::Robustness => "robustness",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Valid,
    Invalid,
    /// Frame should be replaced by the suggested one.
    Modify(String),
    Correct,
    Incorrect,
    /// Incorrect, and the frame before tailoring would have fit better.
    IncorrectButOriginalBetter,
}

impl Verdict {
    pub fn allowed_in(&self, mode: Mode) -> bool {
        match self {
            Verdict::Valid | Verdict::Invalid | Verdict::Modify(_) => mode == Mode::Annotation,
            Verdict::Correct | Verdict::Incorrect => mode != Mode::Annotation,
            Verdict::IncorrectButOriginalBetter => mode == Mode::Correctness,
        }
    }

    pub fn is_correct(&self) -> bool {
        matches!(self, Verdict::Correct)
    }

    pub fn is_incorrect(&self) -> bool {
        matches!(self, Verdict::Incorrect | Verdict::IncorrectButOriginalBetter)
    }
}

/// A sentence with one frame to be judged.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignItem {
    pub id: String,
    pub sentence_id: String,
    pub text: String,
    pub frame: FrameInstance,
    /// Frame name before tailoring, shown on an Incorrect follow-up.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub original_frame: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldItem {
    pub item: CampaignItem,
    /// `Correct` for the obviously right frame, `Incorrect` for the
    /// obviously wrong one.
    pub expected: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Batch {
    pub id: String,
    pub items: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Campaign {
    pub id: String,
    pub mode: Mode,
    pub items: Vec<CampaignItem>,
    pub batches: Vec<Batch>,
    /// Evaluator id to the ids of the batches they judge.
    #[serde(default)]
    pub assignments: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub gold: Vec<GoldItem>,
}

impl Campaign {
    pub fn item(&self, id: &str) -> Option<&CampaignItem> {
        self.items.iter().find(|i| i.id == id)
    }

    pub fn gold_item(&self, id: &str) -> Option<&GoldItem> {
        self.gold.iter().find(|g| g.item.id == id)
    }

    pub fn is_gold(&self, id: &str) -> bool {
        self.gold_item(id).is_some()
    }

    pub fn batch(&self, id: &str) -> Option<&Batch> {
        self.batches.iter().find(|b| b.id == id)
    }

    /// Evaluators whose batches include `item`.
    pub fn evaluators_for(&self, item: &str) -> Vec<&str> {
        self.assignments
            .iter()
            .filter(|(_, bs)| {
                bs.iter()
                    .filter_map(|b| self.batch(b))
                    .any(|b| b.items.iter().any(|i| i == item))
            })
            .map(|(e, _)| e.as_str())
            .collect()
    }

    /// Checks references and, in correctness mode, that no batch holds two
    /// sentences for the same frame.
    pub fn validate(&self) -> Result<(), EvaluationError> {
        let bad = |m: String| Err(EvaluationError::InvalidCampaign(m));
        let mut ids = BTreeSet::new();
        for id in self.items.iter().map(|i| &i.id).chain(self.gold.iter().map(|g| &g.item.id)) {
            if !ids.insert(id) {
                return bad(format!("item {id} defined twice"));
            }
        }
        for g in &self.gold {
            if !matches!(g.expected, Verdict::Correct | Verdict::Incorrect) {
                return bad(format!("gold item {} must expect correct or incorrect", g.item.id));
            }
        }
        for b in &self.batches {
            let mut frames = BTreeSet::new();
            for i in &b.items {
                let Some(item) = self.item(i) else {
                    return bad(format!("batch {} references unknown item {i}", b.id));
                };
                if self.mode == Mode::Correctness && !frames.insert(item.frame.frame.as_str()) {
                    return bad(format!("batch {} has two sentences for frame {}", b.id, item.frame.frame));
                }
            }
        }
        for (e, bs) in &self.assignments {
            if let Some(b) = bs.iter().find(|b| self.batch(b).is_none()) {
                return bad(format!("evaluator {e} assigned unknown batch {b}"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Judgment {
    pub evaluator: String,
    pub item: String,
    pub verdict: Verdict,
    #[serde(default)]
    pub timestamp: u64,
}

/// Collapses a judgment log to one verdict per (evaluator, item); later
/// entries win.
pub fn latest_verdicts(judgments: &[Judgment]) -> BTreeMap<(String, String), Verdict> {
    let mut out = BTreeMap::new();
    for j in judgments {
        out.insert((j.evaluator.clone(), j.item.clone()), j.verdict.clone());
    }
    out
}

/// True iff at least `threshold` votes are `Correct`.
pub fn majority_correct(votes: &[Verdict], threshold: usize) -> bool {
    votes.iter().filter(|v| v.is_correct()).count() >= threshold
}

/// Passes iff every gold item was judged as expected.
pub fn gold_check(evaluator: &str, judgments: &[Judgment], gold: &[GoldItem]) -> Result<bool, EvaluationError> {
    let latest = latest_verdicts(judgments);
    let mut pass = true;
    for g in gold {
        let v = latest
            .get(&(evaluator.to_string(), g.item.id.clone()))
            .ok_or_else(|| EvaluationError::MissingGoldJudgment {
                evaluator: evaluator.to_string(),
                item: g.item.id.clone(),
            })?;
        let ok = match g.expected {
            Verdict::Correct => v.is_correct(),
            _ => v.is_incorrect(),
        };
        pass &= ok;
    }
    Ok(pass)
}

/// Integer percentage, rounded half up.
pub fn percent(correct: u64, total: u64) -> u64 {
    if total == 0 {
        0
    } else {
        (200 * correct + total) / (2 * total)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameScore {
    pub frame: String,
    pub correct: u64,
    pub incorrect: u64,
    /// Integer percentage of `correct / (correct + incorrect)`.
    pub ratio: u64,
    /// Votes saying the frame before tailoring fit better.
    pub original_better: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrectnessReport {
    pub campaign: String,
    pub mode: Mode,
    /// Sorted by frame name.
    pub frames: Vec<FrameScore>,
    pub correct: u64,
    pub total: u64,
    pub overall: u64,
    /// Evaluators dropped for failing the gold check.
    pub excluded_evaluators: Vec<String>,
}

impl CorrectnessReport {
    pub fn frame(&self, name: &str) -> Option<&FrameScore> {
        self.frames.iter().find(|f| f.frame == name)
    }

    /// CSV `frame,correct,incorrect,ratio,original_better`, highest ratio
    /// first.
    pub fn to_csv(&self) -> String {
        let mut rows: Vec<&FrameScore> = self.frames.iter().collect();
        rows.sort_by(|a, b| b.ratio.cmp(&a.ratio).then_with(|| a.frame.cmp(&b.frame)));
        let mut out = String::from("frame,correct,incorrect,ratio,original_better\n");
        for r in rows {
            let _ = writeln!(out, "{},{},{},{},{}", r.frame, r.correct, r.incorrect, r.ratio, r.original_better);
        }
        let _ = writeln!(out, "overall,{},{},{},", self.correct, self.total - self.correct, self.overall);
        out
    }
}

/// Aggregates a correctness or robustness campaign.
///
/// Evaluators failing the gold check are excluded first. Correctness mode
/// takes a 2-of-3 majority per sentence and reports sentences per frame;
/// robustness mode reports raw votes per frame. Gold items never count.
pub fn correctness_report(campaign: &Campaign, judgments: &[Judgment]) -> Result<CorrectnessReport, EvaluationError> {
    if campaign.mode == Mode::Annotation {
        return Err(EvaluationError::ModeMismatch(campaign.mode.as_str().into()));
    }
    let latest = latest_verdicts(judgments);
    if let Some(((e, i), _)) = latest.iter().find(|(_, v)| !v.allowed_in(campaign.mode)) {
        return Err(EvaluationError::ModeMismatch(format!(
            "{} (evaluator {e}, item {i})",
            campaign.mode.as_str()
        )));
    }
    let evaluators: BTreeSet<&str> = latest.keys().map(|(e, _)| e.as_str()).collect();
    let mut excluded = Vec::new();
    if !campaign.gold.is_empty() {
        for e in &evaluators {
            if !gold_check(e, judgments, &campaign.gold)? {
                excluded.push(e.to_string());
            }
        }
    }
    let kept = |e: &str| !excluded.iter().any(|x| x == e);

    let mut by_item: HashMap<&str, Vec<&Verdict>> = HashMap::new();
    for ((e, i), v) in &latest {
        if kept(e) && !campaign.is_gold(i) {
            by_item.entry(i.as_str()).or_default().push(v);
        }
    }

    let mut scores: BTreeMap<&str, FrameScore> = BTreeMap::new();
    for item in &campaign.items {
        let votes = by_item.get(item.id.as_str()).cloned().unwrap_or_default();
        let expected: Vec<&str> = campaign
            .evaluators_for(&item.id)
            .into_iter()
            .filter(|e| kept(e))
            .collect();
        let missing = expected
            .iter()
            .find(|e| !latest.contains_key(&(e.to_string(), item.id.clone())));
        if let Some(e) = missing {
            return Err(EvaluationError::IncompleteCampaign(format!("{e} has not judged {}", item.id)));
        }
        if votes.is_empty() {
            return Err(EvaluationError::IncompleteCampaign(format!("no votes for {}", item.id)));
        }
        let name = item.frame.frame.as_str();
        let score = scores.entry(name).or_insert_with(|| FrameScore {
            frame: name.to_string(),
            correct: 0,
            incorrect: 0,
            ratio: 0,
            original_better: 0,
        });
        score.original_better += votes
            .iter()
            .filter(|v| matches!(v, Verdict::IncorrectButOriginalBetter))
            .count() as u64;
        match campaign.mode {
            Mode::Correctness => {
                let owned: Vec<Verdict> = votes.iter().map(|v| (*v).clone()).collect();
                if majority_correct(&owned, 2) {
                    score.correct += 1;
                } else {
                    score.incorrect += 1;
                }
            }
            _ => {
                let c = votes.iter().filter(|v| v.is_correct()).count() as u64;
                score.correct += c;
                score.incorrect += votes.len() as u64 - c;
            }
        }
    }
    let mut frames: Vec<FrameScore> = scores.into_values().collect();
    for f in &mut frames {
        f.ratio = percent(f.correct, f.correct + f.incorrect);
    }
    let correct = frames.iter().map(|f| f.correct).sum();
    let total = frames.iter().map(|f| f.correct + f.incorrect).sum();
    Ok(CorrectnessReport {
        campaign: campaign.id.clone(),
        mode: campaign.mode,
        frames,
        correct,
        total,
        overall: percent(correct, total),
        excluded_evaluators: excluded,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Agreement {
    pub agreement: f64,
    pub matching: usize,
    pub total: usize,
    /// Items the two annotators judged differently.
    pub disagreements: Vec<String>,
}

/// Share of items on which two annotators gave the same verdict.
pub fn annotation_agreement(a: &[Judgment], b: &[Judgment]) -> Result<Agreement, EvaluationError> {
    let collapse = |js: &[Judgment]| -> BTreeMap<String, Verdict> {
        js.iter().map(|j| (j.item.clone(), j.verdict.clone())).collect()
    };
    let (ma, mb) = (collapse(a), collapse(b));
    if !ma.keys().eq(mb.keys()) {
        return Err(EvaluationError::ItemSetMismatch);
    }
    let disagreements: Vec<String> = ma
        .iter()
        .filter(|(k, v)| mb[*k] != **v)
        .map(|(k, _)| k.clone())
        .collect();
    let total = ma.len();
    let matching = total - disagreements.len();
    Ok(Agreement {
        agreement: if total == 0 { 1.0 } else { matching as f64 / total as f64 },
        matching,
        total,
        disagreements,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchLimits {
    pub per_batch: usize,
    /// Most batches any two evaluators may share.
    pub pair_limit: usize,
    /// Most batches any three evaluators may share.
    pub triple_limit: usize,
}

impl Default for BatchLimits {
    fn default() -> Self {
        BatchLimits {
            per_batch: 3,
            pair_limit: 2,
            triple_limit: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchAssignment {
    pub batch: String,
    pub evaluators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub evaluators: Vec<String>,
    pub batches: Vec<BatchAssignment>,
}

impl Assignment {
    /// Most batches any evaluator may take: ⌈batches · per_batch / evaluators⌉.
    pub fn load_cap(&self, per_batch: usize) -> usize {
        load_cap(self.batches.len(), per_batch, self.evaluators.len())
    }

    /// Evaluator to assigned batch ids.
    pub fn by_evaluator(&self) -> BTreeMap<String, Vec<String>> {
        let mut out: BTreeMap<String, Vec<String>> =
            self.evaluators.iter().map(|e| (e.clone(), Vec::new())).collect();
        for b in &self.batches {
            for e in &b.evaluators {
                out.entry(e.clone()).or_default().push(b.batch.clone());
            }
        }
        out
    }
}

fn load_cap(batches: usize, per_batch: usize, evaluators: usize) -> usize {
    if evaluators == 0 {
        0
    } else {
        (batches * per_batch).div_ceil(evaluators)
    }
}

const NODE_BUDGET: u64 = 200_000;
const RESTARTS: u64 = 20;

struct Search<'a> {
    n: usize,
    m: usize,
    k: usize,
    cap: usize,
    limits: &'a BatchLimits,
    load: Vec<usize>,
    pair: Vec<usize>,
    triple: HashMap<(usize, usize, usize), usize>,
    chosen: Vec<Vec<usize>>,
    nodes: u64,
    rng: Lcg64,
}

impl Search<'_> {
    fn pair_ix(&self, a: usize, b: usize) -> usize {
        a.min(b) * self.n + a.max(b)
    }

    fn fits(&self, cur: &[usize], e: usize) -> bool {
        if self.load[e] >= self.cap {
            return false;
        }
        for (x, &a) in cur.iter().enumerate() {
            if self.pair[self.pair_ix(a, e)] >= self.limits.pair_limit {
                return false;
            }
            for &b in &cur[x + 1..] {
                if self.triple.get(&triple_key(a, b, e)).copied().unwrap_or(0) >= self.limits.triple_limit {
                    return false;
                }
            }
        }
        true
    }

    fn apply(&mut self, cur: &[usize], e: usize, add: bool) {
        let bump = |v: &mut usize| if add { *v += 1 } else { *v -= 1 };
        bump(&mut self.load[e]);
        for (x, &a) in cur.iter().enumerate() {
            let p = self.pair_ix(a, e);
            bump(&mut self.pair[p]);
            for &b in &cur[x + 1..] {
                bump(self.triple.entry(triple_key(a, b, e)).or_default());
            }
        }
    }

    /// `Some(false)` means the subtree is exhausted; `None` means the node
    /// budget ran out.
    fn solve(&mut self, b: usize, cur: &mut Vec<usize>) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > NODE_BUDGET {
            return None;
        }
        if b == self.m {
            return Some(true);
        }
        if cur.len() == self.k {
            self.chosen.push(cur.clone());
            let r = self.solve(b + 1, &mut Vec::with_capacity(self.k));
            if r != Some(true) {
                self.chosen.pop();
            }
            return r;
        }
        let remaining = (self.m - b) * self.k - cur.len();
        let capacity: usize = self.load.iter().map(|l| self.cap - l).sum();
        if capacity < remaining {
            return Some(false);
        }
        // Members of a batch are chosen in increasing index order.
        let cands: Vec<usize> = (cur.last().map_or(0, |l| l + 1)..self.n)
            .filter(|&e| self.fits(cur, e))
            .collect();
        let mut keyed: Vec<(usize, u32, usize)> = cands
            .into_iter()
            .map(|e| (self.load[e], self.rng.next_u32(), e))
            .collect();
        keyed.sort_unstable();
        for (_, _, e) in keyed {
            self.apply(cur, e, true);
            cur.push(e);
            let r = self.solve(b, cur);
            cur.pop();
            self.apply(cur, e, false);
            if r != Some(false) {
                return r;
            }
        }
        Some(false)
    }
}

fn triple_key(a: usize, b: usize, c: usize) -> (usize, usize, usize) {
    let mut t = [a, b, c];
    t.sort_unstable();
    (t[0], t[1], t[2])
}

/// Assigns `limits.per_batch` evaluators to every batch so that no
/// evaluator exceeds the balanced load and no pair or triple of evaluators
/// shares more batches than allowed. Randomized backtracking with restarts;
/// the result depends only on the inputs and `seed`.
pub fn assign_batches(
    evaluators: &[String],
    batches: &[String],
    limits: &BatchLimits,
    seed: u64,
) -> Result<Assignment, EvaluationError> {
    let (n, m, k) = (evaluators.len(), batches.len(), limits.per_batch);
    let distinct: BTreeSet<&String> = evaluators.iter().collect();
    if distinct.len() != n {
        return Err(EvaluationError::InvalidCampaign("duplicate evaluator id".into()));
    }
    if m > 0 && (k == 0 || n < k) {
        return Err(EvaluationError::Infeasible(format!(
            "{n} evaluators cannot fill batches of {k}"
        )));
    }
    let cap = load_cap(m, k, n);
    for attempt in 0..RESTARTS {
        let mut s = Search {
            n,
            m,
            k,
            cap,
            limits,
            load: vec![0; n],
            pair: vec![0; n * n],
            triple: HashMap::new(),
            chosen: Vec::with_capacity(m),
            nodes: 0,
            rng: Lcg64::new(seed ^ attempt.wrapping_mul(0x9e3779b97f4a7c15)),
        };
        match s.solve(0, &mut Vec::with_capacity(k)) {
            Some(true) => {
                return Ok(Assignment {
                    evaluators: evaluators.to_vec(),
                    batches: batches
                        .iter()
                        .zip(s.chosen)
                        .map(|(b, es)| BatchAssignment {
                            batch: b.clone(),
                            evaluators: es.into_iter().map(|e| evaluators[e].clone()).collect(),
                        })
                        .collect(),
                });
            }
            Some(false) => break,
            None => continue,
        }
    }
    Err(EvaluationError::Infeasible(format!(
        "no assignment of {m} batches of {k} over {n} evaluators within limits (pair {}, triple {})",
        limits.pair_limit, limits.triple_limit
    )))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Violation {
    BatchSize { batch: String, size: usize },
    RepeatedEvaluator { batch: String, evaluator: String },
    UnknownEvaluator { batch: String, evaluator: String },
    Load { evaluator: String, load: usize, cap: usize },
    Pair { evaluators: [String; 2], shared: usize },
    Triple { evaluators: [String; 3], shared: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

/// Independent brute-force check of an assignment: batch sizes, loads, and
/// the shared-batch count of every pair and every triple of evaluators.
pub fn verify_assignment(a: &Assignment, limits: &BatchLimits) -> Verification {
    let mut violations = Vec::new();
    let known: BTreeSet<&str> = a.evaluators.iter().map(String::as_str).collect();
    let members: Vec<BTreeSet<&str>> = a
        .batches
        .iter()
        .map(|b| b.evaluators.iter().map(String::as_str).collect())
        .collect();
    for b in &a.batches {
        if b.evaluators.len() != limits.per_batch {
            violations.push(Violation::BatchSize {
                batch: b.batch.clone(),
                size: b.evaluators.len(),
            });
        }
        for (i, e) in b.evaluators.iter().enumerate() {
            if b.evaluators[..i].contains(e) {
                violations.push(Violation::RepeatedEvaluator {
                    batch: b.batch.clone(),
                    evaluator: e.clone(),
                });
            }
            if !known.contains(e.as_str()) {
                violations.push(Violation::UnknownEvaluator {
                    batch: b.batch.clone(),
                    evaluator: e.clone(),
                });
            }
        }
    }
    let cap = a.load_cap(limits.per_batch);
    let es = &a.evaluators;
    for e in es {
        let load = members.iter().filter(|s| s.contains(e.as_str())).count();
        if load > cap {
            violations.push(Violation::Load {
                evaluator: e.clone(),
                load,
                cap,
            });
        }
    }
    for i in 0..es.len() {
        for j in i + 1..es.len() {
            let shared = members
                .iter()
                .filter(|s| s.contains(es[i].as_str()) && s.contains(es[j].as_str()))
                .count();
            if shared > limits.pair_limit {
                violations.push(Violation::Pair {
                    evaluators: [es[i].clone(), es[j].clone()],
                    shared,
                });
            }
            for l in j + 1..es.len() {
                let shared = members
                    .iter()
                    .filter(|s| {
                        s.contains(es[i].as_str()) && s.contains(es[j].as_str()) && s.contains(es[l].as_str())
                    })
                    .count();
                if shared > limits.triple_limit {
                    violations.push(Violation::Triple {
                        evaluators: [es[i].clone(), es[j].clone(), es[l].clone()],
                        shared,
                    });
                }
            }
        }
    }
    Verification {
        ok: violations.is_empty(),
        violations,
    }
}
