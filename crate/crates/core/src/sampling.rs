//! Sample sizing, frame-frequency distributions and per-frame sampling.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::SamplingError;
use crate::parser::ParseResult;

/// Parameters of Cochran's sample-size formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub population: u64,
    /// Standard-normal critical value for the confidence level.
    pub z: f64,
    pub proportion: f64,
    pub margin: f64,
}

impl SampleSpec {
    /// Spec with p = 0.5 and `z` derived from a two-sided confidence level.
    pub fn from_confidence(population: u64, confidence: f64, margin: f64) -> Result<Self, SamplingError> {
        Ok(SampleSpec {
            population,
            z: z_for_confidence(confidence)?,
            proportion: 0.5,
            margin,
        })
    }

    pub fn validate(&self) -> Result<(), SamplingError> {
        let bad = |m: &str| Err(SamplingError::InvalidSpec(m.to_string()));
        if !(self.margin > 0.0 && self.margin < 1.0) {
            return bad("margin must lie in (0, 1)");
        }
        if !(self.proportion > 0.0 && self.proportion < 1.0) {
            return bad("proportion must lie in (0, 1)");
        }
        if !(self.z > 0.0 && self.z.is_finite()) {
            return bad("z must be positive");
        }
        Ok(())
    }
}

/// Two-sided critical value: 0.90 gives 1.645, 0.99 gives 2.576.
pub fn z_for_confidence(confidence: f64) -> Result<f64, SamplingError> {
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(SamplingError::InvalidSpec(format!(
            "confidence {confidence} must lie in (0, 1)"
        )));
    }
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    Ok(normal.inverse_cdf(1.0 - (1.0 - confidence) / 2.0))
}

/// Sample size without the finite-population correction.
pub fn infinite_sample_size(spec: &SampleSpec) -> f64 {
    spec.z * spec.z * spec.proportion * (1.0 - spec.proportion) / (spec.margin * spec.margin)
}

/// n0 = z²p(1−p)/e², corrected to n0 / (1 + (n0 − 1)/N), rounded down and
/// clamped to [min(1, N), N].
pub fn sample_size(spec: &SampleSpec) -> Result<u64, SamplingError> {
    spec.validate()?;
    let n_pop = spec.population;
    if n_pop == 0 {
        return Ok(0);
    }
    let n0 = infinite_sample_size(spec);
    let n = n0 / (1.0 + (n0 - 1.0) / n_pop as f64);
    Ok((n.floor() as u64).clamp(1, n_pop))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionEntry {
    pub frame: String,
    pub count: usize,
    pub share: f64,
}

/// Frames ranked by the number of sentences they occur in.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct DistributionReport {
    pub sentences: usize,
    pub entries: Vec<DistributionEntry>,
}

impl DistributionReport {
    /// CSV with header `rank,frame,count,share`; share has six decimals.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("rank,frame,count,share\n");
        for (i, e) in self.entries.iter().enumerate() {
            let _ = writeln!(out, "{},{},{},{:.6}", i + 1, e.frame, e.count, e.share);
        }
        out
    }
}

/// Counts, per frame, the sentences containing it at least once. Ties in
/// count are ordered by frame name.
pub fn frame_distribution(parses: &[ParseResult]) -> DistributionReport {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for pr in parses {
        let distinct: HashSet<&str> = pr.frames.iter().map(|f| f.frame.as_str()).collect();
        for f in distinct {
            *counts.entry(f).or_default() += 1;
        }
    }
    let total = parses.len();
    let mut entries: Vec<DistributionEntry> = counts
        .into_iter()
        .map(|(frame, count)| DistributionEntry {
            frame: frame.to_string(),
            count,
            share: count as f64 / total as f64,
        })
        .collect();
    entries.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.frame.cmp(&b.frame)));
    DistributionReport {
        sentences: total,
        entries,
    }
}

/// The first `k` frames of the ranking.
pub fn top_k(report: &DistributionReport, k: usize) -> Vec<String> {
    report.entries.iter().take(k).map(|e| e.frame.clone()).collect()
}

/// 64-bit linear congruential generator (Knuth's MMIX constants).
///
/// `state' = state * 6364136223846793005 + 1442695040888963407 (mod 2^64)`;
/// each draw steps once and returns the high 32 bits of the new state.
/// Bounded draws use rejection sampling so they are exactly uniform.
#[derive(Debug, Clone)]
pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    pub const MULTIPLIER: u64 = 6364136223846793005;
    pub const INCREMENT: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Lcg64 { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self
            .state
            .wrapping_mul(Self::MULTIPLIER)
            .wrapping_add(Self::INCREMENT);
        (self.state >> 32) as u32
    }

    /// Uniform integer in `0..bound`. `bound` must be in `1..=2^32`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0 && bound <= 1 << 32, "bound out of range");
        let space = 1u64 << 32;
        let limit = space - space % bound;
        loop {
            let r = self.next_u32() as u64;
            if r < limit {
                return r % bound;
            }
        }
    }
}

/// 64-bit FNV-1a.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in bytes {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Seed used for one frame: the run seed XOR the FNV-1a hash of its name.
pub fn frame_seed(seed: u64, frame: &str) -> u64 {
    seed ^ fnv1a64(frame.as_bytes())
}

/// Draws up to `n` distinct sentences containing `frame`, uniformly and
/// without replacement (partial Fisher-Yates over the candidates in input
/// order). Returns every candidate, shuffled, when fewer than `n` exist.
pub fn sample_per_frame(frame: &str, parses: &[ParseResult], n: usize, seed: u64) -> Vec<String> {
    let mut seen = HashSet::new();
    let mut candidates: Vec<&str> = parses
        .iter()
        .filter(|pr| pr.frames.iter().any(|f| f.frame == frame))
        .map(|pr| pr.sentence.id.as_str())
        .filter(|id| seen.insert(*id))
        .collect();
    let take = n.min(candidates.len());
    let mut rng = Lcg64::new(frame_seed(seed, frame));
    for i in 0..take {
        let j = i + rng.below((candidates.len() - i) as u64) as usize;
        candidates.swap(i, j);
    }
    candidates.truncate(take);
    candidates.into_iter().map(str::to_string).collect()
}

/// One line of a sample manifest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleEntry {
    pub frame: String,
    pub sentence_id: String,
}

/// Samples every listed frame independently; output is grouped by frame in
/// the given order.
pub fn sample_frames(frames: &[String], parses: &[ParseResult], n: usize, seed: u64) -> Vec<SampleEntry> {
    frames
        .par_iter()
        .map(|f| {
            sample_per_frame(f, parses, n, seed)
                .into_iter()
                .map(|sentence_id| SampleEntry {
                    frame: f.clone(),
                    sentence_id,
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{FrameInstance, FrameSource, Sentence, Span};

    fn spec99(n: u64) -> SampleSpec {
        SampleSpec {
            population: n,
            z: 2.5758,
            proportion: 0.5,
            margin: 0.05,
        }
    }

    #[test]
    fn table_sizes() {
        for (n, expected) in [(5981, 597), (3306, 552), (44554, 653), (4451, 577)] {
            assert_eq!(sample_size(&spec99(n)).unwrap(), expected, "N={n}");
        }
    }

    // n0 = 2.5758^2 * 0.25 / 0.0025 = 663.47; 663.47 / (1 + 662.47/10) = 9.86
    #[test]
    fn hand_computed_small_population() {
        assert_eq!(sample_size(&spec99(10)).unwrap(), 9);
        assert_eq!(sample_size(&spec99(1)).unwrap(), 1);
        assert_eq!(sample_size(&spec99(0)).unwrap(), 0);
    }

    #[test]
    fn large_population_approaches_n0() {
        let n = sample_size(&spec99(1_000_000_000)).unwrap() as f64;
        assert!((n - infinite_sample_size(&spec99(1))).abs() <= 1.0);
    }

    #[test]
    fn invalid_specs() {
        let mut s = spec99(10);
        s.margin = 0.0;
        assert!(sample_size(&s).is_err());
        s = spec99(10);
        s.proportion = 1.0;
        assert!(sample_size(&s).is_err());
        s = spec99(10);
        s.z = -1.0;
        assert!(sample_size(&s).is_err());
    }

    #[test]
    fn confidence_levels() {
        assert!((z_for_confidence(0.90).unwrap() - 1.6449).abs() < 1e-3);
        assert!((z_for_confidence(0.99).unwrap() - 2.5758).abs() < 1e-3);
        assert!(z_for_confidence(1.0).is_err());
        let s = SampleSpec::from_confidence(5981, 0.99, 0.05).unwrap();
        assert_eq!(sample_size(&s).unwrap(), 597);
    }

    fn parse(id: &str, frames: &[&str]) -> ParseResult {
        let text = "one two three four";
        let sentence = Sentence {
            id: id.into(),
            doc_id: "d".into(),
            index: 0,
            text: text.into(),
            tokens: Vec::new(),
        };
        let fs = frames
            .iter()
            .enumerate()
            .map(|(i, f)| FrameInstance {
                frame: f.to_string(),
                target: Span::new(text, i * 4, i * 4 + 3).unwrap(),
                elements: Vec::new(),
                source: FrameSource::Baseline,
                sentence_id: id.into(),
            })
            .collect();
        ParseResult {
            sentence,
            frames: fs,
        }
    }

    #[test]
    fn distribution_counts_sentences() {
        let parses = vec![parse("a", &["Using", "Using"]), parse("b", &["Using"]), parse("c", &["Event"])];
        let r = frame_distribution(&parses);
        assert_eq!(r.entries[0].frame, "Using");
        assert_eq!(r.entries[0].count, 2);
        assert!((r.entries[0].share - 2.0 / 3.0).abs() < 1e-12);
        assert!(frame_distribution(&[]).entries.is_empty());
    }

    #[test]
    fn top_k_ties_alphabetical() {
        let parses = vec![parse("a", &["Zeta", "Beta"]), parse("b", &["Alpha"]), parse("c", &["Alpha"])];
        let r = frame_distribution(&parses);
        assert_eq!(top_k(&r, 2), ["Alpha", "Beta"]);
        assert!(top_k(&r, 0).is_empty());
        assert_eq!(top_k(&r, 10).len(), 3);
    }

    #[test]
    fn csv_output() {
        let r = frame_distribution(&[parse("a", &["Using"]), parse("b", &[])]);
        assert_eq!(r.to_csv(), "rank,frame,count,share\n1,Using,1,0.500000\n");
    }

    #[test]
    fn lcg_reference_values() {
        let mut r = Lcg64::new(0);
        // 0 * a + c = c; high half of 1442695040888963407.
        assert_eq!(r.next_u32(), (1442695040888963407u64 >> 32) as u32);
        let mut a = Lcg64::new(42);
        let mut b = Lcg64::new(42);
        assert!((0..100).all(|_| a.below(7) == b.below(7)));
    }

    #[test]
    fn bounded_draws_cover_range() {
        let mut r = Lcg64::new(7);
        let mut seen = [false; 5];
        for _ in 0..200 {
            seen[r.below(5) as usize] = true;
        }
        assert!(seen.iter().all(|s| *s));
    }

    #[test]
    fn per_frame_sampling() {
        let parses: Vec<_> = (0..20).map(|i| parse(&format!("s{i}"), &["Using"])).collect();
        let a = sample_per_frame("Using", &parses, 10, 1);
        assert_eq!(a.len(), 10);
        assert_eq!(a, sample_per_frame("Using", &parses, 10, 1));
        assert_eq!(a.iter().collect::<HashSet<_>>().len(), 10);
        assert!(sample_per_frame("Using", &parses, 0, 1).is_empty());
        assert!(sample_per_frame("Event", &parses, 5, 1).is_empty());
        assert_eq!(sample_per_frame("Using", &parses, 50, 1).len(), 20);
    }

    #[test]
    fn manifest_is_grouped_by_frame() {
        let parses = vec![parse("a", &["Using", "Event"]), parse("b", &["Event"])];
        let m = sample_frames(&["Event".to_string(), "Using".to_string()], &parses, 5, 3);
        let frames: Vec<_> = m.iter().map(|e| e.frame.as_str()).collect();
        assert_eq!(frames, ["Event", "Event", "Using"]);
    }
}
