//! Frame definitions, lexical units and frame-element realization patterns.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::LexiconError;
use crate::model::LuPos;

const BUNDLED_LEXICON: &str = include_str!("../data/lexicon.json");

/// A lemma paired with a part of speech, written `lemma.pos` (`use.v`).
/// Multiword lemmas keep their inner space (`command line.n`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct LexicalUnit {
    pub lemma: String,
    pub pos: LuPos,
}

impl FromStr for LexicalUnit {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lemma, pos) = s
            .rsplit_once('.')
            .ok_or_else(|| format!("lexical unit {s:?} lacks a .pos suffix"))?;
        let lemma = lemma.trim();
        if lemma.is_empty() {
            return Err(format!("lexical unit {s:?} has an empty lemma"));
        }
        let pos = pos
            .parse::<LuPos>()
            .map_err(|_| format!("lexical unit {s:?} has unknown part of speech {pos:?}"))?;
        Ok(LexicalUnit {
            lemma: lemma.to_lowercase(),
            pos,
        })
    }
}

impl TryFrom<String> for LexicalUnit {
    type Error = String;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<LexicalUnit> for String {
    fn from(lu: LexicalUnit) -> String {
        lu.to_string()
    }
}

impl fmt::Display for LexicalUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.lemma, self.pos.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Frame-element realization rule.
///
/// * `NP`: longest run of determiner/adjective/noun/identifier/number tokens,
///   or a lone pronoun.
/// * `VP`: run of auxiliary/modal/verb tokens, allowing interleaved adverbs.
/// * `<clause>`: the rest of the side, up to a comma or semicolon.
/// * `<word> <clause>`: the marker word followed by a clause; additionally
///   stops at coordinating conjunctions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum PatternExpr {
    NounPhrase,
    VerbPhrase,
    Clause,
    Marked(String),
}

impl FromStr for PatternExpr {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "NP" => Ok(PatternExpr::NounPhrase),
            "VP" => Ok(PatternExpr::VerbPhrase),
            "<clause>" => Ok(PatternExpr::Clause),
            _ => {
                let marker = s
                    .strip_suffix("<clause>")
                    .map(str::trim)
                    .filter(|m| !m.is_empty() && m.chars().all(|c| c.is_alphabetic()))
                    .ok_or_else(|| format!("unknown pattern expression {s:?}"))?;
                Ok(PatternExpr::Marked(marker.to_lowercase()))
            }
        }
    }
}

impl TryFrom<String> for PatternExpr {
    type Error = String;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<PatternExpr> for String {
    fn from(p: PatternExpr) -> String {
        p.to_string()
    }
}

impl fmt::Display for PatternExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternExpr::NounPhrase => f.write_str("NP"),
            PatternExpr::VerbPhrase => f.write_str("VP"),
            PatternExpr::Clause => f.write_str("<clause>"),
            PatternExpr::Marked(m) => write!(f, "{m} <clause>"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pattern {
    pub element: String,
    pub side: Side,
    #[serde(rename = "match")]
    pub expr: PatternExpr,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementDef {
    pub name: String,
    #[serde(default)]
    pub core: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameDef {
    pub name: String,
    #[serde(default)]
    pub definition: String,
    #[serde(default)]
    pub elements: Vec<ElementDef>,
    #[serde(default)]
    pub lexical_units: Vec<LexicalUnit>,
    #[serde(default)]
    pub patterns: Vec<Pattern>,
}

impl FrameDef {
    pub fn element(&self, name: &str) -> Option<&ElementDef> {
        self.elements.iter().find(|e| e.name == name)
    }

    pub fn has_lexical_unit(&self, lemma: &str, pos: LuPos) -> bool {
        self.lexical_units
            .iter()
            .any(|lu| lu.pos == pos && lu.lemma == lemma)
    }
}

#[derive(Serialize, Deserialize)]
struct LexiconFile {
    frames: Vec<FrameDef>,
}

/// Validated set of frame definitions. Frame order is the disambiguation
/// priority when several frames share a lexical unit.
#[derive(Debug, Clone)]
pub struct FrameLexicon {
    frames: Vec<FrameDef>,
    by_name: HashMap<String, usize>,
    by_unit: HashMap<(String, LuPos), Vec<usize>>,
    max_unit_words: usize,
}

impl PartialEq for FrameLexicon {
    fn eq(&self, other: &Self) -> bool {
        self.frames == other.frames
    }
}

impl Eq for FrameLexicon {}

impl Default for FrameLexicon {
    fn default() -> Self {
        FrameLexicon::from_frames(Vec::new()).expect("empty lexicon is valid")
    }
}

impl FrameLexicon {
    pub fn from_frames(frames: Vec<FrameDef>) -> Result<Self, LexiconError> {
        let mut by_name = HashMap::new();
        let mut by_unit: HashMap<(String, LuPos), Vec<usize>> = HashMap::new();
        let mut max_unit_words = 1;
        for (idx, frame) in frames.iter().enumerate() {
            if frame.name.trim().is_empty() {
                return Err(LexiconError::Malformed(format!("frame #{idx} has no name")));
            }
            if by_name.insert(frame.name.clone(), idx).is_some() {
                return Err(LexiconError::Malformed(format!(
                    "duplicate frame {:?}",
                    frame.name
                )));
            }
            let mut seen = HashSet::new();
            for el in &frame.elements {
                if el.name.trim().is_empty() {
                    return Err(LexiconError::Malformed(format!(
                        "frame {:?} declares an unnamed element",
                        frame.name
                    )));
                }
                if !seen.insert(el.name.as_str()) {
                    return Err(LexiconError::Malformed(format!(
                        "frame {:?} declares element {:?} twice",
                        frame.name, el.name
                    )));
                }
            }
            for pat in &frame.patterns {
                if !seen.contains(pat.element.as_str()) {
                    return Err(LexiconError::Malformed(format!(
                        "pattern in frame {:?} references undeclared element {:?}",
                        frame.name, pat.element
                    )));
                }
            }
            for lu in &frame.lexical_units {
                max_unit_words = max_unit_words.max(lu.lemma.split_whitespace().count());
                let slot = by_unit.entry((lu.lemma.clone(), lu.pos)).or_default();
                if !slot.contains(&idx) {
                    slot.push(idx);
                }
            }
        }
        Ok(FrameLexicon {
            frames,
            by_name,
            by_unit,
            max_unit_words,
        })
    }

    pub fn from_json_str(json: &str) -> Result<Self, LexiconError> {
        let file: LexiconFile =
            serde_json::from_str(json).map_err(|e| LexiconError::Malformed(e.to_string()))?;
        FrameLexicon::from_frames(file.frames)
    }

    /// The lexicon shipped with the crate.
    pub fn bundled() -> Self {
        FrameLexicon::from_json_str(BUNDLED_LEXICON).expect("bundled lexicon is valid")
    }

    pub fn to_json(&self) -> String {
        let file = LexiconFile {
            frames: self.frames.clone(),
        };
        serde_json::to_string_pretty(&file).expect("lexicon serializes")
    }

    pub fn frames(&self) -> &[FrameDef] {
        &self.frames
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&FrameDef> {
        self.by_name.get(name).map(|&i| &self.frames[i])
    }

    pub fn contains(&self, name: &str) -> bool {
        self.by_name.contains_key(name)
    }

    /// Frames evoked by `lemma.pos`, in priority order.
    pub fn frames_for(&self, lemma: &str, pos: LuPos) -> Vec<&FrameDef> {
        let mut hits: Vec<usize> = self
            .by_unit
            .get(&(lemma.to_string(), pos))
            .cloned()
            .unwrap_or_default();
        hits.sort_by(|&a, &b| a.cmp(&b).then_with(|| self.frames[a].name.cmp(&self.frames[b].name)));
        hits.into_iter().map(|i| &self.frames[i]).collect()
    }

    /// Longest multiword lexical unit, in words.
    pub fn max_unit_words(&self) -> usize {
        self.max_unit_words
    }

    /// Returns a lexicon with `frame` appended, or unchanged if a frame of
    /// that name already exists.
    pub fn with_frame(&self, frame: FrameDef) -> Result<Self, LexiconError> {
        if self.contains(&frame.name) {
            return Ok(self.clone());
        }
        let mut frames = self.frames.clone();
        frames.push(frame);
        FrameLexicon::from_frames(frames)
    }
}

pub fn load_lexicon(path: impl AsRef<Path>) -> Result<FrameLexicon, LexiconError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| LexiconError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    FrameLexicon::from_json_str(&text)
}
