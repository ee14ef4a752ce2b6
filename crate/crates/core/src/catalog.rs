//! Tailoring catalog: per-frame status, execution verbs and the element
//! mapping used when a frame is rewritten to `Execution`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::CatalogError;
use crate::lexicon::{ElementDef, FrameDef, FrameLexicon};

pub const EXECUTION: &str = "Execution";
pub const EXECUTION_ELEMENTS: [&str; 3] = ["Executor", "Target", "Purpose"];
const WILDCARD: &str = "*";

const BUNDLED_TABLE: &str = include_str!("../data/catalog.tsv");
const BUNDLED_VERBS: &str = include_str!("../data/execution_verbs.txt");
const BUNDLED_FE_MAP: &str = include_str!("../data/fe_map.tsv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FrameStatus {
    Valid,
    RemapExecution,
    Invalid,
}

impl FrameStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            FrameStatus::Valid => "valid",
            FrameStatus::RemapExecution => "remap:Execution",
            FrameStatus::Invalid => "invalid",
        }
    }
}

impl fmt::Display for FrameStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FrameStatus {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "valid" => Ok(FrameStatus::Valid),
            "remap:Execution" => Ok(FrameStatus::RemapExecution),
            "invalid" => Ok(FrameStatus::Invalid),
            other => Err(format!("unknown status {other:?}")),
        }
    }
}

/// The `Execution` frame definition. It has no lexical units of its own;
/// instances only arise by remapping.
pub fn execution_frame() -> FrameDef {
    FrameDef {
        name: EXECUTION.to_string(),
        definition: "An Executor runs, calls or otherwise carries out a Target, possibly for a Purpose."
            .to_string(),
        elements: vec![
            ElementDef { name: "Executor".into(), core: true },
            ElementDef { name: "Target".into(), core: true },
            ElementDef { name: "Purpose".into(), core: false },
        ],
        lexical_units: Vec::new(),
        patterns: Vec::new(),
    }
}

#[derive(Debug, Clone)]
pub struct TailoringCatalog {
    statuses: BTreeMap<String, FrameStatus>,
    execution_verbs: BTreeSet<String>,
    fe_map: BTreeMap<(String, String), String>,
    remap_requires_listed_frame: bool,
    lexicon: FrameLexicon,
}

impl PartialEq for TailoringCatalog {
    fn eq(&self, other: &Self) -> bool {
        self.statuses == other.statuses
            && self.execution_verbs == other.execution_verbs
            && self.fe_map == other.fe_map
            && self.remap_requires_listed_frame == other.remap_requires_listed_frame
    }
}

fn records(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
}

fn parse_statuses(text: &str, file: &str) -> Result<BTreeMap<String, FrameStatus>, CatalogError> {
    let mut out = BTreeMap::new();
    for (line, rec) in records(text) {
        let (frame, status) = rec
            .split_once('\t')
            .ok_or_else(|| CatalogError::malformed(file, line, "expected <frame>\\t<status>"))?;
        let (frame, status) = (frame.trim(), status.trim());
        if frame.is_empty() {
            return Err(CatalogError::malformed(file, line, "empty frame name"));
        }
        let status: FrameStatus = status
            .parse()
            .map_err(|m: String| CatalogError::malformed(file, line, m))?;
        if frame == EXECUTION && status == FrameStatus::Invalid {
            return Err(CatalogError::malformed(file, line, "Execution cannot be invalid"));
        }
        if out.insert(frame.to_string(), status).is_some() {
            return Err(CatalogError::malformed(file, line, format!("frame {frame} listed twice")));
        }
    }
    Ok(out)
}

fn parse_verbs(text: &str, file: &str) -> Result<BTreeSet<String>, CatalogError> {
    let mut out = BTreeSet::new();
    for (line, rec) in records(text) {
        let verb = rec.trim();
        if verb.contains(char::is_whitespace) {
            return Err(CatalogError::malformed(file, line, "one lemma per line"));
        }
        out.insert(verb.to_lowercase());
    }
    Ok(out)
}

fn parse_fe_map(text: &str, file: &str) -> Result<BTreeMap<(String, String), String>, CatalogError> {
    let mut out = BTreeMap::new();
    for (line, rec) in records(text) {
        let fields: Vec<&str> = rec.split('\t').map(str::trim).collect();
        let [frame, source, target] = fields[..] else {
            return Err(CatalogError::malformed(
                file,
                line,
                "expected <frame>\\t<source_fe>\\t<execution_fe>",
            ));
        };
        if frame.is_empty() || source.is_empty() {
            return Err(CatalogError::malformed(file, line, "empty field"));
        }
        if !EXECUTION_ELEMENTS.contains(&target) {
            return Err(CatalogError::malformed(
                file,
                line,
                format!("{target:?} is not an Execution element"),
            ));
        }
        if out
            .insert((frame.to_string(), source.to_string()), target.to_string())
            .is_some()
        {
            return Err(CatalogError::malformed(
                file,
                line,
                format!("mapping for {frame}/{source} listed twice"),
            ));
        }
    }
    Ok(out)
}

impl TailoringCatalog {
    /// Builds a catalog from file contents. `fe_map` may be absent. The
    /// returned catalog carries `lexicon` extended with `Execution`.
    pub fn parse(
        table: &str,
        verbs: &str,
        fe_map: Option<&str>,
        lexicon: &FrameLexicon,
    ) -> Result<Self, CatalogError> {
        let statuses = parse_statuses(table, "catalog.tsv")?;
        let execution_verbs = parse_verbs(verbs, "execution_verbs.txt")?;
        let fe_map = match fe_map {
            Some(text) => parse_fe_map(text, "fe_map.tsv")?,
            None => BTreeMap::new(),
        };
        let lexicon = lexicon
            .with_frame(execution_frame())
            .map_err(|e| CatalogError::malformed("lexicon", 0, e.to_string()))?;
        Ok(TailoringCatalog {
            statuses,
            execution_verbs,
            fe_map,
            remap_requires_listed_frame: false,
            lexicon,
        })
    }

    /// The catalog shipped with the crate, over the bundled lexicon.
    pub fn bundled() -> Self {
        TailoringCatalog::bundled_with_lexicon(&FrameLexicon::bundled()).expect("bundled catalog is valid")
    }

    /// The shipped status table, verbs and element map over another lexicon.
    pub fn bundled_with_lexicon(lexicon: &FrameLexicon) -> Result<Self, CatalogError> {
        TailoringCatalog::parse(BUNDLED_TABLE, BUNDLED_VERBS, Some(BUNDLED_FE_MAP), lexicon)
    }

    pub fn with_remap_requires_listed_frame(mut self, on: bool) -> Self {
        self.remap_requires_listed_frame = on;
        self
    }

    pub fn remap_requires_listed_frame(&self) -> bool {
        self.remap_requires_listed_frame
    }

    /// Adds lemmas to the execution-verb set.
    pub fn with_execution_verbs<I, S>(mut self, verbs: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.execution_verbs
            .extend(verbs.into_iter().map(|v| v.as_ref().to_lowercase()));
        self
    }

    /// Status of a frame; frames the catalog does not list are valid.
    pub fn status(&self, frame: &str) -> FrameStatus {
        self.statuses.get(frame).copied().unwrap_or(FrameStatus::Valid)
    }

    pub fn is_listed(&self, frame: &str) -> bool {
        self.statuses.contains_key(frame)
    }

    /// Listed frames with the given status, in name order.
    pub fn frames_with(&self, status: FrameStatus) -> Vec<&str> {
        self.statuses
            .iter()
            .filter(|(_, s)| **s == status)
            .map(|(f, _)| f.as_str())
            .collect()
    }

    pub fn statuses(&self) -> &BTreeMap<String, FrameStatus> {
        &self.statuses
    }

    pub fn execution_verbs(&self) -> &BTreeSet<String> {
        &self.execution_verbs
    }

    pub fn is_execution_verb(&self, lemma: &str) -> bool {
        self.execution_verbs.contains(lemma)
    }

    /// Execution element for `element` of `frame`, falling back to the
    /// wildcard entries.
    pub fn map_element(&self, frame: &str, element: &str) -> Option<&str> {
        self.fe_map
            .get(&(frame.to_string(), element.to_string()))
            .or_else(|| self.fe_map.get(&(WILDCARD.to_string(), element.to_string())))
            .map(String::as_str)
    }

    pub fn fe_map(&self) -> &BTreeMap<(String, String), String> {
        &self.fe_map
    }

    /// The lexicon this catalog was loaded against, including `Execution`.
    pub fn lexicon(&self) -> &FrameLexicon {
        &self.lexicon
    }

    pub fn table_tsv(&self) -> String {
        self.statuses
            .iter()
            .map(|(f, s)| format!("{f}\t{s}\n"))
            .collect()
    }

    pub fn verbs_txt(&self) -> String {
        self.execution_verbs.iter().map(|v| format!("{v}\n")).collect()
    }

    pub fn fe_map_tsv(&self) -> String {
        self.fe_map
            .iter()
            .map(|((f, s), t)| format!("{f}\t{s}\t{t}\n"))
            .collect()
    }
}

/// Loads `path` (the status table) together with `execution_verbs.txt`
/// and, if present, `fe_map.tsv` from the same directory.
pub fn load_catalog(path: impl AsRef<Path>, lexicon: &FrameLexicon) -> Result<TailoringCatalog, CatalogError> {
    let path = path.as_ref();
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let read = |p: &Path| {
        std::fs::read_to_string(p).map_err(|source| CatalogError::Io {
            path: p.to_path_buf(),
            source,
        })
    };
    let table = read(path)?;
    let verbs = read(&dir.join("execution_verbs.txt"))?;
    let fe_map_path = dir.join("fe_map.tsv");
    let fe_map = if fe_map_path.exists() {
        Some(read(&fe_map_path)?)
    } else {
        None
    };
    TailoringCatalog::parse(&table, &verbs, fe_map.as_deref(), lexicon)
}
