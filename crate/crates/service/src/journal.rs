//! Append-only JSONL log of every state change.

use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use seframe::evaluation::{Campaign, Judgment};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum Event {
    CampaignCreated {
        campaign: Campaign,
    },
    SessionCreated {
        session: String,
        campaign: String,
        evaluator: String,
        /// Item ids in the order they will be served.
        tasks: Vec<String>,
    },
    JudgmentRecorded {
        session: String,
        #[serde(default)]
        follow_up: bool,
        judgment: Judgment,
    },
    CampaignClosed {
        campaign: String,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum JournalError {
    #[error("journal {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("journal {path} line {line}: {message}")]
    Malformed { path: PathBuf, line: usize, message: String },
}

#[derive(Debug)]
pub struct Journal {
    path: Option<PathBuf>,
    file: Option<File>,
}

impl Journal {
    /// A journal that keeps nothing; for tests and dry runs.
    pub fn in_memory() -> Self {
        Journal { path: None, file: None }
    }

    /// Opens (creating if needed) the journal at `path` and returns the
    /// events already in it. A torn final line without a newline, left by
    /// a crash mid-write, is cut off.
    pub fn open(path: impl AsRef<Path>) -> Result<(Journal, Vec<Event>), JournalError> {
        let path = path.as_ref().to_path_buf();
        let io_err = |source| JournalError::Io { path: path.clone(), source };
        let file = OpenOptions::new()
            .create(true)
            .read(true)
            .append(true)
            .open(&path)
            .map_err(io_err)?;
        let mut events = Vec::new();
        let mut reader = BufReader::new(&file);
        let mut line = String::new();
        let mut good_len = 0u64;
        let mut n = 0;
        loop {
            line.clear();
            let read = reader.read_line(&mut line).map_err(io_err)?;
            if read == 0 {
                break;
            }
            n += 1;
            if !line.ends_with('\n') {
                break;
            }
            good_len += read as u64;
            if line.trim().is_empty() {
                continue;
            }
            let ev = serde_json::from_str(&line).map_err(|e| JournalError::Malformed {
                path: path.clone(),
                line: n,
                message: e.to_string(),
            })?;
            events.push(ev);
        }
        drop(reader);
        if file.metadata().map_err(io_err)?.len() != good_len {
            file.set_len(good_len).map_err(io_err)?;
        }
        Ok((
            Journal {
                path: Some(path),
                file: Some(file),
            },
            events,
        ))
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn append(&mut self, ev: &Event) -> io::Result<()> {
        let Some(file) = self.file.as_mut() else {
            return Ok(());
        };
        let mut line = serde_json::to_string(ev).map_err(io::Error::other)?;
        line.push('\n');
        file.write_all(line.as_bytes())?;
        file.sync_data()
    }
}
