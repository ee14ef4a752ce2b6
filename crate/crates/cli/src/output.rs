//! Output sinks. Files are written to a temporary sibling and renamed into
//! place on success, so a failed run leaves no partial output.

use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use tempfile::NamedTempFile;

pub enum Output {
    Stdout(BufWriter<io::Stdout>),
    File { tmp: BufWriter<NamedTempFile>, dest: PathBuf },
}

impl Output {
    pub fn open(dest: Option<&Path>) -> Result<Output> {
        Ok(match dest {
            None => Output::Stdout(BufWriter::new(io::stdout())),
            Some(p) => {
                let dir = match p.parent() {
                    Some(d) if !d.as_os_str().is_empty() => d,
                    _ => Path::new("."),
                };
                let tmp = NamedTempFile::new_in(dir)
                    .with_context(|| format!("cannot create a temporary file next to {}", p.display()))?;
                Output::File {
                    tmp: BufWriter::new(tmp),
                    dest: p.to_path_buf(),
                }
            }
        })
    }

    /// Flushes and, for files, renames into place.
    pub fn commit(self) -> Result<()> {
        match self {
            Output::Stdout(mut w) => w.flush().context("writing to stdout"),
            Output::File { tmp, dest } => {
                let tmp = tmp.into_inner().map_err(|e| e.into_error())?;
                tmp.as_file().sync_all()?;
                tmp.persist(&dest)
                    .with_context(|| format!("cannot write {}", dest.display()))?;
                Ok(())
            }
        }
    }
}

impl Write for Output {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        match self {
            Output::Stdout(w) => w.write(buf),
            Output::File { tmp, .. } => tmp.write(buf),
        }
    }

    fn flush(&mut self) -> io::Result<()> {
        match self {
            Output::Stdout(w) => w.flush(),
            Output::File { tmp, .. } => tmp.flush(),
        }
    }
}

/// Writes `text` to `dest` (or stdout) atomically.
pub fn write_all(dest: Option<&Path>, text: &str) -> Result<()> {
    let mut out = Output::open(dest)?;
    out.write_all(text.as_bytes())?;
    out.commit()
}
