//! The bundled script corpus and its acceptance matrix.
//!
//! Every `*.prf` file in a directory is checked under all eight profiles.
//! Certificates named by `omega-spec` lines are resolved relative to the
//! directory. The matrix text format is
//!
//! ```text
//! # script | weak-GA strong-GA weak-PA PA omega-GA omega-PA omega1-PA omega2-PA
//! gen-final | REJECT ACCEPT REJECT ACCEPT REJECT REJECT REJECT REJECT
//! ```

use std::fmt;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::codec::Codec;
use crate::kernel::{CertificateDir, Checker, ProofScript, ScriptError, SystemName, Verdict};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Script { path: PathBuf, source: ScriptError },
    #[error("no .prf scripts in {0}")]
    Empty(PathBuf),
    #[error("matrix line {line}: {message}")]
    Matrix { line: usize, message: String },
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    /// File stem, e.g. `gen-final`.
    pub name: String,
    pub path: PathBuf,
    pub script: ProofScript,
}

/// Load every `*.prf` file in `dir`, sorted by name.
pub fn load_corpus(dir: &Path) -> Result<Vec<CorpusEntry>, CorpusError> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| CorpusError::Io { path, source }
    };
    let mut entries = Vec::new();
    for item in std::fs::read_dir(dir).map_err(io(dir))? {
        let path = item.map_err(io(dir))?.path();
        if path.extension().and_then(|e| e.to_str()) != Some("prf") {
            continue;
        }
        let text = std::fs::read_to_string(&path).map_err(io(&path))?;
        let script = ProofScript::parse(&text).map_err(|source| CorpusError::Script { path: path.clone(), source })?;
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
        entries.push(CorpusEntry { name, path, script });
    }
    if entries.is_empty() {
        return Err(CorpusError::Empty(dir.to_path_buf()));
    }
    entries.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(entries)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixRow {
    pub name: String,
    /// Acceptance under each of [`SystemName::ALL`], in order.
    pub accepted: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matrix {
    pub rows: Vec<MatrixRow>,
}

/// Each script's verdict under each profile, with the verdicts themselves.
pub fn check_corpus(dir: &Path, entries: &[CorpusEntry], codec: Codec) -> Vec<(String, Vec<Verdict>)> {
    let certs = CertificateDir(dir.to_path_buf());
    let checker = Checker { certificates: &certs, codec };
    entries
        .iter()
        .map(|e| {
            let verdicts = SystemName::ALL.iter().map(|s| checker.check(&e.script, &s.profile())).collect();
            (e.name.clone(), verdicts)
        })
        .collect()
}

pub fn compute_matrix(dir: &Path, entries: &[CorpusEntry], codec: Codec) -> Matrix {
    let rows = check_corpus(dir, entries, codec)
        .into_iter()
        .map(|(name, verdicts)| MatrixRow { name, accepted: verdicts.iter().map(Verdict::is_accepted).collect() })
        .collect();
    Matrix { rows }
}

impl Matrix {
    pub fn row(&self, name: &str) -> Option<&MatrixRow> {
        self.rows.iter().find(|r| r.name == name)
    }

    /// Profiles accepting the named script.
    pub fn accepting(&self, name: &str) -> Option<Vec<SystemName>> {
        let row = self.row(name)?;
        Some(SystemName::ALL.into_iter().zip(&row.accepted).filter(|(_, a)| **a).map(|(s, _)| s).collect())
    }

    /// `(script, smaller, larger)` where the script is accepted under the
    /// smaller profile but not the larger, over every pair of profiles
    /// related componentwise.
    pub fn monotonicity_violations(&self) -> Vec<(String, SystemName, SystemName)> {
        let mut out = Vec::new();
        for row in &self.rows {
            for (i, small) in SystemName::ALL.iter().enumerate() {
                for (j, large) in SystemName::ALL.iter().enumerate() {
                    if i != j && small.profile().is_sub_profile_of(&large.profile()) && row.accepted[i] && !row.accepted[j] {
                        out.push((row.name.clone(), *small, *large));
                    }
                }
            }
        }
        out
    }

    /// Rows present in either matrix that differ.
    pub fn differences(&self, expected: &Matrix) -> Vec<String> {
        let mut out = Vec::new();
        for row in &self.rows {
            match expected.row(&row.name) {
                None => out.push(format!("{}: not in expected matrix", row.name)),
                Some(e) if e.accepted != row.accepted => {
                    out.push(format!("{}: got {}, expected {}", row.name, cells(&row.accepted), cells(&e.accepted)))
                }
                Some(_) => {}
            }
        }
        for e in &expected.rows {
            if self.row(&e.name).is_none() {
                out.push(format!("{}: missing from corpus", e.name));
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Matrix, CorpusError> {
        let mut rows = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| CorpusError::Matrix { line: k + 1, message };
            let (name, cells) = line.split_once('|').ok_or_else(|| err("expected '<script> | <cells>'".into()))?;
            let accepted = cells
                .split_whitespace()
                .map(|c| match c {
                    "ACCEPT" => Ok(true),
                    "REJECT" => Ok(false),
                    other => Err(err(format!("bad cell {other:?}"))),
                })
                .collect::<Result<Vec<bool>, _>>()?;
            if accepted.len() != SystemName::ALL.len() {
                return Err(err(format!("expected {} cells, found {}", SystemName::ALL.len(), accepted.len())));
            }
            rows.push(MatrixRow { name: name.trim().to_string(), accepted });
        }
        Ok(Matrix { rows })
    }
}

fn cells(accepted: &[bool]) -> String {
    accepted.iter().map(|a| if *a { "ACCEPT" } else { "REJECT" }).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = SystemName::ALL.iter().map(|s| s.as_str()).collect();
        write!(f, "# script | {}", names.join(" "))?;
        for row in &self.rows {
            write!(f, "\n{} | {}", row.name, cells(&row.accepted))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_text_round_trip() {
        let m = Matrix {
            rows: vec![MatrixRow { name: "x".into(), accepted: vec![true, false, true, true, false, false, false, true] }],
        };
        assert_eq!(Matrix::parse(&m.to_string()).unwrap(), m);
        assert!(Matrix::parse("x | ACCEPT").is_err());
        assert!(Matrix::parse("x | ACCEPT MAYBE ACCEPT ACCEPT ACCEPT ACCEPT ACCEPT ACCEPT").is_err());
    }

    #[test]
    fn violations_are_found() {
        // Accepted under weak-GA but not PA.
        let mut accepted = vec![true; 8];
        accepted[3] = false;
        let m = Matrix { rows: vec![MatrixRow { name: "bad".into(), accepted }] };
        let v = m.monotonicity_violations();
        assert!(v.contains(&("bad".to_string(), SystemName::WeakGa, SystemName::Pa)));
    }
}
