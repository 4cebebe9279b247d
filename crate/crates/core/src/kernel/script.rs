//! Proof scripts and their line-oriented file format.
//!
//! ```text
//! @name: reflexivity
//! @system: PA
//! # comment
//! 1 | ((x1 + 0) = x1) | axiom A5
//! 2 | (A x1)((x1 + 0) = x1) | gen 1 x1
//! ```

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

use super::profile::{AxiomTag, SystemName};
use crate::syntax::{parse_formula, Formula, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Justification {
    Axiom(AxiomTag),
    Hyp,
    Mp(usize, usize),
    Gen(usize, u32),
    IndClosed(usize, usize),
    IndOpen(usize, usize),
    OmegaNum(usize, BigUint),
    OmegaSpec(String),
}

impl Justification {
    /// Earlier line indices this justification depends on.
    pub fn references(&self) -> Vec<usize> {
        match self {
            Justification::Axiom(_) | Justification::Hyp | Justification::OmegaSpec(_) => vec![],
            Justification::Mp(i, j) | Justification::IndClosed(i, j) | Justification::IndOpen(i, j) => {
                vec![*i, *j]
            }
            Justification::Gen(i, _) | Justification::OmegaNum(i, _) => vec![*i],
        }
    }

    pub fn is_rule(&self) -> bool {
        !matches!(self, Justification::Axiom(_) | Justification::Hyp)
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom(tag) => write!(f, "axiom {tag}"),
            Justification::Hyp => f.write_str("hyp"),
            Justification::Mp(i, j) => write!(f, "mp {i} {j}"),
            Justification::Gen(i, v) => write!(f, "gen {i} x{v}"),
            Justification::IndClosed(i, j) => write!(f, "ind-closed {i} {j}"),
            Justification::IndOpen(i, j) => write!(f, "ind-open {i} {j}"),
            Justification::OmegaNum(i, n) => write!(f, "omega-num {i} {n}"),
            Justification::OmegaSpec(path) => write!(f, "omega-spec {path}"),
        }
    }
}

impl FromStr for Justification {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let words: Vec<&str> = s.split_whitespace().collect();
        let index = |w: &str| -> Result<usize, String> {
            match w.parse::<usize>() {
                Ok(i) if i >= 1 => Ok(i),
                _ => Err(format!("bad line reference {w:?}")),
            }
        };
        let variable = |w: &str| -> Result<u32, String> {
            w.strip_prefix('x')
                .filter(|d| !d.starts_with('0'))
                .and_then(|d| d.parse::<u32>().ok())
                .filter(|i| *i >= 1)
                .ok_or_else(|| format!("bad variable {w:?}"))
        };
        match words.as_slice() {
            ["axiom", tag] => Ok(Justification::Axiom(tag.parse()?)),
            ["hyp"] => Ok(Justification::Hyp),
            ["mp", i, j] => Ok(Justification::Mp(index(i)?, index(j)?)),
            ["gen", i, v] => Ok(Justification::Gen(index(i)?, variable(v)?)),
            ["ind-closed", i, j] => Ok(Justification::IndClosed(index(i)?, index(j)?)),
            ["ind-open", i, j] => Ok(Justification::IndOpen(index(i)?, index(j)?)),
            ["omega-num", i, n] => {
                let n: BigUint = n.parse().map_err(|_| format!("bad numeral value {n:?}"))?;
                Ok(Justification::OmegaNum(index(i)?, n))
            }
            ["omega-spec", path] => Ok(Justification::OmegaSpec(path.to_string())),
            _ => Err(format!("malformed justification {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProofLine {
    pub index: usize,
    pub formula: Formula,
    pub justification: Justification,
}

impl fmt::Display for ProofLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {} | {}", self.index, self.formula, self.justification)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ProofScript {
    pub name: Option<String>,
    pub system: Option<SystemName>,
    pub lines: Vec<ProofLine>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("line {line}: {source}")]
    Formula { line: usize, source: ParseError },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

impl ProofScript {
    pub fn new(lines: Vec<ProofLine>) -> Self {
        ProofScript { name: None, system: None, lines }
    }

    /// Build a script from `(formula, justification)` pairs numbered 1, 2, ...
    pub fn numbered(steps: impl IntoIterator<Item = (Formula, Justification)>) -> Self {
        let lines = steps
            .into_iter()
            .enumerate()
            .map(|(k, (formula, justification))| ProofLine { index: k + 1, formula, justification })
            .collect();
        ProofScript::new(lines)
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }

    pub fn line(&self, index: usize) -> Option<&ProofLine> {
        self.lines
            .binary_search_by_key(&index, |l| l.index)
            .ok()
            .map(|k| &self.lines[k])
    }

    pub fn uses_hypotheses(&self) -> bool {
        self.lines.iter().any(|l| l.justification == Justification::Hyp)
    }

    /// Canonical text: optional headers, then one line per step, joined by
    /// `\n` without a trailing newline.
    pub fn render(&self) -> String {
        let mut parts = Vec::with_capacity(self.lines.len() + 2);
        if let Some(name) = &self.name {
            parts.push(format!("@name: {name}"));
        }
        if let Some(system) = self.system {
            parts.push(format!("@system: {system}"));
        }
        parts.extend(self.lines.iter().map(|l| l.to_string()));
        parts.join("\n")
    }

    pub fn parse(text: &str) -> Result<ProofScript, ScriptError> {
        let mut script = ProofScript::default();
        for (k, raw) in text.lines().enumerate() {
            let lineno = k + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix('@') {
                let (key, value) = rest.split_once(':').ok_or_else(|| ScriptError::Malformed {
                    line: lineno,
                    message: format!("header without ':' in {content:?}"),
                })?;
                let value = value.trim();
                match key.trim() {
                    "name" => script.name = Some(value.to_string()),
                    "system" => {
                        script.system = Some(value.parse().map_err(|e: super::profile::UnknownSystem| {
                            ScriptError::Malformed { line: lineno, message: e.to_string() }
                        })?)
                    }
                    other => {
                        return Err(ScriptError::Malformed {
                            line: lineno,
                            message: format!("unknown header @{other}"),
                        })
                    }
                }
                continue;
            }
            script.lines.push(parse_line(content, lineno)?);
        }
        for pair in script.lines.windows(2) {
            if pair[1].index <= pair[0].index {
                return Err(ScriptError::Malformed {
                    line: pair[1].index,
                    message: format!("index {} does not follow {}", pair[1].index, pair[0].index),
                });
            }
        }
        Ok(script)
    }
}

fn parse_line(content: &str, lineno: usize) -> Result<ProofLine, ScriptError> {
    let malformed = |message: String| ScriptError::Malformed { line: lineno, message };
    let mut fields = content.splitn(3, '|');
    let (Some(index), Some(formula), Some(just)) = (fields.next(), fields.next(), fields.next()) else {
        return Err(malformed(format!("expected '<index> | <formula> | <justification>', got {content:?}")));
    };
    let index = match index.trim().parse::<usize>() {
        Ok(i) if i >= 1 => i,
        _ => return Err(malformed(format!("bad line index {:?}", index.trim()))),
    };
    let formula = parse_formula(formula.trim()).map_err(|source| ScriptError::Formula { line: lineno, source })?;
    let justification = just.trim().parse().map_err(malformed)?;
    Ok(ProofLine { index, formula, justification })
}

impl fmt::Display for ProofScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
@name: gen-final
@system: strong-GA
# A5 then generalise
1 | ((x1 + 0) = x1) | axiom A5
2 | (A x1)((x1 + 0) = x1) | gen 1 x1
";

    #[test]
    fn parse_and_render() {
        let s = ProofScript::parse(SAMPLE).unwrap();
        assert_eq!(s.name.as_deref(), Some("gen-final"));
        assert_eq!(s.system, Some(SystemName::StrongGa));
        assert_eq!(s.lines.len(), 2);
        assert_eq!(s.lines[1].justification, Justification::Gen(1, 1));
        assert_eq!(ProofScript::parse(&s.render()).unwrap(), s);
    }

    #[test]
    fn justifications() {
        for text in [
            "axiom K4",
            "hyp",
            "mp 1 2",
            "gen 3 x7",
            "ind-closed 1 2",
            "ind-open 2 4",
            "omega-num 1 4722366482869645213696",
            "omega-spec certs/a5.cert",
        ] {
            let j: Justification = text.parse().unwrap();
            assert_eq!(j.to_string(), text);
        }
        assert!("axiom A10".parse::<Justification>().is_err());
        assert!("mp 1".parse::<Justification>().is_err());
        assert!("gen 1 y".parse::<Justification>().is_err());
        assert!("mp 0 1".parse::<Justification>().is_err());
    }

    #[test]
    fn malformed_scripts() {
        assert!(matches!(
            ProofScript::parse("1 | (0 = 0) | axiom A5\n1 | (0 = 0) | hyp"),
            Err(ScriptError::Malformed { .. })
        ));
        assert!(matches!(
            ProofScript::parse("1 | (0 = | hyp"),
            Err(ScriptError::Formula { line: 1, .. })
        ));
        assert!(ProofScript::parse("1 (0 = 0) hyp").is_err());
        assert!(ProofScript::parse("@colour: red").is_err());
    }
}
