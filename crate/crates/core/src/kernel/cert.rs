//! ω-Specification certificates.
//!
//! A certificate claims `(A x)F` on the strength of a proof template: for
//! every numeral `n` the template instantiated at `n` must prove `F[x:=n]`
//! with a Gödel number below a fixed bound. Totality over all `n` cannot be
//! decided, so the check samples `n = 0..=horizon` and says so.
//!
//! ```text
//! @target: (A x1)((x1 + 0) = x1)
//! @bound: 1000000000000000000000000000000000000000000000000000000000000000
//! @horizon: 5
//! @placeholder: ?n
//! 1 | ((x1 + 0) = x1) | axiom A5
//! 2 | ((?n + 0) = ?n) | omega-num 1 ?n
//! ```
//!
//! Inside the formula field the placeholder becomes the numeral for `n`;
//! in the index and justification fields it becomes `n` in decimal.

use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

use super::check::Checker;
use super::profile::{Rule, SystemProfile};
use super::script::{ProofScript, ScriptError};
use crate::codec::{encode, Codec};
use crate::syntax::{numeral, parse_formula, Formula};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaSpecCertificate {
    /// `(A x)F`.
    pub target: Formula,
    pub bound: BigUint,
    pub horizon: u64,
    pub placeholder: String,
    /// Template script lines, comments and headers removed.
    pub template: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("malformed template: {0}")]
    Template(ScriptError),
    #[error("rule OMEGA-SPEC not in profile {0}")]
    RuleNotInProfile(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertVerdict {
    CertifiedUpTo(u64),
    BoundViolatedAt { n: u64, godel: BigUint },
    InvalidTemplateAt { n: u64, reason: String },
}

impl fmt::Display for CertVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertVerdict::CertifiedUpTo(n) => write!(f, "certified up to n = {n} (sampled, not a totality proof)"),
            CertVerdict::BoundViolatedAt { n, godel } => {
                write!(f, "bound violated at n = {n} (Gödel number {godel})")
            }
            CertVerdict::InvalidTemplateAt { n, reason } => write!(f, "invalid template at n = {n}: {reason}"),
        }
    }
}

impl OmegaSpecCertificate {
    /// The template instantiated at `n`.
    pub fn instantiate(&self, n: u64) -> Result<ProofScript, ScriptError> {
        let num = numeral(n).to_string();
        let dec = n.to_string();
        let lines: Vec<String> = self
            .template
            .iter()
            .map(|line| {
                let mut fields = line.splitn(3, '|');
                match (fields.next(), fields.next(), fields.next()) {
                    (Some(i), Some(f), Some(j)) => format!(
                        "{}|{}|{}",
                        i.replace(&self.placeholder, &dec),
                        f.replace(&self.placeholder, &num),
                        j.replace(&self.placeholder, &dec)
                    ),
                    _ => line.replace(&self.placeholder, &dec),
                }
            })
            .collect();
        ProofScript::parse(&lines.join("\n"))
    }

    pub fn render(&self) -> String {
        let mut out = vec![
            format!("@target: {}", self.target),
            format!("@bound: {}", self.bound),
            format!("@horizon: {}", self.horizon),
            format!("@placeholder: {}", self.placeholder),
        ];
        out.extend(self.template.iter().cloned());
        out.join("\n")
    }
}

pub fn parse_certificate(text: &str) -> Result<OmegaSpecCertificate, CertError> {
    let malformed = |m: String| CertError::Malformed(m);
    let mut target = None;
    let mut bound = None;
    let mut horizon = None;
    let mut placeholder = None;
    let mut template = Vec::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('@') {
            let (key, value) = rest
                .split_once(':')
                .ok_or_else(|| malformed(format!("header without ':' in {line:?}")))?;
            let value = value.trim();
            match key.trim() {
                "target" => {
                    target = Some(parse_formula(value).map_err(|e| malformed(format!("target: {e}")))?)
                }
                "bound" => bound = Some(value.parse::<BigUint>().map_err(|_| malformed(format!("bad bound {value:?}")))?),
                "horizon" => {
                    horizon = Some(value.parse::<u64>().map_err(|_| malformed(format!("bad horizon {value:?}")))?)
                }
                "placeholder" => {
                    if value.is_empty() {
                        return Err(malformed("empty placeholder".into()));
                    }
                    placeholder = Some(value.to_string())
                }
                "name" | "system" => {}
                other => return Err(malformed(format!("unknown header @{other}"))),
            }
        } else {
            template.push(line.to_string());
        }
    }
    let target = target.ok_or_else(|| malformed("missing @target".into()))?;
    if !matches!(target, Formula::ForAll(..)) {
        return Err(malformed(format!("target {target} is not of the form (A x)F")));
    }
    let cert = OmegaSpecCertificate {
        target,
        bound: bound.ok_or_else(|| malformed("missing @bound".into()))?,
        horizon: horizon.ok_or_else(|| malformed("missing @horizon".into()))?,
        placeholder: placeholder.unwrap_or_else(|| "?n".to_string()),
        template,
    };
    if cert.template.is_empty() {
        return Err(malformed("empty template".into()));
    }
    cert.instantiate(0).map_err(CertError::Template)?;
    Ok(cert)
}

/// Check a certificate at `n = 0..=horizon` under `profile` minus OMEGA-SPEC.
pub fn check_certificate(
    cert: &OmegaSpecCertificate,
    profile: &SystemProfile,
    codec: Codec,
) -> Result<CertVerdict, CertError> {
    if !profile.rules.contains(&Rule::OmegaSpec) {
        return Err(CertError::RuleNotInProfile(profile.name.to_string()));
    }
    let Formula::ForAll(v, body) = &cert.target else {
        return Err(CertError::Malformed(format!("target {} is not of the form (A x)F", cert.target)));
    };
    // Certificates never nest.
    let inner = profile.without_rule(Rule::OmegaSpec);
    let checker = Checker { codec, ..Checker::default() };
    for n in 0..=cert.horizon {
        let invalid = |reason: String| Ok(CertVerdict::InvalidTemplateAt { n, reason });
        let script = match cert.instantiate(n) {
            Ok(s) => s,
            Err(e) if n == 0 => return Err(CertError::Template(e)),
            Err(e) => return invalid(e.to_string()),
        };
        let verdict = checker.check(&script, &inner);
        if !verdict.is_proof() {
            return invalid(verdict.to_string());
        }
        let expected = body
            .substitute(*v, &numeral(n))
            .expect("numerals are closed");
        if script.conclusion() != Some(&expected) {
            return invalid(format!("last line is not {expected}"));
        }
        let godel = encode(&script, codec).value;
        if godel >= cert.bound {
            return Ok(CertVerdict::BoundViolatedAt { n, godel });
        }
    }
    Ok(CertVerdict::CertifiedUpTo(cert.horizon))
}
