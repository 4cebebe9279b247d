use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use super::axioms::match_axiom;
use super::cert::{check_certificate, parse_certificate, CertVerdict, OmegaSpecCertificate};
use super::profile::{Induction, Rule, SystemProfile};
use super::script::{Justification, ProofScript};
use crate::codec::Codec;
use crate::syntax::{numeral, Formula, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Acceptance {
    /// Some line is a hypothesis: the script is a derivation from them.
    pub hypotheses: bool,
    /// Some line rests on an ω-Specification certificate, which is checked
    /// up to a horizon only.
    pub sampled: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Verdict {
    Accepted(Acceptance),
    Rejected { line: usize, reason: String },
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted(_))
    }

    /// Accepted without hypotheses.
    pub fn is_proof(&self) -> bool {
        matches!(self, Verdict::Accepted(a) if !a.hypotheses)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accepted(a) => {
                f.write_str("ACCEPTED")?;
                if a.hypotheses {
                    f.write_str(" (derivation from hypotheses)")?;
                }
                if a.sampled {
                    f.write_str(" (sampled, not a totality proof)")?;
                }
                Ok(())
            }
            Verdict::Rejected { line, reason } => write!(f, "REJECTED line {line}: {reason}"),
        }
    }
}

/// Where `omega-spec <path>` justifications find their certificates.
pub trait CertificateSource {
    fn load(&self, path: &str) -> Result<OmegaSpecCertificate, String>;
}

/// No certificates available; every `omega-spec` line is rejected.
pub struct NoCertificates;

impl CertificateSource for NoCertificates {
    fn load(&self, path: &str) -> Result<OmegaSpecCertificate, String> {
        Err(format!("certificate {path} not available"))
    }
}

/// Certificates read from files relative to a base directory.
pub struct CertificateDir(pub PathBuf);

impl CertificateSource for CertificateDir {
    fn load(&self, path: &str) -> Result<OmegaSpecCertificate, String> {
        let full = self.0.join(path);
        let text = std::fs::read_to_string(&full).map_err(|e| format!("cannot read {}: {e}", full.display()))?;
        parse_certificate(&text).map_err(|e| format!("{path}: {e}"))
    }
}

impl CertificateSource for BTreeMap<String, OmegaSpecCertificate> {
    fn load(&self, path: &str) -> Result<OmegaSpecCertificate, String> {
        self.get(path).cloned().ok_or_else(|| format!("certificate {path} not available"))
    }
}

/// Line-by-line checker configuration.
pub struct Checker<'a> {
    pub certificates: &'a dyn CertificateSource,
    /// Codec used for ω-Specification bounds.
    pub codec: Codec,
}

impl Default for Checker<'_> {
    fn default() -> Self {
        Checker { certificates: &NoCertificates, codec: Codec::Positional }
    }
}

/// Check a script against a profile, without certificate access.
pub fn check_proof(script: &ProofScript, profile: &SystemProfile) -> Verdict {
    Checker::default().check(script, profile)
}

impl Checker<'_> {
    pub fn check(&self, script: &ProofScript, profile: &SystemProfile) -> Verdict {
        let mut acceptance = Acceptance::default();
        let mut prev: Option<usize> = None;
        for line in &script.lines {
            let reject = |reason: String| Verdict::Rejected { line: line.index, reason };
            if prev.is_some_and(|p| line.index <= p) {
                return reject(format!("index {} does not follow {}", line.index, prev.unwrap_or(0)));
            }
            prev = Some(line.index);
            for r in line.justification.references() {
                if r >= line.index || script.line(r).is_none() {
                    return reject(format!("refers to missing line {r}"));
                }
            }
            let get = |i: usize| &script.line(i).expect("checked above").formula;
            let current = &line.formula;
            let outcome: Result<(), String> = match &line.justification {
                Justification::Axiom(tag) => {
                    if !profile.axioms.contains(tag) {
                        Err(format!("axiom {tag} not in profile"))
                    } else if match_axiom(current, *tag) {
                        Ok(())
                    } else {
                        Err(format!("formula is not an instance of axiom {tag}"))
                    }
                }
                Justification::Hyp => {
                    acceptance.hypotheses = true;
                    Ok(())
                }
                Justification::Mp(i, j) => require_rule(profile, Rule::Mp).and_then(|_| {
                    let expected = Formula::implies(get(*i).clone(), current.clone());
                    if *get(*j) == expected {
                        Ok(())
                    } else {
                        Err(format!("line {j} is not (line {i} -> current)"))
                    }
                }),
                Justification::Gen(i, v) => require_rule(profile, Rule::Gen).and_then(|_| {
                    if *current == Formula::forall(*v, get(*i).clone()) {
                        Ok(())
                    } else {
                        Err(format!("formula is not (A x{v}) applied to line {i}"))
                    }
                }),
                Justification::IndClosed(i, j) => {
                    require_induction(profile, Induction::Closed).and_then(|_| closed_induction(current, get(*i), get(*j)))
                }
                Justification::IndOpen(i, j) => {
                    require_induction(profile, Induction::Open).and_then(|_| open_induction(current, get(*i), get(*j)))
                }
                Justification::OmegaNum(i, n) => require_rule(profile, Rule::OmegaNum).and_then(|_| {
                    let source = get(*i);
                    let t = numeral(n.clone());
                    let ok = source
                        .free_vars()
                        .into_iter()
                        .any(|v| source.substitute(v, &t).is_ok_and(|g| g == *current));
                    if ok {
                        Ok(())
                    } else {
                        Err(format!("formula is not line {i} with a free variable replaced by numeral {n}"))
                    }
                }),
                Justification::OmegaSpec(path) => require_rule(profile, Rule::OmegaSpec).and_then(|_| {
                    acceptance.sampled = true;
                    self.omega_spec(current, path, profile)
                }),
            };
            if let Err(reason) = outcome {
                return reject(reason);
            }
        }
        Verdict::Accepted(acceptance)
    }

    fn omega_spec(&self, current: &Formula, path: &str, profile: &SystemProfile) -> Result<(), String> {
        let cert = self.certificates.load(path)?;
        if cert.target != *current {
            return Err(format!("certificate {path} licenses {}, not this formula", cert.target));
        }
        match check_certificate(&cert, profile, self.codec) {
            Ok(CertVerdict::CertifiedUpTo(_)) => Ok(()),
            Ok(v) => Err(format!("certificate {path}: {v}")),
            Err(e) => Err(format!("certificate {path}: {e}")),
        }
    }
}

fn require_rule(profile: &SystemProfile, rule: Rule) -> Result<(), String> {
    if profile.rules.contains(&rule) {
        Ok(())
    } else {
        Err(format!("rule {} not in profile", rule.as_str()))
    }
}

fn require_induction(profile: &SystemProfile, ind: Induction) -> Result<(), String> {
    if profile.induction.contains(&ind) {
        Ok(())
    } else {
        Err(format!("rule {} not in profile", ind.as_str()))
    }
}

/// `F[x:=0]` and `F[x:=x']`.
fn base_and_step(f: &Formula, x: u32) -> (Formula, Formula) {
    let zero = f.substitute(x, &Term::Zero).expect("closed term is free for");
    let next = f
        .substitute(x, &Term::succ(Term::Var(x)))
        .expect("x' is free for x wherever x is free");
    (zero, next)
}

// from F[x:=0] and (A x)(F -> F[x:=x']) conclude (A x)F
fn closed_induction(current: &Formula, base: &Formula, step: &Formula) -> Result<(), String> {
    let Formula::ForAll(x, f) = current else {
        return Err("closed induction must conclude a formula (A x)F".into());
    };
    let (zero, next) = base_and_step(f, *x);
    if *base != zero {
        return Err(format!("base line is not F[x{x}:=0]"));
    }
    if *step != Formula::forall(*x, Formula::implies((**f).clone(), next)) {
        return Err(format!("step line is not (A x{x})(F -> F[x{x}:=x{x}'])"));
    }
    Ok(())
}

// from F[x:=0] and (F -> F[x:=x']) conclude F, for some variable x
fn open_induction(current: &Formula, base: &Formula, step: &Formula) -> Result<(), String> {
    let mut candidates: Vec<u32> = current.free_vars().into_iter().collect();
    if candidates.is_empty() {
        // Any variable not free in F behaves the same.
        candidates.push(1);
    }
    for x in candidates {
        let (zero, next) = base_and_step(current, x);
        if *base == zero && *step == Formula::implies(current.clone(), next) {
            return Ok(());
        }
    }
    Err("lines are not F[x:=0] and (F -> F[x:=x']) for any variable x".into())
}
