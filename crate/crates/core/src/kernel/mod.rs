//! System profiles, proof scripts and the line-by-line checker.

mod axioms;
mod cert;
mod check;
mod profile;
mod script;

pub use axioms::{arithmetic_axiom, k4_term, match_axiom, matching_axioms};
pub use cert::{check_certificate, parse_certificate, CertError, CertVerdict, OmegaSpecCertificate};
pub use check::{
    check_proof, Acceptance, CertificateDir, CertificateSource, Checker, NoCertificates, Verdict,
};
pub use profile::{
    system_profile, AxiomTag, Induction, Rule, SystemName, SystemProfile, UnknownSystem, CHAINS,
};
pub use script::{Justification, ProofLine, ProofScript, ScriptError};
