//! Builders for proof scripts and certificates used across the toolkit.

use num_bigint::BigUint;

use crate::codec::{encode, Codec};
use crate::kernel::{arithmetic_axiom, AxiomTag, Justification, OmegaSpecCertificate, ProofScript};
use crate::syntax::{numeral, parse_formula, CaptureError, Formula, Term};

/// A proof of `(t = t)` from A5 and A1 with GEN, K4 and MP.
///
/// `t` must not contain `x2` or `x3`, which are bound while `t` is
/// substituted into the generalised A1.
pub fn reflexivity_proof(t: &Term) -> Result<ProofScript, CaptureError> {
    use Justification::*;
    let a5 = arithmetic_axiom(AxiomTag::A5).expect("A5").clone();
    let a1 = arithmetic_axiom(AxiomTag::A1).expect("A1").clone();
    let t0 = Term::add(t.clone(), Term::Zero);
    let t0_eq_t = Formula::eq(t0.clone(), t.clone());

    let gen_a5 = Formula::forall(1, a5.clone());
    let a1_3 = Formula::forall(3, a1.clone());
    let a1_23 = Formula::forall(2, a1_3.clone());
    let a1_123 = Formula::forall(1, a1_23.clone());
    let s1 = a1_23.substitute(1, &t0)?;
    let Formula::ForAll(_, s1_body) = &s1 else { unreachable!("substitution keeps the binder") };
    let s2 = s1_body.substitute(2, t)?;
    let Formula::ForAll(_, s2_body) = &s2 else { unreachable!("substitution keeps the binder") };
    let s3 = s2_body.substitute(3, t)?;
    let Formula::Implies(_, s3_tail) = &s3 else { unreachable!("A1 is an implication") };
    let s4 = (**s3_tail).clone();
    let goal = Formula::eq(t.clone(), t.clone());

    Ok(ProofScript::numbered([
        (a5, Axiom(AxiomTag::A5)),
        (gen_a5.clone(), Gen(1, 1)),
        (Formula::implies(gen_a5, t0_eq_t.clone()), Axiom(AxiomTag::K4)),
        (t0_eq_t, Mp(2, 3)),
        (a1, Axiom(AxiomTag::A1)),
        (a1_3, Gen(5, 3)),
        (a1_23, Gen(6, 2)),
        (a1_123.clone(), Gen(7, 1)),
        (Formula::implies(a1_123, s1.clone()), Axiom(AxiomTag::K4)),
        (s1.clone(), Mp(8, 9)),
        (Formula::implies(s1, s2.clone()), Axiom(AxiomTag::K4)),
        (s2.clone(), Mp(10, 11)),
        (Formula::implies(s2, s3.clone()), Axiom(AxiomTag::K4)),
        (s3, Mp(12, 13)),
        (s4, Mp(4, 14)),
        (goal, Mp(4, 15)),
    ]))
}

/// `(A x1)((x1 + 0) = x1)`, the target of the demo certificate.
pub fn demo_target() -> Formula {
    parse_formula("(A x1)((x1 + 0) = x1)").expect("demo target parses")
}

/// Template proving `((n + 0) = n)` at each numeral `n` from A5 by OMEGA-NUM.
pub const DEMO_TEMPLATE: [&str; 2] = [
    "1 | ((x1 + 0) = x1) | axiom A5",
    "2 | ((?n + 0) = ?n) | omega-num 1 ?n",
];

/// The demo certificate with the given bound and horizon.
pub fn demo_certificate(bound: BigUint, horizon: u64) -> OmegaSpecCertificate {
    OmegaSpecCertificate {
        target: demo_target(),
        bound,
        horizon,
        placeholder: "?n".to_string(),
        template: DEMO_TEMPLATE.iter().map(|s| s.to_string()).collect(),
    }
}

/// The demo certificate whose bound admits exactly the `n = 0` instance:
/// one more than that instance's Gödel number.
pub fn tight_demo_certificate(codec: Codec, horizon: u64) -> OmegaSpecCertificate {
    let probe = demo_certificate(BigUint::default(), 0);
    let first = probe.instantiate(0).expect("demo template instantiates");
    demo_certificate(encode(&first, codec).value + 1u32, horizon)
}

/// Gödel numbers of the demo template's instances `n = 0..=n_max`.
pub fn template_growth(codec: Codec, n_max: u64) -> Vec<BigUint> {
    let cert = demo_certificate(BigUint::default(), n_max);
    (0..=n_max)
        .map(|n| encode(&cert.instantiate(n).expect("demo template instantiates"), codec).value)
        .collect()
}

/// `(0 = 0')`, the formula mutated lines are replaced with.
pub fn falsum() -> Formula {
    Formula::eq(Term::Zero, numeral(1u32))
}

/// The script with line `k` (0-based) replaced by `(0 = 0')`.
pub fn mutate_line(script: &ProofScript, k: usize) -> ProofScript {
    let mut out = script.clone();
    out.lines[k].formula = falsum();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{check_proof, SystemName};

    #[test]
    fn reflexivity_at_numeral() {
        let proof = reflexivity_proof(&numeral(3u32)).unwrap();
        assert_eq!(proof.conclusion().unwrap().to_string(), "(0''' = 0''')");
        assert!(check_proof(&proof, &SystemName::Pa.profile()).is_proof());
        assert!(check_proof(&proof, &SystemName::StrongGa.profile()).is_proof());
        assert!(!check_proof(&proof, &SystemName::OmegaPa.profile()).is_accepted());
    }

    #[test]
    fn reflexivity_open_and_capture() {
        let proof = reflexivity_proof(&Term::var(1)).unwrap();
        assert!(check_proof(&proof, &SystemName::Pa.profile()).is_proof());
        assert!(reflexivity_proof(&Term::var(2)).is_err());
    }

    #[test]
    fn growth_is_strict() {
        let g = template_growth(Codec::Positional, 50);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }
}
