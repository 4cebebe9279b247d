mod common;

use num_bigint::BigUint;
use proptest::prelude::*;

use common::{arb_formula, arb_script, corpus_dir};
use pacheck::codec::{encode, Codec};
use pacheck::corpus::load_corpus;
use pacheck::kernel::{
    check_certificate, check_proof, match_axiom, parse_certificate, system_profile, AxiomTag, CertVerdict,
    CertificateDir, Checker, Induction, Justification, ProofScript, Rule, SystemName, Verdict, CHAINS,
};
use pacheck::proofs::{demo_certificate, mutate_line, tight_demo_certificate, DEMO_TEMPLATE};
use pacheck::syntax::parse_formula;

fn script(text: &str) -> ProofScript {
    ProofScript::parse(text).unwrap()
}

fn check_corpus_script(name: &str, system: SystemName) -> Verdict {
    let dir = corpus_dir();
    let text = std::fs::read_to_string(dir.join(format!("{name}.prf"))).unwrap();
    let certs = CertificateDir(dir);
    Checker { certificates: &certs, codec: Codec::Positional }.check(&script(&text), &system.profile())
}

#[test]
fn profile_oracles() {
    let omega_pa = system_profile("omega-PA").unwrap();
    assert_eq!(omega_pa.rules.iter().copied().collect::<Vec<_>>(), vec![Rule::Mp, Rule::OmegaNum]);
    assert_eq!(omega_pa.induction.iter().copied().collect::<Vec<_>>(), vec![Induction::Open]);
    let pa = system_profile("PA").unwrap();
    assert_eq!(pa.rules.iter().copied().collect::<Vec<_>>(), vec![Rule::Mp, Rule::Gen]);
    assert_eq!(pa.induction.iter().copied().collect::<Vec<_>>(), vec![Induction::Closed]);
    let weak = system_profile("weak-GA").unwrap();
    assert_eq!(weak.rules.iter().copied().collect::<Vec<_>>(), vec![Rule::Mp]);
    assert!(weak.induction.is_empty());
    assert!(system_profile("ZF").is_err());
}

#[test]
fn closed_to_open_replay() {
    assert_eq!(check_corpus_script("closed-implies-open", SystemName::Pa).to_string(), "ACCEPTED");
    for system in [SystemName::OmegaPa, SystemName::Omega1Pa] {
        assert_eq!(
            check_corpus_script("closed-implies-open", system).to_string(),
            "REJECTED line 4: rule GEN not in profile"
        );
    }
}

#[test]
fn gen_needs_the_rule() {
    let s = script("1 | (x1 = x1) | hyp\n2 | (A x1)(x1 = x1) | gen 1 x1");
    assert!(check_proof(&s, &SystemName::StrongGa.profile()).is_accepted());
    assert_eq!(
        check_proof(&s, &SystemName::WeakGa.profile()),
        Verdict::Rejected { line: 2, reason: "rule GEN not in profile".into() }
    );
}

#[test]
fn missing_and_forward_references() {
    let s = script("1 | (0 = 0) | mp 2 3");
    let v = check_proof(&s, &SystemName::Pa.profile());
    assert!(matches!(v, Verdict::Rejected { line: 1, .. }), "{v}");
}

#[test]
fn k4_side_condition() {
    let bad = parse_formula("((A x1)(A x2)(x1 = x2) -> (A x2)(x2 = x2))").unwrap();
    assert!(!match_axiom(&bad, AxiomTag::K4));
    let good = parse_formula("((A x1)(A x2)(x1 = x2) -> (A x2)(x3 = x2))").unwrap();
    assert!(match_axiom(&good, AxiomTag::K4));
}

#[test]
fn k5_side_condition() {
    let bad = parse_formula("((A x1)((x1 = 0) -> (x1 = x1)) -> ((x1 = 0) -> (A x1)(x1 = x1)))").unwrap();
    assert!(!match_axiom(&bad, AxiomTag::K5));
    let good = parse_formula("((A x1)((x2 = 0) -> (x1 = x1)) -> ((x2 = 0) -> (A x1)(x1 = x1)))").unwrap();
    assert!(match_axiom(&good, AxiomTag::K5));
}

#[test]
fn tight_certificate_violates_at_one() {
    let cert = tight_demo_certificate(Codec::Positional, 5);
    let v = check_certificate(&cert, &SystemName::Omega2Pa.profile(), Codec::Positional).unwrap();
    assert!(matches!(v, CertVerdict::BoundViolatedAt { n: 1, .. }), "{v}");
}

#[test]
fn horizon_zero_certifies_zero() {
    let cert = tight_demo_certificate(Codec::Positional, 0);
    let v = check_certificate(&cert, &SystemName::Omega2Pa.profile(), Codec::Positional).unwrap();
    assert_eq!(v, CertVerdict::CertifiedUpTo(0));
}

#[test]
fn generous_certificate_is_sampled_only() {
    let cert = demo_certificate(BigUint::from(10u32).pow(400), 10);
    let v = check_certificate(&cert, &SystemName::Omega2Pa.profile(), Codec::Positional).unwrap();
    assert_eq!(v, CertVerdict::CertifiedUpTo(10));
    assert!(v.to_string().contains("not a totality proof"));
    assert!(check_certificate(&cert, &SystemName::Omega1Pa.profile(), Codec::Positional).is_err());
}

#[test]
fn broken_template_is_invalid_at_two() {
    let text = std::fs::read_to_string(corpus_dir().join("certs/broken-template.cert")).unwrap();
    let cert = parse_certificate(&text).unwrap();
    let v = check_certificate(&cert, &SystemName::Omega2Pa.profile(), Codec::Positional).unwrap();
    assert!(matches!(v, CertVerdict::InvalidTemplateAt { n: 2, .. }), "{v}");
}

#[test]
fn certificates_do_not_nest() {
    let mut template: Vec<String> = DEMO_TEMPLATE.iter().map(|s| s.to_string()).collect();
    template.push("3 | (A x1)((x1 + 0) = x1) | omega-spec other.cert".into());
    let mut cert = demo_certificate(BigUint::from(10u32).pow(400), 2);
    cert.template = template;
    let v = check_certificate(&cert, &SystemName::Omega2Pa.profile(), Codec::Positional).unwrap();
    assert!(matches!(&v, CertVerdict::InvalidTemplateAt { n: 0, reason } if reason.contains("OMEGA-SPEC")), "{v}");
}

#[test]
fn certificate_text_round_trip() {
    let cert = demo_certificate(BigUint::from(12345u32), 3);
    assert_eq!(parse_certificate(&cert.render()).unwrap(), cert);
    assert!(parse_certificate("@target: (x1 = x1)\n@bound: 5\n@horizon: 1\n1 | (0 = 0) | hyp").is_err());
}

#[test]
fn monotone_along_chains() {
    let dir = corpus_dir();
    let certs = CertificateDir(dir.clone());
    let checker = Checker { certificates: &certs, codec: Codec::Positional };
    for entry in load_corpus(&dir).unwrap() {
        for chain in CHAINS {
            for pair in chain.windows(2) {
                let small = checker.check(&entry.script, &pair[0].profile());
                let large = checker.check(&entry.script, &pair[1].profile());
                assert!(!small.is_accepted() || large.is_accepted(), "{} under {} vs {}", entry.name, pair[0], pair[1]);
            }
        }
    }
}

#[test]
fn single_line_mutations_are_rejected() {
    let dir = corpus_dir();
    let certs = CertificateDir(dir.clone());
    let checker = Checker { certificates: &certs, codec: Codec::Positional };
    for entry in load_corpus(&dir).unwrap() {
        for system in SystemName::ALL {
            let p = system.profile();
            if !checker.check(&entry.script, &p).is_accepted() {
                continue;
            }
            for (k, line) in entry.script.lines.iter().enumerate() {
                if line.justification == Justification::Hyp {
                    continue;
                }
                let mutated = mutate_line(&entry.script, k);
                assert!(!checker.check(&mutated, &p).is_accepted(), "{} line {} under {system}", entry.name, line.index);
            }
        }
    }
}

#[test]
fn hypotheses_are_flagged() {
    let v = check_corpus_script("hyp-conditional", SystemName::WeakGa);
    assert!(v.is_accepted() && !v.is_proof());
    assert_eq!(v.to_string(), "ACCEPTED (derivation from hypotheses)");
}

#[test]
fn certificate_lines_in_scripts() {
    let v = check_corpus_script("omega-spec-certified", SystemName::Omega2Pa);
    assert_eq!(v.to_string(), "ACCEPTED (sampled, not a totality proof)");
    let bad = check_corpus_script("omega-spec-bound-violated", SystemName::Omega2Pa);
    assert!(matches!(&bad, Verdict::Rejected { line: 1, reason } if reason.contains("bound violated at n = 1")));
}

proptest! {
    #[test]
    fn checking_is_deterministic(s in arb_script()) {
        for system in SystemName::ALL {
            let p = system.profile();
            prop_assert_eq!(check_proof(&s, &p), check_proof(&s, &p));
        }
    }

    #[test]
    fn lone_hypothesis_is_a_derivation(f in arb_formula(4)) {
        let s = ProofScript::numbered([(f, Justification::Hyp)]);
        let v = check_proof(&s, &SystemName::WeakGa.profile());
        prop_assert!(v.is_accepted() && !v.is_proof());
    }

    #[test]
    fn script_text_round_trip(s in arb_script()) {
        prop_assert_eq!(ProofScript::parse(&s.render()).unwrap(), s);
    }
}

#[test]
fn encodings_of_template_instances_grow() {
    let cert = demo_certificate(BigUint::default(), 0);
    let g: Vec<BigUint> = (0..=20).map(|n| encode(&cert.instantiate(n).unwrap(), Codec::Positional).value).collect();
    assert!(g.windows(2).all(|w| w[0] < w[1]));
}
