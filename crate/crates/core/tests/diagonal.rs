mod common;

use proptest::prelude::*;

use common::{arb_term, instance_proof, self_reference_corpus};
use pacheck::codec::{decode_formula, encode, Codec};
use pacheck::diagonal::{anand_fixedpoint, goedel_sentence, self_reference_demo, DiagonalError};
use pacheck::kernel::{AxiomTag, SystemName};
use pacheck::proofs::reflexivity_proof;
use pacheck::syntax::{numeral, parse_formula, Formula, Term};

#[test]
fn goedel_oracle() {
    let w = parse_formula("(x1 = x2)").unwrap();
    let d = goedel_sentence(&w, Codec::Positional).unwrap();
    let p = parse_formula("(A x2)~(x1 = x2)").unwrap();
    assert_eq!(d.pre, p);
    assert_eq!(d.fixed_gn, encode(&p, Codec::Positional));
    assert_eq!(d.sentence, p.substitute(1, &numeral(d.fixed_gn.value.clone())).unwrap());
    assert!(d.sentence.is_closed());
}

#[test]
fn anand_oracle() {
    let w = parse_formula("(x1 = x2)").unwrap();
    let d = anand_fixedpoint(&w, Codec::Positional).unwrap();
    assert_eq!(d.pre, parse_formula("~(x1 = x2)").unwrap());
    assert_eq!(d.sentence.free_vars().into_iter().collect::<Vec<_>>(), vec![2]);
}

#[test]
fn preconditions() {
    let w = parse_formula("(x1 = 0)").unwrap();
    assert!(matches!(goedel_sentence(&w, Codec::Positional), Err(DiagonalError::FreeVariables { .. })));
    assert!(anand_fixedpoint(&w, Codec::Positional).is_err());
    let closed = parse_formula("(0 = 0)").unwrap();
    let proof = reflexivity_proof(&numeral(0u32)).unwrap();
    assert!(self_reference_demo(&closed, &proof, &SystemName::Pa.profile(), Codec::Positional).is_err());
}

#[test]
fn self_reference_oracles() {
    let pa = SystemName::Pa.profile();
    let k = parse_formula("(x1 = x1)").unwrap();
    let proof = reflexivity_proof(&numeral(encode(&k, Codec::Positional).value)).unwrap();
    assert_eq!(self_reference_demo(&k, &proof, &pa, Codec::Positional), Ok(true));
    let wrong = reflexivity_proof(&numeral(5u32)).unwrap();
    assert_eq!(self_reference_demo(&k, &wrong, &pa, Codec::Positional), Ok(false));
    // The same proof does not exist in a system without GEN.
    assert_eq!(self_reference_demo(&k, &proof, &SystemName::OmegaPa.profile(), Codec::Positional), Ok(false));
}

#[test]
fn self_reference_corpus_agrees() {
    let pa = SystemName::Pa.profile();
    let verdicts: Vec<bool> = self_reference_corpus()
        .iter()
        .map(|(k, proof)| self_reference_demo(k, proof, &pa, Codec::Positional).expect("both sides agree"))
        .collect();
    assert_eq!(verdicts.iter().filter(|v| **v).count(), 3, "{verdicts:?}");
}

#[test]
fn self_reference_under_prime_codec() {
    let pa = SystemName::Pa.profile();
    let k = parse_formula("((x1 * 0) = 0)").unwrap();
    let proof = instance_proof(AxiomTag::A7, &k, &numeral(encode(&k, Codec::PrimePower).value));
    assert_eq!(self_reference_demo(&k, &proof, &pa, Codec::PrimePower), Ok(true));
    assert_eq!(self_reference_demo(&k, &proof, &pa, Codec::Positional), Ok(false));
}

/// Formulas with exactly `x1` and `x2` free.
fn arb_two_place() -> impl Strategy<Value = Formula> {
    (arb_term(2), arb_term(2), 0u8..3).prop_map(|(a, b, shape)| {
        let core = Formula::eq(Term::add(Term::var(1), a.clone()), Term::mul(Term::var(2), b.clone()));
        let core = core.substitute_avoiding(&[(3, Term::Zero), (4, Term::Zero), (5, Term::Zero), (6, Term::Zero)].into_iter().collect());
        match shape {
            0 => core,
            1 => Formula::not(core),
            _ => Formula::implies(core.clone(), Formula::forall(3, core)),
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn goedel_sentences_are_closed_fixed_points(w in arb_two_place()) {
        for codec in [Codec::Positional, Codec::PrimePower] {
            let d = goedel_sentence(&w, codec).unwrap();
            prop_assert!(d.sentence.is_closed());
            prop_assert_eq!(decode_formula(&d.fixed_gn).unwrap(), d.pre);
        }
    }

    #[test]
    fn anand_keeps_x2_free(w in arb_two_place()) {
        for codec in [Codec::Positional, Codec::PrimePower] {
            let d = anand_fixedpoint(&w, codec).unwrap();
            prop_assert_eq!(d.sentence.free_vars().into_iter().collect::<Vec<_>>(), vec![2]);
            prop_assert_eq!(decode_formula(&d.fixed_gn).unwrap(), d.pre);
        }
    }
}
