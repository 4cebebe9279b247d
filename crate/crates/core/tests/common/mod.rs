//! Shared generators and fixtures for the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::Rng;

use pacheck::codec::{encode, Codec};
use pacheck::kernel::{AxiomTag, Justification, ProofLine, ProofScript};
use pacheck::proofs::{mutate_line, reflexivity_proof};
use pacheck::models::Ordinal;
use pacheck::syntax::{numeral, parse_formula, Formula, Term};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn n(x: u64) -> BigUint {
    BigUint::from(x)
}

pub fn nums(xs: &[u64]) -> Vec<BigUint> {
    xs.iter().copied().map(n).collect()
}

pub fn term_leaf() -> impl Strategy<Value = Term> {
    prop_oneof![
        Just(Term::Zero),
        (1u32..=6).prop_map(Term::var),
        (0u64..12).prop_map(numeral),
    ]
}

pub fn arb_term(depth: u32) -> impl Strategy<Value = Term> {
    term_leaf().prop_recursive(depth, 24, 2, |inner| {
        prop_oneof![
            (1u64..7, inner.clone()).prop_map(|(k, t)| Term::succ_n(n(k), t)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::add(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Term::mul(a, b)),
        ]
    })
}

/// Formulas of nesting depth at most `depth` over the four core connectives.
pub fn arb_formula(depth: u32) -> impl Strategy<Value = Formula> {
    let atom = (arb_term(2), arb_term(2)).prop_map(|(a, b)| Formula::eq(a, b));
    atom.prop_recursive(depth, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (1u32..=6, inner).prop_map(|(v, b)| Formula::forall(v, b)),
        ]
    })
}

pub fn arb_closed_term() -> impl Strategy<Value = Term> {
    (0u64..6).prop_map(numeral)
}

const TAGS: [AxiomTag; 14] = [
    AxiomTag::K1,
    AxiomTag::K2,
    AxiomTag::K3,
    AxiomTag::K4,
    AxiomTag::K5,
    AxiomTag::A1,
    AxiomTag::A2,
    AxiomTag::A3,
    AxiomTag::A4,
    AxiomTag::A5,
    AxiomTag::A6,
    AxiomTag::A7,
    AxiomTag::A8,
    AxiomTag::A9,
];

pub fn arb_justification() -> impl Strategy<Value = Justification> {
    prop_oneof![
        (0usize..TAGS.len()).prop_map(|i| Justification::Axiom(TAGS[i])),
        Just(Justification::Hyp),
        (1usize..20, 1usize..20).prop_map(|(i, j)| Justification::Mp(i, j)),
        (1usize..20, 1u32..7).prop_map(|(i, v)| Justification::Gen(i, v)),
        (1usize..20, 1usize..20).prop_map(|(i, j)| Justification::IndClosed(i, j)),
        (1usize..20, 1usize..20).prop_map(|(i, j)| Justification::IndOpen(i, j)),
        (1usize..20, 0u64..100).prop_map(|(i, k)| Justification::OmegaNum(i, n(k))),
        "[a-z]{1,6}/[a-z]{1,6}\\.cert".prop_map(Justification::OmegaSpec),
    ]
}

/// Syntactically well-formed scripts; not necessarily proofs.
pub fn arb_script() -> impl Strategy<Value = ProofScript> {
    prop::collection::vec((arb_formula(3), arb_justification()), 1..6).prop_map(ProofScript::numbered)
}

/// Ordinals below ω^4 in Cantor normal form.
pub fn arb_ordinal() -> impl Strategy<Value = Ordinal> {
    prop::collection::vec(0u64..5, 4).prop_map(|coeffs| {
        let terms = coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| **c > 0)
            .map(|(e, c)| (e as u32, n(*c)))
            .collect();
        Ordinal::from_cnf(terms).expect("descending exponents")
    })
}

/// A random ordinal below ω^4 from a plain RNG, for fixed-count sweeps.
pub fn random_ordinal(rng: &mut impl Rng) -> Ordinal {
    let terms = (0..4u32)
        .rev()
        .filter_map(|e| {
            let c: u64 = rng.gen_range(0..5);
            (c > 0).then(|| (e, n(c)))
        })
        .collect();
    Ordinal::from_cnf(terms).expect("descending exponents")
}

/// Random formula of depth at most `depth` from a plain RNG.
pub fn random_formula(rng: &mut impl Rng, depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return Formula::eq(random_term(rng, 2), random_term(rng, 2));
    }
    match rng.gen_range(0..3) {
        0 => Formula::not(random_formula(rng, depth - 1)),
        1 => Formula::implies(random_formula(rng, depth - 1), random_formula(rng, depth - 1)),
        _ => Formula::forall(rng.gen_range(1..=6), random_formula(rng, depth - 1)),
    }
}

pub fn random_term(rng: &mut impl Rng, depth: u32) -> Term {
    if depth == 0 || rng.gen_bool(0.4) {
        return match rng.gen_range(0..3) {
            0 => Term::Zero,
            1 => Term::var(rng.gen_range(1..=6)),
            _ => numeral(rng.gen_range(0u64..12)),
        };
    }
    match rng.gen_range(0..3) {
        0 => Term::succ_n(n(rng.gen_range(1..7)), random_term(rng, depth - 1)),
        1 => Term::add(random_term(rng, depth - 1), random_term(rng, depth - 1)),
        _ => Term::mul(random_term(rng, depth - 1), random_term(rng, depth - 1)),
    }
}

pub fn random_script(rng: &mut impl Rng) -> ProofScript {
    let len = rng.gen_range(1..8);
    let lines = (1..=len)
        .map(|i| {
            let justification = match rng.gen_range(0..5) {
                0 => Justification::Axiom(TAGS[rng.gen_range(0..TAGS.len())]),
                1 => Justification::Hyp,
                2 => Justification::Mp(rng.gen_range(1..=len), rng.gen_range(1..=len)),
                3 => Justification::Gen(rng.gen_range(1..=len), rng.gen_range(1..=6)),
                _ => Justification::OmegaNum(rng.gen_range(1..=len), n(rng.gen_range(0..50))),
            };
            ProofLine { index: i, formula: random_formula(rng, 4), justification }
        })
        .collect();
    ProofScript::new(lines)
}

/// Proof of `K[x1 := t]` for an axiom `K` whose only free variable is `x1`:
/// the axiom, GEN, a K4 instance and MP.
pub fn instance_proof(tag: AxiomTag, k: &Formula, t: &Term) -> ProofScript {
    let general = Formula::forall(1, k.clone());
    let instance = k.substitute(1, t).unwrap();
    ProofScript::numbered([
        (k.clone(), Justification::Axiom(tag)),
        (general.clone(), Justification::Gen(1, 1)),
        (Formula::implies(general, instance.clone()), Justification::Axiom(AxiomTag::K4)),
        (instance, Justification::Mp(2, 3)),
    ])
}

/// Twenty (K, candidate proof) pairs: genuine self-referential proofs,
/// proofs of the wrong instance, and single-line mutations.
pub fn self_reference_corpus() -> Vec<(Formula, ProofScript)> {
    let gn = |f: &Formula| numeral(encode(f, Codec::Positional).value);
    let refl = parse_formula("(x1 = x1)").unwrap();
    let a5 = parse_formula("((x1 + 0) = x1)").unwrap();
    let a7 = parse_formula("((x1 * 0) = 0)").unwrap();
    let mut out = Vec::new();

    let refl_proof = reflexivity_proof(&gn(&refl)).unwrap();
    out.push((refl.clone(), refl_proof.clone()));
    out.push((refl.clone(), reflexivity_proof(&numeral(5u32)).unwrap()));
    out.push((refl.clone(), reflexivity_proof(&gn(&a5)).unwrap()));
    for k in [4, 15] {
        out.push((refl.clone(), mutate_line(&refl_proof, k)));
    }
    for (tag, k) in [(AxiomTag::A5, &a5), (AxiomTag::A7, &a7)] {
        let proof = instance_proof(tag, k, &gn(k));
        out.push((k.clone(), proof.clone()));
        out.push((k.clone(), instance_proof(tag, k, &numeral(3u32))));
        out.push((k.clone(), instance_proof(tag, k, &Term::var(1))));
        for line in 0..4 {
            out.push((k.clone(), mutate_line(&proof, line)));
        }
    }
    out.push((a5.clone(), instance_proof(AxiomTag::A7, &a7, &gn(&a5))));
    assert_eq!(out.len(), 20);
    out
}
