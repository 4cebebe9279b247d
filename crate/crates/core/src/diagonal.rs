//! Diagonal constructions over a supplied two-variable formula `W(x1, x2)`.
//!
//! * [`goedel_sentence`]: `P = (A x2)~W`, `g = #P`, sentence `P[x1 := g]`.
//! * [`anand_fixedpoint`]: `P = ~W`, `r = #P`, sentence `P[x1 := r]`, which
//!   keeps `x2` free.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::codec::{encode, Codec, GodelNumber};
use crate::kernel::{check_proof, ProofScript, SystemProfile};
use crate::primrec::q_check;
use crate::syntax::{numeral, Formula};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalResult {
    pub input: Formula,
    /// The formula whose number is substituted into itself.
    pub pre: Formula,
    pub fixed_gn: GodelNumber,
    pub sentence: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagonalError {
    #[error("expected free variables {expected:?}, found {found:?}")]
    FreeVariables { expected: BTreeSet<u32>, found: BTreeSet<u32> },
    #[error("q and the direct check disagree on the proof")]
    Disagreement,
}

fn require_free(f: &Formula, expected: &[u32]) -> Result<(), DiagonalError> {
    let found = f.free_vars();
    let expected: BTreeSet<u32> = expected.iter().copied().collect();
    if found == expected {
        Ok(())
    } else {
        Err(DiagonalError::FreeVariables { expected, found })
    }
}

fn diagonalise(w: &Formula, pre: Formula, codec: Codec) -> DiagonalResult {
    let fixed_gn = encode(&pre, codec);
    let sentence = pre
        .substitute(1, &numeral(fixed_gn.value.clone()))
        .expect("numerals are free for any variable");
    DiagonalResult { input: w.clone(), pre, fixed_gn, sentence }
}

pub fn goedel_sentence(w: &Formula, codec: Codec) -> Result<DiagonalResult, DiagonalError> {
    require_free(w, &[1, 2])?;
    Ok(diagonalise(w, Formula::forall(2, Formula::not(w.clone())), codec))
}

pub fn anand_fixedpoint(w: &Formula, codec: Codec) -> Result<DiagonalResult, DiagonalError> {
    require_free(w, &[1, 2])?;
    Ok(diagonalise(w, Formula::not(w.clone()), codec))
}

/// `q(#K, #proof)` computed through the codec, checked against a direct
/// reading: `proof` proves `K[x1 := #K]`. Returns the common answer.
pub fn self_reference_demo(
    k: &Formula,
    proof: &ProofScript,
    p: &SystemProfile,
    codec: Codec,
) -> Result<bool, DiagonalError> {
    require_free(k, &[1])?;
    let k_gn = encode(k, codec);
    let via_q = q_check(&k_gn, &encode(proof, codec), p);
    let instance = k.substitute(1, &numeral(k_gn.value.clone())).expect("numerals are free for any variable");
    let direct = check_proof(proof, p).is_proof() && proof.conclusion() == Some(&instance);
    if via_q == direct {
        Ok(via_q)
    } else {
        Err(DiagonalError::Disagreement)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::decode_formula;
    use crate::kernel::SystemName;
    use crate::proofs::reflexivity_proof;
    use crate::syntax::parse_formula;

    #[test]
    fn goedel_shape() {
        let w = parse_formula("(x1 = x2)").unwrap();
        let d = goedel_sentence(&w, Codec::Positional).unwrap();
        let g = encode(&parse_formula("(A x2)~(x1 = x2)").unwrap(), Codec::Positional);
        assert_eq!(d.fixed_gn, g);
        assert_eq!(d.sentence, Formula::forall(2, Formula::not(Formula::eq(numeral(g.value), crate::syntax::Term::var(2)))));
        assert!(d.sentence.is_closed());
        assert_eq!(decode_formula(&d.fixed_gn).unwrap(), d.pre);
        assert_eq!(goedel_sentence(&w, Codec::Positional).unwrap(), d);
    }

    #[test]
    fn anand_shape() {
        let w = parse_formula("(x1 = x2)").unwrap();
        let d = anand_fixedpoint(&w, Codec::Positional).unwrap();
        assert_eq!(d.sentence.free_vars().into_iter().collect::<Vec<_>>(), vec![2]);
        assert_ne!(d.fixed_gn, goedel_sentence(&w, Codec::Positional).unwrap().fixed_gn);
        assert!(d.sentence.substitute(2, &numeral(7u32)).unwrap().is_closed());
    }

    #[test]
    fn preconditions() {
        let w = parse_formula("(x1 = x3)").unwrap();
        assert!(goedel_sentence(&w, Codec::Positional).is_err());
        let k = parse_formula("(0 = 0)").unwrap();
        let proof = reflexivity_proof(&numeral(0u32)).unwrap();
        assert!(self_reference_demo(&k, &proof, &SystemName::Pa.profile(), Codec::Positional).is_err());
    }

    #[test]
    fn self_reference_on_reflexivity() {
        let k = parse_formula("(x1 = x1)").unwrap();
        let k_gn = encode(&k, Codec::Positional);
        let proof = reflexivity_proof(&numeral(k_gn.value)).unwrap();
        let pa = SystemName::Pa.profile();
        assert_eq!(self_reference_demo(&k, &proof, &pa, Codec::Positional), Ok(true));
        let wrong = reflexivity_proof(&numeral(5u32)).unwrap();
        assert_eq!(self_reference_demo(&k, &wrong, &pa, Codec::Positional), Ok(false));
    }
}
