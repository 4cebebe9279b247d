//! Browser bindings: Gödel-number a formula, find a Beta witness, check a
//! proof script. Each function returns a display string; errors come back
//! as `"error: ..."` so the page needs no exception handling.

use num_bigint::BigUint;
use wasm_bindgen::prelude::*;

use pacheck::beta::encode_sequence;
use pacheck::codec::{encode, Codec};
use pacheck::kernel::{Checker, NoCertificates, ProofScript, SystemName};
use pacheck::syntax::{parse_formula, parse_term};

fn codec(name: &str) -> Result<Codec, String> {
    if name.trim().is_empty() {
        return Ok(Codec::Positional);
    }
    name.trim().parse().map_err(|e| format!("{e}"))
}

fn report(r: Result<String, String>) -> String {
    r.unwrap_or_else(|e| format!("error: {e}"))
}

/// Gödel number of a formula (or, failing that, a term) under `codec`
/// (`positional` or `prime`; empty means positional).
#[wasm_bindgen]
pub fn encode_formula(text: &str, codec_name: &str) -> String {
    report((|| {
        let codec = codec(codec_name)?;
        if let Ok(f) = parse_formula(text) {
            return Ok(encode(&f, codec).value.to_string());
        }
        let t = parse_term(text).map_err(|e| format!("{e}"))?;
        Ok(encode(&t, codec).value.to_string())
    })())
}

/// Least Beta witness for a comma-separated sequence, as `u=.. v=..`.
#[wasm_bindgen]
pub fn beta_encode(seq: &str) -> String {
    report((|| {
        let values = seq
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<BigUint>().map_err(|_| format!("not a natural number: {s:?}")))
            .collect::<Result<Vec<_>, _>>()?;
        let w = encode_sequence(&values);
        Ok(format!("u={} v={}", w.u, w.v))
    })())
}

/// Check a proof script under a named profile; an empty name uses the
/// script's `@system` header. `omega-spec` lines are rejected since the
/// page has no certificate files.
#[wasm_bindgen]
pub fn check_script(text: &str, system: &str) -> String {
    report((|| {
        let script = ProofScript::parse(text).map_err(|e| format!("{e}"))?;
        let name: SystemName = match system.trim() {
            "" => script.system.ok_or("no system chosen and the script has no @system header")?,
            s => s.parse().map_err(|e| format!("{e}"))?,
        };
        let checker = Checker { certificates: &NoCertificates, codec: Codec::Positional };
        Ok(format!("{name}: {}", checker.check(&script, &name.profile())))
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_matches_core() {
        let f = parse_formula("(0 = 0)").unwrap();
        assert_eq!(encode_formula("(0 = 0)", ""), encode(&f, Codec::Positional).value.to_string());
        assert_ne!(encode_formula("(0 = 0)", "prime"), encode_formula("(0 = 0)", "positional"));
        assert!(encode_formula("(0 = 0)", "unary").starts_with("error:"));
        assert!(encode_formula("(0 =", "").starts_with("error:"));
    }

    #[test]
    fn beta_least_witness() {
        assert_eq!(beta_encode("2,3"), "u=8 v=2");
        assert!(beta_encode("2,x").starts_with("error:"));
    }

    #[test]
    fn check_uses_header_or_override() {
        let script = "@system: PA\n1 | ((x1 + 0) = x1) | axiom A5\n";
        assert_eq!(check_script(script, ""), "PA: ACCEPTED");
        assert!(check_script(script, "nope").starts_with("error:"));
        assert!(check_script("1 | (0 = 0) | mp 1 1\n", "weak-GA").starts_with("weak-GA: REJECTED"));
    }
}
