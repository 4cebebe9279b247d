mod common;

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigUint;
use proptest::prelude::*;

use common::{arb_formula, arb_script, arb_term};
use pacheck::codec::{
    decode, decode_formula, decode_script, decode_term, encode, gn_compare, prime_power, symbol_codes, Codec,
    CodecError, Decoded, GodelNumber,
};
use pacheck::syntax::{parse_formula, parse_term};

const CODECS: [Codec; 2] = [Codec::Positional, Codec::PrimePower];

fn bijective_base_256(bytes: &[u8]) -> BigUint {
    bytes.iter().fold(BigUint::default(), |acc, b| acc * 256u32 + (*b as u32 + 1))
}

#[test]
fn prime_power_oracle() {
    assert_eq!(prime_power(&[1, 3]), BigUint::from(54u32));
    // "(0 = 0)" is ( 0 space = space 0 ): 2^9 3^1 5^21 7^13 11^21 13^1 17^11.
    let codes = symbol_codes("(0 = 0)");
    assert_eq!(codes, vec![9, 1, 21, 13, 21, 1, 11]);
    let f = parse_formula("(0 = 0)").unwrap();
    assert_eq!(encode(&f, Codec::PrimePower).value, prime_power(&codes));
}

#[test]
fn positional_oracle() {
    let f = parse_formula("(0 = 0)").unwrap();
    assert_eq!(encode(&f, Codec::Positional).value, bijective_base_256(b"(0 = 0)"));
}

#[test]
fn decode_oracles() {
    let zero = GodelNumber::new(BigUint::default(), Codec::Positional);
    assert!(matches!(decode(&zero), Err(CodecError::NotAnEncoding(_))));
    // Codes (1, 3) spell "0'", the numeral one.
    let g = GodelNumber::new(BigUint::from(54u32), Codec::PrimePower);
    assert_eq!(decode(&g).unwrap(), Decoded::Term(parse_term("0'").unwrap()));
    // (3, 1) spells "'0", which is not well formed.
    let bad = GodelNumber::new(prime_power(&[3, 1]), Codec::PrimePower);
    assert!(decode(&bad).is_err());
}

#[test]
fn compare_oracles() {
    let zero = encode(&parse_term("0").unwrap(), Codec::Positional);
    let two = encode(&parse_term("0''").unwrap(), Codec::Positional);
    assert_eq!(gn_compare(&zero, &two), Ok(Ordering::Less));
    assert_eq!(gn_compare(&two, &two), Ok(Ordering::Equal));
    let prime = encode(&parse_term("0").unwrap(), Codec::PrimePower);
    assert!(gn_compare(&zero, &prime).is_err());
}

#[test]
fn decoders_reject_the_wrong_kind() {
    let f = encode(&parse_formula("(0 = 0)").unwrap(), Codec::Positional);
    assert!(decode_term(&f).is_err());
    assert!(decode_script(&f).is_err());
    assert!(decode_formula(&f).is_ok());
}

#[test]
fn codec_names() {
    assert_eq!("positional".parse::<Codec>(), Ok(Codec::Positional));
    assert_eq!("prime".parse::<Codec>(), Ok(Codec::PrimePower));
    assert!("unary".parse::<Codec>().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn formula_round_trip(f in arb_formula(8)) {
        for codec in CODECS {
            prop_assert_eq!(decode_formula(&encode(&f, codec)).unwrap(), f.clone());
        }
    }

    #[test]
    fn term_round_trip(t in arb_term(5)) {
        for codec in CODECS {
            prop_assert_eq!(decode_term(&encode(&t, codec)).unwrap(), t.clone());
        }
    }

    #[test]
    fn script_round_trip(s in arb_script()) {
        for codec in CODECS {
            prop_assert_eq!(decode_script(&encode(&s, codec)).unwrap(), s.clone());
        }
    }

    #[test]
    fn positional_monotone_in_length(a in arb_formula(5), b in arb_formula(5)) {
        let (ta, tb) = (a.to_string(), b.to_string());
        prop_assume!(ta.len() != tb.len());
        let order = gn_compare(&encode(&a, Codec::Positional), &encode(&b, Codec::Positional)).unwrap();
        prop_assert_eq!(order, ta.len().cmp(&tb.len()));
    }

    #[test]
    fn prime_power_is_classical(f in arb_formula(4)) {
        let codes = symbol_codes(&f.to_string());
        prop_assert_eq!(encode(&f, Codec::PrimePower).value, prime_power(&codes));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn no_collisions(fs in prop::collection::vec(arb_formula(6), 100)) {
        for codec in CODECS {
            let mut seen: HashMap<BigUint, String> = HashMap::new();
            for f in &fs {
                let text = f.to_string();
                if let Some(prev) = seen.insert(encode(f, codec).value, text.clone()) {
                    prop_assert_eq!(prev, text);
                }
            }
        }
    }
}
