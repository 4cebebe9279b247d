//! Gödel numbering.
//!
//! Every object is numbered through its canonical text rendering.
//!
//! * [`Codec::Positional`] reads the rendering as a bijective base-256
//!   numeral: byte `b` is digit `b + 1`, most significant first. Cheap in
//!   both directions, injective, and strictly monotone in rendering length.
//! * [`Codec::PrimePower`] is the classical scheme: the rendering is split
//!   into symbols with codes `c1, ..., cn` and numbered `2^c1 * 3^c2 * ... *
//!   p_n^cn`. Symbol codes:
//!
//!   | symbol | code | symbol | code |
//!   |--------|------|--------|------|
//!   | `0`    | 1    | `=`    | 13   |
//!   | `'`    | 3    | `+`    | 15   |
//!   | `~`    | 5    | `*`    | 17   |
//!   | `->`   | 7    | `A`    | 19   |
//!   | `(`    | 9    | space  | 21   |
//!   | `)`    | 11   | `x_i`  | 2i   |
//!
//!   Successor runs and script text need a few more: `{` is 23, `}` is 25,
//!   then `1`..`9`, newline, `|`, `-`, `K` and `a`..`z` take the odd codes
//!   27..103 in that order, and any other byte `b` is `105 + 2b`.
//!   Proof scripts are numbered over the symbols of their whole rendering,
//!   lines separated by a newline byte.

use std::cmp::Ordering;
use std::env;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::kernel::ProofScript;
use crate::syntax::{parse_formula, parse_term, Formula, Term};

/// Environment variable selecting the default codec.
pub const CODEC_ENV: &str = "PACHECK_CODEC";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Codec {
    #[default]
    Positional,
    PrimePower,
}

impl Codec {
    /// The codec named by `PACHECK_CODEC`, positional when unset.
    pub fn from_env() -> Result<Codec, CodecError> {
        match env::var(CODEC_ENV) {
            Ok(v) => v.parse(),
            Err(_) => Ok(Codec::Positional),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Codec::Positional => "positional",
            Codec::PrimePower => "prime",
        }
    }
}

impl fmt::Display for Codec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Codec {
    type Err = CodecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "positional" => Ok(Codec::Positional),
            "prime" | "prime-power" => Ok(Codec::PrimePower),
            other => Err(CodecError::UnknownCodec(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("{0} is not the Gödel number of any term, formula or proof script")]
    NotAnEncoding(BigUint),
    #[error("codec mismatch: {0} vs {1}")]
    CodecMismatch(Codec, Codec),
    #[error("unknown codec {0:?} (expected positional or prime)")]
    UnknownCodec(String),
}

/// A natural number tagged with the codec that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GodelNumber {
    pub value: BigUint,
    pub codec: Codec,
}

impl GodelNumber {
    pub fn new(value: BigUint, codec: Codec) -> Self {
        GodelNumber { value, codec }
    }
}

impl fmt::Display for GodelNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Objects with a canonical text rendering.
pub trait Encodable {
    fn canonical_text(&self) -> String;
}

impl Encodable for Term {
    fn canonical_text(&self) -> String {
        self.to_string()
    }
}

impl Encodable for Formula {
    fn canonical_text(&self) -> String {
        self.to_string()
    }
}

impl Encodable for ProofScript {
    fn canonical_text(&self) -> String {
        self.render()
    }
}

pub fn encode<T: Encodable + ?Sized>(obj: &T, codec: Codec) -> GodelNumber {
    GodelNumber::new(encode_text(&obj.canonical_text(), codec), codec)
}

pub fn encode_text(text: &str, codec: Codec) -> BigUint {
    match codec {
        Codec::Positional => positional_value(text.as_bytes()),
        Codec::PrimePower => prime_power(&symbol_codes(text)),
    }
}

fn positional_value(bytes: &[u8]) -> BigUint {
    // Little-endian base-256 digits of sum (b_i + 1) * 256^(n-1-i), with carries.
    let mut digits: Vec<u32> = vec![0; bytes.len() + 1];
    for (pos, b) in bytes.iter().rev().enumerate() {
        digits[pos] += *b as u32 + 1;
        let mut k = pos;
        while digits[k] >= 256 {
            digits[k] -= 256;
            digits[k + 1] += 1;
            k += 1;
        }
    }
    let le: Vec<u8> = digits.into_iter().map(|d| d as u8).collect();
    BigUint::from_bytes_le(&le)
}

fn positional_bytes(value: &BigUint) -> Vec<u8> {
    let mut v = value.clone();
    let base = BigUint::from(256u32);
    let mut out = Vec::new();
    while !v.is_zero() {
        let (q, r) = v.div_rem(&base);
        // Digit in 1..=256.
        let (digit, q) = if r.is_zero() { (256u32, q - 1u32) } else { (r.to_u32().unwrap(), q) };
        out.push((digit - 1) as u8);
        v = q;
    }
    out.reverse();
    out
}

/// The text a Gödel number stands for.
pub fn decode_text(g: &GodelNumber) -> Result<String, CodecError> {
    let not = || CodecError::NotAnEncoding(g.value.clone());
    let text = match g.codec {
        Codec::Positional => String::from_utf8(positional_bytes(&g.value)).map_err(|_| not())?,
        Codec::PrimePower => {
            let codes = prime_power_exponents(&g.value).ok_or_else(not)?;
            codes_to_text(&codes).ok_or_else(not)?
        }
    };
    if text.is_empty() {
        return Err(not());
    }
    Ok(text)
}

/// A decoded object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decoded {
    Term(Term),
    Formula(Formula),
    Script(ProofScript),
}

/// Decode to whichever kind of object the number encodes. Only canonical
/// renderings decode; anything else is [`CodecError::NotAnEncoding`].
pub fn decode(g: &GodelNumber) -> Result<Decoded, CodecError> {
    let text = decode_text(g)?;
    if let Ok(f) = parse_formula(&text) {
        if f.canonical_text() == text {
            return Ok(Decoded::Formula(f));
        }
    }
    if let Ok(t) = parse_term(&text) {
        if t.canonical_text() == text {
            return Ok(Decoded::Term(t));
        }
    }
    if let Ok(s) = ProofScript::parse(&text) {
        if !s.lines.is_empty() && s.render() == text {
            return Ok(Decoded::Script(s));
        }
    }
    Err(CodecError::NotAnEncoding(g.value.clone()))
}

pub fn decode_formula(g: &GodelNumber) -> Result<Formula, CodecError> {
    match decode(g)? {
        Decoded::Formula(f) => Ok(f),
        _ => Err(CodecError::NotAnEncoding(g.value.clone())),
    }
}

pub fn decode_term(g: &GodelNumber) -> Result<Term, CodecError> {
    match decode(g)? {
        Decoded::Term(t) => Ok(t),
        _ => Err(CodecError::NotAnEncoding(g.value.clone())),
    }
}

pub fn decode_script(g: &GodelNumber) -> Result<ProofScript, CodecError> {
    match decode(g)? {
        Decoded::Script(s) => Ok(s),
        _ => Err(CodecError::NotAnEncoding(g.value.clone())),
    }
}

/// Numeric order of two Gödel numbers from the same codec.
pub fn gn_compare(a: &GodelNumber, b: &GodelNumber) -> Result<Ordering, CodecError> {
    if a.codec != b.codec {
        return Err(CodecError::CodecMismatch(a.codec, b.codec));
    }
    Ok(a.value.cmp(&b.value))
}

const FIXED_SYMBOLS: [(&str, u32); 13] = [
    ("0", 1),
    ("'", 3),
    ("~", 5),
    ("->", 7),
    ("(", 9),
    (")", 11),
    ("=", 13),
    ("+", 15),
    ("*", 17),
    ("A", 19),
    (" ", 21),
    ("{", 23),
    ("}", 25),
];

/// Single-byte symbols of script text, coded `27, 29, ...` in this order.
const EXTRA_SYMBOLS: &[u8] = b"123456789\n|-Kabcdefghijklmnopqrstuvwxyz";
const EXTRA_BASE: u32 = 27;
const BYTE_BASE: u32 = EXTRA_BASE + 2 * EXTRA_SYMBOLS.len() as u32;

/// Split a rendering into prime-power symbol codes.
pub fn symbol_codes(text: &str) -> Vec<u32> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    'outer: while i < bytes.len() {
        if bytes[i] == b'x' && matches!(bytes.get(i + 1), Some(b'1'..=b'9')) {
            let mut k = i + 1;
            while k < bytes.len() && bytes[k].is_ascii_digit() {
                k += 1;
            }
            if let Ok(idx) = text[i + 1..k].parse::<u32>() {
                if idx <= u32::MAX / 2 {
                    out.push(2 * idx);
                    i = k;
                    continue;
                }
            }
        }
        for (sym, code) in FIXED_SYMBOLS {
            if bytes[i..].starts_with(sym.as_bytes()) {
                out.push(code);
                i += sym.len();
                continue 'outer;
            }
        }
        let b = bytes[i];
        if let Some(k) = EXTRA_SYMBOLS.iter().position(|e| *e == b) {
            out.push(EXTRA_BASE + 2 * k as u32);
        } else {
            out.push(BYTE_BASE + 2 * b as u32);
        }
        i += 1;
    }
    out
}

/// Inverse of [`symbol_codes`].
pub fn codes_to_text(codes: &[u32]) -> Option<String> {
    let mut bytes = Vec::new();
    for &c in codes {
        if c == 0 {
            return None;
        }
        if c % 2 == 0 {
            bytes.extend_from_slice(format!("x{}", c / 2).as_bytes());
        } else if let Some((sym, _)) = FIXED_SYMBOLS.iter().find(|(_, code)| *code == c) {
            bytes.extend_from_slice(sym.as_bytes());
        } else if (EXTRA_BASE..BYTE_BASE).contains(&c) {
            bytes.push(EXTRA_SYMBOLS[((c - EXTRA_BASE) / 2) as usize]);
        } else if (BYTE_BASE..BYTE_BASE + 512).contains(&c) {
            bytes.push(((c - BYTE_BASE) / 2) as u8);
        } else {
            return None;
        }
    }
    String::from_utf8(bytes).ok()
}

/// `2^c1 * 3^c2 * ... * p_n^cn`.
pub fn prime_power(codes: &[u32]) -> BigUint {
    let primes = first_primes(codes.len());
    let mut layer: Vec<BigUint> = primes.iter().zip(codes).map(|(p, c)| BigUint::from(*p).pow(*c)).collect();
    // Balanced product tree keeps the multiplications subquadratic.
    while layer.len() > 1 {
        layer = layer
            .chunks(2)
            .map(|pair| match pair {
                [a, b] => a * b,
                [a] => a.clone(),
                _ => unreachable!(),
            })
            .collect();
    }
    layer.pop().unwrap_or_else(BigUint::one)
}

/// Exponent sequence of a number of the form `2^c1 * ... * p_n^cn` with all
/// `ci >= 1`; `None` for anything else.
pub fn prime_power_exponents(value: &BigUint) -> Option<Vec<u32>> {
    if value.is_zero() {
        return None;
    }
    // Little-endian base-2^64 digits, divided by word-sized prime powers.
    let twos = value.trailing_zeros().unwrap_or(0);
    if twos == 0 || twos > u32::MAX as u64 {
        return None;
    }
    let mut digits = (value >> twos).to_u64_digits();
    let mut scratch = Vec::with_capacity(digits.len());
    let mut out = vec![twos as u32];
    let mut primes = PrimeIter::default();
    primes.next_prime();
    while !(digits.len() == 1 && digits[0] == 1) {
        let p = primes.next_prime();
        let (mut chunk, mut per_chunk) = (p, 1u32);
        while let Some(next) = chunk.checked_mul(p) {
            chunk = next;
            per_chunk += 1;
        }
        let mut e = 0u32;
        for (divisor, step) in [(chunk, per_chunk), (p, 1)] {
            while div_exact(&digits, divisor, &mut scratch) {
                std::mem::swap(&mut digits, &mut scratch);
                e += step;
            }
        }
        if e == 0 {
            return None;
        }
        out.push(e);
    }
    Some(out)
}

/// `digits / d` into `out` when the odd divisor `d` divides exactly.
///
/// Exact division by multiplying with the inverse of `d` modulo 2^64, from
/// the low word up; the final borrow is zero exactly when `d` divides.
fn div_exact(digits: &[u64], d: u64, out: &mut Vec<u64>) -> bool {
    debug_assert!(d % 2 == 1);
    // Newton iteration: each step doubles the number of correct low bits.
    let mut inv = d;
    for _ in 0..5 {
        inv = inv.wrapping_mul(2u64.wrapping_sub(d.wrapping_mul(inv)));
    }
    out.clear();
    out.reserve(digits.len());
    let mut borrow = 0u64;
    for &x in digits {
        let (t, under) = x.overflowing_sub(borrow);
        let q = t.wrapping_mul(inv);
        out.push(q);
        // q * d = t + hi * 2^64 with hi < d, so the borrow fits a word.
        borrow = ((q as u128 * d as u128) >> 64) as u64 + under as u64;
    }
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    borrow == 0
}

#[derive(Default)]
struct PrimeIter {
    found: Vec<u64>,
}

impl PrimeIter {
    fn next_prime(&mut self) -> u64 {
        let mut c = self.found.last().map_or(2, |p| p + 1);
        loop {
            if self.found.iter().take_while(|p| *p * *p <= c).all(|p| c % p != 0) {
                self.found.push(c);
                return c;
            }
            c += 1;
        }
    }
}

fn first_primes(n: usize) -> Vec<u64> {
    let mut it = PrimeIter::default();
    (0..n).map(|_| it.next_prime()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::numeral;

    #[test]
    fn prime_power_classical() {
        assert_eq!(prime_power(&[1, 3]), BigUint::from(54u32));
        assert_eq!(symbol_codes("0'"), vec![1, 3]);
        assert_eq!(prime_power_exponents(&BigUint::from(54u32)), Some(vec![1, 3]));
        // 2^1 * 5^1 skips 3.
        assert_eq!(prime_power_exponents(&BigUint::from(10u32)), None);
    }

    #[test]
    fn decode_54_is_the_term_zero_prime() {
        let g = GodelNumber::new(54u32.into(), Codec::PrimePower);
        assert_eq!(decode(&g), Ok(Decoded::Term(numeral(1u32))));
    }

    #[test]
    fn positional_zero_is_not_an_encoding() {
        let g = GodelNumber::new(BigUint::zero(), Codec::Positional);
        assert!(matches!(decode(&g), Err(CodecError::NotAnEncoding(_))));
    }

    #[test]
    fn positional_digits_roundtrip() {
        for bytes in [&b"\xff"[..], b"\xff\xff", b"a", b"\x00", b"\x00\xff\x00"] {
            let v = positional_value(bytes);
            assert_eq!(positional_bytes(&v), bytes);
        }
    }

    #[test]
    fn symbol_codes_roundtrip_text() {
        for text in [
            "(A x12)~(x3 = 0'{15})",
            "@name: x0 y x01\n1 | (0 = 0) | axiom A5",
            "omega-num 1 4722366482869645213696",
        ] {
            assert_eq!(codes_to_text(&symbol_codes(text)).as_deref(), Some(text));
        }
        assert_eq!(symbol_codes("(x1 = x1)"), vec![9, 2, 21, 13, 21, 2, 11]);
    }

    #[test]
    fn codec_mismatch() {
        let a = GodelNumber::new(1u32.into(), Codec::Positional);
        let b = GodelNumber::new(1u32.into(), Codec::PrimePower);
        assert_eq!(gn_compare(&a, &b), Err(CodecError::CodecMismatch(Codec::Positional, Codec::PrimePower)));
        assert_eq!(gn_compare(&a, &a), Ok(Ordering::Equal));
    }

    #[test]
    fn non_canonical_text_does_not_decode() {
        let g = GodelNumber::new(encode_text("(0=0)", Codec::Positional), Codec::Positional);
        assert!(decode(&g).is_err());
    }
}
