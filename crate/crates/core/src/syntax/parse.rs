//! Recursive-descent parser for the ASCII formula grammar.
//!
//! Abbreviations (`&`, `|`, `E`, `E1`, `<`) are expanded while parsing, so the
//! result only ever contains the four core connectives. Variables introduced
//! by an expansion are the least indices not occurring anywhere in the input
//! text nor in the already-expanded subformula.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::Zero as _;
use thiserror::Error;

use super::formula::fresh_var;
use super::{Formula, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown symbol {symbol:?} at offset {offset}")]
    UnknownSymbol { offset: usize, symbol: char },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::UnknownSymbol { offset, .. } => *offset,
        }
    }

    fn syntax(offset: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax { offset, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    Zero,
    Var(u32),
    /// `'` or `'{n}`.
    Primes(BigUint),
    Plus,
    Star,
    Equals,
    Less,
    Tilde,
    Arrow,
    Amp,
    Bar,
    All,
    Exists,
    ExistsUnique,
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::LParen => "'('",
        Tok::RParen => "')'",
        Tok::Zero => "'0'",
        Tok::Var(_) => "variable",
        Tok::Primes(_) => "'''",
        Tok::Plus => "'+'",
        Tok::Star => "'*'",
        Tok::Equals => "'='",
        Tok::Less => "'<'",
        Tok::Tilde => "'~'",
        Tok::Arrow => "'->'",
        Tok::Amp => "'&'",
        Tok::Bar => "'|'",
        Tok::All => "'A'",
        Tok::Exists => "'E'",
        Tok::ExistsUnique => "'E1'",
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let skip_ws = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_whitespace() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0' => Tok::Zero,
            b'+' => Tok::Plus,
            b'*' => Tok::Star,
            b'=' => Tok::Equals,
            b'<' => Tok::Less,
            b'~' => Tok::Tilde,
            b'&' => Tok::Amp,
            b'|' => Tok::Bar,
            b'A' => Tok::All,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            b'E' if bytes.get(i + 1) == Some(&b'1') => {
                i += 1;
                Tok::ExistsUnique
            }
            b'E' => Tok::Exists,
            b'\'' => {
                let j = skip_ws(i + 1);
                if bytes.get(j) == Some(&b'{') {
                    let digits_start = skip_ws(j + 1);
                    let mut k = digits_start;
                    while k < bytes.len() && bytes[k].is_ascii_digit() {
                        k += 1;
                    }
                    let close = skip_ws(k);
                    if k == digits_start || bytes.get(close) != Some(&b'}') {
                        return Err(ParseError::syntax(j, "expected '{n}' successor run"));
                    }
                    let n: BigUint = text[digits_start..k].parse().expect("ascii digits");
                    if n.is_zero() || bytes[digits_start] == b'0' {
                        return Err(ParseError::syntax(digits_start, "successor run must be a positive count without leading zeros"));
                    }
                    i = close;
                    Tok::Primes(n)
                } else {
                    Tok::Primes(BigUint::from(1u32))
                }
            }
            b'x' => {
                let mut k = i + 1;
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                let digits = &text[i + 1..k];
                if digits.is_empty() || digits.starts_with('0') {
                    return Err(ParseError::syntax(start, "variable must be x followed by a positive index"));
                }
                let idx: u32 = digits
                    .parse()
                    .map_err(|_| ParseError::syntax(start, "variable index out of range"))?;
                i = k - 1;
                Tok::Var(idx)
            }
            _ => {
                let symbol = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError::UnknownSymbol { offset: i, symbol });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    text_vars: BTreeSet<u32>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn new(text: &str) -> PResult<Parser> {
        let toks = tokenize(text)?;
        let text_vars = toks
            .iter()
            .filter_map(|(t, _)| match t {
                Tok::Var(i) => Some(*i),
                _ => None,
            })
            .collect();
        Ok(Parser { toks, pos: 0, text_vars })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(t, _)| t)
    }

    /// Error located at the current token, or at the last token when the
    /// input ran out.
    fn error(&self, message: impl Into<String>) -> ParseError {
        let offset = match self.toks.get(self.pos) {
            Some((_, off)) => *off,
            None => self.toks.last().map(|(_, off)| *off).unwrap_or(0),
        };
        ParseError::syntax(offset, message)
    }

    fn expect(&mut self, want: Tok) -> PResult<()> {
        match self.peek() {
            Some(t) if *t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.error(format!("expected {}, found {}", describe(&want), describe(t)))),
            None => Err(self.error(format!("unexpected end of input, expected {}", describe(&want)))),
        }
    }

    fn expect_var(&mut self) -> PResult<u32> {
        match self.peek() {
            Some(Tok::Var(i)) => {
                let i = *i;
                self.pos += 1;
                Ok(i)
            }
            _ => Err(self.error("expected variable")),
        }
    }

    fn finish(&self) -> PResult<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.error(format!("unexpected {} after end of expression", describe(t)))),
        }
    }

    fn term(&mut self) -> PResult<Term> {
        let mut t = match self.peek() {
            Some(Tok::Zero) => {
                self.pos += 1;
                Term::Zero
            }
            Some(Tok::Var(i)) => {
                let i = *i;
                self.pos += 1;
                Term::Var(i)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let l = self.term()?;
                let op = self.peek().cloned();
                match op {
                    Some(Tok::Plus) | Some(Tok::Star) => self.pos += 1,
                    _ => return Err(self.error("expected '+' or '*'")),
                }
                let r = self.term()?;
                self.expect(Tok::RParen)?;
                if op == Some(Tok::Plus) {
                    Term::add(l, r)
                } else {
                    Term::mul(l, r)
                }
            }
            Some(_) => return Err(self.error("expected term")),
            None => return Err(self.error("unexpected end of input, expected term")),
        };
        while let Some(Tok::Primes(n)) = self.peek() {
            let n = n.clone();
            self.pos += 1;
            t = Term::succ_n(n, t);
        }
        Ok(t)
    }

    fn formula(&mut self) -> PResult<Formula> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(Formula::not(self.formula()?))
            }
            Some(Tok::LParen) => {
                if matches!(
                    self.peek_at(1),
                    Some(Tok::All) | Some(Tok::Exists) | Some(Tok::ExistsUnique)
                ) {
                    return self.quantified();
                }
                self.parenthesised()
            }
            Some(_) => Err(self.error("expected formula")),
            None => Err(self.error("unexpected end of input, expected formula")),
        }
    }

    fn quantified(&mut self) -> PResult<Formula> {
        self.expect(Tok::LParen)?;
        let q = self.peek().cloned();
        self.pos += 1;
        let v = self.expect_var()?;
        self.expect(Tok::RParen)?;
        let body = self.formula()?;
        Ok(match q {
            Some(Tok::All) => Formula::forall(v, body),
            Some(Tok::Exists) => Formula::exists(v, body),
            _ => {
                let mut used = self.text_vars.clone();
                body.collect_all(&mut used);
                used.insert(v);
                let y = fresh_var(&used);
                Formula::exists_unique_with(v, body, y)
            }
        })
    }

    fn parenthesised(&mut self) -> PResult<Formula> {
        let start = self.pos;
        let atomic_err = match self.atomic() {
            Ok(f) => return Ok(f),
            Err(e) => e,
        };
        self.pos = start;
        match self.compound() {
            Ok(f) => Ok(f),
            Err(e) => {
                self.pos = start;
                Err(if atomic_err.offset() > e.offset() { atomic_err } else { e })
            }
        }
    }

    fn atomic(&mut self) -> PResult<Formula> {
        self.expect(Tok::LParen)?;
        let l = self.term()?;
        let op = self.peek().cloned();
        match op {
            Some(Tok::Equals) | Some(Tok::Less) => self.pos += 1,
            Some(_) => return Err(self.error("expected '=' or '<'")),
            None => return Err(self.error("unexpected end of input, expected '=' or '<'")),
        }
        let r = self.term()?;
        self.expect(Tok::RParen)?;
        if op == Some(Tok::Equals) {
            Ok(Formula::eq(l, r))
        } else {
            let mut used = self.text_vars.clone();
            l.collect_vars(&mut used);
            r.collect_vars(&mut used);
            let w = fresh_var(&used);
            Ok(Formula::lt_with(l, r, w))
        }
    }

    fn compound(&mut self) -> PResult<Formula> {
        self.expect(Tok::LParen)?;
        let a = self.formula()?;
        let op = self.peek().cloned();
        match op {
            Some(Tok::Arrow) | Some(Tok::Amp) | Some(Tok::Bar) => self.pos += 1,
            Some(_) => return Err(self.error("expected '->', '&' or '|'")),
            None => return Err(self.error("unexpected end of input, expected connective")),
        }
        let b = self.formula()?;
        self.expect(Tok::RParen)?;
        Ok(match op {
            Some(Tok::Arrow) => Formula::implies(a, b),
            Some(Tok::Amp) => Formula::and(a, b),
            _ => Formula::or(a, b),
        })
    }
}

/// Parse a formula, expanding abbreviations.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(text)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}
