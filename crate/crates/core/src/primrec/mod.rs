//! Primitive recursive functions.
//!
//! Definitions are combinator expressions:
//!
//! ```text
//! # addition and multiplication
//! add = rec(proj(1,1), comp(succ, proj(3,3)))
//! mul = rec(zero(1), comp(add, proj(3,1), proj(3,3)))
//! ```
//!
//! A name refers to an earlier definition in the same file.

mod compile;
mod predicates;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

pub use compile::{
    check_representation, compile_representation, compile_with_sites, representation_sweep, Representation,
    Site,
};
pub use predicates::{prf_check, prf_prime_check, q_check};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PrimRecFn {
    /// The constant zero of the given arity.
    Zero(u32),
    Succ,
    /// `Proj(n, i)` returns the `i`-th of `n` arguments, 1-based.
    Proj(u32, u32),
    Comp(Box<PrimRecFn>, Vec<PrimRecFn>),
    /// `f(x, 0) = g(x)`, `f(x, y+1) = h(x, y, f(x, y))`.
    Rec(Box<PrimRecFn>, Box<PrimRecFn>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrError {
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl PrimRecFn {
    pub fn comp(f: PrimRecFn, args: Vec<PrimRecFn>) -> PrimRecFn {
        PrimRecFn::Comp(Box::new(f), args)
    }

    pub fn rec(g: PrimRecFn, h: PrimRecFn) -> PrimRecFn {
        PrimRecFn::Rec(Box::new(g), Box::new(h))
    }

    /// `add = rec(proj(1,1), comp(succ, proj(3,3)))`.
    pub fn add() -> PrimRecFn {
        PrimRecFn::rec(PrimRecFn::Proj(1, 1), PrimRecFn::comp(PrimRecFn::Succ, vec![PrimRecFn::Proj(3, 3)]))
    }

    /// `mul = rec(zero(1), comp(add, proj(3,1), proj(3,3)))`.
    pub fn mul() -> PrimRecFn {
        PrimRecFn::rec(
            PrimRecFn::Zero(1),
            PrimRecFn::comp(PrimRecFn::add(), vec![PrimRecFn::Proj(3, 1), PrimRecFn::Proj(3, 3)]),
        )
    }

    /// The arity, after checking that every part fits together.
    pub fn arity(&self) -> Result<u32, PrError> {
        match self {
            PrimRecFn::Zero(k) => Ok(*k),
            PrimRecFn::Succ => Ok(1),
            PrimRecFn::Proj(n, i) => {
                if *i >= 1 && i <= n {
                    Ok(*n)
                } else {
                    Err(PrError::Arity(format!("proj({n},{i}) needs 1 <= {i} <= {n}")))
                }
            }
            PrimRecFn::Comp(f, gs) => {
                let fa = f.arity()?;
                if fa as usize != gs.len() {
                    return Err(PrError::Arity(format!("{f} takes {fa} arguments, given {}", gs.len())));
                }
                let Some(first) = gs.first() else {
                    return Err(PrError::Arity("comp needs at least one inner function".into()));
                };
                let m = first.arity()?;
                for g in &gs[1..] {
                    if g.arity()? != m {
                        return Err(PrError::Arity(format!("inner functions of {self} differ in arity")));
                    }
                }
                Ok(m)
            }
            PrimRecFn::Rec(g, h) => {
                let k = g.arity()?;
                let ha = h.arity()?;
                if ha != k + 2 {
                    return Err(PrError::Arity(format!("rec step {h} has arity {ha}, expected {}", k + 2)));
                }
                Ok(k + 1)
            }
        }
    }

    /// Nesting depth of composition and recursion.
    pub fn rank(&self) -> u32 {
        match self {
            PrimRecFn::Zero(_) | PrimRecFn::Succ | PrimRecFn::Proj(..) => 0,
            PrimRecFn::Comp(f, gs) => 1 + gs.iter().map(PrimRecFn::rank).fold(f.rank(), u32::max),
            PrimRecFn::Rec(g, h) => 1 + g.rank().max(h.rank()),
        }
    }
}

pub fn rank(f: &PrimRecFn) -> u32 {
    f.rank()
}

pub fn eval_pr(f: &PrimRecFn, args: &[BigUint]) -> Result<BigUint, PrError> {
    let arity = f.arity()?;
    if arity as usize != args.len() {
        return Err(PrError::Arity(format!("{f} takes {arity} arguments, given {}", args.len())));
    }
    Ok(eval_unchecked(f, args))
}

/// `[f(x, 0), f(x, 1), …, f(x, y)]` for `f = rec(g, h)` and `args = x ++ [y]`.
pub fn rec_trace(f: &PrimRecFn, args: &[BigUint]) -> Result<Vec<BigUint>, PrError> {
    let PrimRecFn::Rec(g, h) = f else {
        return Err(PrError::Arity(format!("{f} is not a recursion")));
    };
    let arity = f.arity()?;
    if arity as usize != args.len() {
        return Err(PrError::Arity(format!("{f} takes {arity} arguments, given {}", args.len())));
    }
    Ok(trace_unchecked(g, h, args))
}

fn trace_unchecked(g: &PrimRecFn, h: &PrimRecFn, args: &[BigUint]) -> Vec<BigUint> {
    let (x, y) = args.split_at(args.len() - 1);
    let mut acc = eval_unchecked(g, x);
    let mut out = vec![acc.clone()];
    let mut step: Vec<BigUint> = x.to_vec();
    step.push(BigUint::zero());
    step.push(BigUint::zero());
    let k = x.len();
    let mut i = BigUint::zero();
    while i < y[0] {
        step[k] = i.clone();
        step[k + 1] = acc;
        acc = eval_unchecked(h, &step);
        out.push(acc.clone());
        i += 1u32;
    }
    out
}

fn eval_unchecked(f: &PrimRecFn, args: &[BigUint]) -> BigUint {
    match f {
        PrimRecFn::Zero(_) => BigUint::zero(),
        PrimRecFn::Succ => &args[0] + BigUint::one(),
        PrimRecFn::Proj(_, i) => args[*i as usize - 1].clone(),
        PrimRecFn::Comp(f, gs) => {
            let inner: Vec<BigUint> = gs.iter().map(|g| eval_unchecked(g, args)).collect();
            eval_unchecked(f, &inner)
        }
        PrimRecFn::Rec(g, h) => trace_unchecked(g, h, args).pop().expect("trace is nonempty"),
    }
}

impl fmt::Display for PrimRecFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimRecFn::Zero(k) => write!(f, "zero({k})"),
            PrimRecFn::Succ => f.write_str("succ"),
            PrimRecFn::Proj(n, i) => write!(f, "proj({n},{i})"),
            PrimRecFn::Comp(g, hs) => {
                write!(f, "comp({g}")?;
                for h in hs {
                    write!(f, ", {h}")?;
                }
                f.write_str(")")
            }
            PrimRecFn::Rec(g, h) => write!(f, "rec({g}, {h})"),
        }
    }
}

/// Parse a definition file into named functions, in file order.
pub fn parse_definitions(text: &str) -> Result<Vec<(String, PrimRecFn)>, PrError> {
    let mut defs: Vec<(String, PrimRecFn)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| PrError::Parse { line, message };
        let (name, expr) = content.split_once('=').ok_or_else(|| err("expected '<name> = <expression>'".into()))?;
        let name = name.trim();
        if !is_identifier(name) || RESERVED.contains(&name) {
            return Err(err(format!("bad function name {name:?}")));
        }
        let known: BTreeMap<&str, &PrimRecFn> = defs.iter().map(|(n, f)| (n.as_str(), f)).collect();
        let mut p = ExprParser { s: expr.as_bytes(), pos: 0, known: &known };
        let f = p.expr().map_err(err)?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(err(format!("trailing input at column {}", p.pos + 1)));
        }
        f.arity().map_err(|e| err(e.to_string()))?;
        defs.retain(|(n, _)| n != name);
        defs.push((name.to_string(), f));
    }
    Ok(defs)
}

/// Parse a single expression with no named references.
pub fn parse_pr(text: &str) -> Result<PrimRecFn, PrError> {
    let defs = parse_definitions(&format!("it = {text}"))?;
    Ok(defs.into_iter().next().expect("one definition").1)
}

const RESERVED: [&str; 5] = ["zero", "succ", "proj", "comp", "rec"];

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct ExprParser<'a> {
    s: &'a [u8],
    pos: usize,
    known: &'a BTreeMap<&'a str, &'a PrimRecFn>,
}

impl ExprParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> Result<(), String> {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(format!("expected '{}' at column {}", c as char, self.pos + 1))
        }
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.s[start..self.pos]).into_owned()
    }

    fn number(&mut self) -> Result<u32, String> {
        let w = self.word();
        w.parse().map_err(|_| format!("expected a number, found {w:?}"))
    }

    fn expr(&mut self) -> Result<PrimRecFn, String> {
        let w = self.word();
        match w.as_str() {
            "zero" => {
                self.eat(b'(')?;
                let k = self.number()?;
                self.eat(b')')?;
                Ok(PrimRecFn::Zero(k))
            }
            "succ" => Ok(PrimRecFn::Succ),
            "proj" => {
                self.eat(b'(')?;
                let n = self.number()?;
                self.eat(b',')?;
                let i = self.number()?;
                self.eat(b')')?;
                Ok(PrimRecFn::Proj(n, i))
            }
            "comp" => {
                self.eat(b'(')?;
                let f = self.expr()?;
                let mut args = Vec::new();
                while self.eat(b',').is_ok() {
                    args.push(self.expr()?);
                }
                self.eat(b')')?;
                Ok(PrimRecFn::comp(f, args))
            }
            "rec" => {
                self.eat(b'(')?;
                let g = self.expr()?;
                self.eat(b',')?;
                let h = self.expr()?;
                self.eat(b')')?;
                Ok(PrimRecFn::rec(g, h))
            }
            "" => Err(format!("expected an expression at column {}", self.pos + 1)),
            name => self
                .known
                .get(name)
                .map(|f| (*f).clone())
                .ok_or_else(|| format!("unknown function {name:?}")),
        }
    }
}
