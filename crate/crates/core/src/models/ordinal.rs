//! Ordinals below ω^ω in Cantor normal form.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

/// `ω^e1·c1 + … + ω^ek·ck` with `e1 > … > ek` and every `ci ≥ 1`.
/// The empty sum is `0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    cnf: Vec<(u32, BigUint)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    /// The exponent of a product left the representable range. Ordinals
    /// below ω^ω are closed under `·`, so this only guards the machine
    /// representation of exponents.
    #[error("product escapes the representable ordinals below ω^ω")]
    OverflowBeyondOmegaOmega,
    #[error("cannot parse ordinal {0:?}")]
    Parse(String),
    #[error("invalid Cantor normal form: {0}")]
    InvalidCnf(String),
}

impl Ordinal {
    pub fn zero() -> Ordinal {
        Ordinal::default()
    }

    pub fn finite(n: impl Into<BigUint>) -> Ordinal {
        let n = n.into();
        if n.is_zero() {
            Ordinal::zero()
        } else {
            Ordinal { cnf: vec![(0, n)] }
        }
    }

    pub fn omega() -> Ordinal {
        Ordinal { cnf: vec![(1, BigUint::one())] }
    }

    /// `ω^e · c`.
    pub fn monomial(e: u32, c: impl Into<BigUint>) -> Ordinal {
        let c = c.into();
        if c.is_zero() {
            Ordinal::zero()
        } else {
            Ordinal { cnf: vec![(e, c)] }
        }
    }

    /// Build from CNF terms, checking the normal-form invariants.
    pub fn from_cnf(terms: Vec<(u32, BigUint)>) -> Result<Ordinal, OrdinalError> {
        for w in terms.windows(2) {
            if w[0].0 <= w[1].0 {
                return Err(OrdinalError::InvalidCnf("exponents must strictly decrease".into()));
            }
        }
        if terms.iter().any(|(_, c)| c.is_zero()) {
            return Err(OrdinalError::InvalidCnf("coefficients must be positive".into()));
        }
        Ok(Ordinal { cnf: terms })
    }

    pub fn cnf(&self) -> &[(u32, BigUint)] {
        &self.cnf
    }

    pub fn is_zero(&self) -> bool {
        self.cnf.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.cnf.iter().all(|(e, _)| *e == 0)
    }

    pub fn as_finite(&self) -> Option<BigUint> {
        match self.cnf.as_slice() {
            [] => Some(BigUint::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    /// `a = b + 1` for some `b`.
    pub fn is_successor(&self) -> bool {
        matches!(self.cnf.last(), Some((0, _)))
    }

    /// Neither zero nor a successor.
    pub fn is_limit(&self) -> bool {
        !self.is_zero() && !self.is_successor()
    }

    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::finite(1u32))
    }

    /// `self + n` for finite `n`.
    pub fn add_finite(&self, n: &BigUint) -> Ordinal {
        if n.is_zero() {
            return self.clone();
        }
        let mut cnf = self.cnf.clone();
        match cnf.last_mut() {
            Some((0, c)) => *c += n,
            _ => cnf.push((0, n.clone())),
        }
        Ordinal { cnf }
    }

    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some((lead, lead_c)) = other.cnf.first() else {
            return self.clone();
        };
        let mut cnf: Vec<(u32, BigUint)> = self.cnf.iter().filter(|(e, _)| e > lead).cloned().collect();
        let same = self.cnf.iter().find(|(e, _)| e == lead).map(|(_, c)| c.clone());
        cnf.push((*lead, same.unwrap_or_default() + lead_c));
        cnf.extend(other.cnf[1..].iter().cloned());
        Ordinal { cnf }
    }

    pub fn mul(&self, other: &Ordinal) -> Result<Ordinal, OrdinalError> {
        let Some((lead, lead_c)) = self.cnf.first() else {
            return Ok(Ordinal::zero());
        };
        let mut acc = Ordinal::zero();
        for (e, c) in &other.cnf {
            let part = if *e == 0 {
                // (ω^a·p + rest)·c = ω^a·(p·c) + rest
                let mut cnf = self.cnf.clone();
                cnf[0].1 = lead_c * c;
                Ordinal { cnf }
            } else {
                let exp = lead.checked_add(*e).ok_or(OrdinalError::OverflowBeyondOmegaOmega)?;
                Ordinal::monomial(exp, c.clone())
            };
            acc = acc.add(&part);
        }
        Ok(acc)
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::finite(n)
    }
}

impl From<BigUint> for Ordinal {
    fn from(n: BigUint) -> Self {
        Ordinal::finite(n)
    }
}

pub fn ord_add(a: &Ordinal, b: &Ordinal) -> Ordinal {
    a.add(b)
}

pub fn ord_mul(a: &Ordinal, b: &Ordinal) -> Result<Ordinal, OrdinalError> {
    a.mul(b)
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (x, y) in self.cnf.iter().zip(&other.cnf) {
            let ord = x.0.cmp(&y.0).then_with(|| x.1.cmp(&y.1));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.cnf.len().cmp(&other.cnf.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `0`, `7`, `w`, `w+1`, `w*2`, `w^3*2+w+5`.
impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cnf.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.cnf.iter().enumerate() {
            if k > 0 {
                f.write_str("+")?;
            }
            match e {
                0 => write!(f, "{c}")?,
                1 => f.write_str("w")?,
                _ => write!(f, "w^{e}")?,
            }
            if *e > 0 && !c.is_one() {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

/// Accepts the [`Display`](fmt::Display) form; `omega` and `ω` may stand
/// for `w`.
impl FromStr for Ordinal {
    type Err = OrdinalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || OrdinalError::Parse(s.to_string());
        let text: String = s.replace("omega", "w").replace('ω', "w").split_whitespace().collect();
        if text.is_empty() {
            return Err(err());
        }
        let mut acc = Ordinal::zero();
        for term in text.split('+') {
            let (base, coef) = match term.split_once('*') {
                Some((b, c)) => (b, c.parse::<BigUint>().map_err(|_| err())?),
                None => (term, BigUint::one()),
            };
            let part = if let Some(rest) = base.strip_prefix('w') {
                let e = match rest.strip_prefix('^') {
                    Some(e) => e.parse::<u32>().map_err(|_| err())?,
                    None if rest.is_empty() => 1,
                    None => return Err(err()),
                };
                Ordinal::monomial(e, coef)
            } else {
                let n = base.parse::<BigUint>().map_err(|_| err())?;
                if !coef.is_one() {
                    return Err(err());
                }
                Ordinal::finite(n)
            };
            acc = acc.add(&part);
        }
        Ok(acc)
    }
}
