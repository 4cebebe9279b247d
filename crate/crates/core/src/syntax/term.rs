use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, Zero as _};

/// A term of the arithmetic language: `0`, variables, successor, `+` and `*`.
///
/// Successor applications are stored as runs: `Succ(n, t)` is `t` followed by
/// `n` primes. Runs are kept normalised (`n >= 1`, `t` never itself a `Succ`)
/// so that structural equality is equality of the underlying unary term.
/// Build successor terms with [`Term::succ`] / [`Term::succ_n`] to keep that
/// invariant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Zero,
    /// Variable `x_i`, `i >= 1`.
    Var(u32),
    Succ(BigUint, Box<Term>),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(index: u32) -> Term {
        assert!(index >= 1, "variable indices start at 1");
        Term::Var(index)
    }

    pub fn succ(t: Term) -> Term {
        Term::succ_n(BigUint::one(), t)
    }

    /// `t` followed by `n` primes, merged into any existing run.
    pub fn succ_n(n: BigUint, t: Term) -> Term {
        if n.is_zero() {
            return t;
        }
        match t {
            Term::Succ(m, inner) => Term::Succ(m + n, inner),
            other => Term::Succ(n, Box::new(other)),
        }
    }

    pub fn add(l: Term, r: Term) -> Term {
        Term::Add(Box::new(l), Box::new(r))
    }

    pub fn mul(l: Term, r: Term) -> Term {
        Term::Mul(Box::new(l), Box::new(r))
    }

    /// If this term is a numeral `0'...'`, its value.
    pub fn as_numeral(&self) -> Option<BigUint> {
        match self {
            Term::Zero => Some(BigUint::zero()),
            Term::Succ(n, inner) if **inner == Term::Zero => Some(n.clone()),
            _ => None,
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Term::Zero => true,
            Term::Var(_) => false,
            Term::Succ(_, t) => t.is_closed(),
            Term::Add(l, r) | Term::Mul(l, r) => l.is_closed() && r.is_closed(),
        }
    }

    pub fn vars(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<u32>) {
        match self {
            Term::Zero => {}
            Term::Var(i) => {
                out.insert(*i);
            }
            Term::Succ(_, t) => t.collect_vars(out),
            Term::Add(l, r) | Term::Mul(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    pub fn contains_var(&self, v: u32) -> bool {
        match self {
            Term::Zero => false,
            Term::Var(i) => *i == v,
            Term::Succ(_, t) => t.contains_var(v),
            Term::Add(l, r) | Term::Mul(l, r) => l.contains_var(v) || r.contains_var(v),
        }
    }

    /// Replace every occurrence of `x_v` by `t`.
    pub fn subst(&self, v: u32, t: &Term) -> Term {
        match self {
            Term::Zero => Term::Zero,
            Term::Var(i) if *i == v => t.clone(),
            Term::Var(i) => Term::Var(*i),
            Term::Succ(n, inner) => Term::succ_n(n.clone(), inner.subst(v, t)),
            Term::Add(l, r) => Term::add(l.subst(v, t), r.subst(v, t)),
            Term::Mul(l, r) => Term::mul(l.subst(v, t), r.subst(v, t)),
        }
    }

    /// Number of successor applications, counting through runs.
    pub fn succ_count(&self) -> BigUint {
        match self {
            Term::Zero | Term::Var(_) => BigUint::zero(),
            Term::Succ(n, t) => n + t.succ_count(),
            Term::Add(l, r) | Term::Mul(l, r) => l.succ_count() + r.succ_count(),
        }
    }
}

/// The numeral for `n`: `0` followed by `n` primes.
pub fn numeral(n: impl Into<BigUint>) -> Term {
    Term::succ_n(n.into(), Term::Zero)
}
