use std::fmt::{self, Write as _};

use num_bigint::BigUint;

use super::{Formula, Term};

/// Successor runs longer than this are printed as `'{n}`.
pub const MAX_PRIME_RUN: u32 = 4;

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Zero => f.write_char('0'),
            Term::Var(i) => write!(f, "x{i}"),
            Term::Succ(n, inner) => {
                write!(f, "{inner}")?;
                write_run(f, n)
            }
            Term::Add(l, r) => write!(f, "({l} + {r})"),
            Term::Mul(l, r) => write!(f, "({l} * {r})"),
        }
    }
}

fn write_run(f: &mut fmt::Formatter<'_>, n: &BigUint) -> fmt::Result {
    if *n <= BigUint::from(MAX_PRIME_RUN) {
        let k = n.to_u32_digits().first().copied().unwrap_or(0);
        for _ in 0..k {
            f.write_char('\'')?;
        }
        Ok(())
    } else {
        write!(f, "'{{{n}}}")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Eq(l, r) => write!(f, "({l} = {r})"),
            Formula::Not(g) => write!(f, "~{g}"),
            Formula::Implies(a, b) => write!(f, "({a} -> {b})"),
            Formula::ForAll(v, body) => write!(f, "(A x{v}){body}"),
        }
    }
}

/// Canonical, fully parenthesised rendering.
pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

pub fn print_term(t: &Term) -> String {
    t.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::numeral;

    #[test]
    fn canonical_examples() {
        assert_eq!(print_formula(&Formula::eq(Term::Zero, Term::Zero)), "(0 = 0)");
        assert_eq!(
            print_formula(&Formula::forall(1, Formula::eq(Term::Var(1), Term::Var(1)))),
            "(A x1)(x1 = x1)"
        );
        assert_eq!(
            print_formula(&Formula::not(Formula::eq(Term::Zero, Term::succ(Term::Zero)))),
            "~(0 = 0')"
        );
    }

    #[test]
    fn long_runs_are_compact() {
        assert_eq!(print_term(&numeral(4u32)), "0''''");
        assert_eq!(print_term(&numeral(5u32)), "0'{5}");
        assert_eq!(
            print_term(&Term::succ_n(12u32.into(), Term::Var(3))),
            "x3'{12}"
        );
    }
}
