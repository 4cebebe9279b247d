//! Axiom recognition: the logical schemas K1–K5 and the fixed arithmetic
//! axioms A1–A9.

use std::sync::OnceLock;

use num_bigint::BigUint;

use super::profile::AxiomTag;
use crate::syntax::{parse_formula, Formula, Term};

const ARITHMETIC_TEXT: [(AxiomTag, &str); 9] = [
    (AxiomTag::A1, "((x1 = x2) -> ((x1 = x3) -> (x2 = x3)))"),
    (AxiomTag::A2, "((x1 = x2) -> (x1' = x2'))"),
    (AxiomTag::A3, "~(0 = x1')"),
    (AxiomTag::A4, "((x1' = x2') -> (x1 = x2))"),
    (AxiomTag::A5, "((x1 + 0) = x1)"),
    (AxiomTag::A6, "((x1 + x2') = (x1 + x2)')"),
    (AxiomTag::A7, "((x1 * 0) = 0)"),
    (AxiomTag::A8, "((x1 * x2') = ((x1 * x2) + x1))"),
    (AxiomTag::A9, "(~(x1 = 0) -> (E x2)(x1 = x2'))"),
];

/// The fixed formula of an arithmetic axiom, `None` for the K schemas.
pub fn arithmetic_axiom(tag: AxiomTag) -> Option<&'static Formula> {
    static AXIOMS: OnceLock<Vec<(AxiomTag, Formula)>> = OnceLock::new();
    let table = AXIOMS.get_or_init(|| {
        ARITHMETIC_TEXT
            .iter()
            .map(|(t, text)| (*t, parse_formula(text).expect("axiom text parses")))
            .collect()
    });
    table.iter().find(|(t, _)| *t == tag).map(|(_, f)| f)
}

/// Does `f` match the axiom or schema `tag`?
pub fn match_axiom(f: &Formula, tag: AxiomTag) -> bool {
    match tag {
        AxiomTag::K1 => is_k1(f),
        AxiomTag::K2 => is_k2(f),
        AxiomTag::K3 => is_k3(f),
        AxiomTag::K4 => k4_term(f).is_some(),
        AxiomTag::K5 => is_k5(f),
        _ => arithmetic_axiom(tag) == Some(f),
    }
}

/// All tags `f` is an instance of.
pub fn matching_axioms(f: &Formula) -> Vec<AxiomTag> {
    AxiomTag::ALL.into_iter().filter(|t| match_axiom(f, *t)).collect()
}

fn implies(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Implies(a, b) => Some((a, b)),
        _ => None,
    }
}

fn negation(f: &Formula) -> Option<&Formula> {
    match f {
        Formula::Not(a) => Some(a),
        _ => None,
    }
}

// A -> (B -> A)
fn is_k1(f: &Formula) -> bool {
    let Some((a, rest)) = implies(f) else { return false };
    let Some((_, a2)) = implies(rest) else { return false };
    a == a2
}

// (A -> (B -> C)) -> ((A -> B) -> (A -> C))
fn is_k2(f: &Formula) -> bool {
    let check = || -> Option<bool> {
        let (lhs, rhs) = implies(f)?;
        let (a, bc) = implies(lhs)?;
        let (b, c) = implies(bc)?;
        let (ab, ac) = implies(rhs)?;
        let (a2, b2) = implies(ab)?;
        let (a3, c2) = implies(ac)?;
        Some(a == a2 && a == a3 && b == b2 && c == c2)
    };
    check().unwrap_or(false)
}

// (~B -> ~A) -> ((~B -> A) -> B)
fn is_k3(f: &Formula) -> bool {
    let check = || -> Option<bool> {
        let (lhs, rhs) = implies(f)?;
        let (nb, na) = implies(lhs)?;
        let b = negation(nb)?;
        let a = negation(na)?;
        let (nb_a, b3) = implies(rhs)?;
        let (nb2, a2) = implies(nb_a)?;
        let b2 = negation(nb2)?;
        Some(b == b2 && b == b3 && a == a2)
    };
    check().unwrap_or(false)
}

/// `(A x)(A -> B) -> (A -> (A x)B)` with `x` not free in `A`. The doubled
/// antecedent form `(A x)(A -> B) -> (A -> (A -> (A x)B))` is accepted too.
fn is_k5(f: &Formula) -> bool {
    let check = || -> Option<bool> {
        let (lhs, rhs) = implies(f)?;
        let Formula::ForAll(x, inner) = lhs else { return None };
        let (a, b) = implies(inner)?;
        let (a2, mut tail) = implies(rhs)?;
        if let Some((a3, t)) = implies(tail) {
            if a3 == a {
                tail = t;
            }
        }
        let Formula::ForAll(x2, b2) = tail else { return None };
        Some(a == a2 && x == x2 && **b2 == *b && !a.has_free(*x))
    };
    check().unwrap_or(false)
}

/// For a K4 instance `(A x)B -> C`, the term `t` with `C = B[x:=t]` and `t`
/// free for `x` in `B`. When `x` is not free in `B` any term works and `x`
/// itself is returned.
pub fn k4_term(f: &Formula) -> Option<Term> {
    let (lhs, rhs) = implies(f)?;
    let Formula::ForAll(x, body) = lhs else { return None };
    let mut found: Option<Term> = None;
    if !match_formula(body, rhs, *x, &mut found) {
        return None;
    }
    let t = found.unwrap_or(Term::Var(*x));
    match body.substitute(*x, &t) {
        Ok(instance) if instance == *rhs => Some(t),
        _ => None,
    }
}

/// Find `t` with `pattern[v:=t] == target` by walking both in parallel.
/// Bound occurrences of `v` must match literally.
pub(crate) fn match_formula(pattern: &Formula, target: &Formula, v: u32, found: &mut Option<Term>) -> bool {
    match (pattern, target) {
        (Formula::Eq(l, r), Formula::Eq(l2, r2)) => {
            match_term(l, l2, v, found) && match_term(r, r2, v, found)
        }
        (Formula::Not(a), Formula::Not(b)) => match_formula(a, b, v, found),
        (Formula::Implies(a, b), Formula::Implies(c, d)) => {
            match_formula(a, c, v, found) && match_formula(b, d, v, found)
        }
        (Formula::ForAll(w, a), Formula::ForAll(w2, b)) => {
            if w != w2 {
                return false;
            }
            if *w == v {
                a == b
            } else {
                match_formula(a, b, v, found)
            }
        }
        _ => false,
    }
}

fn bind(found: &mut Option<Term>, t: Term) -> bool {
    match found {
        Some(existing) => *existing == t,
        None => {
            *found = Some(t);
            true
        }
    }
}

fn match_term(pattern: &Term, target: &Term, v: u32, found: &mut Option<Term>) -> bool {
    match (pattern, target) {
        (Term::Var(i), _) if *i == v => bind(found, target.clone()),
        (Term::Zero, Term::Zero) => true,
        (Term::Var(i), Term::Var(j)) => i == j,
        (Term::Succ(n, inner), _) if **inner == Term::Var(v) => {
            // x'..' with n primes against a run of m >= n primes.
            let Term::Succ(m, rest) = target else { return false };
            if m < n {
                return false;
            }
            let diff: BigUint = m - n;
            bind(found, Term::succ_n(diff, (**rest).clone()))
        }
        (Term::Succ(n, inner), Term::Succ(m, rest)) => n == m && match_term(inner, rest, v, found),
        (Term::Add(a, b), Term::Add(c, d)) | (Term::Mul(a, b), Term::Mul(c, d)) => {
            match_term(a, c, v, found) && match_term(b, d, v, found)
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(text: &str) -> Formula {
        parse_formula(text).unwrap()
    }

    #[test]
    fn k1_example() {
        let g = f("((x1 = x1) -> ((0 = 0) -> (x1 = x1)))");
        assert!(match_axiom(&g, AxiomTag::K1));
        assert!(!match_axiom(&g, AxiomTag::K2));
    }

    #[test]
    fn a5_matches_only_a5() {
        let g = f("((x1 + 0) = x1)");
        let arithmetic: Vec<_> = matching_axioms(&g)
            .into_iter()
            .filter(|t| AxiomTag::ARITHMETIC.contains(t))
            .collect();
        assert_eq!(arithmetic, vec![AxiomTag::A5]);
        // Instances at other terms are not axioms.
        assert!(!match_axiom(&f("((x2 + 0) = x2)"), AxiomTag::A5));
    }

    #[test]
    fn k4_with_successor_term() {
        let g = f("((A x1)(x1 = 0) -> (x2' = 0))");
        assert_eq!(k4_term(&g), Some(Term::succ(Term::Var(2))));
        // t merges into an existing successor run.
        let h = f("((A x1)(x1' = 0) -> (0'{7} = 0))");
        assert_eq!(k4_term(&h), Some(crate::syntax::numeral(6u32)));
    }

    #[test]
    fn k4_rejects_capture() {
        // x2 is not free for x1 in (A x2)(x1 = x2).
        let g = f("((A x1)(A x2)(x1 = x2) -> (A x2)(x2 = x2))");
        assert!(!match_axiom(&g, AxiomTag::K4));
        let ok = f("((A x1)(A x2)(x1 = x2) -> (A x2)(x3 = x2))");
        assert!(match_axiom(&ok, AxiomTag::K4));
    }

    #[test]
    fn k4_vacuous_and_inconsistent() {
        assert!(match_axiom(&f("((A x1)(0 = 0) -> (0 = 0))"), AxiomTag::K4));
        assert!(!match_axiom(&f("((A x1)(x1 = x1) -> (0 = 0'))"), AxiomTag::K4));
    }

    #[test]
    fn k5_side_condition() {
        let good = f("((A x1)((x2 = 0) -> (x1 = x1)) -> ((x2 = 0) -> (A x1)(x1 = x1)))");
        assert!(match_axiom(&good, AxiomTag::K5));
        let doubled = f("((A x1)((x2 = 0) -> (x1 = x1)) -> ((x2 = 0) -> ((x2 = 0) -> (A x1)(x1 = x1))))");
        assert!(match_axiom(&doubled, AxiomTag::K5));
        let bad = f("((A x1)((x1 = 0) -> (x1 = x1)) -> ((x1 = 0) -> (A x1)(x1 = x1)))");
        assert!(!match_axiom(&bad, AxiomTag::K5));
    }

    #[test]
    fn k2_k3() {
        let k2 = f("(((0 = 0) -> ((x1 = 0) -> (x2 = 0))) -> (((0 = 0) -> (x1 = 0)) -> ((0 = 0) -> (x2 = 0))))");
        assert!(match_axiom(&k2, AxiomTag::K2));
        let k3 = f("((~(x1 = 0) -> ~(0 = 0)) -> ((~(x1 = 0) -> (0 = 0)) -> (x1 = 0)))");
        assert!(match_axiom(&k3, AxiomTag::K3));
        assert!(!match_axiom(&k3, AxiomTag::K2));
    }

    #[test]
    fn all_arithmetic_axioms_parse() {
        for tag in AxiomTag::ARITHMETIC {
            let a = arithmetic_axiom(tag).unwrap();
            assert!(match_axiom(a, tag));
        }
        assert_eq!(
            arithmetic_axiom(AxiomTag::A3).unwrap().to_string(),
            "~(0 = x1')"
        );
    }
}
