use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::term::Term;

/// A formula over the four core connectives. `&`, `|`, `E`, `E1` and `<`
/// exist only as constructors that expand into these.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Eq(Term, Term),
    Not(Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    ForAll(u32, Box<Formula>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("term is not free for x{var}: substitution would be captured by (A x{captured})")]
pub struct CaptureError {
    pub var: u32,
    pub captured: u32,
}

impl Formula {
    pub fn eq(l: Term, r: Term) -> Formula {
        Formula::Eq(l, r)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall(v: u32, body: Formula) -> Formula {
        Formula::ForAll(v, Box::new(body))
    }

    /// `(a & b)` as `~(a -> ~b)`.
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::not(Formula::implies(a, Formula::not(b)))
    }

    /// `(a | b)` as `(~a -> b)`.
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::implies(Formula::not(a), b)
    }

    /// `(E v)f` as `~(A v)~f`.
    pub fn exists(v: u32, body: Formula) -> Formula {
        Formula::not(Formula::forall(v, Formula::not(body)))
    }

    /// `(E1 v)f` as `(E v)(f & (A y)(f[v:=y] -> (y = v)))`, `y` the least
    /// index not occurring in `f` and distinct from `v`.
    pub fn exists_unique(v: u32, body: Formula) -> Formula {
        let mut used = body.all_vars();
        used.insert(v);
        let y = fresh_var(&used);
        Formula::exists_unique_with(v, body, y)
    }

    pub(crate) fn exists_unique_with(v: u32, body: Formula, y: u32) -> Formula {
        let renamed = body
            .substitute(v, &Term::Var(y))
            .expect("fresh variable is always free for");
        let uniq = Formula::forall(
            y,
            Formula::implies(renamed, Formula::eq(Term::Var(y), Term::Var(v))),
        );
        Formula::exists(v, Formula::and(body, uniq))
    }

    /// `(t < s)` as `(E w)((t + w') = s)` with `w` the least index not
    /// occurring in either term.
    pub fn lt(t: Term, s: Term) -> Formula {
        let mut used = t.vars();
        s.collect_vars(&mut used);
        let w = fresh_var(&used);
        Formula::lt_with(t, s, w)
    }

    pub fn lt_with(t: Term, s: Term, w: u32) -> Formula {
        debug_assert!(!t.contains_var(w) && !s.contains_var(w));
        Formula::exists(
            w,
            Formula::eq(Term::add(t, Term::succ(Term::Var(w))), s),
        )
    }

    /// Variables with at least one free occurrence.
    pub fn free_vars(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<u32>, out: &mut BTreeSet<u32>) {
        match self {
            Formula::Eq(l, r) => {
                for v in l.vars().into_iter().chain(r.vars()) {
                    if !bound.contains(&v) {
                        out.insert(v);
                    }
                }
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::ForAll(v, body) => {
                bound.push(*v);
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn has_free(&self, v: u32) -> bool {
        match self {
            Formula::Eq(l, r) => l.contains_var(v) || r.contains_var(v),
            Formula::Not(f) => f.has_free(v),
            Formula::Implies(a, b) => a.has_free(v) || b.has_free(v),
            Formula::ForAll(w, body) => *w != v && body.has_free(v),
        }
    }

    /// Every variable index occurring in the formula, free or bound.
    pub fn all_vars(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_all(&mut out);
        out
    }

    pub(crate) fn collect_all(&self, out: &mut BTreeSet<u32>) {
        match self {
            Formula::Eq(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            Formula::Not(f) => f.collect_all(out),
            Formula::Implies(a, b) => {
                a.collect_all(out);
                b.collect_all(out);
            }
            Formula::ForAll(v, body) => {
                out.insert(*v);
                body.collect_all(out);
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Replace the free occurrences of `x_v` by `t`.
    ///
    /// Fails with [`CaptureError`] when `t` is not free for `x_v`, i.e. some
    /// free occurrence of `x_v` sits under a quantifier binding a variable
    /// of `t`.
    pub fn substitute(&self, v: u32, t: &Term) -> Result<Formula, CaptureError> {
        match self {
            Formula::Eq(l, r) => Ok(Formula::Eq(l.subst(v, t), r.subst(v, t))),
            Formula::Not(f) => Ok(Formula::not(f.substitute(v, t)?)),
            Formula::Implies(a, b) => Ok(Formula::implies(a.substitute(v, t)?, b.substitute(v, t)?)),
            Formula::ForAll(w, body) => {
                if *w == v || !body.has_free(v) {
                    return Ok(self.clone());
                }
                if t.contains_var(*w) {
                    return Err(CaptureError { var: v, captured: *w });
                }
                Ok(Formula::forall(*w, body.substitute(v, t)?))
            }
        }
    }

    /// `true` when `t` is free for `x_v` in this formula.
    pub fn is_free_for(&self, v: u32, t: &Term) -> bool {
        self.substitute(v, t).is_ok()
    }

    /// Simultaneous substitution that renames bound variables out of the way
    /// instead of failing. Renamed binders get the least index not used by
    /// the formula or the substituted terms.
    pub fn substitute_avoiding(&self, map: &BTreeMap<u32, Term>) -> Formula {
        let mut avoid = self.all_vars();
        for (k, t) in map {
            avoid.insert(*k);
            t.collect_vars(&mut avoid);
        }
        self.subst_avoid_inner(map, &mut avoid)
    }

    fn subst_avoid_inner(&self, map: &BTreeMap<u32, Term>, avoid: &mut BTreeSet<u32>) -> Formula {
        match self {
            Formula::Eq(l, r) => Formula::Eq(subst_term_map(l, map), subst_term_map(r, map)),
            Formula::Not(f) => Formula::not(f.subst_avoid_inner(map, avoid)),
            Formula::Implies(a, b) => Formula::implies(
                a.subst_avoid_inner(map, avoid),
                b.subst_avoid_inner(map, avoid),
            ),
            Formula::ForAll(w, body) => {
                let mut inner: BTreeMap<u32, Term> = map
                    .iter()
                    .filter(|(k, _)| **k != *w && body.has_free(**k))
                    .map(|(k, t)| (*k, t.clone()))
                    .collect();
                if inner.is_empty() {
                    return self.clone();
                }
                let clash = inner.values().any(|t| t.contains_var(*w));
                if clash {
                    let fresh = fresh_var(avoid);
                    avoid.insert(fresh);
                    inner.insert(*w, Term::Var(fresh));
                    Formula::forall(fresh, body.subst_avoid_inner(&inner, avoid))
                } else {
                    Formula::forall(*w, body.subst_avoid_inner(&inner, avoid))
                }
            }
        }
    }

    /// Conjuncts of a formula built with [`Formula::and`]; anything else is a
    /// single conjunct.
    pub fn conjuncts(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        self.push_conjuncts(&mut out);
        out
    }

    fn push_conjuncts<'a>(&'a self, out: &mut Vec<&'a Formula>) {
        if let Some((a, b)) = self.as_and() {
            a.push_conjuncts(out);
            b.push_conjuncts(out);
        } else {
            out.push(self);
        }
    }

    /// Matches `~(a -> ~b)`.
    pub fn as_and(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Not(inner) => match &**inner {
                Formula::Implies(a, nb) => match &**nb {
                    Formula::Not(b) => Some((a, b)),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }
    }

    /// Matches `~(A v)~f`.
    pub fn as_exists(&self) -> Option<(u32, &Formula)> {
        match self {
            Formula::Not(inner) => match &**inner {
                Formula::ForAll(v, body) => match &**body {
                    Formula::Not(f) => Some((*v, f)),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }
    }

    /// Number of connective and quantifier nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Eq(..) => 1,
            Formula::Not(f) | Formula::ForAll(_, f) => 1 + f.size(),
            Formula::Implies(a, b) => 1 + a.size() + b.size(),
        }
    }
}

fn subst_term_map(t: &Term, map: &BTreeMap<u32, Term>) -> Term {
    match t {
        Term::Zero => Term::Zero,
        Term::Var(i) => map.get(i).cloned().unwrap_or(Term::Var(*i)),
        Term::Succ(n, inner) => Term::succ_n(n.clone(), subst_term_map(inner, map)),
        Term::Add(l, r) => Term::add(subst_term_map(l, map), subst_term_map(r, map)),
        Term::Mul(l, r) => Term::mul(subst_term_map(l, map), subst_term_map(r, map)),
    }
}

/// Least variable index `>= 1` not in `used`.
pub fn fresh_var(used: &BTreeSet<u32>) -> u32 {
    let mut i = 1;
    while used.contains(&i) {
        i += 1;
    }
    i
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::numeral;

    fn x(i: u32) -> Term {
        Term::Var(i)
    }

    #[test]
    fn free_vars_examples() {
        let f = Formula::forall(1, Formula::eq(x(1), x(2)));
        assert_eq!(f.free_vars(), BTreeSet::from([2]));
        assert!(Formula::eq(Term::Zero, Term::Zero).free_vars().is_empty());
        let g = Formula::eq(Term::add(x(1), x(3)), x(1));
        assert_eq!(g.free_vars(), BTreeSet::from([1, 3]));
    }

    #[test]
    fn substitute_examples() {
        let f = Formula::eq(x(1), x(1));
        assert_eq!(
            f.substitute(1, &numeral(1u32)).unwrap(),
            Formula::eq(numeral(1u32), numeral(1u32))
        );

        let g = Formula::forall(2, Formula::eq(x(1), x(2)));
        assert_eq!(
            g.substitute(1, &x(2)),
            Err(CaptureError { var: 1, captured: 2 })
        );

        let h = Formula::forall(1, Formula::eq(x(1), Term::Zero));
        assert_eq!(h.substitute(1, &numeral(2u32)).unwrap(), h);
    }

    #[test]
    fn vacuous_binder_does_not_capture() {
        // x2 is bound but x1 does not occur below it.
        let f = Formula::implies(
            Formula::forall(2, Formula::eq(x(2), x(2))),
            Formula::eq(x(1), Term::Zero),
        );
        assert!(f.substitute(1, &x(2)).is_ok());
    }

    #[test]
    fn avoiding_substitution_renames_binders() {
        let f = Formula::forall(2, Formula::eq(x(1), x(2)));
        let out = f.substitute_avoiding(&BTreeMap::from([(1, x(2))]));
        assert_eq!(out, Formula::forall(3, Formula::eq(x(2), x(3))));
    }

    #[test]
    fn abbreviation_shapes() {
        let e = Formula::exists(2, Formula::eq(x(1), Term::succ(x(2))));
        assert_eq!(
            e,
            Formula::not(Formula::forall(
                2,
                Formula::not(Formula::eq(x(1), Term::succ(x(2))))
            ))
        );
        assert_eq!(e.as_exists().map(|(v, _)| v), Some(2));
        let a = Formula::and(Formula::eq(x(1), x(1)), Formula::eq(x(2), x(2)));
        assert_eq!(a.conjuncts().len(), 2);
        assert_eq!(Formula::lt(x(4), x(2)).as_exists().map(|(v, _)| v), Some(1));
    }
}
