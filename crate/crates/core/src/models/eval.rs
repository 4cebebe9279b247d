//! Three-valued bounded evaluation.
//!
//! Atomic formulas are decided exactly. A quantifier `(A w)B` is decided in
//! one of three ways:
//!
//! * **guarded**: `B` is `(X -> C)` or `~Y` where `X` (resp. `Y`) contains,
//!   through conjunctions, existentials and double negations, an equation
//!   that pins `w` to an explicit finite candidate set. Outside that set `B`
//!   holds vacuously, so checking the candidates decides the quantifier.
//! * **pinned**: the variable ranges over its hinted witnesses only, and the
//!   result is definite relative to those witnesses.
//! * **swept**: the first `bound` elements of the model plus any hints are
//!   tried; a counterexample gives `False`, otherwise the answer is
//!   `Unknown`.
//!
//! Definite answers never depend on the bound, so raising the bound can only
//! turn `Unknown` into a definite value.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::ordinal::{Ordinal, OrdinalError};
use crate::syntax::{Formula, Term};


#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    /// The natural numbers.
    Standard,
    /// The ordinals below ω^ω.
    Ca,
}

impl Model {
    pub fn as_str(self) -> &'static str {
        match self {
            Model::Standard => "standard",
            Model::Ca => "ca",
        }
    }

    /// The first elements of the model's enumeration. For CA this is
    /// `{ω·a + b : a, b < bound}`, finite ordinals first.
    pub fn enumerate(self, bound: usize) -> Vec<Ordinal> {
        match self {
            Model::Standard => (0..bound as u64).map(Ordinal::from).collect(),
            Model::Ca => {
                let mut out = Vec::with_capacity(bound * bound);
                for a in 0..bound as u64 {
                    let head = Ordinal::monomial(1, a);
                    for b in 0..bound as u64 {
                        out.push(head.add(&Ordinal::from(b)));
                    }
                }
                out
            }
        }
    }

    fn admits(self, x: &Ordinal) -> bool {
        self == Model::Ca || x.is_finite()
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "standard" => Ok(Model::Standard),
            "ca" | "CA" => Ok(Model::Ca),
            _ => Err(format!("unknown model {s:?} (expected standard or ca)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TruthValue {
    True,
    False,
    Unknown,
}

impl TruthValue {
    pub fn from_bool(b: bool) -> TruthValue {
        if b {
            TruthValue::True
        } else {
            TruthValue::False
        }
    }

    pub fn is_definite(self) -> bool {
        self != TruthValue::Unknown
    }

    pub fn negate(self) -> TruthValue {
        match self {
            TruthValue::True => TruthValue::False,
            TruthValue::False => TruthValue::True,
            TruthValue::Unknown => TruthValue::Unknown,
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TruthValue::True => "True",
            TruthValue::False => "False",
            TruthValue::Unknown => "Unknown",
        })
    }
}

pub type Env = BTreeMap<u32, Ordinal>;

type HintFn = dyn Fn(&Env) -> Vec<Ordinal> + Send + Sync;

/// Witness candidates for a bound variable, tried before any sweep.
#[derive(Clone)]
pub enum Hint {
    Values(Vec<Ordinal>),
    /// Computed from the values of the enclosing variables.
    Computed(Arc<HintFn>),
}

impl Hint {
    pub fn value(x: impl Into<Ordinal>) -> Hint {
        Hint::Values(vec![x.into()])
    }

    pub fn computed(f: impl Fn(&Env) -> Vec<Ordinal> + Send + Sync + 'static) -> Hint {
        Hint::Computed(Arc::new(f))
    }

    fn candidates(&self, env: &Env) -> Vec<Ordinal> {
        match self {
            Hint::Values(v) => v.clone(),
            Hint::Computed(f) => f(env),
        }
    }
}

impl fmt::Debug for Hint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hint::Values(v) => f.debug_tuple("Values").field(v).finish(),
            Hint::Computed(_) => f.write_str("Computed(..)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound free variable x{0}")]
    Unbound(u32),
    #[error("x{var} := {value} is not an element of the {model} model")]
    NotInDomain { var: u32, value: Ordinal, model: Model },
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
}

#[derive(Debug, Clone)]
pub struct Evaluator {
    pub model: Model,
    pub bound: usize,
    pub hints: BTreeMap<u32, Hint>,
    /// Variables whose quantifiers range over their hints only.
    pub pinned: BTreeSet<u32>,
}

impl Evaluator {
    pub fn new(model: Model, bound: usize) -> Self {
        Evaluator { model, bound, hints: BTreeMap::new(), pinned: BTreeSet::new() }
    }

    pub fn with_hint(mut self, var: u32, hint: Hint) -> Self {
        self.hints.insert(var, hint);
        self
    }

    pub fn pinned(mut self, var: u32, hint: Hint) -> Self {
        self.hints.insert(var, hint);
        self.pinned.insert(var);
        self
    }

    pub fn eval(&self, f: &Formula, bindings: &Env) -> Result<TruthValue, EvalError> {
        for (var, value) in bindings {
            if !self.model.admits(value) {
                return Err(EvalError::NotInDomain { var: *var, value: value.clone(), model: self.model });
            }
        }
        if let Some(v) = f.free_vars().into_iter().find(|v| !bindings.contains_key(v)) {
            return Err(EvalError::Unbound(v));
        }
        let run = Run { ev: self, sweep: self.model.enumerate(self.bound) };
        run.formula(f, &mut bindings.clone())
    }

    pub fn eval_term(&self, t: &Term, env: &Env) -> Result<Ordinal, EvalError> {
        term_value(t, env)
    }
}

/// Evaluate `f` under `bindings` with the first `bound` model elements
/// (plus hints) as quantifier range.
pub fn eval_formula(
    f: &Formula,
    model: Model,
    bindings: &Env,
    bound: usize,
    hints: Option<&BTreeMap<u32, Hint>>,
) -> Result<TruthValue, EvalError> {
    let mut ev = Evaluator::new(model, bound);
    if let Some(h) = hints {
        ev.hints = h.clone();
    }
    ev.eval(f, bindings)
}

fn term_value(t: &Term, env: &Env) -> Result<Ordinal, EvalError> {
    Ok(match t {
        Term::Zero => Ordinal::zero(),
        Term::Var(v) => env.get(v).cloned().ok_or(EvalError::Unbound(*v))?,
        Term::Succ(n, inner) => term_value(inner, env)?.add_finite(n),
        Term::Add(a, b) => term_value(a, env)?.add(&term_value(b, env)?),
        Term::Mul(a, b) => term_value(a, env)?.mul(&term_value(b, env)?)?,
    })
}

/// The values of a guarded variable that need checking.
enum Candidates {
    List(Vec<Ordinal>),
    /// `0, 1, …, n`.
    UpTo(u64),
}

impl Candidates {
    fn len(&self) -> u64 {
        match self {
            Candidates::List(v) => v.len() as u64,
            Candidates::UpTo(n) => n.saturating_add(1),
        }
    }

    fn contains(&self, x: &Ordinal) -> bool {
        match self {
            Candidates::List(v) => v.contains(x),
            Candidates::UpTo(n) => x.as_finite().and_then(|k| k.to_u64()).is_some_and(|k| k <= *n),
        }
    }

    fn into_iter(self) -> Box<dyn Iterator<Item = Ordinal>> {
        match self {
            Candidates::List(v) => Box::new(v.into_iter()),
            Candidates::UpTo(n) => Box::new((0..=n).map(Ordinal::from)),
        }
    }
}

struct Run<'a> {
    ev: &'a Evaluator,
    sweep: Vec<Ordinal>,
}

/// An equation `a = t(w)` found under a quantifier, with the existential
/// variables enclosing it.
struct Guard<'f> {
    lhs: &'f Term,
    rhs: &'f Term,
    inner: Vec<u32>,
}

impl Run<'_> {
    fn formula(&self, f: &Formula, env: &mut Env) -> Result<TruthValue, EvalError> {
        match f {
            Formula::Eq(l, r) => Ok(TruthValue::from_bool(term_value(l, env)? == term_value(r, env)?)),
            Formula::Not(a) => Ok(self.formula(a, env)?.negate()),
            Formula::Implies(a, b) => {
                let x = self.formula(a, env)?;
                if x == TruthValue::False {
                    return Ok(TruthValue::True);
                }
                let y = self.formula(b, env)?;
                Ok(match (x, y) {
                    (_, TruthValue::True) => TruthValue::True,
                    (TruthValue::True, TruthValue::False) => TruthValue::False,
                    _ => TruthValue::Unknown,
                })
            }
            Formula::ForAll(w, body) => self.forall(*w, body, env),
        }
    }

    fn forall(&self, w: u32, body: &Formula, env: &mut Env) -> Result<TruthValue, EvalError> {
        if !body.has_free(w) {
            return self.formula(body, env);
        }
        let hinted: Vec<Ordinal> = match self.ev.hints.get(&w) {
            Some(h) => h.candidates(env).into_iter().filter(|x| self.ev.model.admits(x)).collect(),
            None => Vec::new(),
        };
        let (candidates, exhaustive): (Box<dyn Iterator<Item = Ordinal>>, bool) =
            if self.ev.pinned.contains(&w) {
                (Box::new(hinted.into_iter()), true)
            } else if let Some(set) = self.guarded(w, body, env)? {
                // Hinted witnesses first so existentials stop early.
                let first: Vec<Ordinal> = hinted.into_iter().filter(|h| set.contains(h)).collect();
                let skip = first.clone();
                let rest = set.into_iter().filter(move |c| !skip.contains(c));
                (Box::new(first.into_iter().chain(rest)), true)
            } else {
                let extra: Vec<Ordinal> = hinted.into_iter().filter(|h| !self.sweep.contains(h)).collect();
                (Box::new(extra.into_iter().chain(self.sweep.clone())), false)
            };
        let prev = env.remove(&w);
        let mut unknown = false;
        let mut result = Ok(());
        for c in candidates {
            env.insert(w, c);
            match self.formula(body, env) {
                Ok(TruthValue::False) => {
                    result = Err(TruthValue::False);
                    break;
                }
                Ok(TruthValue::Unknown) => unknown = true,
                Ok(TruthValue::True) => {}
                Err(e) => {
                    restore(env, w, prev);
                    return Err(e);
                }
            }
        }
        restore(env, w, prev);
        Ok(match result {
            Err(v) => v,
            Ok(()) if exhaustive && !unknown => TruthValue::True,
            Ok(()) => TruthValue::Unknown,
        })
    }

    /// A finite set outside of which `body` is true, if a guard yields one.
    fn guarded(&self, w: u32, body: &Formula, env: &mut Env) -> Result<Option<Candidates>, EvalError> {
        let scope = match body {
            Formula::Implies(x, _) => x,
            Formula::Not(y) => y,
            _ => return Ok(None),
        };
        let mut guards = Vec::new();
        collect_guards(scope, w, &mut Vec::new(), &mut guards);
        let mut best: Option<Candidates> = None;
        for g in guards {
            for (a, t) in [(g.lhs, g.rhs), (g.rhs, g.lhs)] {
                if let Some(set) = self.solve(w, a, t, &g.inner, env)? {
                    if best.as_ref().is_none_or(|b| set.len() < b.len()) {
                        best = Some(set);
                    }
                }
            }
        }
        Ok(best)
    }

    /// Candidate values of `w` for which `a = t(w)` can hold.
    fn solve(&self, w: u32, a: &Term, t: &Term, inner: &[u32], env: &mut Env) -> Result<Option<Candidates>, EvalError> {
        if !t.contains_var(w) || a.contains_var(w) || inner.iter().any(|v| a.contains_var(*v)) {
            return Ok(None);
        }
        if a.vars().iter().any(|v| !env.contains_key(v)) {
            return Ok(None);
        }
        let a_val = term_value(a, env)?;
        if (a_val.is_zero() || a_val.is_limit()) && successor_valued(t) {
            return Ok(Some(Candidates::List(Vec::new())));
        }
        let t_closed = t.vars().iter().all(|v| *v == w || env.contains_key(v));
        if self.ev.model == Model::Standard && t_closed && occurrences(t, w) == 1 {
            // t(w) = b0 + c·w over the naturals.
            let prev = env.remove(&w);
            env.insert(w, Ordinal::zero());
            let b0 = term_value(t, env);
            env.insert(w, Ordinal::from(1u64));
            let b1 = term_value(t, env);
            restore(env, w, prev);
            let (b0, b1, a) = (nat(&b0?), nat(&b1?), nat(&a_val));
            let c = &b1 - &b0;
            if c.is_zero() {
                return Ok(if a == b0 { None } else { Some(Candidates::List(Vec::new())) });
            }
            if a < b0 || !((&a - &b0) % &c).is_zero() {
                return Ok(Some(Candidates::List(Vec::new())));
            }
            return Ok(Some(Candidates::List(vec![Ordinal::from((&a - &b0) / &c)])));
        }
        if self.dominates(t, w, inner, env)? {
            if let Some(n) = a_val.as_finite().and_then(|n| n.to_u64()) {
                return Ok(Some(Candidates::UpTo(n)));
            }
        }
        Ok(None)
    }

    /// `t(w) ≥ w` for every value of `w` and of the inner variables.
    fn dominates(&self, t: &Term, w: u32, inner: &[u32], env: &Env) -> Result<bool, EvalError> {
        Ok(match t {
            Term::Var(x) => *x == w,
            Term::Zero => false,
            Term::Succ(_, s) => self.dominates(s, w, inner, env)?,
            Term::Add(s, r) => self.dominates(s, w, inner, env)? || self.dominates(r, w, inner, env)?,
            Term::Mul(s, r) => {
                let ds = self.dominates(s, w, inner, env)?;
                let dr = self.dominates(r, w, inner, env)?;
                (ds && (dr || positive(r, w, inner, env)?)) || (dr && positive(s, w, inner, env)?)
            }
        })
    }
}

fn collect_guards<'f>(g: &'f Formula, w: u32, inner: &mut Vec<u32>, out: &mut Vec<Guard<'f>>) {
    if let Some((a, b)) = g.as_and() {
        collect_guards(a, w, inner, out);
        collect_guards(b, w, inner, out);
    } else if let Some((v, body)) = g.as_exists() {
        // An inner binder of w shadows the variable being solved for.
        if v != w {
            inner.push(v);
            collect_guards(body, w, inner, out);
            inner.pop();
        }
    } else if let Formula::Not(n) = g {
        if let Formula::Not(h) = &**n {
            collect_guards(h, w, inner, out);
        }
    } else if let Formula::Eq(lhs, rhs) = g {
        out.push(Guard { lhs, rhs, inner: inner.clone() });
    }
}

fn successor_valued(t: &Term) -> bool {
    match t {
        Term::Succ(..) => true,
        Term::Add(_, r) => successor_valued(r),
        _ => false,
    }
}

fn positive(t: &Term, w: u32, inner: &[u32], env: &Env) -> Result<bool, EvalError> {
    if t.contains_var(w) || inner.iter().any(|v| t.contains_var(*v)) || t.vars().iter().any(|v| !env.contains_key(v)) {
        return Ok(false);
    }
    Ok(!term_value(t, env)?.is_zero())
}

fn occurrences(t: &Term, w: u32) -> usize {
    match t {
        Term::Var(x) => usize::from(*x == w),
        Term::Zero => 0,
        Term::Succ(_, s) => occurrences(s, w),
        Term::Add(a, b) | Term::Mul(a, b) => occurrences(a, w) + occurrences(b, w),
    }
}

fn nat(o: &Ordinal) -> BigUint {
    o.as_finite().expect("standard-model values are finite")
}

fn restore(env: &mut Env, w: u32, prev: Option<Ordinal>) {
    match prev {
        Some(p) => env.insert(w, p),
        None => env.remove(&w),
    };
}
