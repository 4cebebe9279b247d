//! Representation formulas for primitive recursive functions.
//!
//! A function of arity `k` compiles to a formula in the argument variables
//! `x1..xk` and the result variable `x(k+1)`. Recursion uses the Beta
//! function through `Bt`:
//!
//! ```text
//! (E u)(E v)( (E w)(Bt(u,v,0,w) & G(x,w))
//!           & Bt(u,v,y,r)
//!           & (A w)((w < y) -> (E a)(E b)(Bt(u,v,w,a) & Bt(u,v,(w + 0'),b) & H(x,w,a,b))) )
//! ```
//!
//! Every bound variable is drawn from one increasing counter above the free
//! variables, so instantiating a part never needs renaming.
//!
//! Existentials whose witnesses cannot be found by bounded search (the Beta
//! pair of each recursion and the intermediate results of a composition)
//! are recorded as [`Site`]s, from which the evaluator computes witnesses.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;

use super::{eval_pr, rec_trace, PrError, PrimRecFn};
use crate::beta::{beta, encode_sequence, BetaWitness};
use crate::models::{Env, Evaluator, Hint, Model, Ordinal, TruthValue};
use crate::syntax::{numeral, Formula, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Site {
    /// `(E u)(E v)` of a recursion with argument variables `args`.
    Beta { u: u32, v: u32, args: Vec<u32>, f: PrimRecFn },
    /// A variable whose intended value is `beta(u, v, index)`.
    BetaValue { var: u32, u: u32, v: u32, index: Term },
    /// The result of `g(args)` inside a composition.
    CompResult { var: u32, g: PrimRecFn, args: Vec<u32> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub function: PrimRecFn,
    pub arity: u32,
    pub formula: Formula,
    pub sites: Vec<Site>,
}

pub fn compile_representation(f: &PrimRecFn) -> Result<Formula, PrError> {
    Ok(compile_with_sites(f)?.formula)
}

pub fn compile_with_sites(f: &PrimRecFn) -> Result<Representation, PrError> {
    let arity = f.arity()?;
    let mut c = Compiler { next: arity + 2, sites: Vec::new() };
    let args: Vec<u32> = (1..=arity).collect();
    let formula = c.compile(f, &args, arity + 1);
    Ok(Representation { function: f.clone(), arity, formula, sites: c.sites })
}

struct Compiler {
    next: u32,
    sites: Vec<Site>,
}

fn var(v: u32) -> Term {
    Term::Var(v)
}

fn conj(parts: Vec<Formula>) -> Formula {
    parts.into_iter().reduce(Formula::and).expect("nonempty conjunction")
}

impl Compiler {
    fn fresh(&mut self) -> u32 {
        self.next += 1;
        self.next - 1
    }

    fn compile(&mut self, f: &PrimRecFn, args: &[u32], res: u32) -> Formula {
        match f {
            PrimRecFn::Zero(_) => Formula::eq(var(res), Term::Zero),
            PrimRecFn::Succ => Formula::eq(var(res), Term::succ(var(args[0]))),
            PrimRecFn::Proj(_, i) => Formula::eq(var(res), var(args[*i as usize - 1])),
            PrimRecFn::Comp(outer, inner) => {
                let ys: Vec<u32> = inner.iter().map(|_| self.fresh()).collect();
                let mut parts = Vec::new();
                for (g, y) in inner.iter().zip(&ys) {
                    self.sites.push(Site::CompResult { var: *y, g: g.clone(), args: args.to_vec() });
                    parts.push(self.compile(g, args, *y));
                }
                parts.push(self.compile(outer, &ys, res));
                ys.iter().rev().fold(conj(parts), |body, y| Formula::exists(*y, body))
            }
            PrimRecFn::Rec(g, h) => {
                let (x, y) = args.split_at(args.len() - 1);
                let y = y[0];
                let (u, v) = (self.fresh(), self.fresh());
                self.sites.push(Site::Beta { u, v, args: args.to_vec(), f: f.clone() });

                // (E w)(Bt(u,v,0,w) & G(x,w))
                let w0 = self.fresh();
                self.sites.push(Site::BetaValue { var: w0, u, v, index: Term::Zero });
                let bt0 = self.bt(var(u), var(v), Term::Zero, var(w0));
                let base = Formula::exists(w0, Formula::and(bt0, self.compile(g, x, w0)));

                // Bt(u,v,y,res)
                let last = self.bt(var(u), var(v), var(y), var(res));

                // (A w)((w < y) -> (E a)(E b)(Bt(u,v,w,a) & Bt(u,v,w+1,b) & H(x,w,a,b)))
                let w = self.fresh();
                let slack = self.fresh();
                let (a, b) = (self.fresh(), self.fresh());
                let next_index = Term::add(var(w), numeral(1u32));
                self.sites.push(Site::BetaValue { var: a, u, v, index: var(w) });
                self.sites.push(Site::BetaValue { var: b, u, v, index: next_index.clone() });
                let bt_a = self.bt(var(u), var(v), var(w), var(a));
                let bt_b = self.bt(var(u), var(v), next_index, var(b));
                let mut h_args = x.to_vec();
                h_args.extend([w, a]);
                let step = self.compile(h, &h_args, b);
                let inner = Formula::exists(a, Formula::exists(b, conj(vec![bt_a, bt_b, step])));
                let guard = Formula::lt_with(var(w), var(y), slack);
                let steps = Formula::forall(w, Formula::implies(guard, inner));

                Formula::exists(u, Formula::exists(v, conj(vec![base, last, steps])))
            }
        }
    }

    /// `Bt(p, q, i, k)` with fresh quotient and slack variables.
    fn bt(&mut self, p: Term, q: Term, i: Term, k: Term) -> Formula {
        let (quot, slack) = (self.fresh(), self.fresh());
        bt_with(p, q, i, k, quot, slack)
    }
}

/// `(E quot)((p = (((0' + ((i + 0') * q)) * quot) + k)) & (k < (0' + ((i + 0') * q))))`.
pub(crate) fn bt_with(p: Term, q: Term, i: Term, k: Term, quot: u32, slack: u32) -> Formula {
    let one = numeral(1u32);
    let modulus = Term::add(one.clone(), Term::mul(Term::add(i, one), q));
    let division = Formula::eq(p, Term::add(Term::mul(modulus.clone(), var(quot)), k.clone()));
    Formula::exists(quot, Formula::and(division, Formula::lt_with(k, modulus, slack)))
}

type WitnessCache = Arc<Mutex<HashMap<Vec<BigUint>, BetaWitness>>>;

fn nat(env: &Env, v: u32) -> Option<BigUint> {
    env.get(&v).and_then(Ordinal::as_finite)
}

impl Representation {
    /// A standard-model evaluator with every site turned into a hint. Beta
    /// pairs and composition results are pinned: their quantifiers range
    /// over the computed witnesses only.
    pub fn evaluator(&self, bound: usize) -> Evaluator {
        let mut ev = Evaluator::new(Model::Standard, bound);
        for site in &self.sites {
            match site {
                Site::Beta { u, v, args, f } => {
                    let witness = {
                        let cache: WitnessCache = Arc::default();
                        let (args, f) = (args.clone(), f.clone());
                        move |env: &Env| -> Option<BetaWitness> {
                            let values: Option<Vec<BigUint>> = args.iter().map(|a| nat(env, *a)).collect();
                            let values = values?;
                            let mut cache = cache.lock().expect("witness cache");
                            if let Some(w) = cache.get(&values) {
                                return Some(w.clone());
                            }
                            let w = encode_sequence(&rec_trace(&f, &values).ok()?);
                            cache.insert(values, w.clone());
                            Some(w)
                        }
                    };
                    let wu = witness.clone();
                    ev = ev.pinned(
                        *u,
                        Hint::computed(move |env| wu(env).map(|w| Ordinal::from(w.u)).into_iter().collect()),
                    );
                    ev = ev.pinned(
                        *v,
                        Hint::computed(move |env| witness(env).map(|w| Ordinal::from(w.v)).into_iter().collect()),
                    );
                }
                Site::BetaValue { var, u, v, index } => {
                    let (u, v, index) = (*u, *v, index.clone());
                    ev = ev.with_hint(
                        *var,
                        Hint::computed(move |env| {
                            let (Some(uu), Some(vv)) = (nat(env, u), nat(env, v)) else { return vec![] };
                            let Ok(i) = Evaluator::new(Model::Standard, 0).eval_term(&index, env) else {
                                return vec![];
                            };
                            i.as_finite().map(|i| Ordinal::from(beta(&uu, &vv, &i))).into_iter().collect()
                        }),
                    );
                }
                Site::CompResult { var, g, args } => {
                    let (g, args) = (g.clone(), args.clone());
                    ev = ev.pinned(
                        *var,
                        Hint::computed(move |env| {
                            let values: Option<Vec<BigUint>> = args.iter().map(|a| nat(env, *a)).collect();
                            values
                                .and_then(|vals| eval_pr(&g, &vals).ok())
                                .map(Ordinal::from)
                                .into_iter()
                                .collect()
                        }),
                    );
                }
            }
        }
        ev
    }

    /// Evaluate at argument values `args` and result `r`.
    pub fn eval_at(&self, args: &[BigUint], r: &BigUint) -> TruthValue {
        let mut env: Env = args.iter().enumerate().map(|(i, a)| (i as u32 + 1, Ordinal::from(a.clone()))).collect();
        env.insert(self.arity + 1, Ordinal::from(r.clone()));
        // Arguments the formula ignores stay bound: witness sites read them.
        self.evaluator(0).eval(&self.formula, &env).unwrap_or(TruthValue::Unknown)
    }
}

/// The compiled formula at `(args, z)` for every `z ≤ f(args) + 5`.
pub fn representation_sweep(f: &PrimRecFn, args: &[BigUint]) -> Result<Vec<(BigUint, TruthValue)>, PrError> {
    let value = eval_pr(f, args)?;
    let rep = compile_with_sites(f)?;
    let top = &value + 5u32;
    let mut out = Vec::new();
    let mut z = BigUint::default();
    while z <= top {
        out.push((z.clone(), rep.eval_at(args, &z)));
        z += 1u32;
    }
    Ok(out)
}

/// The compiled formula holds at the true value and fails at every other
/// value in the window `0..=f(args)+5`.
pub fn check_representation(f: &PrimRecFn, args: &[BigUint]) -> Result<bool, PrError> {
    let value = eval_pr(f, args)?;
    let sweep = representation_sweep(f, args)?;
    Ok(sweep.iter().all(|(z, t)| {
        if *z == value {
            *t == TruthValue::True
        } else {
            *t == TruthValue::False
        }
    }))
}
