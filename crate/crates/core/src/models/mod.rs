//! Bounded semantics in the standard model and in the ordinals below ω^ω.

mod eval;
mod ordinal;

use std::fmt;

pub use eval::{eval_formula, Env, EvalError, Evaluator, Hint, Model, TruthValue};
pub use ordinal::{ord_add, ord_mul, Ordinal, OrdinalError};

use crate::kernel::{arithmetic_axiom, AxiomTag};

/// Outcome of one arithmetic axiom over all finite substitutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomRow {
    pub tag: AxiomTag,
    pub instances: usize,
    /// First substitution that did not evaluate to True, with its value.
    pub failure: Option<(Env, TruthValue)>,
}

impl AxiomRow {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub model: Model,
    pub n_max: u64,
    pub rows: Vec<AxiomRow>,
    /// A9 at `x1 := ω`, outside the natural-number sub-domain.
    pub a9_at_omega: TruthValue,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(AxiomRow::passed)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "model {} with x_i ranging over 0..={}", self.model, self.n_max)?;
        for row in &self.rows {
            match &row.failure {
                None => writeln!(f, "{} pass ({} instances)", row.tag, row.instances)?,
                Some((env, v)) => {
                    let at: Vec<String> = env.iter().map(|(k, x)| format!("x{k}={x}")).collect();
                    writeln!(f, "{} FAIL at {}: {v}", row.tag, at.join(","))?
                }
            }
        }
        write!(f, "A9 at x1=w: {}", self.a9_at_omega)
    }
}

/// Evaluate an arithmetic axiom at the given assignment of its variables.
pub fn eval_axiom(tag: AxiomTag, model: Model, env: &Env) -> Result<TruthValue, EvalError> {
    let axiom = arithmetic_axiom(tag).expect("arithmetic tag");
    Evaluator::new(model, 0).eval(axiom, env)
}

/// Every instance of A1–A9 with variables among the finite ordinals
/// `0..=n_max`, evaluated in `model`, plus A9 at `x1 := ω`.
pub fn check_axioms_over_naturals(model: Model, n_max: u64) -> AxiomReport {
    let rows = AxiomTag::ARITHMETIC
        .into_iter()
        .map(|tag| {
            let axiom = arithmetic_axiom(tag).expect("arithmetic tag");
            let vars: Vec<u32> = axiom.free_vars().into_iter().collect();
            let mut instances = 0;
            let mut failure = None;
            for env in assignments(&vars, n_max) {
                instances += 1;
                let v = eval_axiom(tag, model, &env).unwrap_or(TruthValue::Unknown);
                if v != TruthValue::True {
                    failure = Some((env, v));
                    break;
                }
            }
            AxiomRow { tag, instances, failure }
        })
        .collect();
    let omega_env: Env = [(1, Ordinal::omega())].into_iter().collect();
    let a9_at_omega = match model {
        Model::Ca => eval_axiom(AxiomTag::A9, model, &omega_env).unwrap_or(TruthValue::Unknown),
        Model::Standard => TruthValue::Unknown,
    };
    AxiomReport { model, n_max, rows, a9_at_omega }
}

fn assignments(vars: &[u32], n_max: u64) -> Vec<Env> {
    let mut out = vec![Env::new()];
    for v in vars {
        out = out
            .into_iter()
            .flat_map(|env| {
                (0..=n_max).map(move |k| {
                    let mut e = env.clone();
                    e.insert(*v, Ordinal::from(k));
                    e
                })
            })
            .collect();
    }
    out
}
