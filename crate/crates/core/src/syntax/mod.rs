//! Terms and formulas of first-order arithmetic: AST, parser, canonical printer.

mod formula;
mod parse;
mod print;
mod term;

pub use formula::{fresh_var, CaptureError, Formula};
pub use parse::{parse_formula, parse_term, ParseError};
pub use print::{print_formula, print_term, MAX_PRIME_RUN};
pub use term::{numeral, Term};

/// `substitute(f, v, t)`: replace the free occurrences of `x_v` in `f` by `t`.
pub fn substitute(f: &Formula, v: u32, t: &Term) -> Result<Formula, CaptureError> {
    f.substitute(v, t)
}

pub fn free_vars(f: &Formula) -> std::collections::BTreeSet<u32> {
    f.free_vars()
}
