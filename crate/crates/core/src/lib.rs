//! A proof kernel and toolkit for variant systems of first-order arithmetic.
//!
//! The crate is organised bottom-up:
//!
//! * [`syntax`]: terms, formulas, parser and canonical printer.
//! * [`codec`]: Gödel numbering (positional and prime-power codecs).
//! * [`beta`]: the Beta function, CRT sequence witnesses, the `Bt` formula.
//! * [`kernel`]: system profiles, proof scripts, line-by-line checking,
//!   ω-Specification certificates.
//! * [`primrec`]: primitive recursive functions, the representation compiler
//!   and the decidable predicates `prf`, `prf'` and `q`.
//! * [`diagonal`]: fixed-point sentence construction.
//! * [`models`]: bounded evaluation in the standard model and in the ordinals
//!   below ω^ω.
//! * [`corpus`]: the bundled script corpus and its acceptance matrix.

pub mod beta;
pub mod codec;
pub mod corpus;
pub mod diagonal;
pub mod kernel;
pub mod models;
pub mod primrec;
pub mod proofs;
pub mod syntax;
