//! Analysis of Boolean functions by canalizing structure.
//!
//! A variable is canalizing when one of its inputs forces the function's
//! output; peeling such variables recursively yields a unique normal form
//! made of extended-monomial dominance layers wrapped around a
//! non-canalizing core. This crate computes that form, counts the
//! functions of every canalizing depth with exact arithmetic, verifies
//! the counts by exhaustive census at small arity, and draws uniform
//! samples from a prescribed depth stratum.
//!
//! The main entry points:
//!
//! - [`TruthTable`] and [`AnfPolynomial`]: the two function representations
//!   and the conversions between them.
//! - [`standard_monomial_form`]: the layered decomposition, with
//!   [`canalizing_depth`], [`core_function`], [`peel_sequence`] and
//!   friends on top of it.
//! - [`enumeration`]: closed-form stratum counts and the brute-force
//!   census that cross-checks them.
//! - [`sampling`]: seeded uniform samplers per depth stratum.
//! - [`parse_expression`] and [`analyze`]: the text front end and the
//!   serializable analysis report.

mod anf;
mod canalization;
mod error;
mod table;

pub mod enumeration;
pub mod expr;
pub mod report;
pub mod sampling;

pub use anf::AnfPolynomial;
pub use canalization::{
    canalizing_depth, canalizing_variables, core_function, is_k_canalizing,
    is_nested_canalizing, ordering_count, peel_sequence, reconstruct,
    standard_monomial_form, CanalizingTriple, ExtendedMonomialLayer, LayerDecomposition,
    PeelStep,
};
pub use error::{Error, Result};
pub use expr::{parse_expression, ExpressionAst};
pub use report::{analyze_expression, analyze_table, AnalysisReport};
pub use table::{hex_len, TruthTable, VarIndex};
