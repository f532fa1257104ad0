//! Serializable summary of one function's canalization profile.

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::anf::AnfPolynomial;
use crate::canalization::{ordering_count, peel_sequence, standard_monomial_form};
use crate::error::{Error, Result};
use crate::expr::parse_expression;
use crate::table::TruthTable;

/// One dominance layer as reported: variable names with their canalizing
/// inputs, and the output the layer forces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerReport {
    pub variables: Vec<String>,
    pub inputs: Vec<u8>,
    pub canalized_output: u8,
}

/// Full canalization profile of a single function. Serialized as-is for
/// the machine-readable output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub variable_names: Vec<String>,
    pub arity: usize,
    pub is_constant: bool,
    pub essential: Vec<String>,
    pub fictitious: Vec<String>,
    pub depth: usize,
    pub layers: Vec<LayerReport>,
    pub b: u8,
    pub core_polynomial_anf: String,
    pub core_function_anf: Option<String>,
    pub is_nested_canalizing: bool,
    pub ordering_count: u128,
    pub truth_table_hex: String,
}

/// Analyzes a truth table under the given variable names.
pub fn analyze_table(table: &TruthTable, names: &[String]) -> Result<AnalysisReport> {
    if names.len() != table.arity() {
        return Err(Error::NameCount { names: names.len(), arity: table.arity() });
    }
    let d = standard_monomial_form(table);
    let name_of = |v: crate::table::VarIndex| names[v.bit()].clone();

    let core_names: Vec<String> = d.core_vars().iter().map(|&v| name_of(v)).collect();
    let core_poly = AnfPolynomial::from_truth_table(d.core());
    let core_function_anf = d
        .core_function()
        .map(|fc| AnfPolynomial::from_truth_table(&fc).render(&core_names));

    let steps = peel_sequence(&d);
    let layers = d
        .layers()
        .iter()
        .scan(0usize, |taken, layer| {
            let output = steps[*taken].output;
            *taken += layer.size();
            Some(LayerReport {
                variables: layer.variables().map(name_of).collect(),
                inputs: layer.factors().iter().map(|&(_, a)| a as u8).collect(),
                canalized_output: output as u8,
            })
        })
        .collect();

    Ok(AnalysisReport {
        variable_names: names.to_vec(),
        arity: table.arity(),
        is_constant: d.is_constant(),
        essential: table.essential_set().into_iter().map(name_of).collect(),
        fictitious: d.fictitious().iter().map(|&v| name_of(v)).collect(),
        depth: d.depth(),
        layers,
        b: d.b() as u8,
        core_polynomial_anf: core_poly.render(&core_names),
        core_function_anf,
        is_nested_canalizing: !d.is_constant() && d.depth() == table.arity(),
        ordering_count: ordering_count(&d)
            .to_u128()
            .expect("ordering count fits u128 at supported arities"),
        truth_table_hex: table.to_hex(),
    })
}

/// Parses and analyzes an expression; see [`parse_expression`] for the
/// variable binding rules.
pub fn analyze_expression(
    text: &str,
    variable_order: Option<&[String]>,
) -> Result<AnalysisReport> {
    let (poly, names) = parse_expression(text, variable_order)?;
    analyze_table(&poly.to_truth_table(), &names)
}
