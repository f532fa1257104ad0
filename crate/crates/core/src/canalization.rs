//! Canalizing structure: detection of canalizing variables and the unique
//! layered normal form of a Boolean function.
//!
//! Every non-zero function can be written uniquely as
//!
//! ```text
//! f = M_1(M_2(...(M_{r-1}(M_r p + 1) + 1)...) + 1) + b
//! ```
//!
//! where each `M_i` is a product of distinct literals `(x_v + a_v)` (an
//! extended monomial), `p` is a non-canalizing core polynomial, and the
//! depth is the total number of literals. [`standard_monomial_form`]
//! computes this form by greedily peeling all currently-canalizing
//! variables as one layer and recursing on the quotient.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::table::{TruthTable, VarIndex};

/// A canalizing variable together with its forcing input and forced output:
/// fixing `var` to `input` makes the function constantly `output`, while
/// the opposite input does not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CanalizingTriple {
    pub var: VarIndex,
    pub input: bool,
    pub output: bool,
}

/// One dominance layer: the factors `(x_v + a_v)` of an extended monomial,
/// sorted by variable index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedMonomialLayer {
    factors: Vec<(VarIndex, bool)>,
}

impl ExtendedMonomialLayer {
    /// Builds a layer from `(variable, input)` pairs. Pairs are sorted by
    /// variable; the layer must be nonempty and duplicate-free.
    pub fn new(mut factors: Vec<(VarIndex, bool)>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidDecomposition("empty layer".into()));
        }
        factors.sort_by_key(|&(v, _)| v);
        if factors.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidDecomposition(
                "repeated variable within a layer".into(),
            ));
        }
        Ok(ExtendedMonomialLayer { factors })
    }

    pub fn factors(&self) -> &[(VarIndex, bool)] {
        &self.factors
    }

    pub fn size(&self) -> usize {
        self.factors.len()
    }

    pub fn variables(&self) -> impl Iterator<Item = VarIndex> + '_ {
        self.factors.iter().map(|&(v, _)| v)
    }

    /// Truth table of the extended monomial over `arity` ambient variables.
    fn table(&self, arity: usize) -> Result<TruthTable> {
        let mut acc = TruthTable::constant(arity, true);
        for &(v, input) in &self.factors {
            let factor = TruthTable::variable(arity, v)?.xor_constant(input);
            acc = acc.and(&factor);
        }
        Ok(acc)
    }
}

/// The standard monomial form of a function: ordered dominance layers, the
/// constant `b`, and the non-canalizing core.
///
/// The core is kept as a truth table over all variables that were not
/// peeled (fictitious ones included); `core_vars` maps its local indices
/// back to the original ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerDecomposition {
    arity: usize,
    layers: Vec<ExtendedMonomialLayer>,
    b: bool,
    core: TruthTable,
    core_vars: Vec<VarIndex>,
    fictitious: Vec<VarIndex>,
    is_constant: bool,
}

/// One step of the peel sequence: fixing `var` to `input` forces `output`
/// at that stage of the recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeelStep {
    pub var: VarIndex,
    pub input: bool,
    pub output: bool,
}

impl LayerDecomposition {
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Dominance layers, outermost first.
    pub fn layers(&self) -> &[ExtendedMonomialLayer] {
        &self.layers
    }

    /// The layer number `r`.
    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }

    /// Canalizing depth: total number of peeled variables.
    pub fn depth(&self) -> usize {
        self.layers.iter().map(ExtendedMonomialLayer::size).sum()
    }

    pub fn b(&self) -> bool {
        self.b
    }

    /// The core polynomial as a table over the unpeeled variables.
    pub fn core(&self) -> &TruthTable {
        &self.core
    }

    /// Original indices of the core's local variables, ascending.
    pub fn core_vars(&self) -> &[VarIndex] {
        &self.core_vars
    }

    /// Variables essential in neither the layers nor the core.
    pub fn fictitious(&self) -> &[VarIndex] {
        &self.fictitious
    }

    /// Whether the decomposed function was constant (outside the layered
    /// form's hypothesis; represented as `r = 0`, `core = f`, `b = 0`).
    pub fn is_constant(&self) -> bool {
        self.is_constant
    }

    /// Recessive variables: essential variables of the core, in original
    /// indices.
    pub fn recessive_vars(&self) -> Vec<VarIndex> {
        self.core
            .essential_set()
            .into_iter()
            .map(|local| self.core_vars[local.bit()])
            .collect()
    }

    /// The core function `f_C` over the unpeeled variables, when it exists.
    ///
    /// Absent when the function is constant or the peel ends in a constant
    /// remainder. With `r = 0` this is the core itself; otherwise the core
    /// polynomial is complemented when the number of `+1`s in the layered
    /// form (including `b`) is odd.
    pub fn core_function(&self) -> Option<TruthTable> {
        if self.is_constant || self.core.is_constant().is_some() {
            return None;
        }
        let r = self.layer_count();
        if r == 0 {
            Some(self.core.clone())
        } else {
            let flip = (r - 1 + self.b as usize) % 2 == 1;
            Some(self.core.xor_constant(flip))
        }
    }

    /// Assembles a decomposition from parts, validating the structural
    /// invariants needed by [`reconstruct`]: the layer variables and
    /// `core_vars` must partition `{1..=arity}` with no overlap, and the
    /// core's arity must match `core_vars`.
    pub fn from_parts(
        arity: usize,
        layers: Vec<ExtendedMonomialLayer>,
        b: bool,
        core: TruthTable,
        core_vars: Vec<VarIndex>,
    ) -> Result<Self> {
        let mut seen = vec![false; arity];
        let mut mark = |v: VarIndex| -> Result<()> {
            if v.get() > arity {
                return Err(Error::VariableOutOfRange { var: v.get(), arity });
            }
            if seen[v.bit()] {
                return Err(Error::InvalidDecomposition(format!(
                    "variable {v} appears in more than one place"
                )));
            }
            seen[v.bit()] = true;
            Ok(())
        };
        for layer in &layers {
            for &(v, _) in layer.factors() {
                mark(v)?;
            }
        }
        for &v in &core_vars {
            mark(v)?;
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::InvalidDecomposition(
                "layers and core variables do not cover the arity".into(),
            ));
        }
        if core.arity() != core_vars.len() {
            return Err(Error::InvalidDecomposition(format!(
                "core arity {} does not match its {} variables",
                core.arity(),
                core_vars.len()
            )));
        }
        let fictitious = fictitious_of(arity, &layers, &core, &core_vars);
        let is_constant = layers.is_empty() && core.is_constant().is_some();
        Ok(LayerDecomposition {
            arity,
            layers,
            b,
            core,
            core_vars,
            fictitious,
            is_constant,
        })
    }
}

fn fictitious_of(
    arity: usize,
    layers: &[ExtendedMonomialLayer],
    core: &TruthTable,
    core_vars: &[VarIndex],
) -> Vec<VarIndex> {
    let mut in_layer = vec![false; arity];
    for layer in layers {
        for v in layer.variables() {
            in_layer[v.bit()] = true;
        }
    }
    let mut out = Vec::new();
    for (local, &orig) in core_vars.iter().enumerate() {
        let essential = core
            .is_essential(VarIndex::new(local + 1))
            .expect("local index in range");
        if !essential && !in_layer[orig.bit()] {
            out.push(orig);
        }
    }
    out
}

/// All canalizing variables of `t`, each with its forcing input and output.
///
/// A function equal to `x_i + c` in its single essential variable admits
/// two valid input/output pairs; the one with output 0 is reported, which
/// keeps the layered form's `b = 0` convention for that case. Constants
/// have no canalizing variables.
pub fn canalizing_variables(t: &TruthTable) -> Vec<CanalizingTriple> {
    let mut out = Vec::new();
    for i in 1..=t.arity() {
        let var = VarIndex::new(i);
        let r0 = t.restriction_constant(var, false);
        let r1 = t.restriction_constant(var, true);
        let triple = match (r0, r1) {
            (Some(b0), Some(b1)) if b0 != b1 => {
                // f = x_i + b0 up to fictitious variables.
                Some(CanalizingTriple { var, input: b0, output: false })
            }
            (Some(b0), None) => Some(CanalizingTriple { var, input: false, output: b0 }),
            (None, Some(b1)) => Some(CanalizingTriple { var, input: true, output: b1 }),
            _ => None,
        };
        out.extend(triple);
    }
    out
}

/// Computes the unique standard monomial form of `t`.
///
/// Each round takes all canalizing variables of the current function as
/// the next layer, divides the extended monomial out, and recurses until
/// the remainder is non-canalizing. Constants fall outside the layered
/// form and come back as `r = 0`, `core = f`, `b = 0` with the constant
/// flag set.
pub fn standard_monomial_form(t: &TruthTable) -> LayerDecomposition {
    let arity = t.arity();
    if t.is_constant().is_some() {
        let core_vars = (1..=arity).map(VarIndex::new).collect::<Vec<_>>();
        return LayerDecomposition {
            arity,
            layers: Vec::new(),
            b: false,
            fictitious: core_vars.clone(),
            core: t.clone(),
            core_vars,
            is_constant: true,
        };
    }

    let mut layers = Vec::new();
    let mut b = false;
    // Original index of each local variable of the current table.
    let mut vars: Vec<VarIndex> = (1..=arity).map(VarIndex::new).collect();
    let mut current = t.clone();

    loop {
        let triples = canalizing_variables(&current);
        if triples.is_empty() {
            break;
        }
        let output = triples[0].output;
        assert!(
            triples.iter().all(|tr| tr.output == output),
            "canalizing variables of one function share a canalized output"
        );
        if layers.is_empty() {
            b = output;
        } else {
            // An inner remainder with canalized output 0 would have been
            // absorbed into the previous layer.
            assert!(output, "inner layers force the complemented output");
        }

        let factors: Vec<(VarIndex, bool)> = triples
            .iter()
            .map(|tr| (vars[tr.var.bit()], tr.input))
            .collect();
        // Divide the extended monomial out: with f = M g + output, the
        // quotient g is f at x_v = !a_v for every factor, XOR output.
        let fixed: Vec<(usize, bool)> =
            triples.iter().map(|tr| (tr.var.bit(), !tr.input)).collect();
        current = current.restrict_bits(&fixed).xor_constant(output);
        let peeled: Vec<usize> = triples.iter().map(|tr| tr.var.bit()).collect();
        for (removed, p) in peeled.into_iter().enumerate() {
            vars.remove(p - removed);
        }
        layers.push(ExtendedMonomialLayer::new(factors).expect("nonempty, distinct"));
    }

    debug_assert!(
        current.is_constant() != Some(false),
        "a non-zero function cannot peel to a zero core"
    );
    if current.is_constant() == Some(true) && layers.len() >= 2 {
        debug_assert!(
            layers.last().map(ExtendedMonomialLayer::size) >= Some(2),
            "a singleton innermost layer over a constant core is absorbed above"
        );
    }

    let fictitious = fictitious_of(arity, &layers, &current, &vars);
    LayerDecomposition {
        arity,
        layers,
        b,
        core: current,
        core_vars: vars,
        fictitious,
        is_constant: false,
    }
}

/// Evaluates the layered form back into a truth table over the full arity.
///
/// Inverse of [`standard_monomial_form`] on decompositions satisfying the
/// form's invariants.
pub fn reconstruct(d: &LayerDecomposition) -> Result<TruthTable> {
    // Revalidate the partition so hand-built inputs cannot alias variables.
    let checked = LayerDecomposition::from_parts(
        d.arity,
        d.layers.clone(),
        d.b,
        d.core.clone(),
        d.core_vars.clone(),
    )?;

    // Spread the core over the ambient variables.
    let core_bits: Vec<usize> = checked.core_vars.iter().map(|v| v.bit()).collect();
    let mut acc = TruthTable::from_point_fn(checked.arity, |m| {
        let mut local = 0u64;
        for (j, &p) in core_bits.iter().enumerate() {
            local |= (m >> p & 1) << j;
        }
        checked.core.bit(local as usize)
    });

    for (i, layer) in checked.layers.iter().enumerate().rev() {
        if i + 1 < checked.layer_count() {
            acc = acc.complement();
        }
        acc = acc.and(&layer.table(checked.arity)?);
    }
    Ok(acc.xor_constant(checked.b))
}

/// Canalizing depth of `t`: the number of variables peeled by the layered
/// form. Zero for non-canalizing functions and constants.
pub fn canalizing_depth(t: &TruthTable) -> usize {
    standard_monomial_form(t).depth()
}

/// The core function `f_C`, if `t` has one. See
/// [`LayerDecomposition::core_function`] for the local-variable convention.
pub fn core_function(t: &TruthTable) -> Option<TruthTable> {
    standard_monomial_form(t).core_function()
}

/// The peel steps of a decomposition in layer order, ascending variable
/// within each layer. The output of every step in layer `i` (1-based) is
/// `b` for odd layers and its complement for even ones.
pub fn peel_sequence(d: &LayerDecomposition) -> Vec<PeelStep> {
    let mut steps = Vec::with_capacity(d.depth());
    for (i, layer) in d.layers().iter().enumerate() {
        let output = d.b() ^ (i % 2 == 1);
        for &(var, input) in layer.factors() {
            steps.push(PeelStep { var, input, output });
        }
    }
    steps
}

/// Whether `t` admits at least `k` peel steps.
pub fn is_k_canalizing(t: &TruthTable, k: usize) -> Result<bool> {
    if k > t.arity() {
        return Err(Error::DepthOutOfRange { depth: k, arity: t.arity() });
    }
    Ok(canalizing_depth(t) >= k)
}

/// Whether every variable of `t` can be peeled: depth equals arity.
pub fn is_nested_canalizing(t: &TruthTable) -> bool {
    let d = standard_monomial_form(t);
    !d.is_constant() && d.depth() == t.arity()
}

/// Number of variable orderings that realize the peel at full depth:
/// variables permute freely exactly within their layer, so the count is
/// the product of the factorials of the layer sizes.
pub fn ordering_count(d: &LayerDecomposition) -> BigUint {
    let mut acc = BigUint::one();
    for layer in d.layers() {
        for j in 2..=layer.size() {
            acc *= BigUint::from(j);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anf::AnfPolynomial;

    fn v(i: usize) -> VarIndex {
        VarIndex::new(i)
    }

    fn poly(arity: usize, monos: &[&[usize]]) -> TruthTable {
        AnfPolynomial::from_monomials(
            arity,
            monos.iter().map(|m| m.iter().map(|&i| v(i)).collect::<Vec<_>>()),
        )
        .unwrap()
        .to_truth_table()
    }

    /// xy(z+w) on four variables.
    fn and_of_xor() -> TruthTable {
        poly(4, &[&[1, 2, 3], &[1, 2, 4]])
    }

    /// x1*!x2*(x3*x4*(x5+x6+x7+1)+1) from the seven-variable worked case.
    fn seven_var() -> TruthTable {
        // Expand by hand: x1(x2+1)(x3x4(x5+x6+x7+1)+1).
        let x1 = TruthTable::variable(7, v(1)).unwrap();
        let not_x2 = TruthTable::variable(7, v(2)).unwrap().complement();
        let inner = poly(7, &[&[5], &[6], &[7], &[]]);
        let x3x4 = TruthTable::variable(7, v(3))
            .unwrap()
            .and(&TruthTable::variable(7, v(4)).unwrap());
        let t = x3x4.and(&inner).complement();
        x1.and(&not_x2).and(&t)
    }

    #[test]
    fn canalizing_variables_of_and_of_xor() {
        let triples = canalizing_variables(&and_of_xor());
        assert_eq!(
            triples,
            vec![
                CanalizingTriple { var: v(1), input: false, output: false },
                CanalizingTriple { var: v(2), input: false, output: false },
            ]
        );
    }

    #[test]
    fn xor_is_not_canalizing() {
        let t = poly(2, &[&[1], &[2]]);
        assert!(canalizing_variables(&t).is_empty());
        assert_eq!(canalizing_depth(&t), 0);
    }

    #[test]
    fn constants_are_not_canalizing() {
        for value in [false, true] {
            let t = TruthTable::constant(3, value);
            assert!(canalizing_variables(&t).is_empty());
            let d = standard_monomial_form(&t);
            assert!(d.is_constant());
            assert_eq!(d.depth(), 0);
            assert!(!d.b());
            assert_eq!(d.core(), &t);
            assert_eq!(d.fictitious().len(), 3);
            assert!(d.core_function().is_none());
        }
    }

    #[test]
    fn single_affine_reports_output_zero() {
        // x1 embedded in two variables, and its complement.
        for c in [false, true] {
            let t = TruthTable::variable(2, v(1)).unwrap().xor_constant(c);
            let triples = canalizing_variables(&t);
            assert_eq!(
                triples,
                vec![CanalizingTriple { var: v(1), input: c, output: false }]
            );
            let d = standard_monomial_form(&t);
            assert_eq!(d.layer_count(), 1);
            assert_eq!(d.layers()[0].factors(), &[(v(1), c)]);
            assert!(!d.b());
            assert_eq!(d.core().is_constant(), Some(true));
        }
    }

    #[test]
    fn and_of_xor_decomposition() {
        let d = standard_monomial_form(&and_of_xor());
        assert_eq!(d.depth(), 2);
        assert_eq!(d.layer_count(), 1);
        assert_eq!(d.layers()[0].factors(), &[(v(1), false), (v(2), false)]);
        assert!(!d.b());
        // Core is z + w on the two remaining variables.
        assert_eq!(d.core(), &poly(2, &[&[1], &[2]]));
        assert_eq!(d.core_vars(), &[v(3), v(4)]);
        assert!(d.fictitious().is_empty());
        let fc = d.core_function().unwrap();
        assert_eq!(fc, poly(2, &[&[1], &[2]]));
        assert_eq!(ordering_count(&d), BigUint::from(2u32));
    }

    #[test]
    fn seven_var_decomposition() {
        let d = standard_monomial_form(&seven_var());
        assert_eq!(d.depth(), 4);
        assert_eq!(d.layer_count(), 2);
        assert_eq!(d.layers()[0].factors(), &[(v(1), false), (v(2), true)]);
        assert_eq!(d.layers()[1].factors(), &[(v(3), false), (v(4), false)]);
        assert!(!d.b());
        // Core polynomial x5+x6+x7+1, core function x5+x6+x7.
        assert_eq!(d.core(), &poly(3, &[&[1], &[2], &[3], &[]]));
        assert_eq!(d.core_function().unwrap(), poly(3, &[&[1], &[2], &[3]]));
        assert_eq!(d.core_vars(), &[v(5), v(6), v(7)]);
        assert_eq!(
            peel_sequence(&d),
            vec![
                PeelStep { var: v(1), input: false, output: false },
                PeelStep { var: v(2), input: true, output: false },
                PeelStep { var: v(3), input: false, output: true },
                PeelStep { var: v(4), input: false, output: true },
            ]
        );
        assert_eq!(reconstruct(&d).unwrap(), seven_var());
    }

    #[test]
    fn single_variable_function() {
        let t = TruthTable::variable(1, v(1)).unwrap();
        let d = standard_monomial_form(&t);
        assert_eq!(d.layer_count(), 1);
        assert_eq!(d.layers()[0].factors(), &[(v(1), false)]);
        assert_eq!(d.core().is_constant(), Some(true));
        assert!(!d.b());
        assert!(d.core_function().is_none());
        assert!(is_nested_canalizing(&t));
    }

    #[test]
    fn peel_of_complemented_and() {
        // x1*x2 + 1 forces output 1 when either input is 0.
        let t = poly(2, &[&[1, 2], &[]]);
        let d = standard_monomial_form(&t);
        assert_eq!(d.layers()[0].factors(), &[(v(1), false), (v(2), false)]);
        assert!(d.b());
        assert_eq!(
            peel_sequence(&d),
            vec![
                PeelStep { var: v(1), input: false, output: true },
                PeelStep { var: v(2), input: false, output: true },
            ]
        );
    }

    #[test]
    fn reconstruct_nested_example() {
        // M_1 = (x1)(x2), core 1, b = 1 gives x1*x2 + 1.
        let d = LayerDecomposition::from_parts(
            2,
            vec![ExtendedMonomialLayer::new(vec![(v(1), false), (v(2), false)]).unwrap()],
            true,
            TruthTable::constant(0, true),
            vec![],
        )
        .unwrap();
        assert_eq!(reconstruct(&d).unwrap(), poly(2, &[&[1, 2], &[]]));
    }

    #[test]
    fn reconstruct_rejects_overlap() {
        let d = LayerDecomposition::from_parts(
            2,
            vec![ExtendedMonomialLayer::new(vec![(v(1), false)]).unwrap()],
            false,
            TruthTable::constant(2, true),
            vec![v(1), v(2)],
        );
        assert!(matches!(d, Err(Error::InvalidDecomposition(_))));
    }

    #[test]
    fn reconstruct_identity_for_non_canalizing() {
        let t = poly(3, &[&[1], &[2], &[3]]);
        let d = standard_monomial_form(&t);
        assert_eq!(d.layer_count(), 0);
        assert_eq!(d.core(), &t);
        assert_eq!(reconstruct(&d).unwrap(), t);
        assert_eq!(canalizing_depth(&t), 0);
        assert_eq!(ordering_count(&d), BigUint::one());
    }

    #[test]
    fn k_canalizing_thresholds() {
        let t = poly(3, &[&[1, 2, 3]]);
        for k in 0..=3 {
            assert!(is_k_canalizing(&t, k).unwrap());
        }
        assert!(is_k_canalizing(&t, 4).is_err());
        assert!(is_nested_canalizing(&t));
        let d = standard_monomial_form(&t);
        assert_eq!(ordering_count(&d), BigUint::from(6u32));
    }

    #[test]
    fn nested_with_two_orderings() {
        // x(yz+1): depth 3, layers {x}, {y,z}.
        let x = TruthTable::variable(3, v(1)).unwrap();
        let yz1 = poly(3, &[&[2, 3], &[]]);
        let t = x.and(&yz1);
        let d = standard_monomial_form(&t);
        assert!(is_nested_canalizing(&t));
        assert_eq!(d.layer_count(), 2);
        assert_eq!(d.layers()[0].size(), 1);
        assert_eq!(d.layers()[1].size(), 2);
        assert_eq!(ordering_count(&d), BigUint::from(2u32));
    }

    #[test]
    fn xor_not_nested() {
        let t = poly(2, &[&[1], &[2]]);
        assert!(!is_nested_canalizing(&t));
    }

    #[test]
    fn core_function_absent_for_plain_and() {
        let t = poly(2, &[&[1, 2]]);
        assert!(core_function(&t).is_none());
    }

    #[test]
    fn fictitious_variables_tracked() {
        // x1*x2 embedded in three variables: x3 is fictitious.
        let t = poly(3, &[&[1, 2]]);
        let d = standard_monomial_form(&t);
        assert_eq!(d.depth(), 2);
        assert_eq!(d.fictitious(), &[v(3)]);
        assert_eq!(d.core_vars(), &[v(3)]);
        assert!(d.recessive_vars().is_empty());
    }
}
