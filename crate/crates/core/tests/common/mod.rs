//! Helpers shared by the integration suites.

use std::collections::BTreeSet;

use canalize::{standard_monomial_form, AnfPolynomial, TruthTable, VarIndex};

/// Every truth table on `n <= 4` variables, in table-id order.
pub fn all_tables(n: usize) -> impl Iterator<Item = TruthTable> {
    assert!(n <= 4, "exhaustive sweeps are meant for n <= 4");
    (0..(1u64 << (1usize << n)))
        .map(move |bits| TruthTable::from_bits_u64(n, bits).expect("id in range"))
}

/// ANF monomial masks of `t` with each local variable `j` renamed through
/// `map`, so functions over different restrictions compare in one space.
pub fn lifted_anf_masks(t: &TruthTable, map: &[VarIndex]) -> BTreeSet<u64> {
    AnfPolynomial::from_truth_table(t)
        .term_masks()
        .map(|mask| {
            let mut lifted = 0u64;
            for (j, v) in map.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    lifted |= 1 << (v.get() - 1);
                }
            }
            lifted
        })
        .collect()
}

/// The core function of `t` in original-variable mask space, if it exists.
pub fn core_masks(t: &TruthTable) -> Option<BTreeSet<u64>> {
    let d = standard_monomial_form(t);
    d.core_function().map(|fc| lifted_anf_masks(&fc, d.core_vars()))
}

/// Direct evaluation of a polynomial at one point: a monomial contributes
/// when all of its variables are set. Kept separate from the transform
/// path on purpose.
pub fn eval_anf_at(p: &AnfPolynomial, point: u64) -> bool {
    p.term_masks().filter(|&m| m & point == m).count() % 2 == 1
}
