//! The ordering count Π k_i! against a brute-force oracle that tries to
//! realize every permutation of the peeled variables as an actual chain
//! of one-variable peels.

mod common;

use canalize::{
    canalizing_variables, ordering_count, standard_monomial_form, AnfPolynomial,
    TruthTable, VarIndex,
};
use common::all_tables;
use num_bigint::BigUint;

/// Whether the peel chain works in exactly this variable order: every
/// step must find its variable canalizing in the current remainder.
fn realizable(f: &TruthTable, order: &[usize]) -> bool {
    let mut g = f.clone();
    // Local position of each surviving original variable.
    let mut alive: Vec<usize> = (1..=f.arity()).collect();
    for &orig in order {
        let Some(pos) = alive.iter().position(|&o| o == orig) else {
            return false;
        };
        let local = VarIndex::new(pos + 1);
        let triples = canalizing_variables(&g);
        let Some(step) = triples.iter().find(|t| t.var == local) else {
            return false;
        };
        g = g.restrict(step.var, !step.input).expect("local var in range");
        alive.remove(pos);
    }
    true
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &head) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn oracle_count(f: &TruthTable) -> usize {
    let d = standard_monomial_form(f);
    let peeled: Vec<usize> = d
        .layers()
        .iter()
        .flat_map(|l| l.variables().map(|v| v.get()))
        .collect();
    permutations(&peeled)
        .iter()
        .filter(|order| realizable(f, order))
        .count()
}

fn formula_count(f: &TruthTable) -> BigUint {
    ordering_count(&standard_monomial_form(f))
}

fn table_of(text: &str) -> TruthTable {
    let (p, _) = canalize::parse_expression(text, None).unwrap();
    p.to_truth_table()
}

#[test]
fn oracle_agrees_exhaustively_up_to_arity_3() {
    for n in 0..=3 {
        for t in all_tables(n) {
            assert_eq!(
                BigUint::from(oracle_count(&t)),
                formula_count(&t),
                "ordering count mismatch for {t:?}"
            );
        }
    }
}

#[test]
fn triple_and_admits_all_six_orders() {
    let t = table_of("x*y*z");
    assert_eq!(formula_count(&t), BigUint::from(6u32));
    assert_eq!(oracle_count(&t), 6);
}

#[test]
fn guarded_product_admits_two_orders() {
    let t = table_of("x*(y*z + 1)");
    assert_eq!(formula_count(&t), BigUint::from(2u32));
    assert_eq!(oracle_count(&t), 2);
}

#[test]
fn depth_two_product_admits_two_orders() {
    let t = table_of("x*y*(z+w)");
    assert_eq!(formula_count(&t), BigUint::from(2u32));
    assert_eq!(oracle_count(&t), 2);
}

#[test]
fn non_canalizing_admits_exactly_the_empty_order() {
    let p = AnfPolynomial::from_monomials(
        3,
        [[VarIndex::new(1)], [VarIndex::new(2)], [VarIndex::new(3)]],
    )
    .unwrap();
    let t = p.to_truth_table();
    assert_eq!(formula_count(&t), BigUint::from(1u32));
    assert_eq!(oracle_count(&t), 1);
}
