//! Decompose-then-reconstruct must be the identity, and the layered form
//! must satisfy every structural invariant, exhaustively at small arity
//! and on random functions beyond it.

mod common;

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use canalize::{
    canalizing_variables, reconstruct, standard_monomial_form, AnfPolynomial,
    LayerDecomposition, TruthTable, VarIndex,
};
use common::{all_tables, eval_anf_at};

/// Checks every invariant of the layered form for one function.
fn check_decomposition(t: &TruthTable) -> LayerDecomposition {
    let d = standard_monomial_form(t);
    let n = t.arity();

    // The layers, core-essential variables, and fictitious set partition
    // the variables; the core holds exactly the unpeeled ones.
    let mut seen = BTreeSet::new();
    for layer in d.layers() {
        assert!(layer.size() >= 1);
        for v in layer.variables() {
            assert!(seen.insert(v.get()), "layer variables repeat in {t:?}");
        }
    }
    for &v in d.core_vars() {
        assert!(seen.insert(v.get()), "core variables overlap layers in {t:?}");
    }
    assert_eq!(seen, (1..=n).collect::<BTreeSet<_>>());
    let core_essential: BTreeSet<usize> = d
        .recessive_vars()
        .iter()
        .map(|v| v.get())
        .collect();
    let layer_vars: BTreeSet<usize> = d
        .layers()
        .iter()
        .flat_map(|l| l.variables().map(|v| v.get()))
        .collect();
    let fict: BTreeSet<usize> = d.fictitious().iter().map(|v| v.get()).collect();
    assert!(layer_vars.is_disjoint(&core_essential));
    assert!(layer_vars.is_disjoint(&fict));
    assert!(core_essential.is_disjoint(&fict));
    assert_eq!(
        layer_vars.len() + core_essential.len() + fict.len(),
        n,
        "partition misses variables for {t:?}"
    );

    // The core never has canalizing variables, and is non-zero whenever
    // the function is.
    assert!(canalizing_variables(d.core()).is_empty());
    if t.is_constant().is_none() {
        assert_ne!(d.core().is_constant(), Some(false), "zero core for {t:?}");
    } else {
        assert!(d.is_constant());
        assert_eq!(d.layer_count(), 0);
        assert!(!d.b());
        assert_eq!(d.core(), t);
    }

    // Exceptional cases of the layered form.
    if d.core().is_constant() == Some(true) {
        let r = d.layer_count();
        if r >= 2 {
            assert!(d.layers()[r - 1].size() >= 2, "case (i) violated for {t:?}");
        }
        if r == 1 && d.layers()[0].size() == 1 {
            assert!(!d.b(), "case (ii) violated for {t:?}");
        }
    }

    // Non-canalizing functions keep themselves as core with b = 0.
    if d.layer_count() == 0 {
        assert!(!d.b());
        assert_eq!(d.core(), t);
    }

    // Round trip.
    let back = reconstruct(&d).expect("engine output is valid");
    assert_eq!(&back, t, "reconstruct(decompose(f)) != f");
    assert_eq!(standard_monomial_form(&back), d);
    d
}

#[test]
fn exhaustive_round_trip_up_to_arity_4() {
    for n in 0..=4 {
        for t in all_tables(n) {
            check_decomposition(&t);
        }
    }
}

#[test]
fn random_round_trip_arities_5_to_10() {
    let mut rng = ChaCha12Rng::seed_from_u64(0xC0FFEE);
    for n in 5..=10 {
        for _ in 0..10_000 {
            let t = TruthTable::from_point_fn(n, |_| rng.gen());
            let d = standard_monomial_form(&t);
            assert_eq!(reconstruct(&d).unwrap(), t, "round trip failed at n={n}");
        }
    }
}

#[test]
fn anf_round_trip_exhaustive_small() {
    for n in 0..=4 {
        for t in all_tables(n) {
            let p = AnfPolynomial::from_truth_table(&t);
            assert_eq!(p.to_truth_table(), t);
        }
    }
}

#[test]
fn evaluate_agrees_with_direct_anf_evaluation() {
    for n in 0..=4 {
        for t in all_tables(n) {
            let p = AnfPolynomial::from_truth_table(&t);
            for m in 0..t.num_points() {
                assert_eq!(t.evaluate(m).unwrap(), eval_anf_at(&p, m));
            }
        }
    }
}

#[test]
fn essential_set_empty_iff_constant() {
    for n in 0..=4 {
        for t in all_tables(n) {
            assert_eq!(t.essential_set().is_empty(), t.is_constant().is_some());
        }
    }
}

#[test]
fn restriction_commutes_small() {
    // restrict(restrict(t, v, a), w', b) with reindexed w equals the
    // opposite order, exhaustively at n = 3.
    for t in all_tables(3) {
        for v in 1..=3usize {
            for w in (v + 1)..=3usize {
                for (a, b) in [(false, false), (false, true), (true, false), (true, true)] {
                    let va = VarIndex::new(v);
                    let wa = VarIndex::new(w);
                    // Removing v first shifts w down by one.
                    let first = t
                        .restrict(va, a)
                        .unwrap()
                        .restrict(VarIndex::new(w - 1), b)
                        .unwrap();
                    let second = t.restrict(wa, b).unwrap().restrict(va, a).unwrap();
                    assert_eq!(first, second);
                }
            }
        }
    }
}
