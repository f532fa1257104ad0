//! Algebraic normal form: the unique square-free polynomial over F2
//! representing a Boolean function.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::table::{TruthTable, VarIndex};

/// A Boolean function as an XOR of square-free monomials.
///
/// Each monomial is a bitmask over variables (bit `i-1` set means `x_i`
/// is a factor); the empty mask is the constant term 1. The zero
/// polynomial has no terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnfPolynomial {
    arity: usize,
    terms: BTreeSet<u64>,
}

impl AnfPolynomial {
    /// Builds a polynomial from monomials given as sets of variable
    /// indices. Repeated monomials cancel in pairs, as addition over F2
    /// dictates.
    pub fn from_monomials<I, M>(arity: usize, monomials: I) -> Result<Self>
    where
        I: IntoIterator<Item = M>,
        M: IntoIterator<Item = VarIndex>,
    {
        if arity > 64 {
            return Err(Error::UnsupportedArity {
                arity,
                detail: "monomial masks hold at most 64 variables",
            });
        }
        let mut terms = BTreeSet::new();
        for mono in monomials {
            let mut mask = 0u64;
            for v in mono {
                if v.get() > arity {
                    return Err(Error::VariableOutOfRange { var: v.get(), arity });
                }
                mask |= 1 << v.bit();
            }
            if !terms.insert(mask) {
                terms.remove(&mask);
            }
        }
        Ok(AnfPolynomial { arity, terms })
    }

    /// The unique ANF of a truth table, via the fast Moebius transform.
    pub fn from_truth_table(table: &TruthTable) -> Self {
        let mut scratch = table.clone();
        scratch.subset_xor_transform();
        let mut terms = BTreeSet::new();
        for (j, &w) in scratch.words().iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let b = bits.trailing_zeros() as u64;
                terms.insert((j as u64) << 6 | b);
                bits &= bits - 1;
            }
        }
        AnfPolynomial { arity: table.arity(), terms }
    }

    /// The value vector of this polynomial (inverse Moebius transform).
    pub fn to_truth_table(&self) -> TruthTable {
        let mut t = TruthTable::constant(self.arity, false);
        for &mask in &self.terms {
            t.words_mut()[(mask >> 6) as usize] |= 1u64 << (mask & 63);
        }
        t.subset_xor_transform();
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Largest number of variables in a monomial; 0 for constants.
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|m| m.count_ones()).max().unwrap_or(0)
    }

    /// Monomials as ascending variable-index lists, in canonical order
    /// (degree descending, then lexicographic on the index sequences).
    pub fn monomials(&self) -> Vec<Vec<VarIndex>> {
        let mut monos: Vec<Vec<VarIndex>> = self
            .terms
            .iter()
            .map(|&mask| {
                (0..64)
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| VarIndex::new(b + 1))
                    .collect()
            })
            .collect();
        monos.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        monos
    }

    /// Monomials as raw variable bitmasks (bit `i-1` set means `x_i`),
    /// ascending.
    pub fn term_masks(&self) -> impl Iterator<Item = u64> + '_ {
        self.terms.iter().copied()
    }

    /// Canonical text form: monomials sorted by degree descending then
    /// lexicographically, variables joined by `*`, terms by ` + `, and
    /// `0`/`1` for constants. Parsing the result reproduces the polynomial.
    pub fn render(&self, names: &[String]) -> String {
        assert!(names.len() >= self.arity, "name list shorter than arity");
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .monomials()
            .iter()
            .map(|mono| {
                if mono.is_empty() {
                    "1".into()
                } else {
                    mono.iter()
                        .map(|v| names[v.bit()].as_str())
                        .collect::<Vec<_>>()
                        .join("*")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for AnfPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.arity).map(|i| format!("x{i}")).collect();
        f.write_str(&self.render(&names))
    }
}
