//! Exact counts of Boolean functions by canalizing depth, and the
//! exhaustive census that verifies them.
//!
//! All arithmetic is arbitrary precision: the counts involve towers like
//! 2^(2^n) that overflow any fixed-width integer almost immediately.

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::canalization::standard_monomial_form;
use crate::error::{Error, Result};
use crate::table::TruthTable;

/// Exact nonnegative count.
pub type BigCount = BigUint;

/// An ordered sequence of positive integers with a fixed sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn sum(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Multinomial coefficient `sum! / (k_1! ... k_r!)`: the number of ways
    /// to assign `sum` labelled items to the parts.
    pub fn multinomial(&self) -> BigCount {
        let mut acc = BigUint::one();
        let mut total = 0usize;
        for &p in &self.parts {
            total += p;
            acc *= binomial(BigUint::from(total), BigUint::from(p));
        }
        acc
    }
}

/// Iterates every composition of `k` whose last part is at least
/// `min_last`, ordered by part count and lexicographically within it.
/// Empty for `k = 0`.
pub fn compositions(k: usize, min_last: usize) -> Compositions {
    assert!(
        min_last == 1 || min_last == 2,
        "composition constraints are on the final part being >= 1 or >= 2"
    );
    Compositions { k, min_last, r: 0, current: Vec::new() }
}

pub struct Compositions {
    k: usize,
    min_last: usize,
    // Parts of the composition yielded last; empty before the first.
    current: Vec<usize>,
    r: usize,
}

impl Compositions {
    // First composition of k into exactly r parts, lexicographically.
    fn start_row(&mut self) -> bool {
        if self.r > self.k {
            return false;
        }
        self.current.clear();
        self.current.resize(self.r - 1, 1);
        self.current.push(self.k - (self.r - 1));
        true
    }

    // Lexicographic successor with the same part count; false at row end.
    fn step_within_row(&mut self) -> bool {
        let r = self.r;
        if r <= 1 {
            return false;
        }
        // Grow the rightmost part whose suffix still has slack above the
        // one unit each position must keep, then reset everything after it
        // to the minimal tail.
        let mut suffix = self.current[r - 1]; // suffix slack plus one
        for i in (0..r - 1).rev() {
            if suffix > 1 {
                self.current[i] += 1;
                for part in &mut self.current[i + 1..r - 1] {
                    *part = 1;
                }
                self.current[r - 1] = suffix - 1;
                return true;
            }
            suffix += self.current[i] - 1;
        }
        false
    }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        loop {
            let advanced = if self.r == 0 || !self.step_within_row() {
                self.r += 1;
                self.start_row()
            } else {
                true
            };
            if !advanced {
                return None;
            }
            if self.current[self.r - 1] >= self.min_last {
                return Some(Composition { parts: self.current.clone() });
            }
        }
    }
}

/// Sum of multinomial coefficients over [`compositions`]`(k, min_last)`.
/// With `min_last = 1` this is the ordered-set-partition (Fubini) count;
/// zero for `k = 0`.
pub fn weighted_composition_sum(k: usize, min_last: usize) -> BigCount {
    compositions(k, min_last).map(|c| c.multinomial()).sum()
}

fn two_pow_two_pow(e: usize) -> BigUint {
    BigUint::one() << (1usize << e)
}

/// Number of functions on `2^n` points: 2^(2^n).
pub fn total_functions(n: usize) -> BigCount {
    two_pow_two_pow(n)
}

/// Number of canalizing functions on `n` variables, by inclusion-exclusion
/// over the possible canalizing variable sets:
///
/// ```text
/// C_n = 2((-1)^n - n - 1) + sum_{k=1}^{n} (-1)^{k+1} C(n,k) 2^{k+1} 2^(2^(n-k))
/// ```
pub fn count_canalizing(n: usize) -> BigCount {
    let sign = |even: bool| if even { BigInt::one() } else { -BigInt::one() };
    let mut acc: BigInt = BigInt::from(2) * (sign(n % 2 == 0) - BigInt::from(n) - 1);
    for k in 1..=n {
        let term = BigInt::from(binomial(BigUint::from(n), BigUint::from(k)))
            * (BigInt::one() << (k + 1))
            * BigInt::from(two_pow_two_pow(n - k));
        acc += sign(k % 2 == 1) * term;
    }
    acc.to_biguint().expect("canalizing count is nonnegative")
}

/// Number of non-constant non-canalizing functions on `n` variables:
/// `B*(n,0) = 2^(2^n) - C_n - 2`.
pub fn count_core(n: usize) -> BigCount {
    total_functions(n) - count_canalizing(n) - 2u32
}

/// Number of nested canalizing functions on `n >= 1` variables:
/// `B(n,n) = 2^(n+1) * sum multinomial(n; k_1..k_r)` over compositions
/// with `k_r >= 2`, with the single-variable case counting `x` and its
/// complement.
pub fn count_ncf(n: usize) -> Result<BigCount> {
    if n == 0 {
        return Err(Error::UnsupportedArity {
            arity: 0,
            detail: "nested canalizing functions need at least one variable",
        });
    }
    if n == 1 {
        return Ok(BigUint::from(2u32));
    }
    Ok(weighted_composition_sum(n, 2) << (n + 1))
}

/// Number of functions on `n` variables with canalizing depth exactly `k`:
///
/// ```text
/// B(n,k) = C(n,k) [ B(k,k) + B*(n-k,0) 2^{k+1} sum multinomial(k; ...) ]
/// ```
///
/// for `k >= 1`, and `B(n,0) = 2^(2^n) - C_n` (constants included).
pub fn count_depth(n: usize, k: usize) -> Result<BigCount> {
    if k > n {
        return Err(Error::DepthOutOfRange { depth: k, arity: n });
    }
    if k == 0 {
        return Ok(total_functions(n) - count_canalizing(n));
    }
    let ncf_part = count_ncf(k)?;
    let layered_part =
        count_core(n - k) * (weighted_composition_sum(k, 1) << (k + 1));
    Ok(binomial(BigUint::from(n), BigUint::from(k)) * (ncf_part + layered_part))
}

/// Number of functions with canalizing depth at least `k0`:
/// the sum of [`count_depth`] over `k0..=n`.
pub fn count_k_canalizing(n: usize, k0: usize) -> Result<BigCount> {
    if k0 > n {
        return Err(Error::DepthOutOfRange { depth: k0, arity: n });
    }
    let mut acc = BigUint::zero();
    for k in k0..=n {
        acc += count_depth(n, k)?;
    }
    Ok(acc)
}

/// The depth stratification of all functions on `n` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratificationCount {
    pub n: usize,
    /// `by_depth[k]` counts the functions of depth exactly `k`; the two
    /// constants sit in depth 0.
    pub by_depth: Vec<BigCount>,
    /// Functions of depth at least 1.
    pub canalizing_total: BigCount,
    /// Non-constant non-canalizing functions, `B*(n,0)`; two fewer than
    /// `by_depth[0]`.
    pub core_total: BigCount,
}

impl StratificationCount {
    pub fn total(&self) -> BigCount {
        self.by_depth.iter().sum()
    }
}

/// Fills the stratification from the closed formulas.
pub fn stratification_table(n: usize) -> StratificationCount {
    let by_depth: Vec<BigUint> = (0..=n)
        .map(|k| count_depth(n, k).expect("k in range"))
        .collect();
    StratificationCount {
        n,
        by_depth,
        canalizing_total: count_canalizing(n),
        core_total: count_core(n),
    }
}

/// Exhaustive census: decomposes every one of the 2^(2^n) truth tables
/// and tallies depths. Supported for `1 <= n <= 5`; n = 5 walks 2^32
/// functions and is only practical as a long-running batch.
///
/// `jobs` workers receive disjoint contiguous ranges of table ids and
/// produce local histograms; the merge is a componentwise sum, so the
/// result does not depend on the worker count.
pub fn census(n: usize, jobs: usize) -> Result<StratificationCount> {
    if n == 0 || n > 5 {
        return Err(Error::UnsupportedArity {
            arity: n,
            detail: "census walks all 2^(2^n) tables; supported for 1..=5",
        });
    }
    let jobs = jobs.max(1);
    let total: u64 = 1u64 << (1u64 << n);
    let hist = if jobs == 1 {
        census_range(n, 0, total)
    } else {
        let chunk = total.div_ceil(jobs as u64);
        let mut partials: Vec<Vec<u64>> = Vec::with_capacity(jobs);
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs as u64)
                .map(|w| {
                    let lo = (w * chunk).min(total);
                    let hi = ((w + 1) * chunk).min(total);
                    scope.spawn(move || census_range(n, lo, hi))
                })
                .collect();
            for h in handles {
                partials.push(h.join().expect("census worker panicked"));
            }
        });
        let mut acc = vec![0u64; n + 1];
        for part in partials {
            for (a, p) in acc.iter_mut().zip(part) {
                *a += p;
            }
        }
        acc
    };

    let by_depth: Vec<BigUint> = hist.iter().map(|&c| BigUint::from(c)).collect();
    let canalizing_total = by_depth[1..].iter().sum();
    let core_total = by_depth[0].clone() - 2u32;
    Ok(StratificationCount { n, by_depth, canalizing_total, core_total })
}

fn census_range(n: usize, lo: u64, hi: u64) -> Vec<u64> {
    let mut hist = vec![0u64; n + 1];
    for id in lo..hi {
        let t = TruthTable::from_bits_u64(n, id).expect("id below 2^(2^n)");
        hist[standard_monomial_form(&t).depth()] += 1;
    }
    hist
}
