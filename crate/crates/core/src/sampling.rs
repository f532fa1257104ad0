//! Seeded uniform samplers over depth strata.
//!
//! A function of depth `k` is assembled exactly the way the stratum is
//! counted: choose the peeled variables, decide between a constant-1 core
//! (a nested canalizing function on the peeled variables) and a
//! non-constant core with exact big-integer case weights, then draw the
//! layer composition (multinomially weighted), the literal signs, `b`,
//! and the core. Every choice uses integer draws below exact counts, so
//! uniformity over the stratum holds by construction, with no floating
//! point involved.
//!
//! Sampling "depth at least k" is not a separate primitive: mix the
//! strata `k..=n` with [`count_depth`] weights and delegate each draw to
//! a [`StratumSampler`] for the drawn stratum.

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::canalization::{
    canalizing_variables, reconstruct, ExtendedMonomialLayer, LayerDecomposition,
};
use crate::enumeration::{count_core, count_depth, count_ncf, weighted_composition_sum};
use crate::error::{Error, Result};
use crate::table::{TruthTable, VarIndex};

/// Identifier of the generator behind every sampler in this module,
/// suitable for reports: ChaCha with 12 rounds, seeded via `seed_from_u64`.
pub const RNG_ALGORITHM: &str = "chacha12";

/// Target stratum and seed for a [`StratumSampler`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplerConfig {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
}

/// Draws functions uniformly from the stratum of `n`-variable functions
/// with canalizing depth exactly `k`. Owns its generator state; clone
/// configs with distinct seeds for concurrent streams.
pub struct StratumSampler {
    n: usize,
    k: usize,
    rng: ChaCha12Rng,
    ncf_weight: BigUint,
    total_weight: BigUint,
    // Completion weights for composition draws, indexed by remaining sum.
    open_tail: Vec<BigUint>,
    closed_tail: Vec<BigUint>,
}

impl StratumSampler {
    pub fn new(cfg: SamplerConfig) -> Result<Self> {
        let SamplerConfig { n, k, seed } = cfg;
        if k > n {
            return Err(Error::DepthOutOfRange { depth: k, arity: n });
        }
        if count_depth(n, k)?.is_zero() {
            return Err(Error::EmptySupport(format!(
                "no functions of depth {k} on {n} variables"
            )));
        }
        let (ncf_weight, total_weight) = if k == 0 {
            (BigUint::zero(), BigUint::zero())
        } else {
            let ncf = count_ncf(k)?;
            let layered = count_core(n - k) * (weighted_composition_sum(k, 1) << (k + 1));
            (ncf.clone(), ncf + layered)
        };
        Ok(StratumSampler {
            n,
            k,
            rng: ChaCha12Rng::seed_from_u64(seed),
            ncf_weight,
            total_weight,
            open_tail: completion_weights(k, 1),
            closed_tail: completion_weights(k, 2),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// One uniform draw from the stratum.
    pub fn draw(&mut self) -> TruthTable {
        let (n, k) = (self.n, self.k);
        if k == 0 {
            return sample_noncanalizing(n, true, &mut self.rng)
                .expect("the depth-0 stratum contains the constants");
        }
        // One shuffle provides both the uniform k-subset and the uniform
        // assignment of its members to layer slots.
        let order = shuffled_vars(n, &mut self.rng);
        let chosen = &order[..k];
        let mut rest: Vec<VarIndex> = order[k..].to_vec();
        rest.sort();

        let case = uniform_below(&mut self.rng, &self.total_weight);
        if case < self.ncf_weight {
            // Constant-1 core: a nested canalizing function on the chosen
            // variables; the rest stay fictitious.
            let (parts, forced_b) = if k == 1 {
                (vec![1], Some(false))
            } else {
                (draw_composition(k, 2, &self.closed_tail, &mut self.rng), None)
            };
            let layers = layers_from(chosen, &parts, &mut self.rng);
            let b = forced_b.unwrap_or_else(|| self.rng.gen());
            assemble(n, layers, b, TruthTable::constant(n - k, true), rest)
        } else {
            let parts = draw_composition(k, 1, &self.open_tail, &mut self.rng);
            let layers = layers_from(chosen, &parts, &mut self.rng);
            let b = self.rng.gen();
            let core = sample_noncanalizing(n - k, false, &mut self.rng)
                .expect("this case has zero weight when no core exists");
            assemble(n, layers, b, core, rest)
        }
    }
}

/// Uniform draw over the nested canalizing functions on `n >= 1` variables.
pub fn sample_ncf<R: Rng>(n: usize, rng: &mut R) -> Result<TruthTable> {
    if n == 0 {
        return Err(Error::UnsupportedArity {
            arity: 0,
            detail: "nested canalizing functions need at least one variable",
        });
    }
    let order = shuffled_vars(n, rng);
    let (parts, forced_b) = if n == 1 {
        (vec![1], Some(false))
    } else {
        let tail = completion_weights(n, 2);
        (draw_composition(n, 2, &tail, rng), None)
    };
    let layers = layers_from(&order, &parts, rng);
    let b = forced_b.unwrap_or_else(|| rng.gen());
    Ok(assemble(n, layers, b, TruthTable::constant(0, true), Vec::new()))
}

/// Uniform draw over non-canalizing functions by rejection, optionally
/// excluding the two constants. Acceptance is constant-bounded: the
/// canalizing fraction at `n - k = 2` is 14/16 and vanishes as the arity
/// grows, so no adaptive scheme is needed.
pub fn sample_noncanalizing<R: Rng>(
    n: usize,
    allow_constant: bool,
    rng: &mut R,
) -> Result<TruthTable> {
    if !allow_constant && n < 2 {
        return Err(Error::EmptySupport(format!(
            "every non-constant function on {n} variable(s) is canalizing"
        )));
    }
    let num_words = if n <= 6 { 1 } else { 1usize << (n - 6) };
    loop {
        let words: Vec<u64> = (0..num_words).map(|_| rng.next_u64()).collect();
        let t = TruthTable::from_raw_words(n, words);
        if !allow_constant && t.is_constant().is_some() {
            continue;
        }
        if canalizing_variables(&t).is_empty() {
            return Ok(t);
        }
    }
}

fn shuffled_vars<R: Rng>(n: usize, rng: &mut R) -> Vec<VarIndex> {
    let mut vars: Vec<VarIndex> = (1..=n).map(VarIndex::new).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        vars.swap(i, j);
    }
    vars
}

/// Uniform integer in `0..bound` by masked rejection on `bound.bits()`
/// random bits.
fn uniform_below<R: Rng>(rng: &mut R, bound: &BigUint) -> BigUint {
    assert!(!bound.is_zero(), "uniform_below needs a positive bound");
    let bits = bound.bits();
    let num_bytes = bits.div_ceil(8) as usize;
    let excess = (num_bytes as u64) * 8 - bits;
    loop {
        let mut bytes = vec![0u8; num_bytes];
        rng.fill_bytes(&mut bytes);
        bytes[num_bytes - 1] &= 0xFF >> excess;
        let x = BigUint::from_bytes_le(&bytes);
        if &x < bound {
            return x;
        }
    }
}

/// Number of weighted ways to extend a partial composition when `rem`
/// units remain, under the final-part constraint. Entry 0 is the empty
/// completion.
fn completion_weights(k: usize, min_last: usize) -> Vec<BigUint> {
    let mut w = vec![BigUint::zero(); k + 1];
    w[0] = BigUint::one();
    for m in 1..=k {
        for j in 1..=m {
            if m - j > 0 || j >= min_last {
                let ways = binomial(BigUint::from(m), BigUint::from(j)) * &w[m - j];
                w[m] += ways;
            }
        }
    }
    w
}

/// Draws a composition of `k` with multinomial weight, one part at a time:
/// the chance of a first part `j` is proportional to `C(rem, j)` times the
/// weighted completions of what remains.
fn draw_composition<R: Rng>(
    k: usize,
    min_last: usize,
    tail: &[BigUint],
    rng: &mut R,
) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut rem = k;
    while rem > 0 {
        let mut u = uniform_below(rng, &tail[rem]);
        let mut taken = 0;
        for j in 1..=rem {
            if rem - j == 0 && j < min_last {
                continue;
            }
            let w = binomial(BigUint::from(rem), BigUint::from(j)) * &tail[rem - j];
            if u < w {
                taken = j;
                break;
            }
            u -= w;
        }
        debug_assert!(taken > 0, "completion weights cover the total");
        parts.push(taken);
        rem -= taken;
    }
    parts
}

fn layers_from<R: Rng>(
    order: &[VarIndex],
    parts: &[usize],
    rng: &mut R,
) -> Vec<ExtendedMonomialLayer> {
    let mut layers = Vec::with_capacity(parts.len());
    let mut at = 0;
    for &p in parts {
        let factors: Vec<(VarIndex, bool)> =
            order[at..at + p].iter().map(|&v| (v, rng.gen())).collect();
        at += p;
        layers.push(ExtendedMonomialLayer::new(factors).expect("distinct variables"));
    }
    layers
}

fn assemble(
    n: usize,
    layers: Vec<ExtendedMonomialLayer>,
    b: bool,
    core: TruthTable,
    core_vars: Vec<VarIndex>,
) -> TruthTable {
    let d = LayerDecomposition::from_parts(n, layers, b, core, core_vars)
        .expect("sampler construction partitions the variables");
    reconstruct(&d).expect("validated decomposition")
}
