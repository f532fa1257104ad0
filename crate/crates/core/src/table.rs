//! Truth-table representation of Boolean functions.
//!
//! A function `f: F_2^n -> F_2` is stored as the complete vector of its
//! 2^n output bits, packed into `u64` words. Point encoding: for an input
//! point `m` in `0..2^n`, the value of variable `x_i` is bit `i-1` of `m`,
//! so `x_1` is the least-significant selector bit and toggles fastest.

use std::fmt;

use crate::error::{Error, Result};

/// 1-based index of a variable `x_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarIndex(usize);

impl VarIndex {
    /// Wraps a 1-based index. Panics on 0.
    pub fn new(index: usize) -> Self {
        assert!(index >= 1, "variable indices are 1-based");
        VarIndex(index)
    }

    /// The 1-based index.
    pub fn get(self) -> usize {
        self.0
    }

    /// Bit position of this variable inside a point (`index - 1`).
    pub(crate) fn bit(self) -> usize {
        self.0 - 1
    }
}

impl fmt::Display for VarIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

// Bit pattern of `x_{p+1}` inside one 64-bit word, for p < 6.
const VAR_PATTERN: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Complete value vector of an `n`-variable Boolean function.
///
/// Padding bits above 2^n in the last word are always zero, so tables
/// compare equal iff the functions are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    arity: usize,
    words: Vec<u64>,
}

fn words_len(arity: usize) -> usize {
    if arity <= 6 {
        1
    } else {
        1 << (arity - 6)
    }
}

// Mask of the bits actually used in a single-word table.
fn word_mask(arity: usize) -> u64 {
    debug_assert!(arity <= 6);
    if arity == 6 {
        u64::MAX
    } else {
        (1u64 << (1 << arity)) - 1
    }
}

impl TruthTable {
    /// The constant function with the given output.
    pub fn constant(arity: usize, value: bool) -> Self {
        let mut words = vec![0u64; words_len(arity)];
        if value {
            if arity <= 6 {
                words[0] = word_mask(arity);
            } else {
                words.fill(u64::MAX);
            }
        }
        TruthTable { arity, words }
    }

    /// The projection onto variable `v`: `f(x) = x_v`.
    pub fn variable(arity: usize, v: VarIndex) -> Result<Self> {
        Self::check_var(arity, v)?;
        let p = v.bit();
        let words = if p < 6 {
            let pat = VAR_PATTERN[p];
            if arity <= 6 {
                vec![pat & word_mask(arity)]
            } else {
                vec![pat; words_len(arity)]
            }
        } else {
            (0..words_len(arity))
                .map(|j| if j >> (p - 6) & 1 == 1 { u64::MAX } else { 0 })
                .collect()
        };
        Ok(TruthTable { arity, words })
    }

    /// Builds a table by evaluating `f` at every point.
    pub fn from_point_fn(arity: usize, mut f: impl FnMut(u64) -> bool) -> Self {
        let mut t = TruthTable::constant(arity, false);
        for m in 0..(1u64 << arity) {
            if f(m) {
                t.set_bit(m as usize);
            }
        }
        t
    }

    /// Builds a table for arity <= 6 from the integer whose bit `m` is `f(m)`.
    pub fn from_bits_u64(arity: usize, bits: u64) -> Result<Self> {
        if arity > 6 {
            return Err(Error::UnsupportedArity {
                arity,
                detail: "from_bits_u64 holds at most 64 table entries",
            });
        }
        if bits & !word_mask(arity) != 0 {
            return Err(Error::TableFormat(format!(
                "bits above 2^{arity} entries must be zero"
            )));
        }
        Ok(TruthTable { arity, words: vec![bits] })
    }

    pub(crate) fn from_raw_words(arity: usize, mut words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_len(arity));
        if arity < 6 {
            words[0] &= word_mask(arity);
        }
        TruthTable { arity, words }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of input points, 2^arity.
    pub fn num_points(&self) -> u64 {
        1u64 << self.arity
    }

    fn check_var(arity: usize, v: VarIndex) -> Result<()> {
        if v.get() > arity {
            Err(Error::VariableOutOfRange { var: v.get(), arity })
        } else {
            Ok(())
        }
    }

    #[inline]
    pub(crate) fn bit(&self, point: usize) -> bool {
        self.words[point >> 6] >> (point & 63) & 1 == 1
    }

    #[inline]
    fn set_bit(&mut self, point: usize) {
        self.words[point >> 6] |= 1u64 << (point & 63);
    }

    /// Value of the function at `point`.
    pub fn evaluate(&self, point: u64) -> Result<bool> {
        if point >= self.num_points() {
            return Err(Error::PointOutOfRange { point, arity: self.arity });
        }
        Ok(self.bit(point as usize))
    }

    /// `Some(b)` when the function is constantly `b`.
    pub fn is_constant(&self) -> Option<bool> {
        if self.words.iter().all(|&w| w == 0) {
            return Some(false);
        }
        let ones = if self.arity <= 6 {
            self.words[0] == word_mask(self.arity)
        } else {
            self.words.iter().all(|&w| w == u64::MAX)
        };
        if ones {
            Some(true)
        } else {
            None
        }
    }

    /// Restriction `f|_{x_v = value}` on `arity - 1` variables.
    ///
    /// Surviving variables keep their relative order and are renumbered
    /// `1..arity-1`.
    pub fn restrict(&self, v: VarIndex, value: bool) -> Result<Self> {
        Self::check_var(self.arity, v)?;
        Ok(self.restrict_bits(&[(v.bit(), value)]))
    }

    /// Restricts several variables at once. `fixed` holds bit positions
    /// (0-based) with their values, strictly ascending.
    pub(crate) fn restrict_bits(&self, fixed: &[(usize, bool)]) -> Self {
        debug_assert!(fixed.windows(2).all(|w| w[0].0 < w[1].0));
        let out_arity = self.arity - fixed.len();
        let mut out = TruthTable::constant(out_arity, false);
        for reduced in 0..(1usize << out_arity) {
            let mut m = reduced;
            for &(p, a) in fixed {
                let low = m & ((1 << p) - 1);
                m = ((m >> p) << (p + 1)) | ((a as usize) << p) | low;
            }
            if self.bit(m) {
                out.set_bit(reduced);
            }
        }
        out
    }

    /// `Some(b)` when the restriction `f|_{x_v = value}` is constantly `b`,
    /// computed without materializing the restriction.
    pub(crate) fn restriction_constant(&self, v: VarIndex, value: bool) -> Option<bool> {
        let p = v.bit();
        if p < 6 {
            let sel = if value { VAR_PATTERN[p] } else { !VAR_PATTERN[p] };
            let sel = if self.arity < 6 { sel & word_mask(self.arity) } else { sel };
            if self.words.iter().all(|&w| w & sel == 0) {
                Some(false)
            } else if self.words.iter().all(|&w| w & sel == sel) {
                Some(true)
            } else {
                None
            }
        } else {
            let selected = || {
                self.words
                    .iter()
                    .enumerate()
                    .filter(move |(j, _)| (j >> (p - 6)) & 1 == value as usize)
                    .map(|(_, &w)| w)
            };
            if selected().all(|w| w == 0) {
                Some(false)
            } else if selected().all(|w| w == u64::MAX) {
                Some(true)
            } else {
                None
            }
        }
    }

    /// Whether the two restrictions on `x_v` differ somewhere.
    pub fn is_essential(&self, v: VarIndex) -> Result<bool> {
        Self::check_var(self.arity, v)?;
        let p = v.bit();
        if p < 6 {
            let sel0 = !VAR_PATTERN[p]
                & if self.arity < 6 { word_mask(self.arity) } else { u64::MAX };
            let shift = 1usize << p;
            Ok(self.words.iter().any(|&w| ((w >> shift) ^ w) & sel0 != 0))
        } else {
            let half = 1usize << (p - 6);
            Ok((0..self.words.len())
                .filter(|j| (j >> (p - 6)) & 1 == 0)
                .any(|j| self.words[j] != self.words[j + half]))
        }
    }

    /// All essential variables, ascending.
    pub fn essential_set(&self) -> Vec<VarIndex> {
        (1..=self.arity)
            .map(VarIndex::new)
            .filter(|&v| self.is_essential(v).expect("index in range"))
            .collect()
    }

    pub fn complement(&self) -> Self {
        let words = if self.arity <= 6 {
            vec![!self.words[0] & word_mask(self.arity)]
        } else {
            self.words.iter().map(|&w| !w).collect()
        };
        TruthTable { arity: self.arity, words }
    }

    /// XOR with a constant; identity for `false`.
    pub fn xor_constant(&self, value: bool) -> Self {
        if value {
            self.complement()
        } else {
            self.clone()
        }
    }

    fn zip(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| op(a, b))
            .collect();
        TruthTable { arity: self.arity, words }
    }

    pub fn and(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & b)
    }

    pub fn or(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a | b)
    }

    pub fn xor(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a ^ b)
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    /// In-place XOR subset-sum transform: entry `m` accumulates the XOR of
    /// all entries over subsets of `m`. Self-inverse over F2; converts
    /// between the coefficient vector of a square-free polynomial and its
    /// value vector.
    pub(crate) fn subset_xor_transform(&mut self) {
        for p in 0..self.arity.min(6) {
            let sel0 = !VAR_PATTERN[p];
            let shift = 1u32 << p;
            for w in &mut self.words {
                *w ^= (*w & sel0) << shift;
            }
        }
        for p in 6..self.arity {
            let half = 1usize << (p - 6);
            for j in 0..self.words.len() {
                if (j >> (p - 6)) & 1 == 1 {
                    self.words[j] ^= self.words[j - half];
                }
            }
        }
    }

    /// Hexadecimal rendering, most-significant digit first: the digits of
    /// the integer whose bit `m` is the table entry at point `m`, padded to
    /// exactly `max(1, 2^n/4)` digits.
    pub fn to_hex(&self) -> String {
        if self.arity <= 6 {
            let width = hex_len(self.arity);
            format!("{:0width$X}", self.words[0])
        } else {
            let mut s = String::with_capacity(self.words.len() * 16);
            for w in self.words.iter().rev() {
                s.push_str(&format!("{w:016X}"));
            }
            s
        }
    }

    /// Parses the format produced by [`TruthTable::to_hex`].
    pub fn from_hex(text: &str, arity: usize) -> Result<Self> {
        let expected = hex_len(arity);
        if text.len() != expected {
            return Err(Error::TableFormat(format!(
                "expected {expected} hex digits for arity {arity}, got {}",
                text.len()
            )));
        }
        if !text.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(Error::TableFormat("non-hex character".into()));
        }
        if arity <= 6 {
            let bits = u64::from_str_radix(text, 16)
                .map_err(|e| Error::TableFormat(e.to_string()))?;
            if arity < 6 && bits & !word_mask(arity) != 0 {
                return Err(Error::TableFormat(
                    "nonzero padding bits above table length".into(),
                ));
            }
            Ok(TruthTable { arity, words: vec![bits] })
        } else {
            let mut words = Vec::with_capacity(words_len(arity));
            for chunk in text.as_bytes().chunks(16).rev() {
                let part = std::str::from_utf8(chunk).expect("ascii checked");
                let w = u64::from_str_radix(part, 16)
                    .map_err(|e| Error::TableFormat(e.to_string()))?;
                words.push(w);
            }
            Ok(TruthTable { arity, words })
        }
    }
}

/// Digits in the hex form of an `arity`-variable table.
pub fn hex_len(arity: usize) -> usize {
    ((1usize << arity) / 4).max(1)
}
