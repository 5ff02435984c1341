//! Permutations in one-line notation, patterns and consecutive-occurrence
//! statistics.
//!
//! All index sets exposed by this module (`lr_maxima`, `indmax`, pattern
//! windows, ...) are 1-based, matching the usual combinatorial convention.
//! The empty permutation is a first-class value.

use crate::error::PermError;
use crate::Rat;
use num_bigint::BigInt;
use std::fmt;
use std::str::FromStr;

/// A permutation of `{1, ..., n}` in one-line notation. `n = 0` encodes the
/// empty permutation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<u32>,
}

impl Permutation {
    /// Builds a permutation from its one-line word, checking that it is a
    /// rearrangement of `1..=n`.
    pub fn new(word: Vec<u32>) -> Result<Self, PermError> {
        let n = word.len();
        let mut seen = vec![false; n];
        for &v in &word {
            if v == 0 || v as usize > n || seen[v as usize - 1] {
                return Err(PermError::NotAPermutation);
            }
            seen[v as usize - 1] = true;
        }
        Ok(Self { word })
    }

    pub fn empty() -> Self {
        Self { word: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            word: (1..=n as u32).collect(),
        }
    }

    /// Builds without validating. Caller must guarantee the word is a
    /// permutation of `1..=n`.
    pub(crate) fn from_word_unchecked(word: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(word.clone()).is_ok());
        Self { word }
    }

    pub fn size(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// One-line word, 0-based slice: `word()[i-1]` is the value at index `i`.
    pub fn word(&self) -> &[u32] {
        &self.word
    }

    /// Value at 1-based index `i`.
    pub fn value(&self, i: usize) -> u32 {
        self.word[i - 1]
    }

    /// Group inverse: `inverse()[σ_i - 1] = i`.
    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.word.len()];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Self { word: inv }
    }

    /// Concatenation with the second block shifted above the first.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let shift = self.word.len() as u32;
        let mut word = self.word.clone();
        word.extend(other.word.iter().map(|&v| v + shift));
        Self { word }
    }

    /// Appends a value ranking strictly between `m - 1` and `m`, then
    /// standardizes: existing values `>= m` shift up by one and the new last
    /// entry becomes `m`. Requires `1 <= m <= n + 1`.
    pub fn star_insert(&self, m: u32) -> Result<Permutation, PermError> {
        let n = self.word.len() as u32;
        if m == 0 || m > n + 1 {
            return Err(PermError::IndexOutOfRange);
        }
        let mut word: Vec<u32> = self
            .word
            .iter()
            .map(|&v| if v >= m { v + 1 } else { v })
            .collect();
        word.push(m);
        Ok(Self { word })
    }

    /// 1-based index of the maximal value. Requires a nonempty permutation.
    pub fn indmax(&self) -> usize {
        let n = self.word.len() as u32;
        self.word.iter().position(|&v| v == n).unwrap() + 1
    }

    /// Splits the word around its maximum: `σ = σ_L · max · σ_R`. The returned
    /// sides are raw subwords (not standardized); either may be empty.
    pub fn split_at_max(&self) -> (Vec<u32>, Vec<u32>) {
        let l = self.indmax();
        (self.word[..l - 1].to_vec(), self.word[l..].to_vec())
    }

    /// 1-based indices `i` with `σ_j < σ_i` for all `j < i`, ascending.
    pub fn lr_maxima(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut best = 0u32;
        for (i, &v) in self.word.iter().enumerate() {
            if v > best {
                best = v;
                out.push(i + 1);
            }
        }
        out
    }

    /// 1-based indices `i` with `σ_i > σ_j` for all `j > i`, ascending.
    pub fn rl_maxima(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut best = 0u32;
        for (i, &v) in self.word.iter().enumerate().rev() {
            if v > best {
                best = v;
                out.push(i + 1);
            }
        }
        out.reverse();
        out
    }

    pub fn reverse(&self) -> Permutation {
        let mut word = self.word.clone();
        word.reverse();
        Self { word }
    }

    pub fn complement(&self) -> Permutation {
        let n = self.word.len() as u32;
        Self {
            word: self.word.iter().map(|&v| n + 1 - v).collect(),
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// Text form: comma-separated values (`7,5,2,9,3,4,8,6,1`), a compact digit
/// string for sizes up to 9 (`752934861`), or `-` for the empty permutation.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "-");
        }
        if self.word.len() <= 9 {
            for &v in &self.word {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, PermError> {
        let s = s.trim();
        if s == "-" {
            return Ok(Permutation::empty());
        }
        if s.is_empty() {
            return Err(PermError::ParseError(
                "empty permutation text; use `-`".into(),
            ));
        }
        let word: Vec<u32> = if s.contains(',') {
            s.split(',')
                .map(|p| {
                    p.trim()
                        .parse::<u32>()
                        .map_err(|_| PermError::ParseError(format!("bad entry `{p}`")))
                })
                .collect::<Result<_, _>>()?
        } else if s.len() <= 9 && s.chars().all(|c| c.is_ascii_digit()) {
            s.chars().map(|c| c.to_digit(10).unwrap()).collect()
        } else {
            return Err(PermError::ParseError(format!(
                "cannot parse `{s}` as a permutation"
            )));
        };
        Permutation::new(word)
    }
}

/// The unique permutation in the same relative order as `values`.
pub fn standardize(values: &[i64]) -> Result<Permutation, PermError> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by_key(|&i| values[i]);
    for w in idx.windows(2) {
        if values[w[0]] == values[w[1]] {
            return Err(PermError::DuplicateValues);
        }
    }
    let mut word = vec![0u32; values.len()];
    for (rank, &i) in idx.iter().enumerate() {
        word[i] = rank as u32 + 1;
    }
    Ok(Permutation { word })
}

/// Pattern induced by the entries of `sigma` at the given 1-based indices
/// (taken in ascending index order). Duplicate or out-of-range indices are
/// rejected.
pub fn pat(sigma: &Permutation, indices: &[usize]) -> Result<Permutation, PermError> {
    let n = sigma.size();
    let mut idx = indices.to_vec();
    idx.sort_unstable();
    for w in idx.windows(2) {
        if w[0] == w[1] {
            return Err(PermError::DuplicateValues);
        }
    }
    if idx.iter().any(|&i| i == 0 || i > n) {
        return Err(PermError::IndexOutOfRange);
    }
    let values: Vec<i64> = idx.iter().map(|&i| sigma.value(i) as i64).collect();
    standardize(&values)
}

/// `pat` over the integer interval `[a, b]`; the empty interval (`a > b`)
/// yields the empty permutation.
pub fn pat_interval(sigma: &Permutation, a: usize, b: usize) -> Result<Permutation, PermError> {
    if a > b {
        return Ok(Permutation::empty());
    }
    let indices: Vec<usize> = (a..=b).collect();
    pat(sigma, &indices)
}

/// Number of intervals `I` of length `|pi|` with `pat_I(sigma) = pi`.
/// Zero when `|pi| > |sigma|`. The empty pattern is rejected.
pub fn c_occ(pi: &Permutation, sigma: &Permutation) -> Result<u64, PermError> {
    if pi.is_empty() {
        return Err(PermError::EmptyPattern);
    }
    let k = pi.size();
    let n = sigma.size();
    if k > n {
        return Ok(0);
    }
    // A window matches iff its values, read in the value-sorted index order
    // of `pi`, are increasing.
    let inv = pi.inverse();
    let w = sigma.word();
    let mut count = 0u64;
    'windows: for start in 0..=(n - k) {
        let win = &w[start..start + k];
        for j in 0..k - 1 {
            let a = inv.word()[j] as usize - 1;
            let b = inv.word()[j + 1] as usize - 1;
            if win[a] >= win[b] {
                continue 'windows;
            }
        }
        count += 1;
    }
    Ok(count)
}

/// Exact proportion `c_occ(pi, sigma) / |sigma|`. The empty host is rejected.
pub fn c_occ_proportion(pi: &Permutation, sigma: &Permutation) -> Result<Rat, PermError> {
    if sigma.is_empty() {
        return Err(PermError::EmptyHost);
    }
    let c = c_occ(pi, sigma)?;
    Ok(Rat::new(BigInt::from(c), BigInt::from(sigma.size())))
}

/// Classical (non-consecutive) pattern avoidance. Size-3 patterns use a
/// linear stack-based scan; patterns of size >= 4 fall back to backtracking
/// search and are only supported for hosts of size <= 20.
pub fn avoids(sigma: &Permutation, rho: &Permutation) -> Result<bool, PermError> {
    match rho.size() {
        0 => Err(PermError::EmptyPattern),
        1 => Ok(sigma.is_empty()),
        2 => {
            if rho.word() == [1, 2] {
                Ok(!contains_rise(sigma.word()))
            } else {
                Ok(!contains_rise(&sigma.complement().word))
            }
        }
        3 => Ok(!contains_size3(sigma, rho.word())),
        _ => {
            if sigma.size() > 20 {
                return Err(PermError::AvoidanceQueryTooLarge);
            }
            Ok(!contains_generic(sigma, rho))
        }
    }
}

fn contains_rise(w: &[u32]) -> bool {
    let mut min = u32::MAX;
    for &v in w {
        if v > min {
            return true;
        }
        min = min.min(v);
    }
    false
}

/// Containment of a size-3 pattern, dispatched through the
/// reverse/complement symmetries to a monotone scan or the 132 stack scan.
fn contains_size3(sigma: &Permutation, rho: &[u32]) -> bool {
    match rho {
        [1, 2, 3] => contains_monotone3(sigma.word(), false),
        [3, 2, 1] => contains_monotone3(sigma.word(), true),
        [1, 3, 2] => contains_132(sigma.word()),
        [2, 3, 1] => contains_132(&sigma.reverse().word),
        [3, 1, 2] => contains_132(&sigma.complement().word),
        [2, 1, 3] => contains_132(&sigma.reverse().complement().word),
        _ => unreachable!("not a size-3 pattern"),
    }
}

fn contains_monotone3(w: &[u32], decreasing: bool) -> bool {
    let n = w.len();
    if n < 3 {
        return false;
    }
    let key = |v: u32| if decreasing { u32::MAX - v } else { v };
    let mut pref_min = vec![u32::MAX; n];
    let mut m = u32::MAX;
    for i in 0..n {
        pref_min[i] = m;
        m = m.min(key(w[i]));
    }
    let mut suf_max = vec![0u32; n];
    let mut mx = 0u32;
    for i in (0..n).rev() {
        suf_max[i] = mx;
        mx = mx.max(key(w[i]));
    }
    (0..n).any(|i| pref_min[i] < key(w[i]) && key(w[i]) < suf_max[i])
}

/// Scans right to left keeping a decreasing stack; `third` tracks the
/// largest value known to have a larger entry to its left.
fn contains_132(w: &[u32]) -> bool {
    let mut stack: Vec<u32> = Vec::new();
    let mut third = 0u32;
    for &v in w.iter().rev() {
        if v < third {
            return true;
        }
        while let Some(&top) = stack.last() {
            if top < v {
                third = third.max(top);
                stack.pop();
            } else {
                break;
            }
        }
        stack.push(v);
    }
    false
}

fn contains_generic(sigma: &Permutation, rho: &Permutation) -> bool {
    // Backtracking over increasing index choices; positions chosen so far
    // must realize the relative order of the corresponding prefix of rho.
    fn rec(w: &[u32], rho: &[u32], chosen: &mut Vec<usize>, start: usize) -> bool {
        let j = chosen.len();
        if j == rho.len() {
            return true;
        }
        for i in start..w.len() {
            if w.len() - i < rho.len() - j {
                break;
            }
            let ok = chosen.iter().enumerate().all(|(jj, &ii)| {
                (w[ii] < w[i]) == (rho[jj] < rho[j])
            });
            if ok {
                chosen.push(i);
                if rec(w, rho, chosen, i + 1) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::with_capacity(rho.size());
    rec(sigma.word(), rho.word(), &mut chosen, 0)
}
