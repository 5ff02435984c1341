//! Rooted permutations and their identification with finite total orders on
//! integer intervals containing zero.
//!
//! A rooted permutation `(sigma, i)` corresponds to the order on
//! `A = [-i+1, n-i]` in which position `l` precedes position `j` exactly when
//! `sigma_{l+i} <= sigma_{j+i}`. Equality of rooted permutations is equality
//! of `(sigma, i)` pairs, which is the same as equality of orders.

use crate::error::PermError;
use crate::perm::{pat_interval, Permutation};
use crate::{rat_pow2_neg, Rat};
use num_traits::Zero;
use std::fmt;
use std::str::FromStr;

/// A nonempty permutation with a distinguished 1-based index.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RootedPermutation {
    sigma: Permutation,
    root: usize,
}

impl RootedPermutation {
    pub fn new(sigma: Permutation, root: usize) -> Result<Self, PermError> {
        if root == 0 || root > sigma.size() {
            return Err(PermError::BadRoot);
        }
        Ok(Self { sigma, root })
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn size(&self) -> usize {
        self.sigma.size()
    }

    /// Window pattern of radius `h` around the root:
    /// `(pat_{[a,b]}(sigma), i - a + 1)` with `a = max(1, i-h)`,
    /// `b = min(n, i+h)`.
    pub fn restrict(&self, h: usize) -> RootedPermutation {
        let n = self.size();
        let a = self.root.saturating_sub(h).max(1);
        let b = (self.root + h).min(n);
        RootedPermutation {
            sigma: pat_interval(&self.sigma, a, b).expect("window within range"),
            root: self.root - a + 1,
        }
    }

    /// Entries strictly left / strictly right of the root.
    pub fn side_counts(&self) -> (usize, usize) {
        (self.root - 1, self.size() - self.root)
    }
}

/// Text form `<perm>@<root>`, e.g. `7,5,2,9,3,4,8,6,1@4`.
impl fmt::Display for RootedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.sigma, self.root)
    }
}

impl FromStr for RootedPermutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, PermError> {
        let (perm, root) = s
            .rsplit_once('@')
            .ok_or_else(|| PermError::ParseError("expected `<perm>@<root>`".into()))?;
        let sigma: Permutation = perm.parse()?;
        let root: usize = root
            .trim()
            .parse()
            .map_err(|_| PermError::ParseError(format!("bad root `{root}`")))?;
        RootedPermutation::new(sigma, root)
    }
}

/// A total order on an integer interval `[a, b]` with `a <= 0 <= b`, stored
/// through its rank word: `word[r-1]` is the 1-based (shifted) position of
/// rank `r`. Read as a permutation, the word equals the inverse of the
/// underlying rooted permutation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteOrder {
    lo: i64,
    word: Permutation,
}

impl FiniteOrder {
    pub fn new(lo: i64, hi: i64, word: Permutation) -> Result<Self, PermError> {
        if lo > 0 || hi < 0 || (hi - lo + 1) as usize != word.size() {
            return Err(PermError::BadOrderWord);
        }
        Ok(Self { lo, word })
    }

    pub fn interval(&self) -> (i64, i64) {
        (self.lo, self.lo + self.word.size() as i64 - 1)
    }

    pub fn len(&self) -> usize {
        self.word.size()
    }

    pub fn is_empty(&self) -> bool {
        false // always holds position 0
    }

    /// Positions listed in increasing order.
    pub fn positions_by_rank(&self) -> Vec<i64> {
        self.word
            .word()
            .iter()
            .map(|&p| p as i64 - 1 + self.lo)
            .collect()
    }

    /// Rank of a position (1-based), if the position lies in the interval.
    pub fn rank(&self, pos: i64) -> Option<u32> {
        let (lo, hi) = self.interval();
        if pos < lo || pos > hi {
            return None;
        }
        let shifted = (pos - lo) as usize + 1;
        Some(self.word.inverse().value(shifted))
    }

    /// `a` precedes-or-equals `b` in the order. Panics if either position is
    /// outside the interval.
    pub fn precedes(&self, a: i64, b: i64) -> bool {
        self.rank(a).expect("position in interval") <= self.rank(b).expect("position in interval")
    }

    /// Restriction to `A ∩ [-h, h]`, re-ranked.
    pub fn restrict(&self, h: i64) -> FiniteOrder {
        let (lo, hi) = self.interval();
        let new_lo = lo.max(-h);
        let new_hi = hi.min(h);
        let kept: Vec<i64> = self
            .positions_by_rank()
            .into_iter()
            .filter(|&p| p >= new_lo && p <= new_hi)
            .collect();
        let word: Vec<u32> = kept.iter().map(|&p| (p - new_lo) as u32 + 1).collect();
        FiniteOrder {
            lo: new_lo,
            word: Permutation::new(word).expect("re-ranked word is a permutation"),
        }
    }
}

/// The order associated with a rooted permutation.
pub fn to_order(rp: &RootedPermutation) -> FiniteOrder {
    FiniteOrder {
        lo: -(rp.root as i64) + 1,
        word: rp.sigma.inverse(),
    }
}

/// Inverse of [`to_order`].
pub fn from_order(fo: &FiniteOrder) -> RootedPermutation {
    RootedPermutation {
        sigma: fo.word.inverse(),
        root: (1 - fo.lo) as usize,
    }
}

/// Local ultrametric distance: `2^{-h*}` where `h*` is the largest `h >= 1`
/// with equal radius-`h` restrictions (`0` if the orders are equal, `1` if
/// they already differ at `h = 1`).
pub fn local_distance(x: &RootedPermutation, y: &RootedPermutation) -> Rat {
    if x == y {
        return Rat::zero();
    }
    let mut h = 0u32;
    loop {
        if x.restrict(h as usize + 1) != y.restrict(h as usize + 1) {
            return rat_pow2_neg(h);
        }
        h += 1;
    }
}

/// `restrict(family[h+1], h) == family[h]` for all consecutive pairs. The
/// family is indexed by `h = 1..=H`.
pub fn is_consistent(family: &[RootedPermutation]) -> bool {
    family
        .windows(2)
        .enumerate()
        .all(|(i, w)| w[1].restrict(i + 1) == w[0])
}

/// The union order of a consistent family, truncated at the largest supplied
/// radius (which, by consistency, is just the last element's order).
pub fn glue(family: &[RootedPermutation]) -> Result<FiniteOrder, PermError> {
    if family.is_empty() {
        return Err(PermError::InconsistentFamily);
    }
    if !is_consistent(family) {
        return Err(PermError::InconsistentFamily);
    }
    Ok(to_order(family.last().unwrap()))
}

/// Membership in the shift set `O^s(pi)`: `[1+s, k+s]` lies in the interval
/// and `pi_1+s, pi_2+s, ..., pi_k+s` is a chain in the order. The empty
/// pattern belongs to every shift set.
pub fn in_shift_set(fo: &FiniteOrder, pi: &Permutation, s: i64) -> bool {
    let k = pi.size() as i64;
    if k == 0 {
        return true;
    }
    let (lo, hi) = fo.interval();
    if 1 + s < lo || k + s > hi {
        return false;
    }
    pi.word()
        .windows(2)
        .all(|w| fo.precedes(w[0] as i64 + s, w[1] as i64 + s))
}

/// Appends `pi` to the right of `rp` under a new overall maximum placed
/// between them; the root keeps its index.
pub fn star_right(rp: &RootedPermutation, pi: &Permutation) -> RootedPermutation {
    let k = rp.sigma.size() as u32;
    let l = pi.size() as u32;
    let mut word = rp.sigma.word().to_vec();
    word.push(l + k + 1);
    word.extend(pi.word().iter().map(|&v| v + k));
    RootedPermutation {
        sigma: Permutation::new(word).expect("star_right yields a permutation"),
        root: rp.root,
    }
}

/// Prepends `pi` to the left of `rp` under a new overall maximum placed
/// between them; the root shifts by `|pi| + 1`.
pub fn star_left(rp: &RootedPermutation, pi: &Permutation) -> RootedPermutation {
    let k = rp.sigma.size() as u32;
    let l = pi.size() as u32;
    let mut word = pi.word().to_vec();
    word.push(l + k + 1);
    word.extend(rp.sigma.word().iter().map(|&v| v + l));
    RootedPermutation {
        sigma: Permutation::new(word).expect("star_left yields a permutation"),
        root: l as usize + rp.root + 1,
    }
}
