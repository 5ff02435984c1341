//! Exact limit laws and polynomial identities: the two closed-form limit
//! distributions, the recursive polynomial law of window patterns under the
//! critical binary branching model, brute-force class enumeration, and
//! normalization checks.

use crate::error::PermError;
use crate::perm::{avoids, c_occ, Permutation};
use crate::{rat, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// One of the two pattern-avoidance classes the library works with.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AvClass {
    Av231,
    Av321,
}

impl AvClass {
    pub fn forbidden(&self) -> Permutation {
        match self {
            AvClass::Av231 => Permutation::new(vec![2, 3, 1]).unwrap(),
            AvClass::Av321 => Permutation::new(vec![3, 2, 1]).unwrap(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            AvClass::Av231 => "av231",
            AvClass::Av321 => "av321",
        }
    }
}

impl std::str::FromStr for AvClass {
    type Err = PermError;
    fn from_str(s: &str) -> Result<Self, PermError> {
        match s {
            "av231" | "231" => Ok(AvClass::Av231),
            "av321" | "321" => Ok(AvClass::Av321),
            _ => Err(PermError::ParseError(format!("unknown class `{s}`"))),
        }
    }
}

/// `n`-th Catalan number for `n <= 30`.
pub fn catalan(n: usize) -> u64 {
    let mut c: u128 = 1;
    for i in 0..n as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c as u64
}

/// Limit proportion of a consecutive pattern in large uniform 231-avoiding
/// permutations: `2^{|LRMax| + |RLMax|} / 4^{|pi|}`.
pub fn p231(pi: &Permutation) -> Result<Rat, PermError> {
    if pi.is_empty() {
        return Err(PermError::EmptyPattern);
    }
    if !avoids(pi, &AvClass::Av231.forbidden())? {
        return Err(PermError::ClassViolation("231"));
    }
    let e = 2 * pi.size() - pi.lr_maxima().len() - pi.rl_maxima().len();
    Ok(Rat::new(BigInt::one(), BigInt::one() << e))
}

/// Limit proportion of a consecutive pattern in large uniform 321-avoiding
/// permutations: `(k+1)/2^k` for the identity, `1/2^k` with exactly one
/// inverse descent, `0` otherwise.
pub fn p321(pi: &Permutation) -> Result<Rat, PermError> {
    if pi.is_empty() {
        return Err(PermError::EmptyPattern);
    }
    if !avoids(pi, &AvClass::Av321.forbidden())? {
        return Err(PermError::ClassViolation("321"));
    }
    let k = pi.size();
    if *pi == Permutation::identity(k) {
        return Ok(Rat::new(BigInt::from(k + 1), BigInt::one() << k));
    }
    let inv_descents = c_occ(&Permutation::new(vec![2, 1]).unwrap(), &pi.inverse())?;
    if inv_descents == 1 {
        Ok(Rat::new(BigInt::one(), BigInt::one() << k))
    } else {
        Ok(Rat::zero())
    }
}

/// The limit law for the given class, as a single entry point.
pub fn limit_law(class: AvClass, pi: &Permutation) -> Result<Rat, PermError> {
    match class {
        AvClass::Av231 => p231(pi),
        AvClass::Av321 => p321(pi),
    }
}

/// A polynomial in the formal variable `p` with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalPoly {
    /// `coeffs[i]` is the coefficient of `p^i`; no trailing zeros.
    coeffs: Vec<Rat>,
}

impl RationalPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self {
            coeffs: vec![Rat::one()],
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    fn trim(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    /// `p^a`.
    pub fn p_pow(a: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); a + 1];
        coeffs[a] = Rat::one();
        Self { coeffs }
    }

    /// `(1 - p)^b`.
    pub fn one_minus_p_pow(b: usize) -> Self {
        let mut out = Self::one();
        let base = Self {
            coeffs: vec![Rat::one(), -Rat::one()],
        };
        for _ in 0..b {
            out = out.mul(&base);
        }
        out
    }

    /// `p^a (1-p)^b`.
    pub fn pq_monomial(a: usize, b: usize) -> Self {
        Self::p_pow(a).mul(&Self::one_minus_p_pow(b))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Self { coeffs }.trim()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self { coeffs }.trim()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// If the polynomial is exactly `p^a (1-p)^b`, returns `(a, b)`.
    pub fn as_pq_monomial(&self) -> Option<(usize, usize)> {
        let a = self.coeffs.iter().position(|c| !c.is_zero())?;
        let b = self.coeffs.len() - 1 - a;
        if *self == Self::pq_monomial(a, b) {
            Some((a, b))
        } else {
            None
        }
    }
}

/// Factored form when available, always followed by the coefficient list.
impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((a, b)) = self.as_pq_monomial() {
            write!(f, "p^{a}*(1-p)^{b} = ")?;
        }
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{c}*p^{i}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Splits a 231-avoider around its maximum into standardized sides. The left
/// side is already standardized because every left value is below every
/// right value.
fn decompose_231(pi: &Permutation) -> (Permutation, Permutation) {
    let (l, r) = pi.split_at_max();
    let shift = l.len() as u32;
    let left = Permutation::new(l).expect("left side of a 231-avoider is standardized");
    let right =
        Permutation::new(r.iter().map(|&v| v - shift).collect()).expect("shifted right side");
    (left, right)
}

struct SymbolicCtx {
    memo_e: HashMap<Vec<u32>, RationalPoly>,
    memo_b: HashMap<Vec<u32>, RationalPoly>,
}

impl SymbolicCtx {
    fn new() -> Self {
        Self {
            memo_e: HashMap::new(),
            memo_b: HashMap::new(),
        }
    }

    /// Law of the final-window pattern. The `1/(1-p)` prefactors of the
    /// recursion are combined with the closed subtree probabilities, so only
    /// genuine polynomials appear.
    fn pat_e(&mut self, pi: &Permutation) -> RationalPoly {
        if pi.size() == 1 {
            return RationalPoly::one();
        }
        if let Some(hit) = self.memo_e.get(pi.word()) {
            return hit.clone();
        }
        let (l, r) = decompose_231(pi);
        let out = match (l.is_empty(), r.is_empty()) {
            (false, false) => self
                .pat_e(&l)
                .mul(&RationalPoly::pq_monomial(r.size() + 1, r.size())),
            (false, true) => self.pat_e(&l).mul(&RationalPoly::p_pow(1)),
            (true, false) => RationalPoly::pq_monomial(r.size(), r.size()),
            (true, true) => unreachable!("size 1 handled above"),
        };
        self.memo_e.insert(pi.word().to_vec(), out.clone());
        out
    }

    /// Law of the initial-window pattern; mirror of [`Self::pat_e`].
    fn pat_b(&mut self, pi: &Permutation) -> RationalPoly {
        if pi.size() == 1 {
            return RationalPoly::one();
        }
        if let Some(hit) = self.memo_b.get(pi.word()) {
            return hit.clone();
        }
        let (l, r) = decompose_231(pi);
        let out = match (l.is_empty(), r.is_empty()) {
            (false, false) => self
                .pat_b(&r)
                .mul(&RationalPoly::pq_monomial(l.size() + 1, l.size())),
            (false, true) => RationalPoly::pq_monomial(l.size(), l.size()),
            (true, false) => self.pat_b(&r).mul(&RationalPoly::p_pow(1)),
            (true, true) => unreachable!("size 1 handled above"),
        };
        self.memo_b.insert(pi.word().to_vec(), out.clone());
        out
    }

    fn pat_j(&mut self, pi: &Permutation) -> RationalPoly {
        if pi.size() == 1 {
            return RationalPoly::one();
        }
        let (l, r) = decompose_231(pi);
        match (l.is_empty(), r.is_empty()) {
            (false, false) => {
                let e = self.pat_e(&l);
                let b = self.pat_b(&r);
                e.mul(&b).mul(&RationalPoly::p_pow(2))
            }
            (false, true) => self.pat_e(&l).mul(&RationalPoly::p_pow(1)),
            (true, false) => self.pat_b(&r).mul(&RationalPoly::p_pow(1)),
            (true, true) => unreachable!("size 1 handled above"),
        }
    }
}

fn require_231(pi: &Permutation) -> Result<(), PermError> {
    if pi.is_empty() {
        return Err(PermError::EmptyPattern);
    }
    if !avoids(pi, &AvClass::Av231.forbidden())? {
        return Err(PermError::ClassViolation("231"));
    }
    Ok(())
}

/// Exact law, as a polynomial in the child probability `p`, of the window
/// pattern around the maximum of the critical binary branching tree.
/// Always evaluates to a monomial `p^a (1-p)^b`.
pub fn symbolic_pat_j(pi: &Permutation) -> Result<RationalPoly, PermError> {
    require_231(pi)?;
    Ok(SymbolicCtx::new().pat_j(pi))
}

/// Law of the pattern of the last `|pi|` entries.
pub fn symbolic_pat_e(pi: &Permutation) -> Result<RationalPoly, PermError> {
    require_231(pi)?;
    Ok(SymbolicCtx::new().pat_e(pi))
}

/// Law of the pattern of the first `|pi|` entries.
pub fn symbolic_pat_b(pi: &Permutation) -> Result<RationalPoly, PermError> {
    require_231(pi)?;
    Ok(SymbolicCtx::new().pat_b(pi))
}

/// `symbolic_pat_b` at the critical point `p = 1/2`; equals
/// `2^{|RLMax|+1} / 4^{|pi|}`.
pub fn boundary_limit_b(pi: &Permutation) -> Result<Rat, PermError> {
    Ok(symbolic_pat_b(pi)?.eval(&rat(1, 2)))
}

/// `symbolic_pat_e` at the critical point `p = 1/2`; equals
/// `2^{|LRMax|+1} / 4^{|pi|}`.
pub fn boundary_limit_e(pi: &Permutation) -> Result<Rat, PermError> {
    Ok(symbolic_pat_e(pi)?.eval(&rat(1, 2)))
}

/// Gap from a maximum index to the next maximum of the same kind: for a
/// left-to-right maximum `j`, the least `a >= 0` with `j + 1 + a` again a
/// left-to-right maximum; mirrored for right-to-left maxima; `0` for the
/// index of the overall maximum.
pub fn max_distance(pi: &Permutation, j: usize) -> Result<usize, PermError> {
    if pi.is_empty() || j == 0 || j > pi.size() {
        return Err(PermError::IndexOutOfRange);
    }
    if j == pi.indmax() {
        return Ok(0);
    }
    let lr = pi.lr_maxima();
    let rl = pi.rl_maxima();
    if lr.contains(&j) {
        let next = lr.iter().find(|&&x| x > j).expect("overall max follows");
        Ok(next - j - 1)
    } else if rl.contains(&j) {
        let prev = rl.iter().rev().find(|&&x| x < j).expect("overall max precedes");
        Ok(j - prev - 1)
    } else {
        Err(PermError::IndexOutOfRange)
    }
}

/// All members of `Av^n` of the class, lexicographically sorted. Supported
/// for `1 <= n <= 12`; built by inserting the largest value into the
/// admissible slots of each member of `Av^{n-1}`.
pub fn enumerate_class(class: AvClass, n: usize) -> Result<Vec<Permutation>, PermError> {
    if n == 0 || n > 12 {
        return Err(PermError::OutOfSupportedRange("1 <= n <= 12"));
    }
    let mut current = vec![vec![1u32]];
    for size in 2..=n {
        let mut next = Vec::with_capacity(current.len() * 2);
        for w in &current {
            match class {
                AvClass::Av231 => {
                    // the new maximum may split the word only where every
                    // left value is below every right value
                    let len = w.len();
                    let mut pref_max = 0u32;
                    let mut suf_min = vec![0u32; len + 1];
                    suf_min[len] = u32::MAX;
                    for i in (0..len).rev() {
                        suf_min[i] = suf_min[i + 1].min(w[i]);
                    }
                    for slot in 0..=len {
                        if pref_max < suf_min[slot] {
                            let mut nw = Vec::with_capacity(len + 1);
                            nw.extend_from_slice(&w[..slot]);
                            nw.push(size as u32);
                            nw.extend_from_slice(&w[slot..]);
                            next.push(nw);
                        }
                        if slot < len {
                            pref_max = pref_max.max(w[slot]);
                        }
                    }
                }
                AvClass::Av321 => {
                    // everything right of the new maximum must be increasing
                    let len = w.len();
                    let first_valid = (0..len.saturating_sub(1))
                        .rev()
                        .find(|&i| w[i] > w[i + 1])
                        .map(|i| i + 1)
                        .unwrap_or(0);
                    for slot in first_valid..=len {
                        let mut nw = Vec::with_capacity(len + 1);
                        nw.extend_from_slice(&w[..slot]);
                        nw.push(size as u32);
                        nw.extend_from_slice(&w[slot..]);
                        next.push(nw);
                    }
                }
            }
        }
        current = next;
    }
    current.sort_unstable();
    Ok(current
        .into_iter()
        .map(Permutation::from_word_unchecked)
        .collect())
}

/// Number of members of `Av^k(321)` with exactly one inverse descent,
/// counted by enumeration.
pub fn one_inverse_descent_count(k: usize) -> Result<u64, PermError> {
    let desc = Permutation::new(vec![2, 1]).unwrap();
    let mut count = 0u64;
    for pi in enumerate_class(AvClass::Av321, k)? {
        if c_occ(&desc, &pi.inverse())? == 1 {
            count += 1;
        }
    }
    Ok(count)
}

/// Exact normalization identities for both limit laws, for all sizes up to
/// `k_max <= 12`: the maxima-weight sum over `Av^k(231)` equals `4^k`
/// (equivalently the 231 law sums to one), the one-inverse-descent count in
/// `Av^k(321)` equals `2^k - (k+1)`, and the 321 law sums to one.
pub fn genfun_normalization_check(k_max: usize) -> Result<bool, PermError> {
    if k_max > 12 {
        return Err(PermError::OutOfSupportedRange("k_max <= 12"));
    }
    for k in 1..=k_max {
        let mut weight = BigInt::zero();
        let mut total_231 = Rat::zero();
        for pi in enumerate_class(AvClass::Av231, k)? {
            let exp = pi.lr_maxima().len() + pi.rl_maxima().len();
            weight += BigInt::one() << exp;
            total_231 += p231(&pi)?;
        }
        if weight != (BigInt::one() << (2 * k)) || !total_231.is_one() {
            return Ok(false);
        }

        let expected = (1u64 << k) - (k as u64 + 1);
        if one_inverse_descent_count(k)? != expected {
            return Ok(false);
        }
        let mut total_321 = Rat::zero();
        for pi in enumerate_class(AvClass::Av321, k)? {
            total_321 += p321(&pi)?;
        }
        if !total_321.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Probability, under the two-sided sign construction of the 321 limit
/// order, that positions `pi_1, ..., pi_k` form a chain (the event
/// `O^s(pi)`, whose probability does not depend on the shift `s`). Exact,
/// by enumeration of the `2^k` sign assignments of the touched positions.
pub fn limit321_chain_probability(pi: &Permutation) -> Rat {
    let k = pi.size();
    if k == 0 {
        return Rat::one();
    }
    let mut good = 0u64;
    for mask in 0..(1u64 << k) {
        let plus = |pos: u32| mask >> (pos - 1) & 1 == 1;
        let ok = pi.word().windows(2).all(|w| {
            let (a, b) = (w[0], w[1]);
            match (plus(a), plus(b)) {
                (false, true) => true,
                (true, false) => false,
                _ => a < b,
            }
        });
        if ok {
            good += 1;
        }
    }
    Rat::new(BigInt::from(good), BigInt::one() << k)
}

/// The law of a finite random permutation reconstructed from (possibly
/// empirical) chain-event marginals: values are validated to cover all of
/// `S^n`, checked to sum to one within `tol`, and renormalized exactly.
pub fn finite_from_order(
    marginals: &BTreeMap<Permutation, Rat>,
    n: usize,
    tol: &Rat,
) -> Result<BTreeGroup, PermError> {
    if n == 0 || n > 8 {
        return Err(PermError::OutOfSupportedRange("1 <= n <= 8"));
    }
    let expected: usize = (1..=n).product();
    if marginals.len() != expected || marginals.keys().any(|k| k.size() != n) {
        return Err(PermError::BadMarginals);
    }
    let sum: Rat = marginals.values().cloned().sum();
    if (sum.clone() - Rat::one()).abs() > *tol || sum.is_zero() {
        return Err(PermError::BadMarginals);
    }
    Ok(marginals
        .iter()
        .map(|(k, v)| (k.clone(), v / &sum))
        .collect())
}

/// A probability distribution over permutations of one size.
pub type BTreeGroup = BTreeMap<Permutation, Rat>;

/// f64 view of a rational, for reporting.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
