//! Exact statistics, bijections, samplers and Monte Carlo experiments for
//! consecutive patterns in 231- and 321-avoiding permutations, organized
//! around local (window-based) convergence of uniformly rooted permutations.
//!
//! The crate is split along the main objects:
//!
//! * [`perm`] — permutations, patterns, consecutive-occurrence counts;
//! * [`rooted`] — rooted permutations as finite total orders, the local
//!   ultrametric, restrictions and shift sets;
//! * [`trees`] — ordered and binary trees, traversals, contours;
//! * [`bijections`] — the two Catalan bijections transporting statistics;
//! * [`samplers`] — seeded exact samplers (uniform classes, Galton-Watson
//!   trees, Boltzmann generation, limit-window samplers);
//! * [`limits`] — exact rational limit laws and the polynomial recursion;
//! * [`experiments`] — the Monte Carlo harness behind the CLI.

pub mod bijections;
pub mod error;
pub mod experiments;
pub mod limits;
pub mod perm;
pub mod rooted;
pub mod samplers;
pub mod thresholds;
pub mod trees;

/// Arbitrary-precision rational, used for every exact probability.
pub type Rat = num_rational::BigRational;

/// Rational `num / den` from machine integers.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num.into(), den.into())
}

/// Exact `2^{-e}`.
pub fn rat_pow2_neg(e: u32) -> Rat {
    use num_bigint::BigInt;
    use num_traits::One;
    Rat::new(BigInt::one(), BigInt::one() << e)
}
