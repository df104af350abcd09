//! Exact combinatorial arithmetic and colex subset indexing.
//!
//! Subsets of a universe `[0, N)` with `N <= 64` are handled both as sorted
//! vertex tuples and as `u64` bitmasks. Colex order on `k`-subsets coincides
//! with numeric order on their masks, which is what makes the mask iterator
//! below a plain Gosper step.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use num_rational::BigRational;

/// Largest universe supported by the mask-based core path.
pub const MAX_UNIVERSE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatError {
    #[error("subset is not strictly increasing at position {0}")]
    NotSorted(usize),
    #[error("element or rank out of range: {0}")]
    OutOfRange(String),
    #[error("universe of size {0} exceeds the supported maximum of 64")]
    UniverseTooLarge(usize),
}

/// `C(n, k)` as an arbitrary-precision integer; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc * (n - i) is always divisible by i + 1 here
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn table() -> &'static [[u64; MAX_UNIVERSE + 1]; MAX_UNIVERSE + 1] {
    static TABLE: OnceLock<Box<[[u64; MAX_UNIVERSE + 1]; MAX_UNIVERSE + 1]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Box::new([[0u64; MAX_UNIVERSE + 1]; MAX_UNIVERSE + 1]);
        for n in 0..=MAX_UNIVERSE {
            t[n][0] = 1;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1] + if k < n { t[n - 1][k] } else { 0 };
            }
        }
        t
    })
}

/// `C(n, k)` for `n <= 64`, which always fits in a `u64`.
#[inline]
pub fn choose(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    assert!(n <= MAX_UNIVERSE, "choose({n}, {k}) outside the u64 table");
    table()[n][k]
}

/// Colex rank of a `k`-subset within the universe `[0, universe)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetRank {
    pub value: u64,
    pub k: usize,
    pub universe: usize,
}

impl SubsetRank {
    pub fn new(value: u64, k: usize, universe: usize) -> Result<Self, CombinatError> {
        if universe > MAX_UNIVERSE {
            return Err(CombinatError::UniverseTooLarge(universe));
        }
        if value >= choose(universe, k) {
            return Err(CombinatError::OutOfRange(format!(
                "rank {value} >= C({universe}, {k})"
            )));
        }
        Ok(Self { value, k, universe })
    }
}

/// Rank of a strictly increasing tuple: `sum_i C(a_i, i + 1)`.
pub fn colex_rank(subset: &[usize], universe: usize) -> Result<SubsetRank, CombinatError> {
    if universe > MAX_UNIVERSE {
        return Err(CombinatError::UniverseTooLarge(universe));
    }
    for (i, w) in subset.windows(2).enumerate() {
        if w[0] >= w[1] {
            return Err(CombinatError::NotSorted(i + 1));
        }
    }
    if let Some(&last) = subset.last() {
        if last >= universe {
            return Err(CombinatError::OutOfRange(format!(
                "element {last} >= universe {universe}"
            )));
        }
    }
    let value = subset
        .iter()
        .enumerate()
        .map(|(i, &a)| choose(a, i + 1))
        .sum();
    Ok(SubsetRank {
        value,
        k: subset.len(),
        universe,
    })
}

pub fn colex_unrank(rank: SubsetRank) -> Result<Vec<usize>, CombinatError> {
    let rank = SubsetRank::new(rank.value, rank.k, rank.universe)?;
    let mut out = vec![0; rank.k];
    let mut rest = rank.value;
    let mut top = rank.universe;
    for i in (1..=rank.k).rev() {
        // largest a < top with C(a, i) <= rest
        let mut a = top - 1;
        while choose(a, i) > rest {
            a -= 1;
        }
        out[i - 1] = a;
        rest -= choose(a, i);
        top = a;
    }
    Ok(out)
}

/// Colex rank of the subset encoded by `mask` (bit `v` set for vertex `v`).
#[inline]
pub fn rank_mask(mut mask: u64) -> u64 {
    let mut rank = 0;
    let mut i = 1;
    while mask != 0 {
        let v = mask.trailing_zeros() as usize;
        rank += choose(v, i);
        i += 1;
        mask &= mask - 1;
    }
    rank
}

/// Inverse of [`rank_mask`] for `k`-subsets of `[0, universe)`.
pub fn unrank_mask(rank: u64, k: usize, universe: usize) -> Result<u64, CombinatError> {
    let tuple = colex_unrank(SubsetRank {
        value: rank,
        k,
        universe,
    })?;
    Ok(mask_of(&tuple))
}

#[inline]
pub fn mask_of(vertices: &[usize]) -> u64 {
    vertices.iter().fold(0u64, |m, &v| m | (1u64 << v))
}

#[inline]
pub fn vertices_of(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

/// Colex rank of the pair `{u, v}`, `u != v`.
#[inline]
pub fn pair_rank(u: usize, v: usize) -> usize {
    let (lo, hi) = if u < v { (u, v) } else { (v, u) };
    hi * (hi - 1) / 2 + lo
}

#[inline]
pub fn pair_unrank(rank: usize) -> (usize, usize) {
    let mut hi = 1;
    while (hi + 1) * hi / 2 <= rank {
        hi += 1;
    }
    (rank - hi * (hi - 1) / 2, hi)
}

/// Restartable colex stream of `k`-subset masks of `[0, universe)`.
///
/// The iterator holds only the next mask, so a scan can be split by
/// starting several streams at different ranks.
#[derive(Debug, Clone)]
pub struct MaskSubsets {
    next: Option<u128>,
    limit: u128,
}

impl MaskSubsets {
    pub fn new(universe: usize, k: usize) -> Self {
        assert!(universe <= MAX_UNIVERSE);
        let next = (k <= universe).then(|| (1u128 << k) - 1);
        Self {
            next,
            limit: 1u128 << universe,
        }
    }

    /// Stream that begins at the subset with the given colex rank.
    pub fn starting_at(rank: SubsetRank) -> Result<Self, CombinatError> {
        let first = unrank_mask(rank.value, rank.k, rank.universe)?;
        Ok(Self {
            next: Some(first as u128),
            limit: 1u128 << rank.universe,
        })
    }
}

impl Iterator for MaskSubsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let x = self.next?;
        self.next = if x == 0 {
            None
        } else {
            // Gosper's hack
            let low = x & x.wrapping_neg();
            let ripple = x + low;
            let succ = (((ripple ^ x) >> 2) / low) | ripple;
            (succ < self.limit).then_some(succ)
        };
        Some(x as u64)
    }
}

/// All `k`-subsets of `[0, n)` as sorted tuples, in colex order.
pub fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> + Clone {
    MaskSubsets::new(n, k).map(vertices_of)
}

/// `((num/den))^exp` exactly.
pub fn ratio_pow(base: &BigRational, exp: u64) -> BigRational {
    let mut result = BigRational::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result *= &b;
        }
        b = &b * &b;
        e >>= 1;
    }
    result
}

pub fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_biguint(n: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn ln_bigint(x: &BigInt) -> f64 {
    let x = x.abs();
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    let shift = bits.saturating_sub(62);
    let top = (x >> shift).to_f64().unwrap_or(f64::NAN);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of `|q|`, computed without overflowing for huge numerators
/// or denominators. Display only.
pub fn ln_ratio(q: &BigRational) -> f64 {
    ln_bigint(q.numer()) - ln_bigint(q.denom())
}

pub fn log10_ratio(q: &BigRational) -> f64 {
    ln_ratio(q) / std::f64::consts::LN_10
}

/// Best-effort `f64` rendering, going through the log domain when the
/// direct conversion overflows.
pub fn ratio_to_f64(q: &BigRational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let direct = q.numer().to_f64().zip(q.denom().to_f64()).map(|(a, b)| a / b);
    match direct {
        Some(v) if v.is_finite() && v != 0.0 => v,
        _ => {
            let sign = if q.is_negative() { -1.0 } else { 1.0 };
            sign * ln_ratio(q).exp()
        }
    }
}
