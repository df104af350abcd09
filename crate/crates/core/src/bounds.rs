//! Closed-form quantities of the lower-bound argument, evaluated exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinat::{binomial, from_biguint, ratio, ratio_pow};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("uniformity r = {0} is not supported; r >= 3 is required")]
    RNotSupported(u64),
    #[error("no N >= {n} has expectation below 1 for c = {c}")]
    Degenerate { n: u64, c: u64 },
    #[error("invalid parameters: {0}")]
    BadParameters(String),
}

/// `c * C(N, n) * ((c - 1) / c)^C(n, 2)`: the expected number of
/// (core, color) pairs that survive a uniformly random forbidden table.
pub fn expected_mono_upper(big_n: u64, n: u64, c: u64) -> BigRational {
    if c == 0 {
        return BigRational::zero();
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let cores = from_biguint(binomial(big_n, n));
    BigRational::from_integer(BigInt::from(c)) * cores * ratio_pow(&ratio(c - 1, c), pairs)
}

/// Largest `N` whose expectation is still below 1.
///
/// The expectation grows with `N` once `N >= n`, so this scans upward from
/// `n` with the ratio `E(N + 1) / E(N) = (N + 1) / (N + 1 - n)`.
pub fn threshold_n(n: u64, c: u64) -> Result<u64, BoundsError> {
    if n < 3 || c < 2 {
        return Err(BoundsError::BadParameters(format!("threshold needs n >= 3 and c >= 2, got n = {n}, c = {c}")));
    }
    let one = BigRational::one();
    let mut e = expected_mono_upper(n, n, c);
    if e >= one {
        return Err(BoundsError::Degenerate { n, c });
    }
    let mut big_n = n;
    loop {
        let next = &e * ratio(big_n + 1, big_n + 1 - n);
        if next >= one {
            return Ok(big_n);
        }
        e = next;
        big_n += 1;
    }
}

/// `(1 + 1/r^2)^(n - 1)`.
pub fn theorem_bound(r: u64, n: u64) -> Result<BigRational, BoundsError> {
    if r < 3 {
        return Err(BoundsError::RNotSupported(r));
    }
    if n == 0 {
        return Err(BoundsError::BadParameters("n must be at least 1".into()));
    }
    Ok(ratio_pow(&ratio(r * r + 1, r * r), n - 1))
}

/// The color count the construction uses for uniformity `r`: `C(r, 2) + 1`.
pub fn construction_colors(r: u64) -> u64 {
    r * (r - 1) / 2 + 1
}

/// Whether `(1 + 1/r^2)^2 <= c / (c - 1)` for `c = C(r, 2) + 1`, which
/// makes `N <= (1 + 1/r^2)^(n-1)` imply `N <= (c/(c-1))^((n-1)/2)`.
pub fn sufficiency_check(r: u64) -> Result<bool, BoundsError> {
    if r < 3 {
        return Err(BoundsError::RNotSupported(r));
    }
    let c = construction_colors(r);
    let lhs = ratio_pow(&ratio(r * r + 1, r * r), 2);
    Ok(lhs <= ratio(c, c - 1))
}

/// The bound chain for one `n`, squared to stay rational:
/// `theorem_bound(r, n)^2 <= (c / (c - 1))^(n - 1)`.
pub fn bound_chain_holds(r: u64, n: u64) -> Result<bool, BoundsError> {
    let c = construction_colors(r);
    let t = theorem_bound(r, n)?;
    Ok(&t * &t <= ratio_pow(&ratio(c, c - 1), n - 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum KnownValue {
    Exact(u64),
    Unknown,
}

/// Exact values quoted for the regimes `r > 2c` (value `n`) and `r = 2c`
/// (value `n + 1`); everything else is unknown. No side conditions on `n`
/// are added here.
pub fn known_exact(r: u64, c: u64, n: u64) -> KnownValue {
    if r > 2 * c {
        KnownValue::Exact(n)
    } else if r == 2 * c {
        KnownValue::Exact(n + 1)
    } else {
        KnownValue::Unknown
    }
}

/// Strict upper bound on `R_3(Berge-K_n; 2)`: the number is below `2n`.
pub fn known_upper_3_2(n: u64) -> u64 {
    2 * n
}

/// Everything the bound command reports for one `(r, n)` at `c = C(r,2)+1`
/// (or an explicit `c`).
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub r: u64,
    pub n: u64,
    pub c: u64,
    /// Expectation evaluated at `threshold_n`, when one exists.
    pub expectation: Option<BigRational>,
    pub threshold_n: Option<u64>,
    pub theorem_bound: BigRational,
    pub sufficiency_ok: bool,
    /// `n >= c`, the regime where the expectation argument is needed; below
    /// it the theorem bound holds trivially.
    pub argument_applies: bool,
}

pub fn bound_report(r: u64, n: u64, c: Option<u64>) -> Result<BoundReport, BoundsError> {
    let sufficiency_ok = sufficiency_check(r)?;
    let theorem_bound = theorem_bound(r, n)?;
    let c = c.unwrap_or_else(|| construction_colors(r));
    let threshold = if n >= 3 && c >= 2 {
        match threshold_n(n, c) {
            Ok(t) => Some(t),
            Err(BoundsError::Degenerate { .. }) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    Ok(BoundReport {
        r,
        n,
        c,
        expectation: threshold.map(|t| expected_mono_upper(t, n, c)),
        threshold_n: threshold,
        theorem_bound,
        sufficiency_ok,
        argument_applies: n >= c,
    })
}
