//! The random forbidden-color construction and its derandomization.
//!
//! Every vertex pair gets a forbidden color; an `r`-edge may take any color
//! not forbidden on one of its `C(r, 2)` pairs. A monochromatic Berge-`K_n`
//! of color `chi` with core `S` needs `chi` to be allowed on every pair of
//! `S`, so the number of such "compatible" `(S, chi)` bounds the number of
//! monochromatic Berge cliques in any rule-respecting coloring.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::berge::{find_mono_berge_clique, BergeError};
use crate::bounds::expected_mono_upper;
use crate::combinat::{choose, pair_rank, vertices_of, MaskSubsets};
use crate::hypergraph::{check_edge_space, BergeWitness, Color, CompleteColoring, ForbiddenTable, HypergraphError};

/// Stream domains keep the per-pair, per-edge and per-trial draws apart.
const EDGE_DOMAIN: u64 = 0x5bd1_e995_9e37_79b9;
const TRIAL_DOMAIN: u64 = 0xc2b2_ae3d_27d4_eb4f;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("uniformity r = {r} must satisfy 2 <= r <= N = {n}")]
    BadUniformity { r: usize, n: usize },
    #[error("need {needed} colors or more, got {colors}")]
    BadColorCount { colors: Color, needed: Color },
    #[error("clique order {n} must satisfy 2 <= n")]
    BadOrder { n: usize },
    #[error("every color is forbidden on some pair of edge {0:?}")]
    NoAllowedColor(Vec<usize>),
    #[error("preference list is not a permutation of 0..{0}")]
    BadPolicy(Color),
    #[error("at least one trial is required")]
    ZeroTrials,
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Berge(#[from] BergeError),
}

/// How an edge picks among its allowed colors.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ColoringPolicy {
    #[default]
    LeastAllowed,
    RandomAllowed { seed: u64 },
    /// First allowed color in the given order.
    FixedPreference(Vec<Color>),
}

impl ColoringPolicy {
    pub fn validate(&self, colors: Color) -> Result<(), ConstructError> {
        if let Self::FixedPreference(order) = self {
            let mut seen = vec![false; colors as usize];
            if order.len() != colors as usize {
                return Err(ConstructError::BadPolicy(colors));
            }
            for &x in order {
                if x >= colors || std::mem::replace(&mut seen[x as usize], true) {
                    return Err(ConstructError::BadPolicy(colors));
                }
            }
        }
        Ok(())
    }

    /// Same policy with a fresh seed for trial `index`.
    fn for_trial(&self, index: u64) -> Self {
        match self {
            Self::RandomAllowed { seed } => Self::RandomAllowed {
                seed: derive_seed(*seed, EDGE_DOMAIN, index),
            },
            other => other.clone(),
        }
    }
}

/// Keyed draw: one ChaCha stream per `(seed, domain, index)`.
fn keyed_rng(seed: u64, domain: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ domain);
    rng.set_stream(index);
    rng
}

fn derive_seed(seed: u64, domain: u64, index: u64) -> u64 {
    keyed_rng(seed, domain, index).gen()
}

/// Uniform forbidden colors, one independent draw per pair keyed by
/// `(seed, pair rank)`; the table does not depend on generation order.
pub fn random_forbidden(n: usize, colors: Color, seed: u64) -> Result<ForbiddenTable, ConstructError> {
    if colors == 0 {
        return Err(ConstructError::BadColorCount { colors, needed: 1 });
    }
    let pairs = choose(n.min(64), 2) as usize;
    let entries = (0..pairs)
        .map(|p| keyed_rng(seed, 0, p as u64).gen_range(0..colors))
        .collect();
    Ok(ForbiddenTable::new(n, colors, entries)?)
}

/// Colors every `r`-edge with a color that is not forbidden on any of its
/// pairs, choosing among the allowed colors by `policy`.
pub fn respecting_coloring(forbidden: &ForbiddenTable, r: usize, policy: &ColoringPolicy) -> Result<CompleteColoring, ConstructError> {
    let (colors, _) = color_edges(forbidden, r, policy, false)?;
    Ok(CompleteColoring::new(forbidden.vertex_count(), r, forbidden.colors_count(), colors)?)
}

/// Like [`respecting_coloring`], but an edge whose pairs forbid every color
/// gets the policy's first color anyway. Returns the ranks of such edges,
/// which break the rule.
pub fn lenient_coloring(forbidden: &ForbiddenTable, r: usize, policy: &ColoringPolicy) -> Result<(CompleteColoring, Vec<usize>), ConstructError> {
    let (colors, violations) = color_edges(forbidden, r, policy, true)?;
    let col = CompleteColoring::new(forbidden.vertex_count(), r, forbidden.colors_count(), colors)?;
    Ok((col, violations))
}

fn color_edges(forbidden: &ForbiddenTable, r: usize, policy: &ColoringPolicy, lenient: bool) -> Result<(Vec<Color>, Vec<usize>), ConstructError> {
    let n = forbidden.vertex_count();
    let colors = forbidden.colors_count();
    if r < 2 || r > n {
        return Err(ConstructError::BadUniformity { r, n });
    }
    policy.validate(colors)?;
    check_edge_space(n, r)?;
    let fallback = match policy {
        ColoringPolicy::FixedPreference(order) => order[0],
        _ => 0,
    };
    let mut blocked = vec![false; colors as usize];
    let mut touched = Vec::with_capacity(r * r);
    let mut out = Vec::with_capacity(choose(n, r) as usize);
    let mut violations = Vec::new();
    for (rank, mask) in MaskSubsets::new(n, r).enumerate() {
        let vs = vertices_of(mask);
        for (j, &v) in vs.iter().enumerate() {
            for &u in &vs[..j] {
                let x = forbidden.get(u, v);
                if !std::mem::replace(&mut blocked[x as usize], true) {
                    touched.push(x);
                }
            }
        }
        let allowed = colors as usize - touched.len();
        let pick = match policy {
            _ if allowed == 0 => None,
            ColoringPolicy::LeastAllowed => (0..colors).find(|&x| !blocked[x as usize]),
            ColoringPolicy::FixedPreference(order) => order.iter().copied().find(|&x| !blocked[x as usize]),
            ColoringPolicy::RandomAllowed { seed } => {
                let k = keyed_rng(*seed, EDGE_DOMAIN, rank as u64).gen_range(0..allowed);
                (0..colors).filter(|&x| !blocked[x as usize]).nth(k)
            }
        };
        for x in touched.drain(..) {
            blocked[x as usize] = false;
        }
        match pick {
            Some(chi) => out.push(chi),
            None if lenient => {
                violations.push(rank);
                out.push(fallback);
            }
            None => return Err(ConstructError::NoAllowedColor(vs)),
        }
    }
    Ok((out, violations))
}

/// Number of `(S, chi)` with `|S| = n` such that `chi` is not forbidden on
/// any pair inside `S`.
pub fn compatible_count(forbidden: &ForbiddenTable, n: usize) -> u128 {
    let big_n = forbidden.vertex_count();
    let colors = forbidden.colors_count();
    if n > big_n {
        return 0;
    }
    let mut blocked = vec![false; colors as usize];
    let mut touched = Vec::new();
    let mut total = 0u128;
    for core in MaskSubsets::new(big_n, n) {
        let vs = vertices_of(core);
        for (j, &v) in vs.iter().enumerate() {
            for &u in &vs[..j] {
                let x = forbidden.get(u, v);
                if !std::mem::replace(&mut blocked[x as usize], true) {
                    touched.push(x);
                }
            }
        }
        total += (colors as usize - touched.len()) as u128;
        for x in touched.drain(..) {
            blocked[x as usize] = false;
        }
    }
    total
}

/// A derandomized forbidden table together with its survival count.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub forbidden: ForbiddenTable,
    pub n: usize,
    pub compatible_count: u128,
    pub initial_expectation: BigRational,
}

impl Certificate {
    /// Recomputes the count and checks both certificate invariants.
    pub fn verify(&self) -> bool {
        let recount = compatible_count(&self.forbidden, self.n);
        recount == self.compatible_count && (self.initial_expectation >= BigRational::one() || recount == 0)
    }

    /// True when no rule-respecting coloring built on this table can contain
    /// a monochromatic Berge-`K_n`.
    pub fn is_certifying(&self) -> bool {
        self.compatible_count == 0
    }
}

/// Result of [`derandomize_forbidden_traced`]: the certificate and the value
/// of the conditional expectation after each fixed pair (index 0 is the
/// unconditioned value).
#[derive(Debug, Clone)]
pub struct DerandomizeTrace {
    pub certificate: Certificate,
    pub phi: Vec<BigRational>,
}

pub fn derandomize_forbidden(big_n: usize, n: usize, colors: Color) -> Result<Certificate, ConstructError> {
    derandomize_forbidden_traced(big_n, n, colors).map(|t| t.certificate)
}

/// Method of conditional expectations over the pair colors in colex order.
///
/// `Phi = sum over (S, chi) of prod over pairs p of S of f(p, chi)`, where
/// `f = (c-1)/c` for an unfixed pair, `1` for a fixed pair whose color is not
/// `chi`, and `0` otherwise. Fixing pair `p` to `x` only changes the terms
/// with `S` containing `p`; the color with the smallest new `Phi` is kept
/// (lowest index on ties). All arithmetic is exact: every term is scaled by
/// `c^C(n,2)` so it becomes the integer `(c-1)^u * c^(C(n,2)-u)`.
pub fn derandomize_forbidden_traced(big_n: usize, n: usize, colors: Color) -> Result<DerandomizeTrace, ConstructError> {
    if colors < 2 {
        return Err(ConstructError::BadColorCount { colors, needed: 2 });
    }
    if n < 2 {
        return Err(ConstructError::BadOrder { n });
    }
    if big_n > 64 {
        return Err(HypergraphError::TooManyVertices(big_n).into());
    }
    let c = colors as usize;
    let m = n * (n - 1) / 2;
    // scaled[k] = (c-1)^k * c^(m-k)
    let scaled: Vec<BigInt> = (0..=m)
        .map(|k| num_traits::pow(BigInt::from(c - 1), k) * num_traits::pow(BigInt::from(c), m - k))
        .collect();
    let scale = BigRational::from_integer(num_traits::pow(BigInt::from(c), m));
    let initial_expectation = expected_mono_upper(big_n as u64, n as u64, colors as u64);

    let pair_count = choose(big_n, 2) as usize;
    let mut table = ForbiddenTable::new(big_n, colors, vec![0; pair_count])?;
    let phi_scaled = &initial_expectation * &scale;
    debug_assert!(phi_scaled.is_integer());
    let mut phi_scaled = phi_scaled.to_integer();
    let mut phi = vec![initial_expectation.clone()];

    let mut blocked = vec![false; c];
    let mut touched = Vec::new();
    let mut gain = vec![BigInt::zero(); c];

    for rank in 0..pair_count {
        let (a, b) = crate::combinat::pair_unrank(rank);
        let others: Vec<usize> = (0..big_n).filter(|&x| x != a && x != b).collect();
        let mut old = BigInt::zero();
        let mut base = BigInt::zero();
        gain.iter_mut().for_each(|g| g.set_zero());
        if n <= big_n {
            for rest in MaskSubsets::new(others.len(), n - 2) {
                let mut vs: Vec<usize> = vertices_of(rest).into_iter().map(|i| others[i]).collect();
                vs.push(a);
                vs.push(b);
                vs.sort_unstable();
                let mut unfixed = 0;
                for (j, &v) in vs.iter().enumerate() {
                    for &u in &vs[..j] {
                        let p = pair_rank(u, v);
                        if p >= rank {
                            unfixed += 1;
                        } else {
                            let x = table.get_rank(p) as usize;
                            if !std::mem::replace(&mut blocked[x], true) {
                                touched.push(x);
                            }
                        }
                    }
                }
                let alive = c - touched.len();
                if alive > 0 {
                    old += &scaled[unfixed] * alive;
                    let after = &scaled[unfixed - 1];
                    base += after * alive;
                    for (x, g) in gain.iter_mut().enumerate() {
                        if !blocked[x] {
                            *g += after;
                        }
                    }
                }
                for x in touched.drain(..) {
                    blocked[x] = false;
                }
            }
        }
        // new contribution when p gets color x: base - gain[x]
        let (best, best_gain) = gain
            .iter()
            .enumerate()
            .fold((0, &gain[0]), |acc, (x, g)| if g > acc.1 { (x, g) } else { acc });
        let new = &base - best_gain;
        assert!(new <= old, "conditional expectation increased at pair {rank}");
        phi_scaled = phi_scaled - &old + new;
        table.set_rank(rank, best as Color);
        phi.push(BigRational::new(phi_scaled.clone(), scale.to_integer()));
    }

    let compatible = compatible_count(&table, n);
    assert_eq!(
        BigInt::from(compatible) * scale.to_integer(),
        phi_scaled,
        "final conditional expectation must equal the surviving count"
    );
    Ok(DerandomizeTrace {
        certificate: Certificate {
            forbidden: table,
            n,
            compatible_count: compatible,
            initial_expectation,
        },
        phi,
    })
}

/// Outcome of one random construction.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub forbidden: ForbiddenTable,
    /// `None` when some edge had no allowed color.
    pub coloring: Option<CompleteColoring>,
    pub witness: Option<BergeWitness>,
}

/// One pass of random table, rule-respecting coloring, and clique scan.
pub fn run_trial(big_n: usize, n: usize, r: usize, colors: Color, seed: u64, policy: &ColoringPolicy) -> Result<TrialOutcome, ConstructError> {
    let forbidden = random_forbidden(big_n, colors, seed)?;
    let coloring = match respecting_coloring(&forbidden, r, policy) {
        Ok(col) => col,
        Err(ConstructError::NoAllowedColor(_)) => {
            return Ok(TrialOutcome {
                forbidden,
                coloring: None,
                witness: None,
            })
        }
        Err(e) => return Err(e),
    };
    let witness = find_mono_berge_clique(&coloring, n)?;
    Ok(TrialOutcome {
        forbidden,
        coloring: Some(coloring),
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloEstimate {
    pub trials: u64,
    /// Trials whose coloring contained a monochromatic Berge-`K_n`.
    pub hits: u64,
    /// Trials where some edge had no allowed color; counted as non-hits.
    pub infeasible: u64,
    pub fraction: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

/// Wilson score interval at 95%.
pub fn wilson_interval(hits: u64, trials: u64) -> (f64, f64) {
    const Z: f64 = 1.959_963_984_540_054;
    let n = trials as f64;
    let p = hits as f64 / n;
    let denom = 1.0 + Z * Z / n;
    let centre = (p + Z * Z / (2.0 * n)) / denom;
    let half = Z * (p * (1.0 - p) / n + Z * Z / (4.0 * n * n)).sqrt() / denom;
    let low = if hits == 0 { 0.0 } else { (centre - half).max(0.0) };
    let high = if hits == trials { 1.0 } else { (centre + half).min(1.0) };
    (low, high)
}

/// Seed used by trial `index` of a run keyed by `seed`.
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    derive_seed(seed, TRIAL_DOMAIN, index)
}

/// Fraction of independent constructions that contain a monochromatic
/// Berge-`K_n`. Trials run on `workers` threads; the count is independent
/// of scheduling.
#[allow(clippy::too_many_arguments)]
pub fn estimate_mono_probability(
    big_n: usize,
    n: usize,
    r: usize,
    colors: Color,
    trials: u64,
    seed: u64,
    policy: &ColoringPolicy,
    workers: usize,
) -> Result<MonteCarloEstimate, ConstructError> {
    use rayon::prelude::*;

    if trials == 0 {
        return Err(ConstructError::ZeroTrials);
    }
    policy.validate(colors)?;
    let one = |i: u64| -> Result<(u64, u64), ConstructError> {
        let out = run_trial(big_n, n, r, colors, trial_seed(seed, i), &policy.for_trial(i))?;
        Ok((out.witness.is_some() as u64, out.coloring.is_none() as u64))
    };
    let reduce = |a: (u64, u64), b: (u64, u64)| (a.0 + b.0, a.1 + b.1);
    let (hits, infeasible) = if workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool");
        pool.install(|| {
            (0..trials)
                .into_par_iter()
                .map(one)
                .try_reduce(|| (0, 0), |a, b| Ok(reduce(a, b)))
        })?
    } else {
        (0..trials).map(one).try_fold((0, 0), |acc, x| x.map(|x| reduce(acc, x)))?
    };
    let (ci_low, ci_high) = wilson_interval(hits, trials);
    Ok(MonteCarloEstimate {
        trials,
        hits,
        infeasible,
        fraction: hits as f64 / trials as f64,
        ci_low,
        ci_high,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::subsets;

    fn table3(entries: [Color; 3], colors: Color) -> ForbiddenTable {
        ForbiddenTable::new(3, colors, entries.to_vec()).unwrap()
    }

    #[test]
    fn random_forbidden_domain_and_determinism() {
        for seed in 0..50 {
            let t = random_forbidden(2, 4, seed).unwrap();
            assert_eq!(t.entries().len(), 1);
            assert!(t.entries()[0] < 4);
        }
        assert_eq!(random_forbidden(20, 7, 99).unwrap(), random_forbidden(20, 7, 99).unwrap());
        assert_ne!(random_forbidden(20, 7, 99).unwrap(), random_forbidden(20, 7, 100).unwrap());
        // keyed by pair rank: a smaller universe is a prefix of a larger one
        let small = random_forbidden(6, 5, 3).unwrap();
        let big = random_forbidden(9, 5, 3).unwrap();
        assert_eq!(small.entries(), &big.entries()[..15]);
    }

    #[test]
    fn random_forbidden_is_uniform() {
        // chi-square with 3 degrees of freedom; 99% critical value 11.345
        let mut counts = [0u64; 4];
        let seeds = 100_000u64;
        for seed in 0..seeds {
            counts[random_forbidden(4, 4, seed).unwrap().get(1, 3) as usize] += 1;
        }
        let expected = seeds as f64 / 4.0;
        let stat: f64 = counts.iter().map(|&o| (o as f64 - expected).powi(2) / expected).sum();
        assert!(stat < 11.345, "chi-square {stat}, counts {counts:?}");
    }

    #[test]
    fn respecting_examples() {
        let t = table3([0, 1, 2], 4);
        let col = respecting_coloring(&t, 3, &ColoringPolicy::LeastAllowed).unwrap();
        assert_eq!(col.colors(), &[3]);
        let t = table3([0, 1, 2], 3);
        assert_eq!(
            respecting_coloring(&t, 3, &ColoringPolicy::LeastAllowed),
            Err(ConstructError::NoAllowedColor(vec![0, 1, 2]))
        );
        let t = ForbiddenTable::new(6, 4, vec![0; 15]).unwrap();
        let col = respecting_coloring(&t, 3, &ColoringPolicy::LeastAllowed).unwrap();
        assert!(col.colors().iter().all(|&x| x == 1));
        assert!(matches!(
            respecting_coloring(&t, 7, &ColoringPolicy::LeastAllowed),
            Err(ConstructError::BadUniformity { .. })
        ));
        assert!(matches!(
            respecting_coloring(&t, 3, &ColoringPolicy::FixedPreference(vec![0, 1, 1, 2])),
            Err(ConstructError::BadPolicy(4))
        ));
        let col = respecting_coloring(&t, 3, &ColoringPolicy::FixedPreference(vec![3, 0, 1, 2])).unwrap();
        assert!(col.colors().iter().all(|&x| x == 3));
    }

    #[test]
    fn lenient_marks_violations() {
        let t = ForbiddenTable::new(5, 1, vec![0; 10]).unwrap();
        let (col, bad) = lenient_coloring(&t, 3, &ColoringPolicy::LeastAllowed).unwrap();
        assert_eq!(bad.len(), 10);
        assert_eq!(col.class_size(0), 10);
        let t = random_forbidden(9, 4, 8).unwrap();
        let (col, bad) = lenient_coloring(&t, 3, &ColoringPolicy::LeastAllowed).unwrap();
        assert!(bad.is_empty());
        assert_eq!(col, respecting_coloring(&t, 3, &ColoringPolicy::LeastAllowed).unwrap());
    }

    #[test]
    fn rule_holds_exhaustively() {
        let policies = [
            ColoringPolicy::LeastAllowed,
            ColoringPolicy::RandomAllowed { seed: 5 },
            ColoringPolicy::FixedPreference(vec![2, 3, 1, 0]),
        ];
        for big_n in 3..=12 {
            for seed in 0..3 {
                let t = random_forbidden(big_n, 4, seed).unwrap();
                for policy in &policies {
                    let col = respecting_coloring(&t, 3, policy).unwrap();
                    for (edge, chi) in col.iter() {
                        for p in subsets(3, 2) {
                            let vs = edge.vertices();
                            assert_ne!(t.get(vs[p[0]], vs[p[1]]), chi);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn random_policy_varies_and_repeats() {
        let t = ForbiddenTable::new(8, 6, vec![0; 28]).unwrap();
        let a = respecting_coloring(&t, 3, &ColoringPolicy::RandomAllowed { seed: 1 }).unwrap();
        let b = respecting_coloring(&t, 3, &ColoringPolicy::RandomAllowed { seed: 1 }).unwrap();
        let c = respecting_coloring(&t, 3, &ColoringPolicy::RandomAllowed { seed: 2 }).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.colors().iter().all(|&x| x != 0));
    }

    /// Direct definition: iterate over every (S, chi).
    fn compatible_oracle(t: &ForbiddenTable, n: usize) -> u128 {
        let mut total = 0;
        for s in subsets(t.vertex_count(), n) {
            for chi in 0..t.colors_count() {
                if subsets(n, 2).all(|p| t.get(s[p[0]], s[p[1]]) != chi) {
                    total += 1;
                }
            }
        }
        total
    }

    #[test]
    fn compatible_examples() {
        assert_eq!(compatible_count(&table3([0, 0, 0], 2), 3), 1);
        assert_eq!(compatible_count(&table3([0, 1, 0], 2), 3), 0);
        assert_eq!(compatible_count(&table3([0, 1, 0], 2), 4), 0);
        for seed in 0..10 {
            let t = random_forbidden(8, 3, seed).unwrap();
            for n in 2..=5 {
                assert_eq!(compatible_count(&t, n), compatible_oracle(&t, n));
            }
        }
    }

    #[test]
    fn derandomize_examples() {
        let trace = derandomize_forbidden_traced(3, 3, 2).unwrap();
        let cert = &trace.certificate;
        assert_eq!(cert.initial_expectation, crate::combinat::ratio(1, 4));
        assert_eq!(cert.compatible_count, 0);
        assert_eq!(cert.forbidden.entries(), &[0, 1, 0]);
        assert!(cert.verify());

        let cert = derandomize_forbidden(7, 6, 4).unwrap();
        assert!(cert.initial_expectation < BigRational::one());
        assert_eq!(cert.compatible_count, 0);
        assert!(cert.verify());

        let cert = derandomize_forbidden(4, 6, 3).unwrap();
        assert_eq!(cert.compatible_count, 0);
        assert!(cert.initial_expectation.is_zero());
        assert!(derandomize_forbidden(5, 3, 1).is_err());
    }

    #[test]
    fn derandomize_is_monotone() {
        for (big_n, n, c) in [(6, 3, 2), (8, 4, 3), (9, 5, 4), (10, 4, 2), (7, 3, 5)] {
            let trace = derandomize_forbidden_traced(big_n, n, c).unwrap();
            assert_eq!(trace.phi.len(), choose(big_n, 2) as usize + 1);
            for w in trace.phi.windows(2) {
                assert!(w[1] <= w[0]);
            }
            let cert = &trace.certificate;
            assert_eq!(
                BigRational::from_integer(BigInt::from(cert.compatible_count)),
                *trace.phi.last().unwrap()
            );
            assert!(cert.verify());
        }
    }

    #[test]
    fn wilson_bounds() {
        let (lo, hi) = wilson_interval(0, 100);
        assert_eq!(lo, 0.0);
        assert!((hi - 0.036_994).abs() < 1e-5);
        let (lo, hi) = wilson_interval(50, 100);
        assert!(lo < 0.5 && hi > 0.5);
    }

    #[test]
    fn estimate_examples() {
        let p = ColoringPolicy::LeastAllowed;
        let e = estimate_mono_probability(3, 4, 3, 4, 20, 1, &p, 1).unwrap();
        assert_eq!(e.hits, 0);
        let e = estimate_mono_probability(3, 3, 3, 4, 100, 1, &p, 1).unwrap();
        assert_eq!((e.hits, e.fraction), (0, 0.0));
        let a = estimate_mono_probability(8, 4, 3, 4, 200, 17, &p, 1).unwrap();
        let b = estimate_mono_probability(8, 4, 3, 4, 200, 17, &p, 4).unwrap();
        assert_eq!(a, b);
        assert!((0.0..=1.0).contains(&a.fraction));
        assert!(a.ci_low <= a.fraction && a.fraction <= a.ci_high);
        assert_eq!(
            estimate_mono_probability(8, 4, 3, 4, 0, 17, &p, 1),
            Err(ConstructError::ZeroTrials)
        );
        let e = estimate_mono_probability(6, 3, 3, 3, 30, 2, &p, 2).unwrap();
        assert!(e.infeasible > 0);
    }
}
