//! Exact small Berge-Ramsey numbers by backtracking over edge colorings.
//!
//! Edges of `K_N^r` are colored in colex order. A branch is dropped as soon
//! as the color class that just grew contains a monochromatic Berge-`K_n`:
//! adding edges never destroys a witness, so no extension of that partial
//! coloring can be a counterexample.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::berge::{clique_in_class, find_mono_berge_clique, BergeError};
use crate::combinat::{choose, MaskSubsets};
use crate::hypergraph::{Color, CompleteColoring, EdgeIndex, HypergraphError};

/// Default refusal threshold on `c^(edges - 1)` nominal leaves.
pub const DEFAULT_MAX_NOMINAL_LEAVES: u128 = 1 << 48;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search space of {nominal} nominal leaves exceeds the budget of {cap}")]
    BudgetExceeded { nominal: String, cap: u128 },
    #[error("search visited more than {0} nodes")]
    NodeBudgetExceeded(u64),
    #[error("invalid parameters: {0}")]
    BadParameters(String),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Berge(#[from] BergeError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_nominal_leaves: u128,
    /// Fix the first edge's color to 0 (color-permutation symmetry).
    pub fix_first_color: bool,
    pub node_budget: Option<u64>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            max_nominal_leaves: DEFAULT_MAX_NOMINAL_LEAVES,
            fix_first_color: true,
            node_budget: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    /// Every `c`-coloring of `K_N^r` contains a monochromatic Berge-`K_n`.
    pub arrowing: bool,
    /// A coloring with no monochromatic Berge-`K_n`, when one exists.
    pub counterexample: Option<CompleteColoring>,
    /// Partial colorings visited.
    pub explored: u64,
}

struct Backtrack<'a> {
    index: &'a EdgeIndex,
    n: usize,
    needed: usize,
    colors_count: Color,
    cores: Vec<u64>,
    colors: Vec<Color>,
    class_size: Vec<usize>,
    explored: u64,
    config: &'a SearchConfig,
}

impl Backtrack<'_> {
    /// Whether coloring edge `e` with `chi` completes a witness. Any new
    /// witness has to use `e` on a core pair inside `e`.
    fn closes_witness(&self, e: usize, chi: Color) -> bool {
        if self.class_size[chi as usize] < self.needed {
            return false;
        }
        let edge = self.index.edge(e).mask();
        let colors = &self.colors;
        self.cores
            .iter()
            .filter(|&&s| (s & edge).count_ones() >= 2)
            .any(|&s| clique_in_class(self.index, s, |x| x <= e && colors[x] == chi).is_some())
    }

    fn run(&mut self, e: usize) -> Result<bool, SearchError> {
        if e == self.colors.len() {
            return Ok(true);
        }
        let top = if e == 0 && self.config.fix_first_color { 1 } else { self.colors_count };
        for chi in 0..top {
            self.explored += 1;
            if let Some(cap) = self.config.node_budget {
                if self.explored > cap {
                    return Err(SearchError::NodeBudgetExceeded(cap));
                }
            }
            self.colors[e] = chi;
            self.class_size[chi as usize] += 1;
            let dead = self.n <= self.index.vertex_count() && self.closes_witness(e, chi);
            if !dead && self.run(e + 1)? {
                return Ok(true);
            }
            self.class_size[chi as usize] -= 1;
        }
        Ok(false)
    }
}

fn nominal_leaves(edges: u64, colors: Color, fix_first: bool) -> BigUint {
    let free = if fix_first { edges.saturating_sub(1) } else { edges };
    num_traits::pow(BigUint::from(colors), free as usize)
}

/// Decides whether every `c`-coloring of `K_N^r` contains a monochromatic
/// Berge-`K_n`. For `N < r` there are no edges and the answer is `false`,
/// witnessed by the empty coloring.
pub fn ramsey_decide(r: usize, c: Color, n: usize, big_n: usize, config: &SearchConfig) -> Result<SearchOutcome, SearchError> {
    if c == 0 || n < 2 || r < 1 {
        return Err(SearchError::BadParameters(format!("need c >= 1, n >= 2, r >= 1; got r = {r}, c = {c}, n = {n}")));
    }
    if big_n > crate::combinat::MAX_UNIVERSE {
        return Err(HypergraphError::TooManyVertices(big_n).into());
    }
    if big_n < r {
        return Ok(SearchOutcome {
            arrowing: false,
            counterexample: Some(CompleteColoring::new(big_n, r, c, Vec::new())?),
            explored: 0,
        });
    }
    let edges = choose(big_n, r);
    let nominal = nominal_leaves(edges, c, config.fix_first_color);
    if nominal > BigUint::from(config.max_nominal_leaves) {
        return Err(SearchError::BudgetExceeded {
            nominal: nominal.to_string(),
            cap: config.max_nominal_leaves,
        });
    }
    let index = EdgeIndex::new(big_n, r)?;
    let cores = if n <= big_n { MaskSubsets::new(big_n, n).collect() } else { Vec::new() };
    let mut bt = Backtrack {
        index: &index,
        n,
        needed: choose(n, 2) as usize,
        colors_count: c,
        cores,
        colors: vec![0; edges as usize],
        class_size: vec![0; c as usize],
        explored: 0,
        config,
    };
    let found = bt.run(0)?;
    let counterexample = if found {
        let col = CompleteColoring::new(big_n, r, c, bt.colors.clone())?;
        assert!(
            find_mono_berge_clique(&col, n)?.is_none(),
            "search returned a coloring that contains a monochromatic Berge clique"
        );
        Some(col)
    } else {
        None
    };
    Ok(SearchOutcome {
        arrowing: !found,
        counterexample,
        explored: bt.explored,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum ExactValue {
    /// Least arrowing `N`.
    Found(usize),
    /// No `N <= N_max` arrows.
    NotFoundBelow(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactSearch {
    pub value: ExactValue,
    /// One entry per `N` tried, in increasing order.
    pub steps: Vec<(usize, SearchOutcome)>,
}

impl ExactSearch {
    pub fn explored(&self) -> u64 {
        self.steps.iter().map(|(_, o)| o.explored).sum()
    }
}

/// Least `N` in `n..=N_max` for which [`ramsey_decide`] arrows.
pub fn ramsey_number_exact(r: usize, c: Color, n: usize, n_max: usize, config: &SearchConfig) -> Result<ExactSearch, SearchError> {
    let mut steps = Vec::new();
    for big_n in n..=n_max {
        let out = ramsey_decide(r, c, n, big_n, config)?;
        let arrows = out.arrowing;
        steps.push((big_n, out));
        if arrows {
            return Ok(ExactSearch {
                value: ExactValue::Found(big_n),
                steps,
            });
        }
    }
    Ok(ExactSearch {
        value: ExactValue::NotFoundBelow(n_max),
        steps,
    })
}

/// `c^(C(N, r) - 1)` as a float, for reporting.
pub fn nominal_leaf_count(r: usize, c: Color, big_n: usize) -> f64 {
    let edges = choose(big_n.min(64), r);
    nominal_leaves(edges, c, true).to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn decide(r: usize, c: Color, n: usize, big_n: usize) -> SearchOutcome {
        ramsey_decide(r, c, n, big_n, &SearchConfig::default()).unwrap()
    }

    #[test]
    fn decide_examples() {
        assert!(decide(3, 1, 3, 4).arrowing);
        let o = decide(3, 1, 3, 3);
        assert!(!o.arrowing);
        assert_eq!(o.counterexample.unwrap().colors(), &[0]);
        let o = decide(3, 2, 3, 4);
        assert!(!o.arrowing);
        let col = o.counterexample.unwrap();
        assert_eq!(col.class_size(0), 2);
        assert!(decide(3, 2, 3, 6).arrowing);
    }

    #[test]
    fn below_uniformity_is_not_arrowing() {
        let o = decide(5, 2, 3, 4);
        assert!(!o.arrowing);
        assert_eq!(o.counterexample.unwrap().edge_count(), 0);
    }

    #[test]
    fn exact_examples() {
        let cfg = SearchConfig::default();
        let s = ramsey_number_exact(3, 2, 3, 6, &cfg).unwrap();
        assert_eq!(s.value, ExactValue::Found(5));
        assert_eq!(s.steps.len(), 3);
        let s = ramsey_number_exact(3, 1, 3, 3, &cfg).unwrap();
        assert_eq!(s.value, ExactValue::NotFoundBelow(3));
    }

    #[test]
    fn symmetry_does_not_change_verdicts() {
        let free = SearchConfig {
            fix_first_color: false,
            ..SearchConfig::default()
        };
        for (r, c, n, big_n) in [(3, 2, 3, 4), (3, 2, 3, 5), (3, 3, 3, 5), (2, 2, 3, 5), (2, 2, 3, 6), (4, 2, 3, 5), (3, 1, 4, 5)] {
            let a = decide(r, c, n, big_n);
            let b = ramsey_decide(r, c, n, big_n, &free).unwrap();
            assert_eq!(a.arrowing, b.arrowing, "({r},{c},{n},{big_n})");
        }
    }

    #[test]
    fn graph_case_is_classical_ramsey() {
        // for r = 2 a Berge-K_n is a K_n, so R(3,3) = 6
        let s = ramsey_number_exact(2, 2, 3, 6, &SearchConfig::default()).unwrap();
        assert_eq!(s.value, ExactValue::Found(6));
    }

    #[test]
    fn budgets() {
        let err = ramsey_decide(5, 2, 9, 9, &SearchConfig::default()).unwrap_err();
        assert!(matches!(err, SearchError::BudgetExceeded { .. }));
        let tight = SearchConfig {
            node_budget: Some(10),
            ..SearchConfig::default()
        };
        assert_eq!(
            ramsey_decide(3, 2, 3, 6, &tight),
            Err(SearchError::NodeBudgetExceeded(10))
        );
    }
}
