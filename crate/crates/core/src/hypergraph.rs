//! Data model: hyperedges, general hypergraphs and graphs, forbidden-color
//! tables, and colorings of the complete `r`-uniform hypergraph `K_N^r`.
//!
//! Tables indexed by subsets are dense and ordered by colex rank.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::combinat::{self, choose, mask_of, pair_rank, rank_mask, vertices_of, MaskSubsets};

pub type Color = u32;

/// Upper bound on `C(N, r)` for a stored coloring.
pub const MAX_EDGES: u64 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("N = {0} exceeds the supported maximum of 64 vertices")]
    TooManyVertices(usize),
    #[error("C({n}, {r}) = {count} edges exceeds the storage limit")]
    TooManyEdges { n: usize, r: usize, count: u64 },
    #[error("color {chi} out of range for {colors} colors")]
    BadColor { chi: Color, colors: Color },
    #[error("bad vertex pair ({0}, {1})")]
    BadPair(usize, usize),
    #[error("bad hyperedge: {0}")]
    BadEdge(String),
    #[error("invariant violated: {0}")]
    Invalid(Violation),
}

/// The first invariant an object breaks, with the offending index if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub invariant: &'static str,
    pub index: Option<usize>,
    pub detail: String,
}

impl Violation {
    fn new(invariant: &'static str, index: Option<usize>, detail: impl Into<String>) -> Self {
        Self {
            invariant,
            index,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            Some(i) => write!(f, "{} at index {}: {}", self.invariant, i, self.detail),
            None => write!(f, "{}: {}", self.invariant, self.detail),
        }
    }
}

pub trait Validate {
    fn validate(&self) -> Result<(), Violation>;
}

fn check_vertex_count(n: usize) -> Result<(), HypergraphError> {
    if n > combinat::MAX_UNIVERSE {
        Err(HypergraphError::TooManyVertices(n))
    } else {
        Ok(())
    }
}

/// A hyperedge, held as a vertex bitmask. Masks compare in colex order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HyperEdge(u64);

impl HyperEdge {
    /// Builds an edge from a strictly increasing vertex tuple.
    pub fn new(vertices: &[usize]) -> Result<Self, HypergraphError> {
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(HypergraphError::BadEdge(format!("{vertices:?} is not strictly increasing")));
        }
        if vertices.last().is_some_and(|&v| v >= combinat::MAX_UNIVERSE) {
            return Err(HypergraphError::BadEdge(format!("{vertices:?} has a vertex >= 64")));
        }
        Ok(Self(mask_of(vertices)))
    }

    #[inline]
    pub const fn from_mask(mask: u64) -> Self {
        Self(mask)
    }

    #[inline]
    pub const fn mask(self) -> u64 {
        self.0
    }

    pub fn vertices(self) -> Vec<usize> {
        vertices_of(self.0)
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn contains(self, v: usize) -> bool {
        v < 64 && self.0 & (1 << v) != 0
    }

    #[inline]
    pub const fn contains_pair(self, u: usize, v: usize) -> bool {
        self.contains(u) && self.contains(v)
    }

    /// Colex rank among edges of the same size.
    #[inline]
    pub fn rank(self) -> u64 {
        rank_mask(self.0)
    }

    /// Smallest universe containing this edge.
    pub fn span(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }
}

impl fmt::Debug for HyperEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.vertices()).finish()
    }
}

/// A host hypergraph; edges need not be uniform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    vertex_count: usize,
    edges: Vec<HyperEdge>,
}

impl Hypergraph {
    pub fn new(vertex_count: usize, edges: Vec<HyperEdge>) -> Result<Self, HypergraphError> {
        check_vertex_count(vertex_count)?;
        let h = Self::from_raw_parts(vertex_count, edges);
        h.validate().map_err(HypergraphError::Invalid)?;
        Ok(h)
    }

    /// Skips validation; use [`Validate::validate`] before trusting the result.
    pub fn from_raw_parts(vertex_count: usize, edges: Vec<HyperEdge>) -> Self {
        Self {
            vertex_count,
            edges,
        }
    }

    /// `K_N^r` with edges in colex order.
    pub fn complete(n: usize, r: usize) -> Result<Self, HypergraphError> {
        check_vertex_count(n)?;
        let edges = MaskSubsets::new(n, r).map(HyperEdge).collect();
        Ok(Self::from_raw_parts(n, edges))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[HyperEdge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Common edge size, if every edge has the same size.
    pub fn uniformity(&self) -> Option<usize> {
        let first = self.edges.first()?.len();
        self.edges.iter().all(|e| e.len() == first).then_some(first)
    }

    pub fn without_edge(&self, index: usize) -> Self {
        let mut edges = self.edges.clone();
        edges.remove(index);
        Self::from_raw_parts(self.vertex_count, edges)
    }
}

impl Validate for Hypergraph {
    fn validate(&self) -> Result<(), Violation> {
        if self.vertex_count > combinat::MAX_UNIVERSE {
            return Err(Violation::new("vertex-cap", None, format!("N = {}", self.vertex_count)));
        }
        let mut seen = HashSet::with_capacity(self.edges.len());
        for (i, e) in self.edges.iter().enumerate() {
            if e.span() > self.vertex_count {
                return Err(Violation::new("range", Some(i), format!("{e:?} exceeds N = {}", self.vertex_count)));
            }
            if !seen.insert(*e) {
                return Err(Violation::new("duplicate", Some(i), format!("{e:?} repeated")));
            }
        }
        Ok(())
    }
}

/// A simple graph: no loops, no repeated pairs. Pairs are stored as `(lo, hi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self, HypergraphError> {
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v || u >= vertex_count || v >= vertex_count {
                return Err(HypergraphError::BadPair(u, v));
            }
            let p = (u.min(v), u.max(v));
            if !seen.insert(p) {
                return Err(HypergraphError::BadPair(u, v));
            }
            out.push(p);
        }
        Ok(Self {
            vertex_count,
            edges: out,
        })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        Self {
            vertex_count: n,
            edges,
        }
    }

    pub fn path(edge_count: usize) -> Self {
        Self {
            vertex_count: edge_count + 1,
            edges: (0..edge_count).map(|i| (i, i + 1)).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

/// One forbidden color per unordered vertex pair, indexed by pair colex rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenTable {
    vertex_count: usize,
    colors_count: Color,
    colors: Vec<Color>,
}

impl ForbiddenTable {
    pub fn new(vertex_count: usize, colors_count: Color, colors: Vec<Color>) -> Result<Self, HypergraphError> {
        check_vertex_count(vertex_count)?;
        let t = Self::from_raw_parts(vertex_count, colors_count, colors);
        t.validate().map_err(HypergraphError::Invalid)?;
        Ok(t)
    }

    pub fn from_raw_parts(vertex_count: usize, colors_count: Color, colors: Vec<Color>) -> Self {
        Self {
            vertex_count,
            colors_count,
            colors,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn colors_count(&self) -> Color {
        self.colors_count
    }

    /// Entries in pair colex order.
    pub fn entries(&self) -> &[Color] {
        &self.colors
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Color {
        self.colors[pair_rank(u, v)]
    }

    #[inline]
    pub fn get_rank(&self, rank: usize) -> Color {
        self.colors[rank]
    }

    pub(crate) fn set_rank(&mut self, rank: usize, chi: Color) {
        self.colors[rank] = chi;
    }

    pub fn pair_count(&self) -> usize {
        self.colors.len()
    }
}

impl Validate for ForbiddenTable {
    fn validate(&self) -> Result<(), Violation> {
        if self.vertex_count > combinat::MAX_UNIVERSE {
            return Err(Violation::new("vertex-cap", None, format!("N = {}", self.vertex_count)));
        }
        let expected = choose(self.vertex_count, 2) as usize;
        if self.colors.len() != expected {
            return Err(Violation::new(
                "length",
                None,
                format!("{} entries, expected C({}, 2) = {expected}", self.colors.len(), self.vertex_count),
            ));
        }
        if let Some(i) = self.colors.iter().position(|&x| x >= self.colors_count) {
            return Err(Violation::new(
                "color-range",
                Some(i),
                format!("{} >= c = {}", self.colors[i], self.colors_count),
            ));
        }
        Ok(())
    }
}

/// A `c`-coloring of every `r`-subset of `[0, N)`, indexed by colex rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompleteColoring {
    vertex_count: usize,
    uniformity: usize,
    colors_count: Color,
    colors: Vec<Color>,
}

impl CompleteColoring {
    pub fn new(vertex_count: usize, uniformity: usize, colors_count: Color, colors: Vec<Color>) -> Result<Self, HypergraphError> {
        check_edge_space(vertex_count, uniformity)?;
        let c = Self::from_raw_parts(vertex_count, uniformity, colors_count, colors);
        c.validate().map_err(HypergraphError::Invalid)?;
        Ok(c)
    }

    pub fn from_raw_parts(vertex_count: usize, uniformity: usize, colors_count: Color, colors: Vec<Color>) -> Self {
        Self {
            vertex_count,
            uniformity,
            colors_count,
            colors,
        }
    }

    /// Every edge gets color `chi`.
    pub fn constant(vertex_count: usize, uniformity: usize, colors_count: Color, chi: Color) -> Result<Self, HypergraphError> {
        if chi >= colors_count {
            return Err(HypergraphError::BadColor { chi, colors: colors_count });
        }
        check_edge_space(vertex_count, uniformity)?;
        let m = choose(vertex_count, uniformity) as usize;
        Ok(Self::from_raw_parts(vertex_count, uniformity, colors_count, vec![chi; m]))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn uniformity(&self) -> usize {
        self.uniformity
    }

    pub fn colors_count(&self) -> Color {
        self.colors_count
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn edge_count(&self) -> usize {
        self.colors.len()
    }

    #[inline]
    pub fn color_at(&self, rank: usize) -> Color {
        self.colors[rank]
    }

    #[inline]
    pub fn color_of(&self, edge: HyperEdge) -> Color {
        self.colors[edge.rank() as usize]
    }

    pub fn class_size(&self, chi: Color) -> usize {
        self.colors.iter().filter(|&&x| x == chi).count()
    }

    /// Edges paired with their colors, in colex order.
    pub fn iter(&self) -> impl Iterator<Item = (HyperEdge, Color)> + '_ {
        MaskSubsets::new(self.vertex_count, self.uniformity)
            .zip(self.colors.iter().copied())
            .map(|(m, chi)| (HyperEdge(m), chi))
    }
}

pub(crate) fn check_edge_space(n: usize, r: usize) -> Result<(), HypergraphError> {
    check_vertex_count(n)?;
    let count = choose(n, r);
    if count > MAX_EDGES {
        return Err(HypergraphError::TooManyEdges { n, r, count });
    }
    Ok(())
}

impl Validate for CompleteColoring {
    fn validate(&self) -> Result<(), Violation> {
        if self.vertex_count > combinat::MAX_UNIVERSE {
            return Err(Violation::new("vertex-cap", None, format!("N = {}", self.vertex_count)));
        }
        let expected = choose(self.vertex_count, self.uniformity) as usize;
        if self.colors.len() != expected {
            return Err(Violation::new(
                "length",
                None,
                format!(
                    "{} entries, expected C({}, {}) = {expected}",
                    self.colors.len(),
                    self.vertex_count,
                    self.uniformity
                ),
            ));
        }
        if let Some(i) = self.colors.iter().position(|&x| x >= self.colors_count) {
            return Err(Violation::new(
                "color-range",
                Some(i),
                format!("{} >= c = {}", self.colors[i], self.colors_count),
            ));
        }
        Ok(())
    }
}

/// Incidence structure of `K_N^r`: edge masks by rank, and for every pair
/// the colex-sorted ranks of edges containing it.
#[derive(Debug, Clone)]
pub struct EdgeIndex {
    vertex_count: usize,
    uniformity: usize,
    edge_masks: Vec<u64>,
    pair_edges: Vec<Vec<u32>>,
}

impl EdgeIndex {
    pub fn new(vertex_count: usize, uniformity: usize) -> Result<Self, HypergraphError> {
        check_edge_space(vertex_count, uniformity)?;
        let edge_masks: Vec<u64> = MaskSubsets::new(vertex_count, uniformity).collect();
        let mut pair_edges = vec![Vec::new(); choose(vertex_count, 2) as usize];
        if uniformity >= 2 {
            for (rank, &m) in edge_masks.iter().enumerate() {
                let vs = vertices_of(m);
                for (j, &v) in vs.iter().enumerate() {
                    for &u in &vs[..j] {
                        pair_edges[pair_rank(u, v)].push(rank as u32);
                    }
                }
            }
        }
        Ok(Self {
            vertex_count,
            uniformity,
            edge_masks,
            pair_edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn uniformity(&self) -> usize {
        self.uniformity
    }

    pub fn edge_count(&self) -> usize {
        self.edge_masks.len()
    }

    #[inline]
    pub fn edge(&self, rank: usize) -> HyperEdge {
        HyperEdge(self.edge_masks[rank])
    }

    /// Ranks of edges containing the pair with colex rank `pair`.
    #[inline]
    pub fn edges_through(&self, pair: usize) -> &[u32] {
        &self.pair_edges[pair]
    }
}

/// The `r`-edges containing `{u, v}` whose color is `chi`, in colex order.
pub fn pair_star(coloring: &CompleteColoring, u: usize, v: usize, chi: Color) -> Result<Vec<HyperEdge>, HypergraphError> {
    if chi >= coloring.colors_count {
        return Err(HypergraphError::BadColor { chi, colors: coloring.colors_count });
    }
    let n = coloring.vertex_count;
    if u == v || u >= n || v >= n {
        return Err(HypergraphError::BadPair(u, v));
    }
    let r = coloring.uniformity;
    if r < 2 {
        return Ok(Vec::new());
    }
    let pair = (1u64 << u) | (1u64 << v);
    let rest: Vec<usize> = (0..n).filter(|&x| x != u && x != v).collect();
    let mut out: Vec<HyperEdge> = MaskSubsets::new(rest.len(), r - 2)
        .map(|m| {
            vertices_of(m)
                .into_iter()
                .fold(pair, |acc, i| acc | (1u64 << rest[i]))
        })
        .map(HyperEdge)
        .filter(|e| coloring.color_of(*e) == chi)
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Certificate of a Berge copy of `K_n`: core vertices and an injective
/// assignment of core pairs to hyperedges containing them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BergeWitness {
    pub core: Vec<usize>,
    /// `((u, v), edge)` with `u < v`, in pair colex order.
    pub assignment: Vec<((usize, usize), HyperEdge)>,
    pub color: Option<Color>,
}

impl BergeWitness {
    /// Structural checks: sorted core, one entry per core pair, containment,
    /// injectivity.
    pub fn validate_structure(&self) -> Result<(), Violation> {
        if self.core.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Violation::new("core-sorted", None, format!("{:?}", self.core)));
        }
        let n = self.core.len();
        let expected = n * n.saturating_sub(1) / 2;
        if self.assignment.len() != expected {
            return Err(Violation::new(
                "pair-count",
                None,
                format!("{} assigned pairs, expected {expected}", self.assignment.len()),
            ));
        }
        let core: HashSet<usize> = self.core.iter().copied().collect();
        let mut pairs = HashSet::new();
        let mut used = HashSet::new();
        for (i, &((u, v), e)) in self.assignment.iter().enumerate() {
            if u >= v || !core.contains(&u) || !core.contains(&v) {
                return Err(Violation::new("pair", Some(i), format!("({u}, {v}) is not a core pair")));
            }
            if !pairs.insert((u, v)) {
                return Err(Violation::new("pair-duplicate", Some(i), format!("({u}, {v})")));
            }
            if !e.contains_pair(u, v) {
                return Err(Violation::new("containment", Some(i), format!("{e:?} misses ({u}, {v})")));
            }
            if !used.insert(e) {
                return Err(Violation::new("injective", Some(i), format!("{e:?} used twice")));
            }
        }
        Ok(())
    }

    /// Structural checks plus: every assigned edge is an `r`-edge of the
    /// coloring's host and carries the witness color.
    pub fn validate_against(&self, coloring: &CompleteColoring) -> Result<(), Violation> {
        self.validate_structure()?;
        let n = coloring.vertex_count();
        for (i, &(_, e)) in self.assignment.iter().enumerate() {
            if e.len() != coloring.uniformity() || e.span() > n {
                return Err(Violation::new("host-edge", Some(i), format!("{e:?} is not an edge of K_{n}^{}", coloring.uniformity())));
            }
            if let Some(chi) = self.color {
                if coloring.color_of(e) != chi {
                    return Err(Violation::new("color", Some(i), format!("{e:?} has color {}, expected {chi}", coloring.color_of(e))));
                }
            }
        }
        Ok(())
    }

    pub fn edges(&self) -> Vec<HyperEdge> {
        self.assignment.iter().map(|&(_, e)| e).collect()
    }
}
