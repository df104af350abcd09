//! Berge containment via bipartite matching.
//!
//! A Berge copy of a graph `G` in a hypergraph `H` needs an injective vertex
//! map plus an injective choice of a distinct hyperedge for every edge of
//! `G`. Once the vertex map is fixed, the second half is exactly a matching
//! problem between pattern edges and the hyperedges containing their images,
//! and a Berge copy exists iff that matching saturates the pattern side.

use std::collections::VecDeque;

use rayon::prelude::*;
use thiserror::Error;

use crate::combinat::{choose, mask_of, pair_rank, vertices_of, MaskSubsets, SubsetRank};
use crate::hypergraph::{BergeWitness, Color, CompleteColoring, EdgeIndex, HyperEdge, Hypergraph, HypergraphError, SimpleGraph};

/// Default cap on partial vertex maps explored by [`berge_embeds`].
pub const DEFAULT_EMBED_BUDGET: u64 = 10_000_000;

/// Left sides larger than this use Hopcroft-Karp phases.
const HOPCROFT_KARP_THRESHOLD: usize = 64;

const UNMATCHED: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BergeError {
    #[error("clique order {0} is below 2")]
    OrderTooSmall(usize),
    #[error("color {chi} out of range for {colors} colors")]
    BadColor { chi: Color, colors: Color },
    #[error("core {0:?} is not a strictly increasing subset of the vertex set")]
    BadCore(Vec<usize>),
    #[error("pattern graph has no edges")]
    EmptyPattern,
    #[error("embedding search exceeded its budget of {0} partial vertex maps")]
    TooLarge(u64),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// Left nodes `0..left_count`, each with a duplicate-free list of right
/// node identities. Right identities are arbitrary integers.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BipartiteInstance {
    adjacency: Vec<Vec<usize>>,
}

impl BipartiteInstance {
    /// Duplicates inside an adjacency list are dropped; order of first
    /// appearance is kept.
    pub fn new(mut adjacency: Vec<Vec<usize>>) -> Self {
        for list in &mut adjacency {
            let mut seen = Vec::with_capacity(list.len());
            list.retain(|x| {
                if seen.contains(x) {
                    false
                } else {
                    seen.push(*x);
                    true
                }
            });
        }
        Self { adjacency }
    }

    pub fn left_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub size: usize,
    /// Right identity matched to each left node.
    pub pairing: Vec<Option<usize>>,
}

impl Matching {
    pub fn is_perfect_on_left(&self) -> bool {
        self.size == self.pairing.len()
    }
}

/// Dense relabelling of an instance: right ids become `0..right_count`.
struct Dense {
    adj: Vec<Vec<usize>>,
    right_ids: Vec<usize>,
}

fn densify(instance: &BipartiteInstance) -> Dense {
    let mut right_ids: Vec<usize> = instance.adjacency.iter().flatten().copied().collect();
    right_ids.sort_unstable();
    right_ids.dedup();
    let adj = instance
        .adjacency
        .iter()
        .map(|list| list.iter().map(|x| right_ids.binary_search(x).unwrap()).collect())
        .collect();
    Dense { adj, right_ids }
}

fn into_matching(dense: &Dense, match_left: &[usize]) -> Matching {
    let pairing: Vec<Option<usize>> = match_left
        .iter()
        .map(|&j| (j != UNMATCHED).then(|| dense.right_ids[j]))
        .collect();
    Matching {
        size: pairing.iter().flatten().count(),
        pairing,
    }
}

fn greedy_init(adj: &[Vec<usize>], match_left: &mut [usize], match_right: &mut [usize]) {
    for (i, list) in adj.iter().enumerate() {
        if let Some(&j) = list.iter().find(|&&j| match_right[j] == UNMATCHED) {
            match_left[i] = j;
            match_right[j] = i;
        }
    }
}

fn augment(adj: &[Vec<usize>], i: usize, visited: &mut [bool], match_left: &mut [usize], match_right: &mut [usize]) -> bool {
    for &j in &adj[i] {
        if visited[j] {
            continue;
        }
        visited[j] = true;
        if match_right[j] == UNMATCHED || augment(adj, match_right[j], visited, match_left, match_right) {
            match_left[i] = j;
            match_right[j] = i;
            return true;
        }
    }
    false
}

/// Greedy start followed by one augmenting-path search per free left node.
pub fn augmenting_path_matching(instance: &BipartiteInstance) -> Matching {
    let dense = densify(instance);
    let rights = dense.right_ids.len();
    let mut match_left = vec![UNMATCHED; dense.adj.len()];
    let mut match_right = vec![UNMATCHED; rights];
    greedy_init(&dense.adj, &mut match_left, &mut match_right);
    let mut visited = vec![false; rights];
    for i in 0..dense.adj.len() {
        if match_left[i] == UNMATCHED {
            visited.fill(false);
            augment(&dense.adj, i, &mut visited, &mut match_left, &mut match_right);
        }
    }
    into_matching(&dense, &match_left)
}

/// Hopcroft-Karp: BFS layering from free left nodes, then vertex-disjoint
/// shortest augmenting paths per phase.
pub fn hopcroft_karp(instance: &BipartiteInstance) -> Matching {
    let dense = densify(instance);
    let adj = &dense.adj;
    let left = adj.len();
    let mut match_left = vec![UNMATCHED; left];
    let mut match_right = vec![UNMATCHED; dense.right_ids.len()];
    greedy_init(adj, &mut match_left, &mut match_right);
    let mut dist = vec![0usize; left];

    loop {
        let mut queue = VecDeque::new();
        for i in 0..left {
            if match_left[i] == UNMATCHED {
                dist[i] = 0;
                queue.push_back(i);
            } else {
                dist[i] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(i) = queue.pop_front() {
            for &j in &adj[i] {
                let k = match_right[j];
                if k == UNMATCHED {
                    found = true;
                } else if dist[k] == usize::MAX {
                    dist[k] = dist[i] + 1;
                    queue.push_back(k);
                }
            }
        }
        if !found {
            break;
        }
        for i in 0..left {
            if match_left[i] == UNMATCHED {
                layered_augment(adj, i, &mut dist, &mut match_left, &mut match_right);
            }
        }
    }
    into_matching(&dense, &match_left)
}

fn layered_augment(adj: &[Vec<usize>], i: usize, dist: &mut [usize], match_left: &mut [usize], match_right: &mut [usize]) -> bool {
    for &j in &adj[i] {
        let k = match_right[j];
        if k == UNMATCHED || (dist[k] == dist[i] + 1 && layered_augment(adj, k, dist, match_left, match_right)) {
            match_left[i] = j;
            match_right[j] = i;
            return true;
        }
    }
    dist[i] = usize::MAX;
    false
}

/// Maximum matching; the algorithm is chosen by instance size.
pub fn max_matching(instance: &BipartiteInstance) -> Matching {
    if instance.left_count() > HOPCROFT_KARP_THRESHOLD {
        hopcroft_karp(instance)
    } else {
        augmenting_path_matching(instance)
    }
}

/// Looks for a Berge copy of `K_n` on the core `core_mask` using only edges
/// whose rank satisfies `in_class`. Returns `(pair rank, edge rank)` per
/// core pair, pairs in colex order.
pub(crate) fn clique_in_class(index: &EdgeIndex, core_mask: u64, in_class: impl Fn(usize) -> bool) -> Option<Vec<(usize, usize)>> {
    let core = vertices_of(core_mask);
    let mut pairs = Vec::with_capacity(core.len() * core.len() / 2);
    let mut adjacency = Vec::with_capacity(pairs.capacity());
    for (b, &v) in core.iter().enumerate() {
        for &u in &core[..b] {
            let p = pair_rank(u, v);
            let candidates: Vec<usize> = index
                .edges_through(p)
                .iter()
                .map(|&e| e as usize)
                .filter(|&e| in_class(e))
                .collect();
            if candidates.is_empty() {
                return None;
            }
            pairs.push(p);
            adjacency.push(candidates);
        }
    }
    // pairs come out ordered by (v, u), which is pair colex order
    let m = max_matching(&BipartiteInstance { adjacency });
    if !m.is_perfect_on_left() {
        return None;
    }
    Some(pairs.into_iter().zip(m.pairing.into_iter().map(Option::unwrap)).collect())
}

fn witness_from(index: &EdgeIndex, core_mask: u64, chi: Color, assignment: Vec<(usize, usize)>) -> BergeWitness {
    BergeWitness {
        core: vertices_of(core_mask),
        assignment: assignment
            .into_iter()
            .map(|(p, e)| (crate::combinat::pair_unrank(p), index.edge(e)))
            .collect(),
        color: Some(chi),
    }
}

fn check_color(coloring: &CompleteColoring, chi: Color) -> Result<(), BergeError> {
    if chi >= coloring.colors_count() {
        return Err(BergeError::BadColor {
            chi,
            colors: coloring.colors_count(),
        });
    }
    Ok(())
}

/// Monochromatic Berge-`K_n` of color `chi` whose core is exactly `core`.
pub fn mono_berge_clique_on(coloring: &CompleteColoring, core: &[usize], chi: Color) -> Result<Option<BergeWitness>, BergeError> {
    check_color(coloring, chi)?;
    if core.len() < 2 {
        return Err(BergeError::OrderTooSmall(core.len()));
    }
    if core.windows(2).any(|w| w[0] >= w[1]) || core.last().is_some_and(|&v| v >= coloring.vertex_count()) {
        return Err(BergeError::BadCore(core.to_vec()));
    }
    let index = EdgeIndex::new(coloring.vertex_count(), coloring.uniformity())?;
    let mask = mask_of(core);
    Ok(clique_in_class(&index, mask, |e| coloring.color_at(e) == chi).map(|a| witness_from(&index, mask, chi, a)))
}

/// Scans colors, then cores in colex order, and returns the first
/// monochromatic Berge-`K_n`. `None` means no color class contains one.
pub fn find_mono_berge_clique(coloring: &CompleteColoring, n: usize) -> Result<Option<BergeWitness>, BergeError> {
    let index = prepare_scan(coloring, n)?;
    let Some(index) = index else { return Ok(None) };
    let needed = choose(n, 2) as usize;
    for chi in 0..coloring.colors_count() {
        if coloring.class_size(chi) < needed {
            continue;
        }
        for core in MaskSubsets::new(coloring.vertex_count(), n) {
            if let Some(a) = clique_in_class(&index, core, |e| coloring.color_at(e) == chi) {
                return Ok(Some(witness_from(&index, core, chi, a)));
            }
        }
    }
    Ok(None)
}

fn prepare_scan(coloring: &CompleteColoring, n: usize) -> Result<Option<EdgeIndex>, BergeError> {
    if n < 2 {
        return Err(BergeError::OrderTooSmall(n));
    }
    if n > coloring.vertex_count() {
        return Ok(None);
    }
    Ok(Some(EdgeIndex::new(coloring.vertex_count(), coloring.uniformity())?))
}

/// Same result as [`find_mono_berge_clique`], with the `(color, core rank)`
/// range split into chunks scanned on the rayon pool. The leftmost hit wins,
/// so the witness does not depend on scheduling.
pub fn find_mono_berge_clique_par(coloring: &CompleteColoring, n: usize, chunks_per_color: usize) -> Result<Option<BergeWitness>, BergeError> {
    let Some(index) = prepare_scan(coloring, n)? else { return Ok(None) };
    let needed = choose(n, 2) as usize;
    let total = choose(coloring.vertex_count(), n);
    let per = total.div_ceil(chunks_per_color.max(1) as u64).max(1);
    let mut jobs = Vec::new();
    for chi in 0..coloring.colors_count() {
        if coloring.class_size(chi) < needed {
            continue;
        }
        let mut start = 0;
        while start < total {
            jobs.push((chi, start, per.min(total - start)));
            start += per;
        }
    }
    let found = jobs.into_par_iter().find_map_first(|(chi, start, len)| {
        let rank = SubsetRank::new(start, n, coloring.vertex_count()).ok()?;
        MaskSubsets::starting_at(rank)
            .ok()?
            .take(len as usize)
            .find_map(|core| clique_in_class(&index, core, |e| coloring.color_at(e) == chi).map(|a| witness_from(&index, core, chi, a)))
    });
    Ok(found)
}

/// A Berge copy of a graph: vertex images and one distinct hyperedge per
/// pattern edge (in the pattern's edge order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BergeEmbedding {
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<HyperEdge>,
}

impl BergeEmbedding {
    pub fn is_valid(&self, host: &Hypergraph, pattern: &SimpleGraph) -> bool {
        let mut images = self.vertex_map.clone();
        images.sort_unstable();
        images.dedup();
        let mut edges = self.edge_map.clone();
        edges.sort_unstable();
        edges.dedup();
        self.vertex_map.len() == pattern.vertex_count()
            && images.len() == self.vertex_map.len()
            && self.vertex_map.iter().all(|&v| v < host.vertex_count())
            && self.edge_map.len() == pattern.edges().len()
            && edges.len() == self.edge_map.len()
            && self.edge_map.iter().all(|e| host.edges().contains(e))
            && pattern
                .edges()
                .iter()
                .zip(&self.edge_map)
                .all(|(&(u, v), e)| e.contains_pair(self.vertex_map[u], self.vertex_map[v]))
    }
}

struct EmbedSearch<'a> {
    host: &'a Hypergraph,
    pattern: &'a SimpleGraph,
    /// For each host vertex, the vertices sharing at least one edge with it.
    shadow: Vec<u64>,
    /// Pattern edges `(earlier, later)` grouped by their later endpoint.
    back_edges: Vec<Vec<usize>>,
    images: Vec<usize>,
    used: u64,
    visited: u64,
    budget: u64,
}

impl EmbedSearch<'_> {
    fn run(&mut self, depth: usize) -> Result<Option<BergeEmbedding>, BergeError> {
        if depth == self.pattern.vertex_count() {
            return Ok(self.match_edges());
        }
        for v in 0..self.host.vertex_count() {
            if self.used & (1 << v) != 0 {
                continue;
            }
            if !self.back_edges[depth].iter().all(|&u| self.shadow[self.images[u]] & (1 << v) != 0) {
                continue;
            }
            self.visited += 1;
            if self.visited > self.budget {
                return Err(BergeError::TooLarge(self.budget));
            }
            self.images.push(v);
            self.used |= 1 << v;
            let found = self.run(depth + 1)?;
            self.used &= !(1 << v);
            self.images.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    fn match_edges(&self) -> Option<BergeEmbedding> {
        let adjacency = self
            .pattern
            .edges()
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (self.images[u], self.images[v]);
                self.host
                    .edges()
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| e.contains_pair(a, b))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let m = max_matching(&BipartiteInstance { adjacency });
        m.is_perfect_on_left().then(|| BergeEmbedding {
            vertex_map: self.images.clone(),
            edge_map: m.pairing.iter().map(|j| self.host.edges()[j.unwrap()]).collect(),
        })
    }
}

/// Searches for a Berge copy of `pattern` in `host` with the default budget.
pub fn berge_embeds(host: &Hypergraph, pattern: &SimpleGraph) -> Result<Option<BergeEmbedding>, BergeError> {
    berge_embeds_with_budget(host, pattern, DEFAULT_EMBED_BUDGET)
}

/// Enumerates injective vertex maps in lexicographic order, pruning a
/// partial map as soon as some mapped pattern edge has no host edge through
/// both images, and settles each complete map by matching.
pub fn berge_embeds_with_budget(host: &Hypergraph, pattern: &SimpleGraph, budget: u64) -> Result<Option<BergeEmbedding>, BergeError> {
    if pattern.edges().is_empty() {
        return Err(BergeError::EmptyPattern);
    }
    if host.edge_count() < pattern.edges().len() || host.vertex_count() < pattern.vertex_count() {
        return Ok(None);
    }
    let mut shadow = vec![0u64; host.vertex_count()];
    for e in host.edges() {
        for v in e.vertices() {
            shadow[v] |= e.mask() & !(1 << v);
        }
    }
    let mut back_edges = vec![Vec::new(); pattern.vertex_count()];
    for &(u, v) in pattern.edges() {
        back_edges[v].push(u);
    }
    let mut search = EmbedSearch {
        host,
        pattern,
        shadow,
        back_edges,
        images: Vec::with_capacity(pattern.vertex_count()),
        used: 0,
        visited: 0,
        budget,
    };
    search.run(0)
}
