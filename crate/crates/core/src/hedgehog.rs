//! Hedgehogs: a body of `n` vertices and one private spine vertex per body
//! pair, with the 3-edge `{u, v, spine(uv)}` for every body pair.

use thiserror::Error;

use crate::berge::{berge_embeds, BergeEmbedding, BergeError};
use crate::combinat::{choose, subsets, MAX_UNIVERSE};
use crate::hypergraph::{HyperEdge, Hypergraph, SimpleGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HedgehogError {
    #[error("body order {0} is below 2")]
    TooSmall(usize),
    #[error("body order {n} needs {vertices} vertices, above the cap of 64")]
    TooLarge { n: usize, vertices: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hedgehog {
    body_order: usize,
    hypergraph: Hypergraph,
}

impl Hedgehog {
    pub fn body_order(&self) -> usize {
        self.body_order
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.hypergraph
    }

    pub fn body(&self) -> std::ops::Range<usize> {
        0..self.body_order
    }

    pub fn spine(&self) -> std::ops::Range<usize> {
        self.body_order..self.hypergraph.vertex_count()
    }

    /// Spine vertex of the body pair with colex rank `pair`.
    pub fn spine_of(&self, pair: usize) -> usize {
        self.body_order + pair
    }

    /// Checks the defining properties edge by edge.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.body_order;
        let h = &self.hypergraph;
        let m = choose(n, 2) as usize;
        if h.vertex_count() != n + m {
            return Err(format!("{} vertices, expected {}", h.vertex_count(), n + m));
        }
        if h.edge_count() != m {
            return Err(format!("{} edges, expected {m}", h.edge_count()));
        }
        for pair in subsets(n, 2) {
            let through = h.edges().iter().filter(|e| e.contains_pair(pair[0], pair[1])).count();
            if through != 1 {
                return Err(format!("body pair {pair:?} lies in {through} edges"));
            }
        }
        for s in self.spine() {
            let degree = h.edges().iter().filter(|e| e.contains(s)).count();
            if degree != 1 {
                return Err(format!("spine vertex {s} lies in {degree} edges"));
            }
        }
        if h.edges().iter().any(|e| e.len() != 3) {
            return Err("edge of size other than 3".into());
        }
        Ok(())
    }
}

/// Body `{0..n-1}`; the pair with colex rank `j` gets spine vertex `n + j`.
pub fn build_hedgehog(n: usize) -> Result<Hedgehog, HedgehogError> {
    if n < 2 {
        return Err(HedgehogError::TooSmall(n));
    }
    let vertices = n + n * (n - 1) / 2;
    if vertices > MAX_UNIVERSE {
        return Err(HedgehogError::TooLarge { n, vertices });
    }
    let edges = subsets(n, 2)
        .enumerate()
        .map(|(j, p)| HyperEdge::new(&[p[0], p[1], n + j]).expect("sorted triple"))
        .collect();
    Ok(Hedgehog {
        body_order: n,
        hypergraph: Hypergraph::from_raw_parts(vertices, edges),
    })
}

/// The embedding that maps the body identically and each pair to its own
/// edge. Pattern edges follow [`SimpleGraph::complete`] order, which is
/// pair colex order.
pub fn canonical_embedding(h: &Hedgehog) -> BergeEmbedding {
    BergeEmbedding {
        vertex_map: h.body().collect(),
        edge_map: h.hypergraph.edges().to_vec(),
    }
}

/// Whether the hedgehog is a Berge copy of `K_n`, returning the canonical
/// embedding after checking it and confirming with the general search.
pub fn is_berge_clique(h: &Hedgehog) -> Result<Option<BergeEmbedding>, BergeError> {
    let pattern = SimpleGraph::complete(h.body_order);
    let canonical = canonical_embedding(h);
    if !canonical.is_valid(&h.hypergraph, &pattern) {
        return Ok(None);
    }
    match berge_embeds(&h.hypergraph, &pattern)? {
        Some(_) => Ok(Some(canonical)),
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Validate;

    #[test]
    fn small_hedgehogs() {
        let h = build_hedgehog(2).unwrap();
        assert_eq!(h.hypergraph().vertex_count(), 3);
        assert_eq!(h.hypergraph().edges(), &[HyperEdge::new(&[0, 1, 2]).unwrap()]);
        let h = build_hedgehog(3).unwrap();
        assert_eq!((h.hypergraph().vertex_count(), h.hypergraph().edge_count()), (6, 3));
        let h = build_hedgehog(4).unwrap();
        assert_eq!((h.hypergraph().vertex_count(), h.hypergraph().edge_count()), (10, 6));
        assert_eq!(h.spine_of(5), 9);
        assert_eq!(build_hedgehog(1), Err(HedgehogError::TooSmall(1)));
        assert_eq!(build_hedgehog(10).unwrap().hypergraph().vertex_count(), 55);
        assert_eq!(build_hedgehog(11), Err(HedgehogError::TooLarge { n: 11, vertices: 66 }));
    }

    #[test]
    fn invariants_and_clique_property() {
        for n in 2..=8 {
            let h = build_hedgehog(n).unwrap();
            assert_eq!(h.hypergraph().validate(), Ok(()));
            assert_eq!(h.check_invariants(), Ok(()));
            let e = is_berge_clique(&h).unwrap().expect("hedgehog is a Berge clique");
            assert_eq!(e, canonical_embedding(&h));
            let found = berge_embeds(h.hypergraph(), &SimpleGraph::complete(n)).unwrap().unwrap();
            assert_eq!(found, canonical_embedding(&h));
        }
    }

    #[test]
    fn missing_edge_breaks_it() {
        let h = build_hedgehog(4).unwrap();
        let cut = h.hypergraph().without_edge(2);
        assert_eq!(berge_embeds(&cut, &SimpleGraph::complete(4)).unwrap(), None);
        let broken = Hedgehog {
            body_order: 4,
            hypergraph: cut,
        };
        assert!(broken.check_invariants().is_err());
        assert_eq!(is_berge_clique(&broken).unwrap(), None);
    }
}
