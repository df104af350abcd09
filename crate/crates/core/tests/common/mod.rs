//! Brute-force oracles shared by the integration tests. Nothing here uses
//! matching: vertex maps and edge assignments are enumerated directly.

#![allow(dead_code)]

use berge_ramsey::hypergraph::{CompleteColoring, Hypergraph, SimpleGraph};

/// Whether `pattern` has a Berge copy in the hypergraph given by `edges`.
pub fn brute_embeds(vertex_count: usize, edges: &[Vec<usize>], pattern_order: usize, pattern: &[(usize, usize)]) -> bool {
    if pattern_order > vertex_count || pattern.len() > edges.len() {
        return false;
    }
    let mut image = vec![usize::MAX; pattern_order];
    let mut taken = vec![false; vertex_count];
    map_vertices(0, vertex_count, edges, pattern, &mut image, &mut taken)
}

fn map_vertices(i: usize, vertex_count: usize, edges: &[Vec<usize>], pattern: &[(usize, usize)], image: &mut [usize], taken: &mut [bool]) -> bool {
    if i == image.len() {
        let mut used = vec![false; edges.len()];
        return assign(0, edges, pattern, image, &mut used);
    }
    for v in 0..vertex_count {
        if taken[v] {
            continue;
        }
        taken[v] = true;
        image[i] = v;
        let ok = map_vertices(i + 1, vertex_count, edges, pattern, image, taken);
        taken[v] = false;
        if ok {
            return true;
        }
    }
    false
}

fn assign(k: usize, edges: &[Vec<usize>], pattern: &[(usize, usize)], image: &[usize], used: &mut [bool]) -> bool {
    if k == pattern.len() {
        return true;
    }
    let (a, b) = (image[pattern[k].0], image[pattern[k].1]);
    for (j, e) in edges.iter().enumerate() {
        if used[j] || !e.contains(&a) || !e.contains(&b) {
            continue;
        }
        used[j] = true;
        let ok = assign(k + 1, edges, pattern, image, used);
        used[j] = false;
        if ok {
            return true;
        }
    }
    false
}

pub fn edge_lists(h: &Hypergraph) -> Vec<Vec<usize>> {
    h.edges().iter().map(|e| e.vertices()).collect()
}

pub fn brute_embeds_graph(h: &Hypergraph, g: &SimpleGraph) -> bool {
    brute_embeds(h.vertex_count(), &edge_lists(h), g.vertex_count(), g.edges())
}

/// Colors containing a monochromatic Berge-`K_n`, by brute force.
pub fn brute_mono_colors(col: &CompleteColoring, n: usize) -> Vec<u32> {
    let k = SimpleGraph::complete(n);
    (0..col.colors_count())
        .filter(|&chi| {
            let edges: Vec<Vec<usize>> = col.iter().filter(|&(_, x)| x == chi).map(|(e, _)| e.vertices()).collect();
            brute_embeds(col.vertex_count(), &edges, n, k.edges())
        })
        .collect()
}
