//! Brute-force oracles and random graph generators shared by the
//! integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rigidity_core::{Graph, Vertex};

/// Vertex subsets with at least two elements.
fn subsets(vs: &[Vertex]) -> Vec<BTreeSet<Vertex>> {
    (1u32..(1 << vs.len()))
        .filter(|m| m.count_ones() >= 2)
        .map(move |m| {
            vs.iter()
                .enumerate()
                .filter(|(i, _)| m & (1 << i) != 0)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

fn induced_edges(g: &Graph, s: &BTreeSet<Vertex>) -> usize {
    g.edges()
        .iter()
        .filter(|e| s.contains(&e.lo()) && s.contains(&e.hi()))
        .count()
}

/// Every vertex subset spans at most `2|S| - 3` edges.
pub fn brute_sparse(g: &Graph) -> bool {
    let vs: Vec<Vertex> = g.vertices().iter().copied().collect();
    subsets(&vs)
        .into_iter()
        .all(|s| induced_edges(g, &s) + 3 <= 2 * s.len())
}

pub fn brute_tight(g: &Graph) -> bool {
    brute_sparse(g) && (g.vertex_count() == 1 || g.edge_count() + 3 == 2 * g.vertex_count())
}

/// Vertex sets of the maximal tight subgraphs with at least one edge, sorted.
pub fn brute_max_tight(g: &Graph) -> Vec<BTreeSet<Vertex>> {
    let vs: Vec<Vertex> = g.vertices().iter().copied().collect();
    let tight: Vec<BTreeSet<Vertex>> = subsets(&vs)
        .into_iter()
        .filter(|s| induced_edges(g, s) + 3 == 2 * s.len())
        .collect();
    let mut maximal: Vec<BTreeSet<Vertex>> = tight
        .iter()
        .filter(|s| !tight.iter().any(|t| t.len() > s.len() && s.is_subset(t)))
        .cloned()
        .collect();
    maximal.sort();
    maximal
}

/// Random simple graph on `1..=max_n` vertices labelled from 0.
pub fn random_graph(rng: &mut impl Rng, max_n: usize) -> Graph {
    let n = rng.gen_range(1..=max_n);
    let p: f64 = rng.gen_range(0.2..0.9);
    let mut edges = Vec::new();
    for u in 0..n as Vertex {
        for v in u + 1..n as Vertex {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(0..n as Vertex, edges).unwrap()
}

/// Random tight graph on `n >= 2` vertices built by Henneberg moves.
pub fn random_tight(rng: &mut impl Rng, n: usize) -> Graph {
    let mut g = Graph::from_edges([(0, 1)]).unwrap();
    for v in 2..n as Vertex {
        let mut old: Vec<Vertex> = g.vertices().iter().copied().collect();
        old.shuffle(rng);
        if v >= 3 && rng.gen_bool(0.5) {
            let edges: Vec<_> = g.edges().iter().copied().collect();
            let e = *edges.choose(rng).unwrap();
            let a = *old.iter().find(|&&a| !e.contains(a)).unwrap();
            g = g
                .without_edge(e)
                .with_edge(v, e.lo())
                .unwrap()
                .with_edge(v, e.hi())
                .unwrap()
                .with_edge(v, a)
                .unwrap();
        } else {
            g = g
                .with_edge(v, old[0])
                .unwrap()
                .with_edge(v, old[1])
                .unwrap();
        }
    }
    g
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Upper bound on the realization count of a tight graph with `n >= 2`
/// vertices.
pub fn count_bound(n: usize) -> u64 {
    let n = n as u64;
    binomial(2 * n - 4, n - 2)
}
