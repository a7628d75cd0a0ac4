//! (2,3)-sparsity via the pebble game, and the max-tight decomposition.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::{Edge, Error, Graph, Result, Vertex};

const PEBBLES_PER_VERTEX: u8 = 2;
// An edge is independent iff l + 1 = 4 pebbles can be gathered on its ends.
const GATHER_TARGET: u8 = 4;

/// The (2,3) pebble game on a fixed vertex set.
///
/// Accepted edges are kept as directed edges; a vertex owns its remaining
/// pebbles plus one pebble per out-edge.
#[derive(Debug, Clone)]
pub struct PebbleGame {
    index: BTreeMap<Vertex, usize>,
    pebbles: Vec<u8>,
    out: Vec<Vec<usize>>,
}

impl PebbleGame {
    pub fn new(vertices: &BTreeSet<Vertex>) -> Self {
        let n = vertices.len();
        PebbleGame {
            index: vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect(),
            pebbles: vec![PEBBLES_PER_VERTEX; n],
            out: vec![Vec::new(); n],
        }
    }

    /// Moves one pebble to `target` along a reversed path, never touching `blocked`.
    fn fetch_pebble(&mut self, target: usize, blocked: usize) -> bool {
        let n = self.pebbles.len();
        let mut parent = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[target] = true;
        seen[blocked] = true;
        let mut stack = vec![target];
        while let Some(v) = stack.pop() {
            for &w in &self.out[v] {
                if seen[w] {
                    continue;
                }
                seen[w] = true;
                parent[w] = v;
                if self.pebbles[w] > 0 {
                    // Reverse the path target -> ... -> w.
                    self.pebbles[w] -= 1;
                    let mut cur = w;
                    while cur != target {
                        let p = parent[cur];
                        let pos = self.out[p].iter().position(|&x| x == cur).unwrap();
                        self.out[p].swap_remove(pos);
                        self.out[cur].push(p);
                        cur = p;
                    }
                    self.pebbles[target] += 1;
                    return true;
                }
                stack.push(w);
            }
        }
        false
    }

    /// Gathers as many pebbles as possible on `u` and `v`; returns the total.
    fn gather(&mut self, u: usize, v: usize) -> u8 {
        while self.pebbles[u] < PEBBLES_PER_VERTEX && self.fetch_pebble(u, v) {}
        while self.pebbles[v] < PEBBLES_PER_VERTEX && self.fetch_pebble(v, u) {}
        self.pebbles[u] + self.pebbles[v]
    }

    fn idx(&self, v: Vertex) -> Result<usize> {
        self.index.get(&v).copied().ok_or(Error::UnknownVertex(v))
    }

    /// Inserts `e` if it is independent of the accepted edges.
    pub fn try_insert(&mut self, e: Edge) -> Result<bool> {
        let (u, v) = (self.idx(e.lo())?, self.idx(e.hi())?);
        if self.gather(u, v) < GATHER_TARGET {
            return Ok(false);
        }
        self.pebbles[u] -= 1;
        self.out[u].push(v);
        Ok(true)
    }

    /// True when `{x,y}` lies in the span of the accepted edges, i.e. adding
    /// it would violate the count on some subgraph.
    ///
    /// Pebbles may be rearranged but the game stays valid.
    pub fn is_spanned(&mut self, x: Vertex, y: Vertex) -> Result<bool> {
        let (u, v) = (self.idx(x)?, self.idx(y)?);
        if u == v {
            return Err(Error::Loop(x));
        }
        Ok(self.gather(u, v) < GATHER_TARGET)
    }
}

/// Runs the pebble game over all edges; `None` if some edge is rejected.
pub fn pebble_game(g: &Graph) -> Option<PebbleGame> {
    let mut game = PebbleGame::new(g.vertices());
    for &e in g.edges() {
        if !game.try_insert(e).expect("edge endpoints are vertices") {
            return None;
        }
    }
    Some(game)
}

/// Every subgraph on at least two vertices has at most `2|V'| - 3` edges.
pub fn is_sparse(g: &Graph) -> bool {
    pebble_game(g).is_some()
}

/// Sparse and either a single vertex or exactly `2|V| - 3` edges.
pub fn is_tight(g: &Graph) -> bool {
    let n = g.vertex_count();
    (n == 1 || (n >= 2 && g.edge_count() == 2 * n - 3)) && is_sparse(g)
}

/// One max-tight subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightPart {
    pub vertices: BTreeSet<Vertex>,
    pub edges: BTreeSet<Edge>,
}

impl TightPart {
    pub fn graph(&self) -> Graph {
        Graph::from_sets(self.vertices.clone(), self.edges.clone())
    }

    pub fn is_single_vertex(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn is_single_edge(&self) -> bool {
        self.edges.len() == 1
    }
}

/// The max-tight decomposition of a sparse graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightDecomposition {
    pub parts: Vec<TightPart>,
    pub indices: BTreeMap<Edge, usize>,
}

impl TightDecomposition {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part_of(&self, e: Edge) -> Option<usize> {
        self.indices.get(&e).copied()
    }
}

/// Computes the unique max-tight decomposition.
///
/// For an edge `{u,v}` of a sparse graph, its max-tight part consists of `u`,
/// `v` and every `w` with both `{u,w}` and `{v,w}` spanned. Parts are ordered
/// by their smallest edge; isolated vertices come last as single-vertex parts.
pub fn max_tight_decomposition(g: &Graph) -> Result<TightDecomposition> {
    let mut game = pebble_game(g).ok_or(Error::NotSparse)?;
    let mut parts = Vec::new();
    let mut indices = BTreeMap::new();
    for &e in g.edges() {
        if indices.contains_key(&e) {
            continue;
        }
        let (u, v) = (e.lo(), e.hi());
        let mut vs = BTreeSet::from([u, v]);
        for &w in g.vertices() {
            if w == u || w == v {
                continue;
            }
            let uw = g.contains_edge(u, w) || game.is_spanned(u, w)?;
            if uw && (g.contains_edge(v, w) || game.is_spanned(v, w)?) {
                vs.insert(w);
            }
        }
        let edges: BTreeSet<Edge> = g
            .edges()
            .iter()
            .filter(|f| vs.contains(&f.lo()) && vs.contains(&f.hi()))
            .copied()
            .collect();
        let id = parts.len();
        for f in &edges {
            indices.insert(*f, id);
        }
        parts.push(TightPart {
            vertices: vs,
            edges,
        });
    }
    for &v in g.vertices() {
        if g.degree(v) == 0 {
            parts.push(TightPart {
                vertices: BTreeSet::from([v]),
                edges: BTreeSet::new(),
            });
        }
    }
    Ok(TightDecomposition { parts, indices })
}
