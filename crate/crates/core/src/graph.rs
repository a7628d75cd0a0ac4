//! Simple undirected graphs with optional calligraph labels.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

pub type Vertex = u32;

/// An undirected edge, stored as `(min, max)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(Vertex, Vertex);

impl Edge {
    /// Canonical edge between two distinct vertices.
    pub fn new(u: Vertex, v: Vertex) -> Result<Self> {
        match u.cmp(&v) {
            core::cmp::Ordering::Less => Ok(Edge(u, v)),
            core::cmp::Ordering::Greater => Ok(Edge(v, u)),
            core::cmp::Ordering::Equal => Err(Error::Loop(u)),
        }
    }

    pub fn lo(&self) -> Vertex {
        self.0
    }

    pub fn hi(&self) -> Vertex {
        self.1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint that is not `v`.
    pub fn other(&self, v: Vertex) -> Option<Vertex> {
        if self.0 == v {
            Some(self.1)
        } else if self.1 == v {
            Some(self.0)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// A finite simple undirected graph.
///
/// `base_edge` keeps the order it was declared in: the first vertex plays the
/// role of `1` and the second of `2` in calligraph constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: BTreeSet<Vertex>,
    edges: BTreeSet<Edge>,
    base_edge: Option<(Vertex, Vertex)>,
    coupler_vertex: Option<Vertex>,
}

impl Graph {
    /// Builds and validates a graph from explicit vertex and edge lists.
    pub fn new(
        vertices: impl IntoIterator<Item = Vertex>,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self> {
        let mut vs = BTreeSet::new();
        for v in vertices {
            if !vs.insert(v) {
                return Err(Error::DuplicateVertex(v));
            }
        }
        let mut es = BTreeSet::new();
        for (u, v) in edges {
            let e = Edge::new(u, v)?;
            if !vs.contains(&u) || !vs.contains(&v) {
                return Err(Error::DanglingEdge(e));
            }
            if !es.insert(e) {
                return Err(Error::DuplicateEdge(e));
            }
        }
        Ok(Graph {
            vertices: vs,
            edges: es,
            base_edge: None,
            coupler_vertex: None,
        })
    }

    /// Graph whose vertex set is exactly the endpoints of `edges`.
    pub fn from_edges(edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let edges: Vec<_> = edges.into_iter().collect();
        let vs: BTreeSet<Vertex> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        Graph::new(vs, edges)
    }

    pub(crate) fn from_sets(vertices: BTreeSet<Vertex>, edges: BTreeSet<Edge>) -> Self {
        Graph {
            vertices,
            edges,
            base_edge: None,
            coupler_vertex: None,
        }
    }

    pub fn with_base_edge(mut self, one: Vertex, two: Vertex) -> Result<Self> {
        let e = Edge::new(one, two)?;
        if !self.edges.contains(&e) {
            return Err(Error::BaseEdgeMissing(e));
        }
        self.base_edge = Some((one, two));
        Ok(self)
    }

    pub fn with_coupler_vertex(mut self, v: Vertex) -> Result<Self> {
        if !self.vertices.contains(&v) {
            return Err(Error::UnknownVertex(v));
        }
        self.coupler_vertex = Some(v);
        Ok(self)
    }

    /// Declares base edge `{1,2}` and coupler vertex `0`.
    pub fn with_calligraph_labels(self) -> Result<Self> {
        self.with_base_edge(1, 2)?.with_coupler_vertex(0)
    }

    pub fn vertices(&self) -> &BTreeSet<Vertex> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Base edge as `(one, two)` in declaration order.
    pub fn base_edge(&self) -> Option<(Vertex, Vertex)> {
        self.base_edge
    }

    pub fn coupler_vertex(&self) -> Option<Vertex> {
        self.coupler_vertex
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn contains_edge(&self, u: Vertex, v: Vertex) -> bool {
        Edge::new(u, v).is_ok_and(|e| self.edges.contains(&e))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.edges.iter().filter_map(|e| e.other(v)).collect()
    }

    pub fn adjacency(&self) -> BTreeMap<Vertex, Vec<Vertex>> {
        let mut adj: BTreeMap<Vertex, Vec<Vertex>> =
            self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for e in &self.edges {
            adj.get_mut(&e.lo()).unwrap().push(e.hi());
            adj.get_mut(&e.hi()).unwrap().push(e.lo());
        }
        for ns in adj.values_mut() {
            ns.sort_unstable();
        }
        adj
    }

    /// Subgraph on `vs` with every edge of `self` between vertices of `vs`.
    ///
    /// Labels survive when their vertices do.
    pub fn induced_subgraph(&self, vs: &BTreeSet<Vertex>) -> Result<Graph> {
        if let Some(&v) = vs.iter().find(|v| !self.vertices.contains(v)) {
            return Err(Error::UnknownVertex(v));
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| vs.contains(&e.lo()) && vs.contains(&e.hi()))
            .copied()
            .collect();
        let mut g = Graph::from_sets(vs.clone(), edges);
        g.base_edge = self
            .base_edge
            .filter(|&(a, b)| vs.contains(&a) && vs.contains(&b));
        g.coupler_vertex = self.coupler_vertex.filter(|v| vs.contains(v));
        Ok(g)
    }

    /// Copy with one more edge; endpoints are added as vertices if new.
    pub fn with_edge(&self, u: Vertex, v: Vertex) -> Result<Graph> {
        let e = Edge::new(u, v)?;
        let mut g = self.clone();
        if !g.edges.insert(e) {
            return Err(Error::DuplicateEdge(e));
        }
        g.vertices.insert(u);
        g.vertices.insert(v);
        Ok(g)
    }

    /// Copy with `e` removed. The base edge label is dropped if it was `e`.
    pub fn without_edge(&self, e: Edge) -> Graph {
        let mut g = self.clone();
        g.edges.remove(&e);
        if let Some((a, b)) = g.base_edge {
            if Edge::new(a, b).ok() == Some(e) {
                g.base_edge = None;
            }
        }
        g
    }

    /// Copy with the given vertices and their incident edges removed.
    pub fn without_vertices(&self, removed: &[Vertex]) -> Graph {
        let keep: BTreeSet<Vertex> = self
            .vertices
            .iter()
            .filter(|v| !removed.contains(v))
            .copied()
            .collect();
        self.induced_subgraph(&keep)
            .expect("subset of own vertices")
    }

    /// Union of vertex and edge sets. Labels are taken from `self`.
    pub fn union(&self, other: &Graph) -> Graph {
        let mut g = self.clone();
        g.vertices.extend(other.vertices.iter().copied());
        g.edges.extend(other.edges.iter().copied());
        g
    }

    /// Applies an injective relabelling to every vertex and label.
    pub fn relabel(&self, map: impl Fn(Vertex) -> Vertex) -> Result<Graph> {
        let vertices: Vec<Vertex> = self.vertices.iter().map(|&v| map(v)).collect();
        let edges: Vec<(Vertex, Vertex)> = self
            .edges
            .iter()
            .map(|e| (map(e.lo()), map(e.hi())))
            .collect();
        let mut g = Graph::new(vertices, edges)?;
        g.base_edge = self.base_edge.map(|(a, b)| (map(a), map(b)));
        g.coupler_vertex = self.coupler_vertex.map(&map);
        Ok(g)
    }

    /// Removes any calligraph labels.
    pub fn unlabeled(&self) -> Graph {
        Graph::from_sets(self.vertices.clone(), self.edges.clone())
    }

    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.vertices.iter().next() else {
            return true;
        };
        let adj = self.adjacency();
        let mut seen = BTreeSet::from([start]);
        let mut stack = alloc::vec![start];
        while let Some(v) = stack.pop() {
            for &w in &adj[&v] {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.vertices.iter().next_back().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::from_edges([(1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn edges_are_canonical() {
        let e = Edge::new(4, 2).unwrap();
        assert_eq!((e.lo(), e.hi()), (2, 4));
        assert_eq!(alloc::format!("{e}"), "2-4");
        assert_eq!(e.other(2), Some(4));
        assert_eq!(e.other(3), None);
    }

    #[test]
    fn rejects_loops_duplicates_and_dangling() {
        assert_eq!(Graph::new([1, 2], [(1, 1)]), Err(Error::Loop(1)));
        assert_eq!(
            Graph::new([1, 2], [(1, 2), (2, 1)]),
            Err(Error::DuplicateEdge(Edge(1, 2)))
        );
        assert_eq!(
            Graph::new([1, 2], [(1, 3)]),
            Err(Error::DanglingEdge(Edge(1, 3)))
        );
        assert_eq!(Graph::new([1, 1], []), Err(Error::DuplicateVertex(1)));
    }

    #[test]
    fn labels_must_exist() {
        let t = triangle();
        assert_eq!(
            t.clone().with_coupler_vertex(0),
            Err(Error::UnknownVertex(0))
        );
        let path = Graph::from_edges([(1, 3), (2, 3)]).unwrap();
        assert_eq!(
            path.with_base_edge(1, 2),
            Err(Error::BaseEdgeMissing(Edge(1, 2)))
        );
        assert!(t.with_base_edge(2, 1).is_ok());
    }

    #[test]
    fn isolated_vertices_allowed() {
        let g = Graph::new([7], []).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
        assert!(g.is_connected());
    }

    #[test]
    fn induced_subgraph_identity_and_unknown_vertex() {
        let t = triangle();
        assert_eq!(t.induced_subgraph(t.vertices()).unwrap(), t);
        let vs = BTreeSet::from([1, 9]);
        assert_eq!(t.induced_subgraph(&vs), Err(Error::UnknownVertex(9)));
    }

    #[test]
    fn vertex_removal_and_connectivity() {
        let g = Graph::from_edges([(1, 2), (2, 3), (3, 4)]).unwrap();
        assert!(g.is_connected());
        let h = g.without_vertices(&[2]);
        assert_eq!(h.vertex_count(), 3);
        assert!(!h.is_connected());
    }
}
