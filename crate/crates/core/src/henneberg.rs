//! Henneberg sequences certifying tightness.

use alloc::vec::Vec;

use crate::sparsity::is_tight;
use crate::{Edge, Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HennebergMove {
    /// New vertex `new` joined to `a` and `b`.
    Zero { new: Vertex, a: Vertex, b: Vertex },
    /// New vertex `new` joined to `a`, `b`, `c`, removing the edge `{b,c}`.
    One {
        new: Vertex,
        a: Vertex,
        b: Vertex,
        c: Vertex,
    },
}

impl HennebergMove {
    pub fn new_vertex(&self) -> Vertex {
        match *self {
            HennebergMove::Zero { new, .. } | HennebergMove::One { new, .. } => new,
        }
    }

    /// Applies the move, or `None` if its preconditions fail on `g`.
    pub fn apply(&self, g: &Graph) -> Option<Graph> {
        match *self {
            HennebergMove::Zero { new, a, b } => {
                if g.contains_vertex(new)
                    || !g.contains_vertex(a)
                    || !g.contains_vertex(b)
                    || a == b
                {
                    return None;
                }
                g.with_edge(new, a).ok()?.with_edge(new, b).ok()
            }
            HennebergMove::One { new, a, b, c } => {
                let bc = Edge::new(b, c).ok()?;
                if g.contains_vertex(new) || !g.contains_vertex(a) || a == b || a == c {
                    return None;
                }
                if !g.edges().contains(&bc) {
                    return None;
                }
                g.without_edge(bc)
                    .with_edge(new, a)
                    .ok()?
                    .with_edge(new, b)
                    .ok()?
                    .with_edge(new, c)
                    .ok()
            }
        }
    }
}

/// A base edge followed by moves that rebuild a tight graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HennebergSequence {
    pub base: Edge,
    pub steps: Vec<HennebergMove>,
}

impl HennebergSequence {
    /// Replays the moves starting from the base edge.
    pub fn replay(&self) -> Option<Graph> {
        let mut g = Graph::from_edges([(self.base.lo(), self.base.hi())]).ok()?;
        for m in &self.steps {
            g = m.apply(&g)?;
        }
        Some(g)
    }
}

/// Finds a Henneberg sequence for `g`, or `None` if `g` is not tight or has
/// fewer than two vertices.
///
/// Undoes moves in reverse: a degree-2 vertex is always removable; for
/// degree-3 vertices every re-inserted edge is tried with backtracking.
/// Lowest labels go first.
pub fn henneberg_sequence(g: &Graph) -> Option<HennebergSequence> {
    if g.vertex_count() < 2 || !is_tight(g) {
        return None;
    }
    let mut reversed = Vec::new();
    let base = reduce(&g.unlabeled(), &mut reversed)?;
    reversed.reverse();
    let seq = HennebergSequence {
        base,
        steps: reversed,
    };
    debug_assert_eq!(seq.replay().as_ref().map(Graph::edges), Some(g.edges()));
    Some(seq)
}

fn reduce(g: &Graph, moves: &mut Vec<HennebergMove>) -> Option<Edge> {
    if g.vertex_count() == 2 {
        return g.edges().iter().next().copied();
    }
    if let Some(&v) = g.vertices().iter().find(|&&v| g.degree(v) == 2) {
        let ns = g.neighbors(v);
        moves.push(HennebergMove::Zero {
            new: v,
            a: ns[0],
            b: ns[1],
        });
        let base = reduce(&g.without_vertices(&[v]), moves);
        if base.is_none() {
            moves.pop();
        }
        return base;
    }
    let candidates: Vec<Vertex> = g
        .vertices()
        .iter()
        .copied()
        .filter(|&v| g.degree(v) == 3)
        .collect();
    for v in candidates {
        let ns = g.neighbors(v);
        let rest = g.without_vertices(&[v]);
        for (a, b, c) in [
            (ns[0], ns[1], ns[2]),
            (ns[1], ns[0], ns[2]),
            (ns[2], ns[0], ns[1]),
        ] {
            if rest.contains_edge(b, c) {
                continue;
            }
            let smaller = rest.with_edge(b, c).expect("non-edge between vertices");
            if !is_tight(&smaller) {
                continue;
            }
            moves.push(HennebergMove::One { new: v, a, b, c });
            if let Some(base) = reduce(&smaller, moves) {
                return Some(base);
            }
            moves.pop();
        }
    }
    None
}
