//! Named example graphs.
//!
//! Calligraph-shaped entries carry base edge `{1,2}` and coupler vertex `0`.

use alloc::string::ToString;

use crate::{Error, Graph, Result, Vertex};

pub const NAMES: &[&str] = &[
    "triangle",
    "fig_mr",
    "fig_coupler",
    "fig_main1",
    "fig_main2",
    "fig_split_H",
    "fig_split_C5",
    "fig_split_G",
    "fig_m_left",
    "fig_m_right",
    "fig_real",
    "L",
    "R",
    "C_v",
    "fig_codim_G",
];

const TRIANGLE: &[(Vertex, Vertex)] = &[(1, 2), (1, 3), (2, 3)];
const MR: &[(Vertex, Vertex)] = &[(1, 2), (1, 3), (1, 4), (2, 3), (3, 4)];
// Four-bar 1-3-4-2 with the triangle {0,3,4} as coupler.
const COUPLER: &[(Vertex, Vertex)] = &[(1, 2), (2, 4), (3, 4), (1, 3), (0, 3), (0, 4)];
const MAIN1: &[(Vertex, Vertex)] = &[
    (1, 2),
    (1, 3),
    (1, 4),
    (2, 4),
    (2, 3),
    (1, 7),
    (5, 7),
    (3, 5),
    (5, 6),
    (4, 6),
    (7, 8),
    (6, 8),
    (8, 9),
    (6, 9),
    (0, 8),
    (0, 9),
];
// K_{3,3} on {1,5,4} x {2,0,3} without {1,0}.
const MAIN2: &[(Vertex, Vertex)] = &[
    (1, 2),
    (1, 3),
    (2, 5),
    (0, 5),
    (3, 5),
    (2, 4),
    (0, 4),
    (3, 4),
];
const SPLIT_C5: &[(Vertex, Vertex)] = &[(1, 2), (2, 5), (0, 5), (1, 5)];
const SPLIT_G: &[(Vertex, Vertex)] = &[
    (1, 2),
    (2, 4),
    (3, 4),
    (1, 3),
    (0, 3),
    (0, 4),
    (1, 5),
    (2, 5),
    (0, 5),
];
const L: &[(Vertex, Vertex)] = &[(1, 2), (0, 1)];
const R: &[(Vertex, Vertex)] = &[(1, 2), (0, 2)];
const C_V: &[(Vertex, Vertex)] = &[(1, 2), (2, 3), (0, 3), (1, 3)];
const M_RIGHT: &[(Vertex, Vertex)] = &[(1, 2), (0, 1), (1, 3), (2, 3)];
const REAL: &[(Vertex, Vertex)] = &[(1, 2), (0, 1), (2, 3), (0, 3)];
// K_{2,3} on {4,0} x {1,2,3}.
const CODIM_G: &[(Vertex, Vertex)] = &[(1, 4), (3, 4), (2, 4), (0, 1), (0, 3), (0, 2)];

/// Looks up a graph by name.
pub fn catalog(name: &str) -> Result<Graph> {
    let (edges, calligraph) = match name {
        "triangle" => (TRIANGLE, false),
        "fig_mr" => (MR, false),
        "fig_coupler" | "fig_split_H" => (COUPLER, true),
        "fig_main1" => (MAIN1, true),
        "fig_main2" => (MAIN2, true),
        "fig_split_C5" => (SPLIT_C5, true),
        "fig_split_G" => (SPLIT_G, false),
        "fig_m_left" | "L" => (L, true),
        "fig_m_right" => (M_RIGHT, true),
        "fig_real" => (REAL, true),
        "R" => (R, true),
        "C_v" => (C_V, true),
        "fig_codim_G" => (CODIM_G, false),
        _ => return Err(Error::UnknownCatalogName(name.to_string())),
    };
    let g = Graph::from_edges(edges.iter().copied())?;
    if calligraph {
        g.with_calligraph_labels()
    } else {
        Ok(g)
    }
}

/// The calligraph `C_v` with the given middle vertex (`v >= 3`).
pub fn c_v(v: Vertex) -> Graph {
    Graph::from_edges([(1, 2), (2, v), (0, v), (1, v)])
        .and_then(Graph::with_calligraph_labels)
        .expect("valid for v >= 3")
}
