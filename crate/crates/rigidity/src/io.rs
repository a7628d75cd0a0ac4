//! JSON graph and length files.
//!
//! Graph: `{"vertices":[..], "edges":[[u,v],..], "base_edge":[1,2],
//! "coupler_vertex":0}` with the last two optional. Lengths:
//! `{"lengths":{"u-v":"p/q",..}}` keyed by canonical edge names.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rigidity_core::{Edge, EdgeLengths, Graph, Rational, Vertex};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<[Vertex; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_edge: Option<[Vertex; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coupler_vertex: Option<Vertex>,
}

impl GraphFile {
    pub fn from_graph(g: &Graph) -> Self {
        GraphFile {
            vertices: g.vertices().iter().copied().collect(),
            edges: g.edges().iter().map(|e| [e.lo(), e.hi()]).collect(),
            base_edge: g.base_edge().map(|(a, b)| [a, b]),
            coupler_vertex: g.coupler_vertex(),
        }
    }

    pub fn into_graph(self) -> Result<Graph> {
        let mut g = Graph::new(self.vertices, self.edges.into_iter().map(|[u, v]| (u, v)))?;
        if let Some([a, b]) = self.base_edge {
            g = g.with_base_edge(a, b)?;
        }
        if let Some(v) = self.coupler_vertex {
            g = g.with_coupler_vertex(v)?;
        }
        Ok(g)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LengthsFile {
    pub lengths: BTreeMap<String, String>,
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    serde_json::from_str::<GraphFile>(text)?.into_graph()
}

pub fn graph_to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphFile::from_graph(g)).expect("graph serializes")
}

fn parse_edge(key: &str) -> Result<Edge> {
    let bad = |reason: &str| Error::Length {
        edge: key.to_string(),
        reason: reason.to_string(),
    };
    let (u, v) = key.split_once('-').ok_or_else(|| bad("expected `u-v`"))?;
    let u: Vertex = u.trim().parse().map_err(|_| bad("bad vertex label"))?;
    let v: Vertex = v.trim().parse().map_err(|_| bad("bad vertex label"))?;
    if u > v {
        return Err(bad("edge names are written `min-max`"));
    }
    Ok(Edge::new(u, v)?)
}

/// Parses a lengths file and checks it covers exactly the edges of `g`.
pub fn parse_lengths(text: &str, g: &Graph) -> Result<EdgeLengths> {
    let file: LengthsFile = serde_json::from_str(text)?;
    let mut values = BTreeMap::new();
    for (key, value) in &file.lengths {
        let edge = parse_edge(key)?;
        let r = Rational::from_str(value.trim()).map_err(|_| Error::Length {
            edge: key.clone(),
            reason: format!("`{value}` is not a rational p/q"),
        })?;
        if r <= Rational::from_integer(0) {
            return Err(Error::Length {
                edge: key.clone(),
                reason: "squared lengths must be positive".into(),
            });
        }
        values.insert(edge, r);
    }
    Ok(EdgeLengths::new(g, values)?)
}

pub fn lengths_to_json(lengths: &EdgeLengths) -> String {
    let file = LengthsFile {
        lengths: lengths
            .iter()
            .map(|(e, r)| (e.to_string(), r.to_string()))
            .collect(),
    };
    serde_json::to_string(&file).expect("lengths serialize")
}

pub fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Read {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read_to_string(path)?)
}

pub fn read_lengths(path: &Path, g: &Graph) -> Result<EdgeLengths> {
    parse_lengths(&read_to_string(path)?, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rigidity_core::catalog::{catalog, NAMES};

    #[test]
    fn triangle_and_loops() {
        let g = parse_graph(r#"{"vertices":[1,2,3],"edges":[[1,2],[1,3],[2,3]]}"#).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 3));
        let err = parse_graph(r#"{"vertices":[1],"edges":[[1,1]]}"#).unwrap_err();
        assert_eq!(err.code(), "loop");
        assert_eq!(parse_graph("{").unwrap_err().code(), "syntax");
        let err = parse_graph(r#"{"vertices":[1,2],"edges":[[1,3]]}"#).unwrap_err();
        assert_eq!(err.code(), "dangling_edge");
    }

    #[test]
    fn catalog_round_trip() {
        for name in NAMES {
            let g = catalog(name).unwrap();
            assert_eq!(parse_graph(&graph_to_json(&g)).unwrap(), g, "{name}");
        }
    }

    #[test]
    fn lengths() {
        let g = catalog("triangle").unwrap();
        let l = parse_lengths(r#"{"lengths":{"1-2":"1","1-3":"9/4","2-3":"5/4"}}"#, &g).unwrap();
        assert_eq!(l.get(Edge::new(1, 3).unwrap()), Some(Rational::new(9, 4)));
        assert_eq!(parse_lengths(&lengths_to_json(&l), &g).unwrap(), l);
        let missing = parse_lengths(r#"{"lengths":{"1-2":"1"}}"#, &g).unwrap_err();
        assert_eq!(missing.code(), "missing_length");
        let reversed = parse_lengths(r#"{"lengths":{"2-1":"1","1-3":"1","2-3":"1"}}"#, &g);
        assert_eq!(reversed.unwrap_err().code(), "invalid_length");
        let negative = parse_lengths(r#"{"lengths":{"1-2":"-1","1-3":"1","2-3":"1"}}"#, &g);
        assert_eq!(negative.unwrap_err().code(), "invalid_length");
    }
}
