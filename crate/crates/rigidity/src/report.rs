//! JSON reports printed by `analyze`.

use rigidity_core::calligraph::{CalligraphClass, CouplerPrediction};
use rigidity_core::components::ComponentReport;
use rigidity_core::henneberg::{HennebergMove, HennebergSequence};
use rigidity_core::sparsity::{TightDecomposition, TightPart};
use rigidity_core::trace::CouplerTrace;
use rigidity_core::{Rational, Vertex};
use serde::Serialize;

/// Integers as numbers, proper fractions as `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Exact {
    Integer(i64),
    Fraction(String),
}

impl From<Rational> for Exact {
    fn from(r: Rational) -> Self {
        if r.is_integer() {
            Exact::Integer(r.to_integer())
        } else {
            Exact::Fraction(r.to_string())
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Part {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<[Vertex; 2]>,
}

impl From<&TightPart> for Part {
    fn from(p: &TightPart) -> Self {
        Part {
            vertices: p.vertices.iter().copied().collect(),
            edges: p.edges.iter().map(|e| [e.lo(), e.hi()]).collect(),
        }
    }
}

fn parts(d: &TightDecomposition) -> Vec<Part> {
    d.parts.iter().map(Part::from).collect()
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    Zero {
        new: Vertex,
        a: Vertex,
        b: Vertex,
    },
    One {
        new: Vertex,
        a: Vertex,
        b: Vertex,
        c: Vertex,
    },
}

impl From<&HennebergMove> for Move {
    fn from(m: &HennebergMove) -> Self {
        match *m {
            HennebergMove::Zero { new, a, b } => Move::Zero { new, a, b },
            HennebergMove::One { new, a, b, c } => Move::One { new, a, b, c },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Henneberg {
    pub base: [Vertex; 2],
    pub steps: Vec<Move>,
}

impl From<&HennebergSequence> for Henneberg {
    fn from(s: &HennebergSequence) -> Self {
        Henneberg {
            base: [s.base.lo(), s.base.hi()],
            steps: s.steps.iter().map(Move::from).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DecomposeReport {
    pub command: &'static str,
    pub sparse: bool,
    pub tight: bool,
    /// Empty when the graph is not sparse.
    pub parts: Vec<Part>,
    pub henneberg: Option<Henneberg>,
}

impl DecomposeReport {
    pub fn new(
        tight: bool,
        decomposition: Option<&TightDecomposition>,
        henneberg: Option<&HennebergSequence>,
    ) -> Self {
        DecomposeReport {
            command: "decompose",
            sparse: decomposition.is_some(),
            tight,
            parts: decomposition.map(parts).unwrap_or_default(),
            henneberg: henneberg.map(Henneberg::from),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CountReport {
    pub command: &'static str,
    pub c: usize,
    pub paths: usize,
    pub certified: bool,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verification {
    pub witness_points: usize,
    pub class_sizes: Vec<usize>,
    /// Class sizes on a second independent slice agree and are all equal.
    pub equal_degree: bool,
    pub agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentsReport {
    pub command: &'static str,
    pub sparse: bool,
    pub component_number: u64,
    pub parts: usize,
    pub per_part_counts: Vec<u64>,
    pub fiber_dimension: i64,
    pub decomposition: Vec<Part>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
}

impl ComponentsReport {
    pub fn new(r: &ComponentReport, verification: Option<Verification>) -> Self {
        ComponentsReport {
            command: "components",
            sparse: r.sparse,
            component_number: r.component_number,
            parts: r.decomposition.as_ref().map_or(0, |d| d.len()),
            per_part_counts: r.per_part_counts.clone(),
            fiber_dimension: r.fiber_dimension,
            decomposition: r.decomposition.as_ref().map(parts).unwrap_or_default(),
            verification,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NumericDegree {
    pub degree: usize,
    pub line_counts: [usize; 2],
    pub agrees: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CalligraphReport {
    pub command: &'static str,
    pub is_calligraph: bool,
    pub is_thin: bool,
    pub class: Option<[i64; 3]>,
    pub k: Option<u64>,
    pub degree_per_component: Option<Exact>,
    pub total_degree: Option<i64>,
    pub genus_bound_sing0: Option<Exact>,
    pub multiplicity: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric_degree: Option<NumericDegree>,
}

impl CalligraphReport {
    pub fn not_calligraph() -> Self {
        CalligraphReport {
            command: "calligraph",
            is_calligraph: false,
            is_thin: false,
            class: None,
            k: None,
            degree_per_component: None,
            total_degree: None,
            genus_bound_sing0: None,
            multiplicity: None,
            numeric_degree: None,
        }
    }

    pub fn new(
        is_thin: bool,
        class: CalligraphClass,
        prediction: Option<&CouplerPrediction>,
        multiplicity: usize,
    ) -> Self {
        CalligraphReport {
            command: "calligraph",
            is_calligraph: true,
            is_thin,
            class: Some([class.a, class.b, class.c]),
            k: prediction.map(|p| p.k),
            degree_per_component: prediction.map(|p| p.degree_per_component.into()),
            total_degree: Some(2 * class.a),
            genus_bound_sing0: prediction.map(|p| p.genus_bound(0).into()),
            multiplicity: Some(multiplicity),
            numeric_degree: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PlotReport {
    pub command: &'static str,
    pub output: Option<String>,
    pub driving_edge: [Vertex; 2],
    pub samples: usize,
    pub solutions_per_sample: usize,
    pub points: usize,
    pub classes: usize,
    pub polylines: usize,
    pub empty: bool,
}

impl PlotReport {
    pub fn new(trace: &CouplerTrace, output: Option<String>) -> Self {
        PlotReport {
            command: "coupler-plot",
            output,
            driving_edge: [trace.driving_edge.lo(), trace.driving_edge.hi()],
            samples: trace.samples,
            solutions_per_sample: trace.solutions_per_sample,
            points: trace.points.len(),
            classes: trace.classes,
            polylines: trace.polylines.len(),
            empty: trace.is_empty(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub command: &'static str,
    pub component_number: u64,
    pub witness_points: usize,
    pub witness_classes: Vec<usize>,
    pub monodromy_orbits: Vec<usize>,
    pub monodromy_loops: usize,
    pub equal_degree: bool,
    pub agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorBody {
    pub code: &'static str,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorReport {
    pub error: ErrorBody,
}

impl From<&crate::Error> for ErrorReport {
    fn from(e: &crate::Error) -> Self {
        ErrorReport {
            error: ErrorBody {
                code: e.code(),
                message: e.to_string(),
            },
        }
    }
}
