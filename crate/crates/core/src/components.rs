//! Component numbers and component membership of realizations.
//!
//! For a sparse graph with general lengths, the realization set has as many
//! irreducible components as the product of the realization counts of the
//! max-tight parts. Two realizations lie on the same component exactly when
//! every max-tight part of one is a direct isometric image of the other.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::isometry::Transformation;
use crate::realization::{
    count_realizations, fit_direct_isometry, witness_points, Realization, WitnessSet,
};
use crate::rng::{self, tag};
use crate::sparsity::{max_tight_decomposition, TightDecomposition};
use crate::{EdgeLengths, Error, Graph, Result, Vertex};

/// Residual (relative to the squared coordinate scale) above which a
/// realization is not compatible with the lengths.
pub const COMPATIBILITY_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct ComponentReport {
    pub sparse: bool,
    /// Empty when the graph is not sparse.
    pub decomposition: Option<TightDecomposition>,
    pub per_part_counts: Vec<u64>,
    /// Zero for graphs that are not sparse.
    pub component_number: u64,
    /// `2|V| - |E|`; equals 3 for tight graphs.
    pub fiber_dimension: i64,
}

/// Component number via the max-tight decomposition.
///
/// Parts with one vertex or one edge count 1; other parts are solved.
pub fn component_number(g: &Graph, seed: u64) -> Result<ComponentReport> {
    let fiber_dimension = 2 * g.vertex_count() as i64 - g.edge_count() as i64;
    let decomposition = match max_tight_decomposition(g) {
        Ok(d) => d,
        Err(Error::NotSparse) => {
            return Ok(ComponentReport {
                sparse: false,
                decomposition: None,
                per_part_counts: Vec::new(),
                component_number: 0,
                fiber_dimension,
            })
        }
        Err(e) => return Err(e),
    };
    let mut per_part_counts = Vec::with_capacity(decomposition.len());
    for part in &decomposition.parts {
        let count = if part.vertices.len() <= 2 {
            1
        } else {
            count_realizations(&part.graph(), seed)?.count as u64
        };
        per_part_counts.push(count);
    }
    Ok(ComponentReport {
        sparse: true,
        component_number: per_part_counts.iter().product(),
        decomposition: Some(decomposition),
        per_part_counts,
        fiber_dimension,
    })
}

/// Outcome of a component comparison, with the per-part isometries found.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentMatch {
    pub same: bool,
    /// Part index to the transformation taking the first realization onto
    /// the second on that part; stops at the first part without one.
    pub part_transformations: BTreeMap<usize, Transformation>,
}

/// Component label of a witness point.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentLabel {
    pub class_id: usize,
    /// Transformations from the class representative to this point.
    pub part_transformations: BTreeMap<usize, Transformation>,
}

/// Compares realizations part by part against a fixed decomposition.
#[derive(Debug, Clone)]
pub struct Classifier {
    pub decomposition: TightDecomposition,
    lengths: EdgeLengths,
    parts: Vec<(usize, Vec<Vertex>)>,
}

impl Classifier {
    pub fn new(g: &Graph, lengths: &EdgeLengths) -> Result<Self> {
        let decomposition = max_tight_decomposition(g)?;
        let parts = decomposition
            .parts
            .iter()
            .enumerate()
            .filter(|(_, p)| p.vertices.len() >= 2)
            .map(|(i, p)| (i, p.vertices.iter().copied().collect()))
            .collect();
        Ok(Classifier {
            decomposition,
            lengths: lengths.restrict(g)?,
            parts,
        })
    }

    fn check(&self, r: &Realization) -> Result<()> {
        let scale = r
            .points
            .values()
            .flat_map(|p| p.iter())
            .fold(1.0f64, |m, x| m.max(x.norm()));
        let residual = r.residual(&self.lengths);
        if residual.is_nan() || residual > COMPATIBILITY_TOLERANCE * scale * scale {
            return Err(Error::Incompatible(residual));
        }
        Ok(())
    }

    pub fn compare(&self, r: &Realization, s: &Realization) -> Result<ComponentMatch> {
        self.check(r)?;
        self.check(s)?;
        let mut part_transformations = BTreeMap::new();
        for (i, vs) in &self.parts {
            match fit_direct_isometry(r, s, vs.iter().copied())? {
                Some(t) => {
                    part_transformations.insert(*i, t);
                }
                None => {
                    return Ok(ComponentMatch {
                        same: false,
                        part_transformations,
                    })
                }
            }
        }
        Ok(ComponentMatch {
            same: true,
            part_transformations,
        })
    }

    /// Greedy classification against class representatives, in input order.
    ///
    /// A point matching two different representatives means the relation is
    /// not transitive at this tolerance, which is reported as an error.
    pub fn classify(&self, points: &[Realization]) -> Result<Vec<ComponentLabel>> {
        let mut reps: Vec<usize> = Vec::new();
        let mut labels = Vec::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            let mut found: Option<ComponentLabel> = None;
            for (class_id, &rep) in reps.iter().enumerate() {
                let m = self.compare(&points[rep], p)?;
                if !m.same {
                    continue;
                }
                if let Some(prev) = &found {
                    return Err(Error::Certification(format!(
                        "witness {i} matches classes {} and {class_id}",
                        prev.class_id
                    )));
                }
                found = Some(ComponentLabel {
                    class_id,
                    part_transformations: m.part_transformations,
                });
            }
            let label = found.unwrap_or_else(|| {
                reps.push(i);
                ComponentLabel {
                    class_id: reps.len() - 1,
                    part_transformations: BTreeMap::new(),
                }
            });
            labels.push(label);
        }
        Ok(labels)
    }
}

/// Whether `r` and `s` lie on the same irreducible component.
pub fn same_component(
    g: &Graph,
    lengths: &EdgeLengths,
    r: &Realization,
    s: &Realization,
) -> Result<ComponentMatch> {
    Classifier::new(g, lengths)?.compare(r, s)
}

/// Labels each witness point with its component class.
pub fn classify_witnesses(
    g: &Graph,
    lengths: &EdgeLengths,
    points: &[Realization],
) -> Result<Vec<ComponentLabel>> {
    Classifier::new(g, lengths)?.classify(points)
}

/// Number of points per class, indexed by class id.
pub fn class_sizes(labels: &[ComponentLabel]) -> Vec<usize> {
    let mut sizes = Vec::new();
    for l in labels {
        if sizes.len() <= l.class_id {
            sizes.resize(l.class_id + 1, 0);
        }
        sizes[l.class_id] += 1;
    }
    sizes
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeCheck {
    /// Class sizes for each of the two slices.
    pub class_sizes: [Vec<usize>; 2],
    pub equal: bool,
}

/// Slices the pinned fiber twice with independent random hyperplanes and
/// checks that all classes receive the same number of witness points.
pub fn equal_degree_check(g: &Graph, lengths: &EdgeLengths, seed: u64) -> Result<DegreeCheck> {
    let classifier = Classifier::new(g, lengths)?;
    let mut sizes: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for (k, slot) in sizes.iter_mut().enumerate() {
        let ws = fiber_witnesses(g, lengths, rng::child_seed(seed, tag::SLICE + k as u64))?;
        *slot = class_sizes(&classifier.classify(&ws.points.solutions)?);
    }
    let equal = sizes[0] == sizes[1] && sizes[0].windows(2).all(|w| w[0] == w[1]);
    Ok(DegreeCheck {
        class_sizes: sizes,
        equal,
    })
}

/// Witness set of a pinned fiber of dimension at most one.
pub fn fiber_witnesses(g: &Graph, lengths: &EdgeLengths, seed: u64) -> Result<WitnessSet> {
    let pinned = crate::realization::PinnedSystem::build_default(g, lengths)?;
    let dim = pinned.fiber_dimension();
    if dim > 1 || pinned.equation_count() + dim != pinned.unknown_count() {
        return Err(Error::FiberDimension(dim));
    }
    witness_points(g, lengths, dim, seed)
}
