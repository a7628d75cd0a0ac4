//! Real coupler curves by sweeping the angle of a driving edge.
//!
//! The direction of one edge outside the base part is fixed to angle `θ`
//! by a linear equation, which cuts the pinned fiber down to points. The
//! full solution set is computed once and then carried from sample to
//! sample by slice homotopies, so each solution keeps its identity and real
//! stretches link into polylines.

use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::Rng;

use crate::components::Classifier;
use crate::homotopy::{
    finish_paths, track_all, Chart, SliceHomotopy, SolveOptions, TrackerOptions,
};
use crate::linalg::norm_inf;
use crate::poly::Linear;
use crate::realization::{solve_system, PinnedSystem, Realization};
use crate::rng::{self, tag};
use crate::sparsity::max_tight_decomposition;
use crate::{Edge, EdgeLengths, Error, Graph, Result, Vertex, C};

pub const DEFAULT_SAMPLES: usize = 720;

/// Relative imaginary part below which a solution counts as real.
pub const REAL_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub sample: usize,
    pub theta: f64,
    pub x: f64,
    pub y: f64,
    pub class_id: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub class_id: usize,
    pub points: Vec<[f64; 2]>,
    pub closed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CouplerTrace {
    pub driving_edge: Edge,
    pub samples: usize,
    /// Complex solutions per sample.
    pub solutions_per_sample: usize,
    pub points: Vec<TracePoint>,
    pub polylines: Vec<Polyline>,
    pub classes: usize,
    /// Samples where continuation failed and a full solve was used.
    pub restarts: usize,
}

impl CouplerTrace {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// An edge whose direction is not constant on the pinned fiber, preferring
/// edges at the ends of the base edge.
pub fn driving_edge(g: &Graph) -> Result<Edge> {
    let (one, two) = g.base_edge().ok_or(Error::MissingLabels)?;
    let d = max_tight_decomposition(g)?;
    let base = d
        .part_of(Edge::new(one, two)?)
        .expect("base edge is an edge");
    let base_vertices = &d.parts[base].vertices;
    let loose: Vec<Edge> = g
        .edges()
        .iter()
        .copied()
        .filter(|&e| !(base_vertices.contains(&e.lo()) && base_vertices.contains(&e.hi())))
        .collect();
    loose
        .iter()
        .find(|e| e.contains(one) || e.contains(two))
        .or_else(|| loose.first())
        .copied()
        .ok_or(Error::NotCalligraph)
}

/// `sin θ (x_b - x_a) - cos θ (y_b - y_a)`.
fn direction_slice(sys: &PinnedSystem, a: Vertex, b: Vertex, theta: f64) -> Linear {
    let [ax, ay] = sys.coord(a);
    let [bx, by] = sys.coord(b);
    let (s, c) = libm::sincos(theta);
    let dx = bx.sub(&ax);
    let dy = by.sub(&ay);
    let mut terms: Vec<(usize, C)> = dx.terms.iter().map(|&(i, v)| (i, v * s)).collect();
    terms.extend(dy.terms.iter().map(|&(i, v)| (i, -v * c)));
    Linear {
        terms,
        constant: dx.constant * s - dy.constant * c,
    }
}

fn close(x: &[C], y: &[C]) -> bool {
    x.iter()
        .zip(y)
        .all(|(a, b)| (a - b).norm() <= 1e-6 * (1.0 + norm_inf(y)))
}

fn is_real(x: &[C]) -> bool {
    let scale = 1.0 + norm_inf(x);
    x.iter().all(|v| v.im.abs() <= REAL_TOLERANCE * scale)
}

/// Samples the real coupler curve of vertex `0` over `n_samples` angles of
/// the driving edge in `[0, π)`; each angle also covers its opposite.
///
/// Points are classified into irreducible components of the realization
/// set. An empty trace is not an error.
pub fn coupler_trace(
    g: &Graph,
    lengths: &EdgeLengths,
    n_samples: usize,
    seed: u64,
) -> Result<CouplerTrace> {
    let (one, two) = g.base_edge().ok_or(Error::MissingLabels)?;
    let zero = g.coupler_vertex().ok_or(Error::MissingLabels)?;
    if !crate::calligraph::is_calligraph(g)? {
        return Err(Error::NotCalligraph);
    }
    for (e, l) in lengths.iter() {
        if l <= crate::Rational::from_integer(0) {
            return Err(Error::DegenerateLength(e));
        }
    }
    let n_samples = n_samples.max(1);
    let edge = driving_edge(g)?;
    let sys = PinnedSystem::build_oriented(g, lengths, one, two)?;
    let classifier = Classifier::new(g, lengths)?;
    let slice_at = |j: usize| {
        let theta = PI * j as f64 / n_samples as f64;
        direction_slice(&sys, edge.lo(), edge.hi(), theta)
    };

    let opts = SolveOptions::default();
    let mut rng = rng::stream(seed, tag::GAMMA);
    let first = solve_system(&sys, &sys.with_slices(&[slice_at(0)]), seed, &opts)?;
    let initial = first.coordinates.clone();
    let mut current = initial.clone();
    let mut samples: Vec<Vec<Vec<C>>> = Vec::with_capacity(n_samples + 1);
    // `broken[j]`: solution identities do not carry over from `j - 1` to `j`
    let mut broken = alloc::vec![false];
    samples.push(current.clone());
    let mut restarts = 0;
    for j in 1..=n_samples {
        let from = [slice_at(j - 1)];
        let to = if j == n_samples {
            // θ = π is θ = 0 with the orientation reversed
            let l = slice_at(0);
            [Linear {
                terms: l.terms.iter().map(|&(i, v)| (i, -v)).collect(),
                constant: -l.constant,
            }]
        } else {
            [slice_at(j)]
        };
        let target = sys.with_slices(&to);
        // Detours on both sides of the real segment agree unless a branch
        // point lies between them.
        let angle = rng.gen_range(0.05..0.3);
        let carry = |gamma: C| {
            let h = SliceHomotopy {
                equations: &sys.system,
                from: &from,
                to: &to,
                gamma,
            };
            let ends = track_all(&h, &current, &TrackerOptions::default());
            finish_paths(&h, &target, Chart::Affine, &current, ends, &opts)
                .ok()
                .filter(|r| r.solutions.len() == current.len() && r.singular.is_empty())
                .map(|mut r| {
                    r.solutions.sort_by_key(|e| e.path);
                    r.solutions.into_iter().map(|e| e.x).collect::<Vec<_>>()
                })
        };
        match (
            carry(C::from_polar(1.0, angle)),
            carry(C::from_polar(1.0, -angle)),
        ) {
            (Some(a), Some(b)) => {
                broken.push(!a.iter().zip(&b).all(|(x, y)| close(x, y)));
                current = a;
            }
            _ => {
                restarts += 1;
                broken.push(true);
                let child = rng::child_seed(seed, j as u64);
                current = solve_system(&sys, &target, child, &opts)?.coordinates;
            }
        }
        samples.push(current.clone());
    }

    // classify the real points
    let mut reps: Vec<Realization> = Vec::new();
    let mut points = Vec::new();
    let mut labels: Vec<Vec<Option<usize>>> = Vec::with_capacity(n_samples + 1);
    let k = sys.unknown_index(zero).ok_or(Error::NotCalligraph)?;
    for (j, sols) in samples.iter().enumerate() {
        let mut row = Vec::with_capacity(sols.len());
        for x in sols {
            if !is_real(x) {
                row.push(None);
                continue;
            }
            let r = sys.realization(x);
            let mut class_id = None;
            for (c, rep) in reps.iter().enumerate() {
                if classifier.compare(rep, &r)?.same {
                    class_id = Some(c);
                    break;
                }
            }
            let class_id = class_id.unwrap_or_else(|| {
                reps.push(r);
                reps.len() - 1
            });
            if j < n_samples {
                points.push(TracePoint {
                    sample: j,
                    theta: PI * j as f64 / n_samples as f64,
                    x: x[2 * k].re,
                    y: x[2 * k + 1].re,
                    class_id,
                });
            }
            row.push(Some(class_id));
        }
        labels.push(row);
    }

    let polylines = link(&samples, &labels, &broken, &initial, k);
    Ok(CouplerTrace {
        driving_edge: edge,
        samples: n_samples,
        solutions_per_sample: initial.len(),
        points,
        polylines,
        classes: reps.len(),
        restarts,
    })
}

/// Joins real points of the same solution path at consecutive samples. The
/// last sample (θ = π) is matched back onto the first to close loops.
fn link(
    samples: &[Vec<Vec<C>>],
    labels: &[Vec<Option<usize>>],
    broken: &[bool],
    initial: &[Vec<C>],
    k: usize,
) -> Vec<Polyline> {
    let point = |x: &[C]| [x[2 * k].re, x[2 * k + 1].re];
    let n = samples.len() - 1;
    let mut lines: Vec<Polyline> = Vec::new();
    // open line per path index, and the line each path started at sample 0
    let mut open: Vec<Option<usize>> = Vec::new();
    let mut starts: Vec<Option<usize>> = alloc::vec![None; initial.len()];
    for j in 0..n {
        if j == 0 || broken[j] {
            open = alloc::vec![None; samples[j].len()];
        }
        for (i, x) in samples[j].iter().enumerate() {
            match labels[j][i] {
                Some(c) => match open[i] {
                    Some(l) if lines[l].class_id == c => lines[l].points.push(point(x)),
                    _ => {
                        lines.push(Polyline {
                            class_id: c,
                            points: alloc::vec![point(x)],
                            closed: false,
                        });
                        open[i] = Some(lines.len() - 1);
                        if j == 0 {
                            starts[i] = open[i];
                        }
                    }
                },
                None => open[i] = None,
            }
        }
    }
    if broken[n] {
        return lines;
    }
    // the seam: path i at θ = π is some initial point again
    let mut merged_into: Vec<usize> = (0..lines.len()).collect();
    for (i, x) in samples[n].iter().enumerate() {
        let (Some(l), Some(_)) = (open[i], labels[n][i]) else {
            continue;
        };
        let Some(s) = initial.iter().position(|y| close(x, y)) else {
            continue;
        };
        let Some(mut target) = starts[s] else {
            continue;
        };
        while merged_into[target] != target {
            target = merged_into[target];
        }
        let mut l = l;
        while merged_into[l] != l {
            l = merged_into[l];
        }
        if lines[l].class_id != lines[target].class_id {
            continue;
        }
        if l == target {
            lines[l].closed = true;
        } else {
            let tail = core::mem::take(&mut lines[target].points);
            lines[l].points.extend(tail);
            merged_into[target] = l;
        }
    }
    lines.retain(|l| !l.points.is_empty());
    lines
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;
    use crate::Rational;
    use alloc::collections::BTreeMap;

    type Entry = ((Vertex, Vertex), (i64, i64));

    fn lengths(g: &Graph, values: &[Entry]) -> EdgeLengths {
        let map: BTreeMap<Edge, Rational> = values
            .iter()
            .map(|&((u, v), (p, q))| (Edge::new(u, v).unwrap(), Rational::new(p, q)))
            .collect();
        EdgeLengths::new(g, map).unwrap()
    }

    #[test]
    fn revolute_joint_traces_a_circle() {
        let g = catalog("L").unwrap();
        let l = lengths(&g, &[((1, 2), (1, 1)), ((0, 1), (4, 1))]);
        let t = coupler_trace(&g, &l, 90, 0).unwrap();
        assert_eq!(t.driving_edge, Edge::new(0, 1).unwrap());
        assert_eq!(t.classes, 1);
        assert_eq!(t.points.len(), 180);
        for p in &t.points {
            assert!((p.x.hypot(p.y) - 2.0).abs() < 1e-9);
        }
        assert_eq!(t.polylines.len(), 1);
        assert!(t.polylines[0].closed);
    }

    #[test]
    fn no_real_points_is_not_an_error() {
        // |r_3 - r_1| = 1 and |r_3 - r_2| = 1 cannot hold with |r_1 - r_2| = 3
        let g = catalog("fig_real").unwrap();
        let l = lengths(
            &g,
            &[
                ((1, 2), (9, 1)),
                ((0, 1), (1, 1)),
                ((2, 3), (1, 1)),
                ((0, 3), (1, 100)),
            ],
        );
        let t = coupler_trace(&g, &l, 36, 0).unwrap();
        assert!(t.is_empty());
        assert!(t.polylines.is_empty());
    }
}
