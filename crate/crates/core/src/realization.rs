//! Pinned distance systems, their solutions and witness sets.
//!
//! One edge `{u,v}` is pinned at `r_u = (0,0)`, `r_v = (sqrt(λ_uv), 0)`.
//! The remaining vertices contribute unknowns `(x, y)` in ascending label
//! order and every other edge an equation `d(r_a, r_b) - λ_ab = 0`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::ToPrimitive;
use rand::Rng;

use crate::homotopy::{self, SolveOptions, SolveReport};
use crate::isometry::{fit_points, Transformation};
use crate::poly::{Linear, PolySystem, Quadric};
use crate::rng::{self, tag};
use crate::sparsity::is_tight;
use crate::{Edge, EdgeLengths, Error, Graph, Result, Vertex, C};

pub type Point = [C; 2];

/// Largest residual accepted for a returned realization.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

fn zero() -> C {
    C::new(0.0, 0.0)
}

/// Points for every vertex, with the largest edge residual.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    pub points: BTreeMap<Vertex, Point>,
    pub max_residual: f64,
}

impl Realization {
    /// Wraps `points` and measures the residual against `lengths`.
    pub fn new(points: BTreeMap<Vertex, Point>, lengths: &EdgeLengths) -> Self {
        let mut r = Realization {
            points,
            max_residual: 0.0,
        };
        r.max_residual = r.residual(lengths);
        r
    }

    pub fn point(&self, v: Vertex) -> Option<Point> {
        self.points.get(&v).copied()
    }

    /// Largest `|d(r_a, r_b) - λ_ab|`; missing points count as infinite.
    pub fn residual(&self, lengths: &EdgeLengths) -> f64 {
        lengths.iter().fold(0.0, |m, (e, l)| {
            let l = C::new(l.to_f64().unwrap_or(f64::NAN), 0.0);
            match (self.point(e.lo()), self.point(e.hi())) {
                (Some(p), Some(q)) => m.max((squared_distance(p, q) - l).norm()),
                _ => f64::INFINITY,
            }
        })
    }

    pub fn transformed(&self, t: &Transformation) -> Realization {
        Realization {
            points: self.points.iter().map(|(&v, &p)| (v, t.apply(p))).collect(),
            max_residual: self.max_residual,
        }
    }

    pub fn conjugate(&self) -> Realization {
        Realization {
            points: self
                .points
                .iter()
                .map(|(&v, p)| (v, [p[0].conj(), p[1].conj()]))
                .collect(),
            max_residual: self.max_residual,
        }
    }

    /// All coordinates have imaginary part at most `tol`.
    pub fn is_real(&self, tol: f64) -> bool {
        self.points
            .values()
            .all(|p| p[0].im.abs() <= tol && p[1].im.abs() <= tol)
    }

    /// Largest coordinate difference over shared vertices.
    pub fn distance(&self, other: &Realization) -> f64 {
        self.points
            .iter()
            .fold(0.0, |m, (v, p)| match other.point(*v) {
                Some(q) => m.max((p[0] - q[0]).norm()).max((p[1] - q[1]).norm()),
                None => f64::INFINITY,
            })
    }
}

pub fn squared_distance(p: Point, q: Point) -> C {
    let (dx, dy) = (p[0] - q[0], p[1] - q[1]);
    dx * dx + dy * dy
}

/// The unique direct isometry taking `r` to `s` on `vs`, if any.
pub fn fit_direct_isometry(
    r: &Realization,
    s: &Realization,
    vs: impl IntoIterator<Item = Vertex>,
) -> Result<Option<Transformation>> {
    let (mut from, mut to) = (Vec::new(), Vec::new());
    for v in vs {
        from.push(r.point(v).ok_or(Error::UnknownVertex(v))?);
        to.push(s.point(v).ok_or(Error::UnknownVertex(v))?);
    }
    fit_points(&from, &to)
}

/// The edge pinned by default: the base edge if declared, else the first edge.
pub fn default_pinned_edge(g: &Graph) -> Option<(Vertex, Vertex)> {
    g.base_edge()
        .or_else(|| g.edges().iter().next().map(|e| (e.lo(), e.hi())))
}

/// The distance equations of a graph with one edge pinned.
#[derive(Debug, Clone)]
pub struct PinnedSystem {
    pub graph: Graph,
    pub lengths: EdgeLengths,
    /// `(origin, axis)`: `r_origin = (0,0)`, `r_axis = (pin, 0)`.
    pub pinned: (Vertex, Vertex),
    pub pin: C,
    /// Vertices held at given points besides the pinned pair.
    pub fixed: BTreeMap<Vertex, Point>,
    /// Free vertices; vertex `k` owns unknowns `2k` and `2k + 1`.
    pub unknowns: Vec<Vertex>,
    pub equation_edges: Vec<Edge>,
    pub system: PolySystem,
}

impl PinnedSystem {
    /// Pins `pinned_edge` with its smaller label at the origin.
    pub fn build(g: &Graph, lengths: &EdgeLengths, pinned_edge: Edge) -> Result<Self> {
        Self::build_oriented(g, lengths, pinned_edge.lo(), pinned_edge.hi())
    }

    /// Pins `origin` at `(0,0)` and `axis` on the positive x-axis.
    pub fn build_oriented(
        g: &Graph,
        lengths: &EdgeLengths,
        origin: Vertex,
        axis: Vertex,
    ) -> Result<Self> {
        Self::build_with_fixed(g, lengths, origin, axis, BTreeMap::new())
    }

    /// As [`PinnedSystem::build_oriented`], with further vertices held at
    /// given points. Edges between held vertices give no equation.
    pub fn build_with_fixed(
        g: &Graph,
        lengths: &EdgeLengths,
        origin: Vertex,
        axis: Vertex,
        fixed: BTreeMap<Vertex, Point>,
    ) -> Result<Self> {
        let pinned_edge = Edge::new(origin, axis)?;
        if !g.edges().contains(&pinned_edge) {
            return Err(Error::PinnedEdgeAbsent(pinned_edge));
        }
        let lengths = lengths.restrict(g)?;
        if lengths.len() != g.edge_count() {
            return Err(Error::MissingLength(pinned_edge));
        }
        let pin = C::new(lengths.get_f64(pinned_edge).expect("restricted"), 0.0).sqrt();
        let unknowns: Vec<Vertex> = g
            .vertices()
            .iter()
            .copied()
            .filter(|&v| v != origin && v != axis && !fixed.contains_key(&v))
            .collect();
        if let Some(&v) = fixed.keys().find(|v| !g.contains_vertex(**v)) {
            return Err(Error::UnknownVertex(v));
        }
        let mut sys = PinnedSystem {
            graph: g.clone(),
            lengths,
            pinned: (origin, axis),
            pin,
            fixed,
            unknowns,
            equation_edges: Vec::new(),
            system: PolySystem::default(),
        };
        let mut equations = Vec::new();
        for &e in g.edges() {
            if e == pinned_edge || (!sys.is_free(e.lo()) && !sys.is_free(e.hi())) {
                continue;
            }
            let l = C::new(sys.lengths.get_f64(e).expect("restricted"), 0.0);
            let d = Quadric::squared_distance(&sys.coord(e.lo()), &sys.coord(e.hi()));
            sys.equation_edges.push(e);
            equations.push(d.minus_constant(l));
        }
        sys.system = PolySystem::new(2 * sys.unknowns.len(), equations);
        Ok(sys)
    }

    /// Pins the default edge of `g`.
    pub fn build_default(g: &Graph, lengths: &EdgeLengths) -> Result<Self> {
        let (a, b) = default_pinned_edge(g).ok_or(Error::NotTight)?;
        Self::build_oriented(g, lengths, a, b)
    }

    /// Index of `v` among the free vertices.
    pub fn unknown_index(&self, v: Vertex) -> Option<usize> {
        self.unknowns.binary_search(&v).ok()
    }

    pub fn is_free(&self, v: Vertex) -> bool {
        self.unknown_index(v).is_some()
    }

    /// Coordinates of `v` as affine expressions in the unknowns.
    pub fn coord(&self, v: Vertex) -> [Linear; 2] {
        if let Some(p) = self.fixed.get(&v) {
            [Linear::constant(p[0]), Linear::constant(p[1])]
        } else if v == self.pinned.0 {
            [Linear::constant(zero()), Linear::constant(zero())]
        } else if v == self.pinned.1 {
            [Linear::constant(self.pin), Linear::constant(zero())]
        } else {
            let k = self.unknown_index(v).expect("vertex of the graph");
            [Linear::var(2 * k), Linear::var(2 * k + 1)]
        }
    }

    pub fn unknown_count(&self) -> usize {
        self.system.nvars
    }

    pub fn equation_count(&self) -> usize {
        self.system.equations.len()
    }

    /// Number of linear slices that make the system square.
    pub fn fiber_dimension(&self) -> usize {
        self.unknown_count().saturating_sub(self.equation_count())
    }

    pub fn realization(&self, x: &[C]) -> Realization {
        let mut points = BTreeMap::new();
        points.insert(self.pinned.0, [zero(), zero()]);
        points.insert(self.pinned.1, [self.pin, zero()]);
        points.extend(self.fixed.iter().map(|(&v, &p)| (v, p)));
        for (k, &v) in self.unknowns.iter().enumerate() {
            points.insert(v, [x[2 * k], x[2 * k + 1]]);
        }
        Realization::new(points, &self.lengths)
    }

    /// Inverse of [`PinnedSystem::realization`] on free vertices.
    pub fn coordinates(&self, r: &Realization) -> Vec<C> {
        self.unknowns
            .iter()
            .flat_map(|v| r.point(*v).expect("vertex present"))
            .collect()
    }

    /// Random complex affine-linear form in all unknowns.
    pub fn random_slice(&self, rng: &mut impl Rng) -> Linear {
        random_linear((0..self.unknown_count()).collect(), rng)
    }

    /// The equations followed by `slices`.
    pub fn with_slices(&self, slices: &[Linear]) -> PolySystem {
        let mut equations = self.system.equations.clone();
        equations.extend(slices.iter().map(Quadric::from_linear));
        PolySystem::new(self.system.nvars, equations)
    }
}

/// `sum a_i x_i + b` over `vars` with random complex coefficients.
pub fn random_linear(vars: Vec<usize>, rng: &mut impl Rng) -> Linear {
    Linear {
        terms: vars
            .into_iter()
            .map(|i| (i, rng::random_complex(rng)))
            .collect(),
        constant: rng::random_complex(rng),
    }
}

/// Distinct solutions of a square system with their certification data.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSet {
    pub solutions: Vec<Realization>,
    /// Raw coordinates, aligned with `solutions`.
    pub coordinates: Vec<Vec<C>>,
    pub count: usize,
    pub seed: u64,
    pub paths: usize,
    pub diverged: usize,
    /// Finite endpoints with singular Jacobian (non-generic input).
    pub singular: usize,
    pub max_residual: f64,
    /// Smallest pairwise coordinate distance between solutions.
    pub min_separation: f64,
}

impl SolutionSet {
    fn from_report(report: SolveReport, system: &PinnedSystem, seed: u64) -> Self {
        let coordinates: Vec<Vec<C>> = report.solutions.iter().map(|e| e.x.clone()).collect();
        let solutions: Vec<Realization> =
            coordinates.iter().map(|x| system.realization(x)).collect();
        let max_residual = report
            .solutions
            .iter()
            .fold(0.0f64, |m, e| m.max(e.residual));
        let mut min_separation = f64::INFINITY;
        for (i, a) in coordinates.iter().enumerate() {
            for b in &coordinates[i + 1..] {
                let d = a
                    .iter()
                    .zip(b)
                    .fold(0.0f64, |m, (x, y)| m.max((x - y).norm()));
                min_separation = min_separation.min(d);
            }
        }
        SolutionSet {
            count: solutions.len(),
            solutions,
            coordinates,
            seed,
            paths: report.paths,
            diverged: report.diverged,
            singular: report.singular.len(),
            max_residual,
            min_separation,
        }
    }
}

/// Solves `system` (equations plus any slices) and maps the solutions back
/// to realizations of the pinned graph.
pub fn solve_system(
    pinned: &PinnedSystem,
    system: &PolySystem,
    seed: u64,
    opts: &SolveOptions,
) -> Result<SolutionSet> {
    let report = homotopy::solve(system, seed, opts)?;
    Ok(SolutionSet::from_report(report, pinned, seed))
}

/// All isolated complex solutions of a square pinned system.
pub fn solve_pinned(system: &PinnedSystem, seed: u64) -> Result<SolutionSet> {
    solve_system(system, &system.system, seed, &SolveOptions::default())
}

/// A pinned system cut down to points by linear slices.
#[derive(Debug, Clone)]
pub struct WitnessSet {
    pub pinned: PinnedSystem,
    pub slices: Vec<Linear>,
    pub points: SolutionSet,
}

impl WitnessSet {
    pub fn sliced_system(&self) -> PolySystem {
        self.pinned.with_slices(&self.slices)
    }
}

/// Witness points of the pinned fiber of `g` over `lengths`, cut by
/// `n_slices` random complex hyperplanes in all unknowns.
pub fn witness_points(
    g: &Graph,
    lengths: &EdgeLengths,
    n_slices: usize,
    seed: u64,
) -> Result<WitnessSet> {
    let pinned = PinnedSystem::build_default(g, lengths)?;
    let expected = pinned.fiber_dimension();
    if n_slices != expected || pinned.equation_count() + n_slices != pinned.unknown_count() {
        return Err(Error::SliceCount {
            expected,
            given: n_slices,
        });
    }
    let mut rng = rng::stream(seed, tag::SLICE);
    let slices: Vec<Linear> = (0..n_slices)
        .map(|_| pinned.random_slice(&mut rng))
        .collect();
    witness_points_with(pinned, slices, seed)
}

/// Witness points for given slices.
pub fn witness_points_with(
    pinned: PinnedSystem,
    slices: Vec<Linear>,
    seed: u64,
) -> Result<WitnessSet> {
    let system = pinned.with_slices(&slices);
    let points = solve_system(&pinned, &system, seed, &SolveOptions::default())?;
    Ok(WitnessSet {
        pinned,
        slices,
        points,
    })
}

/// Result of a certified realization count.
#[derive(Debug, Clone, PartialEq)]
pub struct RealizationCount {
    pub count: usize,
    /// Paths tracked by the primary solve.
    pub paths: usize,
    pub certified: bool,
    pub primary: SolutionSet,
}

/// Number of complex realizations of a tight graph modulo direct isometries,
/// for lengths sampled from `seed`.
///
/// Re-solves with an independent length sample and a different pinned edge;
/// disagreement is an error.
pub fn count_realizations(g: &Graph, seed: u64) -> Result<RealizationCount> {
    let lengths = EdgeLengths::sample(g, &mut rng::stream(seed, tag::LENGTHS));
    let check_seed = rng::child_seed(seed, tag::CERTIFY);
    let check = EdgeLengths::sample(g, &mut rng::stream(check_seed, tag::LENGTHS));
    count_with_check(g, &lengths, &check, seed, check_seed)
}

/// As [`count_realizations`] for fixed lengths; certification re-solves with
/// another pinned edge and start system.
pub fn count_realizations_with(
    g: &Graph,
    lengths: &EdgeLengths,
    seed: u64,
) -> Result<RealizationCount> {
    let check_seed = rng::child_seed(seed, tag::CERTIFY);
    count_with_check(g, lengths, lengths, seed, check_seed)
}

fn count_with_check(
    g: &Graph,
    lengths: &EdgeLengths,
    check: &EdgeLengths,
    seed: u64,
    check_seed: u64,
) -> Result<RealizationCount> {
    if !is_tight(g) {
        return Err(Error::NotTight);
    }
    if g.vertex_count() <= 2 {
        let primary = SolutionSet {
            solutions: Vec::new(),
            coordinates: Vec::new(),
            count: 1,
            seed,
            paths: 0,
            diverged: 0,
            singular: 0,
            max_residual: 0.0,
            min_separation: f64::INFINITY,
        };
        return Ok(RealizationCount {
            count: 1,
            paths: 0,
            certified: true,
            primary,
        });
    }
    let first = PinnedSystem::build_default(g, lengths)?;
    let last = *g.edges().iter().next_back().expect("tight graph has edges");
    let second = PinnedSystem::build(g, check, last)?;
    // A lost path shows up as a mismatch or a tracking failure; both are
    // retried with fresh start systems before giving up.
    let mut outcome = Err(Error::Certification("no solve attempted".into()));
    for attempt in 0..CERTIFY_ATTEMPTS {
        let salt = |s: u64| {
            if attempt == 0 {
                s
            } else {
                rng::child_seed(s, attempt)
            }
        };
        outcome = solve_pinned(&first, salt(seed)).and_then(|primary| {
            let other = solve_pinned(&second, salt(check_seed))?;
            certify(primary, &other)
        });
        match &outcome {
            Err(Error::TrackingFailure(_)) => continue,
            Err(Error::Certification(msg)) if msg.starts_with("realization counts differ") => {
                continue
            }
            _ => break,
        }
    }
    outcome
}

const CERTIFY_ATTEMPTS: u64 = 3;

fn certify(primary: SolutionSet, other: &SolutionSet) -> Result<RealizationCount> {
    if primary.singular > 0 || other.singular > 0 {
        return Err(Error::Certification(format!(
            "singular solutions found ({} and {}); lengths are not general",
            primary.singular, other.singular
        )));
    }
    if primary.count != other.count {
        return Err(Error::Certification(format!(
            "realization counts differ between solves: {} vs {}",
            primary.count, other.count
        )));
    }
    Ok(RealizationCount {
        count: primary.count,
        paths: primary.paths,
        certified: true,
        primary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;
    use crate::Rational;

    fn uniform(g: &Graph, values: &[(Vertex, Vertex, i64)]) -> EdgeLengths {
        let map = values
            .iter()
            .map(|&(a, b, l)| (Edge::new(a, b).unwrap(), Rational::from_integer(l)))
            .collect();
        EdgeLengths::new(g, map).unwrap()
    }

    #[test]
    fn triangle_closed_form() {
        let g = catalog("triangle").unwrap();
        let l = uniform(&g, &[(1, 2, 1), (1, 3, 1), (2, 3, 1)]);
        let sys = PinnedSystem::build(&g, &l, Edge::new(1, 2).unwrap()).unwrap();
        assert_eq!((sys.equation_count(), sys.unknown_count()), (2, 2));
        let sols = solve_pinned(&sys, 0).unwrap();
        assert_eq!(sols.count, 2);
        let h = 3f64.sqrt() / 2.0;
        let ys: Vec<f64> = sols
            .solutions
            .iter()
            .map(|r| r.point(3).unwrap()[1].re)
            .collect();
        for r in &sols.solutions {
            let p = r.point(3).unwrap();
            assert!((p[0] - C::new(0.5, 0.0)).norm() < 1e-12);
            assert!(p[1].im.abs() < 1e-12);
            assert!(r.max_residual < RESIDUAL_TOLERANCE);
        }
        assert!(ys.iter().any(|y| (y - h).abs() < 1e-12));
        assert!(ys.iter().any(|y| (y + h).abs() < 1e-12));
    }

    #[test]
    fn triangle_complex_pair() {
        let g = catalog("triangle").unwrap();
        let l = uniform(&g, &[(1, 2, 1), (1, 3, 1), (2, 3, 9)]);
        let sols = solve_pinned(&PinnedSystem::build_default(&g, &l).unwrap(), 5).unwrap();
        assert_eq!(sols.count, 2);
        let p = sols.solutions[0].point(3).unwrap();
        let q = sols.solutions[1].point(3).unwrap();
        // x = -7/2, y = ±i sqrt(45)/2
        assert!((p[0] - q[0]).norm() < 1e-10);
        assert!((p[1] + q[1]).norm() < 1e-10);
        assert!(p[1].im.abs() > 1e-3);
    }

    #[test]
    fn shapes_of_pinned_systems() {
        let mr = catalog("fig_mr").unwrap();
        let l = EdgeLengths::sample(&mr, &mut rng::stream(1, tag::LENGTHS));
        let sys = PinnedSystem::build_default(&mr, &l).unwrap();
        assert_eq!((sys.equation_count(), sys.unknown_count()), (4, 4));
        let h = catalog("fig_coupler").unwrap();
        let l = EdgeLengths::sample(&h, &mut rng::stream(1, tag::LENGTHS));
        let sys = PinnedSystem::build_default(&h, &l).unwrap();
        assert_eq!((sys.equation_count(), sys.unknown_count()), (5, 6));
        assert!(matches!(
            PinnedSystem::build(&h, &l, Edge::new(0, 1).unwrap()),
            Err(Error::PinnedEdgeAbsent(_))
        ));
    }

    #[test]
    fn small_counts() {
        assert_eq!(
            count_realizations(&catalog("triangle").unwrap(), 0)
                .unwrap()
                .count,
            2
        );
        assert_eq!(
            count_realizations(&catalog("fig_mr").unwrap(), 0)
                .unwrap()
                .count,
            4
        );
        let edge = Graph::from_edges([(3, 8)]).unwrap();
        assert_eq!(count_realizations(&edge, 0).unwrap().count, 1);
        assert_eq!(
            count_realizations(&catalog("fig_coupler").unwrap(), 0).unwrap_err(),
            Error::NotTight
        );
    }
}
