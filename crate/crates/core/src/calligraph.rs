//! Calligraphs: graphs with a base edge `{1,2}` and a coupler vertex `0`
//! such that adding `{1,0}` or `{2,0}` gives a tight graph.
//!
//! The class `[G] = (a, b, c)` is determined by gluing the basic calligraphs
//! `C_v`, `L` and `R` along `{0,1,2}`: the realization count of a glued
//! graph is the pairing of the two classes.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::components::component_number;
use crate::homotopy::{solve_overdetermined, SolveOptions};
use crate::realization::{
    count_realizations, random_linear, solve_system, witness_points_with, PinnedSystem, Point,
};
use crate::rng::{self, tag};
use crate::sparsity::{is_sparse, is_tight};
use crate::{EdgeLengths, Error, Graph, Rational, Result, Vertex};

/// The class `(a, b, c)` of a calligraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CalligraphClass {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl CalligraphClass {
    pub const L: CalligraphClass = CalligraphClass::new(1, 1, 0);
    pub const R: CalligraphClass = CalligraphClass::new(1, 0, 1);
    pub const C_V: CalligraphClass = CalligraphClass::new(2, 0, 0);

    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        CalligraphClass { a, b, c }
    }

    /// `2 (a1 a2 - b1 b2 - c1 c2)`: the realization count of a glued graph.
    pub fn pair(&self, other: &CalligraphClass) -> i64 {
        2 * (self.a * other.a - self.b * other.b - self.c * other.c)
    }
}

impl Add for CalligraphClass {
    type Output = CalligraphClass;

    fn add(self, o: CalligraphClass) -> CalligraphClass {
        CalligraphClass::new(self.a + o.a, self.b + o.b, self.c + o.c)
    }
}

impl Sub for CalligraphClass {
    type Output = CalligraphClass;

    fn sub(self, o: CalligraphClass) -> CalligraphClass {
        self + (-o)
    }
}

impl Neg for CalligraphClass {
    type Output = CalligraphClass;

    fn neg(self) -> CalligraphClass {
        CalligraphClass::new(-self.a, -self.b, -self.c)
    }
}

impl fmt::Display for CalligraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// `(one, two, zero)`: the ordered base edge and the coupler vertex.
fn labels(g: &Graph) -> Result<(Vertex, Vertex, Vertex)> {
    match (g.base_edge(), g.coupler_vertex()) {
        (Some((one, two)), Some(zero)) => Ok((one, two, zero)),
        _ => Err(Error::MissingLabels),
    }
}

pub fn is_calligraph(g: &Graph) -> Result<bool> {
    let (one, two, zero) = labels(g)?;
    if zero == one || zero == two {
        return Ok(false);
    }
    let tight_with = |a: Vertex| {
        !g.contains_edge(a, zero) && is_tight(&g.with_edge(a, zero).expect("labels are vertices"))
    };
    Ok(tight_with(one) || tight_with(two))
}

fn require_calligraph(g: &Graph) -> Result<(Vertex, Vertex, Vertex)> {
    let l = labels(g)?;
    if !is_calligraph(g)? {
        return Err(Error::NotCalligraph);
    }
    Ok(l)
}

/// Thinness of a calligraph, checked on `H = G + {1,0} + {2,0}`: if
/// `|V| > 3` every single-edge deletion of `H` is tight, and `H` stays
/// connected after deleting any two vertices.
pub fn is_thin(g: &Graph) -> Result<bool> {
    let (one, two, zero) = require_calligraph(g)?;
    let mut h = g.unlabeled();
    for a in [one, two] {
        if !h.contains_edge(a, zero) {
            h = h.with_edge(a, zero)?;
        }
    }
    if h.vertex_count() > 3 && !h.edges().iter().all(|&e| is_tight(&h.without_edge(e))) {
        return Ok(false);
    }
    let vs: Vec<Vertex> = h.vertices().iter().copied().collect();
    for (i, &u) in vs.iter().enumerate() {
        for &w in &vs[i + 1..] {
            if !h.without_vertices(&[u, w]).is_connected() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Realization count of a glued graph; 0 when it is not sparse.
fn glued_count(h: &Graph, seed: u64) -> Result<i64> {
    if !is_sparse(h) {
        return Ok(0);
    }
    if !is_tight(h) {
        return Err(Error::Certification(format!(
            "glued graph with {} vertices and {} edges is sparse but not tight",
            h.vertex_count(),
            h.edge_count()
        )));
    }
    Ok(count_realizations(h, seed)?.count as i64)
}

fn exact_div(n: i64, d: i64, what: &str) -> Result<i64> {
    if d == 0 || n % d != 0 {
        return Err(Error::Certification(format!(
            "{what}: {n} is not divisible by {d}"
        )));
    }
    Ok(n / d)
}

fn glue(g: &Graph, edges: &[(Vertex, Vertex)]) -> Result<Graph> {
    edges.iter().try_fold(g.clone(), |h, &(u, v)| {
        if h.contains_edge(u, v) {
            Ok(h)
        } else {
            h.with_edge(u, v)
        }
    })
}

/// The calligraph of the coupler figure on the labels of `g`, with two
/// fresh inner vertices. Its class is `(6,2,2)`.
fn four_bar(one: Vertex, two: Vertex, zero: Vertex, fresh: Vertex) -> Result<Graph> {
    let (p, q) = (fresh, fresh + 1);
    Graph::from_edges([(one, two), (two, q), (p, q), (one, p), (zero, p), (zero, q)])?
        .with_base_edge(one, two)?
        .with_coupler_vertex(zero)
}

/// The class of a calligraph.
///
/// `a = c(G ∪ C_v) / 4`, `b = a - c(G ∪ L) / 2`, `c = a - c(G ∪ R) / 2`
/// with `v` a fresh vertex. When `G` already contains `{1,0}` (or `{2,0}`)
/// the split with `L` (or `R`) degenerates; `b` (or `c`) then comes from the
/// split with the four-bar calligraph `K` of class `(6,2,2)` instead.
pub fn class_of(g: &Graph, seed: u64) -> Result<CalligraphClass> {
    let (one, two, zero) = require_calligraph(g)?;
    let has_l = g.contains_edge(one, zero);
    let has_r = g.contains_edge(two, zero);
    if has_l && has_r {
        return Err(Error::SplitUnavailable(format!(
            "both {{{one},{zero}}} and {{{two},{zero}}} are edges"
        )));
    }
    let fresh = g.max_vertex().expect("calligraph has vertices") + 1;
    let cv = glue(g, &[(two, fresh), (zero, fresh), (one, fresh)])?;
    let a = exact_div(glued_count(&cv, seed)?, 4, "count of G with C_v")?;
    let b_direct = |a: i64| -> Result<i64> {
        let n = glued_count(&g.with_edge(one, zero)?, seed)?;
        Ok(a - exact_div(n, 2, "count of G with L")?)
    };
    let c_direct = |a: i64| -> Result<i64> {
        let n = glued_count(&g.with_edge(two, zero)?, seed)?;
        Ok(a - exact_div(n, 2, "count of G with R")?)
    };
    if !has_l && !has_r {
        return Ok(CalligraphClass::new(a, b_direct(a)?, c_direct(a)?));
    }
    let k = four_bar(one, two, zero, fresh)?;
    let kc = class_of(&k, seed)?;
    let n = exact_div(glued_count(&g.union(&k), seed)?, 2, "count of G with K")?;
    // n = a aK - b bK - c cK
    if has_l {
        let c = c_direct(a)?;
        let b = exact_div(a * kc.a - c * kc.c - n, kc.b, "split with K")?;
        Ok(CalligraphClass::new(a, b, c))
    } else {
        let b = b_direct(a)?;
        let c = exact_div(a * kc.a - b * kc.b - n, kc.c, "split with K")?;
        Ok(CalligraphClass::new(a, b, c))
    }
}

/// Degree and genus predictions for the coupler curve of a thin calligraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CouplerPrediction {
    pub class: CalligraphClass,
    /// Number of irreducible components.
    pub k: u64,
    pub total_degree: i64,
    pub degree_per_component: Rational,
    pub multiplicity: u64,
}

impl CouplerPrediction {
    /// `α = (a, b, c) / k`.
    pub fn alpha(&self) -> [Rational; 3] {
        let k = self.k as i64;
        [self.class.a, self.class.b, self.class.c].map(|x| Rational::new(x, k))
    }

    /// Upper bound on the geometric genus of each component:
    /// `½ α·(α - (2,1,1)) + 1 - sing`.
    pub fn genus_bound(&self, sing: i64) -> Rational {
        let [x, y, z] = self.alpha();
        let one = Rational::from_integer(1);
        let two = Rational::from_integer(2);
        x * (x - two) - y * (y - one) - z * (z - one) + one - Rational::from_integer(sing)
    }
}

/// Predictions from a class and component count, for thin calligraphs.
pub fn predict(class: CalligraphClass, k: u64) -> CouplerPrediction {
    assert!(k > 0, "component count must be positive");
    CouplerPrediction {
        class,
        k,
        total_degree: 2 * class.a,
        degree_per_component: Rational::new(2 * class.a, k as i64),
        multiplicity: 1,
    }
}

/// Class and component number of a thin calligraph, turned into
/// predictions.
pub fn coupler_prediction(g: &Graph, seed: u64) -> Result<CouplerPrediction> {
    if !is_thin(g)? {
        return Err(Error::NotThin);
    }
    let class = class_of(g, seed)?;
    let k = component_number(g, seed)?.component_number;
    Ok(predict(class, k))
}

/// Pinned system of a calligraph with `λ_12 = 1`, base edge on the x-axis.
fn coupler_system(g: &Graph, seed: u64) -> Result<(PinnedSystem, Vertex)> {
    let (one, two, zero) = require_calligraph(g)?;
    let lengths = EdgeLengths::sample(g, &mut rng::stream(seed, tag::LENGTHS));
    Ok((PinnedSystem::build_oriented(g, &lengths, one, two)?, zero))
}

/// Witness points of the coupler curve cut by a random line in the
/// coupler coordinates, counted with multiplicity.
fn coupler_line_count(sys: &PinnedSystem, zero: Vertex, seed: u64, line: u64) -> Result<usize> {
    let k = sys.unknown_index(zero).ok_or(Error::NotCalligraph)?;
    let mut rng = rng::stream(rng::child_seed(seed, line), tag::SLICE);
    let slice = random_linear(alloc::vec![2 * k, 2 * k + 1], &mut rng);
    let ws = witness_points_with(sys.clone(), alloc::vec![slice], seed)?;
    Ok(ws.points.count)
}

/// A general point of the coupler curve.
fn coupler_point(sys: &PinnedSystem, zero: Vertex, seed: u64) -> Result<Point> {
    let k = sys.unknown_index(zero).ok_or(Error::NotCalligraph)?;
    let mut rng = rng::stream(rng::child_seed(seed, 7), tag::SLICE);
    let slice = random_linear(alloc::vec![2 * k, 2 * k + 1], &mut rng);
    let ws = witness_points_with(sys.clone(), alloc::vec![slice], seed)?;
    let r = ws
        .points
        .solutions
        .first()
        .ok_or_else(|| Error::Certification("coupler curve has no witness points".into()))?;
    Ok(r.point(zero).expect("coupler vertex"))
}

/// Number of pinned realizations with the coupler vertex at a general
/// point of the coupler curve.
pub fn coupler_multiplicity(g: &Graph, seed: u64) -> Result<usize> {
    let (sys, zero) = coupler_system(g, seed)?;
    let p = coupler_point(&sys, zero, seed)?;
    let (one, two) = sys.pinned;
    let held = PinnedSystem::build_with_fixed(
        &sys.graph,
        &sys.lengths,
        one,
        two,
        BTreeMap::from([(zero, p)]),
    )?;
    let report = solve_overdetermined(&held.system, seed, &SolveOptions::default())?;
    if report.solutions.is_empty() {
        return Err(Error::Certification(
            "no realization above the coupler point".into(),
        ));
    }
    Ok(report.solutions.len())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CouplerDegree {
    pub degree: usize,
    pub multiplicity: usize,
    /// Witness counts on the two lines, before dividing by the multiplicity.
    pub line_counts: [usize; 2],
}

/// Degree of the coupler curve: intersections with a random line, counted
/// on two independent lines and divided by the coupler multiplicity.
pub fn coupler_degree_numeric(g: &Graph, seed: u64) -> Result<CouplerDegree> {
    let (sys, zero) = coupler_system(g, seed)?;
    let line_counts = [
        coupler_line_count(&sys, zero, seed, 1)?,
        coupler_line_count(&sys, zero, seed, 2)?,
    ];
    if line_counts[0] != line_counts[1] {
        return Err(Error::Certification(format!(
            "coupler line counts differ: {} vs {}",
            line_counts[0], line_counts[1]
        )));
    }
    let multiplicity = coupler_multiplicity(g, seed)?;
    let degree = exact_div(line_counts[0] as i64, multiplicity as i64, "coupler degree")?;
    Ok(CouplerDegree {
        degree: degree as usize,
        multiplicity,
        line_counts,
    })
}

/// Witness points of the coupler fiber on a random coupler line, as
/// realizations with their lengths.
pub fn coupler_witnesses(
    g: &Graph,
    seed: u64,
) -> Result<(EdgeLengths, crate::realization::SolutionSet)> {
    let (sys, zero) = coupler_system(g, seed)?;
    let k = sys.unknown_index(zero).ok_or(Error::NotCalligraph)?;
    let mut rng = rng::stream(rng::child_seed(seed, 1), tag::SLICE);
    let slice = random_linear(alloc::vec![2 * k, 2 * k + 1], &mut rng);
    let system = sys.with_slices(&[slice]);
    let points = solve_system(&sys, &system, seed, &SolveOptions::default())?;
    Ok((sys.lengths, points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;

    #[test]
    fn pairing_values() {
        let h = CalligraphClass::new(6, 2, 2);
        assert_eq!(h.pair(&CalligraphClass::C_V), 24);
        assert_eq!(CalligraphClass::L.pair(&CalligraphClass::R), 2);
        assert_eq!(h.pair(&CalligraphClass::default()), 0);
    }

    #[test]
    fn recognition_and_thinness() {
        for name in ["L", "R", "C_v", "fig_main2", "fig_split_H", "fig_main1"] {
            assert!(is_calligraph(&catalog(name).unwrap()).unwrap(), "{name}");
        }
        assert!(is_thin(&catalog("fig_m_left").unwrap()).unwrap());
        assert!(!is_thin(&catalog("fig_m_right").unwrap()).unwrap());
        assert!(is_thin(&catalog("fig_main2").unwrap()).unwrap());
        assert!(is_thin(&catalog("fig_main1").unwrap()).unwrap());
        assert_eq!(
            is_calligraph(&catalog("triangle").unwrap()),
            Err(Error::MissingLabels)
        );
    }

    #[test]
    fn basic_classes() {
        assert_eq!(
            class_of(&catalog("L").unwrap(), 0).unwrap(),
            CalligraphClass::L
        );
        assert_eq!(
            class_of(&catalog("R").unwrap(), 0).unwrap(),
            CalligraphClass::R
        );
        assert_eq!(
            class_of(&catalog("C_v").unwrap(), 0).unwrap(),
            CalligraphClass::C_V
        );
    }

    #[test]
    fn split_classes() {
        let h = class_of(&catalog("fig_split_H").unwrap(), 0).unwrap();
        assert_eq!(h, CalligraphClass::new(6, 2, 2));
        let c5 = class_of(&catalog("fig_split_C5").unwrap(), 0).unwrap();
        assert_eq!(h.pair(&c5), 24);
        // contains {1,0}, so b comes from the four-bar split
        let m = class_of(&catalog("fig_m_right").unwrap(), 0).unwrap();
        assert_eq!(m, CalligraphClass::new(2, 2, 0));
    }

    #[test]
    fn genus_arithmetic() {
        assert_eq!(
            predict(CalligraphClass::new(272, 0, 0), 16).genus_bound(0),
            Rational::from_integer(256)
        );
        let p = predict(CalligraphClass::new(11, 3, 3), 1);
        assert_eq!(p.genus_bound(0), Rational::from_integer(88));
        assert_eq!(p.degree_per_component, Rational::from_integer(22));
        let h = predict(CalligraphClass::new(6, 2, 2), 2);
        assert_eq!(h.genus_bound(0), Rational::from_integer(4));
        assert_eq!(h.genus_bound(1), Rational::from_integer(3));
    }

    #[test]
    fn multiplicities() {
        assert_eq!(
            coupler_multiplicity(&catalog("fig_m_left").unwrap(), 0).unwrap(),
            1
        );
        assert_eq!(
            coupler_multiplicity(&catalog("fig_m_right").unwrap(), 0).unwrap(),
            2
        );
    }

    #[test]
    fn small_coupler_degrees() {
        let d = coupler_degree_numeric(&catalog("L").unwrap(), 0).unwrap();
        assert_eq!((d.degree, d.multiplicity), (2, 1));
        let d = coupler_degree_numeric(&catalog("fig_m_right").unwrap(), 0).unwrap();
        assert_eq!((d.degree, d.multiplicity, d.line_counts), (2, 2, [4, 4]));
    }
}
