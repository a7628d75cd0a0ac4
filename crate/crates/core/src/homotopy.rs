//! Homotopy continuation for square systems of quadrics.
//!
//! Paths run from `t = 1` (start system) to `t = 0` (target) with an RK4
//! predictor on the Davidenko equation and a Newton corrector. Step sizes
//! adapt to corrector success. Paths whose norm exceeds the divergence bound
//! are truncated; finite endpoints are Newton-refined on the target.

use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{norm_inf, Lu};
use crate::poly::{Linear, PolySystem, Quadric};
use crate::rng::{self, tag};
use crate::{Error, Result, C};

/// A family `H(x, t)` of square systems.
pub trait Homotopy: Sync {
    fn dim(&self) -> usize;
    fn value(&self, x: &[C], t: f64) -> Vec<C>;
    /// Row-major `dH/dx`.
    fn jacobian(&self, x: &[C], t: f64) -> Vec<C>;
    fn dt(&self, x: &[C], t: f64) -> Vec<C>;

    /// True when `x` is numerically at infinity; tracking stops there.
    fn at_infinity(&self, _x: &[C]) -> bool {
        false
    }
}

/// `H = t * start + (1 - t) * target`.
pub struct StraightLine<'a> {
    pub start: &'a PolySystem,
    pub target: &'a PolySystem,
    /// Variable 0 is the homogenizing coordinate.
    pub projective: bool,
}

impl Homotopy for StraightLine<'_> {
    fn dim(&self) -> usize {
        self.target.nvars
    }

    fn value(&self, x: &[C], t: f64) -> Vec<C> {
        self.start
            .equations
            .iter()
            .zip(&self.target.equations)
            .map(|(s, f)| s.eval(x) * t + f.eval(x) * (1.0 - t))
            .collect()
    }

    fn jacobian(&self, x: &[C], t: f64) -> Vec<C> {
        let mut jac = self.target.jacobian(x);
        for v in jac.iter_mut() {
            *v *= 1.0 - t;
        }
        self.start.add_jacobian(x, C::new(t, 0.0), &mut jac);
        jac
    }

    fn dt(&self, x: &[C], _t: f64) -> Vec<C> {
        self.start
            .equations
            .iter()
            .zip(&self.target.equations)
            .map(|(s, f)| s.eval(x) - f.eval(x))
            .collect()
    }

    fn at_infinity(&self, x: &[C]) -> bool {
        self.projective && x[0].norm() <= 1e-10 * norm_inf(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackerOptions {
    pub initial_step: f64,
    pub max_step: f64,
    pub min_step: f64,
    /// Relative Newton step size accepted as converged.
    pub corrector_tol: f64,
    pub max_corrector_iters: usize,
    pub divergence_norm: f64,
    pub max_steps: usize,
}

impl Default for TrackerOptions {
    fn default() -> Self {
        TrackerOptions {
            initial_step: 0.01,
            max_step: 0.05,
            min_step: 1e-14,
            corrector_tol: 1e-10,
            max_corrector_iters: 3,
            divergence_norm: 1e8,
            max_steps: 3_000,
        }
    }
}

impl TrackerOptions {
    /// Smaller steps and a stricter corrector, for retries.
    pub fn tightened(&self) -> Self {
        TrackerOptions {
            initial_step: self.initial_step / 4.0,
            max_step: self.max_step / 4.0,
            corrector_tol: self.corrector_tol / 10.0,
            max_steps: self.max_steps * 2,
            ..*self
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PathEnd {
    /// Reached `t = 0` at a finite point (not yet refined).
    Finite(Vec<C>),
    Diverged,
    Failed {
        t: f64,
        x: Vec<C>,
    },
}

fn newton_step<H: Homotopy + ?Sized>(h: &H, x: &[C], t: f64) -> Option<Vec<C>> {
    let n = h.dim();
    let lu = Lu::new(n, &h.jacobian(x, t))?;
    Some(lu.solve(&h.value(x, t)))
}

fn tangent<H: Homotopy + ?Sized>(h: &H, x: &[C], t: f64) -> Option<Vec<C>> {
    let n = h.dim();
    let lu = Lu::new(n, &h.jacobian(x, t))?;
    let rhs = h.dt(x, t);
    Some(lu.solve(&rhs).into_iter().map(|v| -v).collect())
}

fn axpy(x: &[C], a: f64, d: &[C]) -> Vec<C> {
    x.iter().zip(d).map(|(xi, di)| xi + di * a).collect()
}

/// RK4 step from `t` to `t - h`.
fn predict<H: Homotopy + ?Sized>(hom: &H, x: &[C], t: f64, h: f64) -> Option<Vec<C>> {
    let k1 = tangent(hom, x, t)?;
    let k2 = tangent(hom, &axpy(x, -h / 2.0, &k1), t - h / 2.0)?;
    let k3 = tangent(hom, &axpy(x, -h / 2.0, &k2), t - h / 2.0)?;
    let k4 = tangent(hom, &axpy(x, -h, &k3), t - h)?;
    Some(
        (0..x.len())
            .map(|i| x[i] - (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0))
            .collect(),
    )
}

fn correct<H: Homotopy + ?Sized>(
    h: &H,
    mut x: Vec<C>,
    t: f64,
    opts: &TrackerOptions,
) -> Option<Vec<C>> {
    let mut prev = f64::INFINITY;
    for _ in 0..opts.max_corrector_iters {
        let dx = newton_step(h, &x, t)?;
        for (xi, di) in x.iter_mut().zip(&dx) {
            *xi -= di;
        }
        let size = norm_inf(&dx);
        if !size.is_finite() || size > prev * 0.5 {
            return None;
        }
        if size <= opts.corrector_tol * (1.0 + norm_inf(&x)) {
            return Some(x);
        }
        prev = size;
    }
    None
}

/// Tracks one path from `t = 1` to `t = 0`.
pub fn track<H: Homotopy + ?Sized>(h: &H, start: &[C], opts: &TrackerOptions) -> PathEnd {
    let mut x = start.to_vec();
    let mut t = 1.0f64;
    let mut step = opts.initial_step;
    let mut streak = 0;
    for _ in 0..opts.max_steps {
        if t <= 0.0 {
            return PathEnd::Finite(x);
        }
        let dt = step.min(t);
        let next_t = if dt >= t { 0.0 } else { t - dt };
        let accepted = predict(h, &x, t, dt).and_then(|xp| correct(h, xp, next_t, opts));
        match accepted {
            Some(xn) => {
                x = xn;
                t = next_t;
                if norm_inf(&x) > opts.divergence_norm || (t < 1e-3 && h.at_infinity(&x)) {
                    return PathEnd::Diverged;
                }
                streak += 1;
                if streak >= 3 {
                    step = (step * 2.0).min(opts.max_step);
                    streak = 0;
                }
            }
            None => {
                streak = 0;
                step /= 2.0;
                if step < opts.min_step {
                    return PathEnd::Failed { t, x };
                }
            }
        }
    }
    if t <= 0.0 {
        PathEnd::Finite(x)
    } else {
        PathEnd::Failed { t, x }
    }
}

/// Tracks every start point; parallel when the `std` feature is on.
pub fn track_all<H: Homotopy + ?Sized>(
    h: &H,
    starts: &[Vec<C>],
    opts: &TrackerOptions,
) -> Vec<PathEnd> {
    #[cfg(feature = "std")]
    {
        use rayon::prelude::*;
        starts.par_iter().map(|s| track(h, s, opts)).collect()
    }
    #[cfg(not(feature = "std"))]
    {
        starts.iter().map(|s| track(h, s, opts)).collect()
    }
}

/// Newton refinement on the target system.
///
/// Returns the point, its residual and the LU pivot ratio of the Jacobian.
pub fn refine(system: &PolySystem, x: &[C], iterations: usize) -> Option<(Vec<C>, f64, f64)> {
    let n = system.nvars;
    let mut x = x.to_vec();
    let mut last_ratio = 0.0;
    for _ in 0..iterations {
        let lu = Lu::new(n, &system.jacobian(&x))?;
        last_ratio = lu.pivot_ratio;
        let dx = lu.solve(&system.eval(&x));
        for (xi, di) in x.iter_mut().zip(&dx) {
            *xi -= di;
        }
        if !norm_inf(&x).is_finite() {
            return None;
        }
        if norm_inf(&dx) <= 1e-15 * (1.0 + norm_inf(&x)) {
            break;
        }
    }
    let residual = system.residual(&x);
    Some((x, residual, last_ratio))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions {
    pub tracker: TrackerOptions,
    /// Refuse start systems with more paths than this.
    pub max_paths: u64,
    /// Re-tracking rounds for failed or colliding paths.
    pub retries: usize,
    /// Relative distance below which two endpoints are the same solution.
    pub cluster_tol: f64,
    /// Largest accepted residual after refinement, relative to the squared
    /// coordinate scale (see [`SolveOptions::residual_bound`]).
    pub residual_tol: f64,
    /// Pivot ratio below which an endpoint counts as singular.
    pub singular_ratio: f64,
    /// Failed paths that stopped below this `t` are handed to the endgame.
    pub endgame_t: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tracker: TrackerOptions::default(),
            max_paths: 1 << 16,
            retries: 2,
            cluster_tol: 1e-6,
            residual_tol: 1e-10,
            singular_ratio: 1e-10,
            endgame_t: 1e-3,
        }
    }
}

impl SolveOptions {
    /// Accepted residual at `x`: `residual_tol * max(1, |x|^2)`, since the
    /// equations are quadratic and lose absolute precision at large scale.
    pub fn residual_bound(&self, x: &[C]) -> f64 {
        self.residual_tol * {
            let s = norm_inf(x);
            s * s
        }
        .max(1.0)
    }
}

/// A refined finite endpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct Endpoint {
    pub x: Vec<C>,
    pub residual: f64,
    pub pivot_ratio: f64,
    pub path: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SolveReport {
    /// Distinct nonsingular solutions, sorted.
    pub solutions: Vec<Endpoint>,
    /// Finite endpoints with a near-singular Jacobian.
    pub singular: Vec<Endpoint>,
    pub paths: usize,
    pub diverged: usize,
    pub failed: usize,
}

/// Start system `gamma * (x_i^{d_i} - 1)` and its solutions.
pub fn total_degree_start(system: &PolySystem, gamma: C) -> (PolySystem, Vec<Vec<C>>) {
    let n = system.nvars;
    let degrees = system.degrees();
    let one = C::new(1.0, 0.0);
    let equations = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let q = if d == 2 {
                Quadric::square(&Linear::var(i))
            } else {
                Quadric::from_linear(&Linear::var(i))
            };
            q.minus_constant(one).scale(gamma)
        })
        .collect();
    let total: usize = degrees.iter().map(|&d| d as usize).product();
    let mut starts = Vec::with_capacity(total);
    for k in 0..total {
        let mut rem = k;
        let mut x = vec![one; n];
        for (i, &d) in degrees.iter().enumerate() {
            let r = rem % d as usize;
            rem /= d as usize;
            x[i] = if r == 0 { one } else { -one };
        }
        starts.push(x);
    }
    (PolySystem::new(n, equations), starts)
}

/// Coordinates in which paths are tracked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    Affine,
    /// Homogeneous coordinates with the extra variable first, on a random
    /// affine patch; paths to infinity stay bounded.
    Projective,
}

/// Affine point for `x`, or `None` when it lies (numerically) at infinity.
fn affine_point(chart: Chart, x: &[C], tol: f64) -> Option<Vec<C>> {
    match chart {
        Chart::Affine => Some(x.to_vec()),
        Chart::Projective => {
            let w = x[0];
            if w.norm() <= tol * norm_inf(x) {
                return None;
            }
            Some(x[1..].iter().map(|v| v / w).collect())
        }
    }
}

/// Turns raw path ends into a report: refines finite ends, runs the endgame
/// on late failures, re-tracks early failures and colliding paths.
pub fn finish_paths<H: Homotopy + ?Sized>(
    h: &H,
    target: &PolySystem,
    chart: Chart,
    starts: &[Vec<C>],
    mut ends: Vec<PathEnd>,
    opts: &SolveOptions,
) -> Result<SolveReport> {
    let mut tracker = opts.tracker;
    for round in 0..=opts.retries {
        let mut report = SolveReport {
            paths: starts.len(),
            ..SolveReport::default()
        };
        let mut retry = Vec::new();
        let mut finite: Vec<Endpoint> = Vec::new();
        for (path, end) in ends.iter().enumerate() {
            let (x, late) = match end {
                PathEnd::Finite(x) => match affine_point(chart, x, 1e-8) {
                    Some(x) => (x, false),
                    None => {
                        report.diverged += 1;
                        continue;
                    }
                },
                PathEnd::Diverged => {
                    report.diverged += 1;
                    continue;
                }
                PathEnd::Failed { t, x } => match affine_point(chart, x, 1e-4) {
                    // stalled on the way to infinity
                    None => {
                        report.diverged += 1;
                        continue;
                    }
                    Some(x) if *t <= opts.endgame_t => (x, true),
                    Some(_) => {
                        retry.push(path);
                        continue;
                    }
                },
            };
            let refined = refine(target, &x, 8).filter(|(y, _, _)| {
                // an endgame refinement must not jump onto another path
                !late || distance(&x, y) <= 1e-2 * (1.0 + norm_inf(y))
            });
            match refined {
                Some((x, residual, pivot_ratio))
                    if residual <= opts.residual_bound(&x)
                        && pivot_ratio >= opts.singular_ratio =>
                {
                    finite.push(Endpoint {
                        x,
                        residual,
                        pivot_ratio,
                        path,
                    })
                }
                Some((x, residual, pivot_ratio))
                    if !late && residual <= libm::sqrt(opts.residual_bound(&x)) =>
                {
                    report.singular.push(Endpoint {
                        x,
                        residual,
                        pivot_ratio,
                        path,
                    })
                }
                _ if !late => retry.push(path),
                // late failure that does not refine: heading to infinity
                _ => report.diverged += 1,
            }
        }
        let (unique, collided) = cluster(finite, opts.cluster_tol);
        retry.extend(collided);
        report.solutions = unique;
        report.failed = retry.len();
        if retry.is_empty() {
            return Ok(report);
        }
        if round == opts.retries {
            return Err(Error::TrackingFailure(retry.len()));
        }
        tracker = tracker.tightened();
        let redo: Vec<Vec<C>> = retry.iter().map(|&p| starts[p].clone()).collect();
        for (&p, end) in retry.iter().zip(track_all(h, &redo, &tracker)) {
            ends[p] = end;
        }
    }
    unreachable!("loop returns on the last round")
}

fn distance(a: &[C], b: &[C]) -> f64 {
    a.iter()
        .zip(b)
        .fold(0.0f64, |m, (x, y)| m.max((x - y).norm()))
}

fn same_point(a: &[C], b: &[C], tol: f64) -> bool {
    distance(a, b) <= tol * (1.0 + norm_inf(a).max(norm_inf(b)))
}

/// Sorted distinct endpoints, and the paths of every member of a collision.
fn cluster(mut pts: Vec<Endpoint>, tol: f64) -> (Vec<Endpoint>, Vec<usize>) {
    pts.sort_by(|a, b| cmp_points(&a.x, &b.x));
    let mut collided = Vec::new();
    let mut unique: Vec<Endpoint> = Vec::new();
    for p in pts {
        if let Some(q) = unique.iter().find(|q| same_point(&q.x, &p.x, tol)) {
            if !collided.contains(&q.path) {
                collided.push(q.path);
            }
            collided.push(p.path);
        } else {
            unique.push(p);
        }
    }
    if !collided.is_empty() {
        unique.retain(|q| !collided.contains(&q.path));
    }
    (unique, collided)
}

/// Lexicographic order on real then imaginary parts.
pub fn cmp_points(a: &[C], b: &[C]) -> core::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
        if o.is_ne() {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

/// All isolated nonsingular solutions of a square system by a total-degree
/// homotopy with a random `gamma` drawn from `seed`.
pub fn solve(system: &PolySystem, seed: u64, opts: &SolveOptions) -> Result<SolveReport> {
    if !system.is_square() {
        return Err(Error::NotSquare {
            equations: system.equations.len(),
            unknowns: system.nvars,
        });
    }
    let paths = system.bezout_number();
    if paths > opts.max_paths {
        return Err(Error::TooManyPaths(paths));
    }
    if system.nvars == 0 {
        return Ok(SolveReport {
            solutions: vec![Endpoint {
                x: Vec::new(),
                residual: 0.0,
                pivot_ratio: 1.0,
                path: 0,
            }],
            paths: 1,
            ..SolveReport::default()
        });
    }
    let mut rng = rng::stream(seed, tag::GAMMA);
    let gamma = rng::unit_complex(&mut rng);
    let (start, starts) = total_degree_start(system, gamma);
    // Track in homogeneous coordinates on the patch `a . X = 1`.
    let patch: Vec<C> = (0..=system.nvars)
        .map(|_| rng::random_complex(&mut rng))
        .collect();
    let lift = |sys: &PolySystem| {
        let mut equations: Vec<Quadric> = sys
            .equations
            .iter()
            .zip(system.degrees())
            .map(|(q, d)| q.homogenized(d))
            .collect();
        equations.push(Quadric {
            linear: patch.iter().copied().enumerate().collect(),
            constant: C::new(-1.0, 0.0),
            ..Quadric::default()
        });
        PolySystem::new(sys.nvars + 1, equations)
    };
    let (hstart, htarget) = (lift(&start), lift(system));
    let hstarts: Vec<Vec<C>> = starts
        .iter()
        .map(|x| {
            let mut big = Vec::with_capacity(x.len() + 1);
            big.push(C::new(1.0, 0.0));
            big.extend_from_slice(x);
            let scale = patch
                .iter()
                .zip(&big)
                .fold(C::new(0.0, 0.0), |acc, (a, v)| acc + a * v);
            big.iter().map(|v| v / scale).collect()
        })
        .collect();
    let h = StraightLine {
        start: &hstart,
        target: &htarget,
        projective: true,
    };
    let ends = track_all(&h, &hstarts, &opts.tracker);
    finish_paths(&h, system, Chart::Projective, &hstarts, ends, opts)
}

/// Solutions of a system with at least as many equations as unknowns.
///
/// Extra equations are folded into the first `nvars` with random complex
/// weights; solutions of the folded square system are kept when they
/// satisfy every original equation.
pub fn solve_overdetermined(
    system: &PolySystem,
    seed: u64,
    opts: &SolveOptions,
) -> Result<SolveReport> {
    let n = system.nvars;
    let m = system.equations.len();
    if m < n {
        return Err(Error::NotSquare {
            equations: m,
            unknowns: n,
        });
    }
    if m == n {
        return solve(system, seed, opts);
    }
    if n == 0 {
        let residual = system.residual(&[]);
        let solutions = if residual <= opts.residual_tol {
            vec![Endpoint {
                x: Vec::new(),
                residual,
                pivot_ratio: 1.0,
                path: 0,
            }]
        } else {
            Vec::new()
        };
        return Ok(SolveReport {
            solutions,
            paths: 1,
            ..SolveReport::default()
        });
    }
    let mut rng = rng::stream(seed, tag::RANDOMIZE);
    let square: Vec<Quadric> = system.equations[..n]
        .iter()
        .map(|f| {
            system.equations[n..].iter().fold(f.clone(), |acc, g| {
                acc.add(&g.scale(rng::random_complex(&mut rng)))
            })
        })
        .collect();
    let mut report = solve(&PolySystem::new(n, square), seed, opts)?;
    report
        .solutions
        .retain(|e| system.residual(&e.x) <= opts.residual_bound(&e.x) * 10.0);
    Ok(report)
}

/// `[F(x); gamma t from(x) + (1 - t) to(x)]`: moves linear slices while
/// keeping the equations `F` fixed. A random complex `gamma` keeps the path
/// away from branch points even when both ends are real.
pub struct SliceHomotopy<'a> {
    pub equations: &'a PolySystem,
    pub from: &'a [Linear],
    pub to: &'a [Linear],
    pub gamma: C,
}

impl Homotopy for SliceHomotopy<'_> {
    fn dim(&self) -> usize {
        self.equations.nvars
    }

    fn value(&self, x: &[C], t: f64) -> Vec<C> {
        let mut v = self.equations.eval(x);
        v.extend(
            self.from
                .iter()
                .zip(self.to)
                .map(|(a, b)| a.eval(x) * self.gamma * t + b.eval(x) * (1.0 - t)),
        );
        v
    }

    fn jacobian(&self, x: &[C], t: f64) -> Vec<C> {
        let n = self.dim();
        let mut jac = self.equations.jacobian(x);
        for (a, b) in self.from.iter().zip(self.to) {
            let mut row = vec![C::new(0.0, 0.0); n];
            for &(i, c) in &a.terms {
                row[i] += c * self.gamma * t;
            }
            for &(i, c) in &b.terms {
                row[i] += c * (1.0 - t);
            }
            jac.extend(row);
        }
        jac
    }

    fn dt(&self, x: &[C], _t: f64) -> Vec<C> {
        let mut v = vec![C::new(0.0, 0.0); self.equations.equations.len()];
        v.extend(
            self.from
                .iter()
                .zip(self.to)
                .map(|(a, b)| a.eval(x) * self.gamma - b.eval(x)),
        );
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C {
        C::new(re, 0.0)
    }

    #[test]
    fn univariate_quadratic() {
        // x^2 - 3x + 2
        let q = Quadric {
            quadratic: vec![(0, 0, c(1.0))],
            linear: vec![(0, c(-3.0))],
            constant: c(2.0),
        };
        let sys = PolySystem::new(1, vec![q]);
        let r = solve(&sys, 1, &SolveOptions::default()).unwrap();
        assert_eq!(r.solutions.len(), 2);
        assert!((r.solutions[0].x[0] - c(1.0)).norm() < 1e-12);
        assert!((r.solutions[1].x[0] - c(2.0)).norm() < 1e-12);
    }

    #[test]
    fn circles_with_diverging_paths() {
        // (x - 1)^2 + y^2 = 1 against the unit circle: two finite points out
        // of four paths.
        let p = [Linear::var(0), Linear::var(1)];
        let o = [Linear::constant(c(0.0)), Linear::constant(c(0.0))];
        let shifted = [Linear::constant(c(1.0)), Linear::constant(c(0.0))];
        let sys = PolySystem::new(
            2,
            vec![
                Quadric::squared_distance(&p, &o).minus_constant(c(1.0)),
                Quadric::squared_distance(&p, &shifted).minus_constant(c(1.0)),
            ],
        );
        let r = solve(&sys, 3, &SolveOptions::default()).unwrap();
        assert_eq!(r.paths, 4);
        assert_eq!(r.solutions.len(), 2);
        assert_eq!(r.diverged, 2);
        for s in &r.solutions {
            assert!((s.x[0] - c(0.5)).norm() < 1e-12);
            assert!(s.x[1].im.abs() < 1e-12);
            assert!((s.x[1].re.abs() - 3f64.sqrt() / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn refuses_non_square() {
        let sys = PolySystem::new(2, vec![Quadric::from_linear(&Linear::var(0))]);
        assert!(matches!(
            solve(&sys, 0, &SolveOptions::default()),
            Err(Error::NotSquare { .. })
        ));
    }
}
