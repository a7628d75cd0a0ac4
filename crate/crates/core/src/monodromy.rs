//! Monodromy grouping of witness points.
//!
//! Moving the slice around a closed loop permutes the witness points; points
//! exchanged by some loop lie on the same irreducible component. Grouping by
//! monodromy can only merge, so it bounds the component count from below
//! without using the decomposition.

use alloc::format;
use alloc::vec::Vec;

use crate::homotopy::{track_all, PathEnd, SliceHomotopy, TrackerOptions};
use crate::linalg::norm_inf;
use crate::poly::Linear;
use crate::realization::{random_linear, WitnessSet};
use crate::rng::{self, tag};
use crate::{Error, Result, C};

#[derive(Debug, Clone, PartialEq)]
pub struct MonodromyReport {
    /// Orbits as sorted witness indices, ordered by smallest member.
    pub orbits: Vec<Vec<usize>>,
    /// Completed loops, including those that changed nothing.
    pub loops: usize,
    /// Loops abandoned because a path failed or did not return to the set.
    pub abandoned: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonodromyOptions {
    /// Stop after this many consecutive loops without a merge.
    pub stable_loops: usize,
    pub max_loops: usize,
    /// Relative tolerance for matching returned points to witness points.
    pub match_tol: f64,
}

impl Default for MonodromyOptions {
    fn default() -> Self {
        MonodromyOptions {
            stable_loops: 6,
            max_loops: 40,
            match_tol: 1e-6,
        }
    }
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    let mut i = i;
    while parent[i] != r {
        let next = parent[i];
        parent[i] = r;
        i = next;
    }
    r
}

/// Groups the witness points of `ws` by random triangular loops
/// `L0 -> L1 -> L2 -> L0` in the space of slices.
pub fn monodromy_orbits(
    ws: &WitnessSet,
    seed: u64,
    opts: &MonodromyOptions,
) -> Result<MonodromyReport> {
    let points = &ws.points.coordinates;
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut rng = rng::stream(seed, tag::MONODROMY);
    let vars: Vec<Vec<usize>> = ws
        .slices
        .iter()
        .map(|s| s.terms.iter().map(|&(i, _)| i).collect())
        .collect();
    let tracker = TrackerOptions::default();
    let (mut loops, mut abandoned, mut quiet) = (0, 0, 0);
    while loops < opts.max_loops && quiet < opts.stable_loops && n > 1 {
        let l1: Vec<Linear> = vars
            .iter()
            .map(|v| random_linear(v.clone(), &mut rng))
            .collect();
        let l2: Vec<Linear> = vars
            .iter()
            .map(|v| random_linear(v.clone(), &mut rng))
            .collect();
        let legs = [(&ws.slices, &l1), (&l1, &l2), (&l2, &ws.slices)];
        let mut current: Vec<Vec<C>> = points.clone();
        let mut ok = true;
        for (from, to) in legs {
            let h = SliceHomotopy {
                equations: &ws.pinned.system,
                from,
                to,
                gamma: C::new(1.0, 0.0),
            };
            let ends = track_all(&h, &current, &tracker);
            let mut next = Vec::with_capacity(n);
            for end in ends {
                match end {
                    PathEnd::Finite(x) => next.push(x),
                    _ => ok = false,
                }
            }
            if !ok {
                break;
            }
            current = next;
        }
        loops += 1;
        if !ok {
            abandoned += 1;
            continue;
        }
        let perm = match match_points(points, &current, opts.match_tol) {
            Some(p) => p,
            None => {
                abandoned += 1;
                continue;
            }
        };
        let mut merged = false;
        for (i, &j) in perm.iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
                merged = true;
            }
        }
        quiet = if merged { 0 } else { quiet + 1 };
    }
    if n > 1 && abandoned * 2 > loops {
        return Err(Error::Certification(format!(
            "monodromy abandoned {abandoned} of {loops} loops"
        )));
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut root_of: Vec<Option<usize>> = alloc::vec![None; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        match root_of[r] {
            Some(k) => orbits[k].push(i),
            None => {
                root_of[r] = Some(orbits.len());
                orbits.push(alloc::vec![i]);
            }
        }
    }
    Ok(MonodromyReport {
        orbits,
        loops,
        abandoned,
    })
}

/// `perm[i] = j` when the loop from point `i` returned to point `j`; `None`
/// unless this is a bijection.
fn match_points(original: &[Vec<C>], returned: &[Vec<C>], tol: f64) -> Option<Vec<usize>> {
    let mut used = alloc::vec![false; original.len()];
    let mut perm = Vec::with_capacity(returned.len());
    for x in returned {
        let j = original.iter().position(|y| {
            let d = x
                .iter()
                .zip(y)
                .fold(0.0f64, |m, (a, b)| m.max((a - b).norm()));
            d <= tol * (1.0 + norm_inf(y))
        })?;
        if used[j] {
            return None;
        }
        used[j] = true;
        perm.push(j);
    }
    Some(perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;
    use crate::components::fiber_witnesses;
    use crate::EdgeLengths;

    #[test]
    fn coupler_graph_has_two_orbits() {
        let g = catalog("fig_coupler").unwrap();
        let l = EdgeLengths::sample(&g, &mut rng::stream(1, tag::LENGTHS));
        let ws = fiber_witnesses(&g, &l, 1).unwrap();
        let report = monodromy_orbits(&ws, 1, &MonodromyOptions::default()).unwrap();
        let sizes: Vec<usize> = report.orbits.iter().map(Vec::len).collect();
        assert_eq!(sizes, [6, 6]);
    }

    #[test]
    fn path_graph_is_one_orbit() {
        let g = crate::Graph::from_edges([(1, 2), (2, 3)]).unwrap();
        let l = EdgeLengths::sample(&g, &mut rng::stream(2, tag::LENGTHS));
        let ws = fiber_witnesses(&g, &l, 2).unwrap();
        assert_eq!(ws.points.count, 2);
        let report = monodromy_orbits(&ws, 2, &MonodromyOptions::default()).unwrap();
        assert_eq!(report.orbits, [alloc::vec![0, 1]]);
    }
}
