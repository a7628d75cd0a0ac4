//! Complex direct isometries of the plane.

use crate::realization::Point;
use crate::{Error, Result, C};

const I: C = C::new(0.0, 1.0);

/// `(x, y) -> (c x - s y + u, s x + c y + v)` with `c^2 + s^2 = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transformation {
    pub c: C,
    pub s: C,
    pub u: C,
    pub v: C,
}

impl Transformation {
    pub fn identity() -> Self {
        Transformation {
            c: C::new(1.0, 0.0),
            s: C::new(0.0, 0.0),
            u: C::new(0.0, 0.0),
            v: C::new(0.0, 0.0),
        }
    }

    /// Rotation by the (possibly complex) angle `theta`, then translation.
    pub fn rotation(theta: C, u: C, v: C) -> Self {
        Transformation {
            c: theta.cos(),
            s: theta.sin(),
            u,
            v,
        }
    }

    /// Builds a transformation from `rho = c + i s`, which must be nonzero.
    pub fn from_rho(rho: C, u: C, v: C) -> Self {
        let inv = rho.inv();
        Transformation {
            c: (rho + inv) / 2.0,
            s: (rho - inv) / (I * 2.0),
            u,
            v,
        }
    }

    /// `|c^2 + s^2 - 1|`.
    pub fn defect(&self) -> f64 {
        (self.c * self.c + self.s * self.s - 1.0).norm()
    }

    pub fn apply(&self, p: Point) -> Point {
        [
            self.c * p[0] - self.s * p[1] + self.u,
            self.s * p[0] + self.c * p[1] + self.v,
        ]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Transformation) -> Transformation {
        let [u, v] = self.apply([other.u, other.v]);
        Transformation {
            c: self.c * other.c - self.s * other.s,
            s: self.s * other.c + self.c * other.s,
            u,
            v,
        }
    }

    pub fn inverse(&self) -> Transformation {
        Transformation {
            c: self.c,
            s: -self.s,
            u: -(self.c * self.u + self.s * self.v),
            v: self.s * self.u - self.c * self.v,
        }
    }

    /// Largest parameter difference to `other`.
    pub fn distance(&self, other: &Transformation) -> f64 {
        [
            self.c - other.c,
            self.s - other.s,
            self.u - other.u,
            self.v - other.v,
        ]
        .iter()
        .fold(0.0, |m, d| m.max(d.norm()))
    }
}

/// Absolute tolerance for matching points, scaled by the coordinate size.
pub const FIT_TOLERANCE: f64 = 1e-8;

fn iso(p: Point) -> (C, C) {
    (p[0] + I * p[1], p[0] - I * p[1])
}

/// The unique direct isometry mapping each `from` point onto the matching
/// `to` point, or `None` if there is none (e.g. the sets differ by a
/// reflection).
///
/// Needs at least two pairwise distinct `from` points.
pub fn fit_points(from: &[Point], to: &[Point]) -> Result<Option<Transformation>> {
    assert_eq!(from.len(), to.len(), "point lists differ in length");
    let scale = from
        .iter()
        .chain(to)
        .flat_map(|p| p.iter())
        .fold(0.0f64, |m, x| m.max(x.norm()));
    let tol = FIT_TOLERANCE * (1.0 + scale);
    if from.len() < 2 {
        return Err(Error::DegeneratePoints);
    }
    for (i, p) in from.iter().enumerate() {
        for q in &from[i + 1..] {
            if (p[0] - q[0]).norm().max((p[1] - q[1]).norm()) <= tol {
                return Err(Error::DegeneratePoints);
            }
        }
    }
    // Pick the partner with the best conditioned difference in either
    // isotropic coordinate; distinct points differ in at least one.
    let (zd, wd) = iso(from[0]);
    let (zd2, wd2) = iso(to[0]);
    let mut best = (0.0, 1, true);
    for (k, p) in from.iter().enumerate().skip(1) {
        let (z, w) = iso(*p);
        let (dz, dw) = ((z - zd).norm(), (w - wd).norm());
        if dz > best.0 {
            best = (dz, k, true);
        }
        if dw > best.0 {
            best = (dw, k, false);
        }
    }
    let (_, e, use_z) = best;
    let (ze, we) = iso(from[e]);
    let (ze2, we2) = iso(to[e]);
    let rho = if use_z {
        (ze2 - zd2) / (ze - zd)
    } else {
        let dw2 = we2 - wd2;
        if dw2.norm() <= tol {
            return Ok(None);
        }
        (we - wd) / dw2
    };
    if !rho.is_finite() || rho.norm() <= tol {
        return Ok(None);
    }
    let a = zd2 - rho * zd;
    let b = wd2 - rho.inv() * wd;
    let t = Transformation::from_rho(rho, (a + b) / 2.0, (a - b) / (I * 2.0));
    let ok = from.iter().zip(to).all(|(p, q)| {
        let r = t.apply(*p);
        (r[0] - q[0]).norm() <= tol && (r[1] - q[1]).norm() <= tol
    });
    Ok(ok.then_some(t))
}
