//! Polynomials of degree at most two in complex unknowns.

use alloc::vec;
use alloc::vec::Vec;

use crate::C;

/// `sum c_i x_i + constant`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Linear {
    pub terms: Vec<(usize, C)>,
    pub constant: C,
}

impl Linear {
    pub fn var(i: usize) -> Self {
        Linear {
            terms: vec![(i, C::new(1.0, 0.0))],
            constant: C::new(0.0, 0.0),
        }
    }

    pub fn constant(c: C) -> Self {
        Linear {
            terms: Vec::new(),
            constant: c,
        }
    }

    pub fn sub(&self, other: &Linear) -> Linear {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|&(i, c)| (i, -c)));
        Linear {
            terms,
            constant: self.constant - other.constant,
        }
    }

    pub fn eval(&self, x: &[C]) -> C {
        self.terms
            .iter()
            .fold(self.constant, |acc, &(i, c)| acc + c * x[i])
    }
}

/// A polynomial `sum q_ij x_i x_j + sum l_i x_i + constant` with `i <= j`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Quadric {
    pub quadratic: Vec<(usize, usize, C)>,
    pub linear: Vec<(usize, C)>,
    pub constant: C,
}

impl Quadric {
    pub fn from_linear(l: &Linear) -> Self {
        Quadric {
            quadratic: Vec::new(),
            linear: l.terms.clone(),
            constant: l.constant,
        }
        .simplified()
    }

    /// `l^2`.
    pub fn square(l: &Linear) -> Self {
        let mut q = Quadric {
            constant: l.constant * l.constant,
            ..Quadric::default()
        };
        for (a, &(i, ci)) in l.terms.iter().enumerate() {
            q.linear.push((i, ci * l.constant * 2.0));
            for (b, &(j, cj)) in l.terms.iter().enumerate().skip(a) {
                // cross terms appear twice in the expansion
                let w = if a == b { 1.0 } else { 2.0 };
                let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
                q.quadratic.push((lo, hi, ci * cj * w));
            }
        }
        q.simplified()
    }

    /// `|p - q|^2` for points whose coordinates are affine expressions.
    pub fn squared_distance(p: &[Linear; 2], q: &[Linear; 2]) -> Self {
        Quadric::square(&p[0].sub(&q[0])).add(&Quadric::square(&p[1].sub(&q[1])))
    }

    pub fn add(&self, other: &Quadric) -> Quadric {
        let mut q = self.clone();
        q.quadratic.extend_from_slice(&other.quadratic);
        q.linear.extend_from_slice(&other.linear);
        q.constant += other.constant;
        q.simplified()
    }

    pub fn scale(&self, s: C) -> Quadric {
        Quadric {
            quadratic: self
                .quadratic
                .iter()
                .map(|&(i, j, c)| (i, j, c * s))
                .collect(),
            linear: self.linear.iter().map(|&(i, c)| (i, c * s)).collect(),
            constant: self.constant * s,
        }
    }

    pub fn minus_constant(mut self, c: C) -> Quadric {
        self.constant -= c;
        self
    }

    /// Merges repeated monomials and drops exact zeros.
    fn simplified(mut self) -> Quadric {
        self.quadratic.sort_by_key(|&(i, j, _)| (i, j));
        let mut quad: Vec<(usize, usize, C)> = Vec::with_capacity(self.quadratic.len());
        for (i, j, c) in self.quadratic {
            match quad.last_mut() {
                Some(last) if last.0 == i && last.1 == j => last.2 += c,
                _ => quad.push((i, j, c)),
            }
        }
        quad.retain(|t| t.2 != C::new(0.0, 0.0));
        self.linear.sort_by_key(|&(i, _)| i);
        let mut lin: Vec<(usize, C)> = Vec::with_capacity(self.linear.len());
        for (i, c) in self.linear {
            match lin.last_mut() {
                Some(last) if last.0 == i => last.1 += c,
                _ => lin.push((i, c)),
            }
        }
        lin.retain(|t| t.1 != C::new(0.0, 0.0));
        self.quadratic = quad;
        self.linear = lin;
        self
    }

    /// Homogenizes to total degree `degree` with the new variable at index 0
    /// and every old index shifted by one.
    pub fn homogenized(&self, degree: u32) -> Quadric {
        match degree {
            2 => Quadric {
                quadratic: self
                    .quadratic
                    .iter()
                    .map(|&(i, j, c)| (i + 1, j + 1, c))
                    .chain(self.linear.iter().map(|&(i, c)| (0, i + 1, c)))
                    .chain(core::iter::once((0, 0, self.constant)))
                    .collect(),
                ..Quadric::default()
            },
            1 => {
                debug_assert!(self.quadratic.is_empty());
                Quadric {
                    linear: self
                        .linear
                        .iter()
                        .map(|&(i, c)| (i + 1, c))
                        .chain(core::iter::once((0, self.constant)))
                        .collect(),
                    ..Quadric::default()
                }
            }
            _ => panic!("homogenizing to degree {degree}"),
        }
        .simplified()
    }

    pub fn degree(&self) -> u32 {
        if !self.quadratic.is_empty() {
            2
        } else if !self.linear.is_empty() {
            1
        } else {
            0
        }
    }

    pub fn eval(&self, x: &[C]) -> C {
        let mut v = self.constant;
        for &(i, c) in &self.linear {
            v += c * x[i];
        }
        for &(i, j, c) in &self.quadratic {
            v += c * x[i] * x[j];
        }
        v
    }

    /// Adds `scale * grad` into `row`.
    pub fn add_gradient(&self, x: &[C], scale: C, row: &mut [C]) {
        for &(i, c) in &self.linear {
            row[i] += c * scale;
        }
        for &(i, j, c) in &self.quadratic {
            let cs = c * scale;
            if i == j {
                row[i] += cs * x[i] * 2.0;
            } else {
                row[i] += cs * x[j];
                row[j] += cs * x[i];
            }
        }
    }
}

/// A list of quadrics in `nvars` unknowns.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PolySystem {
    pub nvars: usize,
    pub equations: Vec<Quadric>,
}

impl PolySystem {
    pub fn new(nvars: usize, equations: Vec<Quadric>) -> Self {
        PolySystem { nvars, equations }
    }

    pub fn is_square(&self) -> bool {
        self.nvars == self.equations.len()
    }

    pub fn eval(&self, x: &[C]) -> Vec<C> {
        self.equations.iter().map(|q| q.eval(x)).collect()
    }

    /// Row-major Jacobian, `equations x nvars`.
    pub fn jacobian(&self, x: &[C]) -> Vec<C> {
        let mut jac = vec![C::new(0.0, 0.0); self.equations.len() * self.nvars];
        self.add_jacobian(x, C::new(1.0, 0.0), &mut jac);
        jac
    }

    /// Adds `scale` times the Jacobian into `jac`.
    pub fn add_jacobian(&self, x: &[C], scale: C, jac: &mut [C]) {
        let n = self.nvars;
        for (r, q) in self.equations.iter().enumerate() {
            q.add_gradient(x, scale, &mut jac[r * n..(r + 1) * n]);
        }
    }

    /// Largest absolute value over all equations.
    pub fn residual(&self, x: &[C]) -> f64 {
        self.equations
            .iter()
            .fold(0.0, |m, q| m.max(q.eval(x).norm()))
    }

    /// Equation degrees, with constants counted as degree 1.
    pub fn degrees(&self) -> Vec<u32> {
        self.equations.iter().map(|q| q.degree().max(1)).collect()
    }

    /// Product of equation degrees, saturating.
    pub fn bezout_number(&self) -> u64 {
        self.equations
            .iter()
            .fold(1u64, |acc, q| acc.saturating_mul(q.degree().max(1) as u64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C {
        C::new(re, 0.0)
    }

    #[test]
    fn square_and_distance() {
        // (x0 - x1 + 2)^2 at (1, 4) = 1
        let l = Linear::var(0)
            .sub(&Linear::var(1))
            .sub(&Linear::constant(c(-2.0)));
        let q = Quadric::square(&l);
        assert!((q.eval(&[c(1.0), c(4.0)]) - c(1.0)).norm() < 1e-14);
        let p = [Linear::var(0), Linear::var(1)];
        let o = [Linear::constant(c(0.0)), Linear::constant(c(0.0))];
        let d = Quadric::squared_distance(&p, &o);
        assert_eq!(d.degree(), 2);
        assert!((d.eval(&[c(3.0), c(4.0)]) - c(25.0)).norm() < 1e-12);
    }

    #[test]
    fn homogenization_agrees_on_the_chart() {
        let p = [Linear::var(0), Linear::var(1)];
        let q = [Linear::constant(c(2.0)), Linear::var(0)];
        let f = Quadric::squared_distance(&p, &q).minus_constant(c(3.0));
        let hf = f.homogenized(2);
        let x = [C::new(0.3, 0.1), C::new(-1.2, 0.7)];
        let s = C::new(0.8, -0.6);
        let big = [s, x[0] * s, x[1] * s];
        assert!((hf.eval(&big) - f.eval(&x) * s * s).norm() < 1e-12);
        let l = Quadric::from_linear(&Linear::var(1).sub(&Linear::constant(c(4.0))));
        assert!((l.homogenized(1).eval(&big) - l.eval(&x) * s).norm() < 1e-12);
    }

    #[test]
    fn gradient_matches_finite_difference() {
        let p = [Linear::var(0), Linear::var(1)];
        let q = [Linear::var(2), Linear::constant(C::new(0.5, -1.0))];
        let f = Quadric::squared_distance(&p, &q).minus_constant(c(3.0));
        let x = [C::new(0.3, 0.1), C::new(-1.2, 0.7), C::new(2.0, -0.4)];
        let mut g = [C::new(0.0, 0.0); 3];
        f.add_gradient(&x, c(1.0), &mut g);
        let h = 1e-6;
        for k in 0..3 {
            let mut xp = x;
            let mut xm = x;
            xp[k] += h;
            xm[k] -= h;
            let fd = (f.eval(&xp) - f.eval(&xm)) / (2.0 * h);
            assert!((fd - g[k]).norm() < 1e-7, "{k}: {fd} vs {}", g[k]);
        }
    }
}
