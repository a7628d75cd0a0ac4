//! Dense complex LU for the small systems met during path tracking.

use alloc::vec::Vec;

use crate::C;

/// Row-major LU factorization with partial pivoting.
pub(crate) struct Lu {
    n: usize,
    lu: Vec<C>,
    perm: Vec<usize>,
    /// Smallest over largest pivot modulus.
    pub(crate) pivot_ratio: f64,
}

impl Lu {
    /// Factors the `n x n` matrix `a`; `None` if a pivot vanishes.
    pub(crate) fn new(n: usize, a: &[C]) -> Option<Lu> {
        let mut lu = a.to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let (mut pmin, mut pmax) = (f64::INFINITY, 0.0f64);
        for k in 0..n {
            let (mut p, mut best) = (k, 0.0);
            for i in k..n {
                let m = lu[i * n + k].norm();
                if m > best {
                    best = m;
                    p = i;
                }
            }
            if best == 0.0 || !best.is_finite() {
                return None;
            }
            pmin = pmin.min(best);
            pmax = pmax.max(best);
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let pivot = lu[k * n + k];
            for i in k + 1..n {
                let f = lu[i * n + k] / pivot;
                lu[i * n + k] = f;
                for j in k + 1..n {
                    let t = lu[k * n + j];
                    lu[i * n + j] -= f * t;
                }
            }
        }
        let pivot_ratio = if n == 0 { 1.0 } else { pmin / pmax };
        Some(Lu {
            n,
            lu,
            perm,
            pivot_ratio,
        })
    }

    /// Solves `A x = b`.
    pub(crate) fn solve(&self, b: &[C]) -> Vec<C> {
        let n = self.n;
        let mut x: Vec<C> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let t = self.lu[i * n + j] * x[j];
                x[i] -= t;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let t = self.lu[i * n + j] * x[j];
                x[i] -= t;
            }
            x[i] /= self.lu[i * n + i];
        }
        x
    }
}

pub(crate) fn norm_inf(x: &[C]) -> f64 {
    x.iter().fold(0.0, |m, z| m.max(z.norm()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_with_pivoting() {
        let i = C::i();
        let a = [C::new(0.0, 0.0), C::new(2.0, 0.0), C::new(1.0, 0.0), i];
        let lu = Lu::new(2, &a).unwrap();
        let x = lu.solve(&[C::new(4.0, 0.0), C::new(1.0, 2.0)]);
        // 2 x1 = 4, x0 + i x1 = 1 + 2i
        assert!((x[1] - C::new(2.0, 0.0)).norm() < 1e-14);
        assert!((x[0] - C::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn singular_is_none() {
        let one = C::new(1.0, 0.0);
        assert!(Lu::new(2, &[one, one, one, one]).is_none());
    }
}
