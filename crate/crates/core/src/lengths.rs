//! Exact squared edge lengths.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::{Edge, Error, Graph, Result};

pub type Rational = Ratio<i64>;

/// Squared length for every edge of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeLengths {
    values: BTreeMap<Edge, Rational>,
}

impl EdgeLengths {
    /// Validates that `values` covers exactly the edges of `g` with nonzero entries.
    pub fn new(g: &Graph, values: BTreeMap<Edge, Rational>) -> Result<Self> {
        if let Some(e) = g.edges().iter().find(|e| !values.contains_key(e)) {
            return Err(Error::MissingLength(*e));
        }
        if let Some(e) = values.keys().find(|e| !g.edges().contains(e)) {
            return Err(Error::UnexpectedLength(*e));
        }
        if let Some((e, _)) = values.iter().find(|(_, v)| v.is_zero()) {
            return Err(Error::DegenerateLength(*e));
        }
        Ok(EdgeLengths { values })
    }

    /// Uniform rationals `p/q` with `p, q` in `1..=1000`; the base edge gets 1.
    pub fn sample(g: &Graph, rng: &mut impl Rng) -> Self {
        let base = g.base_edge().and_then(|(a, b)| Edge::new(a, b).ok());
        let values = g
            .edges()
            .iter()
            .map(|&e| {
                let p: i64 = rng.gen_range(1..=1000);
                let q: i64 = rng.gen_range(1..=1000);
                let v = if Some(e) == base {
                    Rational::from_integer(1)
                } else {
                    Rational::new(p, q)
                };
                (e, v)
            })
            .collect();
        EdgeLengths { values }
    }

    pub fn get(&self, e: Edge) -> Option<Rational> {
        self.values.get(&e).copied()
    }

    pub fn get_f64(&self, e: Edge) -> Option<f64> {
        self.get(e).and_then(|v| v.to_f64())
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, Rational)> + '_ {
        self.values.iter().map(|(e, v)| (*e, *v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Restriction to the edges of a subgraph.
    pub fn restrict(&self, sub: &Graph) -> Result<Self> {
        let values = sub
            .edges()
            .iter()
            .map(|e| {
                self.get(*e)
                    .map(|v| (*e, v))
                    .ok_or(Error::MissingLength(*e))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(EdgeLengths { values })
    }

    /// Adds or replaces entries, e.g. for edges glued onto a graph.
    pub fn extended(&self, extra: impl IntoIterator<Item = (Edge, Rational)>) -> Self {
        let mut values = self.values.clone();
        values.extend(extra);
        EdgeLengths { values }
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.values.keys().copied().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;
    use crate::rng;

    #[test]
    fn sampling_is_seeded_and_normalized() {
        let g = catalog("fig_coupler").unwrap();
        let a = EdgeLengths::sample(&g, &mut rng::stream(7, rng::tag::LENGTHS));
        let b = EdgeLengths::sample(&g, &mut rng::stream(7, rng::tag::LENGTHS));
        let c = EdgeLengths::sample(&g, &mut rng::stream(8, rng::tag::LENGTHS));
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(
            a.get(Edge::new(1, 2).unwrap()),
            Some(Rational::from_integer(1))
        );
        for (_, v) in a.iter() {
            assert!(v > Rational::zero() && v <= Rational::from_integer(1000));
        }
    }

    #[test]
    fn validation() {
        let g = catalog("triangle").unwrap();
        let e12 = Edge::new(1, 2).unwrap();
        let e13 = Edge::new(1, 3).unwrap();
        let e23 = Edge::new(2, 3).unwrap();
        let one = Rational::from_integer(1);
        let mut m = BTreeMap::from([(e12, one), (e13, one)]);
        assert_eq!(
            EdgeLengths::new(&g, m.clone()),
            Err(Error::MissingLength(e23))
        );
        m.insert(e23, Rational::zero());
        assert_eq!(
            EdgeLengths::new(&g, m.clone()),
            Err(Error::DegenerateLength(e23))
        );
        m.insert(e23, one);
        assert!(EdgeLengths::new(&g, m.clone()).is_ok());
        m.insert(Edge::new(3, 4).unwrap(), one);
        assert!(matches!(
            EdgeLengths::new(&g, m),
            Err(Error::UnexpectedLength(_))
        ));
    }
}
